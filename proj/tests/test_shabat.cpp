#include <doctest.h>

#include <random>

#include "dessin/error.hpp"
#include "dessin/factor.hpp"
#include "dessin/plane_tree.hpp"
#include "dessin/shabat.hpp"

using namespace dessin;

namespace {

MPoly x(int i) { return MPoly::var(i); }

CPoly multiply(const CPoly& a, const CPoly& b) {
  const mpfr_prec_t bits = a.front().precision();
  CPoly out(a.size() + b.size() - 1, Complex(bits));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

CPoly derivative(const CPoly& f) {
  CPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * Complex(Rat(static_cast<long>(i)), f[i].precision()));
  return out;
}

// Expanded b(z) = z^k1 prod (z - x_i)^k_i from a numeric model.
CPoly shabat_poly(const NumericModel& m, unsigned origin_degree) {
  const mpfr_prec_t bits = m.working_precision;
  CPoly b{Complex(Rat(1), bits)};
  const CPoly z{Complex(bits), Complex(Rat(1), bits)};
  for (unsigned k = 0; k < origin_degree; ++k) b = multiply(b, z);
  for (std::size_t i = 0; i < m.coordinates.size(); ++i) {
    const CPoly lin{-m.coordinates[i], Complex(Rat(1), bits)};
    for (unsigned k = 0; k < m.degrees[i]; ++k) b = multiply(b, lin);
  }
  return b;
}

long log2_abs(const Complex& z) { return z.re.is_zero() && z.im.is_zero() ? -100000 : z.abs().log2_floor(); }

// Independent Shabat property: b - c vanishes to order n at the center 1.
void check_center(const NumericModel& m, unsigned origin_degree, std::size_t n) {
  CPoly f = shabat_poly(m, origin_degree);
  const Complex one(Rat(1), m.working_precision);
  CHECK(log2_abs(horner(f, one) - m.c) < -100);
  for (std::size_t j = 1; j < n; ++j) {
    f = derivative(f);
    CHECK(log2_abs(horner(f, one)) < -100);
  }
}

}  // namespace

TEST_CASE("center system equations") {
  const auto s1 = build_center_system(parse_passport("1,1/2"));
  REQUIRE(s1.equations.size() == 1);
  CHECK(s1.equations[0] == MPoly(2) - x(0));

  const auto s2 = build_center_system(parse_passport("2,1,1/3,1"));
  REQUIRE(s2.equations.size() == 2);
  CHECK(s2.unknown_degrees == std::vector<unsigned>{1, 1});
  CHECK(s2.equations[0] == MPoly(8) - MPoly(3) * (x(0) + x(1)));
  CHECK(s2.equations[1] == MPoly(2) * x(0) * x(1) - MPoly(4));

  const auto s3 = build_center_system(parse_passport("15,3,2,1/4,1^17"));
  CHECK(s3.origin_degree == 15);
  CHECK(s3.unknown_degrees == std::vector<unsigned>{3, 2, 1});
  REQUIRE(s3.equations.size() == 3);
  for (int t = 0; t < 3; ++t) CHECK(s3.equations[static_cast<std::size_t>(t)].total_degree() == t + 1);
  CHECK(s3.names() == std::vector<std::string>{"x2", "x3", "x4"});
}

TEST_CASE("center system errors and origin choice") {
  CHECK_THROWS_WITH_AS(build_center_system(parse_passport("2,2,1/2,2,1")),
                       doctest::Contains("not black-centered diameter-4"), InvalidInput);
  CHECK_THROWS_WITH_AS(build_center_system(parse_passport("3/1^3")),
                       doctest::Contains("not black-centered diameter-4"), InvalidInput);
  CHECK_THROWS_AS(build_center_system(parse_passport("2,1,1/3,1"), 5u), InvalidInput);
  const auto s = build_center_system(parse_passport("2,1,1/3,1"), 1u);
  CHECK(s.origin_degree == 1);
  CHECK(s.unknown_degrees == std::vector<unsigned>{2, 1});
  CHECK(default_target(s) == 0);
  CHECK_THROWS_AS(default_target(build_center_system(parse_passport("2,1,1/3,1"))), InvalidInput);
  CHECK(default_target(build_center_system(parse_passport("6,2,1,1/4,1^6"))) == 0);
}

TEST_CASE("eliminant examples") {
  const auto r1 = eliminant(build_center_system(parse_passport("1,1/2")), 0);
  CHECK(r1.poly == parse_upoly("-2,1"));
  CHECK(r1.expected_degree == 1);
  CHECK_FALSE(r1.degree_mismatch);

  const auto r2 = eliminant(build_center_system(parse_passport("2,1,1/3,1")), 0);
  CHECK(r2.poly == parse_upoly("6,-8,3"));
  CHECK(r2.expected_degree == 2);
  CHECK_FALSE(r2.degree_mismatch);

  const auto sys = build_center_system(parse_passport("15,3,2,1/4,1^17"));
  const auto r3 = eliminant(sys, 1);
  CHECK(r3.target == "x3");
  CHECK(r3.target_degree == 2);
  CHECK(r3.poly.degree() == 6);
  CHECK(squarefree_part(r3.poly) == r3.poly);
  CHECK(r3.expected_degree == enumerate_trees(sys.passport).size());
  CHECK_FALSE(r3.degree_mismatch);
}

TEST_CASE("eliminant degree equals tree count times multiplicity") {
  for (const char* text : {"4,1,1/3,1^3", "3,2,1/3,1^3", "5,2,1/3,1^5", "6,2,1,1/4,1^6", "2,2,1/3,1,1",
                           "6,4,2,1/4,1^9", "3,2,1,1/4,1^3"}) {
    const Passport p = parse_passport(text);
    const auto sys = build_center_system(p);
    const auto trees = enumerate_trees(p);
    for (const auto& cls : degree_classes(sys)) {
      const auto r = eliminant(sys, cls.front());
      unsigned weighted = 0;
      for (const auto& t : trees) {
        unsigned origin_count = 0;
        for (std::size_t v = 0; v < t.vertex_count(); ++v)
          if (t.vertex(v).color == Color::White && t.degree(v) == sys.origin_degree) ++origin_count;
        weighted += origin_count / static_cast<unsigned>(automorphism_count(t));
      }
      INFO(text << " target " << r.target);
      CHECK(r.poly.degree() == static_cast<int>(weighted * cls.size()));
      CHECK_FALSE(r.degree_mismatch);
    }
  }
}

TEST_CASE("expression eliminants") {
  const auto s1 = build_center_system(parse_passport("1,1/2"));
  CHECK(eliminant_linear_form(s1, Expression::critical_value()).poly == parse_upoly("1,1"));

  const auto s2 = build_center_system(parse_passport("2,1,1/3,1"));
  Expression sum = Expression::unknown(s2, 0);
  sum.coefficients[1] = 1;
  const auto r = eliminant_linear_form(s2, sum);
  CHECK(r.target == "x2 + x3");
  CHECK(r.poly == parse_upoly("-8,3"));
  CHECK(r.expected_degree == 1);
  CHECK(eliminant_linear_form(s2, Expression::critical_value()).poly == parse_upoly("-1,3"));

  const auto s3 = build_center_system(parse_passport("6,4,2,1/4,1^9"));
  const auto d = eliminant_linear_form(s3, Expression::difference(s3, 0, 2));
  CHECK(d.target == "x2 - x4");
  CHECK(d.poly.degree() == 6);
  CHECK_FALSE(d.degree_mismatch);
}

TEST_CASE("expression eliminants agree with numeric models") {
  const auto sys = build_center_system(parse_passport("6,2,1,1/4,1^6"));
  const auto c = eliminant_linear_form(sys, Expression::critical_value());
  const auto d = eliminant_linear_form(sys, Expression::difference(sys, 0, 1));
  const auto models = solve_numeric(sys);
  REQUIRE(models.size() == 3);
  const CPoly cc = to_cpoly(c.poly, 400);
  const CPoly cd = to_cpoly(d.poly, 400);
  for (const auto& m : models) {
    CHECK(log2_abs(horner(cc, m.c)) < -100);
    // x2 is the degree-2 vertex; x3, x4 share degree 1, so either difference is a root.
    const bool a = log2_abs(horner(cd, m.coordinates[0] - m.coordinates[1])) < -100;
    const bool b = log2_abs(horner(cd, m.coordinates[0] - m.coordinates[2])) < -100;
    CHECK((a && b));
  }
}

TEST_CASE("elimination size cap") {
  CHECK_THROWS_WITH_AS(eliminant(build_center_system(parse_passport("1^5/5")), 0),
                       doctest::Contains("elimination too large"), ComputationError);
}

TEST_CASE("numeric solutions") {
  const auto s1 = solve_numeric(build_center_system(parse_passport("1,1/2")));
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].coordinates[0].re.to_double() == doctest::Approx(2.0));

  const auto s2 = solve_numeric(build_center_system(parse_passport("2,1,1/3,1")));
  REQUIRE(s2.size() == 1);
  const double im = std::sqrt(2.0) / 3;
  CHECK(s2[0].coordinates[0].re.to_double() == doctest::Approx(4.0 / 3));
  CHECK(s2[0].coordinates[0].im.to_double() == doctest::Approx(-im));
  CHECK(s2[0].coordinates[1].im.to_double() == doctest::Approx(im));

  for (const char* text : {"6,4,2,1/4,1^9", "15,3,2,1/4,1^17", "6,2,1,1/4,1^6", "3,2,1,1/4,1^3"}) {
    const Passport p = parse_passport(text);
    const auto sys = build_center_system(p);
    const auto models = solve_numeric(sys, 160);
    INFO(text);
    CHECK(models.size() == enumerate_trees(p).size());
    for (const auto& m : models) {
      CHECK(m.residual_log2 < -80);
      check_center(m, sys.origin_degree, p.white_count());
    }
    for (std::size_t i = 0; i < models.size(); ++i)
      for (std::size_t j = i + 1; j < models.size(); ++j) {
        bool differ = false;
        for (std::size_t k = 0; k < sys.unknown_count(); ++k)
          if (log2_abs(models[i].coordinates[k] - models[j].coordinates[k]) > -40) differ = true;
        CHECK(differ);
      }
  }
}

TEST_CASE("residual check") {
  CHECK(residual_check(RationalModel::from_points({{0, 1}, {2, 1}}, {{1, 2}}, -1)).ok);
  CHECK(residual_check(RationalModel::from_points({{0, 3}, {make_rat(4, 3), 1}}, {{1, 2}}, make_rat(-1, 3))).ok);
  CHECK(residual_check(RationalModel::from_points({{0, 7}}, {}, 1)).ok);
  const auto bad = residual_check(RationalModel::from_points({{0, 1}, {3, 1}}, {{1, 2}}, -2));
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.offending.empty());
  const auto wrong_c = residual_check(RationalModel::from_points({{0, 1}, {2, 1}}, {{1, 2}}, 5));
  CHECK_FALSE(wrong_c.ok);
  CHECK(wrong_c.offending.find("b - c") != std::string::npos);
}

TEST_CASE("black leaves") {
  const auto m1 = RationalModel::from_points({{0, 1}, {2, 1}}, {{1, 2}}, -1);
  CHECK(black_poly(m1) == UPoly(Rat(1)));
  const auto m2 = RationalModel::from_points({{0, 3}, {make_rat(4, 3), 1}}, {{1, 2}}, make_rat(-1, 3));
  CHECK(black_poly(m2) == UPoly({make_rat(1, 3), make_rat(2, 3), Rat(1)}));
  CHECK_THROWS_AS(black_poly(RationalModel::from_points({{0, 1}, {3, 1}}, {{1, 2}}, -2)), ComputationError);
}

TEST_CASE("rational models from systems") {
  const auto m1 = rational_model(build_center_system(parse_passport("1,1/2")));
  CHECK(m1.c == -1);
  CHECK(m1.white[1].poly == parse_upoly("-2,1"));

  const auto m2 = rational_model(build_center_system(parse_passport("2,1,1/3,1")));
  CHECK(m2.white[1].poly == parse_upoly("6,-8,3").monic());
  CHECK(m2.b().derivative() == UPoly::from_ints({0, 4}) * UPoly::linear(Rat(1)).pow(2));
  CHECK(black_poly(m2) == UPoly::linear(make_rat(-1, 3)));
  CHECK(residual_check(m2).ok);

  const auto m3 = rational_model(build_center_system(parse_passport("3,1/2,1,1")));
  CHECK(m3.white[1].poly == UPoly::linear(make_rat(4, 3)));
  CHECK(m3.c == make_rat(-1, 3));

  CHECK_THROWS_AS(rational_model(build_center_system(parse_passport("6,2,1,1/4,1^6"))), ComputationError);
}

TEST_CASE("normalized models") {
  const auto m = RationalModel::from_points({{0, 3}, {make_rat(4, 3), 1}}, {{1, 2}}, make_rat(-1, 3));
  CHECK(validate_normalized(m, 2).ok);
  const auto bad = validate_normalized(RationalModel::from_points({{0, 1}, {make_rat(1, 2), 1}}, {}, 0), 2);
  CHECK_FALSE(bad.ok);
  bool mentions = false;
  for (const auto& v : bad.violations) mentions = mentions || v.find("v_2 = -1") != std::string::npos;
  CHECK(mentions);
  CHECK(validate_normalized(RationalModel::from_points({{0, 2}}, {}, 1), 2).ok);
  CHECK(validate_normalized(rational_model(build_center_system(parse_passport("2,1,1/3,1"))), 2).ok);
}

TEST_CASE("rescaling") {
  const auto r = normalize_rescale({0, make_rat(8, 3), make_rat(1, 3)}, {1, make_rat(4, 3), make_rat(1, 9)}, 3);
  CHECK(r.white == std::vector<Rat>{0, 24, 3});
  CHECK(r.black == std::vector<Rat>{9, 12, 1});
  const auto same = normalize_rescale({0, 5}, {1, 7}, 3);
  CHECK(same.white == std::vector<Rat>{0, 5});
  CHECK(same.black == std::vector<Rat>{1, 7});
  const auto h = normalize_rescale({0, 4}, {1, make_rat(1, 2)}, 2);
  CHECK(h.white == std::vector<Rat>{0, 8});
  CHECK(h.black == std::vector<Rat>{2, 1});
  CHECK_THROWS_AS(normalize_rescale({1}, {1}, 2), InvalidInput);
}

TEST_CASE("rescaled coordinates are integral") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 40);
  for (unsigned p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Rat> white{0}, black{1};
      for (int k = 0; k < 3; ++k) {
        white.push_back(make_rat(num(rng), den(rng)));
        const long a = num(rng);
        black.push_back(make_rat(a == 0 ? 1 : a, den(rng)));
      }
      const auto r = normalize_rescale(white, black, p);
      for (const auto& b : r.black) {
        if (b == 0) continue;
        CHECK(mpz_divisible_ui_p(b.get_den().get_mpz_t(), p) == 0);
      }
      CHECK(r.white.front() == 0);
    }
  }
}
