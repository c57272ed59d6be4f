#include <doctest.h>

#include <map>
#include <random>

#include "dessin/error.hpp"
#include "dessin/factor.hpp"
#include "dessin/padic.hpp"

using namespace dessin;

namespace {

UPoly shift_argument(const UPoly& f, const Rat& a) {
  // f(t + a) by Horner on polynomials.
  UPoly out;
  const UPoly lin({a, Rat(1)});
  for (int i = f.degree(); i >= 0; --i) out = out * lin + UPoly(f.coeff(i));
  return out;
}

}  // namespace

TEST_CASE("valuation examples") {
  CHECK(val_p(make_rat(8, 3), 2) == Valuation{false, 3});
  CHECK(val_p(Rat(21), 7) == Valuation{false, 1});
  CHECK(val_p(Rat(0), 5).infinite);
  CHECK(val_p(make_rat(5, 49), 7).value == -2);
  CHECK(to_string(val_p(Rat(0), 5)) == "inf");
  CHECK_THROWS_AS(val_p(Rat(3), 4), InvalidInput);
}

TEST_CASE("valuation axioms") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-5000, 5000);
  std::uniform_int_distribution<long> den(1, 3000);
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    for (int trial = 0; trial < 500; ++trial) {
      const Rat a = make_rat(num(rng), den(rng));
      const Rat b = make_rat(num(rng), den(rng));
      const Valuation va = val_p(a, p), vb = val_p(b, p);
      const Valuation vab = val_p(a * b, p);
      if (va.infinite || vb.infinite) {
        CHECK(vab.infinite);
      } else {
        CHECK(vab.value == va.value + vb.value);
      }
      const Valuation vs = val_p(a + b, p);
      if (!vs.infinite && !va.infinite && !vb.infinite) CHECK(vs.value >= std::min(va.value, vb.value));
    }
  }
}

TEST_CASE("Newton polygon examples") {
  const auto n1 = newton_polygon(parse_upoly("6,-8,3"), 2);
  CHECK(n1.points == std::vector<std::pair<int, Rat>>{{0, 1}, {1, 3}, {2, 0}});
  REQUIRE(n1.segments.size() == 1);
  CHECK(n1.segments[0].root_valuation == make_rat(1, 2));
  CHECK(n1.segments[0].count == 2);
  CHECK(to_string(n1) == "hull (0,1) (2,0)\nsegment 1/2 x 2\n");

  const auto n2 = newton_polygon(parse_upoly("-2,1"), 2);
  CHECK(is_pure(n2, 1));

  const auto n3 = newton_polygon(parse_upoly("1,2,3"), 2);
  CHECK(is_pure(n3, 0));

  const auto n4 = newton_polygon(parse_upoly("-2,1") * parse_upoly("-4,1"), 2);
  CHECK_FALSE(is_pure(n4, 1));
  REQUIRE(n4.segments.size() == 2);
  CHECK(n4.segments[0].root_valuation == 1);
  CHECK(n4.segments[1].root_valuation == 2);

  const auto n5 = newton_polygon(parse_upoly("0,0,-3,1"), 3);
  CHECK(n5.zero_roots == 2);
  CHECK(n5.degree() == 3);
  CHECK(to_string(n5) == "hull (2,1) (3,0)\nsegment inf x 2\nsegment 1 x 1\n");
  CHECK_FALSE(is_pure(n5, 1));
  CHECK_THROWS_AS(newton_polygon(UPoly(), 2), InvalidInput);
}

TEST_CASE("Newton polygon height equals valuation drop") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-400, 400);
  std::uniform_int_distribution<int> deg(1, 9);
  for (unsigned p : {2u, 3u, 5u, 7u, 13u}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Rat> c;
      const int d = deg(rng);
      for (int i = 0; i <= d; ++i) c.emplace_back(coef(rng), static_cast<unsigned long>(1 + (rng() % 9)));
      for (auto& q : c) q.canonicalize();
      if (c.back() == 0) c.back() = 1;
      const UPoly f(c);
      const auto poly = newton_polygon(f, p);
      CHECK(poly.degree() == static_cast<unsigned>(f.degree()));
      Rat height = 0;
      for (const auto& s : poly.segments) height += s.root_valuation * s.count;
      const Rat low = f.coeff(static_cast<int>(poly.zero_roots));
      CHECK(height == Rat(val_p_finite(low, p) - val_p_finite(f.leading(), p)));
      for (std::size_t k = 1; k < poly.segments.size(); ++k)
        CHECK(poly.segments[k - 1].root_valuation < poly.segments[k].root_valuation);
    }
  }
}

TEST_CASE("Newton polygon agrees with root valuations of split polynomials") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> num(-300, 300);
  for (unsigned p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 100; ++trial) {
      UPoly f(Rat(1));
      std::map<Rat, unsigned> expected;
      for (int k = 0; k < 4; ++k) {
        long a = num(rng);
        if (a == 0) a = 1;
        const Rat r = make_rat(a, 1 + static_cast<long>(rng() % 30));
        f *= UPoly::linear(r);
        ++expected[Rat(val_p_finite(r, p))];
      }
      const auto poly = newton_polygon(f, p);
      std::map<Rat, unsigned> got;
      for (const auto& s : poly.segments) got[s.root_valuation] += s.count;
      CHECK(got == expected);
    }
  }
}

TEST_CASE("predicted valuations and degree bounds") {
  CHECK(predicted_valuation(parse_passport("15,3,2,1/4,1^17"), 7) == make_rat(1, 3));
  CHECK(degree_lower_bound(parse_passport("15,3,2,1/4,1^17"), 7) == 3);
  CHECK(predicted_valuation(parse_passport("3,1/2,1,1"), 2) == 2);
  CHECK(predicted_valuation(parse_passport("1,1/2"), 2) == 1);
  CHECK(degree_lower_bound(parse_passport("6,2,1,1/4,1^6"), 5) == 3);
  CHECK(degree_lower_bound(parse_passport("122,1,1,1/4,1^121"), 5) == 1);
  CHECK_THROWS_WITH_AS(predicted_valuation(parse_passport("84,80,11,1/4,1^172"), 11),
                       doctest::Contains("theorem hypothesis fails"), InvalidInput);
  CHECK_THROWS_AS(predicted_valuation(parse_passport("2/1,1"), 2), InvalidInput);
  CHECK_THROWS_AS(predicted_valuation(parse_passport("1,1/2"), 3), InvalidInput);
}

TEST_CASE("congruence classes") {
  using Classes = std::vector<std::vector<Rat>>;
  CHECK(congruence_classes({0, 1, 3}, 2) == Classes{{0}, {1, 3}});
  CHECK(congruence_classes({0, make_rat(4, 3)}, 2) == Classes{{0, make_rat(4, 3)}});
  CHECK(congruence_classes({0, 2}, 2) == Classes{{0, 2}});
  CHECK(congruence_classes({0, 1, 2, 3, 4, 5}, 3) == Classes{{0, 3}, {1, 4}, {2, 5}});
}

TEST_CASE("valuation identity on rational models") {
  const auto m1 = RationalModel::from_points({{0, 1}, {2, 1}}, {{1, 2}}, -1);
  const auto c1 = check_valuation_identity(m1, 2);
  CHECK(c1.ok());
  CHECK(c1.lhs_valuation.value == 1);

  const auto m2 = RationalModel::from_points({{0, 3}, {make_rat(4, 3), 1}}, {{1, 2}}, make_rat(-1, 3));
  const auto c2 = check_valuation_identity(m2, 2);
  CHECK(c2.ok());
  CHECK(c2.lhs_valuation.value == 2);

  for (const char* text : {"1,1/2", "2,1,1/3,1", "3,1/2,1,1", "4,1/2,1,1,1", "2,2/2,1,1", "5,1,1/3,1^4"}) {
    const auto model = rational_model(build_center_system(parse_passport(text)));
    const Passport p = parse_passport(text);
    for (unsigned q = 2; q <= p.edges(); ++q) {
      if (!is_prime(q)) continue;
      INFO(text << " p=" << q);
      CHECK(check_valuation_identity(model, q).ok());
    }
  }
  const auto broken = RationalModel::from_points({{0, 1}, {3, 1}}, {{1, 2}}, -2);
  CHECK_THROWS_AS(check_valuation_identity(broken, 2), ComputationError);
}

TEST_CASE("valuation identity on centered systems") {
  const auto c1 = check_valuation_identity(build_center_system(parse_passport("2,1,1/3,1")), 2);
  CHECK(c1.ok());
  CHECK(c1.lhs == 2);
  const auto c2 = check_valuation_identity(build_center_system(parse_passport("15,3,2,1/4,1^17")), 7);
  CHECK(c2.ok());
  CHECK(c2.rhs == make_rat(117649, 15625));
  CHECK(check_valuation_identity(build_center_system(parse_passport("6,2,1,1/4,1^6")), 5).ok());
}

TEST_CASE("black side of small indecomposable instances") {
  const auto model = rational_model(build_center_system(parse_passport("3,1/2,1,1")));
  const auto leaves = newton_polygon(black_poly(model).primitive(), 2);
  CHECK(is_pure(leaves, 0));
  const auto sys = build_center_system(parse_passport("3,1/2,1,1"));
  const UPoly c = eliminant_linear_form(sys, Expression::critical_value()).poly;
  const auto shifted = newton_polygon(shift_argument(c, 1), 2);
  for (const auto& s : shifted.segments) CHECK(s.root_valuation > 0);

  const auto sys5 = build_center_system(parse_passport("6,2,1,1/4,1^6"));
  const UPoly c5 = eliminant_linear_form(sys5, Expression::critical_value()).poly;
  for (const auto& s : newton_polygon(shift_argument(c5, 1), 5).segments) CHECK(s.root_valuation > 0);
}
