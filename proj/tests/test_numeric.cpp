#include <doctest.h>

#include <random>

#include "dessin/error.hpp"
#include "dessin/numeric.hpp"

using namespace dessin;

TEST_CASE("roots of t^2 - 2") {
  const auto r = complex_roots(UPoly::from_ints({-2, 0, 1}), 128);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0].re.to_double() == doctest::Approx(-1.4142135623730951));
  CHECK(r.roots[1].re.to_double() == doctest::Approx(1.4142135623730951));
  CHECK(std::abs(r.roots[0].im.to_double()) < 1e-30);
}

TEST_CASE("roots of 3t^2 - 8t + 6 are 4/3 +- i sqrt(2)/3") {
  const auto r = complex_roots(UPoly::from_ints({6, -8, 3}), 256);
  REQUIRE(r.roots.size() == 2);
  for (const auto& z : r.roots) {
    CHECK(z.re.to_double() == doctest::Approx(4.0 / 3.0));
    CHECK(std::abs(z.im.to_double()) == doctest::Approx(std::sqrt(2.0) / 3.0));
  }
  // 128 bits of agreement with the closed form: |z - 4/3|^2 = 2/9.
  for (const auto& z : r.roots) {
    const Real dx = z.re - Real(Rat(4, 3), 512);
    const Real err = (dx * dx + z.im * z.im) - Real(Rat(2, 9), 512);
    CHECK(abs(err).log2_floor() < -120);
  }
}

TEST_CASE("linear polynomial") {
  const auto r = complex_roots(UPoly::from_ints({-2, 1}), 64);
  REQUIRE(r.roots.size() == 1);
  CHECK(r.roots[0].re.to_double() == 2.0);
}

TEST_CASE("non-squarefree input is rejected") {
  CHECK_THROWS_AS(complex_roots(UPoly::from_ints({1, 2, 1}), 64), InvalidInput);
}

TEST_CASE("Vieta: sum and product of roots") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-20, 20);
  const unsigned precision = 200;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Rat> c(7);
    for (auto& x : c) x = coef(rng);
    c.back() = 1 + (trial % 3);
    c.front() = c.front() == 0 ? 1 : c.front();
    UPoly f(c);
    if (gcd(f, f.derivative()).degree() > 0) continue;
    const auto r = complex_roots(f, precision);
    const mpfr_prec_t bits = r.working_precision;
    Complex sum(bits);
    Complex prod(Rat(1), bits);
    for (const auto& z : r.roots) {
      sum += z;
      prod *= z;
    }
    const int d = f.degree();
    const Complex expected_sum(-f.coeff(static_cast<std::size_t>(d - 1)) / f.leading(), bits);
    Rat p = f.coeff(0) / f.leading();
    if (d % 2 == 1) p = -p;
    const Complex expected_prod(p, bits);
    CHECK((sum - expected_sum).abs().log2_floor() < -static_cast<long>(precision) / 2);
    CHECK((prod - expected_prod).abs().log2_floor() < -static_cast<long>(precision) / 2);
  }
}

TEST_CASE("clustered roots separate") {
  // (t - 1)(t - 1 - 2^-40)(t + 3)
  const Rat eps = Rat(1) / Rat(Int(1) << 40);
  const UPoly f = UPoly::linear(Rat(1)) * UPoly::linear(1 + eps) * UPoly::linear(Rat(-3));
  const auto r = complex_roots(f, 256);
  REQUIRE(r.roots.size() == 3);
  const Real gap = (r.roots[1] - r.roots[2]).abs();
  CHECK(abs(gap - Real(eps, 256)).log2_floor() < -150);
}
