#include <doctest.h>

#include <random>

#include "dessin/error.hpp"
#include "dessin/factor.hpp"
#include "dessin/mpoly.hpp"
#include "dessin/upoly.hpp"

using namespace dessin;

namespace {

UPoly random_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::uniform_int_distribution<int> coef(-4, 4);
  const int d = deg(rng);
  std::vector<Rat> c(static_cast<std::size_t>(d) + 1);
  for (auto& x : c) x = coef(rng);
  if (c.back() == 0) c.back() = 1;
  return UPoly(c);
}

}  // namespace

TEST_CASE("rational text format") {
  CHECK(parse_rat("6") == 6);
  CHECK(parse_rat("-8/12") == Rat(-2, 3));
  CHECK(to_string(parse_rat("4/6")) == "2/3");
  CHECK_THROWS_AS(parse_rat("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rat("x"), InvalidInput);
}

TEST_CASE("polynomial text format") {
  const UPoly f = parse_upoly("6,-8,3");
  CHECK(f.degree() == 2);
  CHECK(f.coeff(2) == 3);
  CHECK(to_string(f) == "6,-8,3");
  CHECK(to_pretty(f) == "3t^2 - 8t + 6");
  CHECK(to_string(parse_upoly("1/2,0,0")) == "1/2");
  CHECK(to_string(parse_upoly("0")) == "0");
}

TEST_CASE("univariate division and gcd") {
  const UPoly a = UPoly::from_ints({-1, 0, 1});  // t^2 - 1
  const UPoly b = UPoly::from_ints({1, 1});
  auto [q, r] = divrem(a, b);
  CHECK(q == UPoly::from_ints({-1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(a, UPoly::from_ints({1, 2, 1})) == UPoly::from_ints({1, 1}));
  CHECK_THROWS_AS(divrem(a, UPoly{}), InvalidInput);
}

TEST_CASE("resultant examples") {
  const MPoly x = MPoly::var(0);
  const MPoly t = MPoly::var(1);
  // res_x(x^2 - 2, x - t) = t^2 - 2
  CHECK(resultant(x * x - MPoly(2), x - t, 0) == t * t - MPoly(2));
  // res_x(x - 1, x - 3) = -2
  CHECK(resultant(x - MPoly(1), x - MPoly(3), 0) == MPoly(-2));
  const MPoly f = x * x * x - MPoly(2) * x + t;
  CHECK(resultant(f, f, 0).is_zero());
  CHECK_THROWS_WITH_AS(resultant(t, t + MPoly(1), 0), "no elimination variable", InvalidInput);
}

TEST_CASE("resultant agrees with the product formula on monic linear factors") {
  // res(prod (x - a_i), prod (x - b_j)) = prod (a_i - b_j)
  const MPoly x = MPoly::var(0);
  const std::vector<long> as{1, -2, 5};
  const std::vector<long> bs{3, 0};
  MPoly f(1);
  MPoly g(1);
  Rat expected = 1;
  for (long a : as) f *= x - MPoly(a);
  for (long b : bs) g *= x - MPoly(b);
  for (long a : as)
    for (long b : bs) expected *= Rat(a - b);
  CHECK(resultant(f, g, 0) == MPoly(expected));
}

TEST_CASE("resultant vanishes iff the gcd is nonconstant") {
  std::mt19937_64 rng(7);
  int common = 0;
  for (int trial = 0; trial < 300; ++trial) {
    UPoly f = random_poly(rng, 6);
    UPoly g = random_poly(rng, 6);
    if (trial % 3 == 0) {
      const UPoly h = random_poly(rng, 2);
      f *= h;
      g *= h;
    }
    const MPoly r = resultant(MPoly::from_upoly(f, 0), MPoly::from_upoly(g, 0), 0);
    const bool shared = gcd(f, g).degree() > 0;
    common += shared ? 1 : 0;
    CHECK(r.is_constant());
    CHECK(r.is_zero() == shared);
  }
  CHECK(common >= 100);
}

TEST_CASE("multivariate resultant eliminates a shared variable") {
  // x + y - 3 and x*y - 2 share solutions (1,2),(2,1): res_x in y is y^2 - 3y + 2 up to sign.
  const MPoly x = MPoly::var(0);
  const MPoly y = MPoly::var(1);
  const MPoly r = resultant(x + y - MPoly(3), x * y - MPoly(2), 0);
  CHECK(r.primitive() == y * y - MPoly(3) * y + MPoly(2));
}

TEST_CASE("exact multivariate division") {
  const MPoly x = MPoly::var(0);
  const MPoly y = MPoly::var(1);
  const MPoly a = (x + y) * (x - MPoly(2) * y + MPoly(1));
  CHECK(divide_exact(a, x + y) == x - MPoly(2) * y + MPoly(1));
  MPoly q;
  CHECK_FALSE(try_divide(a, x + MPoly(3), q));
}

TEST_CASE("squarefree part") {
  const UPoly a = UPoly::from_ints({-1, 1});
  const UPoly b = UPoly::from_ints({2, 1});
  CHECK(squarefree_part(a * a * b) == a * b);
  const UPoly q = UPoly::from_ints({-2, 0, 1});
  CHECK(squarefree_part(q) == q);
  const UPoly e = UPoly::from_ints({6, -8, 3});
  CHECK(squarefree_part(e * e) == e);
  CHECK_THROWS_AS(squarefree_part(UPoly{}), InvalidInput);
}

TEST_CASE("squarefree part of f*g^2 has the root set of f*g") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const UPoly f = squarefree_part(random_poly(rng, 4));
    const UPoly g = squarefree_part(random_poly(rng, 3));
    if (gcd(f, g).degree() > 0) continue;
    CHECK(squarefree_part(f * g * g) == (f * g).primitive());
  }
}
