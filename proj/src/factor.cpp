#include "dessin/factor.hpp"

#include <algorithm>
#include <numeric>

#include "dessin/error.hpp"
#include "modular.hpp"

namespace dessin {

using modular::FieldP;
using modular::PolyP;
using modular::PolyZ;

UPoly Factorization::expand() const {
  UPoly r(unit);
  for (const auto& fp : factors) r *= fp.factor.pow(fp.multiplicity);
  return r;
}

std::vector<int> Factorization::degrees() const {
  std::vector<int> d;
  d.reserve(factors.size());
  for (const auto& fp : factors) d.push_back(fp.factor.degree());
  return d;
}

UPoly squarefree_part(const UPoly& f) {
  if (f.is_zero()) throw InvalidInput("squarefree part of the zero polynomial");
  if (f.degree() == 0) return UPoly(Rat(1));
  return divide_exact(f, gcd(f, f.derivative())).primitive();
}

std::vector<FactorPower> squarefree_decomposition(const UPoly& f) {
  if (f.is_zero()) throw InvalidInput("squarefree decomposition of the zero polynomial");
  std::vector<FactorPower> out;
  if (f.degree() == 0) return out;
  const UPoly fp = f.primitive();
  const UPoly d = fp.derivative();
  const UPoly a0 = gcd(fp, d);
  UPoly b = divide_exact(fp, a0);
  UPoly c = divide_exact(d, a0);
  UPoly dd = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    const UPoly a = gcd(b, dd);
    if (a.degree() > 0) out.push_back({a.primitive(), i});
    b = divide_exact(b, a);
    c = divide_exact(dd, a);
    dd = c - b.derivative();
    ++i;
  }
  return out;
}

namespace {

PolyZ to_polyz(const UPoly& f) {
  PolyZ r;
  for (const auto& c : f.coeffs()) r.push_back(c.get_num());
  return r;
}

UPoly from_polyz(const PolyZ& f) {
  std::vector<Rat> c;
  for (const auto& x : f) c.emplace_back(x);
  return UPoly(std::move(c));
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ceil(|lc| * 2^deg * ||f||_2): bounds every coefficient of lc(f)/lc(g) * g for
// any factor g of f.
Int factor_coefficient_bound(const PolyZ& f) {
  Int sumsq = 0;
  for (const auto& c : f) sumsq += c * c;
  Int norm;
  mpz_sqrt(norm.get_mpz_t(), sumsq.get_mpz_t());
  norm += 1;
  Int bound = abs(f.back()) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), f.size() - 1);
  return bound;
}

struct ModularImage {
  unsigned long prime = 0;
  std::vector<PolyP> factors;
};

ModularImage best_modular_image(const PolyZ& f) {
  std::mt19937_64 rng(0x5eedULL);
  ModularImage best;
  int good = 0;
  for (unsigned long p = 3; good < 5 && p < 100000; p += 2) {
    if (!is_prime(p)) continue;
    const FieldP field(p);
    if (field.reduce(f.back()) == 0) continue;
    const PolyP fp = modular::to_polyp(f, field);
    if (field.gcd(fp, field.derivative(fp)).size() != 1) continue;
    ++good;
    auto factors = field.factor_squarefree(fp, rng);
    if (best.prime == 0 || factors.size() < best.factors.size()) {
      best.prime = p;
      best.factors = std::move(factors);
    }
    if (best.factors.size() == 1) break;
  }
  if (best.prime == 0) throw ComputationError("no good reduction prime found");
  return best;
}

// Zassenhaus: f primitive, squarefree, positive leading coefficient.
std::vector<UPoly> factor_squarefree_primitive(const UPoly& f) {
  if (f.degree() <= 1) return {f};
  const PolyZ fz = to_polyz(f);
  const ModularImage image = best_modular_image(fz);
  if (image.factors.size() == 1) return {f};

  const FieldP field(image.prime);
  const Int bound = 2 * factor_coefficient_bound(fz) + 1;
  unsigned exponent = 1;
  Int modulus(image.prime);
  while (modulus <= bound) {
    modulus *= image.prime;
    ++exponent;
  }
  std::vector<PolyZ> lifted = modular::hensel_lift(fz, image.factors, field, exponent);
  const modular::RingM ring(modulus);

  std::vector<UPoly> found;
  UPoly rest = f;
  std::size_t k = 1;
  while (2 * k <= lifted.size()) {
    bool split = false;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      PolyZ g{rest.leading().get_num()};
      for (auto i : idx) g = ring.mul(g, lifted[i]);
      const UPoly cand = from_polyz(modular::symmetric(g, modulus)).primitive();
      if (cand.degree() > 0 && divrem(rest, cand).second.is_zero()) {
        found.push_back(cand);
        rest = divide_exact(rest, cand).primitive();
        for (std::size_t j = idx.size(); j-- > 0;) lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[j]));
        split = true;
        break;
      }
      // next k-combination of [0, lifted.size())
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == lifted.size() - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!split) ++k;
  }
  if (rest.degree() > 0) found.push_back(rest);
  return found;
}

}  // namespace

Factorization factor_over_q(const UPoly& f) {
  if (f.is_zero()) throw InvalidInput("factorization of the zero polynomial");
  if (f.degree() > kMaxFactorDegree) {
    throw Unsupported("unsupported degree " + std::to_string(f.degree()) + " (maximum " +
                      std::to_string(kMaxFactorDegree) + ")");
  }
  Factorization result;
  for (const auto& part : squarefree_decomposition(f)) {
    for (auto& g : factor_squarefree_primitive(part.factor)) {
      result.factors.push_back({g.primitive(), part.multiplicity});
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const FactorPower& a, const FactorPower& b) { return canonical_less(a.factor, b.factor); });
  Rat lc = 1;
  for (const auto& fp : result.factors) {
    Rat pw = 1;
    for (unsigned i = 0; i < fp.multiplicity; ++i) pw *= fp.factor.leading();
    lc *= pw;
  }
  result.unit = f.leading() / lc;
  return result;
}

bool is_irreducible(const UPoly& f) {
  if (f.degree() < 1) return false;
  const auto fac = factor_over_q(f);
  return fac.factors.size() == 1 && fac.factors.front().multiplicity == 1;
}

}  // namespace dessin
