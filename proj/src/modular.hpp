#pragma once

// Polynomial arithmetic over Z/p (word-size p) and over Z/m (multiprecision m),
// used by the rational factorization.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "dessin/rational.hpp"

namespace dessin::modular {

/// Dense polynomial over Z/p, constant term first, no trailing zeros.
using PolyP = std::vector<std::uint64_t>;

class FieldP {
 public:
  explicit FieldP(std::uint64_t p) : p_(p) {}
  [[nodiscard]] std::uint64_t prime() const { return p_; }

  [[nodiscard]] std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  [[nodiscard]] std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  [[nodiscard]] std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
  [[nodiscard]] std::uint64_t inv(std::uint64_t a) const;
  [[nodiscard]] std::uint64_t reduce(const Int& z) const;

  void trim(PolyP& f) const;
  [[nodiscard]] PolyP add(const PolyP& a, const PolyP& b) const;
  [[nodiscard]] PolyP sub(const PolyP& a, const PolyP& b) const;
  [[nodiscard]] PolyP mul(const PolyP& a, const PolyP& b) const;
  [[nodiscard]] PolyP scale(const PolyP& a, std::uint64_t c) const;
  [[nodiscard]] std::pair<PolyP, PolyP> divrem(const PolyP& a, const PolyP& b) const;
  [[nodiscard]] PolyP rem(const PolyP& a, const PolyP& b) const { return divrem(a, b).second; }
  [[nodiscard]] PolyP monic(const PolyP& a) const;
  [[nodiscard]] PolyP derivative(const PolyP& a) const;
  [[nodiscard]] PolyP gcd(PolyP a, PolyP b) const;
  /// Returns (s, t) with s*a + t*b = 1 for coprime a, b; deg s < deg b, deg t < deg a.
  [[nodiscard]] std::pair<PolyP, PolyP> bezout(const PolyP& a, const PolyP& b) const;
  /// base^e mod m.
  [[nodiscard]] PolyP powmod(const PolyP& base, const Int& e, const PolyP& m) const;

  /// Monic irreducible factors of a squarefree monic polynomial (Cantor-Zassenhaus).
  [[nodiscard]] std::vector<PolyP> factor_squarefree(const PolyP& f, std::mt19937_64& rng) const;

 private:
  [[nodiscard]] std::vector<PolyP> equal_degree_split(const PolyP& f, int d, std::mt19937_64& rng) const;
  std::uint64_t p_;
};

/// Dense polynomial over Z, constant term first.
using PolyZ = std::vector<Int>;

/// Arithmetic modulo a multiprecision modulus, representatives in [0, m).
class RingM {
 public:
  explicit RingM(Int m) : m_(std::move(m)) {}
  [[nodiscard]] const Int& modulus() const { return m_; }

  [[nodiscard]] PolyZ reduce(const PolyZ& a) const;
  [[nodiscard]] PolyZ add(const PolyZ& a, const PolyZ& b) const;
  [[nodiscard]] PolyZ sub(const PolyZ& a, const PolyZ& b) const;
  [[nodiscard]] PolyZ mul(const PolyZ& a, const PolyZ& b) const;
  [[nodiscard]] PolyZ scale(const PolyZ& a, const Int& c) const;
  /// Division by a polynomial whose leading coefficient is invertible mod m.
  [[nodiscard]] std::pair<PolyZ, PolyZ> divrem(const PolyZ& a, const PolyZ& b) const;
  [[nodiscard]] Int inv(const Int& a) const;

 private:
  static void trim(PolyZ& a);
  Int m_;
};

PolyZ to_polyz(const PolyP& f);
PolyP to_polyp(const PolyZ& f, const FieldP& field);
/// Symmetric representatives in (-m/2, m/2].
PolyZ symmetric(const PolyZ& a, const Int& m);

/// Lifts f = lc(f) * prod(factors) mod p to the same shape mod p^exponent.
/// `factors` are monic, pairwise coprime mod p; lc(f) is a unit mod p.
std::vector<PolyZ> hensel_lift(const PolyZ& f, const std::vector<PolyP>& factors, const FieldP& field,
                               unsigned exponent);

}  // namespace dessin::modular
