#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dessin/rational.hpp"

namespace dessin {

/// Dense univariate polynomial over the rationals, constant term first.
/// The coefficient vector never carries trailing zeros; the zero polynomial is
/// the empty vector.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs);
  UPoly(std::initializer_list<Rat> coeffs);
  explicit UPoly(const Rat& constant);

  static UPoly monomial(const Rat& coeff, std::size_t degree);
  /// z - root
  static UPoly linear(const Rat& root);
  static UPoly from_ints(std::initializer_list<long> coeffs);

  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] bool is_constant() const { return coeffs_.size() <= 1; }
  [[nodiscard]] const std::vector<Rat>& coeffs() const { return coeffs_; }
  /// Coefficient of z^i; zero beyond the degree.
  [[nodiscard]] Rat coeff(std::size_t i) const;
  [[nodiscard]] const Rat& leading() const;

  [[nodiscard]] Rat eval(const Rat& x) const;
  [[nodiscard]] UPoly derivative() const;
  [[nodiscard]] UPoly monic() const;
  /// Returns f(c*z).
  [[nodiscard]] UPoly scale_argument(const Rat& c) const;
  [[nodiscard]] UPoly pow(unsigned e) const;

  /// Positive rational c such that f / c has coprime integer coefficients.
  [[nodiscard]] Rat content() const;
  /// Primitive integer-coefficient associate with positive leading coefficient.
  [[nodiscard]] UPoly primitive() const;
  [[nodiscard]] bool has_integer_coeffs() const;

  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  UPoly& operator*=(const UPoly& o);
  UPoly& operator*=(const Rat& c);

  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(UPoly a, const Rat& c) { return a *= c; }
  friend UPoly operator-(const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim();
  std::vector<Rat> coeffs_;
};

/// Euclidean division; throws InvalidInput when dividing by zero.
std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b);
/// Exact quotient; throws ComputationError when the remainder is nonzero.
UPoly divide_exact(const UPoly& a, const UPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

/// Lexicographic order on (degree, coefficients from the constant up).
bool canonical_less(const UPoly& a, const UPoly& b);

/// Shared text format: comma-separated coefficients, constant first, each an
/// integer or "n/d". The zero polynomial is "0".
UPoly parse_upoly(std::string_view text);
std::string to_string(const UPoly& f);
/// Human-readable form in the variable `var`, highest degree first.
std::string to_pretty(const UPoly& f, std::string_view var = "t");

}  // namespace dessin
