#pragma once

#include <span>
#include <string>
#include <vector>

#include "dessin/rational.hpp"
#include "dessin/upoly.hpp"

namespace dessin {

/// Multivariate polynomial over the rationals in recursive dense form.
///
/// A non-constant MPoly is a polynomial in its main variable (the largest
/// variable index it contains) whose coefficients are MPoly values in strictly
/// smaller variables. The representation is canonical: no trailing zero
/// coefficients at any level and no single-coefficient wrappers, so structural
/// equality is polynomial equality.
class MPoly {
 public:
  MPoly() = default;
  MPoly(const Rat& constant);  // NOLINT(google-explicit-constructor)
  MPoly(long constant) : MPoly(Rat(constant)) {}  // NOLINT(google-explicit-constructor)

  /// The variable x_index.
  static MPoly var(int index);
  /// Sum of coeffs[k] * x_index^k; coefficients may contain any variables.
  static MPoly from_coefficients(int index, const std::vector<MPoly>& coeffs);
  static MPoly from_upoly(const UPoly& f, int index);

  [[nodiscard]] bool is_zero() const { return main_var_ < 0 && constant_ == 0; }
  [[nodiscard]] bool is_constant() const { return main_var_ < 0; }
  /// Largest variable index present, or -1 for constants.
  [[nodiscard]] int main_var() const { return main_var_; }
  [[nodiscard]] const Rat& constant_value() const { return constant_; }
  /// Coefficients in the main variable (empty for constants).
  [[nodiscard]] const std::vector<MPoly>& main_coeffs() const { return coeffs_; }

  [[nodiscard]] bool contains(int index) const;
  [[nodiscard]] int degree_in(int index) const;
  /// Total degree; -1 for the zero polynomial.
  [[nodiscard]] int total_degree() const;
  /// Sorted list of variable indices occurring in the polynomial.
  [[nodiscard]] std::vector<int> variables() const;

  /// Coefficients with respect to x_index, none of which contain x_index.
  [[nodiscard]] std::vector<MPoly> coefficients_in(int index) const;
  [[nodiscard]] MPoly substitute(int index, const Rat& value) const;
  [[nodiscard]] MPoly derivative(int index) const;
  [[nodiscard]] MPoly pow(unsigned e) const;

  /// Positive rational content: gcd of numerators over lcm of denominators.
  [[nodiscard]] Rat content() const;
  /// Integer-coefficient primitive associate whose leading coefficient (in the
  /// recursive order) is positive.
  [[nodiscard]] MPoly primitive() const;
  /// Leading rational coefficient in the recursive order.
  [[nodiscard]] const Rat& base_leading() const;

  /// Univariate view; throws InvalidInput if more than one variable occurs.
  [[nodiscard]] UPoly to_upoly() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a);
  friend bool operator==(const MPoly& a, const MPoly& b) = default;

 private:
  void normalize();
  MPoly scaled(const Rat& c) const;

  int main_var_ = -1;
  Rat constant_ = 0;
  std::vector<MPoly> coeffs_;

  friend MPoly add_impl(const MPoly& a, const MPoly& b, bool subtract);
};

/// Exact quotient a / b, or throws ComputationError when b does not divide a.
MPoly divide_exact(const MPoly& a, const MPoly& b);
/// Returns true and sets `quotient` when b divides a exactly.
bool try_divide(const MPoly& a, const MPoly& b, MPoly& quotient);

/// Resultant with respect to x_index, computed with the subresultant
/// polynomial remainder sequence. Throws InvalidInput("no elimination
/// variable") when neither input contains x_index, or when an input is zero.
MPoly resultant(const MPoly& f, const MPoly& g, int index);

/// Recursive Horner evaluation in any ring T. `values[i]` is the value of x_i.
template <class T, class FromRat>
T evaluate(const MPoly& f, std::span<const T> values, const FromRat& from_rat) {
  if (f.is_constant()) return from_rat(f.constant_value());
  const auto& cs = f.main_coeffs();
  const T& x = values[static_cast<std::size_t>(f.main_var())];
  T acc = evaluate(cs.back(), values, from_rat);
  for (std::size_t k = cs.size() - 1; k-- > 0;) acc = acc * x + evaluate(cs[k], values, from_rat);
  return acc;
}

/// Sum-of-terms rendering using the supplied variable names.
std::string to_string(const MPoly& f, std::span<const std::string> names);

}  // namespace dessin
