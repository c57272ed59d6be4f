#pragma once

#include <mpfr.h>

#include <string>
#include <vector>

#include "dessin/rational.hpp"
#include "dessin/upoly.hpp"

namespace dessin {

/// RAII wrapper over an MPFR real. Every value carries its own precision; binary
/// operations produce the larger of the two operand precisions.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 128);
  Real(double v, mpfr_prec_t bits);
  Real(const Rat& q, mpfr_prec_t bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }
  [[nodiscard]] mpfr_ptr get() { return v_; }

  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  /// floor(log2|x|), or a very negative number for zero.
  [[nodiscard]] long log2_floor() const;
  [[nodiscard]] std::string to_string(int digits) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  friend Real operator-(const Real& a);
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }

  friend Real sqrt(const Real& a);
  friend Real abs(const Real& a);
  /// 2^e at the given precision.
  static Real pow2(long e, mpfr_prec_t bits);

 private:
  mpfr_t v_;
};

struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t bits = 128) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(const Rat& q, mpfr_prec_t bits) : re(q, bits), im(bits) {}

  [[nodiscard]] mpfr_prec_t precision() const { return re.precision(); }
  [[nodiscard]] Real norm() const { return re * re + im * im; }
  [[nodiscard]] Real abs() const { return sqrt(norm()); }
  [[nodiscard]] Complex conj() const { return {re, -im}; }
  [[nodiscard]] std::string to_string(int digits) const;

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
};

/// Polynomial with complex coefficients, constant term first.
using CPoly = std::vector<Complex>;

CPoly to_cpoly(const UPoly& f, mpfr_prec_t bits);
Complex horner(const CPoly& f, const Complex& z);
/// Value of f and f' at z in one pass.
std::pair<Complex, Complex> horner_with_derivative(const CPoly& f, const Complex& z);

/// Simultaneous (Aberth-Ehrlich) iteration at a fixed working precision.
/// `start` may hold previous approximations; otherwise a circle of initial
/// points is used. Returns false when the iteration cap is reached.
bool aberth(const CPoly& f, std::vector<Complex>& roots, mpfr_prec_t bits, int max_iterations = 0);

struct RootApproximations {
  std::vector<Complex> roots;
  mpfr_prec_t working_precision = 0;
};

/// All complex roots of a squarefree polynomial with |f(root)| < 2^(-precision/2),
/// escalating the working precision from 128 bits (doubling) until the
/// residuals pass and the roots agree across two consecutive precision levels.
/// Throws InvalidInput for non-squarefree input and ComputationError when the
/// escalation cap is reached.
RootApproximations complex_roots(const UPoly& f, unsigned precision_bits);

/// Roots of a complex-coefficient polynomial at a fixed working precision,
/// with the same stability escalation (used for back-substitution).
std::vector<Complex> complex_roots(const CPoly& f, mpfr_prec_t bits);

}  // namespace dessin
