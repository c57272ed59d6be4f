#include "dessin/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dessin/error.hpp"

namespace dessin {

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Rat& q, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.precision());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, o.precision());
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.precision());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

long Real::log2_floor() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return mpfr_get_exp(v_) - 1;
}

std::string Real::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return buf.data();
}

namespace {

void widen(Real& a, const Real& b) {
  if (b.precision() > a.precision()) mpfr_prec_round(a.get(), b.precision(), MPFR_RNDN);
}

}  // namespace

Real& Real::operator+=(const Real& o) {
  widen(*this, o);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen(*this, o);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen(*this, o);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen(*this, o);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real operator-(const Real& a) {
  Real r(a.precision());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  Real r(a.precision());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real abs(const Real& a) {
  Real r(a.precision());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

Real Real::pow2(long e, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

std::string Complex::to_string(int digits) const {
  std::string s = re.to_string(digits);
  if (im.is_zero()) return s;
  if (mpfr_sgn(im.get()) >= 0) s += "+";
  return s + im.to_string(digits) + "i";
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  const Real d = o.norm();
  Real r = (re * o.re + im * o.im) / d;
  Real i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CPoly to_cpoly(const UPoly& f, mpfr_prec_t bits) {
  CPoly out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.emplace_back(c, bits);
  return out;
}

Complex horner(const CPoly& f, const Complex& z) {
  Complex acc = f.back();
  for (std::size_t k = f.size() - 1; k-- > 0;) acc = acc * z + f[k];
  return acc;
}

std::pair<Complex, Complex> horner_with_derivative(const CPoly& f, const Complex& z) {
  Complex p = f.back();
  Complex dp(z.precision());
  for (std::size_t k = f.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + f[k];
  }
  return {p, dp};
}

namespace {

Complex with_precision(const Complex& z, mpfr_prec_t bits) {
  Complex r(bits);
  mpfr_set(r.re.get(), z.re.get(), MPFR_RNDN);
  mpfr_set(r.im.get(), z.im.get(), MPFR_RNDN);
  return r;
}

CPoly trimmed(const CPoly& f) {
  CPoly g = f;
  while (!g.empty() && g.back().re.is_zero() && g.back().im.is_zero()) g.pop_back();
  return g;
}

std::vector<Complex> initial_circle(const CPoly& f, mpfr_prec_t bits) {
  const std::size_t d = f.size() - 1;
  const double lead = static_cast<double>(f.back().abs().log2_floor());
  double best = -1e300;
  for (std::size_t i = 0; i < d; ++i) {
    const Real a = f[i].abs();
    if (a.is_zero()) continue;
    best = std::max(best, (static_cast<double>(a.log2_floor()) + 1 - lead) / static_cast<double>(d - i));
  }
  if (best < -1e299) best = 0;
  const Real radius = Real::pow2(static_cast<long>(std::ceil(best)) + 1, bits);
  std::vector<Complex> z;
  z.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + 0.4;
    z.emplace_back(radius * Real(std::cos(angle), bits), radius * Real(std::sin(angle), bits));
  }
  return z;
}

}  // namespace

bool aberth(const CPoly& f_in, std::vector<Complex>& roots, mpfr_prec_t bits, int max_iterations) {
  const CPoly f = trimmed(f_in);
  if (f.size() < 2) throw InvalidInput("root finding needs a polynomial of degree >= 1");
  const std::size_t d = f.size() - 1;
  CPoly fw;
  fw.reserve(f.size());
  for (const auto& c : f) fw.push_back(with_precision(c, bits));
  if (roots.size() != d) {
    roots = initial_circle(fw, bits);
  } else {
    for (auto& z : roots) z = with_precision(z, bits);
  }
  if (d == 1) {
    roots[0] = -(fw[0] / fw[1]);
    return true;
  }
  if (max_iterations <= 0) max_iterations = 200 + 40 * static_cast<int>(d);
  const long target = -static_cast<long>(bits) + 12;
  const Complex one(Rat(1), bits);
  std::vector<bool> done(d, false);
  std::vector<Real> magnitudes;
  for (const auto& c : fw) magnitudes.push_back(c.abs());
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < d; ++k) {
      if (done[k]) continue;
      auto [p, dp] = horner_with_derivative(fw, roots[k]);
      if (p.re.is_zero() && p.im.is_zero()) {
        done[k] = true;
        continue;
      }
      // Residual at the rounding-noise level of the evaluation.
      Real bound(bits);
      const Real r = roots[k].abs();
      for (std::size_t i = fw.size(); i-- > 0;) bound = bound * r + magnitudes[i];
      const bool at_noise = p.abs().log2_floor() < bound.log2_floor() - static_cast<long>(bits) + 8;
      Complex sum(bits);
      for (std::size_t j = 0; j < d; ++j) {
        if (j == k) continue;
        Complex diff = roots[k] - roots[j];
        if (diff.re.is_zero() && diff.im.is_zero()) diff.re = Real::pow2(target, bits);
        sum += one / diff;
      }
      Complex w(bits);
      if (dp.re.is_zero() && dp.im.is_zero()) {
        // p / p' undefined: Ehrlich form w = 1 / (p'/p - sum) with p' = 0.
        w = one / (-sum);
      } else {
        const Complex ratio = p / dp;
        w = ratio / (one - ratio * sum);
      }
      roots[k] -= w;
      const long scale = std::max(0L, roots[k].abs().log2_floor());
      if (!at_noise && w.abs().log2_floor() - scale > target) {
        all_done = false;
      } else {
        done[k] = true;
      }
    }
    if (all_done) return true;
  }
  return false;
}

namespace {

bool same_root(const Complex& a, const Complex& b, long tolerance_log2) {
  const long scale = std::max(0L, std::max(a.abs().log2_floor(), b.abs().log2_floor()));
  return (a - b).abs().log2_floor() <= tolerance_log2 + scale;
}

// Greedy nearest matching of two root lists of equal length.
bool roots_agree(const std::vector<Complex>& a, const std::vector<Complex>& b, long tolerance_log2) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& z : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && same_root(z, b[j], tolerance_log2)) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

void sort_roots(std::vector<Complex>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    const int c = mpfr_cmp(a.re.get(), b.re.get());
    if (c != 0) return c < 0;
    return mpfr_cmp(a.im.get(), b.im.get()) < 0;
  });
}

}  // namespace

RootApproximations complex_roots(const UPoly& f, unsigned precision_bits) {
  if (f.degree() < 1) throw InvalidInput("complex_roots needs degree >= 1");
  if (gcd(f, f.derivative()).degree() > 0) {
    throw InvalidInput("polynomial is not squarefree; take squarefree_part first");
  }
  const long residual_log2 = -static_cast<long>(precision_bits) / 2;
  std::vector<Complex> previous;
  std::vector<Complex> roots;
  for (mpfr_prec_t work = 128; work <= (1L << 16); work *= 2) {
    const CPoly cf = to_cpoly(f, work);
    const bool converged = aberth(cf, roots, work);
    bool residuals_ok = converged;
    for (const auto& z : roots) {
      if (!residuals_ok) break;
      const Real r = horner(cf, z).abs();
      if (!r.is_zero() && r.log2_floor() >= residual_log2) residuals_ok = false;
    }
    if (residuals_ok && !previous.empty() && roots_agree(roots, previous, residual_log2 / 2)) {
      sort_roots(roots);
      return {roots, work};
    }
    previous = roots;
  }
  throw ComputationError("complex_roots: no convergence within the precision cap");
}

std::vector<Complex> complex_roots(const CPoly& f_in, mpfr_prec_t bits) {
  const CPoly f = trimmed(f_in);
  if (f.size() < 2) return {};
  std::vector<Complex> roots;
  if (!aberth(f, roots, bits)) {
    std::vector<Complex> retry = roots;
    if (!aberth(f, retry, bits * 2)) throw ComputationError("Aberth iteration did not converge");
    roots.clear();
    for (const auto& z : retry) roots.push_back(with_precision(z, bits));
  }
  sort_roots(roots);
  return roots;
}

}  // namespace dessin
