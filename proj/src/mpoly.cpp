#include "dessin/mpoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dessin/error.hpp"

namespace dessin {

MPoly::MPoly(const Rat& constant) : constant_(constant) {}

MPoly MPoly::var(int index) {
  if (index < 0) throw InvalidInput("negative variable index");
  MPoly p;
  p.main_var_ = index;
  p.coeffs_ = {MPoly(Rat(0)), MPoly(Rat(1))};
  return p;
}

MPoly MPoly::from_coefficients(int index, const std::vector<MPoly>& coeffs) {
  MPoly result;
  MPoly power(Rat(1));
  const MPoly x = var(index);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k].is_zero()) result += coeffs[k] * power;
    if (k + 1 < coeffs.size()) power *= x;
  }
  return result;
}

MPoly MPoly::from_upoly(const UPoly& f, int index) {
  if (f.degree() <= 0) return MPoly(f.coeff(0));
  MPoly p;
  p.main_var_ = index;
  for (const auto& c : f.coeffs()) p.coeffs_.emplace_back(c);
  return p;
}

void MPoly::normalize() {
  if (main_var_ < 0) return;
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.size() <= 1) {
    MPoly inner = coeffs_.empty() ? MPoly(Rat(0)) : std::move(coeffs_.front());
    *this = std::move(inner);
  }
}

bool MPoly::contains(int index) const {
  if (main_var_ < index) return false;
  if (main_var_ == index) return true;
  return std::any_of(coeffs_.begin(), coeffs_.end(), [&](const MPoly& c) { return c.contains(index); });
}

int MPoly::degree_in(int index) const {
  if (is_zero()) return -1;
  if (main_var_ < index) return 0;
  if (main_var_ == index) return static_cast<int>(coeffs_.size()) - 1;
  int d = 0;
  for (const auto& c : coeffs_) d = std::max(d, c.degree_in(index));
  return d;
}

int MPoly::total_degree() const {
  if (is_zero()) return -1;
  if (is_constant()) return 0;
  int d = -1;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const int t = coeffs_[k].total_degree();
    if (t >= 0) d = std::max(d, static_cast<int>(k) + t);
  }
  return d;
}

std::vector<int> MPoly::variables() const {
  std::set<int> vars;
  std::vector<const MPoly*> stack{this};
  while (!stack.empty()) {
    const MPoly* p = stack.back();
    stack.pop_back();
    if (p->is_constant()) continue;
    vars.insert(p->main_var_);
    for (const auto& c : p->coeffs_) stack.push_back(&c);
  }
  return {vars.begin(), vars.end()};
}

std::vector<MPoly> MPoly::coefficients_in(int index) const {
  if (main_var_ < index) return {*this};
  if (main_var_ == index) return coeffs_;
  std::vector<MPoly> result;
  MPoly power(Rat(1));
  const MPoly x = var(main_var_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const auto sub = coeffs_[k].coefficients_in(index);
    if (sub.size() > result.size()) result.resize(sub.size());
    for (std::size_t j = 0; j < sub.size(); ++j) {
      if (!sub[j].is_zero()) result[j] += sub[j] * power;
    }
    if (k + 1 < coeffs_.size()) power *= x;
  }
  while (!result.empty() && result.back().is_zero()) result.pop_back();
  if (result.empty()) result.emplace_back(Rat(0));
  return result;
}

MPoly MPoly::substitute(int index, const Rat& value) const {
  if (main_var_ < index) return *this;
  if (main_var_ == index) {
    MPoly acc = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc.scaled(value) + coeffs_[k];
    return acc;
  }
  MPoly r = *this;
  for (auto& c : r.coeffs_) c = c.substitute(index, value);
  r.normalize();
  return r;
}

MPoly MPoly::derivative(int index) const {
  if (main_var_ < index) return MPoly(Rat(0));
  MPoly r;
  r.main_var_ = main_var_;
  if (main_var_ == index) {
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
      r.coeffs_.push_back(coeffs_[k].scaled(Rat(static_cast<long>(k))));
    }
  } else {
    for (const auto& c : coeffs_) r.coeffs_.push_back(c.derivative(index));
  }
  r.normalize();
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly result(Rat(1));
  MPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Rat MPoly::content() const {
  Int num = 0;
  Int den = 1;
  std::vector<const MPoly*> stack{this};
  while (!stack.empty()) {
    const MPoly* p = stack.back();
    stack.pop_back();
    if (p->is_constant()) {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), p->constant_.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p->constant_.get_den_mpz_t());
    } else {
      for (const auto& c : p->coeffs_) stack.push_back(&c);
    }
  }
  Rat q{num, den};
  q.canonicalize();
  return q;
}

const Rat& MPoly::base_leading() const {
  const MPoly* p = this;
  while (!p->is_constant()) p = &p->coeffs_.back();
  return p->constant_;
}

MPoly MPoly::primitive() const {
  if (is_zero()) return *this;
  Rat c = content();
  if (base_leading() < 0) c = -c;
  return scaled(1 / c);
}

UPoly MPoly::to_upoly() const {
  if (is_constant()) return UPoly(constant_);
  std::vector<Rat> c;
  for (const auto& k : coeffs_) {
    if (!k.is_constant()) throw InvalidInput("polynomial is not univariate");
    c.push_back(k.constant_);
  }
  return UPoly(std::move(c));
}

MPoly MPoly::scaled(const Rat& c) const {
  if (c == 0) return MPoly(Rat(0));
  MPoly r = *this;
  std::vector<MPoly*> stack{&r};
  while (!stack.empty()) {
    MPoly* p = stack.back();
    stack.pop_back();
    if (p->is_constant()) {
      p->constant_ *= c;
    } else {
      for (auto& k : p->coeffs_) stack.push_back(&k);
    }
  }
  return r;
}

MPoly add_impl(const MPoly& a, const MPoly& b, bool subtract) {
  if (a.main_var_ < 0 && b.main_var_ < 0) {
    return MPoly(subtract ? Rat(a.constant_ - b.constant_) : Rat(a.constant_ + b.constant_));
  }
  if (a.main_var_ == b.main_var_) {
    MPoly r;
    r.main_var_ = a.main_var_;
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    r.coeffs_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const MPoly zero;
      const MPoly& x = k < a.coeffs_.size() ? a.coeffs_[k] : zero;
      const MPoly& y = k < b.coeffs_.size() ? b.coeffs_[k] : zero;
      r.coeffs_[k] = add_impl(x, y, subtract);
    }
    r.normalize();
    return r;
  }
  if (a.main_var_ > b.main_var_) {
    MPoly r = a;
    r.coeffs_[0] = add_impl(a.coeffs_[0], b, subtract);
    r.normalize();
    return r;
  }
  MPoly r = subtract ? -b : b;
  r.coeffs_[0] = add_impl(a, b.coeffs_[0], subtract);
  r.normalize();
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) { return *this = add_impl(*this, o, false); }
MPoly& MPoly::operator-=(const MPoly& o) { return *this = add_impl(*this, o, true); }
MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly operator-(const MPoly& a) { return a.scaled(Rat(-1)); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return MPoly(Rat(0));
  if (a.is_constant()) return b.scaled(a.constant_);
  if (b.is_constant()) return a.scaled(b.constant_);
  MPoly r;
  if (a.main_var_ == b.main_var_) {
    r.main_var_ = a.main_var_;
    r.coeffs_.resize(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        if (b.coeffs_[j].is_zero()) continue;
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
  } else {
    const MPoly& outer = a.main_var_ > b.main_var_ ? a : b;
    const MPoly& inner = a.main_var_ > b.main_var_ ? b : a;
    r.main_var_ = outer.main_var_;
    r.coeffs_.reserve(outer.coeffs_.size());
    for (const auto& c : outer.coeffs_) r.coeffs_.push_back(c * inner);
  }
  r.normalize();
  return r;
}

bool try_divide(const MPoly& a, const MPoly& b, MPoly& quotient) {
  if (b.is_zero()) throw InvalidInput("multivariate division by zero");
  if (a.is_zero()) {
    quotient = MPoly(Rat(0));
    return true;
  }
  if (b.is_constant()) {
    quotient = a * MPoly(Rat(1 / b.constant_value()));
    return true;
  }
  const int w = std::max(a.main_var(), b.main_var());
  if (b.main_var() < w) {
    // b is free of x_w: divide coefficient by coefficient.
    std::vector<MPoly> qs;
    for (const auto& c : a.main_coeffs()) {
      MPoly q;
      if (!try_divide(c, b, q)) return false;
      qs.push_back(std::move(q));
    }
    quotient = MPoly::from_coefficients(w, qs);
    return true;
  }
  if (a.main_var() < w) return false;
  const int db = b.degree_in(w);
  const MPoly& lcb = b.main_coeffs().back();
  MPoly rem = a;
  std::vector<MPoly> qs(static_cast<std::size_t>(std::max(0, a.degree_in(w) - db + 1)));
  while (!rem.is_zero()) {
    const int dr = rem.degree_in(w);
    if (dr < db) return false;
    const auto rc = rem.coefficients_in(w);
    MPoly t;
    if (!try_divide(rc.back(), lcb, t)) return false;
    qs[static_cast<std::size_t>(dr - db)] += t;
    rem -= t * MPoly::var(w).pow(static_cast<unsigned>(dr - db)) * b;
    if (!rem.is_zero() && rem.degree_in(w) >= dr) return false;
  }
  quotient = MPoly::from_coefficients(w, qs);
  return true;
}

MPoly divide_exact(const MPoly& a, const MPoly& b) {
  MPoly q;
  if (!try_divide(a, b, q)) throw ComputationError("inexact multivariate division");
  return q;
}

namespace {

using Coeffs = std::vector<MPoly>;

int deg(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// lc(B)^(deg A - deg B + 1) * A mod B.
Coeffs pseudo_remainder(Coeffs a, const Coeffs& b) {
  const int db = deg(b);
  int e = deg(a) - db + 1;
  const MPoly& lcb = b.back();
  while (!a.empty() && deg(a) >= db) {
    const MPoly lca = a.back();
    const int shift = deg(a) - db;
    for (auto& c : a) c = c * lcb;
    for (int j = 0; j <= db; ++j) a[static_cast<std::size_t>(j + shift)] -= lca * b[static_cast<std::size_t>(j)];
    trim(a);
    --e;
  }
  if (e > 0) {
    const MPoly f = lcb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c = c * f;
  }
  return a;
}

}  // namespace

MPoly resultant(const MPoly& f, const MPoly& g, int index) {
  if (f.is_zero() || g.is_zero()) throw InvalidInput("resultant of a zero polynomial");
  if (!f.contains(index) && !g.contains(index)) throw InvalidInput("no elimination variable");
  Coeffs a = f.coefficients_in(index);
  Coeffs b = g.coefficients_in(index);
  if (deg(a) == 0) return a.front().pow(static_cast<unsigned>(deg(b)));
  if (deg(b) == 0) return b.front().pow(static_cast<unsigned>(deg(a)));

  int sign = 1;
  if (deg(a) < deg(b)) {
    std::swap(a, b);
    if ((deg(a) % 2 == 1) && (deg(b) % 2 == 1)) sign = -sign;
  }
  MPoly g_acc(Rat(1));
  MPoly h(Rat(1));
  while (true) {
    const int delta = deg(a) - deg(b);
    if ((deg(a) % 2 == 1) && (deg(b) % 2 == 1)) sign = -sign;
    Coeffs r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.empty()) return MPoly(Rat(0));
    const MPoly divisor = g_acc * h.pow(static_cast<unsigned>(delta));
    for (auto& c : r) c = divide_exact(c, divisor);
    b = std::move(r);
    g_acc = a.back();
    // h <- g^delta / h^(delta - 1)
    if (delta == 0) {
      // h unchanged only when delta == 0 would mean h^1 * g^0; keep h.
    } else {
      h = divide_exact(g_acc.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
    }
    if (deg(b) == 0) {
      const int da = deg(a);
      MPoly res = divide_exact(b.back().pow(static_cast<unsigned>(da)), h.pow(static_cast<unsigned>(da - 1)));
      return sign > 0 ? res : -res;
    }
  }
}

std::string to_string(const MPoly& f, std::span<const std::string> names) {
  if (f.is_constant()) return to_string(f.constant_value());
  std::ostringstream os;
  bool first = true;
  const auto& cs = f.main_coeffs();
  const std::string name = static_cast<std::size_t>(f.main_var()) < names.size()
                               ? names[static_cast<std::size_t>(f.main_var())]
                               : "x" + std::to_string(f.main_var());
  for (std::size_t k = cs.size(); k-- > 0;) {
    if (cs[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const std::string inner = to_string(cs[k], names);
    if (k == 0) {
      os << inner;
      continue;
    }
    if (inner != "1") os << '(' << inner << ")*";
    os << name;
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

}  // namespace dessin
