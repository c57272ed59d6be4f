#include "dessin/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "dessin/error.hpp"

namespace dessin {

UPoly::UPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UPoly::UPoly(std::initializer_list<Rat> coeffs) : coeffs_(coeffs) { trim(); }

UPoly::UPoly(const Rat& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

UPoly UPoly::monomial(const Rat& coeff, std::size_t degree) {
  std::vector<Rat> c(degree + 1);
  c[degree] = coeff;
  return UPoly(std::move(c));
}

UPoly UPoly::linear(const Rat& root) { return UPoly(std::vector<Rat>{-root, Rat(1)}); }

UPoly UPoly::from_ints(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return UPoly(std::move(c));
}

void UPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat UPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }

const Rat& UPoly::leading() const {
  if (coeffs_.empty()) throw InvalidInput("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rat UPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rat> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  UPoly r = *this;
  const Rat lc = leading();
  for (auto& c : r.coeffs_) c /= lc;
  return r;
}

UPoly UPoly::scale_argument(const Rat& c) const {
  UPoly r = *this;
  Rat power = 1;
  for (auto& a : r.coeffs_) {
    a *= power;
    power *= c;
  }
  r.trim();
  return r;
}

UPoly UPoly::pow(unsigned e) const {
  UPoly result(Rat(1));
  UPoly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

Rat UPoly::content() const {
  if (is_zero()) return Rat(0);
  Int num = 0;
  Int den = 1;
  for (const auto& c : coeffs_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  }
  Rat q{num, den};
  q.canonicalize();
  return q;
}

UPoly UPoly::primitive() const {
  if (is_zero()) return {};
  Rat c = content();
  if (leading() < 0) c = -c;
  UPoly r = *this;
  for (auto& a : r.coeffs_) a /= c;
  return r;
}

bool UPoly::has_integer_coeffs() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c.get_den() == 1; });
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UPoly(std::move(c));
}

UPoly& UPoly::operator*=(const UPoly& o) { return *this = *this * o; }

UPoly& UPoly::operator*=(const Rat& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& a : coeffs_) a *= c;
  return *this;
}

UPoly operator-(const UPoly& a) {
  UPoly r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

std::pair<UPoly, UPoly> divrem(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InvalidInput("polynomial division by zero");
  if (a.degree() < b.degree()) return {UPoly{}, a};
  std::vector<Rat> rem = a.coeffs();
  std::vector<Rat> quot(rem.size() - b.coeffs().size() + 1);
  const Rat& lc = b.leading();
  const std::size_t db = b.coeffs().size() - 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rat q = rem[k + db] / lc;
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeffs()[j];
  }
  rem.resize(db);
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly divide_exact(const UPoly& a, const UPoly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw ComputationError("inexact polynomial division");
  return q;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a;
  UPoly y = b;
  while (!y.is_zero()) {
    UPoly r = divrem(x, y).second;
    // Keep the remainder sequence primitive to stop coefficient growth.
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive();
  }
  return x.monic();
}

bool canonical_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                      b.coeffs().end());
}

UPoly parse_upoly(std::string_view text) {
  std::vector<Rat> coeffs;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                           : comma - start);
    coeffs.push_back(parse_rat(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return UPoly(std::move(coeffs));
}

std::string to_string(const UPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i > 0) out += ',';
    out += to_string(f.coeffs()[i]);
  }
  return out;
}

std::string to_pretty(const UPoly& f, std::string_view var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    Rat c = f.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0 || c != 1) os << to_string(c);
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

}  // namespace dessin
