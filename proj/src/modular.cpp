#include "modular.hpp"

#include <algorithm>

#include "dessin/error.hpp"

namespace dessin::modular {

std::uint64_t FieldP::inv(std::uint64_t a) const {
  // Fermat: a^(p-2).
  std::uint64_t result = 1;
  std::uint64_t base = a % p_;
  std::uint64_t e = p_ - 2;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

std::uint64_t FieldP::reduce(const Int& z) const {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
  return r.get_ui();
}

void FieldP::trim(PolyP& f) const {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

PolyP FieldP::add(const PolyP& a, const PolyP& b) const {
  PolyP r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = add(r[i], b[i]);
  trim(r);
  return r;
}

PolyP FieldP::sub(const PolyP& a, const PolyP& b) const {
  PolyP r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = sub(r[i], b[i]);
  trim(r);
  return r;
}

PolyP FieldP::mul(const PolyP& a, const PolyP& b) const {
  if (a.empty() || b.empty()) return {};
  PolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

PolyP FieldP::scale(const PolyP& a, std::uint64_t c) const {
  PolyP r = a;
  for (auto& x : r) x = mul(x, c);
  trim(r);
  return r;
}

std::pair<PolyP, PolyP> FieldP::divrem(const PolyP& a, const PolyP& b) const {
  if (b.empty()) throw InvalidInput("division by zero polynomial mod p");
  if (a.size() < b.size()) return {PolyP{}, a};
  PolyP r = a;
  PolyP q(a.size() - b.size() + 1, 0);
  const std::uint64_t lc_inv = inv(b.back());
  const std::size_t db = b.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::uint64_t c = mul(r[k + db], lc_inv);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k + j] = sub(r[k + j], mul(c, b[j]));
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

PolyP FieldP::monic(const PolyP& a) const {
  if (a.empty()) return a;
  return scale(a, inv(a.back()));
}

PolyP FieldP::derivative(const PolyP& a) const {
  if (a.size() <= 1) return {};
  PolyP d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mul(a[i], i % p_);
  trim(d);
  return d;
}

PolyP FieldP::gcd(PolyP a, PolyP b) const {
  while (!b.empty()) {
    PolyP r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

std::pair<PolyP, PolyP> FieldP::bezout(const PolyP& a, const PolyP& b) const {
  // Extended Euclid tracking the cofactor of a only.
  PolyP r0 = a;
  PolyP r1 = b;
  PolyP s0{1};
  PolyP s1{};
  while (!r1.empty()) {
    auto [q, r] = divrem(r0, r1);
    PolyP s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.size() != 1) throw ComputationError("bezout: inputs not coprime mod p");
  const std::uint64_t c = inv(r0[0]);
  PolyP s = rem(scale(s0, c), b);
  // t = (1 - s a) / b
  PolyP t = divrem(sub(PolyP{1}, mul(s, a)), b).first;
  return {s, t};
}

PolyP FieldP::powmod(const PolyP& base, const Int& e, const PolyP& m) const {
  PolyP result{1};
  result = rem(result, m);
  PolyP b = rem(base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b), m);
  }
  return result;
}

std::vector<PolyP> FieldP::equal_degree_split(const PolyP& f, int d, std::mt19937_64& rng) const {
  const int n = static_cast<int>(f.size()) - 1;
  if (n == d) return {f};
  Int pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p_, static_cast<unsigned long>(d));
  const Int e = (pd - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> coeff(0, p_ - 1);
  while (true) {
    PolyP a(static_cast<std::size_t>(n), 0);
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (a.size() <= 1) continue;
    PolyP g = gcd(a, f);
    if (g.size() > 1 && g.size() < f.size()) {
      auto left = equal_degree_split(g, d, rng);
      auto right = equal_degree_split(divrem(f, g).first, d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
    PolyP b = sub(powmod(a, e, f), PolyP{1});
    g = gcd(b, f);
    if (g.size() > 1 && g.size() < f.size()) {
      auto left = equal_degree_split(g, d, rng);
      auto right = equal_degree_split(monic(divrem(f, g).first), d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::vector<PolyP> FieldP::factor_squarefree(const PolyP& f_in, std::mt19937_64& rng) const {
  std::vector<PolyP> out;
  PolyP f = monic(f_in);
  if (f.size() <= 1) return out;
  const PolyP x{0, 1};
  PolyP h = rem(x, f);
  const Int p_int(static_cast<unsigned long>(p_));
  int d = 0;
  while (static_cast<int>(f.size()) - 1 >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, p_int, f);
    PolyP g = gcd(sub(h, x), f);
    if (g.size() > 1) {
      auto parts = equal_degree_split(g, d, rng);
      out.insert(out.end(), parts.begin(), parts.end());
      f = monic(divrem(f, g).first);
      h = rem(h, f);
    }
  }
  if (f.size() > 1) out.push_back(f);
  for (auto& g : out) g = monic(g);
  std::sort(out.begin(), out.end(), [](const PolyP& a, const PolyP& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

void RingM::trim(PolyZ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyZ RingM::reduce(const PolyZ& a) const {
  PolyZ r = a;
  for (auto& c : r) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m_.get_mpz_t());
  trim(r);
  return r;
}

PolyZ RingM::add(const PolyZ& a, const PolyZ& b) const {
  PolyZ r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return reduce(r);
}

PolyZ RingM::sub(const PolyZ& a, const PolyZ& b) const {
  PolyZ r(std::max(a.size(), b.size()), Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return reduce(r);
}

PolyZ RingM::mul(const PolyZ& a, const PolyZ& b) const {
  if (a.empty() || b.empty()) return {};
  PolyZ r(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return reduce(r);
}

PolyZ RingM::scale(const PolyZ& a, const Int& c) const {
  PolyZ r = a;
  for (auto& x : r) x *= c;
  return reduce(r);
}

Int RingM::inv(const Int& a) const {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m_.get_mpz_t()) == 0) {
    throw ComputationError("non-invertible element modulo m");
  }
  return r;
}

std::pair<PolyZ, PolyZ> RingM::divrem(const PolyZ& a_in, const PolyZ& b_in) const {
  const PolyZ a = reduce(a_in);
  const PolyZ b = reduce(b_in);
  if (b.empty()) throw InvalidInput("division by zero polynomial mod m");
  if (a.size() < b.size()) return {PolyZ{}, a};
  PolyZ r = a;
  PolyZ q(a.size() - b.size() + 1, Int(0));
  const Int lc_inv = inv(b.back());
  const std::size_t db = b.size() - 1;
  for (std::size_t k = q.size(); k-- > 0;) {
    Int c = r[k + db] * lc_inv;
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m_.get_mpz_t());
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      r[k + j] -= c * b[j];
      mpz_fdiv_r(r[k + j].get_mpz_t(), r[k + j].get_mpz_t(), m_.get_mpz_t());
    }
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

PolyZ to_polyz(const PolyP& f) {
  PolyZ r;
  r.reserve(f.size());
  for (auto c : f) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

PolyP to_polyp(const PolyZ& f, const FieldP& field) {
  PolyP r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(field.reduce(c));
  field.trim(r);
  return r;
}

PolyZ symmetric(const PolyZ& a, const Int& m) {
  PolyZ r = a;
  const Int half = m / 2;
  for (auto& c : r) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

namespace {

struct LiftState {
  PolyZ g, h, s, t;
};

// One quadratic Hensel step from modulus m to m^2.
LiftState hensel_step(const PolyZ& f, const LiftState& in, const Int& m) {
  const RingM ring(m * m);
  const PolyZ e = ring.sub(f, ring.mul(in.g, in.h));
  auto [q, r] = ring.divrem(ring.mul(in.s, e), in.h);
  LiftState out;
  out.g = ring.add(in.g, ring.add(ring.mul(in.t, e), ring.mul(q, in.g)));
  out.h = ring.add(in.h, r);
  const PolyZ b = ring.sub(ring.add(ring.mul(in.s, out.g), ring.mul(in.t, out.h)), PolyZ{Int(1)});
  auto [c, d] = ring.divrem(ring.mul(in.s, b), out.h);
  out.s = ring.sub(in.s, d);
  out.t = ring.sub(in.t, ring.add(ring.mul(in.t, b), ring.mul(c, out.g)));
  return out;
}

}  // namespace

std::vector<PolyZ> hensel_lift(const PolyZ& f, const std::vector<PolyP>& factors, const FieldP& field,
                               unsigned exponent) {
  Int target;
  mpz_ui_pow_ui(target.get_mpz_t(), field.prime(), exponent);
  const RingM ring_target(target);
  if (factors.size() == 1) {
    return {ring_target.scale(f, ring_target.inv(f.back()))};
  }
  const std::size_t k = factors.size() / 2;
  PolyP g0{field.reduce(f.back())};
  for (std::size_t i = 0; i < k; ++i) g0 = field.mul(g0, factors[i]);
  PolyP h0{1};
  for (std::size_t i = k; i < factors.size(); ++i) h0 = field.mul(h0, factors[i]);
  auto [s0, t0] = field.bezout(g0, h0);

  LiftState state{to_polyz(g0), to_polyz(h0), to_polyz(s0), to_polyz(t0)};
  Int m(static_cast<unsigned long>(field.prime()));
  while (m < target) {
    state = hensel_step(f, state, m);
    m *= m;
  }
  const PolyZ g = ring_target.reduce(state.g);
  const PolyZ h = ring_target.reduce(state.h);
  std::vector<PolyP> left_factors(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<PolyP> right_factors(factors.begin() + static_cast<std::ptrdiff_t>(k), factors.end());
  auto left = hensel_lift(g, left_factors, field, exponent);
  auto right = hensel_lift(h, right_factors, field, exponent);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

}  // namespace dessin::modular
