#include "dessin/elimination.hpp"

#include <algorithm>
#include <limits>

#include "dessin/error.hpp"

namespace dessin {

namespace {

std::vector<int> eliminable(const MPoly& f, int target) {
  std::vector<int> out;
  for (int v : f.variables())
    if (v != target) out.push_back(v);
  return out;
}

}  // namespace

EliminationChain eliminate(const std::vector<MPoly>& system, int variable_count, int target,
                           int max_eliminated) {
  if (target < 0 || target >= variable_count) throw InvalidInput("target variable out of range");
  EliminationChain chain;
  chain.variable_count = variable_count;
  chain.target = target;
  std::vector<MPoly> current;
  for (const auto& f : system)
    if (!f.is_zero()) current.push_back(f.primitive());
  chain.levels.push_back(current);

  for (;;) {
    std::size_t pivot = current.size();
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (eliminable(current[i], target).empty()) continue;
      if (pivot == current.size() || current[i].total_degree() < current[pivot].total_degree()) pivot = i;
    }
    if (pivot == current.size()) break;
    if (static_cast<int>(chain.eliminated.size()) >= max_eliminated) {
      throw ComputationError("elimination too large: more than " + std::to_string(max_eliminated) +
                             " variables to eliminate");
    }
    int var = -1;
    for (int v : eliminable(current[pivot], target)) {
      if (var < 0 || current[pivot].degree_in(v) < current[pivot].degree_in(var)) var = v;
    }
    std::vector<MPoly> next;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (i == pivot) continue;
      if (!current[i].contains(var)) {
        next.push_back(current[i]);
        continue;
      }
      MPoly r = resultant(current[pivot], current[i], var);
      if (r.is_zero()) throw ComputationError("degenerate elimination: resultant vanishes identically");
      if (r.is_constant()) throw ComputationError("inconsistent system: constant resultant");
      next.push_back(r.primitive());
    }
    chain.eliminated.push_back(var);
    chain.levels.push_back(next);
    current = std::move(next);
  }

  UPoly g;
  bool have = false;
  for (const auto& f : current) {
    if (f.is_constant()) throw ComputationError("inconsistent system: constant equation");
    const UPoly u = f.to_upoly();
    g = have ? gcd(g, u) : u;
    have = true;
  }
  if (!have || g.degree() < 1) throw ComputationError("elimination produced no univariate relation");
  chain.result = g.primitive();
  return chain;
}

namespace {

CPoly specialize(const MPoly& f, int var, const std::vector<Complex>& values, mpfr_prec_t bits) {
  const auto from_rat = [bits](const Rat& q) { return Complex(q, bits); };
  CPoly out;
  for (const auto& c : f.coefficients_in(var))
    out.push_back(evaluate<Complex>(c, std::span<const Complex>(values), from_rat));
  return out;
}

long magnitude(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) return std::numeric_limits<long>::min() / 4;
  return z.abs().log2_floor();
}

// Drops leading coefficients that are negligible relative to the largest one.
void trim_numeric(CPoly& f, long relative_bits) {
  long top = std::numeric_limits<long>::min() / 4;
  for (const auto& c : f) top = std::max(top, magnitude(c));
  while (!f.empty() && magnitude(f.back()) < top - relative_bits) f.pop_back();
}

// |f(z)| small against the sum of |c_i||z|^i.
bool numerically_vanishes(const CPoly& f, const Complex& z, long relative_bits) {
  const long zl = std::max(0L, magnitude(z) + 1);
  long scale = std::numeric_limits<long>::min() / 4;
  for (std::size_t i = 0; i < f.size(); ++i)
    scale = std::max(scale, magnitude(f[i]) + static_cast<long>(i) * zl);
  return magnitude(horner(f, z)) < scale - relative_bits;
}

bool close(const Complex& a, const Complex& b, long relative_bits) {
  const long scale = std::max(0L, std::max(magnitude(a), magnitude(b)));
  return magnitude(a - b) < scale - relative_bits;
}

}  // namespace

long residual_log2(const std::vector<MPoly>& system, const std::vector<Complex>& values) {
  const mpfr_prec_t bits = values.empty() ? 128 : values.front().precision();
  const auto from_rat = [bits](const Rat& q) { return Complex(q, bits); };
  long worst = std::numeric_limits<long>::min() / 4;
  for (const auto& f : system)
    worst = std::max(worst, magnitude(evaluate<Complex>(f, std::span<const Complex>(values), from_rat)));
  return worst;
}

bool newton_polish(const std::vector<MPoly>& system, std::vector<Complex>& values, mpfr_prec_t bits) {
  const std::size_t n = values.size();
  if (system.size() != n) throw InvalidInput("newton_polish needs a square system");
  for (auto& v : values) v = v + Complex(bits);
  std::vector<std::vector<MPoly>> jacobian(n, std::vector<MPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) jacobian[i][j] = system[i].derivative(static_cast<int>(j));
  const auto from_rat = [bits](const Rat& q) { return Complex(q, bits); };
  const std::span<const Complex> at(values);

  for (int iter = 0; iter < 80; ++iter) {
    std::vector<std::vector<Complex>> a(n, std::vector<Complex>(n + 1, Complex(bits)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i][j] = evaluate<Complex>(jacobian[i][j], at, from_rat);
      a[i][n] = evaluate<Complex>(system[i], at, from_rat);
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t best = col;
      for (std::size_t r = col + 1; r < n; ++r)
        if (magnitude(a[r][col]) > magnitude(a[best][col])) best = r;
      if (a[best][col].re.is_zero() && a[best][col].im.is_zero()) return false;
      std::swap(a[col], a[best]);
      for (std::size_t r = col + 1; r < n; ++r) {
        const Complex m = a[r][col] / a[col][col];
        for (std::size_t k = col; k <= n; ++k) a[r][k] -= m * a[col][k];
      }
    }
    std::vector<Complex> delta(n, Complex(bits));
    for (std::size_t i = n; i-- > 0;) {
      Complex s = a[i][n];
      for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * delta[k];
      delta[i] = s / a[i][i];
    }
    long step = std::numeric_limits<long>::min() / 4;
    long size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      values[i] -= delta[i];
      step = std::max(step, magnitude(delta[i]));
      size = std::max(size, magnitude(values[i]));
    }
    if (step < size - static_cast<long>(bits) + 8) return true;
  }
  return true;
}

std::vector<NumericSolution> back_substitute(const EliminationChain& chain, const Complex& target_value,
                                             mpfr_prec_t working_bits, long residual_bits) {
  const long check_bits = static_cast<long>(working_bits) / 6;
  std::vector<std::vector<Complex>> partial(1, std::vector<Complex>(chain.variable_count, Complex(working_bits)));
  partial[0][chain.target] = target_value + Complex(working_bits);

  for (std::size_t k = chain.eliminated.size(); k-- > 0;) {
    const int var = chain.eliminated[k];
    std::vector<std::vector<Complex>> next;
    for (auto& values : partial) {
      std::vector<CPoly> polys;
      for (const auto& f : chain.levels[k]) {
        if (!f.contains(var)) continue;
        CPoly c = specialize(f, var, values, working_bits);
        trim_numeric(c, check_bits);
        if (c.size() >= 2) polys.push_back(std::move(c));
      }
      if (polys.empty()) continue;
      const auto pivot = std::min_element(polys.begin(), polys.end(),
                                          [](const CPoly& a, const CPoly& b) { return a.size() < b.size(); });
      std::vector<Complex> roots;
      try {
        roots = complex_roots(*pivot, working_bits);
      } catch (const ComputationError&) {
        continue;
      }
      for (const auto& r : roots) {
        bool ok = true;
        for (const auto& q : polys)
          if (!numerically_vanishes(q, r, check_bits)) ok = false;
        if (!ok) continue;
        auto extended = values;
        extended[var] = r;
        next.push_back(std::move(extended));
      }
    }
    partial = std::move(next);
  }

  std::vector<NumericSolution> out;
  for (auto& values : partial) {
    if (!newton_polish(chain.levels[0], values, working_bits)) continue;
    if (!close(values[chain.target], target_value, check_bits)) continue;
    const long res = residual_log2(chain.levels[0], values);
    if (res >= -residual_bits) continue;
    bool duplicate = false;
    for (const auto& s : out) {
      bool same = true;
      for (std::size_t i = 0; i < values.size(); ++i)
        if (!close(s.values[i], values[i], check_bits)) same = false;
      if (same) duplicate = true;
    }
    if (!duplicate) out.push_back({values, res});
  }
  return out;
}

}  // namespace dessin
