#include "dessin/shabat.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "dessin/elimination.hpp"
#include "dessin/error.hpp"
#include "dessin/factor.hpp"
#include "dessin/padic.hpp"
#include "dessin/plane_tree.hpp"

namespace dessin {

namespace {

constexpr int kMaxUnknowns = 3;
constexpr int kMaxCriticalDegree = 24;

long magnitude(const Complex& z) {
  if (z.re.is_zero() && z.im.is_zero()) return std::numeric_limits<long>::min() / 4;
  return z.abs().log2_floor();
}

}  // namespace

std::vector<std::string> CenterSystem::names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < unknown_degrees.size(); ++i) out.push_back("x" + std::to_string(i + 2));
  return out;
}

CenterSystem build_center_system(const Passport& passport, std::optional<unsigned> origin_degree) {
  if (!is_black_centered(passport)) throw InvalidInput("not black-centered diameter-4: " + to_string(passport));
  const auto& white = passport.white();
  const unsigned origin = origin_degree.value_or(white.front());
  auto at = std::find(white.begin(), white.end(), origin);
  if (at == white.end()) throw InvalidInput("origin degree " + std::to_string(origin) + " is not a white degree");

  std::vector<unsigned> unknown(white.begin(), white.end());
  unknown.erase(unknown.begin() + (at - white.begin()));
  const int n = static_cast<int>(white.size());
  const int z = n - 1;

  std::vector<MPoly> linear{MPoly::var(z)};
  std::vector<unsigned> degree{origin};
  for (int i = 0; i < n - 1; ++i) {
    linear.push_back(MPoly::var(z) - MPoly::var(i));
    degree.push_back(unknown[static_cast<std::size_t>(i)]);
  }
  MPoly lhs;
  for (int i = 0; i < n; ++i) {
    MPoly term(Rat(degree[static_cast<std::size_t>(i)]));
    for (int j = 0; j < n; ++j)
      if (j != i) term *= linear[static_cast<std::size_t>(j)];
    lhs += term;
  }
  const MPoly rhs = MPoly(Rat(passport.edges())) * (MPoly::var(z) - MPoly(1)).pow(static_cast<unsigned>(n - 1));
  const auto coeffs = (lhs - rhs).coefficients_in(z);

  CenterSystem sys{passport, origin, unknown, {}};
  for (int t = 1; t <= n - 1; ++t) {
    const std::size_t k = static_cast<std::size_t>(n - 1 - t);
    sys.equations.push_back(k < coeffs.size() ? coeffs[k] : MPoly());
  }
  return sys;
}

std::vector<std::vector<std::size_t>> degree_classes(const CenterSystem& sys) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < sys.unknown_degrees.size(); ++i) {
    if (i > 0 && sys.unknown_degrees[i] == sys.unknown_degrees[i - 1]) {
      out.back().push_back(i);
    } else {
      out.push_back({i});
    }
  }
  return out;
}

std::size_t default_target(const CenterSystem& sys) {
  for (const auto& cls : degree_classes(sys))
    if (cls.size() == 1) return cls.front();
  throw InvalidInput("no non-origin white degree is unique in " + to_string(sys.passport));
}

Expression Expression::unknown(const CenterSystem& sys, std::size_t i) {
  if (i >= sys.unknown_count()) throw InvalidInput("unknown index out of range");
  Expression e;
  e.coefficients.assign(sys.unknown_count(), Rat(0));
  e.coefficients[i] = 1;
  return e;
}

Expression Expression::difference(const CenterSystem& sys, std::size_t i, std::size_t j) {
  if (i == j) throw InvalidInput("difference of a coordinate with itself");
  Expression e = unknown(sys, i);
  if (j >= sys.unknown_count()) throw InvalidInput("unknown index out of range");
  e.coefficients[j] = -1;
  return e;
}

Expression Expression::critical_value() {
  Expression e;
  e.kind = Kind::CriticalValue;
  return e;
}

std::string to_string(const Expression& e, const CenterSystem& sys) {
  if (e.kind == Expression::Kind::CriticalValue) return "c";
  const auto names = sys.names();
  std::string out;
  for (std::size_t i = 0; i < e.coefficients.size(); ++i) {
    const Rat& a = e.coefficients[i];
    if (a == 0) continue;
    const bool negative = a < 0;
    const Rat mag = negative ? Rat(-a) : a;
    if (out.empty()) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += names[i];
  }
  if (e.constant != 0 || out.empty()) {
    if (out.empty()) return to_string(e.constant);
    out += e.constant < 0 ? " - " + to_string(Rat(-e.constant)) : " + " + to_string(e.constant);
  }
  return out;
}

std::vector<int> EliminantReport::factor_degrees() const {
  std::vector<int> out;
  for (const auto& f : factors) out.push_back(f.degree());
  return out;
}

unsigned normalized_solution_count(const Passport& passport, unsigned origin_degree) {
  const auto& white = passport.white();
  const auto m0 = static_cast<unsigned>(std::count(white.begin(), white.end(), origin_degree));
  if (m0 == 0) throw InvalidInput("origin degree is not a white degree");
  unsigned total = 0;
  for (const auto& a : centered_necklaces(passport)) {
    std::size_t period = a.size();
    for (std::size_t r = 1; r < a.size(); ++r) {
      if (a.size() % r != 0) continue;
      if (std::equal(a.begin(), a.end() - static_cast<long>(r), a.begin() + static_cast<long>(r))) {
        period = r;
        break;
      }
    }
    const auto aut = static_cast<unsigned>(a.size() / period);
    if (m0 % aut != 0) throw ComputationError("automorphisms do not act freely on the origin class");
    total += m0 / aut;
  }
  return total;
}

namespace {

unsigned distinct_images(const CenterSystem& sys, const Expression& e) {
  if (e.kind == Expression::Kind::CriticalValue) return 1;
  std::set<std::vector<Rat>> images;
  std::vector<std::size_t> perm(sys.unknown_count());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  const auto classes = degree_classes(sys);
  // Odometer over the permutations of every class.
  for (;;) {
    std::vector<Rat> image(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) image[perm[i]] = e.coefficients[i];
    images.insert(image);
    std::size_t c = 0;
    for (; c < classes.size(); ++c) {
      const auto first = perm.begin() + static_cast<long>(classes[c].front());
      const auto last = first + static_cast<long>(classes[c].size());
      if (std::next_permutation(first, last)) break;
    }
    if (c == classes.size()) break;
  }
  return static_cast<unsigned>(images.size());
}

struct RootExtension {
  Complex root;
  std::vector<NumericSolution> solutions;
};

struct Run {
  EliminantReport report;
  std::vector<RootExtension> extensions;
  mpfr_prec_t working_bits = 0;
};

bool distinct_configuration(const std::vector<Complex>& values, std::size_t coordinate_count, long tolerance) {
  std::vector<Complex> points;
  const mpfr_prec_t bits = values.front().precision();
  points.emplace_back(Rat(0), bits);
  points.emplace_back(Rat(1), bits);
  for (std::size_t i = 0; i < coordinate_count; ++i) points.push_back(values[i]);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (magnitude(points[i] - points[j]) < -tolerance) return false;
  return true;
}

Run run_elimination(const CenterSystem& sys, const std::vector<MPoly>& equations, int variable_count, int target,
                    unsigned precision) {
  if (sys.unknown_count() > static_cast<std::size_t>(kMaxUnknowns)) {
    throw ComputationError("elimination too large: " + std::to_string(sys.unknown_count()) +
                           " unknowns (the exact path supports at most " + std::to_string(kMaxUnknowns) + ")");
  }
  const EliminationChain chain = eliminate(equations, variable_count, target, kMaxUnknowns);
  const Factorization fac = factor_over_q(squarefree_part(chain.result));
  const mpfr_prec_t work = 2 * static_cast<mpfr_prec_t>(precision) + 64;
  const long tolerance = static_cast<long>(precision) / 4;

  Run run;
  run.working_bits = work;
  for (const auto& fp : fac.factors) {
    const RootApproximations approx = complex_roots(fp.factor, static_cast<unsigned>(work));
    const mpfr_prec_t bits = std::max(work, approx.working_precision);
    std::size_t extended = 0;
    bool any_solution = false;
    std::vector<RootExtension> found;
    for (const auto& root : approx.roots) {
      const auto solutions = back_substitute(chain, root, bits, static_cast<long>(precision) / 2);
      RootExtension ext{root, {}};
      for (const auto& s : solutions) {
        any_solution = true;
        if (distinct_configuration(s.values, sys.unknown_count(), tolerance)) ext.solutions.push_back(s);
      }
      if (!ext.solutions.empty()) {
        ++extended;
        found.push_back(std::move(ext));
      }
    }
    if (extended == approx.roots.size()) {
      run.report.factors.push_back(fp.factor);
      for (auto& e : found) run.extensions.push_back(std::move(e));
    } else if (extended == 0) {
      run.report.removed.push_back(
          {fp.factor, any_solution ? "degenerate configuration" : "no extension to a full solution"});
    } else {
      throw ComputationError("back-substitution succeeded on only some conjugate roots of " +
                             to_pretty(fp.factor, "t"));
    }
  }
  if (run.report.factors.empty()) throw ComputationError("every eliminant factor is spurious");
  UPoly poly(Rat(1));
  for (const auto& f : run.report.factors) poly *= f;
  run.report.poly = poly.primitive();
  return run;
}

void set_expected(EliminantReport& report, const CenterSystem& sys, const Expression& e) {
  report.expected_degree = normalized_solution_count(sys.passport, sys.origin_degree) * distinct_images(sys, e);
  report.degree_mismatch = report.poly.degree() != static_cast<int>(report.expected_degree);
}

Run run_unknown(const CenterSystem& sys, std::size_t target, unsigned precision) {
  if (target >= sys.unknown_count()) throw InvalidInput("target unknown out of range");
  Run run = run_elimination(sys, sys.equations, static_cast<int>(sys.unknown_count()), static_cast<int>(target),
                            precision);
  run.report.target = sys.names()[target];
  run.report.target_unknown = target;
  run.report.target_degree = sys.unknown_degrees[target];
  set_expected(run.report, sys, Expression::unknown(sys, target));
  return run;
}

}  // namespace

EliminantReport eliminant(const CenterSystem& sys, std::size_t target, unsigned precision) {
  return run_unknown(sys, target, precision).report;
}

EliminantReport eliminant_linear_form(const CenterSystem& sys, const Expression& e, unsigned precision) {
  const int u = static_cast<int>(sys.unknown_count());
  MPoly expr;
  if (e.kind == Expression::Kind::Linear) {
    if (e.coefficients.size() != sys.unknown_count()) throw InvalidInput("linear form has the wrong length");
    expr = MPoly(e.constant);
    for (std::size_t i = 0; i < e.coefficients.size(); ++i)
      expr += MPoly(e.coefficients[i]) * MPoly::var(static_cast<int>(i));
  } else {
    unsigned total = 0;
    for (unsigned k : sys.unknown_degrees) total += k;
    if (total > static_cast<unsigned>(kMaxCriticalDegree)) {
      throw ComputationError("elimination too large: the critical value has degree " + std::to_string(total));
    }
    expr = MPoly(1);
    for (std::size_t i = 0; i < sys.unknown_count(); ++i)
      expr *= (MPoly(1) - MPoly::var(static_cast<int>(i))).pow(sys.unknown_degrees[i]);
  }
  std::vector<MPoly> equations = sys.equations;
  equations.push_back(MPoly::var(u) - expr);
  Run run = run_elimination(sys, equations, u + 1, u, precision);
  run.report.target = to_string(e, sys);
  set_expected(run.report, sys, e);
  return run.report;
}

namespace {

bool less_numeric(const Complex& a, const Complex& b, long tolerance) {
  const Real dre = a.re - b.re;
  if (dre.is_zero() || dre.log2_floor() < -tolerance) return a.im < b.im;
  return a.re < b.re;
}

bool close(const Complex& a, const Complex& b, long tolerance) { return magnitude(a - b) < -tolerance; }

}  // namespace

std::vector<NumericModel> solve_numeric(const CenterSystem& sys, unsigned precision) {
  std::size_t target = 0;
  try {
    target = default_target(sys);
  } catch (const InvalidInput&) {
  }
  const Run run = run_unknown(sys, target, precision);
  const long tolerance = static_cast<long>(precision) / 4;
  const auto classes = degree_classes(sys);
  std::vector<NumericModel> models;
  for (const auto& ext : run.extensions) {
    for (const auto& s : ext.solutions) {
      NumericModel m;
      m.coordinates.assign(s.values.begin(), s.values.begin() + static_cast<long>(sys.unknown_count()));
      m.degrees = sys.unknown_degrees;
      for (const auto& cls : classes) {
        const auto first = m.coordinates.begin() + static_cast<long>(cls.front());
        std::sort(first, first + static_cast<long>(cls.size()),
                  [tolerance](const Complex& a, const Complex& b) { return less_numeric(a, b, tolerance); });
      }
      const mpfr_prec_t bits = m.coordinates.front().precision();
      m.c = Complex(Rat(1), bits);
      for (std::size_t i = 0; i < m.coordinates.size(); ++i) {
        const Complex f = Complex(Rat(1), bits) - m.coordinates[i];
        for (unsigned k = 0; k < m.degrees[i]; ++k) m.c *= f;
      }
      m.working_precision = bits;
      m.residual_log2 = s.residual_log2;
      bool duplicate = false;
      for (const auto& other : models) {
        bool same = true;
        for (std::size_t i = 0; i < m.coordinates.size(); ++i)
          if (!close(other.coordinates[i], m.coordinates[i], tolerance)) same = false;
        if (same) duplicate = true;
      }
      if (!duplicate) models.push_back(std::move(m));
    }
  }
  std::sort(models.begin(), models.end(), [tolerance](const NumericModel& a, const NumericModel& b) {
    for (std::size_t i = 0; i < a.coordinates.size(); ++i) {
      if (close(a.coordinates[i], b.coordinates[i], tolerance)) continue;
      return less_numeric(a.coordinates[i], b.coordinates[i], tolerance);
    }
    return false;
  });
  return models;
}

RationalModel RationalModel::from_points(const std::vector<std::pair<Rat, unsigned>>& white,
                                         const std::vector<std::pair<Rat, unsigned>>& black_internal, const Rat& c) {
  RationalModel m;
  for (const auto& [x, k] : white) m.white.push_back({UPoly::linear(x), k});
  for (const auto& [y, l] : black_internal) m.black_internal.push_back({UPoly::linear(y), l});
  m.c = c;
  return m;
}

UPoly RationalModel::b() const {
  UPoly b(Rat(1));
  for (const auto& g : white) b *= g.poly.pow(g.degree);
  return b;
}

unsigned RationalModel::edges() const {
  unsigned n = 0;
  for (const auto& g : white) n += static_cast<unsigned>(g.poly.degree()) * g.degree;
  return n;
}

namespace {

std::string describe(const VertexGroup& g) {
  if (g.poly.degree() == 1) return to_string(Rat(-g.poly.coeff(0) / g.poly.leading())) + ":" + std::to_string(g.degree);
  return "{" + to_pretty(g.poly.primitive(), "z") + " = 0}:" + std::to_string(g.degree);
}

std::string describe_groups(const std::vector<VertexGroup>& groups) {
  std::string out;
  for (const auto& g : groups) out += (out.empty() ? "" : ", ") + describe(g);
  return out;
}

}  // namespace

std::string to_string(const RationalModel& m) {
  std::ostringstream os;
  os << "white: " << describe_groups(m.white) << "\n";
  os << "black: " << describe_groups(m.black_internal) << "\n";
  os << "c: " << to_string(m.c) << "\n";
  return os.str();
}

ResidualCheck residual_check(const RationalModel& m) {
  for (const auto* groups : {&m.white, &m.black_internal}) {
    for (const auto& g : *groups) {
      if (g.poly.degree() < 1 || g.poly.leading() != 1) return {false, "vertex polynomial " + to_pretty(g.poly, "z") + " is not monic"};
    }
  }
  const UPoly db = m.b().derivative();
  UPoly rhs(Rat(m.edges()));
  for (const auto* groups : {&m.white, &m.black_internal}) {
    for (const auto& g : *groups) rhs *= g.poly.pow(g.degree - 1);
  }
  if (db != rhs) {
    for (const auto* groups : {&m.white, &m.black_internal}) {
      for (const auto& g : *groups) {
        if (g.degree < 2) continue;
        if (!divrem(db, g.poly.pow(g.degree - 1)).second.is_zero()) {
          return {false, "b' is not divisible by (" + to_pretty(g.poly, "z") + ")^" + std::to_string(g.degree - 1)};
        }
      }
    }
    return {false, "b' = " + to_pretty(db, "z") + " differs from " + to_pretty(rhs, "z")};
  }
  const UPoly shifted = m.b() - UPoly(m.c);
  for (const auto& g : m.black_internal) {
    if (!divrem(shifted, g.poly.pow(g.degree)).second.is_zero()) {
      return {false, "b - c does not vanish to order " + std::to_string(g.degree) + " on " + to_pretty(g.poly, "z")};
    }
  }
  return {true, ""};
}

UPoly black_poly(const RationalModel& m) {
  UPoly internal(Rat(1));
  for (const auto& g : m.black_internal) internal *= g.poly.pow(g.degree);
  auto [q, r] = divrem(m.b() - UPoly(m.c), internal);
  if (!r.is_zero()) throw ComputationError("model invalid: b - c is not divisible by the internal black factors");
  return q;
}

RationalModel rational_model(const CenterSystem& sys) {
  const unsigned solutions = normalized_solution_count(sys.passport, sys.origin_degree);
  if (solutions != 1) {
    throw ComputationError("no rational model: " + std::to_string(solutions) + " normalized solutions");
  }
  RationalModel m;
  m.white.push_back({UPoly::linear(Rat(0)), sys.origin_degree});
  for (const auto& cls : degree_classes(sys)) {
    const EliminantReport r = eliminant(sys, cls.front());
    if (r.poly.degree() != static_cast<int>(cls.size())) {
      throw ComputationError("no rational model: eliminant of " + r.target + " has degree " +
                             std::to_string(r.poly.degree()));
    }
    m.white.push_back({r.poly.monic(), sys.unknown_degrees[cls.front()]});
  }
  m.black_internal.push_back({UPoly::linear(Rat(1)), static_cast<unsigned>(sys.passport.white_count())});
  m.c = m.b().eval(Rat(1));
  const ResidualCheck check = residual_check(m);
  if (!check.ok) throw ComputationError("model fails the derivative identity: " + check.offending);
  return m;
}

namespace {

void check_integral(const VertexGroup& g, const std::string& color, unsigned p, NormalizationReport& report) {
  const NewtonPolygon polygon = newton_polygon(g.poly, p);
  if (polygon.segments.empty()) return;
  const Rat& low = polygon.segments.front().root_valuation;
  if (low >= 0) return;
  report.ok = false;
  const std::string v = "v_" + std::to_string(p);
  if (g.poly.degree() == 1) {
    report.violations.push_back(color + " coordinate " + to_string(Rat(-g.poly.coeff(0) / g.poly.leading())) +
                                " has " + v + " = " + to_string(low));
  } else {
    report.violations.push_back(color + " coordinates (roots of " + to_pretty(g.poly.primitive(), "z") + ") have " +
                                v + " = " + to_string(low));
  }
}

}  // namespace

NormalizationReport validate_normalized(const RationalModel& m, unsigned p) {
  NormalizationReport report;
  const UPoly b = m.b();
  if (b.leading() != 1) {
    report.ok = false;
    report.violations.push_back("leading coefficient " + to_string(b.leading()) + " is not 1");
  }
  bool origin = false;
  for (const auto& g : m.white) origin = origin || g.poly.eval(Rat(0)) == 0;
  if (!origin) {
    report.ok = false;
    report.violations.push_back("no white vertex at 0");
  }
  std::optional<UPoly> leaves;
  try {
    leaves = black_poly(m);
  } catch (const ComputationError& e) {
    report.ok = false;
    report.violations.push_back(e.what());
  }
  bool one = false;
  for (const auto& g : m.black_internal) one = one || g.poly.eval(Rat(1)) == 0;
  if (leaves) one = one || leaves->eval(Rat(1)) == 0;
  if (!one) {
    report.ok = false;
    report.violations.push_back("no black vertex at 1");
  }
  for (const auto& g : m.white) check_integral(g, "white", p, report);
  for (const auto& g : m.black_internal) check_integral(g, "black", p, report);
  if (leaves && leaves->degree() > 0) check_integral({leaves->monic(), 1}, "black", p, report);
  return report;
}

Rescaled normalize_rescale(const std::vector<Rat>& white, const std::vector<Rat>& black, unsigned p) {
  if (std::find(white.begin(), white.end(), Rat(0)) == white.end()) throw InvalidInput("no white coordinate 0");
  if (std::find(black.begin(), black.end(), Rat(1)) == black.end()) throw InvalidInput("no black coordinate 1");
  std::optional<long> lowest;
  std::optional<Rat> divisor;
  for (const auto& y : black) {
    if (y == 0) continue;
    const long v = val_p_finite(y, p);
    if (!lowest || v < *lowest || (v == *lowest && y < *divisor)) {
      lowest = v;
      divisor = y;
    }
  }
  Rescaled out{white, black};
  if (!lowest || *lowest >= 0) return out;
  for (auto& x : out.white) x /= *divisor;
  for (auto& y : out.black) y /= *divisor;
  return out;
}

}  // namespace dessin
