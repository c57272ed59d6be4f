#include "dessin/padic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dessin/error.hpp"

namespace dessin {

namespace {

long val_int(Int a, unsigned p) {
  long v = 0;
  while (mpz_divisible_ui_p(a.get_mpz_t(), p) != 0) {
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), p);
    ++v;
  }
  return v;
}

void require_prime(unsigned p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
}

}  // namespace

std::string to_string(const Valuation& v) { return v.infinite ? "inf" : to_string(v.value); }

long val_p_finite(const Rat& q, unsigned p) {
  require_prime(p);
  if (q == 0) throw InvalidInput("valuation of zero is infinite");
  return val_int(q.get_num(), p) - val_int(q.get_den(), p);
}

Valuation val_p(const Rat& q, unsigned p) {
  require_prime(p);
  if (q == 0) return {true, 0};
  return {false, Rat(val_p_finite(q, p))};
}

unsigned NewtonPolygon::degree() const {
  unsigned d = zero_roots;
  for (const auto& s : segments) d += s.count;
  return d;
}

NewtonPolygon newton_polygon(const UPoly& f, unsigned p) {
  require_prime(p);
  if (f.is_zero()) throw InvalidInput("Newton polygon of the zero polynomial");
  NewtonPolygon poly;
  poly.p = p;
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coeff(i) == 0) continue;
    if (poly.points.empty()) poly.zero_roots = static_cast<unsigned>(i);
    poly.points.emplace_back(i, Rat(val_p_finite(f.coeff(i), p)));
  }
  // Monotone chain, lower hull.
  auto& hull = poly.hull;
  for (const auto& pt : poly.points) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const Rat cross = (b.second - a.second) * (pt.first - a.first) - (pt.second - a.second) * (b.first - a.first);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const int len = hull[k + 1].first - hull[k].first;
    Rat rv = (hull[k].second - hull[k + 1].second) / len;
    rv.canonicalize();
    poly.segments.push_back({rv, static_cast<unsigned>(len)});
  }
  std::reverse(poly.segments.begin(), poly.segments.end());
  return poly;
}

std::string to_string(const NewtonPolygon& polygon) {
  std::ostringstream os;
  os << "hull";
  for (const auto& [i, v] : polygon.hull) os << " (" << i << "," << to_string(v) << ")";
  os << "\n";
  if (polygon.zero_roots > 0) os << "segment inf x " << polygon.zero_roots << "\n";
  for (const auto& s : polygon.segments) os << "segment " << to_string(s.root_valuation) << " x " << s.count << "\n";
  return os.str();
}

bool is_pure(const NewtonPolygon& polygon, const Rat& root_valuation) {
  return polygon.zero_roots == 0 && polygon.segments.size() == 1 &&
         polygon.segments.front().root_valuation == root_valuation;
}

Rat predicted_valuation(const Passport& passport, unsigned p) {
  const PrimeSplit split = prime_power_split(passport, p);
  if (passport.white_count() < 2) throw InvalidInput("no non-origin white vertices: n = 1");
  if (is_decomposable(passport, p, Color::White).decomposable) {
    throw InvalidInput("theorem hypothesis fails: passport is white-decomposable at p = " + std::to_string(p));
  }
  Rat v(split.s, static_cast<unsigned long>(passport.white_count() - 1));
  v.canonicalize();
  return v;
}

unsigned degree_lower_bound(const Passport& passport, unsigned p) {
  return static_cast<unsigned>(predicted_valuation(passport, p).get_den().get_ui());
}

std::vector<std::vector<Rat>> congruence_classes(const std::vector<Rat>& coords, unsigned p) {
  require_prime(p);
  std::vector<std::vector<Rat>> classes;
  for (const auto& x : coords) {
    bool placed = false;
    for (auto& cls : classes) {
      const Rat d = x - cls.front();
      if (d == 0 || val_p_finite(d, p) > 0) {
        cls.push_back(x);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({x});
  }
  return classes;
}

namespace {

// Product of the roots of a monic polynomial after removing roots at 0.
Rat nonzero_root_product(const UPoly& monic_poly) {
  int low = 0;
  while (monic_poly.coeff(low) == 0) ++low;
  const int d = monic_poly.degree() - low;
  Rat prod = monic_poly.coeff(low) / monic_poly.leading();
  return d % 2 == 0 ? prod : Rat(-prod);
}

IdentityCheck finish(Rat lhs, Rat rhs, unsigned p) {
  IdentityCheck check;
  check.lhs = std::move(lhs);
  check.rhs = std::move(rhs);
  check.exact = check.lhs == check.rhs;
  check.lhs_valuation = val_p(check.lhs, p);
  check.rhs_valuation = val_p(check.rhs, p);
  check.valuations = check.lhs_valuation == check.rhs_valuation;
  return check;
}

}  // namespace

IdentityCheck check_valuation_identity(const RationalModel& model, unsigned p) {
  require_prime(p);
  const VertexGroup* origin = nullptr;
  for (const auto& g : model.white)
    if (g.poly.coeff(0) == 0) origin = &g;
  if (origin == nullptr) throw InvalidInput("model has no white vertex at 0");
  if (origin->poly.coeff(1) == 0) throw InvalidInput("repeated white coordinate at 0");

  const unsigned n_edges = model.edges();
  std::size_t n = 0;
  Rat lhs = origin->degree;
  for (const auto& g : model.white) {
    n += static_cast<std::size_t>(g.poly.degree());
    lhs *= nonzero_root_product(g.poly);
  }
  const UPoly leaves = black_poly(model);
  std::size_t m = static_cast<std::size_t>(leaves.degree());
  Rat rhs = n_edges;
  for (const auto& g : model.black_internal) {
    m += static_cast<std::size_t>(g.poly.degree());
    const Rat prod = nonzero_root_product(g.poly);
    for (unsigned k = 1; k < g.degree; ++k) rhs *= prod;
  }
  if ((n - 1) % 2 == 1) lhs = -lhs;
  if ((n_edges - m) % 2 == 1) rhs = -rhs;
  return finish(lhs, rhs, p);
}

IdentityCheck check_valuation_identity(const CenterSystem& sys, unsigned p, unsigned precision) {
  require_prime(p);
  Rat product = 1;
  unsigned solutions = 0;
  bool consistent = true;
  for (const auto& cls : degree_classes(sys)) {
    const EliminantReport report = eliminant(sys, cls.front(), precision);
    const int d = report.poly.degree();
    if (d % static_cast<int>(cls.size()) != 0) consistent = false;
    const unsigned s = static_cast<unsigned>(d) / static_cast<unsigned>(cls.size());
    if (solutions != 0 && s != solutions) consistent = false;
    solutions = s;
    Rat prod = report.poly.coeff(0) / report.poly.leading();
    if (d % 2 == 1) prod = -prod;
    product *= prod;
  }
  Rat base(sys.passport.edges(), sys.origin_degree);
  base.canonicalize();
  Rat expected = 1;
  for (unsigned k = 0; k < solutions; ++k) expected *= base;
  IdentityCheck check = finish(product, expected, p);
  if (!consistent) check.exact = false;
  return check;
}

}  // namespace dessin
