#include "dessin/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "dessin/error.hpp"
#include "dessin/factor.hpp"
#include "dessin/orbits.hpp"
#include "dessin/padic.hpp"
#include "dessin/passport.hpp"
#include "dessin/plane_tree.hpp"
#include "dessin/shabat.hpp"

namespace dessin {

namespace {

using Check = std::function<bool(std::string&)>;

bool fail(std::string& detail, const std::string& why) {
  detail = why;
  return false;
}

// Partitions of x as non-increasing part lists.
void partitions(unsigned remaining, unsigned largest, std::vector<unsigned>& cur,
                std::vector<std::vector<unsigned>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned part = std::min(remaining, largest); part >= 1; --part) {
    cur.push_back(part);
    partitions(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

bool majority_subset_sums(std::string& detail) {
  std::size_t checked = 0;
  for (unsigned x = 1; x <= 18; ++x) {
    std::vector<std::vector<unsigned>> all;
    std::vector<unsigned> cur;
    partitions(x, x, cur, all);
    for (const auto& part : all) {
      if (2 * part.size() <= x) continue;
      std::vector<bool> reach(x + 1, false);
      const std::size_t k = part.size();
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        unsigned s = 0;
        for (std::size_t i = 0; i < k; ++i)
          if (mask & (1u << i)) s += part[i];
        reach[s] = true;
      }
      for (unsigned y = 1; y < x; ++y) {
        ++checked;
        const bool library = subset_sum_realizable(part, y).has_value();
        if (!reach[y] || !library) {
          std::ostringstream os;
          os << "counterexample x=" << x << " y=" << y << " (brute " << reach[y] << ", library " << library << ")";
          return fail(detail, os.str());
        }
      }
    }
  }
  detail = std::to_string(checked) + " (partition, y) pairs, 0 counterexamples";
  return true;
}

std::vector<unsigned> random_partition(unsigned n, unsigned parts, std::mt19937_64& rng) {
  std::vector<unsigned> cuts(n - 1);
  std::iota(cuts.begin(), cuts.end(), 1u);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(parts - 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<unsigned> out;
  unsigned prev = 0;
  for (unsigned c : cuts) {
    out.push_back(c - prev);
    prev = c;
  }
  out.push_back(n - prev);
  return out;
}

bool dichotomy_fuzz(std::string& detail) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<unsigned> edges(2, 40);
  std::size_t passports = 0;
  std::size_t pairs = 0;
  while (passports < 10000) {
    const unsigned n_edges = edges(rng);
    std::uniform_int_distribution<unsigned> whites(1, n_edges);
    const unsigned n = whites(rng);
    const unsigned m = n_edges + 1 - n;
    const Passport p(random_partition(n_edges, n, rng), random_partition(n_edges, m, rng));
    bool counted = false;
    for (unsigned q = 2; q <= n_edges; ++q) {
      if (!is_prime(q) || n_edges % q != 0) continue;
      const PrimeSplit split = prime_power_split(p, q);
      if (split.r < 2) continue;
      counted = true;
      ++pairs;
      if (!is_decomposable(p, q, Color::White).decomposable && !is_decomposable(p, q, Color::Black).decomposable) {
        return fail(detail, "both colors indecomposable: " + to_string(p) + " at p = " + std::to_string(q));
      }
    }
    if (counted) ++passports;
  }
  detail = std::to_string(passports) + " passports, " + std::to_string(pairs) + " (passport, p) pairs";
  return true;
}

bool tree_counts(std::string& detail) {
  const std::vector<std::pair<const char*, std::size_t>> cases{{"6,4,2,1/4,1^9", 6},
                                                               {"3,3,2,1/4,1^5", 3},
                                                               {"3,3,3,2,1/5,1^7", 4},
                                                               {"6,2,1,1/4,1^6", 3},
                                                               {"8,2,1,1,1,1/6,1^8", 5}};
  for (const auto& [text, expected] : cases) {
    const Passport p = parse_passport(text);
    const std::size_t enumerated = enumerate_trees(p).size();
    const std::size_t necklaces = centered_necklaces(p).size();
    if (enumerated != expected || necklaces != expected) {
      return fail(detail, std::string(text) + ": enumerated " + std::to_string(enumerated) + ", necklaces " +
                              std::to_string(necklaces) + ", expected " + std::to_string(expected));
    }
  }
  detail = "6, 3, 4, 3, 5 by enumeration and by necklaces";
  return true;
}

bool exact_models(std::string& detail) {
  const RationalModel a = rational_model(build_center_system(parse_passport("1,1/2")));
  if (a.white.size() != 2 || a.white[1].poly != UPoly::linear(Rat(2))) return fail(detail, "<1,1|2>: x2 != 2");
  if (a.c != -1) return fail(detail, "<1,1|2>: c = " + to_string(a.c));

  const CenterSystem sys = build_center_system(parse_passport("2,1,1/3,1"));
  const EliminantReport e = eliminant(sys, 0);
  if (e.poly != parse_upoly("6,-8,3")) return fail(detail, "<2,1,1|3,1>: eliminant " + to_pretty(e.poly, "t"));
  const RationalModel b = rational_model(sys);
  const UPoly leaves = black_poly(b);
  if (leaves != UPoly::linear(Rat(-1, 3))) return fail(detail, "<2,1,1|3,1>: leaves " + to_pretty(leaves, "z"));
  const UPoly expected = UPoly::from_ints({0, 4}) * UPoly::linear(Rat(1)).pow(2);
  if (b.b().derivative() != expected) return fail(detail, "<2,1,1|3,1>: b' = " + to_pretty(b.b().derivative(), "z"));
  if (!residual_check(b).ok) return fail(detail, "<2,1,1|3,1>: " + residual_check(b).offending);
  detail = "x2 = 2, c = -1; 3t^2 - 8t + 6, leaf -1/3, b' = 4z(z-1)^2";
  return true;
}

bool remark_instance(std::string& detail) {
  const Passport p = parse_passport("3,1/2,1,1");
  const Rat predicted = predicted_valuation(p, 2);
  const RationalModel m = rational_model(build_center_system(p));
  const Rat x2 = -m.white[1].poly.coeff(0);
  const long v = val_p_finite(x2, 2);
  if (predicted != 2 || v != 2) {
    return fail(detail, "predicted " + to_string(predicted) + ", v_2(" + to_string(x2) + ") = " + std::to_string(v));
  }
  detail = "x2 = " + to_string(x2) + ", v_2(x2) = 2 = s/(n-1)";
  return true;
}

bool headline(std::string& detail) {
  const Passport p = parse_passport("15,3,2,1/4,1^17");
  if (is_decomposable(p, 7, Color::White).decomposable) return fail(detail, "white-decomposable");
  if (degree_lower_bound(p, 7) != 3) return fail(detail, "degree bound " + std::to_string(degree_lower_bound(p, 7)));
  const OrbitReport r = analyze(p, 7);
  if (!r.eliminant) return fail(detail, "no eliminant");
  const UPoly& f = r.eliminant->poly;
  if (f.degree() != 6) return fail(detail, "eliminant degree " + std::to_string(f.degree()));
  if (squarefree_part(f) != f) return fail(detail, "eliminant not squarefree");
  if (!is_irreducible(f)) return fail(detail, "eliminant reducible");
  if (!is_pure(r.eliminant->polygon, Rat(1, 3))) return fail(detail, "polygon not pure at 1/3");
  if (val_p_finite(f.coeff(0), 7) != 2) return fail(detail, "v_7(a_0) != 2");
  if (!(r.mirror == MirrorParity{0, true})) return fail(detail, "mirror parity");
  if (r.feasible_partitions != std::vector<std::vector<unsigned>>{{6}}) return fail(detail, "feasible partitions");
  if (r.verdict != Verdict::Definitive || r.orbit_sizes != std::vector<unsigned>{6}) {
    return fail(detail, "verdict " + to_string(r.verdict) + ": " + r.summary);
  }
  detail = "bound 3; degree-6 irreducible eliminant pure at 1/3, v_7(a_0) = 2; parity (0, yes); " + r.summary;
  return true;
}

bool decomposable_contrast(std::string& detail) {
  const Passport p = parse_passport("84,80,11,1/4,1^172");
  const Decomposability d = is_decomposable(p, 11, Color::White);
  if (!d.decomposable || d.witness->degrees != std::vector<unsigned>{11}) return fail(detail, "witness");
  const OrbitReport r = analyze(p, 11);
  if (!r.eliminant) return fail(detail, "no eliminant");
  std::vector<unsigned> degrees = r.eliminant->factor_degrees;
  std::sort(degrees.begin(), degrees.end());
  if (degrees != std::vector<unsigned>{2, 4}) return fail(detail, "factor degrees differ from {4, 2}");
  detail = "witness {11}; factor degrees 4, 2";
  return true;
}

bool small_prime_family(std::string& detail) {
  const Passport p = parse_passport("6,2,1,1/4,1^6");
  const CenterSystem sys = build_center_system(p);
  std::size_t target = sys.unknown_count();
  for (std::size_t i = 0; i < sys.unknown_count(); ++i)
    if (sys.unknown_degrees[i] == 2) target = i;
  const EliminantReport e = eliminant(sys, target);
  if (e.poly.degree() != 3) return fail(detail, "degree " + std::to_string(e.poly.degree()));
  if (!is_irreducible(e.poly)) return fail(detail, "reducible");
  if (!is_pure(newton_polygon(e.poly, 5), Rat(1, 3))) return fail(detail, "polygon not pure at 1/3");
  const OrbitReport r = analyze(p, 5);
  if (r.verdict != Verdict::Definitive || r.orbit_sizes != std::vector<unsigned>{3}) {
    return fail(detail, "verdict " + to_string(r.verdict) + ": " + r.summary);
  }
  detail = to_pretty(e.poly, "t") + " irreducible, pure at 1/3; " + r.summary;
  return true;
}

bool differences(std::string& detail) {
  const CenterSystem sys = build_center_system(parse_passport("6,4,2,1/4,1^9"));
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < sys.unknown_count(); ++i) {
    for (std::size_t j = i + 1; j < sys.unknown_count(); ++j) {
      if (sys.unknown_degrees[i] == sys.unknown_degrees[j]) continue;
      const EliminantReport e = eliminant_linear_form(sys, Expression::difference(sys, i, j));
      if (!is_pure(newton_polygon(e.poly, 13), Rat(1, 3))) return fail(detail, e.target + " not pure at 1/3");
      ++pairs;
    }
  }
  detail = std::to_string(pairs) + " differences, each pure at 1/3";
  return true;
}

PlaneTree relabel(const PlaneTree& t, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(t.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<PlaneTree::Vertex> v(t.vertex_count());
  for (std::size_t i = 0; i < t.vertex_count(); ++i) {
    auto& out = v[perm[i]];
    out.color = t.vertex(i).color;
    for (std::size_t w : t.vertex(i).rotation) out.rotation.push_back(perm[w]);
    std::uniform_int_distribution<std::size_t> shift(0, out.rotation.size() - 1);
    std::rotate(out.rotation.begin(), out.rotation.begin() + static_cast<std::ptrdiff_t>(shift(rng)),
                out.rotation.end());
  }
  return PlaneTree(std::move(v));
}

bool properties(std::string& detail) {
  std::mt19937_64 rng(0x5eed);
  std::ostringstream summary;

  // Polygon height and length.
  std::uniform_int_distribution<long> coef(-500, 500);
  std::size_t polygons = 0;
  for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<Rat> c;
      const int d = 1 + static_cast<int>(rng() % 10);
      for (int i = 0; i <= d; ++i) c.push_back(Rat(coef(rng), 1 + static_cast<unsigned long>(rng() % 12)));
      for (auto& q : c) q.canonicalize();
      if (c.back() == 0) c.back() = 1;
      const UPoly f(c);
      const NewtonPolygon poly = newton_polygon(f, p);
      Rat height = 0;
      for (const auto& s : poly.segments) height += s.root_valuation * s.count;
      const Rat drop(val_p_finite(f.coeff(static_cast<int>(poly.zero_roots)), p) - val_p_finite(f.leading(), p));
      if (poly.degree() != static_cast<unsigned>(f.degree()) || height != drop) {
        return fail(detail, "polygon sanity fails on " + to_string(f));
      }
      ++polygons;
    }
  }
  summary << polygons << " polygons";

  // Purity implies divisibility of factor degrees by the slope denominator.
  std::size_t divisibility = 0;
  const auto divisible = [&](const UPoly& f, unsigned p) {
    const NewtonPolygon poly = newton_polygon(f, p);
    if (poly.zero_roots != 0 || poly.segments.size() != 1) return true;
    const unsigned long den = poly.segments.front().root_valuation.get_den().get_ui();
    ++divisibility;
    for (int d : factor_over_q(f).degrees())
      if (static_cast<unsigned long>(d) % den != 0) return false;
    return true;
  };
  const std::vector<std::pair<const char*, unsigned>> suite{
      {"15,3,2,1/4,1^17", 7}, {"6,2,1,1/4,1^6", 5}, {"6,4,2,1/4,1^9", 13}, {"84,80,11,1/4,1^172", 11},
      {"2,1,1/3,1", 2},       {"3,1/2,1,1", 2},     {"1,1/2", 2}};
  for (const auto& [text, p] : suite) {
    const CenterSystem sys = build_center_system(parse_passport(text));
    for (std::size_t i = 0; i < sys.unknown_count(); ++i) {
      if (!divisible(eliminant(sys, i).poly, p)) return fail(detail, std::string("divisibility fails on ") + text);
      for (std::size_t j = i + 1; j < sys.unknown_count(); ++j) {
        const UPoly d = eliminant_linear_form(sys, Expression::difference(sys, i, j)).poly;
        if (!divisible(d, p)) return fail(detail, std::string("divisibility fails on a difference of ") + text);
      }
    }
  }
  summary << ", " << divisibility << " pure eliminants divisible";

  // Canonical codes: invariant under relabeling, distinct across classes; mirror is an involution.
  std::size_t trees = 0;
  for (const char* text : {"3,2,1/2,2,1,1", "2,2,2/2,2,1,1", "3,2,1,1/3,2,1,1", "2,2,2,2/2,2,2,1,1",
                           "6,4,2,1/4,1^9", "3,2,2,1/2,2,2,1,1"}) {
    const auto all = enumerate_trees(parse_passport(text));
    std::set<CanonicalCode> codes;
    for (const auto& t : all) {
      const CanonicalCode code = canonical_code(t);
      codes.insert(code);
      for (int k = 0; k < 5; ++k)
        if (canonical_code(relabel(t, rng)) != code) return fail(detail, std::string("code not invariant: ") + text);
      if (canonical_code(mirror(mirror(t))) != code) return fail(detail, std::string("mirror not involutive: ") + text);
      ++trees;
    }
    if (codes.size() != all.size()) return fail(detail, std::string("duplicate codes: ") + text);
  }
  summary << ", " << trees << " trees";

  // Product identity on every rational model and every centered system of the suite.
  std::size_t identities = 0;
  std::size_t models = 0;
  for (unsigned n_edges = 2; n_edges <= 12; ++n_edges) {
    for (unsigned n = 2; n <= 4 && n <= n_edges; ++n) {
      std::vector<std::vector<unsigned>> all;
      std::vector<unsigned> cur;
      partitions(n_edges, n_edges, cur, all);
      for (const auto& white : all) {
        if (white.size() != n) continue;
        std::vector<unsigned> black(n_edges - n + 1, 1);
        black.front() = n;
        const Passport pp(white, black);
        if (normalized_solution_count(pp, white.front()) != 1) continue;
        const RationalModel model = rational_model(build_center_system(pp));
        ++models;
        for (unsigned q = 2; q <= n_edges; ++q) {
          if (!is_prime(q)) continue;
          if (!check_valuation_identity(model, q).ok()) return fail(detail, "identity fails: " + to_string(pp));
          ++identities;
        }
      }
    }
  }
  for (const auto& [text, p] : suite) {
    if (!check_valuation_identity(build_center_system(parse_passport(text)), p).ok()) {
      return fail(detail, std::string("centered identity fails: ") + text);
    }
    ++identities;
  }
  summary << ", " << identities << " product identities (" << models << " rational models)";
  detail = summary.str();
  return true;
}

}  // namespace

const std::vector<Criterion>& acceptance_table() {
  static const std::vector<Criterion> table{
      {1, "subset sums of partitions with more than x/2 parts (x <= 18)", majority_subset_sums},
      {2, "white/black dichotomy on 10^4 random passports (N <= 40, r >= 2)", dichotomy_fuzz},
      {3, "tree counts of the centered examples", tree_counts},
      {4, "exact models of <1,1|2> and <2,1,1|3,1>", exact_models},
      {5, "<3,1|2,1,1> at p = 2: v(x2) = s/(n-1) = 2", remark_instance},
      {6, "<15,3,2,1|4,1^17> at p = 7: one orbit of 6", headline},
      {7, "<1,11,80,84|4,1^172> at p = 11: orbits of 4 and 2", decomposable_contrast},
      {8, "<6,2,1,1|4,1^6> at p = 5: one orbit of 3", small_prime_family},
      {9, "<1,2,4,6|4,1^9> at p = 13: differences pure at 1/3", differences},
      {10, "property suites", properties},
  };
  return table;
}

CriterionResult run_criterion(const Criterion& c) {
  CriterionResult r{c.id, c.name, false, "", 0};
  const auto start = std::chrono::steady_clock::now();
  try {
    r.passed = c.check(r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, int only) {
  std::vector<CriterionResult> results;
  for (const auto& c : acceptance_table()) {
    if (only != 0 && c.id != only) continue;
    results.push_back(run_criterion(c));
    out << format_result(results.back()) << "\n" << std::flush;
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  char time[32];
  std::snprintf(time, sizeof time, "%.2f s", r.seconds);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + (r.id < 10 ? " " : "") + std::to_string(r.id) + "  " +
         r.name + ": " + r.detail + " (" + time + ")";
}

}  // namespace dessin
