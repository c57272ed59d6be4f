#include "dessin/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dessin/error.hpp"
#include "dessin/orbits.hpp"
#include "dessin/padic.hpp"
#include "dessin/plane_tree.hpp"
#include "dessin/shabat.hpp"
#include "dessin/verification.hpp"

namespace dessin::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormats =
    "Passport grammar: white degrees '/' black degrees, comma separated, each term d or d^count,\n"
    "  e.g. \"15,3,2,1/4,1^17\".\n"
    "Polynomial format: rational coefficients from the constant term up, comma separated,\n"
    "  e.g. \"6,-8,3\" is 3t^2 - 8t + 6. Rationals are n or n/d.\n"
    "Exit codes: 0 success, 1 usage error, 2 computation failure, 3 verification mismatch.";

struct Options {
  std::string passport;
  std::string poly;
  std::optional<unsigned> prime;
  std::optional<unsigned> target;
  unsigned precision = 128;
  std::string format = "text";
  std::string out_path;
  int criterion = 0;
};

struct Output {
  std::string text;
  int code = kExitOk;
};

Json polygon_json(const NewtonPolygon& n) {
  Json hull = Json::array();
  for (const auto& [i, v] : n.hull) hull.push_back(Json::array({i, to_string(v)}));
  Json segs = Json::array();
  for (const auto& s : n.segments) segs.push_back({{"valuation", to_string(s.root_valuation)}, {"count", s.count}});
  return {{"p", n.p}, {"hull", hull}, {"segments", segs}, {"zero_roots", n.zero_roots}};
}

Json witness_json(const Decomposability& d) {
  if (!d.witness) return nullptr;
  return {{"degrees", d.witness->degrees}, {"indices", d.witness->indices}, {"sum", d.witness->subset_sum}};
}

std::string join(const std::vector<unsigned>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

Output passport_command(const Options& o) {
  const Passport p = parse_passport(o.passport);
  std::vector<unsigned> primes;
  if (o.prime) {
    primes.push_back(*o.prime);
  } else {
    for (unsigned q = 2; q <= p.edges(); ++q)
      if (is_prime(q) && p.edges() % q == 0) primes.push_back(q);
  }
  Json j;
  j["passport"] = to_string(p);
  j["edges"] = p.edges();
  j["white_count"] = p.white_count();
  j["black_count"] = p.black_count();
  j["black_centered"] = is_black_centered(p);
  std::ostringstream os;
  os << "passport: " << to_string(p) << "\n";
  os << "N = " << p.edges() << ", n = " << p.white_count() << ", m = " << p.black_count() << "\n";
  os << "black-centered: " << (is_black_centered(p) ? "yes" : "no") << "\n";
  Json per = Json::array();
  for (unsigned q : primes) {
    const PrimeSplit split = prime_power_split(p, q);
    const Decomposability w = is_decomposable(p, q, Color::White);
    const Decomposability b = is_decomposable(p, q, Color::Black);
    Json e;
    e["p"] = q;
    e["s"] = split.s;
    e["r"] = split.r;
    e["white_decomposable"] = w.decomposable;
    e["white_witness"] = witness_json(w);
    e["black_decomposable"] = b.decomposable;
    e["black_witness"] = witness_json(b);
    os << "p = " << q << ": N = " << q << "^" << split.s << " * " << split.r << "\n";
    os << "  white: " << (w.decomposable ? "decomposable, witness {" + join(w.witness->degrees) + "}" : "indecomposable")
       << "\n";
    os << "  black: " << (b.decomposable ? "decomposable, witness {" + join(b.witness->degrees) + "}" : "indecomposable")
       << "\n";
    if (split.s == 1) {
      const bool crit = max_degree_criterion(p, q);
      e["max_degree_criterion"] = crit;
      os << "  max-degree criterion: " << (crit ? "holds" : "fails") << "\n";
    } else {
      e["max_degree_criterion"] = nullptr;
    }
    if (trivially_indecomposable(split)) os << "  N = p: both colors indecomposable trivially\n";
    if (!w.decomposable && p.white_count() >= 2) {
      const Rat v = predicted_valuation(p, q);
      e["predicted_valuation"] = to_string(v);
      e["degree_bound"] = degree_lower_bound(p, q);
      os << "  predicted valuation: " << to_string(v) << ", degree bound: " << degree_lower_bound(p, q) << "\n";
    } else {
      e["predicted_valuation"] = nullptr;
      e["degree_bound"] = nullptr;
    }
    per.push_back(e);
  }
  j["primes"] = per;
  return {o.format == "json" ? j.dump(2) + "\n" : os.str(), kExitOk};
}

std::vector<PlaneTree> listed_trees(const Passport& p) {
  if (p.edges() <= kMaxEnumerationEdges || !is_black_centered(p)) return enumerate_trees(p);
  std::vector<PlaneTree> out;
  for (const auto& a : centered_necklaces(p)) out.push_back(centered_tree(a));
  std::sort(out.begin(), out.end(),
            [](const PlaneTree& x, const PlaneTree& y) { return canonical_code(x) < canonical_code(y); });
  return out;
}

Output trees_command(const Options& o) {
  const Passport p = parse_passport(o.passport);
  const auto trees = listed_trees(p);
  Json list = Json::array();
  std::ostringstream os;
  os << "passport: " << to_string(p) << "\n";
  os << "trees: " << trees.size() << "\n";
  unsigned fixed = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const auto& t = trees[i];
    const bool sym = is_mirror_symmetric(t);
    fixed += sym ? 1 : 0;
    list.push_back({{"code", to_string(canonical_code(t))},
                    {"automorphisms", automorphism_count(t)},
                    {"mirror_symmetric", sym},
                    {"diameter", diameter(t)}});
    os << "tree " << i + 1 << ": " << to_string(canonical_code(t)) << "\n";
    os << "  automorphisms: " << automorphism_count(t) << ", mirror-symmetric: " << (sym ? "yes" : "no")
       << ", diameter: " << diameter(t) << "\n";
  }
  os << "mirror-symmetric trees: " << fixed << "\n";
  const Json j{{"passport", to_string(p)}, {"count", trees.size()}, {"mirror_fixed_count", fixed}, {"trees", list}};
  return {o.format == "json" ? j.dump(2) + "\n" : os.str(), kExitOk};
}

Output shabat_command(const Options& o) {
  const Passport p = parse_passport(o.passport);
  const CenterSystem sys = build_center_system(p);
  std::size_t target = 0;
  if (o.target) {
    const auto& d = sys.unknown_degrees;
    const auto at = std::find(d.begin(), d.end(), *o.target);
    if (at == d.end()) throw InvalidInput("no non-origin white vertex of degree " + std::to_string(*o.target));
    target = static_cast<std::size_t>(at - d.begin());
  } else {
    try {
      target = default_target(sys);
    } catch (const InvalidInput&) {
      target = 0;
    }
  }
  const auto names = sys.names();
  const EliminantReport e = eliminant(sys, target, o.precision);
  const auto models = solve_numeric(sys, o.precision);
  std::optional<RationalModel> model;
  if (normalized_solution_count(p, sys.origin_degree) == 1) model = rational_model(sys);

  std::ostringstream os;
  Json j;
  j["passport"] = to_string(p);
  os << "passport: " << to_string(p) << "\n";
  os << "origin degree: " << sys.origin_degree << "\n";
  Json unknowns = Json::array();
  for (std::size_t i = 0; i < sys.unknown_count(); ++i) {
    unknowns.push_back({{"name", names[i]}, {"degree", sys.unknown_degrees[i]}});
    os << "unknown " << names[i] << ": degree " << sys.unknown_degrees[i] << "\n";
  }
  j["origin_degree"] = sys.origin_degree;
  j["unknowns"] = unknowns;
  Json eqs = Json::array();
  for (const auto& eq : sys.equations) {
    eqs.push_back(to_string(eq, names));
    os << "equation: " << to_string(eq, names) << " = 0\n";
  }
  j["equations"] = eqs;
  os << "eliminant (" << e.target << "): " << to_pretty(e.poly, "t") << "\n";
  os << "eliminant coefficients: " << to_string(e.poly) << "\n";
  os << "factor degrees:";
  for (int d : e.factor_degrees()) os << " " << d;
  os << "\n";
  os << "expected degree: " << e.expected_degree << (e.degree_mismatch ? " (MISMATCH)" : "") << "\n";
  Json removed = Json::array();
  for (const auto& r : e.removed) {
    removed.push_back({{"factor", to_string(r.factor)}, {"reason", r.reason}});
    os << "removed factor: " << to_pretty(r.factor, "t") << " (" << r.reason << ")\n";
  }
  j["eliminant"] = {{"target", e.target},
                    {"poly", to_string(e.poly)},
                    {"factor_degrees", e.factor_degrees()},
                    {"expected_degree", e.expected_degree},
                    {"degree_mismatch", e.degree_mismatch},
                    {"removed", removed}};
  if (o.prime) {
    const NewtonPolygon n = newton_polygon(e.poly, *o.prime);
    j["polygon"] = polygon_json(n);
    std::istringstream lines(to_string(n));
    for (std::string line; std::getline(lines, line);) os << "polygon " << line << "\n";
  }
  Json nums = Json::array();
  os << "numeric solutions: " << models.size() << "\n";
  for (const auto& m : models) {
    Json coords = Json::array();
    os << " ";
    for (std::size_t i = 0; i < m.coordinates.size(); ++i) {
      coords.push_back(m.coordinates[i].to_string(20));
      os << " " << names[i] << " = " << m.coordinates[i].to_string(20);
    }
    os << "\n";
    nums.push_back({{"coordinates", coords}, {"c", m.c.to_string(20)}, {"residual_log2", m.residual_log2}});
  }
  j["numeric"] = nums;
  if (model) {
    os << "rational model:\n" << to_string(*model);
    os << "black leaves: " << to_pretty(black_poly(*model), "z") << "\n";
    j["model"] = {{"text", to_string(*model)}, {"c", to_string(model->c)}, {"black_leaves", to_string(black_poly(*model))}};
  } else {
    j["model"] = nullptr;
  }
  return {o.format == "json" ? j.dump(2) + "\n" : os.str(), kExitOk};
}

Output polygon_command(const Options& o) {
  if (o.poly.empty()) throw InvalidInput("polygon needs --poly");
  if (!o.prime) throw InvalidInput("polygon needs --prime");
  const UPoly f = parse_upoly(o.poly);
  const NewtonPolygon n = newton_polygon(f, *o.prime);
  if (o.format == "json") return {polygon_json(n).dump(2) + "\n", kExitOk};
  return {"poly: " + to_pretty(f, "t") + "\nprime: " + std::to_string(*o.prime) + "\n" + to_string(n), kExitOk};
}

Output orbits_command(const Options& o) {
  if (!o.prime) throw InvalidInput("orbits needs --prime");
  const OrbitReport r = analyze(parse_passport(o.passport), *o.prime, o.precision);
  const int code = r.verdict == Verdict::Mismatch ? kExitMismatch : kExitOk;
  return {o.format == "json" ? to_json(r) + "\n" : to_text(r), code};
}

Output verify_command(const Options& o, std::ostream& err) {
  std::ostringstream progress;
  const auto results = run_acceptance(o.format == "json" ? static_cast<std::ostream&>(err) : progress, o.criterion);
  if (results.empty()) throw InvalidInput("no criterion " + std::to_string(o.criterion));
  bool all = true;
  Json list = Json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  const int code = all ? kExitOk : kExitMismatch;
  if (o.format == "json") return {Json{{"passed", all}, {"criteria", list}}.dump(2) + "\n", code};
  return {progress.str() + (all ? "all criteria passed\n" : "some criteria FAILED\n"), code};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plane bipartite trees: passports, Shabat polynomials, p-adic valuations, Galois orbits", "dessin"};
  app.footer(kFormats);
  app.require_subcommand(1);
  Options o;

  const auto add_format = [&o](CLI::App* sub) {
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", o.out_path, "write the report to this file");
  };
  auto* passport = app.add_subcommand("passport", "validate a passport; prime split and decomposability");
  passport->add_option("passport", o.passport, "passport text")->required();
  passport->add_option("--prime", o.prime, "prime dividing N (default: every prime divisor)");
  add_format(passport);

  auto* trees = app.add_subcommand("trees", "enumerate plane trees with a passport");
  trees->add_option("passport", o.passport, "passport text")->required();
  add_format(trees);

  auto* shabat = app.add_subcommand("shabat", "system, eliminant and solutions for a black-centered passport");
  shabat->add_option("passport", o.passport, "passport text")->required();
  shabat->add_option("--target", o.target, "degree of the target white vertex");
  shabat->add_option("--precision", o.precision, "bits for numeric work")->check(CLI::Range(32u, 4096u));
  shabat->add_option("--prime", o.prime, "also print the eliminant's Newton polygon at this prime");
  add_format(shabat);

  auto* polygon = app.add_subcommand("polygon", "Newton polygon of a rational polynomial");
  polygon->add_option("--poly", o.poly, "coefficients, constant term first")->required();
  polygon->add_option("--prime", o.prime, "prime")->required();
  add_format(polygon);

  auto* orbits = app.add_subcommand("orbits", "Galois orbit analysis at a prime");
  orbits->add_option("passport", o.passport, "passport text")->required();
  orbits->add_option("--prime", o.prime, "prime dividing N")->required();
  orbits->add_option("--precision", o.precision, "bits for numeric work")->check(CLI::Range(32u, 4096u));
  add_format(orbits);

  auto* verify = app.add_subcommand("verify-paper", "run the acceptance table");
  verify->add_option("--criterion", o.criterion, "run a single criterion")->check(CLI::Range(1, 10));
  add_format(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Output result;
  try {
    if (passport->parsed()) {
      result = passport_command(o);
    } else if (trees->parsed()) {
      result = trees_command(o);
    } else if (shabat->parsed()) {
      result = shabat_command(o);
    } else if (polygon->parsed()) {
      result = polygon_command(o);
    } else if (orbits->parsed()) {
      result = orbits_command(o);
    } else {
      result = verify_command(o, err);
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const ComputationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }

  if (o.out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream file(o.out_path);
    if (!file) {
      err << "error: cannot write " << o.out_path << "\n";
      return kExitUsage;
    }
    file << result.text;
  }
  if (result.code == kExitMismatch) err << "verification mismatch\n";
  return result.code;
}

}  // namespace dessin::cli
