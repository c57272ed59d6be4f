#include "dessin/orbits.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "dessin/error.hpp"
#include "dessin/plane_tree.hpp"

namespace dessin {

using Json = nlohmann::ordered_json;

std::vector<unsigned> orbit_sizes_from_eliminant(const EliminantReport& e, unsigned tree_count) {
  if (!e.target_unknown) throw InvalidInput("orbit inference needs a single-coordinate target");
  if (e.degree_mismatch || e.poly.degree() != static_cast<int>(tree_count)) {
    throw InvalidInput("degree mismatch: eliminant degree " + std::to_string(e.poly.degree()) + " vs " +
                       std::to_string(tree_count) + " trees; orbit inference unsound");
  }
  std::vector<unsigned> sizes;
  for (int d : e.factor_degrees()) sizes.push_back(static_cast<unsigned>(d));
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

std::vector<std::vector<unsigned>> feasible_orbit_partitions(unsigned count, unsigned min_size, bool require_even) {
  if (count == 0) throw InvalidInput("orbit partitions need count >= 1");
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current;
  const unsigned start = std::max(1u, min_size);
  std::function<void(unsigned, unsigned)> walk = [&](unsigned remaining, unsigned smallest) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (unsigned part = smallest; part <= remaining; ++part) {
      if (require_even && part % 2 != 0) continue;
      const unsigned rest = remaining - part;
      if (rest != 0 && rest < part) continue;
      current.push_back(part);
      walk(rest, part);
      current.pop_back();
    }
  };
  walk(count, start);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<PlaneTree> family_trees(const Passport& passport) {
  if (passport.edges() <= kMaxEnumerationEdges) return enumerate_trees(passport);
  if (!is_black_centered(passport)) {
    throw Unsupported("unsupported size: N = " + std::to_string(passport.edges()) + " outside the centered family");
  }
  std::vector<PlaneTree> trees;
  for (const auto& a : centered_necklaces(passport)) trees.push_back(centered_tree(a));
  return trees;
}

}  // namespace

MirrorParity mirror_parity(const Passport& passport) {
  MirrorParity m;
  for (const auto& t : family_trees(passport))
    if (is_mirror_symmetric(t)) ++m.fixed_count;
  m.parity_applicable = m.fixed_count == 0;
  return m;
}

unsigned tree_count(const Passport& passport) {
  if (passport.edges() <= kMaxEnumerationEdges) return static_cast<unsigned>(enumerate_trees(passport).size());
  if (!is_black_centered(passport)) {
    throw Unsupported("unsupported size: N = " + std::to_string(passport.edges()) + " outside the centered family");
  }
  return static_cast<unsigned>(centered_necklaces(passport).size());
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Definitive:
      return "definitive";
    case Verdict::Consistent:
      return "consistent";
    case Verdict::Mismatch:
      return "mismatch";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict parse_verdict(const std::string& text) {
  for (Verdict v : {Verdict::Definitive, Verdict::Consistent, Verdict::Mismatch, Verdict::Inconclusive})
    if (to_string(v) == text) return v;
  throw InvalidInput("unknown verdict: " + text);
}

namespace {

ColorVerdict color_verdict(const Passport& passport, unsigned p, Color c) {
  const Decomposability d = is_decomposable(passport, p, c);
  ColorVerdict v;
  v.decomposable = d.decomposable;
  if (d.witness) {
    v.witness = d.witness->degrees;
    v.witness_sum = d.witness->subset_sum;
  }
  return v;
}

std::string join(const std::vector<unsigned>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + std::to_string(xs[i]);
  return out;
}

}  // namespace

OrbitReport analyze(const Passport& passport, unsigned p, unsigned precision) {
  const PrimeSplit split = prime_power_split(passport, p);
  OrbitReport rep;
  rep.passport = to_string(passport);
  rep.prime = p;
  rep.s = split.s;
  rep.r = split.r;
  rep.white = color_verdict(passport, p, Color::White);
  rep.black = color_verdict(passport, p, Color::Black);
  if (split.s == 1) rep.max_degree_criterion = max_degree_criterion(passport, p);
  rep.tree_count = tree_count(passport);
  rep.mirror = mirror_parity(passport);
  if (!rep.white.decomposable && passport.white_count() >= 2) {
    rep.predicted_valuation = predicted_valuation(passport, p);
    rep.degree_bound = degree_lower_bound(passport, p);
    const auto& w = passport.white();
    const bool canonical = is_black_centered(passport) && std::count(w.begin(), w.end(), w.front()) == 1;
    if (canonical) {
      rep.min_orbit_size = *rep.degree_bound;
    } else {
      rep.notes.push_back("normalization not canonical: degree bound not used as an orbit-size bound");
    }
  } else if (rep.white.decomposable) {
    rep.notes.push_back("white-decomposable: degree bound not applicable");
  }
  if (!rep.mirror.parity_applicable) {
    rep.notes.push_back("mirror-symmetric trees present: parity not applied");
  }
  rep.feasible_partitions =
      feasible_orbit_partitions(rep.tree_count, rep.min_orbit_size, rep.mirror.parity_applicable);

  bool eliminant_failure = false;
  if (!is_black_centered(passport)) {
    rep.notes.push_back("outside the black-centered family: no eliminant");
  } else {
    const CenterSystem sys = build_center_system(passport);
    std::optional<std::size_t> target;
    try {
      target = default_target(sys);
    } catch (const InvalidInput&) {
      rep.notes.push_back("no non-origin white degree is unique: orbit inference skipped");
    }
    if (target) {
      try {
        const EliminantReport e = eliminant(sys, *target, precision);
        EliminantSummary sum;
        sum.target = e.target;
        sum.target_degree = e.target_degree;
        sum.poly = e.poly;
        for (int d : e.factor_degrees()) sum.factor_degrees.push_back(static_cast<unsigned>(d));
        sum.removed = e.removed;
        sum.expected_degree = e.expected_degree;
        sum.degree_mismatch = e.degree_mismatch;
        sum.polygon = newton_polygon(e.poly, p);
        if (rep.predicted_valuation) sum.pure_at_prediction = is_pure(sum.polygon, *rep.predicted_valuation);
        if (sum.polygon.zero_roots == 0 && sum.polygon.segments.size() == 1) {
          const Int den = sum.polygon.segments.front().root_valuation.get_den();
          for (unsigned d : sum.factor_degrees)
            if (d % den.get_ui() != 0) rep.polygon_divisibility = false;
        }
        rep.eliminant = sum;
        try {
          rep.orbit_sizes = orbit_sizes_from_eliminant(e, rep.tree_count);
        } catch (const InvalidInput& err) {
          rep.notes.push_back(err.what());
          eliminant_failure = true;
        }
      } catch (const ComputationError& err) {
        rep.notes.push_back(std::string("eliminant unavailable: ") + err.what());
      }
    }
  }

  if (eliminant_failure) {
    rep.verdict = Verdict::Mismatch;
    rep.summary = "eliminant degree does not match the tree count";
  } else if (rep.orbit_sizes.empty()) {
    rep.verdict = Verdict::Inconclusive;
    rep.summary = std::to_string(rep.feasible_partitions.size()) + " feasible partitions, no factorization";
  } else {
    std::vector<unsigned> ascending(rep.orbit_sizes.rbegin(), rep.orbit_sizes.rend());
    const bool feasible = std::find(rep.feasible_partitions.begin(), rep.feasible_partitions.end(), ascending) !=
                          rep.feasible_partitions.end();
    const bool pure_ok = !rep.eliminant->pure_at_prediction.has_value() || *rep.eliminant->pure_at_prediction;
    const std::string orbits = rep.orbit_sizes.size() == 1
                                   ? "one orbit of " + std::to_string(rep.orbit_sizes.front())
                                   : std::to_string(rep.orbit_sizes.size()) + " orbits of sizes " +
                                         join(rep.orbit_sizes, ", ");
    if (!feasible || !rep.polygon_divisibility || !pure_ok) {
      rep.verdict = Verdict::Mismatch;
      rep.summary = orbits + " contradicts";
      if (!feasible) rep.summary += " the feasible partitions";
      if (!rep.polygon_divisibility) rep.summary += " polygon divisibility";
      if (!pure_ok) rep.summary += " the predicted valuation";
    } else if (rep.feasible_partitions.size() == 1) {
      rep.verdict = Verdict::Definitive;
      rep.summary = orbits;
    } else {
      rep.verdict = Verdict::Consistent;
      rep.summary = orbits + " (one of " + std::to_string(rep.feasible_partitions.size()) + " feasible partitions)";
    }
  }
  return rep;
}

namespace {

Json color_json(const ColorVerdict& c) {
  Json j;
  j["decomposable"] = c.decomposable;
  j["witness"] = c.witness;
  j["witness_sum"] = c.witness_sum;
  return j;
}

ColorVerdict color_from(const Json& j) {
  return {j.at("decomposable").get<bool>(), j.at("witness").get<std::vector<unsigned>>(),
          j.at("witness_sum").get<unsigned>()};
}

Json polygon_json(const NewtonPolygon& n) {
  Json j;
  j["p"] = n.p;
  Json points = Json::array();
  for (const auto& [i, v] : n.points) points.push_back(Json::array({i, to_string(v)}));
  j["points"] = points;
  Json hull = Json::array();
  for (const auto& [i, v] : n.hull) hull.push_back(Json::array({i, to_string(v)}));
  j["hull"] = hull;
  Json segs = Json::array();
  for (const auto& s : n.segments) segs.push_back({{"valuation", to_string(s.root_valuation)}, {"count", s.count}});
  j["segments"] = segs;
  j["zero_roots"] = n.zero_roots;
  return j;
}

std::vector<std::pair<int, Rat>> points_from(const Json& j) {
  std::vector<std::pair<int, Rat>> out;
  for (const auto& e : j) out.emplace_back(e.at(0).get<int>(), parse_rat(e.at(1).get<std::string>()));
  return out;
}

NewtonPolygon polygon_from(const Json& j) {
  NewtonPolygon n;
  n.p = j.at("p").get<unsigned>();
  n.points = points_from(j.at("points"));
  n.hull = points_from(j.at("hull"));
  for (const auto& s : j.at("segments"))
    n.segments.push_back({parse_rat(s.at("valuation").get<std::string>()), s.at("count").get<unsigned>()});
  n.zero_roots = j.at("zero_roots").get<unsigned>();
  return n;
}

template <class T, class F>
Json optional_json(const std::optional<T>& v, F f) {
  return v ? f(*v) : Json(nullptr);
}

}  // namespace

std::string to_json(const OrbitReport& r) {
  Json j;
  j["passport"] = r.passport;
  j["prime"] = r.prime;
  j["split"] = {{"s", r.s}, {"r", r.r}};
  j["white"] = color_json(r.white);
  j["black"] = color_json(r.black);
  j["max_degree_criterion"] = optional_json(r.max_degree_criterion, [](bool b) { return Json(b); });
  j["tree_count"] = r.tree_count;
  j["mirror_fixed_count"] = r.mirror.fixed_count;
  j["parity_applicable"] = r.mirror.parity_applicable;
  j["degree_bound"] = optional_json(r.degree_bound, [](unsigned b) { return Json(b); });
  j["predicted_valuation"] = optional_json(r.predicted_valuation, [](const Rat& q) { return Json(to_string(q)); });
  j["eliminant"] = optional_json(r.eliminant, [](const EliminantSummary& e) {
    Json o;
    o["target"] = e.target;
    o["target_degree"] = e.target_degree;
    o["poly"] = to_string(e.poly);
    o["factor_degrees"] = e.factor_degrees;
    Json removed = Json::array();
    for (const auto& f : e.removed) removed.push_back({{"factor", to_string(f.factor)}, {"reason", f.reason}});
    o["removed"] = removed;
    o["expected_degree"] = e.expected_degree;
    o["degree_mismatch"] = e.degree_mismatch;
    o["polygon"] = polygon_json(e.polygon);
    o["pure_at_prediction"] = optional_json(e.pure_at_prediction, [](bool b) { return Json(b); });
    return o;
  });
  j["orbit_sizes"] = r.orbit_sizes;
  j["min_orbit_size"] = r.min_orbit_size;
  j["feasible_partitions"] = r.feasible_partitions;
  j["polygon_divisibility"] = r.polygon_divisibility;
  j["verdict"] = to_string(r.verdict);
  j["summary"] = r.summary;
  j["notes"] = r.notes;
  return j.dump(2);
}

OrbitReport orbit_report_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed report: ") + e.what());
  }
  try {
    OrbitReport r;
    r.passport = j.at("passport").get<std::string>();
    r.prime = j.at("prime").get<unsigned>();
    r.s = j.at("split").at("s").get<unsigned>();
    r.r = j.at("split").at("r").get<unsigned>();
    r.white = color_from(j.at("white"));
    r.black = color_from(j.at("black"));
    if (!j.at("max_degree_criterion").is_null()) r.max_degree_criterion = j.at("max_degree_criterion").get<bool>();
    r.tree_count = j.at("tree_count").get<unsigned>();
    r.mirror = {j.at("mirror_fixed_count").get<unsigned>(), j.at("parity_applicable").get<bool>()};
    if (!j.at("degree_bound").is_null()) r.degree_bound = j.at("degree_bound").get<unsigned>();
    if (!j.at("predicted_valuation").is_null())
      r.predicted_valuation = parse_rat(j.at("predicted_valuation").get<std::string>());
    if (const auto& e = j.at("eliminant"); !e.is_null()) {
      EliminantSummary s;
      s.target = e.at("target").get<std::string>();
      s.target_degree = e.at("target_degree").get<unsigned>();
      s.poly = parse_upoly(e.at("poly").get<std::string>());
      s.factor_degrees = e.at("factor_degrees").get<std::vector<unsigned>>();
      for (const auto& f : e.at("removed"))
        s.removed.push_back({parse_upoly(f.at("factor").get<std::string>()), f.at("reason").get<std::string>()});
      s.expected_degree = e.at("expected_degree").get<unsigned>();
      s.degree_mismatch = e.at("degree_mismatch").get<bool>();
      s.polygon = polygon_from(e.at("polygon"));
      if (!e.at("pure_at_prediction").is_null()) s.pure_at_prediction = e.at("pure_at_prediction").get<bool>();
      r.eliminant = s;
    }
    r.orbit_sizes = j.at("orbit_sizes").get<std::vector<unsigned>>();
    r.min_orbit_size = j.at("min_orbit_size").get<unsigned>();
    r.feasible_partitions = j.at("feasible_partitions").get<std::vector<std::vector<unsigned>>>();
    r.polygon_divisibility = j.at("polygon_divisibility").get<bool>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    r.summary = j.at("summary").get<std::string>();
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed report: ") + e.what());
  }
}

std::string to_text(const OrbitReport& r) {
  std::ostringstream os;
  auto color = [](const ColorVerdict& c) {
    if (!c.decomposable) return std::string("indecomposable");
    return "decomposable, witness {" + join(c.witness, ",") + "} sum " + std::to_string(c.witness_sum);
  };
  os << "passport: " << r.passport << "\n";
  os << "prime: " << r.prime << " (N = " << r.prime << "^" << r.s << " * " << r.r << ")\n";
  os << "white: " << color(r.white) << "\n";
  os << "black: " << color(r.black) << "\n";
  if (r.max_degree_criterion) os << "max-degree criterion: " << (*r.max_degree_criterion ? "holds" : "fails") << "\n";
  os << "trees: " << r.tree_count << "\n";
  os << "mirror-symmetric trees: " << r.mirror.fixed_count
     << (r.mirror.parity_applicable ? " (parity applies)" : " (parity not applied)") << "\n";
  if (r.predicted_valuation) os << "predicted valuation: " << to_string(*r.predicted_valuation) << "\n";
  if (r.degree_bound) os << "degree bound: " << *r.degree_bound << "\n";
  if (r.eliminant) {
    const auto& e = *r.eliminant;
    os << "eliminant (" << e.target << ", degree-" << e.target_degree << " vertex): " << to_pretty(e.poly, "t") << "\n";
    os << "factor degrees: " << join(e.factor_degrees, ", ") << "\n";
    for (const auto& f : e.removed) os << "removed: " << to_pretty(f.factor, "t") << " (" << f.reason << ")\n";
    std::istringstream polygon(to_string(e.polygon));
    for (std::string line; std::getline(polygon, line);) os << "polygon " << line << "\n";
    if (e.pure_at_prediction) os << "pure at prediction: " << (*e.pure_at_prediction ? "yes" : "no") << "\n";
  }
  os << "feasible partitions:";
  for (const auto& part : r.feasible_partitions) os << " {" << join(part, ",") << "}";
  os << "\n";
  if (!r.orbit_sizes.empty()) os << "orbit sizes: " << join(r.orbit_sizes, ", ") << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  os << "verdict: " << to_string(r.verdict) << ": " << r.summary << "\n";
  return os.str();
}

}  // namespace dessin
