#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dessin/padic.hpp"
#include "dessin/passport.hpp"
#include "dessin/shabat.hpp"

namespace dessin {

/// Degrees of the irreducible factors of a target eliminant, largest first.
/// Refuses (InvalidInput) unless the target is a single unknown, the report
/// carries no mismatch and the degree equals tree_count.
std::vector<unsigned> orbit_sizes_from_eliminant(const EliminantReport& e, unsigned tree_count);

/// Partitions of count into parts >= min_size (even parts when require_even),
/// each ascending, listed lexicographically.
std::vector<std::vector<unsigned>> feasible_orbit_partitions(unsigned count, unsigned min_size, bool require_even);

struct MirrorParity {
  unsigned fixed_count = 0;
  bool parity_applicable = false;

  friend bool operator==(const MirrorParity&, const MirrorParity&) = default;
};

/// Counts mirror-symmetric trees; parity applies when there are none.
/// Enumerates up to 24 edges; larger black-centered passports use necklaces.
MirrorParity mirror_parity(const Passport& passport);

/// Tree count with the same sources as mirror_parity.
unsigned tree_count(const Passport& passport);

struct ColorVerdict {
  bool decomposable = false;
  std::vector<unsigned> witness;  ///< ascending degrees of a minimal witness
  unsigned witness_sum = 0;

  friend bool operator==(const ColorVerdict&, const ColorVerdict&) = default;
};

struct EliminantSummary {
  std::string target;
  unsigned target_degree = 0;
  UPoly poly;
  std::vector<unsigned> factor_degrees;
  std::vector<RemovedFactor> removed;
  unsigned expected_degree = 0;
  bool degree_mismatch = false;
  NewtonPolygon polygon;
  std::optional<bool> pure_at_prediction;

  friend bool operator==(const EliminantSummary&, const EliminantSummary&) = default;
};

enum class Verdict { Definitive, Consistent, Mismatch, Inconclusive };

std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& text);

struct OrbitReport {
  std::string passport;
  unsigned prime = 0;
  unsigned s = 0;
  unsigned r = 0;
  ColorVerdict white;
  ColorVerdict black;
  std::optional<bool> max_degree_criterion;  ///< only for s = 1
  unsigned tree_count = 0;
  MirrorParity mirror;
  std::optional<unsigned> degree_bound;         ///< white-indecomposable only
  std::optional<Rat> predicted_valuation;       ///< white-indecomposable only
  std::optional<EliminantSummary> eliminant;
  std::vector<unsigned> orbit_sizes;             ///< from the factorization, largest first
  unsigned min_orbit_size = 1;                   ///< degree bound when the normalization is canonical
  std::vector<std::vector<unsigned>> feasible_partitions;
  bool polygon_divisibility = true;
  Verdict verdict = Verdict::Inconclusive;
  std::string summary;
  std::vector<std::string> notes;

  friend bool operator==(const OrbitReport&, const OrbitReport&) = default;
};

/// Full pipeline for a passport and a prime dividing N.
OrbitReport analyze(const Passport& passport, unsigned p, unsigned precision = 128);

std::string to_json(const OrbitReport& report);
OrbitReport orbit_report_from_json(const std::string& text);
std::string to_text(const OrbitReport& report);

}  // namespace dessin
