#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dessin/mpoly.hpp"
#include "dessin/numeric.hpp"
#include "dessin/passport.hpp"
#include "dessin/upoly.hpp"

namespace dessin {

/// Polynomial system for the black-centered family <k_1..k_n | n, 1^(N-n)>.
///
/// The origin white vertex sits at 0 and the central black vertex at 1; the
/// unknowns x_2..x_n are the remaining white coordinates (MPoly variable i is
/// x_(i+2)). The equations are the coefficients of
///   sum_i k_i prod_(j != i)(z - x_j) - N (z - 1)^(n-1),
/// ordered by total degree 1, 2, ..., n-1.
struct CenterSystem {
  Passport passport;
  unsigned origin_degree = 0;
  std::vector<unsigned> unknown_degrees;
  std::vector<MPoly> equations;

  [[nodiscard]] std::size_t unknown_count() const { return unknown_degrees.size(); }
  /// "x2", "x3", ...
  [[nodiscard]] std::vector<std::string> names() const;
};

/// Default origin: the maximal white degree. Throws InvalidInput with
/// "not black-centered diameter-4" outside the family, or when the requested
/// origin degree is not a white degree.
CenterSystem build_center_system(const Passport& passport, std::optional<unsigned> origin_degree = {});

/// Unknown indices grouped by degree, classes in unknown order.
std::vector<std::vector<std::size_t>> degree_classes(const CenterSystem& sys);

/// The unknown of largest degree that is unique among non-origin whites.
/// Throws InvalidInput when every non-origin degree is repeated.
std::size_t default_target(const CenterSystem& sys);

/// A quantity to eliminate for: a linear form in the unknowns, or the critical
/// value c = b(1) = prod_i (1 - x_i)^(k_i).
struct Expression {
  enum class Kind { Linear, CriticalValue };
  Kind kind = Kind::Linear;
  std::vector<Rat> coefficients;  ///< one per unknown (Linear only)
  Rat constant = 0;

  static Expression unknown(const CenterSystem& sys, std::size_t i);
  static Expression difference(const CenterSystem& sys, std::size_t i, std::size_t j);
  static Expression critical_value();
};

std::string to_string(const Expression& e, const CenterSystem& sys);

struct RemovedFactor {
  UPoly factor;
  std::string reason;

  friend bool operator==(const RemovedFactor&, const RemovedFactor&) = default;
};

struct EliminantReport {
  std::string target;                        ///< "x3", "x2 - x4", "c", ...
  std::optional<std::size_t> target_unknown;  ///< set when the target is a single unknown
  unsigned target_degree = 0;                 ///< vertex degree of that unknown
  UPoly poly;                                 ///< primitive, squarefree, positive leading coefficient
  std::vector<UPoly> factors;                 ///< kept irreducible factors, canonical order
  std::vector<RemovedFactor> removed;
  unsigned expected_degree = 0;
  bool degree_mismatch = false;

  [[nodiscard]] std::vector<int> factor_degrees() const;
};

/// Number of distinct normalized Shabat polynomials in the family: every tree
/// contributes (origin-degree multiplicity) / |Aut|.
unsigned normalized_solution_count(const Passport& passport, unsigned origin_degree);

/// Exact eliminant for one unknown. Limited to 3 unknowns; larger systems throw
/// ComputationError("elimination too large ..."). `precision` controls the
/// numeric back-substitution used to discard spurious factors.
EliminantReport eliminant(const CenterSystem& sys, std::size_t target, unsigned precision = 128);

/// Eliminant of an expression: adjoins u - expression and eliminates every x.
/// The critical value is refused above 24 total degree.
EliminantReport eliminant_linear_form(const CenterSystem& sys, const Expression& e, unsigned precision = 128);

struct NumericModel {
  std::vector<Complex> coordinates;  ///< x_2..x_n
  std::vector<unsigned> degrees;
  Complex c;
  mpfr_prec_t working_precision = 0;
  long residual_log2 = 0;  ///< every equation satisfies |E| < 2^residual_log2
};

/// Every normalized solution, one per labeled-up-to-equal-degree coordinate
/// tuple; equal-degree coordinates are sorted by (re, im).
std::vector<NumericModel> solve_numeric(const CenterSystem& sys, unsigned precision = 128);

/// Vertices of one degree whose coordinates are the roots of a monic
/// rational polynomial (linear when the coordinates are rational).
struct VertexGroup {
  UPoly poly;
  unsigned degree = 0;
};

/// b(z) = prod poly^degree over the white groups; b - c = prod over all black
/// vertices. Only internal (degree > 1) black vertices are stored.
struct RationalModel {
  std::vector<VertexGroup> white;
  std::vector<VertexGroup> black_internal;
  Rat c;

  static RationalModel from_points(const std::vector<std::pair<Rat, unsigned>>& white,
                                   const std::vector<std::pair<Rat, unsigned>>& black_internal, const Rat& c);

  [[nodiscard]] UPoly b() const;
  [[nodiscard]] unsigned edges() const;
};

std::string to_string(const RationalModel& m);

struct ResidualCheck {
  bool ok = false;
  std::string offending;  ///< empty when ok
};

/// Exact check of b' = N prod (z - x_i)^(k_i - 1) prod (z - y_j)^(l_j - 1) and
/// b(y_j) = c at the internal black vertices.
ResidualCheck residual_check(const RationalModel& m);

/// (b - c) / prod (z - y_j)^(l_j): the monic polynomial of the black leaves.
/// Throws ComputationError when the division is not exact.
UPoly black_poly(const RationalModel& m);

/// The exact model of a passport whose coordinates are determined class by
/// class (a single normalized solution). Throws ComputationError otherwise.
RationalModel rational_model(const CenterSystem& sys);

struct NormalizationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Monic b, a white vertex at 0, a black vertex at 1, every coordinate p-integral.
NormalizationReport validate_normalized(const RationalModel& m, unsigned p);

struct Rescaled {
  std::vector<Rat> white;
  std::vector<Rat> black;
};

/// Divides every coordinate by a black coordinate of minimal p-adic valuation
/// (the smallest such value on ties) when that valuation is negative.
Rescaled normalize_rescale(const std::vector<Rat>& white, const std::vector<Rat>& black, unsigned p);

}  // namespace dessin
