#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dessin/passport.hpp"
#include "dessin/rational.hpp"
#include "dessin/shabat.hpp"
#include "dessin/upoly.hpp"

namespace dessin {

/// p-adic valuation normalized by v(p) = 1; zero has valuation +infinity.
struct Valuation {
  bool infinite = false;
  Rat value = 0;

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

std::string to_string(const Valuation& v);

/// Throws InvalidInput when p is not prime.
Valuation val_p(const Rat& q, unsigned p);
/// Finite valuation of a nonzero rational.
long val_p_finite(const Rat& q, unsigned p);

struct PolygonSegment {
  Rat root_valuation;  ///< minus the slope
  unsigned count = 0;  ///< horizontal length: number of roots

  friend bool operator==(const PolygonSegment&, const PolygonSegment&) = default;
};

struct NewtonPolygon {
  unsigned p = 0;
  std::vector<std::pair<int, Rat>> points;  ///< (i, v_p(a_i)) for a_i != 0
  std::vector<std::pair<int, Rat>> hull;    ///< lower hull vertices, left to right
  std::vector<PolygonSegment> segments;     ///< ascending root valuation
  unsigned zero_roots = 0;                  ///< roots at 0 (valuation +infinity)

  [[nodiscard]] unsigned degree() const;
  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) = default;
};

/// Lower convex hull of the valuation points after splitting off roots at 0.
NewtonPolygon newton_polygon(const UPoly& f, unsigned p);

/// "hull (0,1) (2,0)" and one "segment h/d x count" line per segment.
std::string to_string(const NewtonPolygon& polygon);

/// One segment with the given root valuation and no roots at 0.
bool is_pure(const NewtonPolygon& polygon, const Rat& root_valuation);

/// s/(n-1) for a white-indecomposable passport with N = p^s r and n >= 2 whites.
Rat predicted_valuation(const Passport& passport, unsigned p);
/// Denominator of predicted_valuation in lowest terms.
unsigned degree_lower_bound(const Passport& passport, unsigned p);

/// Classes of the equivalence v_p(a - b) > 0, in order of first appearance.
std::vector<std::vector<Rat>> congruence_classes(const std::vector<Rat>& coords, unsigned p);

/// Both sides of a product identity, compared exactly and through valuations.
struct IdentityCheck {
  Rat lhs;
  Rat rhs;
  Valuation lhs_valuation;
  Valuation rhs_valuation;
  bool exact = false;
  bool valuations = false;

  [[nodiscard]] bool ok() const { return exact && valuations; }
};

/// On a model: (-1)^(n-1) k_1 prod_(i>=2) x_i = (-1)^(N-m) N prod_j y_j^(l_j-1),
/// where the product over x_i runs over every white root except the one at 0.
IdentityCheck check_valuation_identity(const RationalModel& model, unsigned p);

/// On the centered family: the product of every class eliminant's roots equals
/// (N/k_1)^S, S the number of normalized solutions, read off the constant terms.
IdentityCheck check_valuation_identity(const CenterSystem& sys, unsigned p, unsigned precision = 128);

}  // namespace dessin
