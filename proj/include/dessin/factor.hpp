#pragma once

#include <vector>

#include "dessin/upoly.hpp"

namespace dessin {

struct FactorPower {
  UPoly factor;  ///< irreducible, primitive, integer coefficients, positive leading coefficient
  unsigned multiplicity = 1;
};

/// unit * prod(factor^multiplicity) reproduces the input exactly.
struct Factorization {
  Rat unit;
  std::vector<FactorPower> factors;

  [[nodiscard]] UPoly expand() const;
  /// Degrees of the distinct irreducible factors, in factor order.
  [[nodiscard]] std::vector<int> degrees() const;
};

inline constexpr int kMaxFactorDegree = 24;

/// f / gcd(f, f') as a primitive integer polynomial with positive leading
/// coefficient. Throws InvalidInput on the zero polynomial.
UPoly squarefree_part(const UPoly& f);

/// Yun's square-free decomposition of the primitive part: pairs (g_i, i) with
/// every g_i squarefree, pairwise coprime and nonconstant.
std::vector<FactorPower> squarefree_decomposition(const UPoly& f);

/// Complete factorization over the rationals by modular factorization,
/// Hensel lifting and subset recombination. Factors are ordered by degree,
/// then lexicographically on coefficients. Throws Unsupported when the degree
/// exceeds kMaxFactorDegree.
Factorization factor_over_q(const UPoly& f);

/// True when f is nonconstant with a single irreducible factor of multiplicity one.
bool is_irreducible(const UPoly& f);

}  // namespace dessin
