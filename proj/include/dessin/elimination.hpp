#pragma once

#include <vector>

#include "dessin/mpoly.hpp"
#include "dessin/numeric.hpp"
#include "dessin/upoly.hpp"

namespace dessin {

/// A resultant chain reducing a square polynomial system to one univariate
/// polynomial in the target variable. levels[k] is the polynomial set before
/// eliminating eliminated[k]; the final univariate result lives in `result`.
struct EliminationChain {
  int variable_count = 0;
  int target = 0;
  std::vector<std::vector<MPoly>> levels;
  std::vector<int> eliminated;
  UPoly result;
};

/// Eliminates every variable except `target`. At each step the polynomial of
/// lowest total degree that still contains a non-target variable is the pivot,
/// and the variable of lowest degree in it (then lowest index) is removed.
/// Throws ComputationError when a resultant collapses to zero or a nonzero
/// constant, or when more than `max_eliminated` variables must be removed.
EliminationChain eliminate(const std::vector<MPoly>& system, int variable_count, int target, int max_eliminated);

struct NumericSolution {
  std::vector<Complex> values;  ///< one per variable
  long residual_log2 = 0;       ///< floor(log2 max |equation|) after polishing
};

/// Extends a numeric value of the target variable through the chain, then
/// polishes every branch with Newton's method on the original system
/// (levels[0]) at `working_bits`. Returns every branch whose polished residual
/// is below 2^(-residual_bits).
std::vector<NumericSolution> back_substitute(const EliminationChain& chain, const Complex& target_value,
                                             mpfr_prec_t working_bits, long residual_bits);

/// Newton iteration on a square system; returns false when the Jacobian is
/// numerically singular.
bool newton_polish(const std::vector<MPoly>& system, std::vector<Complex>& values, mpfr_prec_t bits);

/// max |equation(values)| as floor(log2), evaluated at the values' precision.
long residual_log2(const std::vector<MPoly>& system, const std::vector<Complex>& values);

}  // namespace dessin
