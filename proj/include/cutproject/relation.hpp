#pragma once

#include <string>
#include <vector>

#include "cutproject/expression.hpp"
#include "cutproject/scalar.hpp"

namespace cutproject {

/// Outcome of an integer-relation search among real vectors x_1..x_k.
struct RelationResult {
  enum class Status {
    Found,     ///< nonzero c with sum c_i x_i = 0 (to working precision)
    Excluded,  ///< no relation with max |c_i| <= bound exists
    Undecided  ///< precision budget exhausted without either conclusion
  };
  Status status = Status::Undecided;
  IntVec relation;
  long long bound = 0;
  unsigned precision_bits = 0;
  /// Excluded results are proofs for exact inputs; float inputs only ever
  /// produce heuristic answers.
  bool heuristic = false;
};

/// Searches for c in Z^k, 0 < max|c_i| <= bound, with sum_i c_i x_i = 0 where
/// each x_i is a vector of real expressions of common length.
///
/// The search reduces the lattice spanned by rows (e_i | round(2^P x_i)) with
/// LLL. A relation shows up as a reduced vector with zero tail. Absence is
/// certified when every Gram-Schmidt length exceeds the norm any bounded
/// relation vector could have; otherwise P is doubled.
///
/// `precision_cap` limits P (bits) for inputs only known to finite accuracy;
/// 0 means unlimited.
RelationResult find_integer_relation(const std::vector<std::vector<Expression>>& x, long long bound,
                                     unsigned precision_cap = 0);

/// Convenience overload for scalar inputs.
RelationResult find_integer_relation(const std::vector<Expression>& x, long long bound,
                                     unsigned precision_cap = 0);

/// In-place LLL reduction (delta = 0.99) of integer row vectors.
void lll_reduce(std::vector<std::vector<mpz_class>>& basis);

}  // namespace cutproject
