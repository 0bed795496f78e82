#pragma once

#include <cstdint>

#include "dat/core.hpp"

namespace dat {

/// Matrix with entries in [0,1] whose row and column sums are all exact
/// integers (the precondition shared by both rounding routines).
struct FractionalMatrix {
  int n = 0;
  RatGrid entries;
};

/// Throws InvalidInput unless every entry lies in [0,1] and every row and
/// column sum is an integer.
FractionalMatrix validate_fractional_matrix(const RatGrid& raw);

enum class RoundingKind { Cycle, Dependent };

struct RoundingSample {
  CountGrid bits;
  std::uint64_t seed = 0;  // meaningful for the dependent variant only
  RoundingKind kind = RoundingKind::Cycle;
};

/// Deterministic cycle-canceling rounding. Returns a 0/1 matrix with the
/// same row/column sums whose weighted overlap with the input satisfies
/// sum a(i,j)*b(i,j) >= X^2/n^2, where X is the total mass of the input.
/// Cycles are discovered by a walk starting at the lexicographically
/// smallest fractional entry, visiting neighbors in ascending index order,
/// so the output is a pure function of the input.
RoundingSample cycle_round(const FractionalMatrix& input);

/// Randomized rounding preserving marginals: each bit is 1 with probability
/// (exactly, up to a documented 2^-64 sampling bias) equal to the input
/// entry, and row/column sums are preserved on every sample. Deterministic
/// for a fixed seed. Iterates alternating shifts along cycles of the
/// bipartite fractional-entry graph, picking each shift direction with
/// probability inversely proportional to its magnitude.
RoundingSample dependent_round(const FractionalMatrix& input, std::uint64_t seed);

}  // namespace dat
