#pragma once

#include <map>
#include <string>
#include <vector>

#include "cutproject/scheme.hpp"

namespace cutproject {

/// One-dimensional substitution with exact tile lengths and a marked seed
/// left|right around the origin.
struct SubstitutionSystem {
  std::map<char, std::string> rules;
  std::map<char, Scalar> lengths;
  std::string seed_left;
  std::string seed_right;

  /// a -> ab, b -> a with lengths tau and 1, seed a|a.
  static SubstitutionSystem fibonacci();

  std::string apply(const std::string& word) const;
  /// Throws InvalidInput unless rules and lengths are consistent, the
  /// substitution is primitive and the seed extends itself under two steps.
  void validate() const;
};

/// Left tile endpoints of the bi-infinite fixed point of the squared
/// substitution inside B, after `iterations` applications of the squared
/// substitution to the seed. Throws CoverageError when the word is too short
/// for B, and Error if one more iteration changes the patch.
Patch fixed_point_patch(const SubstitutionSystem& sys, int iterations, const Box& b);

/// Smallest number of squared-substitution iterations covering B.
int iterations_to_cover(const SubstitutionSystem& sys, const Box& b);

/// Candidate half-open window fitted to an oracle patch.
struct WindowFit {
  Interval window;
  /// Lattice coordinates whose stars are the two endpoints.
  IntVec lo_coords;
  IntVec hi_coords;
  /// All fitting intervals found at the smallest height (ambiguity report).
  std::vector<Interval> alternatives;
};

/// Searches half-open intervals [lo,hi) and (lo,hi] whose endpoints are stars
/// of lattice coordinates with |n_i| <= height, and which select exactly the
/// oracle patch among the lattice points of its box. One-dimensional real
/// internal space only. Throws CertificationFailure when no interval fits.
WindowFit fit_half_open_window(const CutProjectScheme& scheme, const Patch& oracle, int height);

}  // namespace cutproject
