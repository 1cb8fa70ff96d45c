#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cutproject/transforms.hpp"

namespace cutproject {

/// Point x = (s, t) of G x H acting on projection sets.
struct ShiftParameter {
  ScalarVec s;
  HPoint t;
};

/// Lambda_W(x) = s + Lambda_{W - t}, restricted to B.
Patch shifted_projection(const CutProjectScheme& scheme, const Window& w, const ShiftParameter& x, const Box& b);

struct LimitPatchOptions {
  /// Star distances eps_k = first_radius * ratio^k down to tolerance.
  double first_radius = 0.1;
  double ratio = 0.5;
  double tolerance = 1e-4;
  /// Direct search radius grows from 16 by doubling up to this value.
  double max_search_radius = 1e6;
};

struct LimitPatchReport {
  /// Lattice coordinates n_k with star(n_k) within eps_k of the target.
  std::vector<IntVec> sequence;
  std::vector<double> distances;
  /// (s_k + Gamma) within K, s_k the projection of n_k.
  std::vector<Patch> patches;
  /// The last two patches agree.
  bool stabilized = false;
  Patch limit;
  Patch lower;  ///< Lambda_{U + t} within K
  Patch upper;  ///< Lambda_{W + t} within K
  bool lower_included = false;
  bool upper_included = false;
  /// Points of upper outside lower: stars on t + boundary.
  std::vector<ScalarVec> boundary_points;
  /// Set when no lattice star came within eps_k inside the search radius.
  std::optional<std::string> stall;

  bool holds() const { return !stall && stabilized && lower_included && upper_included; }
};

/// Approaches t by lattice stars and follows (s_k + Gamma) on K.
LimitPatchReport limit_patch_check(const CutProjectScheme& scheme, const AlmostModelSetWitness& witness,
                                   const HPoint& target, const Box& k, const LimitPatchOptions& opts = {});

struct GenericShiftResult {
  HPoint t;
  /// Index of the accepted candidate (ladder first, then random).
  int attempt = 0;
  long long bound = 0;
  /// Rejected candidates with the lattice coordinates of the colliding star.
  std::vector<std::pair<HPoint, IntVec>> rejected;
};

/// Lattice coordinates |n_i| <= bound whose star lies in t + (W \ U), if
/// any. W \ U must be finite.
std::optional<IntVec> shift_collision(const CutProjectScheme& scheme, const Window& u, const Window& w,
                                      const HPoint& t, long long bound);

/// Tries t from the ladder 1/pi, 1/e, sqrt(3)/7, ... and then random
/// rationals until no star with |n_i| <= bound lies in t + (W \ U). Throws
/// CertificationFailure when attempts run out.
GenericShiftResult generic_shift(const CutProjectScheme& scheme, const Window& u, const Window& w, long long bound,
                                 int attempts = 12, unsigned seed = 1, const std::vector<HPoint>& candidates = {});

struct HullClassificationReport {
  /// Gamma(x) within K: s + lattice points l with rule(l, star + t).
  Patch gamma;
  Patch lower;  ///< Lambda_U(x) within K
  Patch upper;  ///< Lambda_W(x) within K
  bool sandwich = false;
  /// Set when s != 0 and the configuration was moved into a translation
  /// scheme.
  std::optional<Translation> translation;
  AlmostModel model;
  /// Lambda_{W''} within K equals the examined configuration.
  bool rebuilt_equal = false;
  std::optional<ScalarVec> witness;
  std::string detail;

  bool passed() const { return sandwich && rebuilt_equal; }
};

/// Checks that the configuration Gamma(x) (or `claimed`, when given) is an
/// almost model set for the shifted windows and rebuilds a window W'' with
/// Lambda_{W''} = Gamma(x) on K.
HullClassificationReport hull_classification_check(const CutProjectScheme& scheme,
                                                   const AlmostModelSetWitness& witness, const ShiftParameter& x,
                                                   const Box& k, const std::optional<Patch>& claimed = std::nullopt);

}  // namespace cutproject
