#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cutproject/expression.hpp"
#include "cutproject/linalg.hpp"
#include "cutproject/relation.hpp"
#include "cutproject/scheme.hpp"

namespace cutproject {

/// One patch comparison recorded in a certificate.
struct CertificateCheck {
  std::string name;
  Box box;
  Window window;
  /// Multiple n of the shift for translation checks (0 otherwise).
  long long shift = 0;
  bool passed = false;
  std::string detail;
};

/// Audit trail of a scheme transformation.
struct TransformCertificate {
  enum class Kind { Translation, QuotientTranslation, InjectiveExtension, WindowAugmentation };
  Kind kind = Kind::Translation;
  std::string input_id;
  std::string output_id;
  std::string lift_rule;
  std::vector<CertificateCheck> checks;
  /// Free-form facts (relation bounds, heuristic flags, kernel vectors).
  std::vector<std::pair<std::string, std::string>> notes;

  bool passed() const;
};

std::string to_string(TransformCertificate::Kind k);

/// Window used by certificates when the caller supplies none: [-1,1) on
/// line axes, {0} on integer axes, everything on compact axes.
Window default_window(const InternalSpace& space);
/// [-20, 20]^d.
Box default_box(std::size_t d);

// ------------------------------------------------------------- translation

/// Scheme obtained by adjoining a shift a to the lattice.
struct Translation {
  CutProjectScheme scheme;
  CutProjectScheme original;
  ScalarVec a;
  /// (a, b) is a lattice point of the new scheme.
  HPoint b;
  /// Minimal m with m a in the old projected lattice; 0 if none exists.
  long long m = 0;
  /// Old lattice coordinates of m a (empty when m = 0).
  IntVec b_coords;
  /// Twist b* = star(b_coords) in the old internal space (m > 0).
  std::optional<HPoint> twist;
  /// New coordinates of the old generators, as columns (rank' x rank).
  IntMatrix old_to_new;
  /// New coordinates of (a, b).
  IntVec a_coords;
  TransformCertificate certificate;

  bool commensurate() const noexcept { return m > 0; }
  /// Image of an old internal point h, i.e. (h, 0) or (h, 0) + J.
  HPoint embed(const HPoint& h) const;
  /// New coordinates of an old lattice vector.
  IntVec map_coords(const IntVec& n) const;
};

struct TranslationOptions {
  long long bound = 1'000'000;
  /// Accept a float-mode (heuristic) commensurability answer.
  bool accept_heuristic = false;
  /// Windows and box for the patch-equality certificate; the certificate
  /// uses default_window / default_box when empty.
  std::vector<Window> windows;
  std::optional<Box> box;
  /// Shifts n for which n a + Lambda_W = Lambda'_{lift(W, n)} is checked.
  std::vector<long long> multiples{1};
};

/// Translation scheme for a != 0: H x Z when a is incommensurate with the
/// projected lattice, otherwise the twisted extension (H x Z_m, +) with
/// carry b*. Throws CommensurabilityUnknown for inconclusive float input
/// unless heuristic answers are accepted.
Translation translate_cps(const CutProjectScheme& scheme, const ScalarVec& a, const TranslationOptions& opts = {});

/// Window W' in the new internal space with n a + Lambda_W = Lambda'_{W'}.
Window lift_window(const Translation& t, const Window& w, long long n);

/// Shifted copy n a + Lambda_W restricted to B, computed in the old scheme.
Patch shifted_patch(const Translation& t, const Box& b, const Window& w, long long n);

/// Checks L' meets G x H in exactly L: every old generator and `samples`
/// random combinations map to the same points, and random new lattice
/// points with internal part in H come from old ones. Returns a failure
/// description or nullopt.
std::optional<std::string> verify_lattice_restriction(const Translation& t, int samples, unsigned seed);

// ---------------------------------------------------------- generic lattice

enum class GenericStrategy { NamedConstants, RandomReals };

struct GenericLatticeCertificate {
  std::vector<Expression> constants;
  long long bound = 0;
  unsigned precision_bits = 0;
  /// The search is a bounded integer-relation search, never a proof of
  /// linear independence.
  bool heuristic = true;
  bool passed = false;
  /// Failed attempts: constant text and the relation found (or "undecided").
  std::vector<std::pair<std::string, std::string>> rejected;
};

struct GenericLattice {
  std::vector<Expression> diagonal;
  Matrix basis;
  GenericLatticeCertificate certificate;
};

/// Runs the relation search over a Q-basis of span(entries of A) together
/// with c_i and 1/c_i.
GenericLatticeCertificate certify_generic(const std::vector<ScalarVec>& a, const std::vector<Expression>& c,
                                          long long bound);

/// Picks c_1..c_d from the strategy's candidates until certification
/// passes. Throws CertificationFailure when attempts run out.
GenericLattice choose_generic_lattice(const std::vector<ScalarVec>& a, std::size_t d, GenericStrategy strategy,
                                      long long bound, int attempts = 6, unsigned seed = 1);

/// Points that D must avoid: direct parts of the generators and the
/// annihilator projection generators.
std::vector<ScalarVec> generic_avoidance_set(const CutProjectScheme& scheme);

// ------------------------------------------------------ injective extension

struct InjectiveExtension {
  CutProjectScheme scheme;
  CutProjectScheme original;
  std::vector<Expression> diagonal;
  GenericLatticeCertificate generic;
  TransformCertificate certificate;

  /// Image of an old internal point h with torus part u: (h, u).
  HPoint embed(const HPoint& h, const ScalarVec& u) const;
};

struct ExtensionOptions {
  /// Pairwise distinctness of phi is checked for |n_i| <= injectivity_bound.
  long long injectivity_bound = 200;
  /// Coefficient bound of the genericity search.
  long long relation_bound = 1'000'000;
  std::vector<Window> windows;
  std::optional<Box> box;
};

/// H' = H x (R^d / D Z^d) with D = diag(c) and phi(n) = (star(n), g(n) mod
/// D Z^d). D must pass certify_generic against generic_avoidance_set.
/// Throws CertificationFailure with the relation or the kernel vector.
InjectiveExtension extend_injective(const CutProjectScheme& scheme, const std::vector<Expression>& diagonal,
                                    const ExtensionOptions& opts = {});

/// Nonzero k with |k_i| <= bound and star(k) = 0, searched as the lattice
/// points over the box of their projections with window {0}.
std::optional<IntVec> star_kernel_vector(const CutProjectScheme& scheme, long long bound);

/// Distinctness of star images over |n_i| <= bound by sorting.
std::optional<std::pair<IntVec, IntVec>> star_collision(const CutProjectScheme& scheme, long long bound);

// ------------------------------------------------------ almost model sets

/// Lambda_U within Gamma within Lambda_W, with Gamma given by a membership
/// rule on lattice points.
struct AlmostModelSetWitness {
  Window open_part;
  Window closed_part;
  std::function<bool(const LatticePoint&)> gamma;
};

struct AlmostModel {
  Window window;
  /// Gamma on the truncation.
  Patch gamma;
  TransformCertificate certificate;
};

/// Gamma restricted to B: lattice points with star in the closure of W that
/// satisfy the rule.
Patch gamma_patch(const CutProjectScheme& scheme, const AlmostModelSetWitness& witness, const Box& b);

/// Checks Lambda_U within Gamma within Lambda_W on B; returns the first
/// offending point.
std::optional<std::string> verify_witness(const CutProjectScheme& scheme, const AlmostModelSetWitness& witness,
                                          const Box& b);

/// Certifies the star map injective on lattice points over `region`:
/// exactly by rational rank when H is a real/integer product with exact
/// data, else by kernel search. Returns a kernel vector on failure.
std::optional<IntVec> star_injectivity_counterexample(const CutProjectScheme& scheme, const Box& region);

/// W' = U together with the stars of Gamma over the truncation. Throws
/// CertificationFailure when the witness fails or the star map is not
/// injective.
AlmostModel almost_to_model(const CutProjectScheme& scheme, const AlmostModelSetWitness& witness,
                            const Box& truncation);

/// U° within W'° within W' within closure(W') within closure(W).
bool inclusion_chain_holds(const Window& u, const Window& w, const Window& w_prime);

/// Recomputes every patch check recorded in the certificate; true when all
/// of them still hold.
bool reverify(const Translation& t);
bool reverify(const InjectiveExtension& e);
bool reverify(const CutProjectScheme& scheme, const AlmostModel& a);

}  // namespace cutproject
