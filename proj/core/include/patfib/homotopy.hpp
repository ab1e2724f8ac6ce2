#pragma once

// Homotopy category of a (truncation of a) quasicategory, equivalence of
// edges, reconstruction of finite categories from nerve-like complexes, and
// the categorical-equivalence oracle.

#include "patfib/cat.hpp"
#include "patfib/map.hpp"
#include "patfib/ops.hpp"

namespace patfib::cat {

/// Homotopy category built from cells of dimension <= 2. Sound for inner-
/// fibrant complexes; callers pre-verify inner fibrancy at the working depth.
class HoCategory {
 public:
  /// Throws if composites are missing (the complex is not inner fibrant at
  /// dimension 2).
  static HoCategory build(const sset::CellComplex& X);

  int edge_class(const sset::SimplexRef& e) const;  // degenerate edges allowed
  bool classes_equal(const sset::SimplexRef& a, const sset::SimplexRef& b) const;
  /// Composite class [g][f]; f: x->y, g: y->z as edge classes.
  int compose_class(int g, int f) const;
  bool is_equivalence_class(int c) const;
  int identity_class(int vertex) const;
  int class_src(int c) const { return src_[c]; }
  int class_tgt(int c) const { return tgt_[c]; }
  int num_classes() const { return static_cast<int>(src_.size()); }

 private:
  std::vector<int> edge_to_class_;  // nd edges
  std::vector<int> vertex_identity_class_;
  std::vector<int> src_, tgt_;
  std::vector<std::vector<int>> comp_;  // -1 = undefined
};

/// True iff e is invertible in the homotopy category. Verifies inner-horn
/// fillability in dimensions 2..depth over the point first and throws on
/// failure.
bool edge_is_equivalence(const sset::ComplexPtr& X, const sset::SimplexRef& e,
                         int depth);
/// The same check when the caller already verified inner fibrancy.
bool edge_is_equivalence_unchecked(const HoCategory& ho,
                                   const sset::SimplexRef& e);

/// Parallel edges are homotopic rel endpoints.
bool edges_homotopic(const HoCategory& ho, const sset::SimplexRef& a,
                     const sset::SimplexRef& b);

/// Attempt to present a complex as the nerve of a finite category: requires
/// unique inner-horn fillers in dimensions 2 and 3 (checked exhaustively
/// within the build bound). Objects = vertices, morphisms = edges.
struct NerveRecognition {
  CatPtr category;
  // edge id <-> morphism id; vertex id = object id
  std::vector<int> edge_to_morphism;
  std::vector<int> morphism_to_edge;  // -1 for identities
};
std::optional<NerveRecognition> recognize_nerve(const sset::ComplexPtr& X);

using patfib::Verdict;

struct EquivalenceCertificate {
  std::string reason;
  // For the nerve strategy: a witness vertex / hom-pair on failure.
  std::optional<int> witness_vertex;
  std::optional<std::pair<int, int>> witness_hom_pair;
};

enum class EquivalenceStrategy { NerveOfCategory, Certificate, BoundedSearch };

struct EquivalenceOptions {
  EquivalenceStrategy strategy = EquivalenceStrategy::NerveOfCategory;
  // Certificate strategy: a candidate quasi-inverse.
  const sset::ComplexMap* quasi_inverse = nullptr;
  int depth = 3;
};

struct EquivalenceResult {
  Verdict verdict = Verdict::Unknown;
  EquivalenceCertificate certificate;
};

/// Is f a categorical equivalence? The NerveOfCategory strategy decides
/// exactly when both sides are recognizable nerves (essential surjectivity +
/// full faithfulness of the induced functor); Certificate verifies a supplied
/// quasi-inverse with invertible-unit/counit checks; BoundedSearch looks for
/// such an inverse and may return Unknown.
EquivalenceResult is_categorical_equivalence(const sset::ComplexMap& f,
                                             const EquivalenceOptions& opts);

/// Equivalence of finite categories, decided exactly by enumeration.
bool finite_categories_equivalent(const CatFunctor& u,
                                  EquivalenceCertificate* cert = nullptr);

}  // namespace patfib::cat
