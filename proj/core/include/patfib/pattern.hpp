#pragma once

// Categorical patterns, derived patterns, fibered-object and bundle
// verification, natural markings, and fiberwise equivalence.

#include "patfib/homotopy.hpp"
#include "patfib/lifting.hpp"

namespace patfib::pat {

using sset::ComplexMap;
using sset::ComplexPtr;
using sset::ConeComplex;
using sset::MarkedComplex;
using sset::MarkedMap;
using sset::ProductComplex;
using sset::SimplexRef;
using sset::TwoCellSet;

struct Diagram {
  ComplexPtr shape;  // K_alpha, COMPLETE
  ConeComplex cone;  // K_alpha^{cone} (left cone)
  ComplexMap map;    // K_alpha^{cone} -> S
};

Diagram make_diagram(ComplexPtr shape, const ComplexMap& cone_map);

/// A categorical pattern (M_S, T, {p_alpha}) presented on a finite complex.
struct Pattern {
  MarkedComplex base;
  TwoCellSet triangles;
  std::vector<Diagram> diagrams;

  bool commutative() const { return triangles.all; }
  /// Each p_alpha carries edges into M_S and 2-cells into T.
  void validate() const;
};

/// Does M_S contain every equivalence of the base? Requires the base to pass
/// inner-horn checks at the working depth; Unknown otherwise.
Verdict verify_creative(const Pattern& P, int depth);

struct PatternedObject {
  MarkedComplex total;
  ComplexMap projection;  // to P.base.complex
};

/// Pullback pattern along g : Y -> S (marking = preimage marking).
Pattern pullback_pattern(const Pattern& P, const ComplexMap& g, int depth);

/// Product pattern S^sharp x P on the product complex.
struct ProductPattern {
  Pattern pattern;
  ProductComplex product;  // S x D
};
ProductPattern product_pattern(ComplexPtr S, const Pattern& P, int depth);

/// The pattern transported along D -> Un_{Delta^0}(D), closed up to the
/// smallest commutative pattern (all triangles; equivalences marked).
struct PatternUnResult {
  Pattern pattern;             // on the unstraightened base
  ComplexPtr unstraightened;   // Un_{Delta^0}(D)
  ComplexMap comparison;       // D -> Un_{Delta^0}(D)
};
PatternUnResult pattern_un(const Pattern& P, int depth);

/// Marks exactly the (locally) cocartesian edges lying over marked base
/// edges. Throws if bounds are insufficient.
MarkedComplex natural_marking(const ComplexMap& p, const MarkedComplex& base,
                              lift::Locality locality, int depth);

struct DiagramReport {
  long long sections = 0;
  long long extensions = 0;
  Verdict has_extensions = Verdict::True;   // every section extends
  Verdict limits = Verdict::True;           // every extension is a p-limit
  std::string detail;
};

struct FiberedReport {
  Verdict verdict = Verdict::True;
  lift::MarkedLeftReport marked_left;
  std::vector<DiagramReport> diagrams;
  int depth = 0;
};

/// Conditions (A) = (1)-(4) via the marked-left classification and (B) =
/// marked section extension + relative limits per diagram.
FiberedReport is_P_fibered(const PatternedObject& obj, const Pattern& P,
                           int depth);

struct BundleCandidate {
  ComplexPtr total;
  ComplexPtr S, D;
  ComplexMap to_S, to_D;
  std::optional<MarkedComplex> marking;  // defaults to the natural marking
};

struct BundleReport {
  Verdict verdict = Verdict::True;
  std::vector<lift::ConditionReport> conditions;  // (a) through (d)
  std::vector<FiberedReport> fiber_reports;       // per vertex of S
  int depth = 0;
};

BundleReport is_P_bundle(const BundleCandidate& c, const Pattern& P, int depth);

/// The recognition cross-check: the same data as a patterned object over the
/// product pattern.
PatternedObject bundle_as_product_object(const BundleCandidate& c,
                                         ProductPattern& SP, int depth);

struct TwoOutOfThreeReport {
  long long checked = 0;
  std::vector<int> violations;  // offending 2-cells
  bool consistent() const { return violations.empty(); }
};

/// For every 2-cell over T with boundary over M_S and marked initial edge:
/// the second edge is marked iff the long edge is.
TwoOutOfThreeReport marked_two_out_of_three(const PatternedObject& obj,
                                            const Pattern& P);

struct FiberwiseResult {
  Verdict verdict = Verdict::True;
  std::optional<int> witness_vertex;
};

/// Per-vertex categorical equivalence of fibers of two bundles over S.
FiberwiseResult fiberwise_equivalence(const BundleCandidate& x,
                                      const BundleCandidate& y,
                                      const ComplexMap& f,
                                      cat::EquivalenceStrategy strategy,
                                      int depth);

}  // namespace patfib::pat
