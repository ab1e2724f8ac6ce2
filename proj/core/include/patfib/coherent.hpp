#pragma once

// Unstraightening over nerves of finite categories: the interval-poset
// functors Psi and chi, the unstraightening and relative-nerve constructions,
// the comparison maps between them and the Grothendieck nerve, fiber
// transport, and the left adjoint of the relative nerve.

#include "patfib/cat.hpp"
#include "patfib/homotopy.hpp"
#include "patfib/ops.hpp"

namespace patfib::coh {

using cat::CatPtr;
using cat::CatValuedFunctor;
using cat::NerveComplex;
using sset::ComplexMap;
using sset::ComplexPtr;
using sset::KeyedComplex;
using sset::MarkedComplex;
using sset::ProductComplex;
using sset::SimplexRef;

// --- interval posets -----------------------------------------------------------

/// Subsets of [0..i] containing i (bitmask order). |P_max i| = 2^i.
std::vector<int> p_max_elements(int i);
/// Subsets of {i..j} containing both i and j. |P_{i,j}| = 2^{j-i-1} for j > i.
std::vector<int> p_interval_elements(int i, int j);

/// Nerve of (P_max i)^op: keys are strictly decreasing chains of masks.
struct PosetNerve {
  KeyedComplex kc;
  int top;  // chains have length <= top+1
  const ComplexPtr& complex() const { return kc.complex(); }
  /// Ref of a weakly decreasing chain of masks.
  SimplexRef ref_of_weak_chain(const std::vector<int>& chain);
  /// Strict chain of a nondegenerate cell.
  std::vector<int> chain_of(int dim, int id) const;
};

struct PsiData {
  int n;
  std::vector<PosetNerve> psi;  // psi[i] = N(P_max i)^op, i <= n
};

/// Psi up to level n. Psi(i) does not depend on the ambient n.
PsiData psi(int n);

/// Direct image of a P_max chain along a monotone map (elementwise image of
/// each mask).
int direct_image_mask(int mask, const std::vector<int>& u);

/// chi at level i: the min map on a weakly decreasing chain, as a vertex
/// tuple of Delta^i (weakly increasing).
std::vector<int> chi_min_tuple(const std::vector<int>& weak_chain);

// --- complex-valued functors ------------------------------------------------------

/// A strictly functorial diagram of marked complexes over a finite category.
struct ComplexFunctor {
  CatPtr base;
  std::vector<MarkedComplex> fibers;
  std::vector<ComplexMap> transports;  // per base morphism
  void validate() const;
};

/// Nerve fibers of a category-valued functor; keeps the NerveComplex handles
/// for chain lookups.
struct NerveValuedFunctor {
  ComplexFunctor functor;
  std::vector<NerveComplex> nerves;
};
NerveValuedFunctor to_complex_functor(const CatValuedFunctor& F, int depth);

ComplexFunctor constant_functor(CatPtr base, MarkedComplex D);

// --- unstraightening ---------------------------------------------------------------

class Unstraightening {
 public:
  /// Cells over an n-simplex (C_0, m_1..m_n) of the base nerve are the
  /// compatible families alpha_i : Psi(i) -> F(C_i); the marking follows the
  /// top edge of Psi(1).
  static Unstraightening build(const ComplexFunctor& F, int depth,
                               const NerveComplex& base_nerve);

  const ComplexPtr& complex() const { return kc_.complex(); }
  const MarkedComplex& marked() const { return marked_; }
  const ComplexMap& projection() const { return projection_; }
  const ComplexFunctor& functor() const { return F_; }
  const NerveComplex& base() const { return base_nerve_; }
  PsiData& psis() { return psis_; }

  /// The alpha component of a nondegenerate cell, as a map Psi(i) -> fiber.
  const ComplexMap& alpha(int dim, int nd_id, int i);
  /// Base chain (with identities) of a nondegenerate cell.
  std::vector<int> base_chain(int dim, int nd_id) const;
  int base_object_at(int dim, int nd_id, int i) const;

  /// Locate a cell given raw data; entries of alphas are maps Psi(i)->fiber.
  SimplexRef locate(int first_object, const std::vector<int>& chain,
                    const std::vector<ComplexMap>& alphas);

  /// Number of registry maps Psi(i) -> fiber(obj) (for diagnostics).
  int registry_size(int i, int obj);

  KeyedComplex& keyed() { return kc_; }
  const KeyedComplex::Key& key(int dim, int nd_id) const { return kc_.key(dim, nd_id); }

  // Internals shared with the transport construction.
  int registry_index(int i, int obj, const ComplexMap& m);
  const ComplexMap& registry_map(int i, int obj, int idx);
  /// Index of F(morphism) o (registry map) in the target fiber registry.
  int transported_index(int base_morphism, int i, int idx);

 private:
  ComplexFunctor F_;
  NerveComplex base_nerve_;
  PsiData psis_;
  KeyedComplex kc_;
  MarkedComplex marked_;
  ComplexMap projection_;
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

Unstraightening unstraighten_over_nerve(const ComplexFunctor& F, int depth,
                                        const NerveComplex& base_nerve);

// --- relative nerve ---------------------------------------------------------------

class RelativeNerve {
 public:
  /// Cells over (C_0, m_1..m_n) are families a_i in F(C_i)_i with
  /// d_{i}(a_i) = F(m_i)(a_{i-1}); the marking follows a_1.
  static RelativeNerve build(const ComplexFunctor& F, int depth,
                             const NerveComplex& base_nerve);

  const ComplexPtr& complex() const { return kc_.complex(); }
  const MarkedComplex& marked() const { return marked_; }
  const ComplexMap& projection() const { return projection_; }
  const ComplexFunctor& functor() const { return F_; }

  std::vector<int> base_chain(int dim, int nd_id) const;
  SimplexRef component(int dim, int nd_id, int i) const;
  SimplexRef locate(int first_object, const std::vector<int>& chain,
                    const std::vector<SimplexRef>& components);
  KeyedComplex& keyed() { return kc_; }

 private:
  ComplexFunctor F_;
  NerveComplex base_nerve_;
  KeyedComplex kc_;
  MarkedComplex marked_;
  ComplexMap projection_;
};

RelativeNerve relative_nerve(const ComplexFunctor& F, int depth,
                             const NerveComplex& base_nerve);

/// The comparison (sigma, a) |-> (sigma, a o chi); injective in dimensions 0
/// and 1 and bijective on marked edges.
ComplexMap relnerve_comparison(RelativeNerve& rn, Unstraightening& un);

// --- Grothendieck comparison -------------------------------------------------------

struct GrothComparison {
  cat::MarkedGrothendieckNerve groth;
  ComplexMap phi;  // unstraightening -> nerve of the Grothendieck construction
  ComplexMap psi;  // inverse direction
  bool mutually_inverse = false;
  bool markings_match = false;
};

/// Builds both directions cellwise from the min/interval formulas and checks
/// they are mutually inverse with matching markings up to depth.
GrothComparison groth_comparison_iso(const CatValuedFunctor& F,
                                     NerveValuedFunctor& NF,
                                     Unstraightening& un, int depth);

// --- fiber transport ---------------------------------------------------------------

struct FiberTransport {
  ProductComplex fiber_src, fiber_tgt;  // pullbacks over the two vertices
  MarkedComplex src_marked, tgt_marked;
  ProductComplex cylinder;              // fiber_src x Delta^1
  ComplexMap homotopy;                  // cylinder -> unstraightening
  ComplexMap transport;                 // fiber_src -> fiber_tgt
};

/// The explicit transport along a base morphism: beta_i = alpha_i on the
/// 0-side and F(f) o alpha_i on the 1-side; h|{0} is the fiber inclusion.
FiberTransport fiber_transport(Unstraightening& un, int base_morphism,
                               int depth);

// --- relative-nerve left adjoint ---------------------------------------------------

struct LeftAdjointResult {
  ComplexFunctor functor;  // c |-> X x_{N(C)} N(C_{/c})
  // Per object: the slice category and the pullback used (for tests).
  std::vector<CatPtr> slice_categories;
};

LeftAdjointResult relnerve_left_adjoint(const MarkedComplex& X,
                                        const ComplexMap& to_base_nerve,
                                        const NerveComplex& base_nerve,
                                        int depth);

}  // namespace patfib::coh
