#pragma once

// Slice complexes. X_{f/} has n-cells the maps K * Delta^n -> X extending
// f : K -> X (dually X_{/f} uses Delta^n * K). The general construction keys
// cells by their assignment tables; when the indexing diagram is a standard
// simplex the cells are plain simplices of X and a compact variant is used.

#include "patfib/ops.hpp"

namespace patfib::sset {

struct SliceComplex {
  ComplexPtr X;
  ComplexMap f;  // K -> X
  bool under = true;
  int depth = 0;
  KeyedComplex kc;
  std::vector<JoinComplex> joins;   // J_n, n = 0..depth
  std::vector<ComplexPtr> deltas;   // Delta^n
  // Non-K nondegenerate cells of J_n in (dim,id) order; key layout follows it.
  std::vector<std::vector<std::pair<int, int>>> free_cells;

  const ComplexPtr& complex() const { return kc.complex(); }
  /// Reassemble the full map J_dim -> X of a slice cell.
  ComplexMap cell_map(int dim, int id) const;
  /// Locate the slice cell with the given full map (must extend f).
  SimplexRef locate(int n, const ComplexMap& g);
};

SliceComplex slice(const ComplexMap& f, bool under, int depth);

/// Slice of X under/over a single simplex e (the diagram Delta^k -> X named by
/// a k-ref). Cells in dimension n are (k+n+1)-refs of X restricting to e on
/// the K-block.
struct RefSlice {
  ComplexPtr X;
  SimplexRef diagram;
  bool under = true;
  int depth = 0;
  KeyedComplex kc;

  const ComplexPtr& complex() const { return kc.complex(); }
  SimplexRef underlying(int dim, int id) const;  // ref of X
  SimplexRef locate(const SimplexRef& r_of_X);
};

RefSlice ref_slice(ComplexPtr X, const SimplexRef& diagram, bool under,
                   int depth);

/// X_{e/} -> X_{e.u/} for an injective monotone u into the diagram simplex.
ComplexMap ref_slice_restriction(RefSlice& big, RefSlice& small,
                                 const std::vector<int>& u);
/// Postcomposition X_{e/} -> S_{p(e)/}.
ComplexMap ref_slice_postcompose(RefSlice& sx, RefSlice& ss,
                                 const ComplexMap& p);

/// General-slice analogues (shared K): X_{f/} -> S_{pf/}.
ComplexMap slice_postcompose(SliceComplex& sx, SliceComplex& ss,
                             const ComplexMap& p);

}  // namespace patfib::sset
