#pragma once

// Maps of simplicial sets, edge markings, and the backtracking enumerator for
// maps subject to pinning / base-commutation / marking constraints.

#include <map>
#include <set>

#include "patfib/sset.hpp"

namespace patfib::sset {

/// A map of simplicial sets, stored on nondegenerate source cells; values on
/// degenerate simplices follow by pushing the degeneracy word.
struct ComplexMap {
  ComplexPtr src, tgt;
  std::vector<std::vector<SimplexRef>> assign;  // dim -> nd id -> target ref

  const SimplexRef& at(int dim, int id) const { return assign[dim][id]; }
  SimplexRef push(const SimplexRef& r) const;
  void validate() const;  // faces commute
  bool operator==(const ComplexMap& o) const {
    return src == o.src && tgt == o.tgt && assign == o.assign;
  }

  static ComplexMap identity(ComplexPtr X);
  static ComplexMap constant(ComplexPtr X, ComplexPtr pt, int vertex_id);
};

ComplexMap compose(const ComplexMap& g, const ComplexMap& f);

/// A map out of Delta^n is one n-simplex of the target.
ComplexMap map_from_simplex(ComplexPtr delta_n, ComplexPtr tgt,
                            const SimplexRef& top);

/// Edge marking: the set of marked nondegenerate edges (degenerate edges are
/// implicitly marked).
struct MarkedComplex {
  ComplexPtr complex;
  std::set<int> marked;

  bool is_marked(const SimplexRef& e) const {
    return e.is_degenerate() || marked.count(e.nd_id) > 0;
  }
  static MarkedComplex sharp(ComplexPtr X);  // everything marked
  static MarkedComplex flat(ComplexPtr X);   // only degenerate edges
  void validate() const;
};

struct MarkedMap {
  MarkedComplex src, tgt;
  ComplexMap map;
  void validate() const;  // marked edges land marked
};

bool preserves_marking(const ComplexMap& f, const MarkedComplex& src,
                       const MarkedComplex& tgt);

/// A set of 2-simplices containing all degenerate ones (a pattern's scaled
/// triangles, or the ALL default).
struct TwoCellSet {
  bool all = true;
  std::set<int> cells;  // nd 2-cell ids when !all
  bool contains(const SimplexRef& t) const {
    return all || t.is_degenerate() || cells.count(t.nd_id) > 0;
  }
};

/// Search problem: enumerate maps src -> tgt with
///  - pinned values on selected nondegenerate source cells,
///  - optional commutation over a base: over o g = require (a per-cell table),
///  - optional marking constraint (marked source edges land marked).
struct SearchProblem {
  ComplexPtr src, tgt;
  std::vector<std::vector<std::optional<SimplexRef>>> pinned;
  const ComplexMap* over = nullptr;  // tgt -> base
  std::vector<std::vector<std::optional<SimplexRef>>> required_base;
  const MarkedComplex* src_marking = nullptr;
  const MarkedComplex* tgt_marking = nullptr;
  /// When set, enumerate partial maps defined on exactly these cells (must be
  /// face-closed and listed in ascending dimension); other assignment slots
  /// are left default-constructed.
  const std::vector<std::pair<int, int>>* free_cells = nullptr;
  std::size_t limit = SIZE_MAX;

  void pin(int dim, int id, SimplexRef v);
  void require(int dim, int id, SimplexRef base_value);
  void init_tables();
};

std::vector<ComplexMap> enumerate_maps(SearchProblem& p);

/// Cache of refs_of_dim + face-0 buckets used by the search; exposed so
/// repeated searches against one target can share it.
class TargetIndex {
 public:
  explicit TargetIndex(ComplexPtr tgt) : tgt_(std::move(tgt)) {}
  const std::vector<SimplexRef>& refs(int dim);
  /// Simplices with the given full face tuple (d_0 .. d_dim): at most dim
  /// degenerate candidates plus the nondegenerate cells with those stored
  /// faces (found through a sorted index).
  std::vector<SimplexRef> refs_with_faces(int dim,
                                          const std::vector<SimplexRef>& faces);

 private:
  ComplexPtr tgt_;
  std::vector<std::vector<SimplexRef>> refs_;
  std::vector<std::vector<int>> nd_sorted_;
  std::vector<bool> nd_ready_;
  friend std::vector<ComplexMap> enumerate_maps(SearchProblem&, TargetIndex&);
};

std::vector<ComplexMap> enumerate_maps(SearchProblem& p, TargetIndex& index);

}  // namespace patfib::sset
