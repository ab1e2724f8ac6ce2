#pragma once

// Binary constructions on complexes: products and fiber products by shuffle
// enumeration, joins and cones, and the opposite complex.

#include "patfib/builder.hpp"
#include "patfib/map.hpp"

namespace patfib::sset {

struct ProductComplex {
  KeyedComplex kc;
  ComplexPtr left, right;
  ComplexMap proj_left, proj_right;

  const ComplexPtr& complex() const { return kc.complex(); }
  /// Joint EZ normal form of a pair of equal-dimension refs.
  SimplexRef locate(const SimplexRef& a, const SimplexRef& b);
  std::pair<SimplexRef, SimplexRef> components(int dim, int nd_id) const;
};

ProductComplex product(ComplexPtr X, ComplexPtr Y, int depth);
/// X x_S Y along f : X -> S, g : Y -> S.
ProductComplex fiber_product(const ComplexMap& f, const ComplexMap& g,
                             int depth);
/// Fiber over a vertex: pullback along Delta^0 -> S.
ProductComplex fiber_over_vertex(const ComplexMap& f, int vertex_id, int depth);

struct JoinComplex {
  KeyedComplex kc;
  ComplexPtr left, right;

  const ComplexPtr& complex() const { return kc.complex(); }
  SimplexRef locate_left(const SimplexRef& a);
  SimplexRef locate_right(const SimplexRef& b);
  SimplexRef locate_pair(const SimplexRef& a, const SimplexRef& b);
  /// Whether a nondegenerate cell is purely a left cell / right cell, and its
  /// components.
  enum class Origin { Left, Right, Mixed };
  Origin origin(int dim, int nd_id) const;
  SimplexRef left_part(int dim, int nd_id) const;   // Origin Left or Mixed
  SimplexRef right_part(int dim, int nd_id) const;  // Origin Right or Mixed
  ComplexMap include_left() const;
  ComplexMap include_right() const;
};

JoinComplex join(ComplexPtr A, ComplexPtr B, int depth);

struct ConeComplex {
  JoinComplex j;
  bool left_cone;  // true: point * K, false: K * point
  int cone_vertex; // dim-0 cell id of the cone point in the join
  ComplexMap include_base() const;  // K -> cone
  const ComplexPtr& complex() const { return j.complex(); }
};

ConeComplex cone(ComplexPtr K, bool left, int depth);

/// Opposite complex (same cell ids, faces reversed) and the induced ref map.
ComplexPtr opposite(const CellComplex& X);
SimplexRef opposite_ref(const SimplexRef& r);

}  // namespace patfib::sset
