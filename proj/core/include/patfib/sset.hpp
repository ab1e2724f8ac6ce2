#pragma once

// Finite, dimension-bounded simplicial sets in Eilenberg-Zilber normal form.
// Only nondegenerate simplices are stored; an arbitrary simplex is addressed
// by a SimplexRef = nondegenerate cell + strictly decreasing degeneracy word.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace patfib {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Verdict { True, False, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "unknown";
  }
}

namespace sset {

enum class Completeness { Complete, Truncated };

/// Address of a (possibly degenerate) simplex. The word [j1 > j2 > ... > jk]
/// denotes the operator s_{j1} s_{j2} ... s_{jk} applied to cell (nd_dim, nd_id).
struct SimplexRef {
  int nd_dim = 0;
  int nd_id = 0;
  std::vector<int> word;

  int dim() const { return nd_dim + static_cast<int>(word.size()); }
  bool is_degenerate() const { return !word.empty(); }

  auto operator<=>(const SimplexRef&) const = default;
};

/// Deterministic total order: dimension, then underlying cell, then word.
bool ref_less(const SimplexRef& a, const SimplexRef& b);

struct Cell {
  std::vector<SimplexRef> faces;  // d_0 .. d_n; empty in dimension 0
  std::string label;
};

/// Tables of nondegenerate cells up to a build bound. Cells in dimensions
/// <= bound() are exhaustive; Completeness says whether anything can exist
/// above the bound.
class CellComplex {
 public:
  CellComplex() = default;
  CellComplex(std::vector<std::vector<Cell>> tables, int bound, Completeness c);

  int bound() const { return bound_; }
  Completeness completeness() const { return completeness_; }
  bool complete() const { return completeness_ == Completeness::Complete; }

  int top_dim() const;  // largest dimension with a stored cell (-1 if empty)
  int size(int dim) const;
  const Cell& cell(int dim, int id) const;
  long long total_cells() const;

  /// Exhaustively checks the simplicial identities and reference integrity.
  /// Throws Error naming the first violation.
  void validate() const;

  bool same_tables(const CellComplex& other) const;

 private:
  std::vector<std::vector<Cell>> tables_;
  int bound_ = 0;
  Completeness completeness_ = Completeness::Complete;
};

using ComplexPtr = std::shared_ptr<const CellComplex>;

ComplexPtr make_complex(std::vector<std::vector<Cell>> tables, int bound,
                        Completeness c);

// --- elementary operators on refs ------------------------------------------

/// s_j r, renormalized.
SimplexRef apply_degen(const SimplexRef& r, int j);
/// d_i r, renormalized against the stored face tables of X.
SimplexRef apply_face(const CellComplex& X, const SimplexRef& r, int i);
/// s_{w1}...s_{wk} r for a strictly decreasing word (innermost = w.back()).
SimplexRef apply_word(const SimplexRef& r, const std::vector<int>& word);
/// Contravariant action r . f for a monotone map f : [m] -> [dim r], given by
/// its value list (size m+1).
SimplexRef act(const CellComplex& X, const SimplexRef& r,
               const std::vector<int>& f);
/// Vertex j of r, as a dimension-0 cell id.
int vertex(const CellComplex& X, const SimplexRef& r, int j);
std::vector<int> vertex_tuple(const CellComplex& X, const SimplexRef& r);

/// All m-simplices of X (nondegenerate cells plus admissible degeneracies),
/// in deterministic order.
std::vector<SimplexRef> refs_of_dim(const CellComplex& X, int m);

// Degeneracy words <-> monotone surjections. A word (as a set of collapse
// positions) corresponds to the surjection [m] ->> [m-k] collapsing exactly
// those positions.
std::vector<int> surjection_of_word(const std::vector<int>& word, int m);
std::vector<int> word_of_collapses(std::vector<int> collapses);
std::vector<int> collapse_positions(const std::vector<int>& values);

// --- standard shapes --------------------------------------------------------

CellComplex simplex_shape(int n);
CellComplex boundary_shape(int n);
/// Horn with the i-th face (and the top cell) removed; 0 <= i <= n, n >= 1.
CellComplex horn_shape(int n, int i);
CellComplex discrete_shape(int k);
CellComplex empty_shape();
/// Nerve of the poset a -> c <- b (walking cospan).
CellComplex cospan_shape();

enum class ShapeKind { Simplex, Boundary, Horn };
CellComplex standard_shape(ShapeKind kind, int n, int horn_index = -1);

/// For complexes built by simplex_shape/boundary_shape/horn_shape: the sorted
/// vertex set underlying a nondegenerate cell (vertex ids equal vertex
/// numbers), and the cell with a given vertex set.
std::vector<int> shape_cell_vertices(const CellComplex& X, int dim, int id);
std::optional<int> shape_cell_with_vertices(const CellComplex& X,
                                            const std::vector<int>& verts);

/// For X = simplex_shape(n): refs <-> weakly increasing vertex tuples.
std::vector<int> tuple_of_simplex_ref(const CellComplex& delta_n,
                                      const SimplexRef& r);
SimplexRef simplex_ref_of_tuple(const CellComplex& delta_n,
                                const std::vector<int>& tuple);

}  // namespace sset
}  // namespace patfib
