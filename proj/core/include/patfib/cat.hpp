#pragma once

// Finite categories, functors, nerves, and the Grothendieck construction.

#include <optional>
#include <string>

#include "patfib/builder.hpp"
#include "patfib/map.hpp"

namespace patfib::cat {

using sset::Cell;
using sset::CellComplex;
using sset::Completeness;
using sset::ComplexMap;
using sset::ComplexPtr;
using sset::KeyedComplex;
using sset::MarkedComplex;
using sset::SimplexRef;

struct Morphism {
  int src = 0;
  int tgt = 0;
  std::string name;
};

class FinCategory;
using CatPtr = std::shared_ptr<const FinCategory>;

/// A finite category with a total composition table. Identities are explicit
/// morphisms.
class FinCategory {
 public:
  FinCategory() = default;
  FinCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
              std::vector<int> identities, std::vector<std::vector<int>> comp);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object_name(int o) const { return objects_[o]; }
  const Morphism& morphism(int m) const { return morphisms_[m]; }
  int identity(int o) const { return identities_[o]; }
  bool is_identity(int m) const;
  /// g o f; requires tgt(f) == src(g).
  int compose(int g, int f) const;

  /// Exhaustively verifies src/tgt totality, unit and associativity laws.
  /// Throws Error naming the first violating pair/triple.
  void validate() const;

  std::vector<int> hom(int a, int b) const;
  bool is_invertible(int m) const;
  std::vector<int> isomorphism_class(int obj) const;  // objects iso to obj

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<int> identities_;
  std::vector<std::vector<int>> comp_;  // comp_[g][f] = g o f, -1 if not composable
};

struct CatFunctor {
  CatPtr src, tgt;
  std::vector<int> obj_map;
  std::vector<int> mor_map;
  void validate() const;
};

/// Nerve of a finite category, truncated at `depth`. Cells are chains of
/// non-identity morphisms; COMPLETE iff no such chain of length depth+1
/// exists.
struct NerveComplex {
  KeyedComplex kc;
  CatPtr category;

  const ComplexPtr& complex() const { return kc.complex(); }
  /// Chain of morphism ids (length = dim) of a simplex, identities included
  /// for degenerate ones.
  std::vector<int> chain_of(const SimplexRef& r) const;
  /// Ref of an arbitrary composable chain (identity entries allowed).
  SimplexRef ref_of_chain(const std::vector<int>& chain);
  int vertex_object(int vertex_id) const;
  SimplexRef vertex_of_object(int obj) const;
};

NerveComplex nerve(CatPtr C, int depth);

/// Nerve functoriality: N(u) over matching nerves.
ComplexMap nerve_map(const CatFunctor& u, NerveComplex& src, NerveComplex& tgt);

// --- standard finite categories ----------------------------------------------

CatPtr terminal_category();
CatPtr poset_category(int n);  // [n]
/// Category of pointed sets <0>,...,<max_n> and pointed maps.
CatPtr fin_star(int max_n);
/// Poset category from a reflexive-transitive order matrix leq[a][b].
CatPtr poset_from_leq(const std::vector<std::vector<bool>>& leq,
                      const std::vector<std::string>& names);
CatPtr cospan_category();       // a -> c <- b
CatPtr iso_pair_category();     // walking isomorphism J
CatPtr discrete_category(int n);

/// Identifier helpers for fin_star: morphisms are pointed maps <m> -> <n>,
/// encoded by value tuples (f(1),...,f(m)) with 0 for the basepoint.
int fin_star_morphism(const FinCategory& C, int m, int n,
                      const std::vector<int>& values);
/// rho^i : <n> -> <1>, the map with preimage of 1 equal to {i}.
int fin_star_rho(const FinCategory& C, int n, int i);

// --- category-valued functors and the Grothendieck construction --------------

struct CatValuedFunctor {
  CatPtr base;
  std::vector<CatPtr> fibers;               // per base object
  std::vector<CatFunctor> transports;       // per base morphism
  std::vector<std::set<int>> markings;      // per object: marked fiber morphisms

  void validate() const;  // functoriality, markings contain identities
};

struct GrothendieckResult {
  CatPtr total;
  // object (C, X) <-> id; morphism (f, g) from source object (C, X) <-> id
  std::vector<std::pair<int, int>> object_pairs;
  std::vector<std::pair<int, int>> morphism_pairs;
  std::optional<int> object_id(int c, int x) const;
  std::optional<int> morphism_id(int f, int g, int src_x) const;
  CatFunctor projection;  // total -> base

 private:
  friend GrothendieckResult grothendieck(const CatValuedFunctor& F);
  std::map<std::pair<int, int>, int> obj_index_;
  std::map<std::tuple<int, int, int>, int> mor_index_;
};

GrothendieckResult grothendieck(const CatValuedFunctor& F);

/// Nerve of the Grothendieck construction with the induced marking: an edge
/// (f, g) is marked iff g is marked in the target fiber. Returns the marked
/// complex together with the projection to nerve(base).
struct MarkedGrothendieckNerve {
  GrothendieckResult gr;
  NerveComplex total_nerve;
  MarkedComplex marked;
  ComplexMap projection;  // nerve(total) -> nerve(base)
};

MarkedGrothendieckNerve marked_grothendieck_nerve(const CatValuedFunctor& F,
                                                  NerveComplex& base_nerve,
                                                  int depth);

}  // namespace patfib::cat
