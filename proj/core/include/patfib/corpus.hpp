#pragma once

// Deterministic corpus generators: the pointed-sets Segal instance, seeded
// random category-valued functors, and seeded discrete-fiber bundles.

#include <random>

#include "patfib/cat.hpp"
#include "patfib/pattern.hpp"

namespace patfib::corpus {

using cat::CatPtr;
using cat::CatValuedFunctor;
using cat::CatFunctor;

/// F<n> = M^n for M = Z/order (as a commutative monoid), discrete fibers,
/// identity markings. The structure maps multiply coordinates along pointed
/// maps.
CatValuedFunctor segal_monoid_functor(CatPtr fin_star_base, int max_n,
                                      int order);

/// The same construction precomposed with the retract endofunctor that sends
/// <2> to <3>; the result has fiber M^3 over <2> and breaks the Segal limit
/// conditions while remaining an honest functor.
CatValuedFunctor segal_monoid_functor_inflated(CatPtr fin_star_base, int order);

/// All functors between two small finite categories, in deterministic order.
std::vector<CatFunctor> all_functors(CatPtr A, CatPtr B);

struct RandomFunctorOptions {
  int max_base_objects = 3;
  int max_fiber_objects = 3;
  bool discrete_fibers_only = false;
};

/// Seeded random CatValuedFunctor over a random poset base. Fibers are
/// discrete or poset categories; markings = invertible fiber morphisms.
CatValuedFunctor random_cat_valued_functor(std::uint64_t seed,
                                           const RandomFunctorOptions& opts);

/// Seeded random poset base on <= 3 objects (may be discrete, [1], [2],
/// cospan or span shaped).
CatPtr random_poset_base(std::mt19937_64& rng, int max_objects);

/// A finite-set function fiberwise bundle datum: a functor from a poset base
/// into Set presented with discrete categories.
struct SetDiagram {
  CatPtr base;
  std::vector<int> sizes;                       // per object
  std::vector<std::vector<int>> transports;     // per morphism: value tables
  CatValuedFunctor as_functor() const;          // discrete fibers, all marked
};

/// Seeded diagram over a fixed poset base with fiber sizes <= cap.
SetDiagram random_set_diagram(std::uint64_t seed, CatPtr base, int size_cap);

/// Brute-force limit of a set diagram over its base poset: tuples compatible
/// with every transport, one entry per object.
std::vector<std::vector<int>> set_diagram_limit(const SetDiagram& d);

/// The pointed-sets pattern on nerve(fin_star(max_n)): every edge marked, all
/// triangles, one discrete cone diagram I_n for each n <= max_n (the cone
/// point goes to <n> and the cone edges to the coordinate projections).
pat::Pattern segal_pattern(cat::NerveComplex& fin_nerve, int max_n);

/// The marked Grothendieck nerve of a functor over fin_star as a patterned
/// object over the Segal pattern base.
pat::PatternedObject segal_object(const cat::CatValuedFunctor& F,
                                  cat::NerveComplex& base_nerve, int depth);

}  // namespace patfib::corpus
