#pragma once

// Generic Eilenberg-Zilber assembler. A construction names its n-simplices by
// opaque integer keys and supplies face/degeneracy callbacks on keys; the
// builder finds the nondegenerate cells, assigns deterministic ids, and wires
// the face tables in normal form.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "patfib/sset.hpp"

namespace patfib::sset {

class KeyedComplex {
 public:
  using Key = std::vector<std::int64_t>;
  using FaceFn = std::function<Key(int n, const Key&, int i)>;
  using DegenFn = std::function<Key(int n, const Key&, int j)>;
  using LabelFn = std::function<std::string(int n, const Key&)>;

  struct Spec {
    int bound = 0;
    Completeness completeness = Completeness::Complete;
    // Per dimension: a superset of the nondegenerate n-simplices (degenerate
    // entries are filtered out; duplicates allowed).
    std::vector<std::vector<Key>> raw_cells;
    FaceFn face;
    DegenFn degen;
    LabelFn label;  // optional
  };

  static KeyedComplex build(Spec spec);

  const ComplexPtr& complex() const { return complex_; }
  /// EZ normal form of an arbitrary n-simplex key (memoized).
  SimplexRef normalize(int n, const Key& k);
  const Key& key(int dim, int nd_id) const;
  std::optional<int> find(int dim, const Key& k) const;

 private:
  ComplexPtr complex_;
  FaceFn face_;
  DegenFn degen_;
  std::vector<std::map<Key, int>> index_;
  std::vector<std::vector<Key>> keys_;
  std::map<std::pair<int, Key>, SimplexRef> memo_;
};

// Ref encoding helpers shared by keyed constructions.
void encode_ref(const SimplexRef& r, KeyedComplex::Key& out);
SimplexRef decode_ref(const KeyedComplex::Key& k, size_t& pos);
KeyedComplex::Key encode_ref_pair(const SimplexRef& a, const SimplexRef& b);

}  // namespace patfib::sset
