#include "patfib/coherent.hpp"

#include <algorithm>
#include <functional>

namespace patfib::coh {

using cat::FinCategory;
using sset::act;
using sset::apply_degen;
using sset::apply_word;
using sset::Cell;
using sset::CellComplex;
using sset::Completeness;
using sset::fiber_over_vertex;
using sset::refs_of_dim;
using sset::SearchProblem;

// --- interval posets -----------------------------------------------------------

std::vector<int> p_max_elements(int i) {
  std::vector<int> out;
  for (int low = 0; low < (1 << i); ++low) out.push_back(low | (1 << i));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> p_interval_elements(int i, int j) {
  if (i > j) throw Error("p_interval_elements: i > j");
  std::vector<int> out;
  if (i == j) return {1 << i};
  int mids = j - i - 1;
  for (int m = 0; m < (1 << mids); ++m) {
    int mask = (1 << i) | (1 << j);
    for (int b = 0; b < mids; ++b)
      if (m & (1 << b)) mask |= 1 << (i + 1 + b);
    out.push_back(mask);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
bool proper_superset(int a, int b) { return a != b && (a & b) == b; }

std::string mask_label(int mask) {
  std::string s = "{";
  bool first = true;
  for (int b = 0; b < 16; ++b)
    if (mask & (1 << b)) {
      if (!first) s += ",";
      s += std::to_string(b);
      first = false;
    }
  return s + "}";
}

PosetNerve poset_nerve_of(const std::vector<int>& elements) {
  // Strictly decreasing chains of masks, ordered by containment.
  PosetNerve out;
  KeyedComplex::Spec spec;
  // Longest chain = size of the largest element's popcount span; chains are
  // bounded by |elements| anyway.
  int bound = 0;
  {
    // longest strict chain length - 1
    std::map<int, int> depth;
    std::vector<int> sorted = elements;
    std::sort(sorted.begin(), sorted.end(), [](int a, int b) {
      return __builtin_popcount(a) < __builtin_popcount(b);
    });
    for (int e : sorted) {
      int d = 0;
      for (int f : sorted)
        if (proper_superset(e, f) && depth.count(f))
          d = std::max(d, depth[f] + 1);
      depth[e] = d;
      bound = std::max(bound, d);
    }
  }
  spec.bound = bound;
  spec.completeness = Completeness::Complete;
  spec.raw_cells.resize(bound + 1);
  std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& chain) {
    int n = static_cast<int>(chain.size()) - 1;
    if (n >= 0) {
      KeyedComplex::Key k(chain.begin(), chain.end());
      spec.raw_cells[n].push_back(std::move(k));
    }
    if (n + 1 > bound) return;
    for (int e : elements)
      if (chain.empty() || proper_superset(chain.back(), e)) {
        chain.push_back(e);
        rec(chain);
        chain.pop_back();
      }
  };
  std::vector<int> chain;
  rec(chain);

  spec.face = [](int, const KeyedComplex::Key& k, int i) {
    KeyedComplex::Key out_k = k;
    out_k.erase(out_k.begin() + i);
    return out_k;
  };
  spec.degen = [](int, const KeyedComplex::Key& k, int j) {
    KeyedComplex::Key out_k = k;
    out_k.insert(out_k.begin() + j, k[j]);
    return out_k;
  };
  spec.label = [](int, const KeyedComplex::Key& k) {
    std::string s;
    for (size_t t = 0; t < k.size(); ++t) {
      if (t) s += ">";
      s += mask_label(static_cast<int>(k[t]));
    }
    return s;
  };
  out.top = bound;
  out.kc = KeyedComplex::build(std::move(spec));
  return out;
}
}  // namespace

SimplexRef PosetNerve::ref_of_weak_chain(const std::vector<int>& chain) {
  KeyedComplex::Key k(chain.begin(), chain.end());
  return kc.normalize(static_cast<int>(chain.size()) - 1, k);
}

std::vector<int> PosetNerve::chain_of(int dim, int id) const {
  const auto& k = kc.key(dim, id);
  return std::vector<int>(k.begin(), k.end());
}

PsiData psi(int n) {
  if (n < 0) throw Error("psi: n must be >= 0");
  PsiData out;
  out.n = n;
  for (int i = 0; i <= n; ++i) out.psi.push_back(poset_nerve_of(p_max_elements(i)));
  return out;
}

int direct_image_mask(int mask, const std::vector<int>& u) {
  int out = 0;
  for (int b = 0; b < static_cast<int>(u.size()); ++b)
    if (mask & (1 << b)) out |= 1 << u[b];
  return out;
}

std::vector<int> chi_min_tuple(const std::vector<int>& weak_chain) {
  std::vector<int> out;
  out.reserve(weak_chain.size());
  for (int mask : weak_chain) out.push_back(__builtin_ctz(mask));
  return out;
}

// --- complex functors ----------------------------------------------------------

void ComplexFunctor::validate() const {
  if (!base) throw Error("ComplexFunctor: no base");
  if (static_cast<int>(fibers.size()) != base->num_objects() ||
      static_cast<int>(transports.size()) != base->num_morphisms())
    throw Error("ComplexFunctor: table sizes mismatch");
  for (int m = 0; m < base->num_morphisms(); ++m) {
    const auto& t = transports[m];
    const auto& mo = base->morphism(m);
    if (t.src != fibers[mo.src].complex || t.tgt != fibers[mo.tgt].complex)
      throw Error("ComplexFunctor: transport endpoints wrong at " + mo.name);
    t.validate();
    if (!preserves_marking(t, fibers[mo.src], fibers[mo.tgt]))
      throw Error("ComplexFunctor: transport not marked at " + mo.name);
    if (base->is_identity(m)) {
      if (!(t == sset::ComplexMap::identity(fibers[mo.src].complex)))
        throw Error("ComplexFunctor: F(id) != id");
    }
  }
  for (int g = 0; g < base->num_morphisms(); ++g)
    for (int f = 0; f < base->num_morphisms(); ++f) {
      if (base->morphism(f).tgt != base->morphism(g).src) continue;
      if (!(compose(transports[g], transports[f]) ==
            transports[base->compose(g, f)]))
        throw Error("ComplexFunctor: F(gf) != F(g)F(f)");
    }
}

NerveValuedFunctor to_complex_functor(const CatValuedFunctor& F, int depth) {
  NerveValuedFunctor out;
  out.functor.base = F.base;
  for (int o = 0; o < F.base->num_objects(); ++o)
    out.nerves.push_back(cat::nerve(F.fibers[o], depth));
  for (int o = 0; o < F.base->num_objects(); ++o) {
    MarkedComplex mc;
    mc.complex = out.nerves[o].complex();
    if (!F.markings.empty()) {
      for (int e = 0; e < mc.complex->size(1); ++e) {
        auto ch = out.nerves[o].chain_of(SimplexRef{1, e, {}});
        if (F.markings[o].count(ch[0])) mc.marked.insert(e);
      }
    }
    out.functor.fibers.push_back(std::move(mc));
  }
  for (int m = 0; m < F.base->num_morphisms(); ++m) {
    const auto& mo = F.base->morphism(m);
    out.functor.transports.push_back(
        cat::nerve_map(F.transports[m], out.nerves[mo.src], out.nerves[mo.tgt]));
  }
  return out;
}

ComplexFunctor constant_functor(CatPtr base, MarkedComplex D) {
  ComplexFunctor out;
  out.base = base;
  for (int o = 0; o < base->num_objects(); ++o) out.fibers.push_back(D);
  for (int m = 0; m < base->num_morphisms(); ++m)
    out.transports.push_back(sset::ComplexMap::identity(D.complex));
  return out;
}

// --- unstraightening -------------------------------------------------------------

namespace {
KeyedComplex::Key flat_assignment(const sset::ComplexMap& m) {
  KeyedComplex::Key k;
  for (const auto& row : m.assign)
    for (const auto& v : row) sset::encode_ref(v, k);
  return k;
}
}  // namespace

struct Unstraightening::Impl {
  // Registries of maps Psi(i) -> fiber(obj).
  std::map<std::pair<int, int>, std::vector<sset::ComplexMap>> registry;
  std::map<std::pair<int, int>, std::map<KeyedComplex::Key, int>> reg_index;
  // Restriction memo: (u-values (for [0..k]), obj, src idx) -> tgt idx.
  std::map<std::tuple<std::vector<int>, int, int>, int> restrict_memo;
  // Transport memo: (base morphism, i, src idx) -> tgt idx.
  std::map<std::tuple<int, int, int>, int> transport_memo;
  // Per level: nd chains of Psi(i) (as mask chains) and their smallest mask.
  std::vector<std::vector<std::vector<int>>> nd_chains;  // [i][cell] = chain
};

namespace {
struct UnKey {
  int c0;
  std::vector<int> chain;   // morphism ids, possibly identities
  std::vector<int> alphas;  // registry indices, one per vertex
};

UnKey decode_unkey(const KeyedComplex::Key& k, int n) {
  UnKey u;
  u.c0 = static_cast<int>(k[0]);
  for (int t = 0; t < n; ++t) u.chain.push_back(static_cast<int>(k[1 + t]));
  for (int t = 0; t <= n; ++t)
    u.alphas.push_back(static_cast<int>(k[1 + n + t]));
  return u;
}

KeyedComplex::Key encode_unkey(const UnKey& u) {
  KeyedComplex::Key k;
  k.push_back(u.c0);
  for (int m : u.chain) k.push_back(m);
  for (int a : u.alphas) k.push_back(a);
  return k;
}
}  // namespace

int Unstraightening::registry_index(int i, int obj, const sset::ComplexMap& m) {
  auto& reg = impl_->registry;
  auto key = std::make_pair(i, obj);
  auto it = impl_->reg_index.find(key);
  if (it == impl_->reg_index.end())
    throw Error("unstraightening: registry missing");
  auto fit = it->second.find(flat_assignment(m));
  if (fit == it->second.end())
    throw Error("unstraightening: map not in registry");
  (void)reg;
  return fit->second;
}

const sset::ComplexMap& Unstraightening::registry_map(int i, int obj, int idx) {
  return impl_->registry.at({i, obj}).at(idx);
}

int Unstraightening::registry_size(int i, int obj) {
  auto it = impl_->registry.find({i, obj});
  return it == impl_->registry.end() ? 0
                                     : static_cast<int>(it->second.size());
}

int Unstraightening::transported_index(int base_morphism, int i, int idx) {
  auto memo_key = std::make_tuple(base_morphism, i, idx);
  auto it = impl_->transport_memo.find(memo_key);
  if (it != impl_->transport_memo.end()) return it->second;
  const auto& mo = F_.base->morphism(base_morphism);
  const auto& src_map = registry_map(i, mo.src, idx);
  sset::ComplexMap composed = compose(F_.transports[base_morphism], src_map);
  int out = registry_index(i, mo.tgt, composed);
  impl_->transport_memo.emplace(memo_key, out);
  return out;
}

Unstraightening Unstraightening::build(const ComplexFunctor& F, int depth,
                                       const NerveComplex& base_nerve) {
  Unstraightening un;
  un.F_ = F;
  un.base_nerve_ = base_nerve;
  un.psis_ = psi(depth);
  un.impl_ = std::make_shared<Impl>();
  auto impl = un.impl_;
  const FinCategory& B = *F.base;

  // Per-level nondegenerate chains of Psi(i).
  impl->nd_chains.resize(depth + 1);
  for (int i = 0; i <= depth; ++i) {
    auto& pn = un.psis_.psi[i];
    for (int d = 0; d <= pn.complex()->top_dim(); ++d)
      for (int c = 0; c < pn.complex()->size(d); ++c)
        impl->nd_chains[i].push_back(pn.chain_of(d, c));
  }

  // Registries via exhaustive map search.
  for (int i = 0; i <= depth; ++i) {
    for (int o = 0; o < B.num_objects(); ++o) {
      SearchProblem sp;
      sp.src = un.psis_.psi[i].complex();
      sp.tgt = F.fibers[o].complex;
      auto maps = enumerate_maps(sp);
      std::map<KeyedComplex::Key, int> index;
      for (size_t t = 0; t < maps.size(); ++t)
        index[flat_assignment(maps[t])] = static_cast<int>(t);
      impl->registry[{i, o}] = std::move(maps);
      impl->reg_index[{i, o}] = std::move(index);
    }
  }

  // Helper: evaluate a registry map on a weak mask chain of Psi(i).
  auto eval_on_chain = [&un](int i, int obj, int idx,
                             const std::vector<int>& weak) {
    const auto& m = un.impl_->registry.at({i, obj}).at(idx);
    SimplexRef r = un.psis_.psi[i].ref_of_weak_chain(weak);
    return m.push(r);
  };

  // Enumerate raw cells.
  KeyedComplex::Spec spec;
  spec.bound = depth;
  bool all_discrete = true;
  for (auto& fib : F.fibers)
    if (fib.complex->top_dim() > 0) all_discrete = false;
  spec.completeness = (all_discrete && base_nerve.complex()->complete() &&
                       depth >= base_nerve.complex()->top_dim())
                          ? Completeness::Complete
                          : Completeness::Truncated;
  spec.raw_cells.resize(depth + 1);

  std::function<void(int, std::vector<int>&, std::vector<int>&,
                     std::vector<int>&)>
      extend;
  // objs[t] = object at vertex t; chain[t-1] = morphism t; alphas = indices.
  extend = [&](int n, std::vector<int>& objs, std::vector<int>& chain,
               std::vector<int>& alphas) {
    const int i = static_cast<int>(alphas.size());
    if (i <= n) {
      // Choose alpha_i consistent with everything before it.
      int obj = objs[i];
      // Forced values: for each nd chain with last mask != {i}.
      std::vector<std::pair<size_t, SimplexRef>> forced;
      bool consistent = true;
      for (size_t cidx = 0;
           cidx < impl->nd_chains[i].size() && consistent; ++cidx) {
        const auto& T = impl->nd_chains[i][cidx];
        int last = T.back();
        int rest = last & ~(1 << i);
        if (rest == 0) continue;
        std::optional<SimplexRef> want;
        for (int ip = 0; ip < i; ++ip) {
          if (!(rest & (1 << ip))) continue;
          // S-chain at level ip; transported by f_{ip,i}.
          std::vector<int> S;
          for (int mask : T) S.push_back(mask & ((1 << (ip + 1)) - 1));
          SimplexRef v = eval_on_chain(ip, objs[ip], alphas[ip], S);
          for (int t = ip + 1; t <= i; ++t)
            v = F.transports[chain[t - 1]].push(v);
          if (!want) {
            want = v;
          } else if (!(*want == v)) {
            consistent = false;
            break;
          }
        }
        if (want) forced.emplace_back(cidx, *want);
      }
      if (!consistent) return;
      const auto& reg = impl->registry.at({i, obj});
      for (size_t ridx = 0; ridx < reg.size(); ++ridx) {
        bool ok = true;
        for (auto& [cidx, v] : forced) {
          const auto& T = impl->nd_chains[i][cidx];
          SimplexRef got = eval_on_chain(i, obj, static_cast<int>(ridx), T);
          if (!(got == v)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        alphas.push_back(static_cast<int>(ridx));
        extend(n, objs, chain, alphas);
        alphas.pop_back();
      }
      return;
    }
    // Complete cell at dimension n.
    UnKey k;
    k.c0 = objs[0];
    k.chain = chain;
    k.alphas = alphas;
    spec.raw_cells[n].push_back(encode_unkey(k));
  };

  // Enumerate sigma chains with identities.
  std::function<void(int, std::vector<int>&, std::vector<int>&)> sigmas =
      [&](int n, std::vector<int>& objs, std::vector<int>& chain) {
        if (static_cast<int>(chain.size()) == n) {
          std::vector<int> alphas;
          extend(n, objs, chain, alphas);
          return;
        }
        int at = objs.back();
        for (int m = 0; m < B.num_morphisms(); ++m) {
          if (B.morphism(m).src != at) continue;
          chain.push_back(m);
          objs.push_back(B.morphism(m).tgt);
          sigmas(n, objs, chain);
          chain.pop_back();
          objs.pop_back();
        }
      };
  for (int n = 0; n <= depth; ++n)
    for (int o = 0; o < B.num_objects(); ++o) {
      std::vector<int> objs{o}, chain;
      sigmas(n, objs, chain);
    }

  // Face / degeneracy callbacks with memoized alpha restrictions.
  auto F_copy = F;
  auto psis_ptr = std::make_shared<PsiData>(un.psis_);
  auto restrict_alpha = [impl, psis_ptr, F_copy](
                            const std::vector<int>& u_prefix, int obj,
                            int src_idx) {
    auto memo_key = std::make_tuple(u_prefix, obj, src_idx);
    auto it = impl->restrict_memo.find(memo_key);
    if (it != impl->restrict_memo.end()) return it->second;
    const int k = static_cast<int>(u_prefix.size()) - 1;
    const int i_src = u_prefix.back();
    const auto& src_map = impl->registry.at({i_src, obj}).at(src_idx);
    // Build the composed assignment on Psi(k).
    sset::ComplexMap out;
    out.src = psis_ptr->psi[k].complex();
    out.tgt = src_map.tgt;
    out.assign.resize(std::max(out.src->top_dim() + 1, 1));
    auto& pnk = psis_ptr->psi[k];
    auto& pns = psis_ptr->psi[i_src];
    for (int d = 0; d <= out.src->top_dim(); ++d) {
      out.assign[d].resize(out.src->size(d));
      for (int c = 0; c < out.src->size(d); ++c) {
        auto T = pnk.chain_of(d, c);
        std::vector<int> img;
        img.reserve(T.size());
        for (int mask : T) img.push_back(direct_image_mask(mask, u_prefix));
        out.assign[d][c] = src_map.push(pns.ref_of_weak_chain(img));
      }
    }
    int idx = -1;
    auto flat = flat_assignment(out);
    auto fit = impl->reg_index.at({k, obj}).find(flat);
    if (fit == impl->reg_index.at({k, obj}).end())
      throw Error("unstraightening: restricted map missing from registry");
    idx = fit->second;
    impl->restrict_memo.emplace(memo_key, idx);
    return idx;
  };

  CatPtr Bp = F.base;
  spec.face = [restrict_alpha, Bp](int n, const KeyedComplex::Key& key,
                                   int t) {
    UnKey u = decode_unkey(key, n);
    std::vector<int> objs{u.c0};
    for (int m : u.chain) objs.push_back(Bp->morphism(m).tgt);
    UnKey r;
    r.c0 = t == 0 ? objs[1] : objs[0];
    for (int k = 1; k <= n; ++k) {
      if (t == 0) {
        if (k >= 2) r.chain.push_back(u.chain[k - 1]);
      } else if (t == n) {
        if (k <= n - 1) r.chain.push_back(u.chain[k - 1]);
      } else {
        if (k < t) r.chain.push_back(u.chain[k - 1]);
        else if (k == t)
          r.chain.push_back(Bp->compose(u.chain[t], u.chain[t - 1]));
        else if (k >= t + 2)
          r.chain.push_back(u.chain[k - 1]);
      }
    }
    for (int k = 0; k <= n - 1; ++k) {
      int uk = k < t ? k : k + 1;  // delta_t
      if (uk == k) {
        r.alphas.push_back(u.alphas[k]);
      } else {
        std::vector<int> prefix;
        for (int l = 0; l <= k; ++l) prefix.push_back(l < t ? l : l + 1);
        r.alphas.push_back(restrict_alpha(prefix, objs[uk], u.alphas[uk]));
      }
    }
    return encode_unkey(r);
  };
  spec.degen = [restrict_alpha, Bp](int n, const KeyedComplex::Key& key,
                                    int t) {
    UnKey u = decode_unkey(key, n);
    std::vector<int> objs{u.c0};
    for (int m : u.chain) objs.push_back(Bp->morphism(m).tgt);
    UnKey r;
    r.c0 = u.c0;
    for (int k = 1; k <= n + 1; ++k) {
      if (k <= t) r.chain.push_back(u.chain[k - 1]);
      else if (k == t + 1) r.chain.push_back(Bp->identity(objs[t]));
      else r.chain.push_back(u.chain[k - 2]);
    }
    for (int k = 0; k <= n + 1; ++k) {
      int uk = k <= t ? k : k - 1;  // sigma_t
      if (uk == k) {
        r.alphas.push_back(u.alphas[k]);
      } else {
        std::vector<int> prefix;
        for (int l = 0; l <= k; ++l) prefix.push_back(l <= t ? l : l - 1);
        r.alphas.push_back(restrict_alpha(prefix, objs[uk], u.alphas[uk]));
      }
    }
    return encode_unkey(r);
  };
  spec.label = nullptr;

  un.kc_ = KeyedComplex::build(std::move(spec));

  // Marking: the top edge of Psi(1) is the chain {0,1} > {1}.
  un.marked_.complex = un.kc_.complex();
  for (int e = 0; e < un.kc_.complex()->size(1); ++e) {
    UnKey u = decode_unkey(un.kc_.key(1, e), 1);
    int obj1 = B.morphism(u.chain[0]).tgt;
    const auto& a1 = un.registry_map(1, obj1, u.alphas[1]);
    SimplexRef top = un.psis_.psi[1].ref_of_weak_chain({0b11, 0b10});
    if (F.fibers[obj1].is_marked(a1.push(top))) un.marked_.marked.insert(e);
  }

  // Projection to the base nerve.
  un.projection_.src = un.kc_.complex();
  un.projection_.tgt = base_nerve.complex();
  un.projection_.assign.resize(
      std::max(un.kc_.complex()->top_dim() + 1, 1));
  cat::NerveComplex bn_copy = base_nerve;
  for (int d = 0; d <= un.kc_.complex()->top_dim(); ++d) {
    un.projection_.assign[d].resize(un.kc_.complex()->size(d));
    for (int i = 0; i < un.kc_.complex()->size(d); ++i) {
      UnKey u = decode_unkey(un.kc_.key(d, i), d);
      if (d == 0)
        un.projection_.assign[d][i] = bn_copy.vertex_of_object(u.c0);
      else
        un.projection_.assign[d][i] = bn_copy.ref_of_chain(u.chain);
    }
  }
  un.base_nerve_ = bn_copy;
  return un;
}

const sset::ComplexMap& Unstraightening::alpha(int dim, int nd_id, int i) {
  UnKey u = decode_unkey(kc_.key(dim, nd_id), dim);
  int obj = i == 0 ? u.c0 : F_.base->morphism(u.chain[i - 1]).tgt;
  return registry_map(i, obj, u.alphas[i]);
}

std::vector<int> Unstraightening::base_chain(int dim, int nd_id) const {
  UnKey u = decode_unkey(kc_.key(dim, nd_id), dim);
  return u.chain;
}

int Unstraightening::base_object_at(int dim, int nd_id, int i) const {
  UnKey u = decode_unkey(kc_.key(dim, nd_id), dim);
  int obj = u.c0;
  for (int t = 0; t < i; ++t) obj = F_.base->morphism(u.chain[t]).tgt;
  return obj;
}

SimplexRef Unstraightening::locate(int first_object,
                                   const std::vector<int>& chain,
                                   const std::vector<ComplexMap>& alphas) {
  UnKey u;
  u.c0 = first_object;
  u.chain = chain;
  int obj = first_object;
  for (size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0) obj = F_.base->morphism(chain[i - 1]).tgt;
    u.alphas.push_back(registry_index(static_cast<int>(i), obj, alphas[i]));
  }
  return kc_.normalize(static_cast<int>(chain.size()), encode_unkey(u));
}

Unstraightening unstraighten_over_nerve(const ComplexFunctor& F, int depth,
                                        const NerveComplex& base_nerve) {
  return Unstraightening::build(F, depth, base_nerve);
}

// --- relative nerve ---------------------------------------------------------------

namespace {
struct RnKey {
  int c0;
  std::vector<int> chain;
  std::vector<SimplexRef> comps;
};

RnKey decode_rnkey(const KeyedComplex::Key& k, int n) {
  RnKey u;
  u.c0 = static_cast<int>(k[0]);
  size_t pos = 1;
  for (int t = 0; t < n; ++t) u.chain.push_back(static_cast<int>(k[pos++]));
  for (int t = 0; t <= n; ++t) u.comps.push_back(sset::decode_ref(k, pos));
  return u;
}

KeyedComplex::Key encode_rnkey(const RnKey& u) {
  KeyedComplex::Key k;
  k.push_back(u.c0);
  for (int m : u.chain) k.push_back(m);
  for (const auto& r : u.comps) sset::encode_ref(r, k);
  return k;
}

// Monotone tuple for u restricted to [0..k] composed into [u(k)].
std::vector<int> op_tuple(const std::vector<int>& u, int k) {
  std::vector<int> t(k + 1);
  for (int l = 0; l <= k; ++l) t[l] = u[l];
  return t;
}
}  // namespace

RelativeNerve RelativeNerve::build(const ComplexFunctor& F, int depth,
                                   const NerveComplex& base_nerve) {
  RelativeNerve rn;
  rn.F_ = F;
  rn.base_nerve_ = base_nerve;
  const FinCategory& B = *F.base;

  KeyedComplex::Spec spec;
  spec.bound = depth;
  bool all_discrete = true;
  int fiber_top = 0;
  bool fibers_complete = true;
  for (auto& fib : F.fibers) {
    fiber_top = std::max(fiber_top, fib.complex->top_dim());
    if (fib.complex->top_dim() > 0) all_discrete = false;
    if (!fib.complex->complete()) fibers_complete = false;
  }
  bool single_point_base =
      B.num_objects() == 1 && B.num_morphisms() == 1;
  spec.completeness = Completeness::Truncated;
  if (all_discrete && base_nerve.complex()->complete() &&
      depth >= base_nerve.complex()->top_dim())
    spec.completeness = Completeness::Complete;
  if (single_point_base && fibers_complete && depth >= fiber_top)
    spec.completeness = Completeness::Complete;
  spec.raw_cells.resize(depth + 1);

  // Enumerate.
  std::function<void(int, std::vector<int>&, std::vector<int>&,
                     std::vector<SimplexRef>&)>
      extend = [&](int n, std::vector<int>& objs, std::vector<int>& chain,
                   std::vector<SimplexRef>& comps) {
        const int i = static_cast<int>(comps.size());
        if (i > n) {
          RnKey k{objs[0], chain, comps};
          spec.raw_cells[n].push_back(encode_rnkey(k));
          return;
        }
        const auto& fib = *F.fibers[objs[i]].complex;
        if (i == 0) {
          for (int v = 0; v < fib.size(0); ++v) {
            comps.push_back(SimplexRef{0, v, {}});
            extend(n, objs, chain, comps);
            comps.pop_back();
          }
          return;
        }
        SimplexRef want = F.transports[chain[i - 1]].push(comps[i - 1]);
        for (const auto& r : refs_of_dim(fib, i)) {
          if (!(sset::apply_face(fib, r, i) == want)) continue;
          comps.push_back(r);
          extend(n, objs, chain, comps);
          comps.pop_back();
        }
      };
  std::function<void(int, std::vector<int>&, std::vector<int>&)> sigmas =
      [&](int n, std::vector<int>& objs, std::vector<int>& chain) {
        if (static_cast<int>(chain.size()) == n) {
          std::vector<SimplexRef> comps;
          extend(n, objs, chain, comps);
          return;
        }
        int at = objs.back();
        for (int m = 0; m < B.num_morphisms(); ++m) {
          if (B.morphism(m).src != at) continue;
          chain.push_back(m);
          objs.push_back(B.morphism(m).tgt);
          sigmas(n, objs, chain);
          chain.pop_back();
          objs.pop_back();
        }
      };
  for (int n = 0; n <= depth; ++n)
    for (int o = 0; o < B.num_objects(); ++o) {
      std::vector<int> objs{o}, chain;
      sigmas(n, objs, chain);
    }

  auto F_copy = std::make_shared<ComplexFunctor>(F);
  CatPtr Bp = F.base;
  spec.face = [F_copy, Bp](int n, const KeyedComplex::Key& key, int t) {
    RnKey u = decode_rnkey(key, n);
    std::vector<int> objs{u.c0};
    for (int m : u.chain) objs.push_back(Bp->morphism(m).tgt);
    RnKey r;
    std::vector<int> uvals;  // delta_t values on [0..n-1]
    for (int k = 0; k <= n - 1; ++k) uvals.push_back(k < t ? k : k + 1);
    r.c0 = objs[uvals.empty() ? 0 : uvals[0]];
    for (int k = 1; k <= n - 1; ++k) {
      // morphism from vertex u(k-1) to u(k): composite of chain entries.
      int a = uvals[k - 1], b = uvals[k];
      int m = Bp->identity(objs[a]);
      for (int s = a + 1; s <= b; ++s)
        m = s == a + 1 ? u.chain[s - 1] : Bp->compose(u.chain[s - 1], m);
      r.chain.push_back(m);
    }
    for (int k = 0; k <= n - 1; ++k) {
      const auto& fib = *F_copy->fibers[objs[uvals[k]]].complex;
      r.comps.push_back(act(fib, u.comps[uvals[k]], op_tuple(uvals, k)));
    }
    return encode_rnkey(r);
  };
  spec.degen = [F_copy, Bp](int n, const KeyedComplex::Key& key, int t) {
    RnKey u = decode_rnkey(key, n);
    std::vector<int> objs{u.c0};
    for (int m : u.chain) objs.push_back(Bp->morphism(m).tgt);
    RnKey r;
    std::vector<int> uvals;  // sigma_t values on [0..n+1]
    for (int k = 0; k <= n + 1; ++k) uvals.push_back(k <= t ? k : k - 1);
    r.c0 = objs[uvals[0]];
    for (int k = 1; k <= n + 1; ++k) {
      int a = uvals[k - 1], b = uvals[k];
      int m = Bp->identity(objs[a]);
      for (int s = a + 1; s <= b; ++s)
        m = s == a + 1 ? u.chain[s - 1] : Bp->compose(u.chain[s - 1], m);
      r.chain.push_back(m);
    }
    for (int k = 0; k <= n + 1; ++k) {
      const auto& fib = *F_copy->fibers[objs[uvals[k]]].complex;
      r.comps.push_back(act(fib, u.comps[uvals[k]], op_tuple(uvals, k)));
    }
    return encode_rnkey(r);
  };

  rn.kc_ = KeyedComplex::build(std::move(spec));

  // Marking: the component a_1 classifies a marked edge.
  rn.marked_.complex = rn.kc_.complex();
  for (int e = 0; e < rn.kc_.complex()->size(1); ++e) {
    RnKey u = decode_rnkey(rn.kc_.key(1, e), 1);
    int obj1 = B.morphism(u.chain[0]).tgt;
    if (F.fibers[obj1].is_marked(u.comps[1])) rn.marked_.marked.insert(e);
  }

  rn.projection_.src = rn.kc_.complex();
  rn.projection_.tgt = base_nerve.complex();
  rn.projection_.assign.resize(std::max(rn.kc_.complex()->top_dim() + 1, 1));
  cat::NerveComplex bn_copy = base_nerve;
  for (int d = 0; d <= rn.kc_.complex()->top_dim(); ++d) {
    rn.projection_.assign[d].resize(rn.kc_.complex()->size(d));
    for (int i = 0; i < rn.kc_.complex()->size(d); ++i) {
      RnKey u = decode_rnkey(rn.kc_.key(d, i), d);
      if (d == 0)
        rn.projection_.assign[d][i] = bn_copy.vertex_of_object(u.c0);
      else
        rn.projection_.assign[d][i] = bn_copy.ref_of_chain(u.chain);
    }
  }
  rn.base_nerve_ = bn_copy;
  return rn;
}

std::vector<int> RelativeNerve::base_chain(int dim, int nd_id) const {
  return decode_rnkey(kc_.key(dim, nd_id), dim).chain;
}

SimplexRef RelativeNerve::component(int dim, int nd_id, int i) const {
  return decode_rnkey(kc_.key(dim, nd_id), dim).comps[i];
}

SimplexRef RelativeNerve::locate(int first_object,
                                 const std::vector<int>& chain,
                                 const std::vector<SimplexRef>& components) {
  RnKey u{first_object, chain, components};
  return kc_.normalize(static_cast<int>(chain.size()), encode_rnkey(u));
}

RelativeNerve relative_nerve(const ComplexFunctor& F, int depth,
                             const NerveComplex& base_nerve) {
  return RelativeNerve::build(F, depth, base_nerve);
}

ComplexMap relnerve_comparison(RelativeNerve& rn, Unstraightening& un) {
  ComplexMap out;
  out.src = rn.complex();
  out.tgt = un.complex();
  out.assign.resize(std::max(out.src->top_dim() + 1, 1));
  const ComplexFunctor& F = rn.functor();
  for (int d = 0; d <= out.src->top_dim(); ++d) {
    out.assign[d].resize(out.src->size(d));
    for (int c = 0; c < out.src->size(d); ++c) {
      auto chain = rn.base_chain(d, c);
      int obj = 0;
      {
        // first object
        auto key0 = rn.keyed().key(d, c);
        obj = static_cast<int>(key0[0]);
      }
      std::vector<ComplexMap> alphas;
      int at = obj;
      for (int i = 0; i <= d; ++i) {
        if (i > 0) at = F.base->morphism(chain[i - 1]).tgt;
        const auto& fib = *F.fibers[at].complex;
        SimplexRef a_i = rn.component(d, c, i);
        // alpha_i = a_i o chi on each Psi(i) chain.
        ComplexMap m;
        m.src = un.psis().psi[i].complex();
        m.tgt = F.fibers[at].complex;
        m.assign.resize(std::max(m.src->top_dim() + 1, 1));
        for (int dd = 0; dd <= m.src->top_dim(); ++dd) {
          m.assign[dd].resize(m.src->size(dd));
          for (int cc = 0; cc < m.src->size(dd); ++cc) {
            auto T = un.psis().psi[i].chain_of(dd, cc);
            m.assign[dd][cc] = act(fib, a_i, chi_min_tuple(T));
          }
        }
        alphas.push_back(std::move(m));
      }
      out.assign[d][c] = un.locate(obj, chain, alphas);
    }
  }
  return out;
}

// --- Grothendieck comparison --------------------------------------------------------

GrothComparison groth_comparison_iso(const CatValuedFunctor& F,
                                     NerveValuedFunctor& NF,
                                     Unstraightening& un, int depth) {
  GrothComparison out;
  cat::NerveComplex base_copy = un.base();
  out.groth = cat::marked_grothendieck_nerve(F, base_copy, depth);
  const FinCategory& B = *F.base;
  auto& gn = out.groth.total_nerve;

  // phi : unstraightening -> N(int F).
  out.phi.src = un.complex();
  out.phi.tgt = gn.complex();
  out.phi.assign.resize(std::max(un.complex()->top_dim() + 1, 1));
  for (int d = 0; d <= un.complex()->top_dim(); ++d) {
    out.phi.assign[d].resize(un.complex()->size(d));
    for (int c = 0; c < un.complex()->size(d); ++c) {
      auto chain = un.base_chain(d, c);
      int obj0 = un.base_object_at(d, c, 0);
      if (d == 0) {
        // vertex: (C_0, X_0) with X_0 = alpha_0 on the point chain.
        SimplexRef v = un.alpha(d, c, 0).push(
            un.psis().psi[0].ref_of_weak_chain({1}));
        int x0 = v.nd_id;
        out.phi.assign[d][c] =
            gn.vertex_of_object(*out.groth.gr.object_id(obj0, x0));
        continue;
      }
      std::vector<int> gchain;
      int at = obj0;
      for (int t = 1; t <= d; ++t) {
        int prev = at;
        at = B.morphism(chain[t - 1]).tgt;
        // g_t = alpha_t evaluated on the edge chain {t-1,t} > {t}.
        SimplexRef ge = un.alpha(d, c, t).push(
            un.psis().psi[t].ref_of_weak_chain(
                {(1 << (t - 1)) | (1 << t), 1 << t}));
        int g_mor;
        if (ge.is_degenerate())
          g_mor = F.fibers[at]->identity(ge.nd_id);
        else
          g_mor = NF.nerves[at].chain_of(ge)[0];
        // source fiber object X_{t-1}.
        SimplexRef xv = un.alpha(d, c, t - 1).push(
            un.psis().psi[t - 1].ref_of_weak_chain({1 << (t - 1)}));
        auto mid = out.groth.gr.morphism_id(chain[t - 1], g_mor, xv.nd_id);
        if (!mid) throw Error("groth comparison: morphism not found");
        gchain.push_back(*mid);
        (void)prev;
      }
      out.phi.assign[d][c] = gn.ref_of_chain(gchain);
    }
  }

  // psi : N(int F) -> unstraightening.
  out.psi.src = gn.complex();
  out.psi.tgt = un.complex();
  out.psi.assign.resize(std::max(gn.complex()->top_dim() + 1, 1));
  for (int d = 0; d <= gn.complex()->top_dim(); ++d) {
    out.psi.assign[d].resize(gn.complex()->size(d));
    for (int c = 0; c < gn.complex()->size(d); ++c) {
      std::vector<int> bchain;  // base morphisms
      std::vector<int> gs;      // fiber morphisms g_t
      std::vector<int> objs;    // base objects
      std::vector<int> xs;      // fiber objects X_t
      if (d == 0) {
        auto [co, xo] = out.groth.gr.object_pairs[gn.vertex_object(c)];
        objs = {co};
        xs = {xo};
      } else {
        auto tchain = gn.chain_of(SimplexRef{d, c, {}});
        auto [c0, x0] =
            out.groth.gr
                .object_pairs[out.groth.gr.total->morphism(tchain[0]).src];
        objs = {c0};
        xs = {x0};
        for (int t = 0; t < d; ++t) {
          auto [f, g] = out.groth.gr.morphism_pairs[tchain[t]];
          bchain.push_back(f);
          gs.push_back(g);
          auto [ct, xt] =
              out.groth.gr
                  .object_pairs[out.groth.gr.total->morphism(tchain[t]).tgt];
          objs.push_back(ct);
          xs.push_back(xt);
        }
      }
      // R(s, t) : F f_{st}(X_s) -> X_t.
      auto R = [&](int s, int t) {
        int m = F.fibers[objs[s]]->identity(xs[s]);
        int cur_obj = objs[s];
        int cur = xs[s];
        (void)cur;
        int acc = -1;  // morphism in fiber at level u
        for (int uu = s + 1; uu <= t; ++uu) {
          int transported = acc < 0
                                ? F.fibers[objs[uu]]->identity(
                                      F.transports[bchain[uu - 1]].obj_map
                                          [F.fibers[cur_obj]->morphism(m).src])
                                : F.transports[bchain[uu - 1]].mor_map[acc];
          // transported: F m_u applied to R(s, u-1) (acc), an arrow in fiber u
          acc = F.fibers[objs[uu]]->compose(gs[uu - 1], transported);
          cur_obj = objs[uu];
        }
        return acc;  // -1 means identity at X_s (s == t)
      };
      std::vector<ComplexMap> alphas;
      for (int i = 0; i <= d; ++i) {
        ComplexMap m;
        m.src = un.psis().psi[i].complex();
        m.tgt = NF.functor.fibers[objs[i]].complex;
        m.assign.resize(std::max(m.src->top_dim() + 1, 1));
        for (int dd = 0; dd <= m.src->top_dim(); ++dd) {
          m.assign[dd].resize(m.src->size(dd));
          for (int cc = 0; cc < m.src->size(dd); ++cc) {
            auto T = un.psis().psi[i].chain_of(dd, cc);
            auto mins = chi_min_tuple(T);
            // beta_i(mins[k-1] <= mins[k]) = F f_{t i}(R(s, t)).
            std::vector<int> fchain;
            for (size_t k = 1; k < mins.size(); ++k) {
              int s = mins[k - 1], t = mins[k];
              int r = R(s, t);
              int mor;
              if (r < 0) {
                // identity at F f_{s i} X_s
                int ob = xs[s];
                for (int uu = s + 1; uu <= i; ++uu)
                  ob = F.transports[bchain[uu - 1]].obj_map[ob];
                mor = F.fibers[objs[i]]->identity(ob);
              } else {
                mor = r;
                for (int uu = t + 1; uu <= i; ++uu)
                  mor = F.transports[bchain[uu - 1]].mor_map[mor];
              }
              fchain.push_back(mor);
            }
            if (fchain.empty()) {
              // vertex: F f_{s i} X_s
              int s = mins[0];
              int ob = xs[s];
              for (int uu = s + 1; uu <= i; ++uu)
                ob = F.transports[bchain[uu - 1]].obj_map[ob];
              m.assign[dd][cc] = NF.nerves[objs[i]].vertex_of_object(ob);
            } else {
              m.assign[dd][cc] = NF.nerves[objs[i]].ref_of_chain(fchain);
            }
          }
        }
        alphas.push_back(std::move(m));
      }
      out.psi.assign[d][c] = un.locate(objs[0], bchain, alphas);
    }
  }

  // Verify mutual inverse + marking correspondence.
  out.mutually_inverse =
      compose(out.psi, out.phi) == ComplexMap::identity(un.complex()) &&
      compose(out.phi, out.psi) == ComplexMap::identity(gn.complex());
  out.markings_match = true;
  for (int e = 0; e < un.complex()->size(1); ++e) {
    bool mu = un.marked().marked.count(e) > 0;
    SimplexRef img = out.phi.at(1, e);
    bool mg = out.groth.marked.is_marked(img);
    if (mu != mg) out.markings_match = false;
  }
  for (int e = 0; e < gn.complex()->size(1); ++e) {
    bool mg = out.groth.marked.marked.count(e) > 0;
    bool mu = un.marked().is_marked(out.psi.at(1, e));
    if (mu != mg) out.markings_match = false;
  }
  return out;
}

// --- fiber transport ----------------------------------------------------------------

FiberTransport fiber_transport(Unstraightening& un, int base_morphism,
                               int depth) {
  FiberTransport out;
  const auto& B = *un.functor().base;
  int s = B.morphism(base_morphism).src;
  int sp = B.morphism(base_morphism).tgt;
  cat::NerveComplex bn = un.base();
  int vs = bn.vertex_of_object(s).nd_id;
  int vt = bn.vertex_of_object(sp).nd_id;

  out.fiber_src = fiber_over_vertex(un.projection(), vs, depth);
  out.fiber_tgt = fiber_over_vertex(un.projection(), vt, depth);
  out.src_marked.complex = out.fiber_src.complex();
  for (int e = 0; e < out.fiber_src.complex()->size(1); ++e) {
    auto [xe, te] = out.fiber_src.components(1, e);
    if (un.marked().is_marked(xe)) out.src_marked.marked.insert(e);
  }
  out.tgt_marked.complex = out.fiber_tgt.complex();
  for (int e = 0; e < out.fiber_tgt.complex()->size(1); ++e) {
    auto [xe, te] = out.fiber_tgt.components(1, e);
    if (un.marked().is_marked(xe)) out.tgt_marked.marked.insert(e);
  }

  auto d1 = std::make_shared<const CellComplex>(sset::simplex_shape(1));
  out.cylinder = sset::product(out.fiber_src.complex(), d1, depth);

  auto h_value = [&](const SimplexRef& zx, const std::vector<int>& uvals) {
    // zx: a simplex of the unstraightening lying over the constant chain at
    // s, of dimension m = |uvals|-1. Build the transported key directly.
    const int m = static_cast<int>(uvals.size()) - 1;
    UnKey base_key = decode_unkey(un.key(zx.nd_dim, zx.nd_id), zx.nd_dim);
    // Components of the (possibly degenerate) simplex: restrict along the
    // surjection of the word.
    std::vector<int> surj = sset::surjection_of_word(zx.word, m);
    UnKey k;
    k.c0 = uvals[0] == 0 ? s : sp;
    for (int t = 1; t <= m; ++t) {
      if (uvals[t - 1] == 0 && uvals[t] == 0)
        k.chain.push_back(B.identity(s));
      else if (uvals[t - 1] == 0 && uvals[t] == 1)
        k.chain.push_back(base_morphism);
      else
        k.chain.push_back(B.identity(sp));
    }
    for (int t = 0; t <= m; ++t) {
      // alpha_t of the degenerate simplex: restrict base_key's component
      // along surj|[0..t], then transport if uvals[t] == 1.
      std::vector<int> prefix;
      for (int l = 0; l <= t; ++l) prefix.push_back(surj[l]);
      const auto& src_map =
          un.registry_map(surj[t], s, base_key.alphas[surj[t]]);
      // restriction along direct image
      ComplexMap restricted;
      restricted.src = un.psis().psi[t].complex();
      restricted.tgt = src_map.tgt;
      restricted.assign.resize(std::max(restricted.src->top_dim() + 1, 1));
      for (int dd = 0; dd <= restricted.src->top_dim(); ++dd) {
        restricted.assign[dd].resize(restricted.src->size(dd));
        for (int cc = 0; cc < restricted.src->size(dd); ++cc) {
          auto T = un.psis().psi[t].chain_of(dd, cc);
          std::vector<int> img;
          for (int mask : T) img.push_back(direct_image_mask(mask, prefix));
          restricted.assign[dd][cc] =
              src_map.push(un.psis().psi[surj[t]].ref_of_weak_chain(img));
        }
      }
      int idx = un.registry_index(t, s, restricted);
      if (uvals[t] == 1) idx = un.transported_index(base_morphism, t, idx);
      k.alphas.push_back(idx);
    }
    return un.keyed().normalize(m, encode_unkey(k));
  };

  // Homotopy on the cylinder.
  out.homotopy.src = out.cylinder.complex();
  out.homotopy.tgt = un.complex();
  out.homotopy.assign.resize(std::max(out.cylinder.complex()->top_dim() + 1, 1));
  for (int d = 0; d <= out.cylinder.complex()->top_dim(); ++d) {
    out.homotopy.assign[d].resize(out.cylinder.complex()->size(d));
    for (int c = 0; c < out.cylinder.complex()->size(d); ++c) {
      auto [z, t] = out.cylinder.components(d, c);
      auto [zx, zconst] = out.fiber_src.components(z.nd_dim, z.nd_id);
      SimplexRef zx_full = apply_word(zx, z.word);
      auto uvals = sset::tuple_of_simplex_ref(*d1, t);
      out.homotopy.assign[d][c] = h_value(zx_full, uvals);
    }
  }

  // Transport = h restricted to {1}.
  out.transport.src = out.fiber_src.complex();
  out.transport.tgt = out.fiber_tgt.complex();
  out.transport.assign.resize(
      std::max(out.fiber_src.complex()->top_dim() + 1, 1));
  for (int d = 0; d <= out.fiber_src.complex()->top_dim(); ++d) {
    out.transport.assign[d].resize(out.fiber_src.complex()->size(d));
    for (int c = 0; c < out.fiber_src.complex()->size(d); ++c) {
      auto [zx, zconst] = out.fiber_src.components(d, c);
      std::vector<int> ones(d + 1, 1);
      SimplexRef img = h_value(zx, ones);
      // land in the fiber over sp
      SimplexRef constref = zconst;  // the Delta^0 coordinate, reused
      out.transport.assign[d][c] = out.fiber_tgt.locate(img, constref);
    }
  }
  return out;
}

// --- left adjoint of the relative nerve ----------------------------------------------

namespace {
struct SliceCat {
  CatPtr category;
  cat::CatFunctor forget;            // C_{/c} -> C
  std::vector<int> object_morphism;  // object id -> morphism a -> c of C
};

SliceCat slice_category(CatPtr C, int c) {
  SliceCat out;
  std::vector<std::string> objects;
  std::vector<int> objmor;
  std::map<int, int> obj_of_mor;
  for (int m = 0; m < C->num_morphisms(); ++m)
    if (C->morphism(m).tgt == c) {
      obj_of_mor[m] = static_cast<int>(objects.size());
      objmor.push_back(m);
      objects.push_back(C->morphism(m).name);
    }
  struct M {
    int src, tgt, h;
  };
  std::vector<M> mors;
  std::vector<cat::Morphism> morphisms;
  std::map<std::tuple<int, int, int>, int> mor_index;
  for (size_t a = 0; a < objmor.size(); ++a)
    for (size_t b = 0; b < objmor.size(); ++b)
      for (int h = 0; h < C->num_morphisms(); ++h) {
        if (C->morphism(h).src != C->morphism(objmor[a]).src) continue;
        if (C->morphism(h).tgt != C->morphism(objmor[b]).src) continue;
        if (C->compose(objmor[b], h) != objmor[a]) continue;
        mor_index[{(int)a, (int)b, h}] = static_cast<int>(mors.size());
        mors.push_back({(int)a, (int)b, h});
        morphisms.push_back({(int)a, (int)b,
                             objects[a] + "=>" + objects[b] + ":" +
                                 C->morphism(h).name});
      }
  std::vector<int> idents(objects.size());
  for (size_t a = 0; a < objects.size(); ++a)
    idents[a] =
        mor_index.at({(int)a, (int)a, C->identity(C->morphism(objmor[a]).src)});
  std::vector<std::vector<int>> comp(mors.size(),
                                     std::vector<int>(mors.size(), -1));
  for (size_t g = 0; g < mors.size(); ++g)
    for (size_t f = 0; f < mors.size(); ++f) {
      if (mors[f].tgt != mors[g].src) continue;
      comp[g][f] =
          mor_index.at({mors[f].src, mors[g].tgt,
                        C->compose(mors[g].h, mors[f].h)});
    }
  out.category = std::make_shared<const FinCategory>(objects, morphisms,
                                                     idents, std::move(comp));
  out.object_morphism = objmor;
  out.forget.src = out.category;
  out.forget.tgt = C;
  for (size_t a = 0; a < objmor.size(); ++a)
    out.forget.obj_map.push_back(C->morphism(objmor[a]).src);
  for (auto& m : mors) out.forget.mor_map.push_back(m.h);
  return out;
}
}  // namespace

LeftAdjointResult relnerve_left_adjoint(const MarkedComplex& X,
                                        const ComplexMap& to_base_nerve,
                                        const NerveComplex& base_nerve,
                                        int depth) {
  LeftAdjointResult out;
  CatPtr C = base_nerve.category;
  out.functor.base = C;

  std::vector<SliceCat> slices;
  std::vector<cat::NerveComplex> slice_nerves;
  std::vector<sset::ProductComplex> pullbacks;
  cat::NerveComplex bn = base_nerve;
  for (int c = 0; c < C->num_objects(); ++c) {
    slices.push_back(slice_category(C, c));
    out.slice_categories.push_back(slices.back().category);
    slice_nerves.push_back(cat::nerve(slices.back().category, depth));
    auto proj = cat::nerve_map(slices.back().forget, slice_nerves.back(), bn);
    pullbacks.push_back(sset::fiber_product(to_base_nerve, proj, depth));
    MarkedComplex mc;
    mc.complex = pullbacks.back().complex();
    for (int e = 0; e < mc.complex->size(1); ++e) {
      auto [xe, se] = pullbacks.back().components(1, e);
      if (X.is_marked(xe)) mc.marked.insert(e);
    }
    out.functor.fibers.push_back(std::move(mc));
  }
  for (int m = 0; m < C->num_morphisms(); ++m) {
    int c = C->morphism(m).src, cp = C->morphism(m).tgt;
    // Postcomposition functor C_{/c} -> C_{/cp}.
    cat::CatFunctor post;
    post.src = slices[c].category;
    post.tgt = slices[cp].category;
    for (size_t a = 0; a < slices[c].object_morphism.size(); ++a) {
      int target_mor = C->compose(m, slices[c].object_morphism[a]);
      int idx = -1;
      for (size_t b = 0; b < slices[cp].object_morphism.size(); ++b)
        if (slices[cp].object_morphism[b] == target_mor) idx = (int)b;
      post.obj_map.push_back(idx);
    }
    for (int mm = 0; mm < slices[c].category->num_morphisms(); ++mm) {
      int h = slices[c].forget.mor_map[mm];
      int a = slices[c].category->morphism(mm).src;
      int b = slices[c].category->morphism(mm).tgt;
      // find the morphism (post(a), post(b), h) in the target slice
      int found = -1;
      for (int k = 0; k < slices[cp].category->num_morphisms(); ++k)
        if (slices[cp].category->morphism(k).src == post.obj_map[a] &&
            slices[cp].category->morphism(k).tgt == post.obj_map[b] &&
            slices[cp].forget.mor_map[k] == h)
          found = k;
      post.mor_map.push_back(found);
    }
    auto post_nerve = cat::nerve_map(post, slice_nerves[c], slice_nerves[cp]);
    ComplexMap t;
    t.src = pullbacks[c].complex();
    t.tgt = pullbacks[cp].complex();
    t.assign.resize(std::max(t.src->top_dim() + 1, 1));
    for (int d = 0; d <= t.src->top_dim(); ++d) {
      t.assign[d].resize(t.src->size(d));
      for (int i = 0; i < t.src->size(d); ++i) {
        auto [xr, sr] = pullbacks[c].components(d, i);
        t.assign[d][i] = pullbacks[cp].locate(xr, post_nerve.push(sr));
      }
    }
    out.functor.transports.push_back(std::move(t));
  }
  return out;
}

}  // namespace patfib::coh
