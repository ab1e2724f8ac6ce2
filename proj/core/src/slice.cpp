#include "patfib/slice.hpp"

#include <algorithm>

namespace patfib::sset {

namespace {

KeyedComplex::Key encode_values(const std::vector<SimplexRef>& vals) {
  KeyedComplex::Key k;
  for (const auto& v : vals) encode_ref(v, k);
  return k;
}

std::vector<SimplexRef> decode_values(const KeyedComplex::Key& k) {
  std::vector<SimplexRef> out;
  size_t pos = 0;
  while (pos < k.size()) out.push_back(decode_ref(k, pos));
  return out;
}

// delta_i o b and sigma_j o b for a ref b of Delta^{n-1} / Delta^{n+1},
// as a ref of Delta^n (post-composition on standard simplices).
SimplexRef post_delta(const CellComplex& src_delta, const CellComplex& dst_delta,
                      const SimplexRef& b, int skip) {
  auto t = tuple_of_simplex_ref(src_delta, b);
  for (int& v : t)
    if (v >= skip) ++v;
  return simplex_ref_of_tuple(dst_delta, t);
}

SimplexRef post_sigma(const CellComplex& src_delta, const CellComplex& dst_delta,
                      const SimplexRef& b, int fold) {
  auto t = tuple_of_simplex_ref(src_delta, b);
  for (int& v : t)
    if (v > fold) --v;
  return simplex_ref_of_tuple(dst_delta, t);
}

}  // namespace

SliceComplex slice(const ComplexMap& f, bool under, int depth) {
  if (!f.src->complete())
    throw Error("slice: indexing diagram must be COMPLETE");
  SliceComplex out;
  out.X = f.tgt;
  out.f = f;
  out.under = under;
  out.depth = depth;

  ComplexPtr K = f.src;
  const bool k_empty = K->top_dim() < 0;

  out.joins.reserve(depth + 1);
  out.deltas.reserve(depth + 1);
  out.free_cells.resize(depth + 1);
  for (int n = 0; n <= depth; ++n) {
    auto dn = std::make_shared<const CellComplex>(simplex_shape(n));
    out.deltas.push_back(dn);
    int jb = K->top_dim() + n + 1;
    out.joins.push_back(under ? join(K, dn, jb) : join(dn, K, jb));
  }
  auto k_side = [&](int n, int dim, int id) {
    auto o = out.joins[n].origin(dim, id);
    return under ? o == JoinComplex::Origin::Left
                 : o == JoinComplex::Origin::Right;
  };
  for (int n = 0; n <= depth; ++n) {
    const CellComplex& J = *out.joins[n].complex();
    for (int d = 0; d <= J.top_dim(); ++d)
      for (int i = 0; i < J.size(d); ++i)
        if (!k_side(n, d, i)) out.free_cells[n].emplace_back(d, i);
  }

  // Position lookup per n.
  std::vector<std::map<std::pair<int, int>, int>> pos(depth + 1);
  for (int n = 0; n <= depth; ++n)
    for (size_t t = 0; t < out.free_cells[n].size(); ++t)
      pos[n][out.free_cells[n][t]] = static_cast<int>(t);

  // Enumerate raw cells: maps J_n -> X extending f.
  KeyedComplex::Spec spec;
  spec.bound = depth;
  spec.completeness = (k_empty && f.tgt->complete() && depth >= f.tgt->top_dim())
                          ? Completeness::Complete
                          : Completeness::Truncated;
  spec.raw_cells.resize(depth + 1);
  TargetIndex tindex(f.tgt);
  for (int n = 0; n <= depth; ++n) {
    SearchProblem sp;
    sp.src = out.joins[n].complex();
    sp.tgt = f.tgt;
    sp.init_tables();
    for (int d = 0; d <= sp.src->top_dim(); ++d)
      for (int i = 0; i < sp.src->size(d); ++i)
        if (k_side(n, d, i)) {
          SimplexRef a = under ? out.joins[n].left_part(d, i)
                               : out.joins[n].right_part(d, i);
          sp.pin(d, i, f.push(a));
        }
    for (auto& g : enumerate_maps(sp, tindex)) {
      std::vector<SimplexRef> vals;
      vals.reserve(out.free_cells[n].size());
      for (auto [d, i] : out.free_cells[n]) vals.push_back(g.assign[d][i]);
      spec.raw_cells[n].push_back(encode_values(vals));
    }
  }

  // Callbacks. Capture by value what they need.
  auto joins = std::make_shared<std::vector<JoinComplex>>(out.joins);
  auto deltas = out.deltas;
  auto free_cells = out.free_cells;
  auto posv = pos;
  ComplexMap fmap = f;
  bool und = under;

  auto value_at = [joins, free_cells, posv, fmap,
                   und](int n, const std::vector<SimplexRef>& vals,
                        const SimplexRef& r) -> SimplexRef {
    // Value of the n-cell (vals + pinned part) on an arbitrary ref of J_n.
    auto& J = (*joins)[n];
    bool kside = und ? J.origin(r.nd_dim, r.nd_id) == JoinComplex::Origin::Left
                     : J.origin(r.nd_dim, r.nd_id) == JoinComplex::Origin::Right;
    SimplexRef base;
    if (kside) {
      SimplexRef a = und ? J.left_part(r.nd_dim, r.nd_id)
                         : J.right_part(r.nd_dim, r.nd_id);
      base = fmap.push(a);
    } else {
      base = vals[posv[n].at({r.nd_dim, r.nd_id})];
    }
    return apply_word(base, r.word);
  };

  spec.face = [joins, deltas, free_cells, value_at,
               und](int n, const KeyedComplex::Key& k, int i) {
    auto vals = decode_values(k);
    std::vector<SimplexRef> out_vals;
    out_vals.reserve(free_cells[n - 1].size());
    for (auto [d, id] : free_cells[n - 1]) {
      auto& Jsmall = (*joins)[n - 1];
      auto o = Jsmall.origin(d, id);
      SimplexRef img;
      if (o == JoinComplex::Origin::Mixed) {
        SimplexRef a = Jsmall.left_part(d, id);
        SimplexRef b = Jsmall.right_part(d, id);
        if (und) {
          b = post_delta(*deltas[n - 1], *deltas[n], b, i);
          img = (*joins)[n].locate_pair(a, b);
        } else {
          a = post_delta(*deltas[n - 1], *deltas[n], a, i);
          img = (*joins)[n].locate_pair(a, b);
        }
      } else {
        // Free, non-mixed => the Delta part.
        SimplexRef b = und ? Jsmall.right_part(d, id) : Jsmall.left_part(d, id);
        b = post_delta(*deltas[n - 1], *deltas[n], b, i);
        img = und ? (*joins)[n].locate_right(b) : (*joins)[n].locate_left(b);
      }
      out_vals.push_back(value_at(n, vals, img));
    }
    return encode_values(out_vals);
  };
  spec.degen = [joins, deltas, free_cells, value_at,
                und](int n, const KeyedComplex::Key& k, int j) {
    auto vals = decode_values(k);
    std::vector<SimplexRef> out_vals;
    out_vals.reserve(free_cells[n + 1].size());
    for (auto [d, id] : free_cells[n + 1]) {
      auto& Jbig = (*joins)[n + 1];
      auto o = Jbig.origin(d, id);
      SimplexRef img;
      if (o == JoinComplex::Origin::Mixed) {
        SimplexRef a = Jbig.left_part(d, id);
        SimplexRef b = Jbig.right_part(d, id);
        if (und) {
          b = post_sigma(*deltas[n + 1], *deltas[n], b, j);
          img = (*joins)[n].locate_pair(a, b);
        } else {
          a = post_sigma(*deltas[n + 1], *deltas[n], a, j);
          img = (*joins)[n].locate_pair(a, b);
        }
      } else {
        SimplexRef b = und ? Jbig.right_part(d, id) : Jbig.left_part(d, id);
        b = post_sigma(*deltas[n + 1], *deltas[n], b, j);
        img = und ? (*joins)[n].locate_right(b) : (*joins)[n].locate_left(b);
      }
      out_vals.push_back(value_at(n, vals, img));
    }
    return encode_values(out_vals);
  };

  out.kc = KeyedComplex::build(std::move(spec));
  return out;
}

ComplexMap SliceComplex::cell_map(int dim, int id) const {
  const auto vals = decode_values(kc.key(dim, id));
  ComplexMap g;
  g.src = joins[dim].complex();
  g.tgt = X;
  g.assign.resize(g.src->top_dim() + 1);
  auto k_is = [&](int d, int i) {
    auto o = joins[dim].origin(d, i);
    return under ? o == JoinComplex::Origin::Left
                 : o == JoinComplex::Origin::Right;
  };
  std::map<std::pair<int, int>, int> pos;
  for (size_t t = 0; t < free_cells[dim].size(); ++t)
    pos[free_cells[dim][t]] = static_cast<int>(t);
  for (int d = 0; d <= g.src->top_dim(); ++d) {
    g.assign[d].resize(g.src->size(d));
    for (int i = 0; i < g.src->size(d); ++i) {
      if (k_is(d, i)) {
        SimplexRef a = under ? joins[dim].left_part(d, i)
                             : joins[dim].right_part(d, i);
        g.assign[d][i] = f.push(a);
      } else {
        g.assign[d][i] = vals[pos.at({d, i})];
      }
    }
  }
  return g;
}

SimplexRef SliceComplex::locate(int n, const ComplexMap& g) {
  std::vector<SimplexRef> vals;
  vals.reserve(free_cells[n].size());
  for (auto [d, i] : free_cells[n]) vals.push_back(g.assign[d][i]);
  return kc.normalize(n, encode_values(vals));
}

// --- representable slices ----------------------------------------------------

RefSlice ref_slice(ComplexPtr X, const SimplexRef& diagram, bool under,
                   int depth) {
  RefSlice out;
  out.X = X;
  out.diagram = diagram;
  out.under = under;
  out.depth = depth;
  const int k = diagram.dim();

  // K-block inclusion tuple into [k + n + 1].
  auto k_block = [&](int n) {
    std::vector<int> t(k + 1);
    for (int j = 0; j <= k; ++j) t[j] = under ? j : n + 1 + j;
    return t;
  };

  KeyedComplex::Spec spec;
  spec.bound = depth;
  spec.completeness = Completeness::Truncated;
  spec.raw_cells.resize(depth + 1);
  for (int n = 0; n <= depth; ++n) {
    const int m = k + n + 1;
    if (m > X->bound() && !X->complete())
      throw Error("ref_slice: needs simplices above the build bound");
    auto blk = k_block(n);
    for (const auto& r : refs_of_dim(*X, m))
      if (act(*X, r, blk) == diagram) spec.raw_cells[n].push_back(
          [&] { KeyedComplex::Key key; encode_ref(r, key); return key; }());
  }

  ComplexPtr Xc = X;
  bool und = under;
  int kk = k;
  spec.face = [Xc, und, kk](int n, const KeyedComplex::Key& key, int i) {
    size_t pos = 0;
    SimplexRef r = decode_ref(key, pos);
    const int m = kk + n;  // dim of the face result
    std::vector<int> f(m + 1);
    // id_K * delta_i (under) or delta_i * id_K (over): skip one Delta vertex.
    int skip = und ? kk + 1 + i : i;
    for (int t = 0; t <= m; ++t) f[t] = t < skip ? t : t + 1;
    KeyedComplex::Key out_key;
    encode_ref(act(*Xc, r, f), out_key);
    return out_key;
  };
  spec.degen = [Xc, und, kk](int n, const KeyedComplex::Key& key, int j) {
    size_t pos = 0;
    SimplexRef r = decode_ref(key, pos);
    const int m = kk + n + 2;  // dim of the degenerate result
    std::vector<int> f(m + 1);
    int fold = und ? kk + 1 + j : j;
    for (int t = 0; t <= m; ++t) f[t] = t <= fold ? t : t - 1;
    KeyedComplex::Key out_key;
    encode_ref(act(*Xc, r, f), out_key);
    return out_key;
  };
  out.kc = KeyedComplex::build(std::move(spec));
  return out;
}

SimplexRef RefSlice::underlying(int dim, int id) const {
  size_t pos = 0;
  auto k = kc.key(dim, id);
  return decode_ref(k, pos);
}

SimplexRef RefSlice::locate(const SimplexRef& r) {
  KeyedComplex::Key key;
  encode_ref(r, key);
  return kc.normalize(r.dim() - diagram.dim() - 1, key);
}

ComplexMap ref_slice_restriction(RefSlice& big, RefSlice& small,
                                 const std::vector<int>& u) {
  const int k = big.diagram.dim();
  const int kp = small.diagram.dim();
  ComplexMap out;
  out.src = big.complex();
  out.tgt = small.complex();
  out.assign.resize(std::max(out.src->top_dim() + 1, 1));
  for (int n = 0; n <= out.src->top_dim(); ++n) {
    out.assign[n].resize(out.src->size(n));
    for (int i = 0; i < out.src->size(n); ++i) {
      SimplexRef r = big.underlying(n, i);
      const int m = r.dim();
      std::vector<int> f;
      f.reserve(kp + n + 2);
      if (big.under) {
        for (int t = 0; t <= kp; ++t) f.push_back(u[t]);
        for (int t = k + 1; t <= m; ++t) f.push_back(t);
      } else {
        for (int t = 0; t <= n; ++t) f.push_back(t);
        for (int t = 0; t <= kp; ++t) f.push_back(n + 1 + u[t]);
      }
      out.assign[n][i] = small.locate(act(*big.X, r, f));
    }
  }
  return out;
}

ComplexMap ref_slice_postcompose(RefSlice& sx, RefSlice& ss,
                                 const ComplexMap& p) {
  ComplexMap out;
  out.src = sx.complex();
  out.tgt = ss.complex();
  out.assign.resize(std::max(out.src->top_dim() + 1, 1));
  for (int n = 0; n <= out.src->top_dim(); ++n) {
    out.assign[n].resize(out.src->size(n));
    for (int i = 0; i < out.src->size(n); ++i)
      out.assign[n][i] = ss.locate(p.push(sx.underlying(n, i)));
  }
  return out;
}

ComplexMap slice_postcompose(SliceComplex& sx, SliceComplex& ss,
                             const ComplexMap& p) {
  ComplexMap out;
  out.src = sx.complex();
  out.tgt = ss.complex();
  out.assign.resize(std::max(out.src->top_dim() + 1, 1));
  for (int n = 0; n <= out.src->top_dim(); ++n) {
    out.assign[n].resize(out.src->size(n));
    for (int i = 0; i < out.src->size(n); ++i)
      out.assign[n][i] = ss.locate(n, compose(p, sx.cell_map(n, i)));
  }
  return out;
}

}  // namespace patfib::sset
