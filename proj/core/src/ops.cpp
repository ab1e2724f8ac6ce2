#include "patfib/ops.hpp"

#include <algorithm>
#include <functional>

namespace patfib::sset {

namespace {

// Jointly injective pairs of monotone surjections [n] ->> [p], [n] ->> [q],
// as step sequences (advance left / right / both).
void shuffle_pairs(int p, int q, int n,
                   const std::function<void(const std::vector<int>&,
                                            const std::vector<int>&)>& emit) {
  std::vector<int> u{0}, v{0};
  std::function<void()> rec = [&]() {
    int a = u.back(), b = v.back();
    if (static_cast<int>(u.size()) == n + 1) {
      if (a == p && b == q) emit(u, v);
      return;
    }
    // Remaining steps must fit between max(p-a, q-b) and (p-a)+(q-b).
    int steps_left = n + 1 - static_cast<int>(u.size());
    if (std::max(p - a, q - b) > steps_left) return;
    if ((p - a) + (q - b) < steps_left) return;
    if (a < p) {
      u.push_back(a + 1);
      v.push_back(b);
      rec();
      u.pop_back();
      v.pop_back();
    }
    if (b < q) {
      u.push_back(a);
      v.push_back(b + 1);
      rec();
      u.pop_back();
      v.pop_back();
    }
    if (a < p && b < q) {
      u.push_back(a + 1);
      v.push_back(b + 1);
      rec();
      u.pop_back();
      v.pop_back();
    }
  };
  rec();
}

KeyedComplex::Key pair_key(const SimplexRef& a, const SimplexRef& b) {
  return encode_ref_pair(a, b);
}

std::pair<SimplexRef, SimplexRef> decode_pair(const KeyedComplex::Key& k) {
  size_t pos = 0;
  SimplexRef a = decode_ref(k, pos);
  SimplexRef b = decode_ref(k, pos);
  return {a, b};
}

ProductComplex build_pairs(ComplexPtr X, ComplexPtr Y, const ComplexMap* f,
                           const ComplexMap* g, int depth) {
  const bool fibered = f != nullptr;
  KeyedComplex::Spec spec;
  spec.bound = depth;
  bool complete = X->complete() && Y->complete() &&
                  depth >= X->top_dim() + Y->top_dim();
  if (fibered) {
    // Exact criterion is finer; stay conservative but sound: pairs need
    // n <= p + q, so the same bound works.
  }
  spec.completeness =
      complete ? Completeness::Complete : Completeness::Truncated;
  spec.raw_cells.resize(depth + 1);

  for (int p = 0; p <= std::min(X->top_dim(), depth); ++p)
    for (int q = 0; q <= std::min(Y->top_dim(), depth); ++q)
      for (int n = std::max(p, q); n <= std::min(p + q, depth); ++n)
        for (int xi = 0; xi < X->size(p); ++xi)
          for (int yi = 0; yi < Y->size(q); ++yi) {
            shuffle_pairs(p, q, n, [&](const std::vector<int>& u,
                                       const std::vector<int>& v) {
              SimplexRef a{p, xi, word_of_collapses(collapse_positions(u))};
              SimplexRef b{q, yi, word_of_collapses(collapse_positions(v))};
              if (fibered) {
                if (!(f->push(a) == g->push(b))) return;
              }
              spec.raw_cells[n].push_back(pair_key(a, b));
            });
          }

  ComplexPtr Xc = X, Yc = Y;
  spec.face = [Xc, Yc](int, const KeyedComplex::Key& k, int i) {
    auto [a, b] = decode_pair(k);
    return pair_key(apply_face(*Xc, a, i), apply_face(*Yc, b, i));
  };
  spec.degen = [](int, const KeyedComplex::Key& k, int j) {
    auto [a, b] = decode_pair(k);
    return pair_key(apply_degen(a, j), apply_degen(b, j));
  };
  spec.label = [Xc, Yc](int, const KeyedComplex::Key& k) {
    auto [a, b] = decode_pair(k);
    auto part = [](const CellComplex& C, const SimplexRef& r) {
      std::string s = C.cell(r.nd_dim, r.nd_id).label;
      if (s.empty()) s = std::to_string(r.nd_dim) + "#" + std::to_string(r.nd_id);
      for (int w : r.word) s += ".s" + std::to_string(w);
      return s;
    };
    return "(" + part(*Xc, a) + "|" + part(*Yc, b) + ")";
  };

  ProductComplex out;
  out.left = X;
  out.right = Y;
  out.kc = KeyedComplex::build(std::move(spec));

  auto mk_proj = [&](bool leftside) {
    ComplexMap pr;
    pr.src = out.kc.complex();
    pr.tgt = leftside ? X : Y;
    pr.assign.resize(pr.src->top_dim() + 1);
    for (int d = 0; d <= pr.src->top_dim(); ++d) {
      pr.assign[d].resize(pr.src->size(d));
      for (int i = 0; i < pr.src->size(d); ++i) {
        auto [a, b] = decode_pair(out.kc.key(d, i));
        pr.assign[d][i] = leftside ? a : b;
      }
    }
    if (pr.assign.empty()) pr.assign.resize(1);
    return pr;
  };
  out.proj_left = mk_proj(true);
  out.proj_right = mk_proj(false);
  return out;
}

}  // namespace

SimplexRef ProductComplex::locate(const SimplexRef& a, const SimplexRef& b) {
  if (a.dim() != b.dim()) throw Error("product locate: dimension mismatch");
  return kc.normalize(a.dim(), pair_key(a, b));
}

std::pair<SimplexRef, SimplexRef> ProductComplex::components(int dim,
                                                             int nd_id) const {
  return decode_pair(kc.key(dim, nd_id));
}

ProductComplex product(ComplexPtr X, ComplexPtr Y, int depth) {
  return build_pairs(std::move(X), std::move(Y), nullptr, nullptr, depth);
}

ProductComplex fiber_product(const ComplexMap& f, const ComplexMap& g,
                             int depth) {
  if (f.tgt != g.tgt) throw Error("fiber_product: targets differ");
  return build_pairs(f.src, g.src, &f, &g, depth);
}

ProductComplex fiber_over_vertex(const ComplexMap& f, int vertex_id,
                                 int depth) {
  auto pt = make_complex(
      std::vector<std::vector<Cell>>{std::vector<Cell>(1)}, 0,
      Completeness::Complete);
  ComplexMap g;
  g.src = pt;
  g.tgt = f.tgt;
  g.assign.assign(1, {SimplexRef{0, vertex_id, {}}});
  return fiber_product(f, g, depth);
}

// --- joins -------------------------------------------------------------------

namespace {
constexpr std::int64_t kLeft = 0, kRight = 1, kMixed = 2;

KeyedComplex::Key left_key(const SimplexRef& a) {
  KeyedComplex::Key k{kLeft};
  encode_ref(a, k);
  return k;
}
KeyedComplex::Key right_key(const SimplexRef& b) {
  KeyedComplex::Key k{kRight};
  encode_ref(b, k);
  return k;
}
KeyedComplex::Key mixed_key(const SimplexRef& a, const SimplexRef& b) {
  KeyedComplex::Key k{kMixed};
  encode_ref(a, k);
  encode_ref(b, k);
  return k;
}
}  // namespace

JoinComplex join(ComplexPtr A, ComplexPtr B, int depth) {
  KeyedComplex::Spec spec;
  spec.bound = depth;
  bool complete = A->complete() && B->complete() &&
                  depth >= A->top_dim() + B->top_dim() + 1 &&
                  depth >= A->top_dim() && depth >= B->top_dim();
  spec.completeness =
      complete ? Completeness::Complete : Completeness::Truncated;
  spec.raw_cells.resize(depth + 1);
  for (int d = 0; d <= std::min(A->top_dim(), depth); ++d)
    for (int i = 0; i < A->size(d); ++i)
      spec.raw_cells[d].push_back(left_key(SimplexRef{d, i, {}}));
  for (int d = 0; d <= std::min(B->top_dim(), depth); ++d)
    for (int i = 0; i < B->size(d); ++i)
      spec.raw_cells[d].push_back(right_key(SimplexRef{d, i, {}}));
  for (int p = 0; p <= A->top_dim(); ++p)
    for (int q = 0; q <= B->top_dim(); ++q) {
      int n = p + q + 1;
      if (n > depth) continue;
      for (int ai = 0; ai < A->size(p); ++ai)
        for (int bi = 0; bi < B->size(q); ++bi)
          spec.raw_cells[n].push_back(
              mixed_key(SimplexRef{p, ai, {}}, SimplexRef{q, bi, {}}));
    }

  ComplexPtr Ac = A, Bc = B;
  spec.face = [Ac, Bc](int, const KeyedComplex::Key& k, int i) {
    if (k[0] == kLeft) {
      size_t pos = 1;
      SimplexRef a = decode_ref(k, pos);
      return left_key(apply_face(*Ac, a, i));
    }
    if (k[0] == kRight) {
      size_t pos = 1;
      SimplexRef b = decode_ref(k, pos);
      return right_key(apply_face(*Bc, b, i));
    }
    size_t pos = 1;
    SimplexRef a = decode_ref(k, pos);
    SimplexRef b = decode_ref(k, pos);
    const int da = a.dim();
    const int db = b.dim();
    if (i <= da) {
      if (da == 0) return right_key(b);
      return mixed_key(apply_face(*Ac, a, i), b);
    }
    if (db == 0) return left_key(a);
    return mixed_key(a, apply_face(*Bc, b, i - da - 1));
  };
  spec.degen = [](int, const KeyedComplex::Key& k, int j) {
    if (k[0] == kLeft) {
      size_t pos = 1;
      SimplexRef a = decode_ref(k, pos);
      return left_key(apply_degen(a, j));
    }
    if (k[0] == kRight) {
      size_t pos = 1;
      SimplexRef b = decode_ref(k, pos);
      return right_key(apply_degen(b, j));
    }
    size_t pos = 1;
    SimplexRef a = decode_ref(k, pos);
    SimplexRef b = decode_ref(k, pos);
    const int da = a.dim();
    if (j <= da) return mixed_key(apply_degen(a, j), b);
    return mixed_key(a, apply_degen(b, j - da - 1));
  };
  spec.label = [Ac, Bc](int, const KeyedComplex::Key& k) {
    auto part = [](const CellComplex& C, const SimplexRef& r) {
      std::string s = C.cell(r.nd_dim, r.nd_id).label;
      if (s.empty()) s = std::to_string(r.nd_dim) + "#" + std::to_string(r.nd_id);
      return s;
    };
    size_t pos = 1;
    if (k[0] == kLeft) return part(*Ac, decode_ref(k, pos));
    if (k[0] == kRight) return part(*Bc, decode_ref(k, pos));
    SimplexRef a = decode_ref(k, pos);
    SimplexRef b = decode_ref(k, pos);
    return part(*Ac, a) + "*" + part(*Bc, b);
  };

  JoinComplex out;
  out.left = A;
  out.right = B;
  out.kc = KeyedComplex::build(std::move(spec));
  return out;
}

SimplexRef JoinComplex::locate_left(const SimplexRef& a) {
  return kc.normalize(a.dim(), left_key(a));
}
SimplexRef JoinComplex::locate_right(const SimplexRef& b) {
  return kc.normalize(b.dim(), right_key(b));
}
SimplexRef JoinComplex::locate_pair(const SimplexRef& a, const SimplexRef& b) {
  return kc.normalize(a.dim() + b.dim() + 1, mixed_key(a, b));
}

JoinComplex::Origin JoinComplex::origin(int dim, int nd_id) const {
  const auto& k = kc.key(dim, nd_id);
  if (k[0] == kLeft) return Origin::Left;
  if (k[0] == kRight) return Origin::Right;
  return Origin::Mixed;
}

SimplexRef JoinComplex::left_part(int dim, int nd_id) const {
  const auto& k = kc.key(dim, nd_id);
  size_t pos = 1;
  return decode_ref(k, pos);
}

SimplexRef JoinComplex::right_part(int dim, int nd_id) const {
  const auto& k = kc.key(dim, nd_id);
  size_t pos = 1;
  SimplexRef first = decode_ref(k, pos);
  if (k[0] == kRight) return first;
  return decode_ref(k, pos);
}

ComplexMap JoinComplex::include_left() const {
  ComplexMap f;
  f.src = left;
  f.tgt = kc.complex();
  f.assign.resize(std::max(left->top_dim() + 1, 1));
  auto* self = const_cast<JoinComplex*>(this);
  for (int d = 0; d <= left->top_dim(); ++d) {
    f.assign[d].resize(left->size(d));
    for (int i = 0; i < left->size(d); ++i)
      f.assign[d][i] = self->locate_left(SimplexRef{d, i, {}});
  }
  return f;
}

ComplexMap JoinComplex::include_right() const {
  ComplexMap f;
  f.src = right;
  f.tgt = kc.complex();
  f.assign.resize(std::max(right->top_dim() + 1, 1));
  auto* self = const_cast<JoinComplex*>(this);
  for (int d = 0; d <= right->top_dim(); ++d) {
    f.assign[d].resize(right->size(d));
    for (int i = 0; i < right->size(d); ++i)
      f.assign[d][i] = self->locate_right(SimplexRef{d, i, {}});
  }
  return f;
}

ConeComplex cone(ComplexPtr K, bool left, int depth) {
  auto pt = make_complex(
      std::vector<std::vector<Cell>>{std::vector<Cell>(1)}, 0,
      Completeness::Complete);
  ConeComplex out;
  out.left_cone = left;
  if (left)
    out.j = join(pt, K, depth);
  else
    out.j = join(K, pt, depth);
  SimplexRef cp = left ? out.j.locate_left(SimplexRef{0, 0, {}})
                       : out.j.locate_right(SimplexRef{0, 0, {}});
  out.cone_vertex = cp.nd_id;
  return out;
}

ComplexMap ConeComplex::include_base() const {
  return left_cone ? j.include_right() : j.include_left();
}

// --- opposite ----------------------------------------------------------------

SimplexRef opposite_ref(const SimplexRef& r) {
  const int m = r.dim();
  std::vector<int> coll;
  for (int w : r.word) coll.push_back(m - 1 - w);
  return SimplexRef{r.nd_dim, r.nd_id, word_of_collapses(std::move(coll))};
}

ComplexPtr opposite(const CellComplex& X) {
  std::vector<std::vector<Cell>> tables(X.top_dim() + 1);
  for (int d = 0; d <= X.top_dim(); ++d) {
    tables[d].resize(X.size(d));
    for (int i = 0; i < X.size(d); ++i) {
      const Cell& c = X.cell(d, i);
      Cell& o = tables[d][i];
      o.label = c.label;
      if (d > 0) {
        o.faces.resize(d + 1);
        for (int j = 0; j <= d; ++j) o.faces[j] = opposite_ref(c.faces[d - j]);
      }
    }
  }
  return make_complex(std::move(tables), X.bound(), X.completeness());
}

}  // namespace patfib::sset
