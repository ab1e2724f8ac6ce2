#include "patfib/homotopy.hpp"

#include <algorithm>
#include <numeric>

namespace patfib::cat {

using sset::CellComplex;
using sset::ComplexMap;
using sset::ComplexPtr;
using sset::SimplexRef;

namespace {
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};
}  // namespace

HoCategory HoCategory::build(const CellComplex& X) {
  const int V = X.size(0);
  const int E = X.size(1);
  // Tokens: 0..V-1 identities, V..V+E-1 nondegenerate edges.
  auto token = [&](const SimplexRef& e) {
    return e.is_degenerate() ? e.nd_id : V + e.nd_id;
  };
  std::vector<int> tok_src(V + E), tok_tgt(V + E);
  for (int v = 0; v < V; ++v) tok_src[v] = tok_tgt[v] = v;
  for (int e = 0; e < E; ++e) {
    tok_src[V + e] = X.cell(1, e).faces[1].nd_id;
    tok_tgt[V + e] = X.cell(1, e).faces[0].nd_id;
  }

  // Triples [g][f] = h from all 2-simplices.
  struct Tri { int g, f, h; };
  std::vector<Tri> triples;
  for (const auto& s : refs_of_dim(X, 2)) {
    SimplexRef g = apply_face(X, s, 0);
    SimplexRef h = apply_face(X, s, 1);
    SimplexRef f = apply_face(X, s, 2);
    triples.push_back({token(g), token(f), token(h)});
  }

  UnionFind uf(V + E);
  // Congruence closure: same (g, f) classes force same h class.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> seen;
    for (const auto& t : triples) {
      auto key = std::make_pair(uf.find(t.g), uf.find(t.f));
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, uf.find(t.h));
      } else if (uf.unite(it->second, uf.find(t.h))) {
        changed = true;
      }
    }
  }

  // Classes in deterministic order of least token.
  std::map<int, int> root_to_class;
  HoCategory ho;
  ho.edge_to_class_.resize(E);
  ho.vertex_identity_class_.resize(V);
  for (int t = 0; t < V + E; ++t) {
    int r = uf.find(t);
    auto it = root_to_class.find(r);
    int c;
    if (it == root_to_class.end()) {
      c = static_cast<int>(ho.src_.size());
      root_to_class.emplace(r, c);
      ho.src_.push_back(tok_src[t]);
      ho.tgt_.push_back(tok_tgt[t]);
    } else {
      c = it->second;
    }
    if (t < V)
      ho.vertex_identity_class_[t] = c;
    else
      ho.edge_to_class_[t - V] = c;
  }

  const int K = static_cast<int>(ho.src_.size());
  ho.comp_.assign(K, std::vector<int>(K, -1));
  for (const auto& t : triples) {
    int g = root_to_class.at(uf.find(t.g));
    int f = root_to_class.at(uf.find(t.f));
    int h = root_to_class.at(uf.find(t.h));
    ho.comp_[g][f] = h;
  }
  return ho;
}

int HoCategory::edge_class(const SimplexRef& e) const {
  if (e.dim() != 1) throw Error("edge_class: not an edge");
  return e.is_degenerate() ? vertex_identity_class_[e.nd_id]
                           : edge_to_class_[e.nd_id];
}

bool HoCategory::classes_equal(const SimplexRef& a, const SimplexRef& b) const {
  return edge_class(a) == edge_class(b);
}

int HoCategory::compose_class(int g, int f) const {
  int r = comp_[g][f];
  if (r < 0)
    throw Error("homotopy category: missing composite (input not inner "
                "fibrant at the working depth)");
  return r;
}

bool HoCategory::is_equivalence_class(int c) const {
  for (int d = 0; d < num_classes(); ++d) {
    if (src_[d] != tgt_[c] || tgt_[d] != src_[c]) continue;
    if (comp_[d][c] == vertex_identity_class_[src_[c]] &&
        comp_[c][d] == vertex_identity_class_[tgt_[c]])
      return true;
  }
  return false;
}

int HoCategory::identity_class(int v) const { return vertex_identity_class_[v]; }

namespace {
bool inner_fibrant_over_point(const ComplexPtr& X, int depth) {
  sset::TargetIndex index(X);
  for (int n = 2; n <= depth; ++n) {
    if (n > X->bound() && !X->complete()) return false;  // cannot certify
    for (int i = 1; i < n; ++i) {
      auto horn = std::make_shared<const CellComplex>(sset::horn_shape(n, i));
      auto delta = std::make_shared<const CellComplex>(sset::simplex_shape(n));
      sset::SearchProblem hp;
      hp.src = horn;
      hp.tgt = X;
      for (auto& a : enumerate_maps(hp)) {
        // Extend to Delta^n: pin the horn cells.
        sset::SearchProblem fp;
        fp.src = delta;
        fp.tgt = X;
        fp.init_tables();
        for (int d = 0; d <= horn->top_dim(); ++d)
          for (int c = 0; c < horn->size(d); ++c) {
            auto verts = sset::shape_cell_vertices(*horn, d, c);
            auto id = sset::shape_cell_with_vertices(*delta, verts);
            fp.pin(d, *id, a.assign[d][c]);
          }
        fp.limit = 1;
        if (enumerate_maps(fp, index).empty()) return false;
      }
    }
  }
  return true;
}
}  // namespace

bool edge_is_equivalence(const ComplexPtr& X, const SimplexRef& e, int depth) {
  if (e.is_degenerate()) return true;
  if (!inner_fibrant_over_point(X, std::min(depth, 2)))
    throw Error("edge_is_equivalence: input fails inner-horn checks");
  HoCategory ho = HoCategory::build(*X);
  return edge_is_equivalence_unchecked(ho, e);
}

bool edge_is_equivalence_unchecked(const HoCategory& ho, const SimplexRef& e) {
  if (e.is_degenerate()) return true;
  return ho.is_equivalence_class(ho.edge_class(e));
}

bool edges_homotopic(const HoCategory& ho, const SimplexRef& a,
                     const SimplexRef& b) {
  return ho.classes_equal(a, b);
}

// --- nerve recognition ----------------------------------------------------------

std::optional<NerveRecognition> recognize_nerve(const ComplexPtr& X) {
  // Complete complexes are recognized exactly; truncated ones are accepted
  // when the truncation is Segal through its bound (>= 2), in which case the
  // verdict describes the reconstructed category of the truncation.
  if (X->bound() < 2) return std::nullopt;
  const int V = X->size(0);
  const int E = X->size(1);
  if (V == 0) return std::nullopt;

  auto edge_src = [&](const SimplexRef& e) {
    return e.is_degenerate() ? e.nd_id : X->cell(1, e.nd_id).faces[1].nd_id;
  };
  auto edge_tgt = [&](const SimplexRef& e) {
    return e.is_degenerate() ? e.nd_id : X->cell(1, e.nd_id).faces[0].nd_id;
  };

  // Segal check: n-simplices correspond bijectively to composable chains of
  // edges, for 2 <= n <= bound.
  std::map<std::vector<SimplexRef>, SimplexRef> by_spine2;
  for (int n = 2; n <= X->bound(); ++n) {
    std::map<std::vector<SimplexRef>, int> spine_count;
    for (const auto& r : refs_of_dim(*X, n)) {
      std::vector<SimplexRef> spine;
      for (int k = 0; k + 1 <= n; ++k)
        spine.push_back(act(*X, r, {k, k + 1}));
      if (++spine_count[spine] > 1) return std::nullopt;
      if (n == 2) by_spine2.emplace(spine, r);
    }
    // Count composable chains.
    auto edges1 = refs_of_dim(*X, 1);
    long long chains = 0;
    std::function<void(int, int)> count = [&](int len, int at) {
      if (len == n) {
        ++chains;
        return;
      }
      for (const auto& e : edges1)
        if (edge_src(e) == at) count(len + 1, edge_tgt(e));
    };
    for (const auto& e : edges1) count(1, edge_tgt(e));
    if (chains != static_cast<long long>(spine_count.size()))
      return std::nullopt;
  }

  // Composition from unique 2-cells.
  std::vector<std::string> objects;
  for (int v = 0; v < V; ++v) {
    std::string l = X->cell(0, v).label;
    objects.push_back(l.empty() ? "v" + std::to_string(v) : l);
  }
  std::vector<Morphism> morphisms;
  std::vector<int> idents(V);
  NerveRecognition rec;
  rec.edge_to_morphism.resize(E);
  for (int v = 0; v < V; ++v) {
    idents[v] = static_cast<int>(morphisms.size());
    morphisms.push_back({v, v, "id_" + objects[v]});
    rec.morphism_to_edge.push_back(-1);
  }
  for (int e = 0; e < E; ++e) {
    rec.edge_to_morphism[e] = static_cast<int>(morphisms.size());
    std::string l = X->cell(1, e).label;
    morphisms.push_back({edge_src(SimplexRef{1, e, {}}),
                         edge_tgt(SimplexRef{1, e, {}}),
                         l.empty() ? "e" + std::to_string(e) : l});
    rec.morphism_to_edge.push_back(e);
  }
  auto mor_of_edge = [&](const SimplexRef& e) {
    return e.is_degenerate() ? idents[e.nd_id] : rec.edge_to_morphism[e.nd_id];
  };
  auto edge_of_mor = [&](int m) {
    int e = rec.morphism_to_edge[m];
    if (e >= 0) return SimplexRef{1, e, {}};
    return sset::apply_degen(SimplexRef{0, morphisms[m].src, {}}, 0);
  };

  const int M = static_cast<int>(morphisms.size());
  std::vector<std::vector<int>> comp(M, std::vector<int>(M, -1));
  for (int g = 0; g < M; ++g)
    for (int f = 0; f < M; ++f) {
      if (morphisms[f].tgt != morphisms[g].src) continue;
      std::vector<SimplexRef> spine{edge_of_mor(f), edge_of_mor(g)};
      auto it = by_spine2.find(spine);
      if (it == by_spine2.end()) return std::nullopt;
      comp[g][f] = mor_of_edge(apply_face(*X, it->second, 1));
    }
  auto C = std::make_shared<const FinCategory>(objects, morphisms, idents,
                                               std::move(comp));
  try {
    C->validate();
  } catch (const Error&) {
    return std::nullopt;
  }
  // A COMPLETE complex must terminate exactly where the nerve of C does.
  if (X->complete()) {
    bool longer = false;
    std::function<void(int, int)> probe = [&](int len, int at) {
      if (longer) return;
      if (len == X->bound() + 1) {
        longer = true;
        return;
      }
      for (int m = 0; m < M; ++m)
        if (rec.morphism_to_edge[m] >= 0 && morphisms[m].src == at)
          probe(len + 1, morphisms[m].tgt);
    };
    for (int m = 0; m < M; ++m)
      if (rec.morphism_to_edge[m] >= 0) probe(1, morphisms[m].tgt);
    if (longer) return std::nullopt;
  }

  rec.category = C;
  return rec;
}

// --- equivalences ----------------------------------------------------------------

bool finite_categories_equivalent(const CatFunctor& u,
                                  EquivalenceCertificate* cert) {
  const FinCategory& A = *u.src;
  const FinCategory& B = *u.tgt;
  // Fully faithful.
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < A.num_objects(); ++b) {
      auto ha = A.hom(a, b);
      auto hb = B.hom(u.obj_map[a], u.obj_map[b]);
      std::set<int> image;
      for (int m : ha) image.insert(u.mor_map[m]);
      if (image.size() != ha.size() || image.size() != hb.size()) {
        if (cert) {
          cert->reason = "hom-set mismatch";
          cert->witness_hom_pair = {a, b};
        }
        return false;
      }
    }
  // Essentially surjective.
  std::set<int> covered;
  for (int a = 0; a < A.num_objects(); ++a)
    for (int y : B.isomorphism_class(u.obj_map[a])) covered.insert(y);
  for (int y = 0; y < B.num_objects(); ++y)
    if (!covered.count(y)) {
      if (cert) {
        cert->reason = "object not essentially hit";
        cert->witness_vertex = y;
      }
      return false;
    }
  return true;
}

namespace {
std::optional<CatFunctor> functor_of_map(const ComplexMap& f,
                                         const NerveRecognition& rs,
                                         const NerveRecognition& rt) {
  CatFunctor u;
  u.src = rs.category;
  u.tgt = rt.category;
  u.obj_map.resize(rs.category->num_objects());
  for (int v = 0; v < rs.category->num_objects(); ++v)
    u.obj_map[v] = f.at(0, v).nd_id;
  u.mor_map.resize(rs.category->num_morphisms());
  for (int m = 0; m < rs.category->num_morphisms(); ++m) {
    int e = rs.morphism_to_edge[m];
    if (e < 0) {
      u.mor_map[m] = rt.category->identity(u.obj_map[rs.category->morphism(m).src]);
    } else {
      SimplexRef img = f.at(1, e);
      u.mor_map[m] = img.is_degenerate()
                         ? rt.category->identity(img.nd_id)
                         : rt.edge_to_morphism[img.nd_id];
    }
  }
  try {
    u.validate();
  } catch (const Error&) {
    return std::nullopt;
  }
  return u;
}

// A homotopy through equivalences between maps a, b : X -> Y (over nothing):
// H : X x Delta^1 -> Y with H|0 = a, H|1 = b, vertex components equivalences.
bool find_equivalence_homotopy(const ComplexMap& a, const ComplexMap& b,
                               int depth) {
  ComplexPtr X = a.src, Y = a.tgt;
  auto d1 = std::make_shared<const CellComplex>(sset::simplex_shape(1));
  int pdepth = std::min(depth, std::max(X->top_dim() + 1, 1));
  auto prod = sset::product(X, d1, pdepth);
  HoCategory ho = HoCategory::build(*Y);

  sset::SearchProblem sp;
  sp.src = prod.complex();
  sp.tgt = Y;
  sp.init_tables();
  for (int d = 0; d <= prod.complex()->top_dim(); ++d)
    for (int i = 0; i < prod.complex()->size(d); ++i) {
      auto [x, t] = prod.components(d, i);
      auto tup = sset::tuple_of_simplex_ref(*d1, t);
      bool all0 = std::all_of(tup.begin(), tup.end(), [](int v) { return v == 0; });
      bool all1 = std::all_of(tup.begin(), tup.end(), [](int v) { return v == 1; });
      if (all0) sp.pin(d, i, a.push(x));
      if (all1) sp.pin(d, i, b.push(x));
    }
  sp.limit = 64;  // a few candidates; filtered below
  auto hs = enumerate_maps(sp);
  for (auto& H : hs) {
    bool ok = true;
    for (int v = 0; v < X->size(0) && ok; ++v) {
      SimplexRef vertedge =
          prod.locate(sset::apply_degen(SimplexRef{0, v, {}}, 0),
                      SimplexRef{1, 0, {}});
      if (!edge_is_equivalence_unchecked(ho, H.push(vertedge))) ok = false;
    }
    if (ok) return true;
  }
  return false;
}
}  // namespace

EquivalenceResult is_categorical_equivalence(const ComplexMap& f,
                                             const EquivalenceOptions& opts) {
  EquivalenceResult out;
  switch (opts.strategy) {
    case EquivalenceStrategy::NerveOfCategory: {
      auto rs = recognize_nerve(f.src);
      auto rt = recognize_nerve(f.tgt);
      if (!rs || !rt) {
        out.verdict = Verdict::Unknown;
        out.certificate.reason = "strategy inapplicable: not a recognizable nerve";
        return out;
      }
      auto u = functor_of_map(f, *rs, *rt);
      if (!u) {
        out.verdict = Verdict::Unknown;
        out.certificate.reason = "map does not induce a functor";
        return out;
      }
      bool eq = finite_categories_equivalent(*u, &out.certificate);
      out.verdict = eq ? Verdict::True : Verdict::False;
      if (eq) out.certificate.reason = "equivalence of finite categories";
      return out;
    }
    case EquivalenceStrategy::Certificate: {
      if (!opts.quasi_inverse) {
        out.certificate.reason = "certificate strategy needs a quasi-inverse";
        return out;
      }
      const ComplexMap& g = *opts.quasi_inverse;
      if (g.src != f.tgt || g.tgt != f.src) {
        out.certificate.reason = "quasi-inverse endpoints wrong";
        return out;
      }
      ComplexMap gf = compose(g, f);
      ComplexMap fg = compose(f, g);
      if (find_equivalence_homotopy(ComplexMap::identity(f.src), gf, opts.depth) &&
          find_equivalence_homotopy(ComplexMap::identity(f.tgt), fg, opts.depth)) {
        out.verdict = Verdict::True;
        out.certificate.reason = "quasi-inverse verified";
      } else {
        out.verdict = Verdict::Unknown;
        out.certificate.reason = "could not verify homotopies at this depth";
      }
      return out;
    }
    case EquivalenceStrategy::BoundedSearch: {
      sset::SearchProblem sp;
      sp.src = f.tgt;
      sp.tgt = f.src;
      sp.limit = 256;
      auto gs = enumerate_maps(sp);
      for (auto& g : gs) {
        EquivalenceOptions o2;
        o2.strategy = EquivalenceStrategy::Certificate;
        o2.quasi_inverse = &g;
        o2.depth = opts.depth;
        auto r = is_categorical_equivalence(f, o2);
        if (r.verdict == Verdict::True) return r;
      }
      out.verdict = Verdict::Unknown;
      out.certificate.reason = "no quasi-inverse found within bounds";
      return out;
    }
  }
  return out;
}

}  // namespace patfib::cat
