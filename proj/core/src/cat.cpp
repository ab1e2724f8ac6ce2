#include "patfib/cat.hpp"

#include <algorithm>
#include <functional>

namespace patfib::cat {

FinCategory::FinCategory(std::vector<std::string> objects,
                         std::vector<Morphism> morphisms,
                         std::vector<int> identities,
                         std::vector<std::vector<int>> comp)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      identities_(std::move(identities)),
      comp_(std::move(comp)) {}

bool FinCategory::is_identity(int m) const {
  return identities_[morphisms_[m].src] == m;
}

int FinCategory::compose(int g, int f) const {
  int r = comp_[g][f];
  if (r < 0)
    throw Error("compose: " + morphisms_[g].name + " o " + morphisms_[f].name +
                " not composable");
  return r;
}

void FinCategory::validate() const {
  if (identities_.size() != objects_.size())
    throw Error("category: identity table size mismatch");
  for (int o = 0; o < num_objects(); ++o) {
    int e = identities_[o];
    if (e < 0 || e >= num_morphisms() || morphisms_[e].src != o ||
        morphisms_[e].tgt != o)
      throw Error("category: bad identity at object " + objects_[o]);
  }
  if (static_cast<int>(comp_.size()) != num_morphisms())
    throw Error("category: composition table size mismatch");
  for (int g = 0; g < num_morphisms(); ++g) {
    if (static_cast<int>(comp_[g].size()) != num_morphisms())
      throw Error("category: composition table row size mismatch");
    for (int f = 0; f < num_morphisms(); ++f) {
      bool composable = morphisms_[f].tgt == morphisms_[g].src;
      if (composable != (comp_[g][f] >= 0))
        throw Error("category: composability mismatch for (" +
                    morphisms_[g].name + ", " + morphisms_[f].name + ")");
      if (composable) {
        int h = comp_[g][f];
        if (morphisms_[h].src != morphisms_[f].src ||
            morphisms_[h].tgt != morphisms_[g].tgt)
          throw Error("category: composite endpoints wrong for (" +
                      morphisms_[g].name + ", " + morphisms_[f].name + ")");
      }
    }
  }
  for (int f = 0; f < num_morphisms(); ++f) {
    if (comp_[f][identities_[morphisms_[f].src]] != f ||
        comp_[identities_[morphisms_[f].tgt]][f] != f)
      throw Error("category: unit law fails at " + morphisms_[f].name);
  }
  for (int h = 0; h < num_morphisms(); ++h)
    for (int g = 0; g < num_morphisms(); ++g) {
      if (morphisms_[g].tgt != morphisms_[h].src) continue;
      for (int f = 0; f < num_morphisms(); ++f) {
        if (morphisms_[f].tgt != morphisms_[g].src) continue;
        if (comp_[comp_[h][g]][f] != comp_[h][comp_[g][f]])
          throw Error("category: associativity fails at triple (" +
                      morphisms_[h].name + ", " + morphisms_[g].name + ", " +
                      morphisms_[f].name + ")");
      }
    }
}

std::vector<int> FinCategory::hom(int a, int b) const {
  std::vector<int> out;
  for (int m = 0; m < num_morphisms(); ++m)
    if (morphisms_[m].src == a && morphisms_[m].tgt == b) out.push_back(m);
  return out;
}

bool FinCategory::is_invertible(int m) const {
  const auto& mo = morphisms_[m];
  for (int u : hom(mo.tgt, mo.src))
    if (comp_[u][m] == identities_[mo.src] && comp_[m][u] == identities_[mo.tgt])
      return true;
  return false;
}

std::vector<int> FinCategory::isomorphism_class(int obj) const {
  std::vector<int> out;
  for (int o = 0; o < num_objects(); ++o) {
    if (o == obj) {
      out.push_back(o);
      continue;
    }
    bool iso = false;
    for (int m : hom(obj, o))
      if (is_invertible(m)) { iso = true; break; }
    if (iso) out.push_back(o);
  }
  return out;
}

void CatFunctor::validate() const {
  if (!src || !tgt) throw Error("functor without endpoints");
  for (int m = 0; m < src->num_morphisms(); ++m) {
    const auto& mo = src->morphism(m);
    const auto& im = tgt->morphism(mor_map[m]);
    if (im.src != obj_map[mo.src] || im.tgt != obj_map[mo.tgt])
      throw Error("functor: endpoints not preserved at " + mo.name);
  }
  for (int o = 0; o < src->num_objects(); ++o)
    if (mor_map[src->identity(o)] != tgt->identity(obj_map[o]))
      throw Error("functor: identity not preserved at " + src->object_name(o));
  for (int g = 0; g < src->num_morphisms(); ++g)
    for (int f = 0; f < src->num_morphisms(); ++f) {
      if (src->morphism(f).tgt != src->morphism(g).src) continue;
      if (mor_map[src->compose(g, f)] != tgt->compose(mor_map[g], mor_map[f]))
        throw Error("functor: composition not preserved at (" +
                    src->morphism(g).name + ", " + src->morphism(f).name + ")");
    }
}

// --- nerve --------------------------------------------------------------------

namespace {
KeyedComplex::Key chain_key(const std::vector<int>& chain) {
  KeyedComplex::Key k;
  k.reserve(chain.size());
  for (int m : chain) k.push_back(m);
  return k;
}
}  // namespace

NerveComplex nerve(CatPtr Cp_in, int depth) {
  const FinCategory& C = *Cp_in;
  NerveComplex out;
  out.category = Cp_in;

  KeyedComplex::Spec spec;
  spec.bound = depth;
  spec.raw_cells.resize(depth + 1);

  for (int o = 0; o < C.num_objects(); ++o)
    spec.raw_cells[0].push_back(KeyedComplex::Key{o});

  // Nondegenerate chains = composable chains with no identity entries.
  std::vector<std::vector<int>> frontier;
  for (int m = 0; m < C.num_morphisms(); ++m)
    if (!C.is_identity(m)) frontier.push_back({m});
  for (int n = 1; n <= depth && !frontier.empty(); ++n) {
    for (auto& ch : frontier) spec.raw_cells[n].push_back(chain_key(ch));
    if (n == depth) break;
    std::vector<std::vector<int>> next;
    for (auto& ch : frontier)
      for (int m = 0; m < C.num_morphisms(); ++m) {
        if (C.is_identity(m)) continue;
        if (C.morphism(m).src != C.morphism(ch.back()).tgt) continue;
        auto ext = ch;
        ext.push_back(m);
        next.push_back(std::move(ext));
      }
    frontier = std::move(next);
  }
  // COMPLETE iff no nondegenerate chain of length depth+1 exists.
  bool has_longer = false;
  for (auto& ch : frontier) {
    if (static_cast<int>(ch.size()) < depth) continue;
    for (int m = 0; m < C.num_morphisms() && !has_longer; ++m)
      if (!C.is_identity(m) &&
          C.morphism(m).src == C.morphism(ch.back()).tgt)
        has_longer = true;
    if (has_longer) break;
  }
  if (depth == 0) {
    for (int m = 0; m < C.num_morphisms(); ++m)
      if (!C.is_identity(m)) has_longer = true;
  }
  spec.completeness =
      has_longer ? Completeness::Truncated : Completeness::Complete;

  CatPtr Cp = Cp_in;
  spec.face = [Cp](int n, const KeyedComplex::Key& k, int i) {
    std::vector<int> ch(k.begin(), k.end());
    if (n == 1) {
      int o = i == 0 ? Cp->morphism(ch[0]).tgt : Cp->morphism(ch[0]).src;
      return KeyedComplex::Key{o};
    }
    std::vector<int> out_ch;
    if (i == 0) {
      out_ch.assign(ch.begin() + 1, ch.end());
    } else if (i == n) {
      out_ch.assign(ch.begin(), ch.end() - 1);
    } else {
      out_ch.assign(ch.begin(), ch.end());
      out_ch[i] = Cp->compose(ch[i], ch[i - 1]);
      out_ch.erase(out_ch.begin() + (i - 1));
    }
    return chain_key(out_ch);
  };
  spec.degen = [Cp](int n, const KeyedComplex::Key& k, int j) {
    if (n == 0) {
      int o = static_cast<int>(k[0]);
      return chain_key({Cp->identity(o)});
    }
    std::vector<int> ch(k.begin(), k.end());
    int obj = j < n ? Cp->morphism(ch[j]).src : Cp->morphism(ch[n - 1]).tgt;
    ch.insert(ch.begin() + j, Cp->identity(obj));
    return chain_key(ch);
  };
  spec.label = [Cp](int n, const KeyedComplex::Key& k) {
    if (n == 0) return Cp->object_name(static_cast<int>(k[0]));
    std::string s;
    for (size_t i = 0; i < k.size(); ++i) {
      if (i) s += ";";
      s += Cp->morphism(static_cast<int>(k[i])).name;
    }
    return s;
  };
  out.kc = KeyedComplex::build(std::move(spec));
  return out;
}

std::vector<int> NerveComplex::chain_of(const SimplexRef& r) const {
  auto key = kc.key(r.nd_dim, r.nd_id);
  std::vector<int> chain;
  int obj0;
  if (r.nd_dim == 0) {
    obj0 = static_cast<int>(key[0]);
  } else {
    chain.assign(key.begin(), key.end());
    obj0 = category->morphism(chain[0]).src;
  }
  for (auto it = r.word.rbegin(); it != r.word.rend(); ++it) {
    int j = *it;
    int obj = j < static_cast<int>(chain.size())
                  ? category->morphism(chain[j]).src
                  : (chain.empty() ? obj0
                                   : category->morphism(chain.back()).tgt);
    chain.insert(chain.begin() + j, category->identity(obj));
  }
  return chain;
}

SimplexRef NerveComplex::ref_of_chain(const std::vector<int>& chain) {
  if (chain.empty()) throw Error("ref_of_chain: empty chain has no dimension");
  return kc.normalize(static_cast<int>(chain.size()), chain_key(chain));
}

int NerveComplex::vertex_object(int vertex_id) const {
  return static_cast<int>(kc.key(0, vertex_id)[0]);
}

SimplexRef NerveComplex::vertex_of_object(int obj) const {
  auto id = kc.find(0, KeyedComplex::Key{obj});
  if (!id) throw Error("vertex_of_object: object not found");
  return SimplexRef{0, *id, {}};
}

ComplexMap nerve_map(const CatFunctor& u, NerveComplex& src, NerveComplex& tgt) {
  ComplexMap f;
  f.src = src.complex();
  f.tgt = tgt.complex();
  f.assign.resize(std::max(f.src->top_dim() + 1, 1));
  for (int d = 0; d <= f.src->top_dim(); ++d) {
    f.assign[d].resize(f.src->size(d));
    for (int i = 0; i < f.src->size(d); ++i) {
      if (d == 0) {
        f.assign[d][i] = tgt.vertex_of_object(u.obj_map[src.vertex_object(i)]);
      } else {
        auto chain = src.chain_of(SimplexRef{d, i, {}});
        for (int& m : chain) m = u.mor_map[m];
        f.assign[d][i] = tgt.ref_of_chain(chain);
      }
    }
  }
  return f;
}

// --- standard categories --------------------------------------------------------

namespace {
struct CatBuilder {
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;

  int add_obj(const std::string& n) {
    objects.push_back(n);
    return static_cast<int>(objects.size()) - 1;
  }
  int add_mor(int s, int t, const std::string& n) {
    morphisms.push_back({s, t, n});
    return static_cast<int>(morphisms.size()) - 1;
  }
  CatPtr finish(const std::vector<int>& idents,
                const std::function<int(int, int)>& comp_fn) {
    std::vector<std::vector<int>> comp(
        morphisms.size(), std::vector<int>(morphisms.size(), -1));
    for (size_t g = 0; g < morphisms.size(); ++g)
      for (size_t f = 0; f < morphisms.size(); ++f)
        if (morphisms[f].tgt == morphisms[g].src)
          comp[g][f] = comp_fn(static_cast<int>(g), static_cast<int>(f));
    return std::make_shared<const FinCategory>(objects, morphisms, idents,
                                               std::move(comp));
  }
};
}  // namespace

CatPtr terminal_category() {
  CatBuilder b;
  b.add_obj("*");
  b.add_mor(0, 0, "id");
  return b.finish({0}, [](int, int) { return 0; });
}

CatPtr poset_from_leq(const std::vector<std::vector<bool>>& leq,
                           const std::vector<std::string>& names) {
  const int n = static_cast<int>(leq.size());
  CatBuilder b;
  for (int a = 0; a < n; ++a) b.add_obj(names[a]);
  std::vector<std::vector<int>> morid(n, std::vector<int>(n, -1));
  std::vector<int> idents(n);
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      if (leq[a][c]) {
        morid[a][c] = b.add_mor(a, c, names[a] + "<=" + names[c]);
        if (a == c) idents[a] = morid[a][c];
      }
  auto morphisms = b.morphisms;  // copy for the closure
  return b.finish(idents, [morid, morphisms](int g, int f) {
    return morid[morphisms[f].src][morphisms[g].tgt];
  });
}

CatPtr poset_category(int n) {
  std::vector<std::vector<bool>> leq(n + 1, std::vector<bool>(n + 1, false));
  std::vector<std::string> names;
  for (int a = 0; a <= n; ++a) {
    names.push_back(std::to_string(a));
    for (int bb = a; bb <= n; ++bb) leq[a][bb] = true;
  }
  return poset_from_leq(leq, names);
}

CatPtr cospan_category() {
  std::vector<std::vector<bool>> leq(3, std::vector<bool>(3, false));
  leq[0][0] = leq[1][1] = leq[2][2] = true;
  leq[0][2] = leq[1][2] = true;
  return poset_from_leq(leq, {"a", "b", "c"});
}

CatPtr discrete_category(int n) {
  CatBuilder b;
  std::vector<int> idents;
  for (int i = 0; i < n; ++i) {
    b.add_obj("x" + std::to_string(i));
    idents.push_back(b.add_mor(i, i, "id" + std::to_string(i)));
  }
  return b.finish(idents, [](int g, int) { return g; });
}

CatPtr iso_pair_category() {
  CatBuilder b;
  b.add_obj("0");
  b.add_obj("1");
  int i0 = b.add_mor(0, 0, "id0");
  int i1 = b.add_mor(1, 1, "id1");
  int u = b.add_mor(0, 1, "u");
  int v = b.add_mor(1, 0, "v");
  auto morphisms = b.morphisms;
  return b.finish({i0, i1}, [morphisms, i0, i1, u, v](int g, int f) {
    int s = morphisms[f].src, t = morphisms[g].tgt;
    if (s == t) return s == 0 ? i0 : i1;
    return s == 0 ? u : v;
  });
}

namespace {
std::string pointed_map_name(int m, int n, const std::vector<int>& vals) {
  std::string s = "<" + std::to_string(m) + ">-><" + std::to_string(n) + ">:";
  for (int v : vals) s += std::to_string(v);
  return s;
}
}  // namespace

CatPtr fin_star(int max_n) {
  CatBuilder b;
  for (int n = 0; n <= max_n; ++n) b.add_obj("<" + std::to_string(n) + ">");
  struct Entry {
    int m, n;
    std::vector<int> vals;
  };
  auto entries = std::make_shared<std::vector<Entry>>();
  auto index =
      std::make_shared<std::map<std::pair<std::pair<int, int>, std::vector<int>>, int>>();
  for (int m = 0; m <= max_n; ++m)
    for (int n = 0; n <= max_n; ++n) {
      std::vector<int> vals(m, 0);
      while (true) {
        int id = b.add_mor(m, n, pointed_map_name(m, n, vals));
        (*index)[{{m, n}, vals}] = id;
        entries->push_back({m, n, vals});
        int i = m - 1;
        while (i >= 0 && vals[i] == n) {
          vals[i] = 0;
          --i;
        }
        if (i < 0) break;
        ++vals[i];
      }
    }
  std::vector<int> idents(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    std::vector<int> iv(n);
    for (int i = 0; i < n; ++i) iv[i] = i + 1;
    idents[n] = index->at({{n, n}, iv});
  }
  return b.finish(idents, [entries, index](int g, int f) {
    const auto& ef = (*entries)[f];
    const auto& eg = (*entries)[g];
    std::vector<int> vals(ef.m);
    for (int i = 0; i < ef.m; ++i) {
      int mid = ef.vals[i];
      vals[i] = mid == 0 ? 0 : eg.vals[mid - 1];
    }
    return index->at({{ef.m, eg.n}, vals});
  });
}

int fin_star_morphism(const FinCategory& C, int m, int n,
                      const std::vector<int>& values) {
  std::string name = pointed_map_name(m, n, values);
  for (int i = 0; i < C.num_morphisms(); ++i)
    if (C.morphism(i).name == name) return i;
  throw Error("fin_star_morphism: not found " + name);
}

int fin_star_rho(const FinCategory& C, int n, int i) {
  std::vector<int> vals(n, 0);
  vals[i - 1] = 1;
  return fin_star_morphism(C, n, 1, vals);
}

// --- Grothendieck construction ---------------------------------------------------

void CatValuedFunctor::validate() const {
  if (!base) throw Error("CatValuedFunctor: no base");
  if (static_cast<int>(fibers.size()) != base->num_objects() ||
      static_cast<int>(transports.size()) != base->num_morphisms())
    throw Error("CatValuedFunctor: table sizes mismatch");
  for (auto& F : fibers) F->validate();
  for (int m = 0; m < base->num_morphisms(); ++m) {
    const auto& t = transports[m];
    if (t.src != fibers[base->morphism(m).src] ||
        t.tgt != fibers[base->morphism(m).tgt])
      throw Error("CatValuedFunctor: transport endpoints wrong");
    t.validate();
  }
  for (int o = 0; o < base->num_objects(); ++o) {
    const auto& t = transports[base->identity(o)];
    for (int x = 0; x < fibers[o]->num_objects(); ++x)
      if (t.obj_map[x] != x) throw Error("CatValuedFunctor: F(id) != id");
    for (int m = 0; m < fibers[o]->num_morphisms(); ++m)
      if (t.mor_map[m] != m) throw Error("CatValuedFunctor: F(id) != id");
  }
  for (int g = 0; g < base->num_morphisms(); ++g)
    for (int f = 0; f < base->num_morphisms(); ++f) {
      if (base->morphism(f).tgt != base->morphism(g).src) continue;
      int gf = base->compose(g, f);
      int src_obj = base->morphism(f).src;
      for (int x = 0; x < fibers[src_obj]->num_objects(); ++x)
        if (transports[gf].obj_map[x] !=
            transports[g].obj_map[transports[f].obj_map[x]])
          throw Error("CatValuedFunctor: F(gf) != F(g)F(f) on objects");
      for (int m = 0; m < fibers[src_obj]->num_morphisms(); ++m)
        if (transports[gf].mor_map[m] !=
            transports[g].mor_map[transports[f].mor_map[m]])
          throw Error("CatValuedFunctor: F(gf) != F(g)F(f) on morphisms");
    }
  if (!markings.empty()) {
    if (static_cast<int>(markings.size()) != base->num_objects())
      throw Error("CatValuedFunctor: marking table size mismatch");
    for (int o = 0; o < base->num_objects(); ++o)
      for (int x = 0; x < fibers[o]->num_objects(); ++x)
        if (!markings[o].count(fibers[o]->identity(x)))
          throw Error("CatValuedFunctor: markings must contain identities");
  }
}

GrothendieckResult grothendieck(const CatValuedFunctor& F) {
  GrothendieckResult out;
  const FinCategory& B = *F.base;

  std::vector<std::string> objects;
  for (int c = 0; c < B.num_objects(); ++c)
    for (int x = 0; x < F.fibers[c]->num_objects(); ++x) {
      out.obj_index_[{c, x}] = static_cast<int>(objects.size());
      out.object_pairs.emplace_back(c, x);
      objects.push_back("(" + B.object_name(c) + "," +
                        F.fibers[c]->object_name(x) + ")");
    }

  std::vector<Morphism> morphisms;
  for (int f = 0; f < B.num_morphisms(); ++f) {
    int c = B.morphism(f).src, cp = B.morphism(f).tgt;
    for (int x = 0; x < F.fibers[c]->num_objects(); ++x) {
      int fx = F.transports[f].obj_map[x];
      for (int g = 0; g < F.fibers[cp]->num_morphisms(); ++g) {
        if (F.fibers[cp]->morphism(g).src != fx) continue;
        int xp = F.fibers[cp]->morphism(g).tgt;
        out.mor_index_[{f, g, x}] = static_cast<int>(morphisms.size());
        out.morphism_pairs.emplace_back(f, g);
        morphisms.push_back({out.obj_index_.at({c, x}),
                             out.obj_index_.at({cp, xp}),
                             "(" + B.morphism(f).name + "," +
                                 F.fibers[cp]->morphism(g).name + ")"});
      }
    }
  }

  std::vector<int> idents(objects.size());
  for (size_t o = 0; o < objects.size(); ++o) {
    auto [c, x] = out.object_pairs[o];
    idents[o] =
        out.mor_index_.at({B.identity(c), F.fibers[c]->identity(x), x});
  }

  std::vector<std::vector<int>> comp(morphisms.size(),
                                     std::vector<int>(morphisms.size(), -1));
  for (size_t g2 = 0; g2 < morphisms.size(); ++g2)
    for (size_t f2 = 0; f2 < morphisms.size(); ++f2) {
      if (morphisms[f2].tgt != morphisms[g2].src) continue;
      auto [f, g] = out.morphism_pairs[f2];
      auto [fp, gp] = out.morphism_pairs[g2];
      // (f', g') o (f, g) = (f' f, g' o F f'(g)).
      int base_comp = B.compose(fp, f);
      int cpp = B.morphism(fp).tgt;
      int transported = F.transports[fp].mor_map[g];
      int fib_comp = F.fibers[cpp]->compose(gp, transported);
      int x_src = out.object_pairs[morphisms[f2].src].second;
      comp[g2][f2] = out.mor_index_.at({base_comp, fib_comp, x_src});
    }

  out.total = std::make_shared<const FinCategory>(
      std::move(objects), std::move(morphisms), std::move(idents),
      std::move(comp));

  out.projection.src = out.total;
  out.projection.tgt = F.base;
  out.projection.obj_map.resize(out.object_pairs.size());
  for (size_t o = 0; o < out.object_pairs.size(); ++o)
    out.projection.obj_map[o] = out.object_pairs[o].first;
  out.projection.mor_map.resize(out.morphism_pairs.size());
  for (size_t m = 0; m < out.morphism_pairs.size(); ++m)
    out.projection.mor_map[m] = out.morphism_pairs[m].first;
  return out;
}

std::optional<int> GrothendieckResult::object_id(int c, int x) const {
  auto it = obj_index_.find({c, x});
  if (it == obj_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> GrothendieckResult::morphism_id(int f, int g,
                                                   int src_x) const {
  auto it = mor_index_.find({f, g, src_x});
  if (it == mor_index_.end()) return std::nullopt;
  return it->second;
}

MarkedGrothendieckNerve marked_grothendieck_nerve(const CatValuedFunctor& F,
                                                  NerveComplex& base_nerve,
                                                  int depth) {
  if (F.markings.empty())
    throw Error("marked_grothendieck_nerve: functor carries no markings");
  MarkedGrothendieckNerve res;
  res.gr = grothendieck(F);
  res.total_nerve = nerve(res.gr.total, depth);

  res.marked.complex = res.total_nerve.complex();
  for (int e = 0; e < res.total_nerve.complex()->size(1); ++e) {
    auto chain = res.total_nerve.chain_of(SimplexRef{1, e, {}});
    auto [f, g] = res.gr.morphism_pairs[chain[0]];
    int cp = F.base->morphism(f).tgt;
    if (F.markings[cp].count(g)) res.marked.marked.insert(e);
  }

  res.projection = nerve_map(res.gr.projection, res.total_nerve, base_nerve);
  return res;
}

}  // namespace patfib::cat
