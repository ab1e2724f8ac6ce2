#include "patfib/corpus.hpp"

#include "patfib/ops.hpp"

#include <algorithm>
#include <functional>

namespace patfib::corpus {

using cat::FinCategory;
using cat::Morphism;

namespace {
std::vector<int> pointed_values(const FinCategory& fs, int m) {
  // Decode the value tuple from the canonical fin_star morphism name.
  const std::string& name = fs.morphism(m).name;
  auto pos = name.find(':');
  std::vector<int> vals;
  for (size_t i = pos + 1; i < name.size(); ++i) vals.push_back(name[i] - '0');
  return vals;
}

CatFunctor monoid_transport(const CatValuedFunctor& F, int order, int src_n,
                            int tgt_n, const std::vector<int>& vals) {
  auto digits = [&](int code, int n) {
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) {
      d[i] = code % order;
      code /= order;
    }
    return d;
  };
  auto code_of = [&](const std::vector<int>& d) {
    int c = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i)
      c = c * order + d[i];
    return c;
  };
  CatFunctor t;
  t.src = F.fibers[src_n];
  t.tgt = F.fibers[tgt_n];
  t.obj_map.resize(F.fibers[src_n]->num_objects());
  for (int x = 0; x < F.fibers[src_n]->num_objects(); ++x) {
    auto xs = digits(x, src_n);
    std::vector<int> ys(tgt_n, 0);
    for (int i = 0; i < src_n; ++i)
      if (vals[i] != 0) ys[vals[i] - 1] = (ys[vals[i] - 1] + xs[i]) % order;
    t.obj_map[x] = code_of(ys);
  }
  t.mor_map.resize(F.fibers[src_n]->num_morphisms());
  for (int x = 0; x < F.fibers[src_n]->num_objects(); ++x)
    t.mor_map[F.fibers[src_n]->identity(x)] =
        F.fibers[tgt_n]->identity(t.obj_map[x]);
  return t;
}
}  // namespace

CatValuedFunctor segal_monoid_functor(CatPtr base, int max_n, int order) {
  CatValuedFunctor F;
  F.base = base;
  auto pw = [&](int n) {
    long long r = 1;
    for (int i = 0; i < n; ++i) r *= order;
    return static_cast<int>(r);
  };
  for (int n = 0; n <= max_n; ++n)
    F.fibers.push_back(cat::discrete_category(pw(n)));
  for (int m = 0; m < base->num_morphisms(); ++m) {
    const auto& mo = base->morphism(m);
    F.transports.push_back(
        monoid_transport(F, order, mo.src, mo.tgt, pointed_values(*base, m)));
  }
  for (int n = 0; n <= max_n; ++n) {
    std::set<int> mk;
    for (int x = 0; x < F.fibers[n]->num_objects(); ++x)
      mk.insert(F.fibers[n]->identity(x));
    F.markings.push_back(std::move(mk));
  }
  return F;
}

CatValuedFunctor segal_monoid_functor_inflated(CatPtr base, int order) {
  // Precompose with the retract T(<m>) = <w(m)> where w = (0, 1, 3): the
  // section s : <2> -> <3> is 1,2 |-> 1,2 and the retraction r : <3> -> <2>
  // sends 3 |-> 2. T(phi) = s o phi o r, so T is a functor and G = F o T,
  // computed on the inflated arities.
  auto w = [](int n) { return n == 2 ? 3 : n; };
  auto inflate_vals = [&](int m, int n, std::vector<int> vals) {
    // phi : <m> -> <n> with value tuple vals; T(phi) : <w(m)> -> <w(n)>.
    std::vector<int> out(w(m));
    for (int i = 1; i <= w(m); ++i) {
      int ri = std::min(i, m);  // retraction <w(m)> -> <m>
      int v = ri == 0 ? 0 : vals[ri - 1];
      out[i - 1] = v;  // section <n> -> <w(n)> is the inclusion
    }
    return out;
  };
  CatValuedFunctor F;
  F.base = base;
  int order_pw[5] = {1, order, order * order, order * order * order, 0};
  for (int n = 0; n <= 2; ++n)
    F.fibers.push_back(cat::discrete_category(order_pw[w(n)]));
  for (int m = 0; m < base->num_morphisms(); ++m) {
    const auto& mo = base->morphism(m);
    auto vals = inflate_vals(mo.src, mo.tgt, pointed_values(*base, m));
    // Transport computed at the inflated arities but stored on the original
    // objects; reuse monoid_transport with the inflated tuple by faking the
    // source/target powers.
    CatFunctor t;
    auto digits = [&](int code, int n) {
      std::vector<int> d(n);
      for (int i = 0; i < n; ++i) {
        d[i] = code % order;
        code /= order;
      }
      return d;
    };
    auto code_of = [&](const std::vector<int>& d) {
      int c = 0;
      for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i)
        c = c * order + d[i];
      return c;
    };
    t.src = F.fibers[mo.src];
    t.tgt = F.fibers[mo.tgt];
    t.obj_map.resize(t.src->num_objects());
    for (int x = 0; x < t.src->num_objects(); ++x) {
      auto xs = digits(x, w(mo.src));
      std::vector<int> ys(w(mo.tgt), 0);
      for (int i = 0; i < w(mo.src); ++i)
        if (vals[i] != 0) ys[vals[i] - 1] = (ys[vals[i] - 1] + xs[i]) % order;
      t.obj_map[x] = code_of(ys);
    }
    t.mor_map.resize(t.src->num_morphisms());
    for (int x = 0; x < t.src->num_objects(); ++x)
      t.mor_map[t.src->identity(x)] = t.tgt->identity(t.obj_map[x]);
    F.transports.push_back(std::move(t));
  }
  for (int n = 0; n <= 2; ++n) {
    std::set<int> mk;
    for (int x = 0; x < F.fibers[n]->num_objects(); ++x)
      mk.insert(F.fibers[n]->identity(x));
    F.markings.push_back(std::move(mk));
  }
  return F;
}

std::vector<CatFunctor> all_functors(CatPtr A, CatPtr B) {
  std::vector<CatFunctor> out;
  const int nA = A->num_objects();
  std::vector<int> obj(nA, 0);
  auto next_obj = [&]() {
    int i = nA - 1;
    while (i >= 0 && obj[i] == B->num_objects() - 1) obj[i--] = 0;
    if (i < 0) return false;
    ++obj[i];
    return true;
  };
  if (B->num_objects() == 0) return out;
  do {
    // Assign morphisms: each A-morphism to some parallel B-morphism.
    std::vector<std::vector<int>> cand(A->num_morphisms());
    bool feasible = true;
    for (int m = 0; m < A->num_morphisms() && feasible; ++m) {
      const auto& mo = A->morphism(m);
      if (A->is_identity(m))
        cand[m] = {B->identity(obj[mo.src])};
      else
        cand[m] = B->hom(obj[mo.src], obj[mo.tgt]);
      if (cand[m].empty()) feasible = false;
    }
    if (!feasible) continue;
    std::vector<int> pick(A->num_morphisms(), 0);
    std::function<void(int)> rec = [&](int m) {
      if (m == A->num_morphisms()) {
        CatFunctor u;
        u.src = A;
        u.tgt = B;
        u.obj_map = obj;
        u.mor_map.resize(A->num_morphisms());
        for (int i = 0; i < A->num_morphisms(); ++i)
          u.mor_map[i] = cand[i][pick[i]];
        try {
          u.validate();
          out.push_back(std::move(u));
        } catch (const Error&) {
        }
        return;
      }
      for (pick[m] = 0; pick[m] < static_cast<int>(cand[m].size()); ++pick[m])
        rec(m + 1);
    };
    rec(0);
  } while (next_obj());
  return out;
}

CatPtr random_poset_base(std::mt19937_64& rng, int max_objects) {
  int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_objects));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) leq[a][a] = true;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (rng() % 2) leq[a][b] = true;
  // transitive closure
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (leq[a][k] && leq[k][b]) leq[a][b] = true;
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) names.push_back("c" + std::to_string(a));
  return cat::poset_from_leq(leq, names);
}

namespace {
CatPtr random_fiber(std::mt19937_64& rng, int cap, bool discrete_only) {
  int kind = discrete_only ? 0 : static_cast<int>(rng() % 3);
  switch (kind) {
    case 1:
      return cat::poset_category(1 + static_cast<int>(rng() % 2));  // [1]/[2]
    case 2:
      return cat::cospan_category();
    default:
      return cat::discrete_category(1 + static_cast<int>(rng() % cap));
  }
}
}  // namespace

CatValuedFunctor random_cat_valued_functor(std::uint64_t seed,
                                           const RandomFunctorOptions& opts) {
  std::mt19937_64 rng(seed);
  CatValuedFunctor F;
  F.base = random_poset_base(rng, opts.max_base_objects);
  const int n = F.base->num_objects();
  for (int o = 0; o < n; ++o)
    F.fibers.push_back(
        random_fiber(rng, opts.max_fiber_objects, opts.discrete_fibers_only));

  // Covering relations of the poset, in order; composites forced.
  F.transports.resize(F.base->num_morphisms());
  std::vector<bool> have(F.base->num_morphisms(), false);
  for (int o = 0; o < n; ++o) {
    CatFunctor idf;
    idf.src = F.fibers[o];
    idf.tgt = F.fibers[o];
    idf.obj_map.resize(F.fibers[o]->num_objects());
    for (int x = 0; x < F.fibers[o]->num_objects(); ++x) idf.obj_map[x] = x;
    idf.mor_map.resize(F.fibers[o]->num_morphisms());
    for (int m = 0; m < F.fibers[o]->num_morphisms(); ++m) idf.mor_map[m] = m;
    F.transports[F.base->identity(o)] = idf;
    have[F.base->identity(o)] = true;
  }
  auto is_cover = [&](int m) {
    const auto& mo = F.base->morphism(m);
    if (mo.src == mo.tgt) return false;
    for (int k = 0; k < n; ++k) {
      if (k == mo.src || k == mo.tgt) continue;
      if (!F.base->hom(mo.src, k).empty() && !F.base->hom(k, mo.tgt).empty())
        return false;
    }
    return true;
  };
  for (int m = 0; m < F.base->num_morphisms(); ++m) {
    if (have[m] || !is_cover(m)) continue;
    const auto& mo = F.base->morphism(m);
    auto fs = all_functors(F.fibers[mo.src], F.fibers[mo.tgt]);
    if (fs.empty()) throw Error("random functor: no transports available");
    F.transports[m] = fs[rng() % fs.size()];
    have[m] = true;
  }
  // Fill remaining composites through any factorization.
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (int m = 0; m < F.base->num_morphisms(); ++m) {
      if (have[m]) continue;
      const auto& mo = F.base->morphism(m);
      for (int k = 0; k < n && !have[m]; ++k) {
        for (int f : F.base->hom(mo.src, k)) {
          if (!have[f] || F.base->is_identity(f) == (mo.src != k)) continue;
          for (int g : F.base->hom(k, mo.tgt)) {
            if (!have[g]) continue;
            if (F.base->compose(g, f) != m) continue;
            CatFunctor comp;
            comp.src = F.fibers[mo.src];
            comp.tgt = F.fibers[mo.tgt];
            comp.obj_map.resize(comp.src->num_objects());
            for (int x = 0; x < comp.src->num_objects(); ++x)
              comp.obj_map[x] =
                  F.transports[g].obj_map[F.transports[f].obj_map[x]];
            comp.mor_map.resize(comp.src->num_morphisms());
            for (int mm = 0; mm < comp.src->num_morphisms(); ++mm)
              comp.mor_map[mm] =
                  F.transports[g].mor_map[F.transports[f].mor_map[mm]];
            F.transports[m] = comp;
            have[m] = true;
            progressed = true;
            break;
          }
          if (have[m]) break;
        }
      }
    }
    if (std::all_of(have.begin(), have.end(), [](bool b) { return b; })) break;
  }
  if (!std::all_of(have.begin(), have.end(), [](bool b) { return b; }))
    throw Error("random functor: could not complete transports");

  for (int o = 0; o < n; ++o) {
    std::set<int> mk;
    for (int m = 0; m < F.fibers[o]->num_morphisms(); ++m)
      if (F.fibers[o]->is_invertible(m)) mk.insert(m);
    F.markings.push_back(std::move(mk));
  }
  F.validate();
  return F;
}

CatValuedFunctor SetDiagram::as_functor() const {
  CatValuedFunctor F;
  F.base = base;
  for (int s : sizes) F.fibers.push_back(cat::discrete_category(s));
  for (int m = 0; m < base->num_morphisms(); ++m) {
    const auto& mo = base->morphism(m);
    CatFunctor t;
    t.src = F.fibers[mo.src];
    t.tgt = F.fibers[mo.tgt];
    t.obj_map = transports[m];
    t.mor_map.resize(t.src->num_morphisms());
    for (int x = 0; x < t.src->num_objects(); ++x)
      t.mor_map[t.src->identity(x)] = t.tgt->identity(t.obj_map[x]);
    F.transports.push_back(std::move(t));
  }
  for (int o = 0; o < base->num_objects(); ++o) {
    std::set<int> mk;
    for (int x = 0; x < F.fibers[o]->num_objects(); ++x)
      mk.insert(F.fibers[o]->identity(x));
    F.markings.push_back(std::move(mk));
  }
  return F;
}

SetDiagram random_set_diagram(std::uint64_t seed, CatPtr base, int size_cap) {
  std::mt19937_64 rng(seed);
  SetDiagram d;
  d.base = base;
  const int n = base->num_objects();
  for (int o = 0; o < n; ++o)
    d.sizes.push_back(1 + static_cast<int>(rng() % size_cap));
  d.transports.resize(base->num_morphisms());
  // Posets on <= 3 objects in our corpora have no nontrivial factorizations
  // except through covers; assign covers randomly, composites forced.
  for (int m = 0; m < base->num_morphisms(); ++m) {
    const auto& mo = base->morphism(m);
    if (base->is_identity(m)) {
      d.transports[m].resize(d.sizes[mo.src]);
      for (int x = 0; x < d.sizes[mo.src]; ++x) d.transports[m][x] = x;
    } else {
      d.transports[m].resize(d.sizes[mo.src]);
      for (int x = 0; x < d.sizes[mo.src]; ++x)
        d.transports[m][x] = static_cast<int>(rng() % d.sizes[mo.tgt]);
    }
  }
  // Repair functoriality: recompute non-cover composites from factorizations.
  for (int m = 0; m < base->num_morphisms(); ++m) {
    const auto& mo = base->morphism(m);
    if (base->is_identity(m)) continue;
    for (int k = 0; k < n; ++k) {
      if (k == mo.src || k == mo.tgt) continue;
      for (int f : base->hom(mo.src, k))
        for (int g : base->hom(k, mo.tgt))
          if (!base->is_identity(f) && !base->is_identity(g) &&
              base->compose(g, f) == m)
            for (int x = 0; x < d.sizes[mo.src]; ++x)
              d.transports[m][x] = d.transports[g][d.transports[f][x]];
    }
  }
  return d;
}

std::vector<std::vector<int>> set_diagram_limit(const SetDiagram& d) {
  const int n = d.base->num_objects();
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  std::function<void(int)> rec = [&](int o) {
    if (o == n) {
      for (int m = 0; m < d.base->num_morphisms(); ++m) {
        const auto& mo = d.base->morphism(m);
        if (d.transports[m][cur[mo.src]] != cur[mo.tgt]) return;
      }
      out.push_back(cur);
      return;
    }
    for (cur[o] = 0; cur[o] < d.sizes[o]; ++cur[o]) rec(o + 1);
  };
  rec(0);
  return out;
}

pat::Pattern segal_pattern(cat::NerveComplex& fin_nerve, int max_n) {
  pat::Pattern P;
  P.base = sset::MarkedComplex::sharp(fin_nerve.complex());
  P.triangles.all = true;
  const auto& fs = *fin_nerve.category;
  for (int n = 0; n <= max_n; ++n) {
    auto shape = std::make_shared<const sset::CellComplex>(
        sset::discrete_shape(n));
    auto cone = sset::cone(shape, true, std::max(n > 0 ? 2 : 1, 1));
    sset::ComplexMap m;
    m.src = cone.complex();
    m.tgt = fin_nerve.complex();
    m.assign.resize(std::max(cone.complex()->top_dim() + 1, 1));
    m.assign[0].resize(cone.complex()->size(0));
    for (int v = 0; v < cone.complex()->size(0); ++v)
      m.assign[0][v] = fin_nerve.vertex_of_object(
          v == cone.cone_vertex ? n : 1);
    if (cone.complex()->top_dim() >= 1) {
      m.assign[1].resize(cone.complex()->size(1));
      for (int e = 0; e < cone.complex()->size(1); ++e) {
        int leaf = cone.complex()->cell(1, e).faces[0].nd_id;
        // leaf index within the discrete shape
        int li = cone.j.right_part(0, leaf).nd_id;
        int rho = cat::fin_star_rho(fs, n, li + 1);
        m.assign[1][e] = fin_nerve.ref_of_chain({rho});
      }
    }
    pat::Diagram d;
    d.shape = shape;
    d.cone = cone;
    d.map = std::move(m);
    P.diagrams.push_back(std::move(d));
  }
  P.validate();
  return P;
}

pat::PatternedObject segal_object(const cat::CatValuedFunctor& F,
                                  cat::NerveComplex& base_nerve, int depth) {
  auto mg = cat::marked_grothendieck_nerve(F, base_nerve, depth);
  pat::PatternedObject obj;
  obj.total = mg.marked;
  obj.projection = mg.projection;
  return obj;
}

}  // namespace patfib::corpus
