#include "doctest.h"

#include "patfib/cat.hpp"
#include "patfib/corpus.hpp"
#include "patfib/lifting.hpp"

using namespace patfib;
using namespace patfib::lift;
using namespace patfib::cat;
using sset::CellComplex;
using sset::ComplexMap;
using sset::ComplexPtr;
using sset::SimplexRef;

namespace {
ComplexPtr mk(CellComplex c) {
  return std::make_shared<const CellComplex>(std::move(c));
}

ComplexMap to_point(ComplexPtr X, ComplexPtr pt) {
  ComplexMap f;
  f.src = X;
  f.tgt = pt;
  f.assign.resize(std::max(X->top_dim() + 1, 1));
  for (int d = 0; d <= X->top_dim(); ++d) {
    f.assign[d].resize(X->size(d));
    std::vector<int> w;
    for (int j = d - 1; j >= 0; --j) w.push_back(j);
    for (int i = 0; i < X->size(d); ++i) f.assign[d][i] = SimplexRef{0, 0, w};
  }
  return f;
}

// Cone diagram into the nerve of a poset: apex object + object per K-vertex.
ComplexMap cone_diagram(const sset::ConeComplex& cone, NerveComplex& N,
                        const std::vector<int>& vertex_objs, int apex_obj) {
  const FinCategory& C = *N.category;
  ComplexMap f;
  f.src = cone.complex();
  f.tgt = N.complex();
  auto& cc = *cone.complex();
  f.assign.resize(cc.top_dim() + 1);
  f.assign[0].resize(cc.size(0));
  int base_at = 0;
  for (int v = 0; v < cc.size(0); ++v) {
    int obj = v == cone.cone_vertex ? apex_obj : vertex_objs[base_at++];
    f.assign[0][v] = N.vertex_of_object(obj);
  }
  for (int d = 1; d <= cc.top_dim(); ++d) {
    f.assign[d].resize(cc.size(d));
    for (int i = 0; i < cc.size(d); ++i) {
      std::vector<int> chain;
      for (int k = 0; k + 1 <= d; ++k) {
        SimplexRef edge = sset::act(cc, SimplexRef{d, i, {}}, {k, k + 1});
        int s = N.vertex_object(f.push(sset::act(cc, edge, {0})).nd_id);
        int t = N.vertex_object(f.push(sset::act(cc, edge, {1})).nd_id);
        chain.push_back(C.hom(s, t).at(0));
      }
      f.assign[d][i] = N.ref_of_chain(chain);
    }
  }
  f.validate();
  return f;
}
}  // namespace

TEST_CASE("identity map passes every family") {
  auto d2 = mk(sset::simplex_shape(2));
  auto idm = ComplexMap::identity(d2);
  RlpOptions opts;
  opts.depth = 3;
  CHECK(rlp_check(idm, Family::Inner, opts).verdict == LiftVerdict::Filled);
  CHECK(rlp_check(idm, Family::Left, opts).verdict == LiftVerdict::Filled);
  CHECK(rlp_check(idm, Family::Trivial, opts).verdict == LiftVerdict::Filled);
}

TEST_CASE("Delta^2 -> Delta^0 is not a trivial fibration; witness re-verifies") {
  auto d2 = mk(sset::simplex_shape(2));
  auto pt = mk(sset::simplex_shape(0));
  auto p = to_point(d2, pt);
  RlpOptions opts;
  opts.depth = 1;
  auto rep = rlp_check(p, Family::Trivial, opts);
  CHECK(rep.verdict == LiftVerdict::Unfillable);
  REQUIRE(rep.witness.has_value());
  CHECK(verify_unfillable(p, *rep.witness));
  CHECK(rep.witness->generator == "boundary(1)");
}

TEST_CASE("nerves fill inner horns uniquely") {
  auto fs = fin_star(2);
  auto N = nerve(fs, 4);
  auto pt = mk(sset::simplex_shape(0));
  auto p = to_point(N.complex(), pt);
  RlpOptions opts;
  opts.depth = 3;
  opts.require_unique = true;
  auto rep = rlp_check(p, Family::Inner, opts);
  CHECK(rep.verdict == LiftVerdict::Filled);
  CHECK(rep.unique);
  CHECK(rep.squares > 0);

  auto horn = mk(sset::horn_shape(2, 0));
  auto ph = to_point(horn, pt);
  RlpOptions o2;
  o2.depth = 2;
  auto rep2 = rlp_check(ph, Family::Inner, o2);
  CHECK(rep2.verdict == LiftVerdict::Filled);  // vacuous: no inner-horn squares
}

TEST_CASE("filled certificates recompose") {
  auto d2 = mk(sset::simplex_shape(2));
  auto pt = mk(sset::simplex_shape(0));
  auto p = to_point(d2, pt);
  Square sq;
  sq.generator = "horn(2,1)";
  sq.A = mk(sset::horn_shape(2, 1));
  sq.B = mk(sset::simplex_shape(2));
  ComplexMap a;
  a.src = sq.A;
  a.tgt = d2;
  a.assign.resize(2);
  a.assign[0] = {SimplexRef{0, 0, {}}, SimplexRef{0, 1, {}}, SimplexRef{0, 2, {}}};
  REQUIRE(sq.A->cell(1, 0).label == "0,1");
  REQUIRE(sq.A->cell(1, 1).label == "1,2");
  a.assign[1] = {SimplexRef{1, 0, {}}, SimplexRef{1, 2, {}}};
  a.validate();
  sq.a = a;
  sq.b = to_point(sq.B, pt);
  auto cert = solve_square(p, sq);
  REQUIRE(cert.verdict == LiftVerdict::Filled);
  CHECK(verify_filled(p, sq, *cert.filler));
}

TEST_CASE("cocartesian edges") {
  auto d1 = mk(sset::simplex_shape(1));
  auto idm = ComplexMap::identity(d1);
  CHECK(is_cocartesian_edge(idm, SimplexRef{1, 0, {}}, Locality::Global, 2) ==
        LiftVerdict::Filled);
  CHECK(is_cocartesian_edge(idm, SimplexRef{1, 0, {}}, Locality::Local, 2) ==
        LiftVerdict::Filled);

  auto pt = mk(sset::simplex_shape(0));
  auto p1 = to_point(d1, pt);
  CHECK(is_cocartesian_edge(p1, SimplexRef{1, 0, {}}, Locality::Global, 2) ==
        LiftVerdict::Unfillable);

  auto J = iso_pair_category();
  auto nj = nerve(J, 5);
  auto pj = to_point(nj.complex(), pt);
  SimplexRef dg = sset::apply_degen(SimplexRef{0, 0, {}}, 0);
  CHECK(is_cocartesian_edge(pj, dg, Locality::Global, 2) == LiftVerdict::Filled);
  CHECK(is_cocartesian_edge(pj, SimplexRef{1, 0, {}}, Locality::Global, 2) ==
        LiftVerdict::Filled);
}

TEST_CASE("grothendieck edges: cocartesian iff fiber morphism invertible") {
  auto base = poset_category(1);
  auto f1 = poset_category(1);
  CatValuedFunctor F;
  F.base = base;
  F.fibers = {f1, f1};
  for (int m = 0; m < base->num_morphisms(); ++m) {
    CatFunctor t;
    t.src = f1;
    t.tgt = f1;
    t.obj_map = {0, 1};
    t.mor_map.resize(f1->num_morphisms());
    for (int i = 0; i < f1->num_morphisms(); ++i) t.mor_map[i] = i;
    F.transports.push_back(t);
  }
  std::set<int> mk0;
  for (int o = 0; o < f1->num_objects(); ++o) mk0.insert(f1->identity(o));
  F.markings = {mk0, mk0};
  F.validate();

  auto bn = nerve(base, 4);
  auto mg = marked_grothendieck_nerve(F, bn, 4);
  const auto& gr = mg.gr;
  for (int e = 0; e < mg.total_nerve.complex()->size(1); ++e) {
    auto chain = mg.total_nerve.chain_of(SimplexRef{1, e, {}});
    auto [bf, g] = gr.morphism_pairs[chain[0]];
    int cp = F.base->morphism(bf).tgt;
    bool invertible = F.fibers[cp]->is_invertible(g);
    auto v = is_cocartesian_edge(mg.projection, SimplexRef{1, e, {}},
                                 Locality::Local, 2);
    REQUIRE(v != LiftVerdict::BoundExceeded);
    CHECK((v == LiftVerdict::Filled) == invertible);
    auto vg = is_cocartesian_edge(mg.projection, SimplexRef{1, e, {}},
                                  Locality::Global, 2);
    REQUIRE(vg != LiftVerdict::BoundExceeded);
    CHECK((vg == LiftVerdict::Filled) == invertible);
  }
}

TEST_CASE("p-limit diagrams: meets are limits, non-meets are not") {
  // Square poset m <= a, b <= c: the cone from m over the cospan is a limit.
  std::vector<std::vector<bool>> leq(4, std::vector<bool>(4, false));
  for (int i = 0; i < 4; ++i) leq[i][i] = true;
  leq[0][1] = leq[0][2] = leq[0][3] = leq[1][3] = leq[2][3] = true;
  auto sq = poset_from_leq(leq, {"m", "a", "b", "c"});
  auto nsq = nerve(sq, 4);
  auto pt = mk(sset::simplex_shape(0));
  auto p = to_point(nsq.complex(), pt);

  auto K = mk(sset::cospan_shape());
  auto cone = sset::cone(K, true, 3);
  auto fbar = cone_diagram(cone, nsq, {1, 2, 3}, 0);
  CHECK(is_p_limit_diagram(p, cone, fbar, 2) == LiftVerdict::Filled);
  CHECK(is_p_limit_diagram_slices(p, cone, fbar, 2) == LiftVerdict::Filled);

  // Add a worse candidate w <= m: the cone from w is not a limit cone.
  std::vector<std::vector<bool>> leq2(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i) leq2[i][i] = true;
  leq2[0][1] = leq2[0][2] = leq2[0][3] = true;
  leq2[1][3] = leq2[2][3] = true;
  leq2[4][0] = leq2[4][1] = leq2[4][2] = leq2[4][3] = true;
  auto sq2 = poset_from_leq(leq2, {"m", "a", "b", "c", "w"});
  auto nsq2 = nerve(sq2, 4);
  auto p2 = to_point(nsq2.complex(), pt);
  auto cone2 = sset::cone(K, true, 3);
  auto fbar2 = cone_diagram(cone2, nsq2, {1, 2, 3}, 4);
  CHECK(is_p_limit_diagram(p2, cone2, fbar2, 2) == LiftVerdict::Unfillable);
  CHECK(is_p_limit_diagram_slices(p2, cone2, fbar2, 2) ==
        LiftVerdict::Unfillable);
}

TEST_CASE("find_section") {
  auto d1 = mk(sset::simplex_shape(1));
  auto idm = ComplexMap::identity(d1);
  MarkedMap p;
  p.src = sset::MarkedComplex::sharp(d1);
  p.tgt = sset::MarkedComplex::sharp(d1);
  p.map = idm;
  auto s = find_section(p);
  CHECK(compose(p.map, s.map) == ComplexMap::identity(d1));

  auto two = mk(sset::discrete_shape(2));
  auto pt = mk(sset::simplex_shape(0));
  MarkedMap q;
  q.src = sset::MarkedComplex::sharp(two);
  q.tgt = sset::MarkedComplex::sharp(pt);
  q.map = to_point(two, pt);
  auto s2 = find_section(q);
  CHECK(compose(q.map, s2.map) == ComplexMap::identity(pt));
  CHECK(s2.map.at(0, 0) == SimplexRef{0, 0, {}});
}

TEST_CASE("marked left fibration classification") {
  auto n1 = nerve(poset_category(1), 3);
  MarkedMap p;
  p.src = sset::MarkedComplex::sharp(n1.complex());
  p.tgt = sset::MarkedComplex::sharp(n1.complex());
  p.map = ComplexMap::identity(n1.complex());
  TwoCellSet T;
  auto rep = classify_marked_left(p, T, 2);
  CHECK(rep.verdict == Verdict::True);

  MarkedMap p2 = p;
  p2.src = sset::MarkedComplex::flat(n1.complex());
  auto rep2 = classify_marked_left(p2, T, 2);
  CHECK(rep2.verdict == Verdict::False);
}
