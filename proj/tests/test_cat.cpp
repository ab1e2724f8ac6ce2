#include "doctest.h"

#include "patfib/cat.hpp"
#include "patfib/corpus.hpp"
#include "patfib/homotopy.hpp"

using namespace patfib;
using namespace patfib::cat;
using sset::SimplexRef;

namespace {
// Oracle: pointed maps <m> -> <n> number (n+1)^m.
long long pointed_map_count(int m, int n) {
  long long r = 1;
  for (int i = 0; i < m; ++i) r *= (n + 1);
  return r;
}
}  // namespace

TEST_CASE("validate_category") {
  auto t = terminal_category();
  t->validate();
  CHECK(t->num_objects() == 1);
  CHECK(t->num_morphisms() == 1);

  auto fs = fin_star(2);
  fs->validate();
  CHECK(fs->hom(2, 1).size() == 4);
  CHECK(fs->hom(2, 2).size() == 9);
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      CHECK(static_cast<long long>(fs->hom(m, n).size()) ==
            pointed_map_count(m, n));

  std::vector<Morphism> ms{{0, 0, "id"}, {0, 0, "x"}};
  std::vector<std::vector<int>> comp{{0, 1}, {1, 0}};  // x o x = id : Z/2
  FinCategory ok({"*"}, ms, {0}, comp);
  ok.validate();
  // A table where (xx)x != x(xx); the error names the triple.
  std::vector<Morphism> ms3{{0, 0, "id"}, {0, 0, "x"}, {0, 0, "y"}};
  std::vector<std::vector<int>> bad{{0, 1, 2}, {1, 2, 0}, {2, 1, 2}};
  FinCategory b({"*"}, ms3, {0}, bad);
  CHECK_THROWS_WITH_AS(b.validate(), doctest::Contains("associativity"),
                       Error);
}

TEST_CASE("nerve basics") {
  auto p1 = poset_category(1);
  auto n1 = nerve(p1, 3);
  CHECK(n1.complex()->size(0) == 2);
  CHECK(n1.complex()->size(1) == 1);
  CHECK(n1.complex()->size(2) == 0);
  CHECK(n1.complex()->complete());
  n1.complex()->validate();

  auto csp = cospan_category();
  auto nc = nerve(csp, 3);
  CHECK(nc.complex()->size(0) == 3);
  CHECK(nc.complex()->size(1) == 2);
  CHECK(nc.complex()->size(2) == 0);
  CHECK(nc.complex()->complete());

  auto n2 = nerve(poset_category(2), 4);
  CHECK(n2.complex()->size(0) == 3);
  CHECK(n2.complex()->size(1) == 3);
  CHECK(n2.complex()->size(2) == 1);
  CHECK(n2.complex()->size(3) == 0);
  n2.complex()->validate();

  // [DERIVED] fin_star nerve edge count = non-identity morphisms.
  auto fs = fin_star(2);
  auto nf = nerve(fs, 3);
  CHECK(!nf.complex()->complete());
  CHECK(nf.complex()->size(0) == 3);
  int nonid = 0;
  for (int m = 0; m < fs->num_morphisms(); ++m)
    if (!fs->is_identity(m)) ++nonid;
  CHECK(nf.complex()->size(1) == nonid);
  CHECK(nf.complex()->size(1) == 20);
  nf.complex()->validate();
}

TEST_CASE("nerve chain round trip") {
  auto C = fin_star(2);
  auto N = nerve(C, 3);
  for (const auto& r : refs_of_dim(*N.complex(), 3)) {
    auto chain = N.chain_of(r);
    REQUIRE(chain.size() == 3);
    auto back = N.ref_of_chain(chain);
    CHECK(back == r);
  }
}

TEST_CASE("grothendieck") {
  auto base = poset_category(1);
  CatValuedFunctor F;
  F.base = base;
  auto term = terminal_category();
  F.fibers = {term, term};
  for (int m = 0; m < base->num_morphisms(); ++m) {
    CatFunctor t;
    t.src = term;
    t.tgt = term;
    t.obj_map = {0};
    t.mor_map = {0};
    F.transports.push_back(t);
  }
  F.validate();
  auto gr = grothendieck(F);
  gr.total->validate();
  CHECK(gr.total->num_objects() == base->num_objects());
  CHECK(gr.total->num_morphisms() == base->num_morphisms());

  CatValuedFunctor G;
  G.base = base;
  auto d2 = discrete_category(2);
  G.fibers = {d2, d2};
  for (int m = 0; m < base->num_morphisms(); ++m) {
    CatFunctor t;
    t.src = d2;
    t.tgt = d2;
    if (base->is_identity(m)) {
      t.obj_map = {0, 1};
      t.mor_map = {0, 1};
    } else {
      t.obj_map = {1, 0};
      t.mor_map = {1, 0};
    }
    G.transports.push_back(t);
  }
  G.validate();
  auto g2 = grothendieck(G);
  g2.total->validate();
  CHECK(g2.total->num_objects() == 4);
  int nonid = 0;
  for (int m = 0; m < g2.total->num_morphisms(); ++m)
    if (!g2.total->is_identity(m)) ++nonid;
  CHECK(nonid == 2);

  // monoid Z/2 over fin_star(2): |Ob| = 1 + 2 + 4.
  auto fs = fin_star(2);
  auto M = corpus::segal_monoid_functor(fs, 2, 2);
  M.validate();
  auto gm = grothendieck(M);
  gm.total->validate();
  CHECK(gm.total->num_objects() == 7);
}

TEST_CASE("marked grothendieck nerve") {
  auto fs = fin_star(2);
  auto M = corpus::segal_monoid_functor(fs, 2, 2);
  auto bn = nerve(fs, 3);
  auto mg = marked_grothendieck_nerve(M, bn, 3);
  mg.projection.validate();
  // Discrete fibers: every edge has g an identity, hence marked.
  CHECK(static_cast<int>(mg.marked.marked.size()) ==
        mg.total_nerve.complex()->size(1));
}

TEST_CASE("edge equivalences via the homotopy category") {
  auto J = iso_pair_category();
  auto nj = nerve(J, 3);
  auto ho = HoCategory::build(*nj.complex());
  for (int e = 0; e < nj.complex()->size(1); ++e)
    CHECK(edge_is_equivalence_unchecked(ho, SimplexRef{1, e, {}}));

  auto n1 = nerve(poset_category(1), 3);
  auto ho1 = HoCategory::build(*n1.complex());
  CHECK_FALSE(edge_is_equivalence_unchecked(ho1, SimplexRef{1, 0, {}}));
  CHECK(edge_is_equivalence_unchecked(
      ho1, sset::apply_degen(SimplexRef{0, 0, {}}, 0)));

  CHECK(edge_is_equivalence(nj.complex(), SimplexRef{1, 0, {}}, 3));
  CHECK_FALSE(edge_is_equivalence(n1.complex(), SimplexRef{1, 0, {}}, 3));
}

TEST_CASE("nerve recognition and categorical equivalence") {
  auto n2 = nerve(poset_category(2), 4);
  auto rec = recognize_nerve(n2.complex());
  REQUIRE(rec.has_value());
  CHECK(rec->category->num_objects() == 3);
  CHECK(rec->category->num_morphisms() == 6);

  EquivalenceOptions opts;
  auto idm = sset::ComplexMap::identity(n2.complex());
  auto r = is_categorical_equivalence(idm, opts);
  CHECK(r.verdict == Verdict::True);

  auto J = iso_pair_category();
  auto nj = nerve(J, 4);
  CatFunctor swp;
  swp.src = J;
  swp.tgt = J;
  swp.obj_map = {1, 0};
  swp.mor_map = {1, 0, 3, 2};
  swp.validate();
  auto nmap = nerve_map(swp, nj, nj);
  auto r2 = is_categorical_equivalence(nmap, opts);
  CHECK(r2.verdict == Verdict::True);

  // N([1]) -> N([0]): fails full faithfulness with a hom certificate.
  auto n1 = nerve(poset_category(1), 3);
  auto n0 = nerve(poset_category(0), 3);
  sset::ComplexMap col;
  col.src = n1.complex();
  col.tgt = n0.complex();
  col.assign.resize(2);
  col.assign[0] = {SimplexRef{0, 0, {}}, SimplexRef{0, 0, {}}};
  col.assign[1] = {sset::apply_degen(SimplexRef{0, 0, {}}, 0)};
  col.validate();
  auto r3 = is_categorical_equivalence(col, opts);
  CHECK(r3.verdict == Verdict::False);
  CHECK(r3.certificate.witness_hom_pair.has_value());

  // Certificate strategy: N(J) -> point with the obvious quasi-inverse.
  auto pt = nerve(poset_category(0), 3);
  sset::ComplexMap to_pt;
  to_pt.src = nj.complex();
  to_pt.tgt = pt.complex();
  to_pt.assign.resize(nj.complex()->top_dim() + 1);
  for (int d = 0; d <= nj.complex()->top_dim(); ++d) {
    to_pt.assign[d].resize(nj.complex()->size(d));
    std::vector<int> w;
    for (int j = d - 1; j >= 0; --j) w.push_back(j);
    for (int i = 0; i < nj.complex()->size(d); ++i)
      to_pt.assign[d][i] = SimplexRef{0, 0, w};
  }
  to_pt.validate();
  sset::ComplexMap back;
  back.src = pt.complex();
  back.tgt = nj.complex();
  back.assign.assign(1, {nj.vertex_of_object(0)});
  EquivalenceOptions copts;
  copts.strategy = EquivalenceStrategy::Certificate;
  copts.quasi_inverse = &back;
  auto r4 = is_categorical_equivalence(to_pt, copts);
  CHECK(r4.verdict == Verdict::True);
}

TEST_CASE("J-homotopy invariance of edge verdicts") {
  auto J = iso_pair_category();
  auto nj = nerve(J, 3);
  auto ho = HoCategory::build(*nj.complex());
  auto edges = refs_of_dim(*nj.complex(), 1);
  for (const auto& a : edges)
    for (const auto& b : edges)
      if (edges_homotopic(ho, a, b))
        CHECK(edge_is_equivalence_unchecked(ho, a) ==
              edge_is_equivalence_unchecked(ho, b));
}
