#include "doctest.h"

#include "patfib/coherent.hpp"
#include "patfib/corpus.hpp"

using namespace patfib;
using namespace patfib::coh;
using namespace patfib::cat;
using sset::ComplexMap;
using sset::SimplexRef;

TEST_CASE("interval poset combinatorics") {
  // |P_max i| = 2^i  [DERIVED: subset enumeration]
  for (int i = 0; i <= 4; ++i)
    CHECK(static_cast<int>(p_max_elements(i).size()) == (1 << i));
  // |P_{i,j}| = 2^{j-i-1} for j > i
  CHECK(p_interval_elements(0, 2).size() == 2);  // {0,2}, {0,1,2}
  CHECK(p_interval_elements(0, 4).size() == 8);
  CHECK(p_interval_elements(1, 1).size() == 1);

  auto ps = psi(2);
  // Psi(0) = point.
  CHECK(ps.psi[0].complex()->size(0) == 1);
  CHECK(ps.psi[0].complex()->top_dim() == 0);
  // Psi(2) has 4 vertices and is the nerve of the square poset (a 2-cube).
  CHECK(ps.psi[2].complex()->size(0) == 4);
  CHECK(ps.psi[2].complex()->size(1) == 5);
  CHECK(ps.psi[2].complex()->size(2) == 2);
  ps.psi[2].complex()->validate();
}

TEST_CASE("direct images and chi") {
  // u = d^0 : [1] -> [2]: image of {0,1} in P_max 1 is {1,2}.
  std::vector<int> d0{1, 2};
  CHECK(direct_image_mask(0b11, d0) == 0b110);
  // u = s^0 : [2] -> [1]: image of {0,1,2} is {0,1}.
  std::vector<int> s0{0, 0, 1};
  CHECK(direct_image_mask(0b111, s0) == 0b11);

  // chi at level 1: {1} |-> 1, {0,1} |-> 0.
  CHECK(chi_min_tuple({0b10}) == std::vector<int>{1});
  CHECK(chi_min_tuple({0b11}) == std::vector<int>{0});
  // chain {0,1,2} > {1,2} > {2} |-> the 2-simplex (0,1,2).
  CHECK(chi_min_tuple({0b111, 0b110, 0b100}) == std::vector<int>{0, 1, 2});
}

TEST_CASE("psi restriction functoriality (exhaustive, m,n <= 3)") {
  // Direct image along v o u equals direct image along u then v.
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      // enumerate monotone u : [m] -> [n]
      std::vector<std::vector<int>> us;
      std::vector<int> cur(m + 1, 0);
      std::function<void(int)> gen = [&](int pos) {
        if (pos == m + 1) {
          us.push_back(cur);
          return;
        }
        for (int v = pos == 0 ? 0 : cur[pos - 1]; v <= n; ++v) {
          cur[pos] = v;
          gen(pos + 1);
        }
      };
      gen(0);
      for (auto& u : us)
        for (int k = 0; k <= 3; ++k) {
          // v : [n] -> [k]
          std::vector<std::vector<int>> vs;
          std::vector<int> cv(n + 1, 0);
          std::function<void(int)> genv = [&](int pos) {
            if (pos == n + 1) {
              vs.push_back(cv);
              return;
            }
            for (int w = pos == 0 ? 0 : cv[pos - 1]; w <= k; ++w) {
              cv[pos] = w;
              genv(pos + 1);
            }
          };
          genv(0);
          for (auto& v : vs) {
            std::vector<int> vu(m + 1);
            for (int t = 0; t <= m; ++t) vu[t] = v[u[t]];
            for (int mask = 1; mask < (1 << (m + 1)); ++mask)
              CHECK(direct_image_mask(mask, vu) ==
                    direct_image_mask(direct_image_mask(mask, u), v));
          }
        }
    }
}

TEST_CASE("unstraightening of the constant point functor") {
  auto base = poset_category(2);
  auto bn = nerve(base, 3);
  auto pt = std::make_shared<const sset::CellComplex>(sset::simplex_shape(0));
  auto F = constant_functor(base, sset::MarkedComplex::sharp(pt));
  F.validate();
  auto un = unstraighten_over_nerve(F, 3, bn);
  un.complex()->validate();
  for (int d = 0; d <= 3; ++d)
    CHECK(un.complex()->size(d) == bn.complex()->size(d));
  un.projection().validate();
}

TEST_CASE("unstraightening of the monoid functor") {
  auto fs = fin_star(2);
  auto bn = nerve(fs, 2);
  auto M = corpus::segal_monoid_functor(fs, 2, 2);
  auto NF = to_complex_functor(M, 2);
  NF.functor.validate();
  auto un = unstraighten_over_nerve(NF.functor, 2, bn);
  un.complex()->validate();
  un.projection().validate();
  // Vertices are pairs (s, v in F(s)): 1 + 2 + 4 = 7.
  CHECK(un.complex()->size(0) == 7);
  // Edge and 2-cell counts match the Grothendieck nerve.
  auto bn2 = nerve(fs, 2);
  auto mg = marked_grothendieck_nerve(M, bn2, 2);
  CHECK(un.complex()->size(1) == mg.total_nerve.complex()->size(1));
  CHECK(un.complex()->size(2) == mg.total_nerve.complex()->size(2));
  // Discrete fibers: every edge marked.
  CHECK(static_cast<int>(un.marked().marked.size()) == un.complex()->size(1));
}

TEST_CASE("relative nerve basics") {
  // Base [0]: relative nerve = the fiber.
  auto b0 = poset_category(0);
  auto bn0 = nerve(b0, 3);
  auto J = iso_pair_category();
  auto nj = nerve(J, 3);
  ComplexFunctor F;
  F.base = b0;
  F.fibers = {sset::MarkedComplex::flat(nj.complex())};
  F.transports = {ComplexMap::identity(nj.complex())};
  auto rn = relative_nerve(F, 3, bn0);
  rn.complex()->validate();
  for (int d = 0; d <= 3; ++d)
    CHECK(rn.complex()->size(d) == nj.complex()->size(d));

  // N(int F) = int (N o F) for the Z/2 monoid functor: cell counts agree.
  auto fs = fin_star(2);
  auto bn = nerve(fs, 3);
  auto M = corpus::segal_monoid_functor(fs, 2, 2);
  auto NF = to_complex_functor(M, 3);
  auto rn2 = relative_nerve(NF.functor, 3, bn);
  rn2.complex()->validate();
  auto bn2 = nerve(fs, 3);
  auto mg = marked_grothendieck_nerve(M, bn2, 3);
  for (int d = 0; d <= 3; ++d)
    CHECK(rn2.complex()->size(d) == mg.total_nerve.complex()->size(d));
  CHECK(rn2.marked().marked.size() == mg.marked.marked.size());
}

TEST_CASE("relative nerve comparison map") {
  auto fs = fin_star(2);
  auto bn = nerve(fs, 2);
  auto M = corpus::segal_monoid_functor(fs, 2, 2);
  auto NF = to_complex_functor(M, 2);
  auto un = unstraighten_over_nerve(NF.functor, 2, bn);
  auto rn = relative_nerve(NF.functor, 2, bn);
  auto cmp = relnerve_comparison(rn, un);
  cmp.validate();
  // Bijective on vertices and edges (and marked edges).
  std::set<SimplexRef> v0, v1;
  for (auto& r : cmp.assign[0]) v0.insert(r);
  for (auto& r : cmp.assign[1]) v1.insert(r);
  CHECK(static_cast<int>(v0.size()) == rn.complex()->size(0));
  CHECK(static_cast<int>(v1.size()) == rn.complex()->size(1));
  CHECK(un.complex()->size(0) == rn.complex()->size(0));
  CHECK(un.complex()->size(1) == rn.complex()->size(1));
  for (int e = 0; e < rn.complex()->size(1); ++e)
    CHECK(rn.marked().marked.count(e) ==
          un.marked().marked.count(cmp.at(1, e).nd_id));
}

TEST_CASE("constant functor comparison is an isomorphism") {
  auto base = poset_category(1);
  auto bn = nerve(base, 3);
  auto pt = std::make_shared<const sset::CellComplex>(sset::simplex_shape(0));
  auto F = constant_functor(base, sset::MarkedComplex::sharp(pt));
  auto un = unstraighten_over_nerve(F, 3, bn);
  auto rn = relative_nerve(F, 3, bn);
  auto cmp = relnerve_comparison(rn, un);
  cmp.validate();
  for (int d = 0; d <= 3; ++d)
    CHECK(rn.complex()->size(d) == un.complex()->size(d));
  for (int d = 0; d <= rn.complex()->top_dim(); ++d) {
    std::set<SimplexRef> im;
    for (auto& r : cmp.assign[d]) {
      CHECK(!r.is_degenerate());
      im.insert(r);
    }
    CHECK(static_cast<int>(im.size()) == un.complex()->size(d));
  }
}

TEST_CASE("grothendieck comparison isomorphism") {
  auto fs = fin_star(2);
  auto bn = nerve(fs, 2);
  auto M = corpus::segal_monoid_functor(fs, 2, 2);
  auto NF = to_complex_functor(M, 2);
  auto un = unstraighten_over_nerve(NF.functor, 2, bn);
  auto cmp = groth_comparison_iso(M, NF, un, 2);
  CHECK(cmp.mutually_inverse);
  CHECK(cmp.markings_match);
  cmp.phi.validate();
  cmp.psi.validate();

  // Terminal fibers: both maps are the identity of nerve(base).
  auto term = terminal_category();
  CatValuedFunctor T;
  T.base = poset_category(1);
  T.fibers = {term, term};
  for (int m = 0; m < T.base->num_morphisms(); ++m) {
    CatFunctor t;
    t.src = term;
    t.tgt = term;
    t.obj_map = {0};
    t.mor_map = {0};
    T.transports.push_back(t);
  }
  T.markings = {{0}, {0}};
  auto bt = nerve(T.base, 3);
  auto NT = to_complex_functor(T, 3);
  auto unt = unstraighten_over_nerve(NT.functor, 3, bt);
  auto cmpt = groth_comparison_iso(T, NT, unt, 3);
  CHECK(cmpt.mutually_inverse);
  CHECK(cmpt.markings_match);
}

TEST_CASE("grothendieck comparison on seeded random functors") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto F = corpus::random_cat_valued_functor(
        seed, corpus::RandomFunctorOptions{});
    auto bn = nerve(F.base, 2);
    auto NF = to_complex_functor(F, 2);
    auto un = unstraighten_over_nerve(NF.functor, 2, bn);
    auto cmp = groth_comparison_iso(F, NF, un, 2);
    CHECK(cmp.mutually_inverse);
    CHECK(cmp.markings_match);
  }
}

TEST_CASE("fiber transport") {
  auto fs = fin_star(2);
  auto bn = nerve(fs, 2);
  auto M = corpus::segal_monoid_functor(fs, 2, 2);
  auto NF = to_complex_functor(M, 2);
  auto un = unstraighten_over_nerve(NF.functor, 2, bn);

  // f = rho^1 : <2> -> <1>; the transport is the set map F(rho^1).
  int rho1 = fin_star_rho(*fs, 2, 1);
  auto tr = fiber_transport(un, rho1, 2);
  tr.homotopy.validate();
  tr.transport.validate();
  // Vertices of the source fiber = M^2; transport matches the set map.
  CHECK(tr.fiber_src.complex()->size(0) == 4);
  CHECK(tr.fiber_tgt.complex()->size(0) == 2);
  for (int v = 0; v < 4; ++v) {
    auto [xv, cv] = tr.fiber_src.components(0, v);
    SimplexRef p0 = un.alpha(0, xv.nd_id, 0)
                        .push(un.psis().psi[0].ref_of_weak_chain({1}));
    int fiber_obj = p0.nd_id;
    auto [xw, cw] =
        tr.fiber_tgt.components(0, tr.transport.at(0, v).nd_id);
    SimplexRef p1 = un.alpha(0, xw.nd_id, 0)
                        .push(un.psis().psi[0].ref_of_weak_chain({1}));
    CHECK(p1.nd_id == M.transports[rho1].obj_map[fiber_obj]);
  }

  // h|{0} is the fiber inclusion.
  for (int v = 0; v < tr.fiber_src.complex()->size(0); ++v) {
    SimplexRef vertex0 = tr.cylinder.locate(SimplexRef{0, v, {}},
                                            SimplexRef{0, 0, {}});
    auto [xv, cv] = tr.fiber_src.components(0, v);
    CHECK(tr.homotopy.push(vertex0) == xv);
  }

  // transport along an identity is the identity (cellwise; the two fiber
  // pullbacks are separate instances of the same complex).
  auto tid = fiber_transport(un, fs->identity(1), 2);
  for (int d = 0; d <= tid.fiber_src.complex()->top_dim(); ++d)
    for (int i = 0; i < tid.fiber_src.complex()->size(d); ++i)
      CHECK(tid.transport.at(d, i) == SimplexRef{d, i, {}});
}

TEST_CASE("left adjoint of the relative nerve") {
  auto C = poset_category(1);
  auto bn = nerve(C, 3);
  // X = nerve(C) itself: L(X)(c) = nerve(C_{/c}).
  auto X = sset::MarkedComplex::sharp(bn.complex());
  auto idm = ComplexMap::identity(bn.complex());
  auto L = relnerve_left_adjoint(X, idm, bn, 3);
  L.functor.validate();
  // C_{/0} = [0], C_{/1} = [1].
  CHECK(L.functor.fibers[0].complex->size(0) == 1);
  CHECK(L.functor.fibers[1].complex->size(0) == 2);
  CHECK(L.functor.fibers[1].complex->size(1) == 1);

  // C = [0]: L(X) = X.
  auto C0 = poset_category(0);
  auto bn0 = nerve(C0, 3);
  auto J = iso_pair_category();
  auto nj = nerve(J, 3);
  sset::ComplexMap top;
  top.src = nj.complex();
  top.tgt = bn0.complex();
  top.assign.resize(nj.complex()->top_dim() + 1);
  for (int d = 0; d <= nj.complex()->top_dim(); ++d) {
    top.assign[d].resize(nj.complex()->size(d));
    std::vector<int> w;
    for (int j = d - 1; j >= 0; --j) w.push_back(j);
    for (int i = 0; i < nj.complex()->size(d); ++i)
      top.assign[d][i] = SimplexRef{0, 0, w};
  }
  auto L0 = relnerve_left_adjoint(sset::MarkedComplex::flat(nj.complex()), top,
                                  bn0, 3);
  for (int d = 0; d <= 3; ++d)
    CHECK(L0.functor.fibers[0].complex->size(d) == nj.complex()->size(d));
}

TEST_CASE("left adjoint hom-count adjunction") {
  // |Hom(L(sigma), F)| = |Hom(sigma, int F)| for simplices of N(C), n <= 2.
  auto C = poset_category(1);
  auto bn = nerve(C, 3);
  // F: fibers [1] at 0, [1] at 1, identity transport.
  auto f1 = poset_category(1);
  auto nf1 = nerve(f1, 3);
  ComplexFunctor F;
  F.base = C;
  F.fibers = {sset::MarkedComplex::flat(nf1.complex()),
              sset::MarkedComplex::flat(nf1.complex())};
  for (int m = 0; m < C->num_morphisms(); ++m)
    F.transports.push_back(ComplexMap::identity(nf1.complex()));
  F.validate();
  auto rn = relative_nerve(F, 3, bn);

  for (int n = 0; n <= 2; ++n) {
    for (const auto& sigma : refs_of_dim(*bn.complex(), n)) {
      // RHS: simplices of int F over sigma.
      long long rhs = 0;
      for (const auto& z : refs_of_dim(*rn.complex(), n))
        if (rn.projection().push(z) == sigma) ++rhs;
      // LHS: natural transformations L(sigma) -> F.
      auto dn = std::make_shared<const sset::CellComplex>(sset::simplex_shape(n));
      auto smap = sset::map_from_simplex(dn, bn.complex(), sigma);
      auto L = relnerve_left_adjoint(sset::MarkedComplex::flat(dn), smap, bn, 3);
      // enumerate per-object maps, filter naturality
      sset::SearchProblem p0;
      p0.src = L.functor.fibers[0].complex;
      p0.tgt = F.fibers[0].complex;
      auto m0 = enumerate_maps(p0);
      sset::SearchProblem p1;
      p1.src = L.functor.fibers[1].complex;
      p1.tgt = F.fibers[1].complex;
      auto m1 = enumerate_maps(p1);
      int nonid = -1;
      for (int m = 0; m < C->num_morphisms(); ++m)
        if (!C->is_identity(m)) nonid = m;
      long long lhs = 0;
      for (auto& a : m0)
        for (auto& b : m1)
          if (compose(F.transports[nonid], a) ==
              compose(b, L.functor.transports[nonid]))
            ++lhs;
      CHECK(lhs == rhs);
    }
  }
}
