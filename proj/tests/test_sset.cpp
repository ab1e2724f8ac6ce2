#include "doctest.h"

#include <algorithm>
#include <set>

#include "patfib/map.hpp"
#include "patfib/ops.hpp"
#include "patfib/slice.hpp"
#include "patfib/sset.hpp"

using namespace patfib;
using namespace patfib::sset;

namespace {
ComplexPtr mk(CellComplex c) {
  return std::make_shared<const CellComplex>(std::move(c));
}

// Brute-force oracle: nondegenerate k-cells of Delta^n are the (k+1)-subsets.
long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
  return r;
}

// Oracle: jointly injective monotone surjection pairs [n] ->> [p] x [q],
// counted by brute force over step sequences.
long long count_shuffle_cells(int p, int q, int n) {
  long long total = 0;
  std::vector<std::pair<int, int>> cur{{0, 0}};
  std::function<void()> rec = [&]() {
    auto [a, b] = cur.back();
    if (static_cast<int>(cur.size()) == n + 1) {
      if (a == p && b == q) ++total;
      return;
    }
    if (a < p) { cur.push_back({a + 1, b}); rec(); cur.pop_back(); }
    if (b < q) { cur.push_back({a, b + 1}); rec(); cur.pop_back(); }
    if (a < p && b < q) { cur.push_back({a + 1, b + 1}); rec(); cur.pop_back(); }
  };
  rec();
  return total;
}
}  // namespace

TEST_CASE("standard shapes") {
  auto pt = simplex_shape(0);
  CHECK(pt.size(0) == 1);
  CHECK(pt.top_dim() == 0);
  pt.validate();

  auto h = horn_shape(2, 1);
  CHECK(h.size(0) == 3);
  CHECK(h.size(1) == 2);
  CHECK(h.size(2) == 0);
  h.validate();

  // [DERIVED] counts of the boundary of Delta^3 from subset enumeration.
  auto b = boundary_shape(3);
  for (int k = 0; k <= 2; ++k) CHECK(b.size(k) == binom(4, k + 1));
  CHECK(b.size(3) == 0);
  b.validate();

  auto d3 = simplex_shape(3);
  for (int k = 0; k <= 3; ++k) CHECK(d3.size(k) == binom(4, k + 1));
  d3.validate();

  CHECK_THROWS_AS(horn_shape(2, 3), Error);
}

TEST_CASE("word algebra basics") {
  // s1 s0 (v) = (v, [1,0])
  SimplexRef v{0, 0, {}};
  auto r = apply_degen(apply_degen(v, 0), 1);
  CHECK(r.word == std::vector<int>{1, 0});
  // s0 s0 = s1 s0
  auto r2 = apply_degen(apply_degen(v, 0), 0);
  CHECK(r2.word == std::vector<int>{1, 0});

  auto d1 = mk(simplex_shape(1));
  // constant edge at vertex 0
  SimplexRef c = apply_degen(SimplexRef{0, 0, {}}, 0);
  CHECK(c == SimplexRef{0, 0, {0}});
  // s0 d0 of the edge (0->1): d0 = vertex 1, s0 -> (1, [0])
  SimplexRef e{1, 0, {}};
  auto got = apply_degen(apply_face(*d1, e, 0), 0);
  CHECK(got.nd_dim == 0);
  CHECK(got.word == std::vector<int>{0});
  CHECK(shape_cell_vertices(*d1, 0, got.nd_id) == std::vector<int>{1});
}

TEST_CASE("act against vertex tuples on simplices") {
  auto d3 = mk(simplex_shape(3));
  auto top = SimplexRef{3, 0, {}};
  // act on top cell by an arbitrary monotone operator equals tuple composition
  std::vector<std::vector<int>> ops = {
      {0, 0, 1, 3}, {2}, {0, 3}, {1, 1, 1}, {0, 1, 2, 3}, {0, 0, 2, 2, 3, 3}};
  for (auto& f : ops) {
    auto r = act(*d3, top, f);
    CHECK(tuple_of_simplex_ref(*d3, r) == f);
  }
  // simplicial identities on random refs: d_i d_j = d_{j-1} d_i for i<j
  for (const auto& r : refs_of_dim(*d3, 3)) {
    for (int j = 1; j <= 3; ++j)
      for (int i = 0; i < j; ++i)
        CHECK(apply_face(*d3, apply_face(*d3, r, j), i) ==
              apply_face(*d3, apply_face(*d3, r, i), j - 1));
  }
}

TEST_CASE("refs_of_dim counts on a point") {
  auto pt = mk(simplex_shape(0));
  for (int m = 0; m <= 4; ++m) CHECK(refs_of_dim(*pt, m).size() == 1);
}

TEST_CASE("product counts") {
  auto d1 = mk(simplex_shape(1));
  auto d2 = mk(simplex_shape(2));
  auto d0 = mk(simplex_shape(0));

  auto p = product(d1, d1, 2);
  CHECK(p.complex()->size(0) == 4);
  CHECK(p.complex()->size(1) == 5);
  CHECK(p.complex()->size(2) == 2);
  CHECK(p.complex()->complete());
  p.complex()->validate();
  p.proj_left.validate();
  p.proj_right.validate();

  // [DERIVED]: 3-cells of Delta^1 x Delta^2 = (1,2)-shuffles.
  auto p12 = product(d1, d2, 3);
  CHECK(p12.complex()->size(3) == count_shuffle_cells(1, 2, 3));
  CHECK(p12.complex()->size(3) == 3);
  p12.complex()->validate();

  // unit law: Delta^0 x Y ~ Y
  auto pu = product(d0, d2, 2);
  CHECK(pu.complex()->size(0) == d2->size(0));
  CHECK(pu.complex()->size(1) == d2->size(1));
  CHECK(pu.complex()->size(2) == d2->size(2));
}

TEST_CASE("pullback examples") {
  auto d1 = mk(simplex_shape(1));
  auto horn = mk(horn_shape(2, 0));

  // pullback(id, id) = diagonal ~ X
  auto idm = ComplexMap::identity(d1);
  auto pb = fiber_product(idm, idm, 2);
  CHECK(pb.complex()->size(0) == 2);
  CHECK(pb.complex()->size(1) == 1);

  // map Lambda^2_0 -> Delta^1 sending 0,1 -> 0 and 2 -> 1.
  ComplexMap f;
  f.src = horn;
  f.tgt = d1;
  f.assign.resize(2);
  f.assign[0] = {SimplexRef{0, 0, {}}, SimplexRef{0, 0, {}}, SimplexRef{0, 1, {}}};
  // edges of the horn: (0,1) and (0,2) in label order
  REQUIRE(horn->cell(1, 0).label == "0,1");
  REQUIRE(horn->cell(1, 1).label == "0,2");
  f.assign[1] = {SimplexRef{0, 0, {0}}, SimplexRef{1, 0, {}}};
  f.validate();

  // Fiber over vertex 0: full preimage subcomplex on {0,1}, including the
  // collapsed edge 0->1 (its image is the degenerate edge at 0).
  auto fib0 = fiber_over_vertex(f, 0, 2);
  CHECK(fib0.complex()->size(0) == 2);
  CHECK(fib0.complex()->size(1) == 1);
  // Fiber over vertex 1 is the lone vertex 2.
  auto fib1 = fiber_over_vertex(f, 1, 2);
  CHECK(fib1.complex()->size(0) == 1);
  CHECK(fib1.complex()->size(1) == 0);
}

TEST_CASE("pullback universal property") {
  // Cone tests: maps T -> X, T -> Y commuting over S induce a unique T -> P.
  auto d1 = mk(simplex_shape(1));
  auto horn = mk(horn_shape(2, 0));
  ComplexMap f;
  f.src = horn;
  f.tgt = d1;
  f.assign.resize(2);
  f.assign[0] = {SimplexRef{0, 0, {}}, SimplexRef{0, 0, {}}, SimplexRef{0, 1, {}}};
  f.assign[1] = {SimplexRef{0, 0, {0}}, SimplexRef{1, 0, {}}};
  auto idm = ComplexMap::identity(d1);
  auto P = fiber_product(f, idm, 2);

  for (ComplexPtr T : {mk(simplex_shape(1)), mk(simplex_shape(0))}) {
    SearchProblem t1p;
    t1p.src = T;
    t1p.tgt = horn;
    auto t1s = enumerate_maps(t1p);
    for (auto& t1 : t1s) {
      ComplexMap t2 = compose(f, t1);  // forces commutativity over S with id
      // count maps u : T -> P with proj_left u = t1, proj_right u = t2
      SearchProblem up;
      up.src = T;
      up.tgt = P.complex();
      auto us = enumerate_maps(up);
      int good = 0;
      for (auto& u : us)
        if (compose(P.proj_left, u) == t1 && compose(P.proj_right, u) == t2)
          ++good;
      CHECK(good == 1);
    }
  }
}

TEST_CASE("cones") {
  auto empty = mk(empty_shape());
  auto c = cone(empty, true, 2);
  CHECK(c.complex()->size(0) == 1);
  CHECK(c.complex()->size(1) == 0);

  auto d0 = mk(simplex_shape(0));
  auto rc = cone(d0, false, 2);
  CHECK(rc.complex()->size(0) == 2);
  CHECK(rc.complex()->size(1) == 1);
  // cone point is vertex 1 (the right factor); check via the edge faces
  auto e = rc.complex()->cell(1, 0);
  CHECK(e.faces[0].nd_id == rc.cone_vertex);

  auto bd1 = mk(boundary_shape(1));
  auto lc = cone(bd1, true, 2);
  CHECK(lc.complex()->size(0) == 3);
  CHECK(lc.complex()->size(1) == 2);
  CHECK(lc.complex()->size(2) == 0);
  lc.complex()->validate();
}

TEST_CASE("opposite") {
  auto h0 = horn_shape(2, 0);
  auto op = opposite(h0);
  op->validate();
  // opposite of Lambda^2_0 is iso to Lambda^2_2: two edges with common target
  auto h2 = horn_shape(2, 2);
  CHECK(op->size(0) == h2.size(0));
  CHECK(op->size(1) == h2.size(1));
  // both edges of op end at the old source: d_0 (target) of each edge agrees
  CHECK(op->cell(1, 0).faces[0] == op->cell(1, 1).faces[0]);

  // involution
  auto opop = opposite(*op);
  CHECK(opop->same_tables(h0));

  // opposite commutes with product up to the canonical pairing
  auto d1 = mk(simplex_shape(1));
  auto d2 = mk(simplex_shape(2));
  auto p = product(d1, d2, 3);
  auto op_p = opposite(*p.complex());
  auto p_op = product(opposite(*d1), opposite(*d2), 3);
  for (int d = 0; d <= 3; ++d) CHECK(op_p->size(d) == p_op.complex()->size(d));
  // explicit canonical iso: op(product) -> product(ops) on cells
  auto pop = p_op;
  ComplexMap iso;
  iso.src = op_p;
  iso.tgt = pop.complex();
  iso.assign.resize(op_p->top_dim() + 1);
  for (int d = 0; d <= op_p->top_dim(); ++d) {
    iso.assign[d].resize(op_p->size(d));
    for (int i = 0; i < op_p->size(d); ++i) {
      auto [a, b] = p.components(d, i);
      iso.assign[d][i] = pop.locate(opposite_ref(a), opposite_ref(b));
    }
  }
  iso.validate();
  for (int d = 0; d <= op_p->top_dim(); ++d) {
    std::set<SimplexRef> im;
    for (auto& v : iso.assign[d]) {
      CHECK(!v.is_degenerate());
      im.insert(v);
    }
    CHECK(static_cast<int>(im.size()) == pop.complex()->size(d));
  }
}

TEST_CASE("validator catches corruption") {
  auto d2 = simplex_shape(2);
  // corrupt one face of the 2-cell
  std::vector<std::vector<Cell>> tables;
  for (int d = 0; d <= 2; ++d) {
    tables.emplace_back();
    for (int i = 0; i < d2.size(d); ++i) tables[d].push_back(d2.cell(d, i));
  }
  tables[2][0].faces[1] = tables[2][0].faces[0];
  CellComplex bad(tables, 2, Completeness::Complete);
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("slices") {
  auto d1 = mk(simplex_shape(1));
  auto d2 = mk(simplex_shape(2));
  auto pt = mk(simplex_shape(0));

  // slice of Delta^1 under vertex 0: cells are maps Delta^{n+1} -> Delta^1
  // starting at 0; the complex is Delta^1 (vertices 00..., 01...).
  ComplexMap v0;
  v0.src = pt;
  v0.tgt = d1;
  v0.assign.assign(1, {SimplexRef{0, 0, {}}});
  auto s = slice(v0, true, 2);
  CHECK(s.complex()->size(0) == 2);
  CHECK(s.complex()->size(1) == 1);
  CHECK(s.complex()->size(2) == 0);
  s.complex()->validate();

  // slice under the empty diagram is X itself.
  ComplexMap em;
  em.src = mk(empty_shape());
  em.tgt = d2;
  em.assign.resize(1);
  auto se = slice(em, true, 2);
  CHECK(se.complex()->size(0) == d2->size(0));
  CHECK(se.complex()->size(1) == d2->size(1));
  CHECK(se.complex()->size(2) == d2->size(2));
  CHECK(se.complex()->complete());

  // slice of Delta^2 under the edge 0->1: extensions are the 2-simplices
  // (0,1,1) and (0,1,2); the slice is iso to Delta^1.
  ComplexMap e01;
  e01.src = d1;
  e01.tgt = d2;
  e01.assign.resize(2);
  e01.assign[0] = {SimplexRef{0, 0, {}}, SimplexRef{0, 1, {}}};
  REQUIRE(d2->cell(1, 0).label == "0,1");
  e01.assign[1] = {SimplexRef{1, 0, {}}};
  e01.validate();
  auto s2 = slice(e01, true, 2);
  CHECK(s2.complex()->size(0) == 2);
  CHECK(s2.complex()->size(1) == 1);
  CHECK(s2.complex()->size(2) == 0);
}

TEST_CASE("ref_slice matches general slice") {
  auto d2 = mk(simplex_shape(2));
  auto d1 = mk(simplex_shape(1));
  // under the edge 0->1 of Delta^2, via the representable path
  auto rs = ref_slice(d2, SimplexRef{1, 0, {}}, true, 2);
  CHECK(rs.complex()->size(0) == 2);
  CHECK(rs.complex()->size(1) == 1);
  rs.complex()->validate();

  // under a vertex of Delta^1
  auto rv = ref_slice(d1, SimplexRef{0, 0, {}}, true, 2);
  CHECK(rv.complex()->size(0) == 2);
  CHECK(rv.complex()->size(1) == 1);

  // over-slice of Delta^2 over vertex 2: maps Delta^{n}*pt -> Delta^2 ending
  // at 2; vertices = edges into 2 plus the degenerate one = 3.
  auto ro = ref_slice(d2, SimplexRef{0, 2, {}}, false, 2);
  CHECK(ro.complex()->size(0) == 3);
  ro.complex()->validate();
}

TEST_CASE("slice agrees with categorical coslice on poset nerves") {
  // Delta^2 = nerve of [2]; the coslice 0/[2] is the poset {0,1,2} again, so
  // the slice under vertex 0 must be iso to Delta^2.
  auto d2 = mk(simplex_shape(2));
  auto rs = ref_slice(d2, SimplexRef{0, 0, {}}, true, 3);
  CHECK(rs.complex()->size(0) == 3);
  CHECK(rs.complex()->size(1) == 3);
  CHECK(rs.complex()->size(2) == 1);
  CHECK(rs.complex()->size(3) == 0);

  // cospan poset a -> c <- b, coslice under a: objects {a<=a, a<=c}, one arrow.
  auto csp = mk(cospan_shape());
  auto sa = ref_slice(csp, SimplexRef{0, 0, {}}, true, 2);
  CHECK(sa.complex()->size(0) == 2);
  CHECK(sa.complex()->size(1) == 1);
  CHECK(sa.complex()->size(2) == 0);
}
