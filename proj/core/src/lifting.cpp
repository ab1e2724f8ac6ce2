#include "patfib/lifting.hpp"

#include <algorithm>
#include <functional>

namespace patfib::lift {

using sset::act;
using sset::apply_face;
using sset::CellComplex;
using sset::Completeness;
using sset::fiber_product;
using sset::map_from_simplex;
using sset::ProductComplex;
using sset::RefSlice;
using sset::refs_of_dim;
using sset::SearchProblem;
using sset::shape_cell_vertices;
using sset::shape_cell_with_vertices;
using sset::TargetIndex;

namespace {

struct Generator {
  std::string name;
  ComplexPtr A;
  ComplexPtr B;  // Delta^n
  int n;
  // delta-cell id for each A-cell, per dimension.
  std::vector<std::vector<int>> incl;
};

Generator make_generator(const std::string& name, CellComplex A_shape, int n) {
  Generator g;
  g.name = name;
  g.A = std::make_shared<const CellComplex>(std::move(A_shape));
  g.B = std::make_shared<const CellComplex>(sset::simplex_shape(n));
  g.n = n;
  g.incl.resize(g.A->top_dim() + 1);
  for (int d = 0; d <= g.A->top_dim(); ++d) {
    g.incl[d].resize(g.A->size(d));
    for (int i = 0; i < g.A->size(d); ++i) {
      auto verts = shape_cell_vertices(*g.A, d, i);
      auto id = shape_cell_with_vertices(*g.B, verts);
      if (!id) throw Error("generator inclusion broken");
      g.incl[d][i] = *id;
    }
  }
  return g;
}

std::vector<Generator> family_generators(Family f, int depth) {
  std::vector<Generator> out;
  switch (f) {
    case Family::Inner:
      for (int n = 2; n <= depth; ++n)
        for (int i = 1; i < n; ++i)
          out.push_back(make_generator(
              "horn(" + std::to_string(n) + "," + std::to_string(i) + ")",
              sset::horn_shape(n, i), n));
      break;
    case Family::Left:
      for (int n = 1; n <= depth; ++n)
        for (int i = 0; i < n; ++i)
          out.push_back(make_generator(
              "horn(" + std::to_string(n) + "," + std::to_string(i) + ")",
              sset::horn_shape(n, i), n));
      break;
    case Family::Trivial:
      for (int n = 0; n <= depth; ++n)
        out.push_back(make_generator("boundary(" + std::to_string(n) + ")",
                                     sset::boundary_shape(n), n));
      break;
  }
  return out;
}

bool exact_at(const ComplexPtr& X, int n) {
  return n <= X->bound() || X->complete();
}

// Filler search for one square; limit controls uniqueness checking.
std::vector<ComplexMap> fillers(const ComplexMap& p, const Generator& g,
                                const ComplexMap& a, const ComplexMap& b,
                                std::size_t limit, TargetIndex& index) {
  SearchProblem fp;
  fp.src = g.B;
  fp.tgt = p.src;
  fp.over = &p;
  fp.init_tables();
  for (int d = 0; d <= g.B->top_dim(); ++d)
    for (int i = 0; i < g.B->size(d); ++i)
      fp.require(d, i, b.at(d, i));
  for (int d = 0; d <= g.A->top_dim(); ++d)
    for (int i = 0; i < g.A->size(d); ++i) fp.pin(d, g.incl[d][i], a.at(d, i));
  fp.limit = limit;
  return enumerate_maps(fp, index);
}

}  // namespace

LiftCertificate solve_square(const ComplexMap& p, const Square& sq) {
  LiftCertificate cert;
  // Reconstruct the generator inclusion from the shapes.
  Generator g;
  g.name = sq.generator;
  g.A = sq.A;
  g.B = sq.B;
  g.n = sq.B->top_dim();
  g.incl.resize(g.A->top_dim() + 1);
  for (int d = 0; d <= g.A->top_dim(); ++d) {
    g.incl[d].resize(g.A->size(d));
    for (int i = 0; i < g.A->size(d); ++i) {
      auto verts = shape_cell_vertices(*g.A, d, i);
      auto id = shape_cell_with_vertices(*g.B, verts);
      if (!id) throw Error("solve_square: bad shapes");
      g.incl[d][i] = *id;
    }
  }
  TargetIndex index(p.src);
  auto fs = fillers(p, g, sq.a, sq.b, 1, index);
  if (fs.empty()) {
    cert.verdict = LiftVerdict::Unfillable;
    cert.witness = sq;
  } else {
    cert.verdict = LiftVerdict::Filled;
    cert.filler = fs.front();
  }
  return cert;
}

bool verify_filled(const ComplexMap& p, const Square& sq,
                   const ComplexMap& filler) {
  // The filler restricts to a on A and projects to b.
  for (int d = 0; d <= sq.A->top_dim(); ++d)
    for (int i = 0; i < sq.A->size(d); ++i) {
      auto verts = shape_cell_vertices(*sq.A, d, i);
      auto id = shape_cell_with_vertices(*sq.B, verts);
      if (!id) return false;
      if (!(filler.at(d, *id) == sq.a.at(d, i))) return false;
    }
  for (int d = 0; d <= sq.B->top_dim(); ++d)
    for (int i = 0; i < sq.B->size(d); ++i)
      if (!(p.push(filler.at(d, i)) == sq.b.at(d, i))) return false;
  try {
    filler.validate();
  } catch (const Error&) {
    return false;
  }
  return true;
}

bool verify_unfillable(const ComplexMap& p, const Square& sq) {
  auto cert = solve_square(p, sq);
  return cert.verdict == LiftVerdict::Unfillable;
}

RlpReport rlp_check(const ComplexMap& p, Family family,
                    const RlpOptions& opts) {
  RlpReport rep;
  rep.depth = opts.depth;
  auto gens = family_generators(family, opts.depth);
  TargetIndex xindex(p.src);
  bool bound_hit = false;
  for (auto& g : gens) {
    if (!exact_at(p.src, g.n) || !exact_at(p.tgt, g.n)) {
      bound_hit = true;
      continue;
    }
    // b ranges over all n-simplices of the base.
    for (const auto& bref : refs_of_dim(*p.tgt, g.n)) {
      ComplexMap b = map_from_simplex(g.B, p.tgt, bref);
      SearchProblem ap;
      ap.src = g.A;
      ap.tgt = p.src;
      ap.over = &p;
      ap.init_tables();
      for (int d = 0; d <= g.A->top_dim(); ++d)
        for (int i = 0; i < g.A->size(d); ++i)
          ap.require(d, i, b.at(d, g.incl[d][i]));
      for (auto& a : enumerate_maps(ap, xindex)) {
        ++rep.squares;
        auto fs = fillers(p, g, a, b, opts.require_unique ? 2 : 1, xindex);
        if (fs.empty()) {
          rep.verdict = LiftVerdict::Unfillable;
          rep.witness = Square{g.name, g.A, g.B, a, b};
          return rep;
        }
        if (opts.require_unique && fs.size() > 1) {
          rep.unique = false;
          rep.verdict = LiftVerdict::Unfillable;
          rep.witness = Square{g.name, g.A, g.B, a, b};
          return rep;
        }
      }
    }
  }
  if (bound_hit) rep.verdict = LiftVerdict::BoundExceeded;
  return rep;
}

RlpReport classify_fibration(const ComplexMap& p, FibrationKind kind,
                             int depth) {
  RlpOptions opts;
  opts.depth = depth;
  switch (kind) {
    case FibrationKind::Inner: return rlp_check(p, Family::Inner, opts);
    case FibrationKind::Left: return rlp_check(p, Family::Left, opts);
    case FibrationKind::Trivial: return rlp_check(p, Family::Trivial, opts);
  }
  throw Error("classify_fibration: bad kind");
}

// --- cocartesian edges -----------------------------------------------------------

namespace {
LiftVerdict comparison_is_trivial_fibration(const ComplexMap& c, int depth) {
  auto rep = classify_fibration(c, FibrationKind::Trivial, depth);
  switch (rep.verdict) {
    case LiftVerdict::Filled: return LiftVerdict::Filled;
    case LiftVerdict::Unfillable: return LiftVerdict::Unfillable;
    default: return LiftVerdict::BoundExceeded;
  }
}

LiftVerdict cocartesian_global(const ComplexMap& p, const SimplexRef& e,
                               int depth) {
  // Slices need simplices of X up to dimension depth + 2.
  if (!exact_at(p.src, depth + 2) || !exact_at(p.tgt, depth + 2))
    return LiftVerdict::BoundExceeded;
  SimplexRef x = act(*p.src, e, {0});
  SimplexRef pe = p.push(e);
  SimplexRef px = act(*p.tgt, pe, {0});

  RefSlice se = sset::ref_slice(p.src, e, true, depth);
  RefSlice sx = sset::ref_slice(p.src, x, true, depth);
  RefSlice spe = sset::ref_slice(p.tgt, pe, true, depth);
  RefSlice spx = sset::ref_slice(p.tgt, px, true, depth);

  ComplexMap r1 = sset::ref_slice_restriction(se, sx, {0});
  ComplexMap q1 = sset::ref_slice_postcompose(se, spe, p);
  ComplexMap q2 = sset::ref_slice_postcompose(sx, spx, p);
  ComplexMap r2 = sset::ref_slice_restriction(spe, spx, {0});

  ProductComplex P = fiber_product(q2, r2, depth);
  ComplexMap c;
  c.src = se.complex();
  c.tgt = P.complex();
  c.assign.resize(std::max(se.complex()->top_dim() + 1, 1));
  for (int d = 0; d <= se.complex()->top_dim(); ++d) {
    c.assign[d].resize(se.complex()->size(d));
    for (int i = 0; i < se.complex()->size(d); ++i)
      c.assign[d][i] = P.locate(r1.at(d, i), q1.at(d, i));
  }
  return comparison_is_trivial_fibration(c, depth);
}
}  // namespace

LiftVerdict is_cocartesian_edge(const ComplexMap& p, const SimplexRef& e,
                                Locality locality, int depth) {
  if (locality == Locality::Global) return cocartesian_global(p, e, depth);
  // Local: pull back along p(e) : Delta^1 -> S and test globally there.
  auto d1 = std::make_shared<const CellComplex>(sset::simplex_shape(1));
  ComplexMap b = map_from_simplex(d1, p.tgt, p.push(e));
  if (!exact_at(p.src, depth + 3)) return LiftVerdict::BoundExceeded;
  ProductComplex pb = fiber_product(p, b, depth + 3);
  SimplexRef etilde = pb.locate(e, SimplexRef{1, 0, {}});
  return cocartesian_global(pb.proj_right, etilde, depth);
}

namespace {
// e lies over act(factor, {0,1}); test that the induced edge of
// X x_S Delta^k is cocartesian over Delta^k, without building the pullback:
// squares over the pullback correspond to squares over bases factoring
// through `factor`.
LiftVerdict cocartesian_horn_through(const ComplexMap& p, const SimplexRef& e,
                                     const SimplexRef& factor, int depth,
                                     TargetIndex& xindex) {
  const int k = factor.dim();
  for (int n = 2; n <= depth + 1; ++n) {
    if (!exact_at(p.src, n)) return LiftVerdict::BoundExceeded;
    Generator g = make_generator(
        "horn(" + std::to_string(n) + ",0)", sset::horn_shape(n, 0), n);
    auto edge01 = shape_cell_with_vertices(*g.A, {0, 1});
    // monotone t : [n] -> [k] with t(0) = 0, t(1) = 1.
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur{0, 1};
    std::function<void()> gen = [&]() {
      if (static_cast<int>(cur.size()) == n + 1) {
        tuples.push_back(cur);
        return;
      }
      for (int v = cur.back(); v <= k; ++v) {
        cur.push_back(v);
        gen();
        cur.pop_back();
      }
    };
    if (k >= 1) gen();
    for (const auto& t : tuples) {
      SimplexRef bref = act(*p.tgt, factor, t);
      ComplexMap b = map_from_simplex(g.B, p.tgt, bref);
      SearchProblem ap;
      ap.src = g.A;
      ap.tgt = p.src;
      ap.over = &p;
      ap.init_tables();
      for (int d = 0; d <= g.A->top_dim(); ++d)
        for (int i = 0; i < g.A->size(d); ++i)
          ap.require(d, i, b.at(d, g.incl[d][i]));
      ap.pin(1, *edge01, e);
      for (auto& a : enumerate_maps(ap, xindex)) {
        auto fs = fillers(p, g, a, b, 1, xindex);
        if (fs.empty()) return LiftVerdict::Unfillable;
      }
    }
  }
  return LiftVerdict::Filled;
}

LiftVerdict cocartesian_horn_global(const ComplexMap& p, const SimplexRef& e,
                                    int depth, TargetIndex& xindex) {
  SimplexRef pe = p.push(e);
  for (int n = 2; n <= depth + 1; ++n) {
    if (!exact_at(p.src, n) || !exact_at(p.tgt, n))
      return LiftVerdict::BoundExceeded;
    Generator g = make_generator(
        "horn(" + std::to_string(n) + ",0)", sset::horn_shape(n, 0), n);
    // The cell {0,1} of the horn.
    auto edge01 = shape_cell_with_vertices(*g.A, {0, 1});
    if (!edge01) throw Error("horn is missing its initial edge");
    for (const auto& bref : refs_of_dim(*p.tgt, n)) {
      if (!(act(*p.tgt, bref, {0, 1}) == pe)) continue;
      ComplexMap b = map_from_simplex(g.B, p.tgt, bref);
      SearchProblem ap;
      ap.src = g.A;
      ap.tgt = p.src;
      ap.over = &p;
      ap.init_tables();
      for (int d = 0; d <= g.A->top_dim(); ++d)
        for (int i = 0; i < g.A->size(d); ++i)
          ap.require(d, i, b.at(d, g.incl[d][i]));
      ap.pin(1, *edge01, e);
      for (auto& a : enumerate_maps(ap, xindex)) {
        auto fs = fillers(p, g, a, b, 1, xindex);
        if (fs.empty()) return LiftVerdict::Unfillable;
      }
    }
  }
  return LiftVerdict::Filled;
}
}  // namespace

LiftVerdict is_cocartesian_edge_horn(const ComplexMap& p, const SimplexRef& e,
                                     Locality locality, int depth) {
  TargetIndex xi(p.src);
  if (locality == Locality::Global)
    return cocartesian_horn_global(p, e, depth, xi);
  return cocartesian_horn_through(p, e, p.push(e), depth, xi);
}

LiftVerdict is_cocartesian_edge_horn_through(const ComplexMap& p,
                                             const SimplexRef& e,
                                             const SimplexRef& factor,
                                             int depth, TargetIndex& xindex) {
  return cocartesian_horn_through(p, e, factor, depth, xindex);
}

LiftVerdict is_p_limit_diagram_slices(const ComplexMap& p,
                                      const ConeComplex& cone,
                                      const ComplexMap& fbar, int depth) {
  if (!cone.left_cone) throw Error("is_p_limit_diagram: expects a left cone");
  ComplexMap incl = cone.include_base();
  ComplexMap f = compose(fbar, incl);
  ComplexMap pf = compose(p, f);
  ComplexMap pfbar = compose(p, fbar);

  SliceComplex over_fbar = sset::slice(fbar, false, depth);
  SliceComplex over_f = sset::slice(f, false, depth);
  SliceComplex s_over_pf = sset::slice(pf, false, depth);
  SliceComplex s_over_pfbar = sset::slice(pfbar, false, depth);

  // Restriction along K -> K^{cone} (shared Delta part).
  auto restrict = [&](SliceComplex& big, SliceComplex& small) {
    ComplexMap out;
    out.src = big.complex();
    out.tgt = small.complex();
    out.assign.resize(std::max(out.src->top_dim() + 1, 1));
    for (int n = 0; n <= out.src->top_dim(); ++n) {
      out.assign[n].resize(out.src->size(n));
      for (int i = 0; i < out.src->size(n); ++i) {
        ComplexMap g = big.cell_map(n, i);
        // Build the composite on small's join: Delta^n * K -> Delta^n * K^cone.
        ComplexMap gj;
        gj.src = small.joins[n].complex();
        gj.tgt = big.X;
        gj.assign.resize(std::max(gj.src->top_dim() + 1, 1));
        for (int d = 0; d <= gj.src->top_dim(); ++d) {
          gj.assign[d].resize(gj.src->size(d));
          for (int c2 = 0; c2 < gj.src->size(d); ++c2) {
            auto o = small.joins[n].origin(d, c2);
            SimplexRef img;
            if (o == sset::JoinComplex::Origin::Left) {
              img = big.joins[n].locate_left(small.joins[n].left_part(d, c2));
            } else if (o == sset::JoinComplex::Origin::Right) {
              img = big.joins[n].locate_right(
                  incl.push(small.joins[n].right_part(d, c2)));
            } else {
              img = big.joins[n].locate_pair(
                  small.joins[n].left_part(d, c2),
                  incl.push(small.joins[n].right_part(d, c2)));
            }
            gj.assign[d][c2] = g.push(img);
          }
        }
        out.assign[n][i] = small.locate(n, gj);
      }
    }
    return out;
  };

  ComplexMap r1 = restrict(over_fbar, over_f);
  ComplexMap r2 = restrict(s_over_pfbar, s_over_pf);
  ComplexMap q1 = sset::slice_postcompose(over_fbar, s_over_pfbar, p);
  ComplexMap q2 = sset::slice_postcompose(over_f, s_over_pf, p);

  ProductComplex P = fiber_product(q2, r2, depth);
  ComplexMap c;
  c.src = over_fbar.complex();
  c.tgt = P.complex();
  c.assign.resize(std::max(c.src->top_dim() + 1, 1));
  for (int d = 0; d <= c.src->top_dim(); ++d) {
    c.assign[d].resize(c.src->size(d));
    for (int i = 0; i < c.src->size(d); ++i)
      c.assign[d][i] = P.locate(r1.at(d, i), q1.at(d, i));
  }
  return comparison_is_trivial_fibration(c, depth);
}

// --- marked left fibrations --------------------------------------------------------

MarkedLeftReport classify_marked_left(const MarkedMap& p, const TwoCellSet& T,
                                      int depth) {
  MarkedLeftReport rep;
  rep.depth = depth;
  const ComplexMap& f = p.map;
  auto verdict_of = [](LiftVerdict v) {
    switch (v) {
      case LiftVerdict::Filled: return Verdict::True;
      case LiftVerdict::Unfillable: return Verdict::False;
      default: return Verdict::Unknown;
    }
  };

  // (1) inner fibration.
  {
    auto r = classify_fibration(f, FibrationKind::Inner, depth);
    ConditionReport c{"inner-fibration", verdict_of(r.verdict), ""};
    if (r.witness) c.detail = r.witness->generator;
    rep.conditions.push_back(c);
  }

  // (2) cocartesian lifts over marked nondegenerate base edges.
  {
    ConditionReport c{"cocartesian-lifts-over-marked", Verdict::True, ""};
    TargetIndex xi(f.src);
    for (int eS : p.tgt.marked) {
      SimplexRef base_edge{1, eS, {}};
      int src_vertex = apply_face(*f.tgt, base_edge, 1).nd_id;
      for (int x = 0; x < f.src->size(0) && c.verdict == Verdict::True; ++x) {
        if (f.at(0, x).nd_id != src_vertex) continue;
        bool found = false;
        bool unknown = false;
        for (int e = 0; e < f.src->size(1) && !found; ++e) {
          if (f.src->cell(1, e).faces[1].nd_id != x) continue;
          if (!(f.at(1, e) == base_edge)) continue;
          auto cv = cocartesian_horn_through(f, SimplexRef{1, e, {}},
                                             base_edge, depth, xi);
          if (cv == LiftVerdict::Filled) found = true;
          if (cv == LiftVerdict::BoundExceeded) unknown = true;
        }
        if (!found) {
          c.verdict = unknown ? Verdict::Unknown : Verdict::False;
          c.detail = "no cocartesian lift over marked base edge " +
                     std::to_string(eS) + " at vertex " + std::to_string(x);
        }
      }
      if (c.verdict != Verdict::True) break;
    }
    rep.conditions.push_back(c);
  }

  // (3) marked = locally cocartesian over marked.
  {
    ConditionReport c{"marking-matches-locally-cocartesian", Verdict::True, ""};
    TargetIndex xi3(f.src);
    for (int e = 0; e < f.src->size(1); ++e) {
      SimplexRef er{1, e, {}};
      bool marked = p.src.marked.count(e) > 0;
      bool over_marked = p.tgt.is_marked(f.at(1, e));
      bool loc = false;
      bool unknown = false;
      if (over_marked) {
        auto v = cocartesian_horn_through(f, er, f.push(er), depth, xi3);
        loc = v == LiftVerdict::Filled;
        unknown = v == LiftVerdict::BoundExceeded;
      }
      bool should = over_marked && loc;
      if (unknown) {
        c.verdict = Verdict::Unknown;
        c.detail = "bound exceeded at edge " + std::to_string(e);
        break;
      }
      if (marked != should) {
        c.verdict = Verdict::False;
        c.detail = std::string(marked ? "marked" : "unmarked") + " edge " +
                   std::to_string(e) +
                   (should ? " should be marked" : " fails local cocartesianness");
        break;
      }
    }
    rep.conditions.push_back(c);
  }

  // (4) marked edges remain cocartesian in pullbacks along scaled triangles.
  {
    ConditionReport c{"scaled-triangle-cocartesian", Verdict::True, ""};
    TargetIndex xi4(f.src);
    auto sigmas = refs_of_dim(*f.tgt, 2);
    for (const auto& sigma : sigmas) {
      if (!T.contains(sigma)) continue;
      SimplexRef edge01 = act(*f.tgt, sigma, {0, 1});
      for (int e : p.src.marked) {
        if (!(f.at(1, e) == edge01)) continue;
        auto v = cocartesian_horn_through(f, SimplexRef{1, e, {}}, sigma,
                                          depth, xi4);
        if (v != LiftVerdict::Filled) {
          c.verdict =
              v == LiftVerdict::Unfillable ? Verdict::False : Verdict::Unknown;
          c.detail = "marked edge " + std::to_string(e) +
                     " fails over a scaled 2-simplex";
          break;
        }
      }
      if (c.verdict != Verdict::True) break;
    }
    rep.conditions.push_back(c);
  }

  rep.verdict = Verdict::True;
  for (auto& c : rep.conditions) {
    if (c.verdict == Verdict::False) {
      rep.verdict = Verdict::False;
      break;
    }
    if (c.verdict == Verdict::Unknown) rep.verdict = Verdict::Unknown;
  }
  return rep;
}

MarkedMap find_section(const MarkedMap& p,
                       const std::vector<std::pair<int, int>>* pin_cells,
                       const std::vector<SimplexRef>* pin_values) {
  const ComplexMap& f = p.map;
  SearchProblem sp;
  sp.src = f.tgt;
  sp.tgt = f.src;
  sp.over = &f;
  sp.init_tables();
  for (int d = 0; d <= f.tgt->top_dim(); ++d)
    for (int i = 0; i < f.tgt->size(d); ++i)
      sp.require(d, i, SimplexRef{d, i, {}});
  if (pin_cells) {
    for (size_t k = 0; k < pin_cells->size(); ++k)
      sp.pin((*pin_cells)[k].first, (*pin_cells)[k].second, (*pin_values)[k]);
  }
  sp.limit = 1;
  auto res = enumerate_maps(sp);
  if (res.empty())
    throw Error("find_section: dead end on a verified trivial fibration "
                "(integrity failure)");
  MarkedMap out;
  out.src = p.tgt;
  out.tgt = p.src;
  out.map = res.front();
  if (!preserves_marking(out.map, out.src, out.tgt))
    throw Error("find_section: section does not preserve markings "
                "(projection is not a marked trivial fibration)");
  return out;
}

LiftVerdict is_p_limit_diagram(const ComplexMap& p, const ConeComplex& cone,
                               const ComplexMap& fbar, int depth) {
  if (!cone.left_cone) throw Error("is_p_limit_diagram: expects a left cone");
  if (!cone.complex()->complete())
    throw Error("is_p_limit_diagram: cone must be COMPLETE");
  ComplexPtr coneC = cone.complex();
  const int cone_dim = std::max(coneC->top_dim(), 0);
  ComplexMap pfbar = compose(p, fbar);
  TargetIndex xindex(p.src);
  TargetIndex sindex(p.tgt);

  for (int n = 0; n <= depth; ++n) {
    const int maxdim = n + cone_dim + 1;
    if (!exact_at(p.src, maxdim) || !exact_at(p.tgt, maxdim))
      return LiftVerdict::BoundExceeded;
    auto dn = std::make_shared<const CellComplex>(sset::simplex_shape(n));
    sset::JoinComplex J = sset::join(dn, coneC, maxdim);
    // Delta^n * K cup bd(Delta^n) * K^cone: drop mixed cells whose Delta-part
    // is the top cell and whose cone-part touches the cone point.
    std::vector<std::pair<int, int>> sub_cells;
    for (int d = 0; d <= J.complex()->top_dim(); ++d)
      for (int i = 0; i < J.complex()->size(d); ++i) {
        bool inside = true;
        if (J.origin(d, i) == sset::JoinComplex::Origin::Mixed) {
          SimplexRef a = J.left_part(d, i);
          SimplexRef b = J.right_part(d, i);
          bool a_top = a.nd_dim == n;
          bool b_conepoint =
              cone.j.origin(b.nd_dim, b.nd_id) != sset::JoinComplex::Origin::Right;
          inside = !(a_top && b_conepoint);
        }
        if (inside) sub_cells.emplace_back(d, i);
      }

    // Bases b : J -> S extending p o fbar on the cone part.
    SearchProblem bp;
    bp.src = J.complex();
    bp.tgt = p.tgt;
    bp.init_tables();
    for (int d = 0; d <= J.complex()->top_dim(); ++d)
      for (int i = 0; i < J.complex()->size(d); ++i)
        if (J.origin(d, i) == sset::JoinComplex::Origin::Right)
          bp.pin(d, i, pfbar.push(J.right_part(d, i)));
    for (auto& b : enumerate_maps(bp, sindex)) {
      // Partial maps on the subcomplex over b, extending fbar.
      SearchProblem qp;
      qp.src = J.complex();
      qp.tgt = p.src;
      qp.over = &p;
      qp.init_tables();
      for (auto [d, i] : sub_cells) qp.require(d, i, b.at(d, i));
      for (int d = 0; d <= J.complex()->top_dim(); ++d)
        for (int i = 0; i < J.complex()->size(d); ++i)
          if (J.origin(d, i) == sset::JoinComplex::Origin::Right)
            qp.pin(d, i, fbar.push(J.right_part(d, i)));
      qp.free_cells = &sub_cells;
      for (auto& a : enumerate_maps(qp, xindex)) {
        SearchProblem fp;
        fp.src = J.complex();
        fp.tgt = p.src;
        fp.over = &p;
        fp.init_tables();
        for (int d = 0; d <= J.complex()->top_dim(); ++d)
          for (int i = 0; i < J.complex()->size(d); ++i)
            fp.require(d, i, b.at(d, i));
        for (auto [d, i] : sub_cells) fp.pin(d, i, a.at(d, i));
        fp.limit = 1;
        if (enumerate_maps(fp, xindex).empty())
          return LiftVerdict::Unfillable;
      }
    }
  }
  return LiftVerdict::Filled;
}

}  // namespace patfib::lift
