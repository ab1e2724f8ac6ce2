#include "patfib/pattern.hpp"

#include <algorithm>

#include "patfib/coherent.hpp"

namespace patfib::pat {

using cat::HoCategory;
using sset::act;
using sset::CellComplex;
using sset::fiber_over_vertex;
using sset::fiber_product;
using sset::refs_of_dim;
using sset::SearchProblem;

Diagram make_diagram(ComplexPtr shape, const ComplexMap& cone_map) {
  if (!shape->complete()) throw Error("diagram shapes must be COMPLETE");
  Diagram d;
  d.shape = shape;
  d.cone = sset::cone(shape, true, std::max(shape->top_dim() + 1, 1));
  if (!(cone_map.src == d.cone.complex())) {
    // Accept maps given on a structurally equal cone built elsewhere.
    if (!cone_map.src->same_tables(*d.cone.complex()))
      throw Error("diagram map not defined on the cone of its shape");
  }
  d.map = cone_map;
  d.map.src = d.cone.complex();
  return d;
}

void Pattern::validate() const {
  base.validate();
  for (const auto& d : diagrams) {
    for (int e = 0; e < d.cone.complex()->size(1); ++e)
      if (!base.is_marked(d.map.at(1, e)))
        throw Error("pattern: diagram edge not marked in the base");
    if (!triangles.all)
      for (int c = 0; c < d.cone.complex()->size(2); ++c)
        if (!triangles.contains(d.map.at(2, c)))
          throw Error("pattern: diagram 2-cell not scaled");
    d.map.validate();
  }
}

Verdict verify_creative(const Pattern& P, int depth) {
  // Every equivalence of the base must be marked.
  const auto& S = P.base.complex;
  try {
    HoCategory ho = HoCategory::build(*S);
    for (int e = 0; e < S->size(1); ++e) {
      if (P.base.marked.count(e)) continue;
      if (cat::edge_is_equivalence_unchecked(ho, SimplexRef{1, e, {}}))
        return Verdict::False;
    }
    (void)depth;
    return Verdict::True;
  } catch (const Error&) {
    return Verdict::Unknown;
  }
}

Pattern pullback_pattern(const Pattern& P, const ComplexMap& g, int depth) {
  Pattern out;
  out.base.complex = g.src;
  for (int e = 0; e < g.src->size(1); ++e)
    if (P.base.is_marked(g.at(1, e))) out.base.marked.insert(e);
  if (P.triangles.all) {
    out.triangles.all = true;
  } else {
    out.triangles.all = false;
    for (int c = 0; c < g.src->size(2); ++c)
      if (P.triangles.contains(g.at(2, c))) out.triangles.cells.insert(c);
  }
  for (const auto& d : P.diagrams) {
    // Lifts of p_alpha through g.
    SearchProblem sp;
    sp.src = d.cone.complex();
    sp.tgt = g.src;
    sp.over = &g;
    sp.init_tables();
    for (int dd = 0; dd <= sp.src->top_dim(); ++dd)
      for (int i = 0; i < sp.src->size(dd); ++i)
        sp.require(dd, i, d.map.at(dd, i));
    for (auto& lift : enumerate_maps(sp)) {
      Diagram nd;
      nd.shape = d.shape;
      nd.cone = d.cone;
      nd.map = lift;
      out.diagrams.push_back(std::move(nd));
    }
  }
  (void)depth;
  return out;
}

ProductPattern product_pattern(ComplexPtr S, const Pattern& P, int depth) {
  ProductPattern out;
  out.product = sset::product(S, P.base.complex, depth);
  out.pattern.base.complex = out.product.complex();
  for (int e = 0; e < out.product.complex()->size(1); ++e) {
    auto [a, b] = out.product.components(1, e);
    if (P.base.is_marked(b)) out.pattern.base.marked.insert(e);
  }
  if (P.triangles.all) {
    out.pattern.triangles.all = true;
  } else {
    out.pattern.triangles.all = false;
    for (int c = 0; c < out.product.complex()->size(2); ++c) {
      auto [a, b] = out.product.components(2, c);
      if (P.triangles.contains(b)) out.pattern.triangles.cells.insert(c);
    }
  }
  for (int v = 0; v < S->size(0); ++v) {
    for (const auto& d : P.diagrams) {
      Diagram nd;
      nd.shape = d.shape;
      nd.cone = d.cone;
      ComplexMap m;
      m.src = d.cone.complex();
      m.tgt = out.product.complex();
      m.assign.resize(std::max(m.src->top_dim() + 1, 1));
      for (int dd = 0; dd <= m.src->top_dim(); ++dd) {
        m.assign[dd].resize(m.src->size(dd));
        std::vector<int> w;
        for (int j = dd - 1; j >= 0; --j) w.push_back(j);
        for (int i = 0; i < m.src->size(dd); ++i)
          m.assign[dd][i] =
              out.product.locate(SimplexRef{0, v, w}, d.map.at(dd, i));
      }
      nd.map = std::move(m);
      out.pattern.diagrams.push_back(std::move(nd));
    }
  }
  return out;
}

PatternUnResult pattern_un(const Pattern& P, int depth) {
  if (!P.commutative())
    throw Error("pattern_un: requires a commutative pattern");
  PatternUnResult out;
  auto term = cat::terminal_category();
  auto bn = cat::nerve(term, depth);
  coh::ComplexFunctor F = coh::constant_functor(term, P.base);
  auto un = coh::unstraighten_over_nerve(F, depth, bn);
  auto rn = coh::relative_nerve(F, depth, bn);
  out.unstraightened = un.complex();

  // Comparison D -> Un_{Delta^0}(D) through the relative nerve (over the
  // terminal category the relative nerve is the identity functor).
  ComplexMap iota;
  iota.src = P.base.complex;
  iota.tgt = rn.complex();
  iota.assign.resize(std::max(iota.src->top_dim() + 1, 1));
  for (int d = 0; d <= iota.src->top_dim(); ++d) {
    iota.assign[d].resize(iota.src->size(d));
    for (int i = 0; i < iota.src->size(d); ++i) {
      std::vector<int> chain(d, term->identity(0));
      std::vector<SimplexRef> comps;
      for (int k = 0; k <= d; ++k) {
        std::vector<int> incl(k + 1);
        for (int l = 0; l <= k; ++l) incl[l] = l;
        comps.push_back(act(*P.base.complex, SimplexRef{d, i, {}}, incl));
      }
      iota.assign[d][i] = rn.locate(0, chain, comps);
    }
  }
  auto cmp = coh::relnerve_comparison(rn, un);
  out.comparison = compose(cmp, iota);

  out.pattern.base.complex = un.complex();
  for (int e : P.base.marked) {
    SimplexRef img = out.comparison.at(1, e);
    if (!img.is_degenerate()) out.pattern.base.marked.insert(img.nd_id);
  }
  // Smallest commutative pattern containing the image: add all equivalences.
  {
    HoCategory ho = HoCategory::build(*un.complex());
    for (int e = 0; e < un.complex()->size(1); ++e)
      if (cat::edge_is_equivalence_unchecked(ho, SimplexRef{1, e, {}}))
        out.pattern.base.marked.insert(e);
  }
  out.pattern.triangles.all = true;
  for (const auto& d : P.diagrams) {
    Diagram nd;
    nd.shape = d.shape;
    nd.cone = d.cone;
    nd.map = compose(out.comparison, d.map);
    out.pattern.diagrams.push_back(std::move(nd));
  }
  return out;
}

MarkedComplex natural_marking(const ComplexMap& p, const MarkedComplex& base,
                              lift::Locality locality, int depth) {
  MarkedComplex out;
  out.complex = p.src;
  for (int e = 0; e < p.src->size(1); ++e) {
    if (!base.is_marked(p.at(1, e))) continue;
    auto v = lift::is_cocartesian_edge_horn(p, SimplexRef{1, e, {}}, locality,
                                            depth);
    if (v == lift::LiftVerdict::BoundExceeded)
      throw Error("natural_marking: bound exceeded at edge " +
                  std::to_string(e));
    if (v == lift::LiftVerdict::Filled) out.marked.insert(e);
  }
  return out;
}

FiberedReport is_P_fibered(const PatternedObject& obj, const Pattern& P,
                           int depth) {
  FiberedReport rep;
  rep.depth = depth;
  MarkedMap p;
  p.src = obj.total;
  p.tgt = P.base;
  p.map = obj.projection;
  rep.marked_left = lift::classify_marked_left(p, P.triangles, depth);
  rep.verdict = rep.marked_left.verdict;

  MarkedComplex sharp_src;  // placeholder for section searches
  for (const auto& d : P.diagrams) {
    DiagramReport dr;
    ComplexMap incl = d.cone.include_base();
    // Sections over K: maps K -> X over S carrying every edge to a marked one.
    SearchProblem sp;
    sp.src = d.shape;
    sp.tgt = obj.total.complex;
    sp.over = &obj.projection;
    sp.init_tables();
    for (int dd = 0; dd <= d.shape->top_dim(); ++dd)
      for (int i = 0; i < d.shape->size(dd); ++i)
        sp.require(dd, i, d.map.push(incl.at(dd, i)));
    auto ksharp = MarkedComplex::sharp(d.shape);
    sp.src_marking = &ksharp;
    sp.tgt_marking = &obj.total;
    auto sections = enumerate_maps(sp);
    dr.sections = static_cast<long long>(sections.size());

    auto cone_sharp = MarkedComplex::sharp(d.cone.complex());
    for (auto& s0 : sections) {
      SearchProblem ep;
      ep.src = d.cone.complex();
      ep.tgt = obj.total.complex;
      ep.over = &obj.projection;
      ep.init_tables();
      for (int dd = 0; dd <= d.cone.complex()->top_dim(); ++dd)
        for (int i = 0; i < d.cone.complex()->size(dd); ++i)
          ep.require(dd, i, d.map.at(dd, i));
      for (int dd = 0; dd <= d.shape->top_dim(); ++dd)
        for (int i = 0; i < d.shape->size(dd); ++i) {
          SimplexRef target = incl.at(dd, i);
          ep.pin(target.nd_dim, target.nd_id, s0.at(dd, i));
        }
      ep.src_marking = &cone_sharp;
      ep.tgt_marking = &obj.total;
      auto exts = enumerate_maps(ep);
      dr.extensions += static_cast<long long>(exts.size());
      if (exts.empty()) {
        dr.has_extensions = Verdict::False;
        dr.detail = "a marked section admits no cone extension";
        break;
      }
      for (auto& s : exts) {
        auto v = lift::is_p_limit_diagram(obj.projection, d.cone, s, depth);
        if (v != lift::LiftVerdict::Filled) {
          dr.limits = v == lift::LiftVerdict::Unfillable ? Verdict::False
                                                         : Verdict::Unknown;
          dr.detail = "a cone extension is not a relative limit";
          break;
        }
      }
      if (dr.limits != Verdict::True) break;
    }
    if (dr.has_extensions != Verdict::True || dr.limits != Verdict::True) {
      if (dr.has_extensions == Verdict::False || dr.limits == Verdict::False)
        rep.verdict = Verdict::False;
      else if (rep.verdict == Verdict::True)
        rep.verdict = Verdict::Unknown;
    }
    rep.diagrams.push_back(std::move(dr));
  }
  return rep;
}

namespace {
ComplexMap pair_to_product(const BundleCandidate& c, ProductComplex& SxD) {
  ComplexMap p;
  p.src = c.total;
  p.tgt = SxD.complex();
  p.assign.resize(std::max(c.total->top_dim() + 1, 1));
  for (int d = 0; d <= c.total->top_dim(); ++d) {
    p.assign[d].resize(c.total->size(d));
    for (int i = 0; i < c.total->size(d); ++i)
      p.assign[d][i] = SxD.locate(c.to_S.at(d, i), c.to_D.at(d, i));
  }
  return p;
}
}  // namespace

PatternedObject bundle_as_product_object(const BundleCandidate& c,
                                         ProductPattern& SP, int depth) {
  PatternedObject obj;
  obj.projection = pair_to_product(c, SP.product);
  if (c.marking) {
    obj.total = *c.marking;
  } else {
    obj.total = natural_marking(obj.projection, SP.pattern.base,
                                lift::Locality::Local, depth);
  }
  return obj;
}

BundleReport is_P_bundle(const BundleCandidate& c, const Pattern& P,
                         int depth) {
  if (!P.commutative()) throw Error("is_P_bundle: requires a commutative pattern");
  BundleReport rep;
  rep.depth = depth;
  auto note = [&rep](std::string name, Verdict v, std::string detail) {
    rep.conditions.push_back({std::move(name), v, std::move(detail)});
  };
  auto lift_verdict = [](lift::LiftVerdict v) {
    switch (v) {
      case lift::LiftVerdict::Filled: return Verdict::True;
      case lift::LiftVerdict::Unfillable: return Verdict::False;
      default: return Verdict::Unknown;
    }
  };

  int pdepth = std::max({depth, c.S->top_dim() + c.D->top_dim(), 1});
  ProductComplex SxD = sset::product(c.S, c.D, pdepth + 1);
  ComplexMap p = pair_to_product(c, SxD);

  // (a) q : X -> S is a cocartesian fibration.
  {
    auto inner = lift::classify_fibration(c.to_S, lift::FibrationKind::Inner,
                                          depth);
    Verdict v = lift_verdict(inner.verdict);
    std::string detail;
    if (v == Verdict::True) {
      for (int x = 0; x < c.total->size(0) && v == Verdict::True; ++x) {
        int qx = c.to_S.at(0, x).nd_id;
        for (int f = 0; f < c.S->size(1) && v == Verdict::True; ++f) {
          if (c.S->cell(1, f).faces[1].nd_id != qx) continue;
          bool found = false;
          bool unknown = false;
          for (int e = 0; e < c.total->size(1); ++e) {
            if (c.total->cell(1, e).faces[1].nd_id != x) continue;
            if (!(c.to_S.at(1, e) == SimplexRef{1, f, {}})) continue;
            auto cv = lift::is_cocartesian_edge_horn(
                c.to_S, SimplexRef{1, e, {}}, lift::Locality::Global, depth);
            if (cv == lift::LiftVerdict::Filled) { found = true; break; }
            if (cv == lift::LiftVerdict::BoundExceeded) unknown = true;
          }
          if (!found) {
            v = unknown ? Verdict::Unknown : Verdict::False;
            detail = "no q-cocartesian lift of base edge " + std::to_string(f) +
                     " at vertex " + std::to_string(x);
          }
        }
      }
    } else if (inner.witness) {
      detail = "inner fibration fails at " + inner.witness->generator;
    }
    note("(a) cocartesian fibration over S", v, detail);
  }

  // (b) p : X -> S x D inner + cocartesian lifts over (f, equivalence).
  {
    auto inner = lift::classify_fibration(p, lift::FibrationKind::Inner, depth);
    Verdict v = lift_verdict(inner.verdict);
    std::string detail;
    if (v == Verdict::True) {
      HoCategory hoD = HoCategory::build(*c.D);
      for (int x = 0; x < c.total->size(0) && v == Verdict::True; ++x) {
        SimplexRef pv = p.at(0, x);
        for (int e = 0; e < SxD.complex()->size(1) && v == Verdict::True;
             ++e) {
          if (!(sset::apply_face(*SxD.complex(), SimplexRef{1, e, {}}, 1) ==
                pv))
            continue;
          auto [fs, gd] = SxD.components(1, e);
          if (!cat::edge_is_equivalence_unchecked(hoD, gd)) continue;
          bool found = false;
          bool unknown = false;
          for (int ee = 0; ee < c.total->size(1); ++ee) {
            if (c.total->cell(1, ee).faces[1].nd_id != x) continue;
            if (!(p.at(1, ee) == SimplexRef{1, e, {}})) continue;
            auto cv = lift::is_cocartesian_edge_horn(
                p, SimplexRef{1, ee, {}}, lift::Locality::Global, depth);
            if (cv == lift::LiftVerdict::Filled) { found = true; break; }
            if (cv == lift::LiftVerdict::BoundExceeded) unknown = true;
          }
          if (!found) {
            v = unknown ? Verdict::Unknown : Verdict::False;
            detail = "no p-cocartesian lift over an equivalence edge";
          }
        }
      }
    } else if (inner.witness) {
      detail = "inner fibration fails at " + inner.witness->generator;
    }
    note("(b) marked left fibration to S x D", v, detail);
  }

  // (c) vertex fibers are P-fibered.
  std::vector<ProductComplex> fibers;
  std::vector<ComplexMap> fiber_to_D;
  {
    Verdict v = Verdict::True;
    std::string detail;
    for (int s = 0; s < c.S->size(0); ++s) {
      fibers.push_back(fiber_over_vertex(c.to_S, s, depth + 2));
      auto& fib = fibers.back();
      ComplexMap toD;
      toD.src = fib.complex();
      toD.tgt = c.D;
      toD.assign.resize(std::max(fib.complex()->top_dim() + 1, 1));
      for (int d = 0; d <= fib.complex()->top_dim(); ++d) {
        toD.assign[d].resize(fib.complex()->size(d));
        for (int i = 0; i < fib.complex()->size(d); ++i) {
          auto [x, pt] = fib.components(d, i);
          toD.assign[d][i] = c.to_D.push(x);
        }
      }
      fiber_to_D.push_back(toD);
      PatternedObject fo;
      fo.projection = fiber_to_D.back();
      fo.total = natural_marking(fiber_to_D.back(), P.base,
                                 lift::Locality::Local, depth);
      auto fr = is_P_fibered(fo, P, depth);
      rep.fiber_reports.push_back(fr);
      if (fr.verdict == Verdict::False) {
        v = Verdict::False;
        detail = "fiber over vertex " + std::to_string(s) + " is not fibered";
        break;
      }
      if (fr.verdict == Verdict::Unknown && v == Verdict::True)
        v = Verdict::Unknown;
    }
    note("(c) vertex fibers are fibered", v, detail);
  }

  // (d) transports preserve fiberwise cocartesian edges over marked edges.
  {
    Verdict v = Verdict::True;
    std::string detail;
    bool prerequisites = true;
    for (auto& cond : rep.conditions)
      if (cond.verdict == Verdict::False) prerequisites = false;
    if (!prerequisites) {
      v = Verdict::Unknown;
      detail = "skipped: earlier conditions failed";
    } else {
      auto d1 = std::make_shared<const CellComplex>(sset::simplex_shape(1));
      for (int f = 0; f < c.S->size(1) && v == Verdict::True; ++f) {
        int vsrc = c.S->cell(1, f).faces[1].nd_id;
        int vtgt = c.S->cell(1, f).faces[0].nd_id;
        auto& fib = fibers[vsrc];
        auto& fibt = fibers[vtgt];
        // Choose cocartesian lifts of (f, id) at every vertex, then extend to
        // a cocartesian homotopy H : fiber x Delta^1 -> X.
        auto cyl = sset::product(fib.complex(), d1, depth + 1);
        SearchProblem hp;
        hp.src = cyl.complex();
        hp.tgt = c.total;
        hp.over = &p;
        hp.init_tables();
        ComplexMap fmap = sset::map_from_simplex(d1, c.S, SimplexRef{1, f, {}});
        for (int dd = 0; dd <= cyl.complex()->top_dim(); ++dd)
          for (int i = 0; i < cyl.complex()->size(dd); ++i) {
            auto [z, t] = cyl.components(dd, i);
            auto [zx, zc] = fib.components(z.nd_dim, z.nd_id);
            SimplexRef x_part = sset::apply_word(zx, z.word);
            SimplexRef sref = fmap.push(t);
            SimplexRef dref = c.to_D.push(x_part);
            hp.require(dd, i, SxD.locate(sref, dref));
            auto tup = sset::tuple_of_simplex_ref(*d1, t);
            if (std::all_of(tup.begin(), tup.end(),
                            [](int b) { return b == 0; }))
              hp.pin(dd, i, x_part);
          }
        // Pin cocartesian vertex edges.
        bool pin_fail = false;
        for (int x = 0; x < fib.complex()->size(0); ++x) {
          auto [zx, zc] = fib.components(0, x);
          std::optional<SimplexRef> lift_edge;
          for (int e = 0; e < c.total->size(1); ++e) {
            if (c.total->cell(1, e).faces[1].nd_id != zx.nd_id) continue;
            SimplexRef want =
                SxD.locate(SimplexRef{1, f, {}},
                           sset::apply_degen(c.to_D.push(zx), 0));
            if (!(p.at(1, e) == want)) continue;
            auto cv = lift::is_cocartesian_edge_horn(
                p, SimplexRef{1, e, {}}, lift::Locality::Global, depth);
            if (cv == lift::LiftVerdict::Filled) {
              lift_edge = SimplexRef{1, e, {}};
              break;
            }
          }
          if (!lift_edge) {
            pin_fail = true;
            break;
          }
          SimplexRef cyl_edge =
              cyl.locate(sset::apply_degen(SimplexRef{0, x, {}}, 0),
                         SimplexRef{1, 0, {}});
          if (cyl_edge.is_degenerate()) continue;
          hp.pin(1, cyl_edge.nd_id, *lift_edge);
        }
        if (pin_fail) {
          v = Verdict::Unknown;
          detail = "no cocartesian vertex lift found over edge " +
                   std::to_string(f);
          break;
        }
        hp.limit = 1;
        auto hs = enumerate_maps(hp);
        if (hs.empty()) {
          v = Verdict::Unknown;
          detail = "could not extend the transport homotopy over edge " +
                   std::to_string(f);
          break;
        }
        // f_! = H restricted to {1}; check marked-edge preservation.
        auto& H = hs.front();
        auto src_marking = natural_marking(fiber_to_D[vsrc], P.base,
                                           lift::Locality::Local, depth);
        auto tgt_marking = natural_marking(fiber_to_D[vtgt], P.base,
                                           lift::Locality::Local, depth);
        for (int e : src_marking.marked) {
          auto [ex, ec] = fib.components(1, e);
          SimplexRef cyl_e = cyl.locate(
              SimplexRef{1, e, {}},
              sset::apply_degen(SimplexRef{0, 1, {}}, 0));
          SimplexRef img = H.push(cyl_e);
          SimplexRef fib_img = fibt.locate(img, ec);
          if (!tgt_marking.is_marked(fib_img)) {
            v = Verdict::False;
            detail = "transport along edge " + std::to_string(f) +
                     " does not preserve fiberwise marked edges";
            break;
          }
        }
      }
    }
    note("(d) transports preserve fiberwise markings", v, detail);
  }

  rep.verdict = Verdict::True;
  for (auto& cond : rep.conditions) {
    if (cond.verdict == Verdict::False) {
      rep.verdict = Verdict::False;
      break;
    }
    if (cond.verdict == Verdict::Unknown) rep.verdict = Verdict::Unknown;
  }
  return rep;
}

TwoOutOfThreeReport marked_two_out_of_three(const PatternedObject& obj,
                                            const Pattern& P) {
  TwoOutOfThreeReport rep;
  const auto& X = *obj.total.complex;
  for (int c = 0; c < X.size(2); ++c) {
    SimplexRef sigma{2, c, {}};
    if (!P.triangles.contains(obj.projection.at(2, c))) continue;
    SimplexRef f = sset::apply_face(X, sigma, 2);
    SimplexRef g = sset::apply_face(X, sigma, 0);
    SimplexRef h = sset::apply_face(X, sigma, 1);
    if (!P.base.is_marked(obj.projection.push(f)) ||
        !P.base.is_marked(obj.projection.push(g)) ||
        !P.base.is_marked(obj.projection.push(h)))
      continue;
    if (!obj.total.is_marked(f)) continue;
    ++rep.checked;
    if (obj.total.is_marked(g) != obj.total.is_marked(h))
      rep.violations.push_back(c);
  }
  return rep;
}

FiberwiseResult fiberwise_equivalence(const BundleCandidate& x,
                                      const BundleCandidate& y,
                                      const ComplexMap& f,
                                      cat::EquivalenceStrategy strategy,
                                      int depth) {
  FiberwiseResult out;
  if (x.S != y.S) throw Error("fiberwise_equivalence: different bases");
  for (int v = 0; v < x.S->size(0); ++v) {
    auto fx = fiber_over_vertex(x.to_S, v, depth);
    auto fy = fiber_over_vertex(y.to_S, v, depth);
    ComplexMap fv;
    fv.src = fx.complex();
    fv.tgt = fy.complex();
    fv.assign.resize(std::max(fx.complex()->top_dim() + 1, 1));
    for (int d = 0; d <= fx.complex()->top_dim(); ++d) {
      fv.assign[d].resize(fx.complex()->size(d));
      for (int i = 0; i < fx.complex()->size(d); ++i) {
        auto [xr, pr] = fx.components(d, i);
        fv.assign[d][i] = fy.locate(f.push(xr), pr);
      }
    }
    cat::EquivalenceOptions opts;
    opts.strategy = strategy;
    opts.depth = depth;
    auto r = cat::is_categorical_equivalence(fv, opts);
    if (r.verdict == Verdict::False) {
      out.verdict = Verdict::False;
      out.witness_vertex = v;
      return out;
    }
    if (r.verdict == Verdict::Unknown) out.verdict = Verdict::Unknown;
  }
  return out;
}

}  // namespace patfib::pat
