#include "patfib/map.hpp"

#include <algorithm>

namespace patfib::sset {

SimplexRef ComplexMap::push(const SimplexRef& r) const {
  return apply_word(assign.at(r.nd_dim).at(r.nd_id), r.word);
}

void ComplexMap::validate() const {
  if (!src || !tgt) throw Error("map without endpoints");
  if (static_cast<int>(assign.size()) <= src->top_dim())
    throw Error("map assignment missing dimensions");
  for (int d = 0; d <= src->top_dim(); ++d) {
    if (static_cast<int>(assign[d].size()) != src->size(d))
      throw Error("map assignment size mismatch at dim " + std::to_string(d));
    for (int i = 0; i < src->size(d); ++i) {
      const SimplexRef& v = assign[d][i];
      if (v.dim() != d)
        throw Error("map does not respect dimension at (" + std::to_string(d) +
                    "," + std::to_string(i) + ")");
      if (v.nd_id < 0 || v.nd_id >= tgt->size(v.nd_dim))
        throw Error("map value dangles at (" + std::to_string(d) + "," +
                    std::to_string(i) + ")");
      for (int j = 0; j <= d && d > 0; ++j) {
        SimplexRef lhs = push(src->cell(d, i).faces[j]);
        SimplexRef rhs = apply_face(*tgt, v, j);
        if (!(lhs == rhs))
          throw Error("map does not commute with d_" + std::to_string(j) +
                      " at cell (" + std::to_string(d) + "," +
                      std::to_string(i) + ")");
      }
    }
  }
}

ComplexMap ComplexMap::identity(ComplexPtr X) {
  ComplexMap f;
  f.src = X;
  f.tgt = X;
  f.assign.resize(X->top_dim() + 1);
  for (int d = 0; d <= X->top_dim(); ++d) {
    f.assign[d].resize(X->size(d));
    for (int i = 0; i < X->size(d); ++i) f.assign[d][i] = SimplexRef{d, i, {}};
  }
  if (f.assign.empty()) f.assign.resize(1);
  return f;
}

ComplexMap ComplexMap::constant(ComplexPtr X, ComplexPtr pt, int vertex_id) {
  ComplexMap f;
  f.src = X;
  f.tgt = pt;
  f.assign.resize(std::max(X->top_dim() + 1, 1));
  for (int d = 0; d <= X->top_dim(); ++d) {
    f.assign[d].resize(X->size(d));
    std::vector<int> w;
    for (int j = d - 1; j >= 0; --j) w.push_back(j);
    for (int i = 0; i < X->size(d); ++i)
      f.assign[d][i] = SimplexRef{0, vertex_id, w};
  }
  return f;
}

ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
  if (f.tgt != g.src) throw Error("compose: middle complexes differ");
  ComplexMap h;
  h.src = f.src;
  h.tgt = g.tgt;
  h.assign.resize(f.assign.size());
  for (size_t d = 0; d < f.assign.size(); ++d) {
    h.assign[d].reserve(f.assign[d].size());
    for (const auto& v : f.assign[d]) h.assign[d].push_back(g.push(v));
  }
  return h;
}

ComplexMap map_from_simplex(ComplexPtr delta_n, ComplexPtr tgt,
                            const SimplexRef& top) {
  const int n = delta_n->top_dim();
  if (top.dim() != n) throw Error("map_from_simplex: dimension mismatch");
  ComplexMap f;
  f.src = delta_n;
  f.tgt = tgt;
  f.assign.resize(n + 1);
  for (int d = 0; d <= n; ++d) {
    f.assign[d].resize(delta_n->size(d));
    for (int i = 0; i < delta_n->size(d); ++i)
      f.assign[d][i] = act(*tgt, top, shape_cell_vertices(*delta_n, d, i));
  }
  return f;
}

MarkedComplex MarkedComplex::sharp(ComplexPtr X) {
  MarkedComplex m;
  m.complex = X;
  for (int i = 0; i < X->size(1); ++i) m.marked.insert(i);
  return m;
}

MarkedComplex MarkedComplex::flat(ComplexPtr X) {
  MarkedComplex m;
  m.complex = X;
  return m;
}

void MarkedComplex::validate() const {
  for (int id : marked)
    if (id < 0 || id >= complex->size(1))
      throw Error("marking references missing edge " + std::to_string(id));
}

void MarkedMap::validate() const {
  map.validate();
  if (!preserves_marking(map, src, tgt))
    throw Error("marked map does not preserve markings");
}

bool preserves_marking(const ComplexMap& f, const MarkedComplex& src,
                       const MarkedComplex& tgt) {
  for (int id : src.marked)
    if (!tgt.is_marked(f.at(1, id))) return false;
  return true;
}

void SearchProblem::init_tables() {
  const int top = std::max(src->top_dim(), 0);
  if (static_cast<int>(pinned.size()) <= top) pinned.resize(top + 1);
  if (static_cast<int>(required_base.size()) <= top) required_base.resize(top + 1);
  for (int d = 0; d <= top; ++d) {
    pinned[d].resize(src->size(d));
    required_base[d].resize(src->size(d));
  }
}

void SearchProblem::pin(int dim, int id, SimplexRef v) {
  init_tables();
  pinned[dim][id] = std::move(v);
}

void SearchProblem::require(int dim, int id, SimplexRef base_value) {
  init_tables();
  required_base[dim][id] = std::move(base_value);
}

const std::vector<SimplexRef>& TargetIndex::refs(int dim) {
  if (static_cast<int>(refs_.size()) <= dim) {
    size_t old = refs_.size();
    refs_.resize(dim + 1);
    for (size_t d = old; d <= static_cast<size_t>(dim); ++d)
      refs_[d] = refs_of_dim(*tgt_, static_cast<int>(d));
  }
  return refs_[dim];
}

std::vector<SimplexRef> TargetIndex::refs_with_faces(
    int dim, const std::vector<SimplexRef>& faces) {
  // Degenerate candidates: z = s_j y forces y = d_j z = faces[j].
  std::vector<SimplexRef> out;
  for (int j = 0; j < dim; ++j) {
    if (faces[j].dim() != dim - 1) continue;
    SimplexRef cand = apply_degen(faces[j], j);
    bool ok = true;
    for (int i = 0; i <= dim && ok; ++i)
      if (!(apply_face(*tgt_, cand, i) == faces[i])) ok = false;
    if (ok) out.push_back(cand);
  }
  // Nondegenerate candidates through the sorted face-table index.
  if (static_cast<int>(nd_sorted_.size()) <= dim) nd_sorted_.resize(dim + 1);
  if (static_cast<int>(nd_ready_.size()) <= dim) nd_ready_.resize(dim + 1, false);
  if (!nd_ready_[dim]) {
    auto& idx = nd_sorted_[dim];
    idx.resize(tgt_->size(dim));
    for (int i = 0; i < tgt_->size(dim); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return tgt_->cell(dim, a).faces < tgt_->cell(dim, b).faces;
    });
    nd_ready_[dim] = true;
  }
  const auto& idx = nd_sorted_[dim];
  auto lo = std::lower_bound(idx.begin(), idx.end(), faces,
                             [&](int a, const std::vector<SimplexRef>& f) {
                               return tgt_->cell(dim, a).faces < f;
                             });
  for (auto it = lo; it != idx.end(); ++it) {
    if (tgt_->cell(dim, *it).faces != faces) break;
    out.push_back(SimplexRef{dim, *it, {}});
  }
  std::sort(out.begin(), out.end(), ref_less);
  return out;
}

std::vector<ComplexMap> enumerate_maps(SearchProblem& p, TargetIndex& index) {
  p.init_tables();
  const int top = p.src->top_dim();
  std::vector<ComplexMap> results;
  if (top < 0) {
    ComplexMap empty;
    empty.src = p.src;
    empty.tgt = p.tgt;
    empty.assign.resize(1);
    results.push_back(std::move(empty));
    return results;
  }

  ComplexMap cur;
  cur.src = p.src;
  cur.tgt = p.tgt;
  cur.assign.resize(top + 1);
  for (int d = 0; d <= top; ++d) cur.assign[d].resize(p.src->size(d));

  // Cell worklist in (dim, id) order (or the caller's face-closed subset).
  std::vector<std::pair<int, int>> order;
  if (p.free_cells) {
    order = *p.free_cells;
  } else {
    for (int d = 0; d <= top; ++d)
      for (int i = 0; i < p.src->size(d); ++i) order.emplace_back(d, i);
  }

  auto candidate_ok = [&](int d, int i, const SimplexRef& t,
                          bool faces_known) {
    if (t.dim() != d) return false;
    if (!faces_known) {
      const Cell& c = p.src->cell(d, i);
      for (int j = 0; j <= d && d > 0; ++j)
        if (!(apply_face(*p.tgt, t, j) == cur.push(c.faces[j]))) return false;
    }
    if (p.required_base[d][i]) {
      if (!(p.over->push(t) == *p.required_base[d][i])) return false;
    }
    if (d == 1 && p.src_marking && p.tgt_marking &&
        p.src_marking->is_marked(SimplexRef{1, i, {}}) &&
        !p.tgt_marking->is_marked(t))
      return false;
    return true;
  };

  std::function<void(size_t)> dfs = [&](size_t pos) {
    if (results.size() >= p.limit) return;
    if (pos == order.size()) {
      results.push_back(cur);
      return;
    }
    auto [d, i] = order[pos];
    if (p.pinned[d][i]) {
      const SimplexRef& t = *p.pinned[d][i];
      if (candidate_ok(d, i, t, false)) {
        cur.assign[d][i] = t;
        dfs(pos + 1);
      }
      return;
    }
    if (d == 0) {
      for (const auto& t : index.refs(0)) {
        if (!candidate_ok(d, i, t, true)) continue;
        cur.assign[d][i] = t;
        dfs(pos + 1);
        if (results.size() >= p.limit) return;
      }
      return;
    }
    std::vector<SimplexRef> want(d + 1);
    for (int j = 0; j <= d; ++j) want[j] = cur.push(p.src->cell(d, i).faces[j]);
    auto cands = index.refs_with_faces(d, want);
    for (const auto& t : cands) {
      if (!candidate_ok(d, i, t, true)) continue;
      cur.assign[d][i] = t;
      dfs(pos + 1);
      if (results.size() >= p.limit) return;
    }
  };
  dfs(0);
  return results;
}

std::vector<ComplexMap> enumerate_maps(SearchProblem& p) {
  TargetIndex index(p.tgt);
  return enumerate_maps(p, index);
}

}  // namespace patfib::sset
