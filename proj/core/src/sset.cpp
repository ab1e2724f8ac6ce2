#include "patfib/sset.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace patfib::sset {

bool ref_less(const SimplexRef& a, const SimplexRef& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.nd_dim != b.nd_dim) return a.nd_dim < b.nd_dim;
  if (a.nd_id != b.nd_id) return a.nd_id < b.nd_id;
  return a.word < b.word;
}

CellComplex::CellComplex(std::vector<std::vector<Cell>> tables, int bound,
                         Completeness c)
    : tables_(std::move(tables)), bound_(bound), completeness_(c) {
  if (static_cast<int>(tables_.size()) < bound_ + 1) tables_.resize(bound_ + 1);
}

int CellComplex::top_dim() const {
  for (int d = static_cast<int>(tables_.size()) - 1; d >= 0; --d)
    if (!tables_[d].empty()) return d;
  return -1;
}

int CellComplex::size(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(tables_.size())) return 0;
  return static_cast<int>(tables_[dim].size());
}

const Cell& CellComplex::cell(int dim, int id) const {
  if (dim < 0 || dim >= static_cast<int>(tables_.size()) || id < 0 ||
      id >= static_cast<int>(tables_[dim].size()))
    throw Error("cell reference out of range: dim " + std::to_string(dim) +
                " id " + std::to_string(id));
  return tables_[dim][id];
}

long long CellComplex::total_cells() const {
  long long n = 0;
  for (const auto& t : tables_) n += static_cast<long long>(t.size());
  return n;
}

bool CellComplex::same_tables(const CellComplex& other) const {
  if (top_dim() != other.top_dim()) return false;
  for (int d = 0; d <= top_dim(); ++d) {
    if (size(d) != other.size(d)) return false;
    for (int i = 0; i < size(d); ++i)
      if (cell(d, i).faces != other.cell(d, i).faces) return false;
  }
  return true;
}

ComplexPtr make_complex(std::vector<std::vector<Cell>> tables, int bound,
                        Completeness c) {
  return std::make_shared<const CellComplex>(std::move(tables), bound, c);
}

SimplexRef apply_degen(const SimplexRef& r, int j) {
  if (j < 0 || j > r.dim())
    throw Error("degeneracy index out of range: s_" + std::to_string(j) +
                " on dim " + std::to_string(r.dim()));
  // Normal-form insertion via s_i s_j = s_{j+1} s_i for i <= j.
  SimplexRef out{r.nd_dim, r.nd_id, {}};
  std::vector<int> w;
  size_t k = 0;
  int i = j;
  while (k < r.word.size() && i <= r.word[k]) {
    w.push_back(r.word[k] + 1);
    ++k;
  }
  w.push_back(i);
  for (; k < r.word.size(); ++k) w.push_back(r.word[k]);
  out.word = std::move(w);
  return out;
}

SimplexRef apply_word(const SimplexRef& r, const std::vector<int>& word) {
  SimplexRef out = r;
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    out = apply_degen(out, *it);
  return out;
}

SimplexRef apply_face(const CellComplex& X, const SimplexRef& r, int i) {
  if (i < 0 || i > r.dim() || r.dim() == 0)
    throw Error("face index out of range: d_" + std::to_string(i) +
                " on dim " + std::to_string(r.dim()));
  if (r.word.empty()) return X.cell(r.nd_dim, r.nd_id).faces[i];
  const int j = r.word.front();
  SimplexRef rest{r.nd_dim, r.nd_id,
                  std::vector<int>(r.word.begin() + 1, r.word.end())};
  if (i == j || i == j + 1) return rest;          // d_i s_j = id
  if (i < j)                                      // d_i s_j = s_{j-1} d_i
    return apply_degen(apply_face(X, rest, i), j - 1);
  return apply_degen(apply_face(X, rest, i - 1), j);  // d_i s_j = s_j d_{i-1}
}

SimplexRef act(const CellComplex& X, const SimplexRef& r,
               const std::vector<int>& f) {
  const int m = static_cast<int>(f.size()) - 1;
  if (m < 0) throw Error("act: empty operator");
  for (int k = 0; k < m; ++k)
    if (f[k] > f[k + 1]) throw Error("act: operator not monotone");
  if (f.front() < 0 || f.back() > r.dim())
    throw Error("act: operator out of range");
  // f = identity?
  if (m == r.dim()) {
    bool ident = true;
    for (int k = 0; k <= m; ++k)
      if (f[k] != k) { ident = false; break; }
    if (ident) return r;
  }
  // Split off one collapse: f = f' o sigma_k.
  for (int k = 0; k < m; ++k) {
    if (f[k] == f[k + 1]) {
      std::vector<int> fp;
      fp.reserve(m);
      for (int l = 0; l <= m; ++l)
        if (l != k + 1) fp.push_back(f[l]);
      return apply_degen(act(X, r, fp), k);
    }
  }
  // f injective: peel the largest missed value c, f = delta_c o f''.
  int c = r.dim();
  {
    std::vector<bool> hit(r.dim() + 1, false);
    for (int v : f) hit[v] = true;
    while (c >= 0 && hit[c]) --c;
  }
  std::vector<int> fpp(f);
  for (int& v : fpp)
    if (v > c) --v;
  return act(X, apply_face(X, r, c), fpp);
}

int vertex(const CellComplex& X, const SimplexRef& r, int j) {
  SimplexRef v = act(X, r, {j});
  return v.nd_id;
}

std::vector<int> vertex_tuple(const CellComplex& X, const SimplexRef& r) {
  std::vector<int> out(r.dim() + 1);
  for (int j = 0; j <= r.dim(); ++j) out[j] = vertex(X, r, j);
  return out;
}

namespace {
// All strictly decreasing words of length len on a base cell of dimension d.
// Entry t (left to right) must satisfy word[t] <= d + (len - 1 - t).
void gen_words(int d, int len, int t, int prev, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (t == len) {
    out.push_back(cur);
    return;
  }
  int hi = std::min(prev - 1, d + (len - 1 - t));
  for (int j = hi; j >= 0; --j) {
    cur.push_back(j);
    gen_words(d, len, t + 1, j, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> words_for(int d, int len) {
  std::vector<std::vector<int>> out;
  if (len == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> cur;
  gen_words(d, len, 0, 1 << 20, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace

std::vector<SimplexRef> refs_of_dim(const CellComplex& X, int m) {
  std::vector<SimplexRef> out;
  for (int d = 0; d <= m; ++d) {
    if (X.size(d) == 0) continue;
    auto words = words_for(d, m - d);
    for (int id = 0; id < X.size(d); ++id)
      for (const auto& w : words) out.push_back(SimplexRef{d, id, w});
  }
  std::sort(out.begin(), out.end(), ref_less);
  return out;
}

std::vector<int> surjection_of_word(const std::vector<int>& word, int m) {
  // Collapse positions are exactly the entries of the word.
  std::vector<bool> coll(m, false);
  for (int w : word) {
    if (w < 0 || w >= m) throw Error("surjection_of_word: bad word");
    coll[w] = true;
  }
  std::vector<int> f(m + 1);
  int v = 0;
  for (int i = 0; i <= m; ++i) {
    f[i] = v;
    if (i < m && !coll[i]) ++v;
  }
  return f;
}

std::vector<int> word_of_collapses(std::vector<int> collapses) {
  std::sort(collapses.begin(), collapses.end(), std::greater<int>());
  return collapses;
}

std::vector<int> collapse_positions(const std::vector<int>& values) {
  std::vector<int> out;
  for (size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] == values[i + 1]) out.push_back(static_cast<int>(i));
  return out;
}

void CellComplex::validate() const {
  for (int d = 0; d <= top_dim(); ++d) {
    for (int id = 0; id < size(d); ++id) {
      const Cell& c = cell(d, id);
      if (d == 0) {
        if (!c.faces.empty()) throw Error("vertex with faces: id " + std::to_string(id));
        continue;
      }
      if (static_cast<int>(c.faces.size()) != d + 1)
        throw Error("cell (" + std::to_string(d) + "," + std::to_string(id) +
                    "): expected " + std::to_string(d + 1) + " faces");
      for (int i = 0; i <= d; ++i) {
        const SimplexRef& f = c.faces[i];
        if (f.dim() != d - 1)
          throw Error("cell (" + std::to_string(d) + "," + std::to_string(id) +
                      "): face " + std::to_string(i) + " has wrong dimension");
        if (f.nd_dim < 0 || f.nd_id < 0 || f.nd_id >= size(f.nd_dim))
          throw Error("cell (" + std::to_string(d) + "," + std::to_string(id) +
                      "): face " + std::to_string(i) + " dangles");
        for (size_t t = 0; t + 1 < f.word.size(); ++t)
          if (f.word[t] <= f.word[t + 1])
            throw Error("cell (" + std::to_string(d) + "," +
                        std::to_string(id) + "): face word not decreasing");
        int dim = f.nd_dim;
        for (auto it = f.word.rbegin(); it != f.word.rend(); ++it) {
          if (*it < 0 || *it > dim)
            throw Error("cell (" + std::to_string(d) + "," +
                        std::to_string(id) + "): inadmissible face word");
          ++dim;
        }
      }
      if (d >= 2) {
        // d_i d_j = d_{j-1} d_i for i < j.
        for (int j = 1; j <= d; ++j)
          for (int i = 0; i < j; ++i) {
            SimplexRef lhs = apply_face(*this, c.faces[j], i);
            SimplexRef rhs = apply_face(*this, c.faces[i], j - 1);
            if (!(lhs == rhs))
              throw Error("simplicial identity d_" + std::to_string(i) + " d_" +
                          std::to_string(j) + " violated at cell (" +
                          std::to_string(d) + "," + std::to_string(id) + ")");
          }
      }
    }
  }
}

// --- shapes -----------------------------------------------------------------

namespace {
std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string subset_label(const std::vector<int>& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out;
}

CellComplex simplex_like(int n, bool with_top, int omit_face) {
  // Nondegenerate cells of Delta^n are the nonempty subsets of [n].
  std::vector<std::vector<std::vector<int>>> cells(n + 1);
  for (int d = 0; d <= n; ++d) cells[d] = subsets_of_size(n, d + 1);

  auto in_horn = [&](const std::vector<int>& s) {
    // s lies in the horn iff its complement is nonempty and != {omit_face}.
    std::vector<bool> present(n + 1, false);
    for (int v : s) present[v] = true;
    int missing = 0, missing_v = -1;
    for (int v = 0; v <= n; ++v)
      if (!present[v]) { ++missing; missing_v = v; }
    if (missing == 0) return false;
    if (missing == 1 && missing_v == omit_face) return false;
    return true;
  };

  std::vector<std::vector<std::vector<int>>> kept(n + 1);
  for (int d = 0; d <= n; ++d) {
    for (auto& s : cells[d]) {
      if (!with_top && d == n) continue;
      if (omit_face >= 0 && !in_horn(s)) continue;
      kept[d].push_back(s);
    }
  }
  // Index lookup.
  std::vector<std::map<std::vector<int>, int>> index(n + 1);
  for (int d = 0; d <= n; ++d)
    for (int i = 0; i < static_cast<int>(kept[d].size()); ++i)
      index[d][kept[d][i]] = i;

  std::vector<std::vector<Cell>> tables(n + 1);
  for (int d = 0; d <= n; ++d) {
    for (auto& s : kept[d]) {
      Cell c;
      c.label = subset_label(s);
      if (d > 0) {
        for (int i = 0; i <= d; ++i) {
          std::vector<int> f = s;
          f.erase(f.begin() + i);
          auto it = index[d - 1].find(f);
          if (it == index[d - 1].end())
            throw Error("shape construction: missing face");
          c.faces.push_back(SimplexRef{d - 1, it->second, {}});
        }
      }
      tables[d].push_back(std::move(c));
    }
  }
  int top = n;
  while (top > 0 && tables[top].empty()) --top;
  return CellComplex(std::move(tables), std::max(top, 0),
                     Completeness::Complete);
}
}  // namespace

CellComplex simplex_shape(int n) {
  if (n < 0) throw Error("simplex_shape: n must be >= 0");
  return simplex_like(n, true, -1);
}

CellComplex boundary_shape(int n) {
  if (n < 0) throw Error("boundary_shape: n must be >= 0");
  if (n == 0) return empty_shape();
  return simplex_like(n, false, -1);
}

CellComplex horn_shape(int n, int i) {
  if (n < 1) throw Error("horn_shape: n must be >= 1");
  if (i < 0 || i > n) throw Error("horn index out of range");
  return simplex_like(n, false, i);
}

CellComplex discrete_shape(int k) {
  std::vector<std::vector<Cell>> tables(1);
  for (int i = 0; i < k; ++i) {
    Cell c;
    c.label = std::to_string(i);
    tables[0].push_back(std::move(c));
  }
  return CellComplex(std::move(tables), 0, Completeness::Complete);
}

CellComplex empty_shape() {
  return CellComplex({}, 0, Completeness::Complete);
}

CellComplex cospan_shape() {
  // Vertices a=0, b=1, c=2; edges a->c, b->c.
  std::vector<std::vector<Cell>> tables(2);
  for (int i = 0; i < 3; ++i) {
    Cell c;
    c.label = std::string(1, static_cast<char>('a' + i));
    tables[0].push_back(std::move(c));
  }
  Cell e0;  // a -> c : d_0 = c, d_1 = a
  e0.label = "a<=c";
  e0.faces = {SimplexRef{0, 2, {}}, SimplexRef{0, 0, {}}};
  Cell e1;
  e1.label = "b<=c";
  e1.faces = {SimplexRef{0, 2, {}}, SimplexRef{0, 1, {}}};
  tables[1].push_back(std::move(e0));
  tables[1].push_back(std::move(e1));
  return CellComplex(std::move(tables), 1, Completeness::Complete);
}

CellComplex standard_shape(ShapeKind kind, int n, int horn_index) {
  switch (kind) {
    case ShapeKind::Simplex: return simplex_shape(n);
    case ShapeKind::Boundary: return boundary_shape(n);
    case ShapeKind::Horn: return horn_shape(n, horn_index);
  }
  throw Error("standard_shape: bad kind");
}

std::vector<int> shape_cell_vertices(const CellComplex& X, int dim, int id) {
  SimplexRef r{dim, id, {}};
  return vertex_tuple(X, r);
}

std::optional<int> shape_cell_with_vertices(const CellComplex& X,
                                            const std::vector<int>& verts) {
  const int d = static_cast<int>(verts.size()) - 1;
  for (int id = 0; id < X.size(d); ++id)
    if (shape_cell_vertices(X, d, id) == verts) return id;
  return std::nullopt;
}

std::vector<int> tuple_of_simplex_ref(const CellComplex& delta_n,
                                      const SimplexRef& r) {
  return vertex_tuple(delta_n, r);
}

SimplexRef simplex_ref_of_tuple(const CellComplex& delta_n,
                                const std::vector<int>& tuple) {
  std::vector<int> verts = tuple;
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto id = shape_cell_with_vertices(delta_n, verts);
  if (!id) throw Error("simplex_ref_of_tuple: cell not found");
  return SimplexRef{static_cast<int>(verts.size()) - 1, *id,
                    word_of_collapses(collapse_positions(tuple))};
}

}  // namespace patfib::sset
