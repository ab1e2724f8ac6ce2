#include "patfib/builder.hpp"

#include <algorithm>

namespace patfib::sset {

KeyedComplex KeyedComplex::build(Spec spec) {
  KeyedComplex out;
  out.face_ = spec.face;
  out.degen_ = spec.degen;
  const int bound = spec.bound;
  out.keys_.resize(bound + 1);
  out.index_.resize(bound + 1);
  if (static_cast<int>(spec.raw_cells.size()) < bound + 1)
    spec.raw_cells.resize(bound + 1);

  auto is_degenerate_key = [&](int n, const Key& k) {
    if (n == 0) return false;
    for (int j = n - 1; j >= 0; --j) {
      Key f = spec.face(n, k, j);
      if (spec.degen(n - 1, f, j) == k) return true;
    }
    return false;
  };

  for (int n = 0; n <= bound; ++n) {
    std::vector<Key> raw = spec.raw_cells[n];
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    for (auto& k : raw) {
      if (!is_degenerate_key(n, k)) {
        out.index_[n][k] = static_cast<int>(out.keys_[n].size());
        out.keys_[n].push_back(k);
      }
    }
  }

  std::vector<std::vector<Cell>> tables(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    tables[n].resize(out.keys_[n].size());
    for (size_t i = 0; i < out.keys_[n].size(); ++i) {
      if (spec.label) tables[n][i].label = spec.label(n, out.keys_[n][i]);
      if (n > 0) {
        Cell& c = tables[n][i];
        c.faces.resize(n + 1);
        for (int j = 0; j <= n; ++j)
          c.faces[j] = out.normalize(n - 1, spec.face(n, out.keys_[n][i], j));
      }
    }
  }
  out.complex_ = make_complex(std::move(tables), bound, spec.completeness);
  return out;
}

SimplexRef KeyedComplex::normalize(int n, const Key& k) {
  auto memo_key = std::make_pair(n, k);
  auto it = memo_.find(memo_key);
  if (it != memo_.end()) return it->second;
  SimplexRef result;
  bool reduced = false;
  if (n > 0) {
    for (int j = n - 1; j >= 0 && !reduced; --j) {
      Key f = face_(n, k, j);
      if (degen_(n - 1, f, j) == k) {
        result = apply_degen(normalize(n - 1, f), j);
        reduced = true;
      }
    }
  }
  if (!reduced) {
    auto id = find(n, k);
    if (!id)
      throw Error("KeyedComplex: unresolvable simplex at dimension " +
                  std::to_string(n));
    result = SimplexRef{n, *id, {}};
  }
  memo_.emplace(std::move(memo_key), result);
  return result;
}

const KeyedComplex::Key& KeyedComplex::key(int dim, int nd_id) const {
  return keys_.at(dim).at(nd_id);
}

std::optional<int> KeyedComplex::find(int dim, const Key& k) const {
  if (dim < 0 || dim >= static_cast<int>(index_.size())) return std::nullopt;
  auto it = index_[dim].find(k);
  if (it == index_[dim].end()) return std::nullopt;
  return it->second;
}

void encode_ref(const SimplexRef& r, KeyedComplex::Key& out) {
  out.push_back(r.nd_dim);
  out.push_back(r.nd_id);
  out.push_back(static_cast<std::int64_t>(r.word.size()));
  for (int w : r.word) out.push_back(w);
}

SimplexRef decode_ref(const KeyedComplex::Key& k, size_t& pos) {
  SimplexRef r;
  r.nd_dim = static_cast<int>(k.at(pos++));
  r.nd_id = static_cast<int>(k.at(pos++));
  auto len = static_cast<size_t>(k.at(pos++));
  r.word.reserve(len);
  for (size_t i = 0; i < len; ++i) r.word.push_back(static_cast<int>(k.at(pos++)));
  return r;
}

KeyedComplex::Key encode_ref_pair(const SimplexRef& a, const SimplexRef& b) {
  KeyedComplex::Key k;
  encode_ref(a, k);
  encode_ref(b, k);
  return k;
}

}  // namespace patfib::sset
