#include "clab/rack.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace clab {

FiniteRack rack_from_elements(const GroupCtx& ctx, const std::vector<MatQ>& raw) {
  FiniteRack r;
  r.ctx = ctx;
  std::unordered_map<std::string, int> idx;
  for (const MatQ& m : raw) {
    MatQ c = canonicalize(m, ctx);
    std::string key = mat_pack(c);
    if (idx.emplace(key, int(r.labels.size())).second) r.labels.push_back(std::move(c));
  }
  r.size = int(r.labels.size());
  r.op.assign(size_t(r.size), std::vector<int>(size_t(r.size), -1));
  for (int i = 0; i < r.size; ++i) {
    MatQ gi = r.labels[size_t(i)];
    MatQ gi_inv = inverse(gi);
    for (int j = 0; j < r.size; ++j) {
      MatQ y = canonicalize(mat_mul(mat_mul(gi, r.labels[size_t(j)]), gi_inv), ctx);
      auto it = idx.find(mat_pack(y));
      if (it == idx.end())
        throw std::invalid_argument("rack_from_elements: set not closed under conjugation");
      r.op[size_t(i)][size_t(j)] = it->second;
    }
  }
  return r;
}

FiniteRack rack_from_classes(const std::vector<const ConjClass*>& classes) {
  if (classes.empty()) throw std::invalid_argument("rack_from_classes: no classes");
  const GroupCtx& ctx = classes[0]->ctx;
  std::vector<MatQ> elems;
  for (const ConjClass* c : classes) {
    if (!(c->ctx == ctx)) throw std::invalid_argument("rack_from_classes: mixed contexts");
    for (const MatQ& m : c->elems) elems.push_back(m);
  }
  return rack_from_elements(ctx, elems);
}

FiniteRack rack_from_class(const ConjClass& cls) { return rack_from_classes({&cls}); }

RackAxiomReport check_rack_axioms(const FiniteRack& r) {
  RackAxiomReport rep;
  int n = r.size;
  for (int i = 0; i < n; ++i) {
    std::vector<bool> hit(size_t(n), false);
    for (int j = 0; j < n; ++j) {
      int v = r.tri(i, j);
      if (v < 0 || v >= n || hit[size_t(v)]) {
        rep.ok = false;
        rep.i = i;
        rep.j = j;
        rep.reason = "row is not a permutation";
        return rep;
      }
      hit[size_t(v)] = true;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (r.tri(i, r.tri(j, k)) != r.tri(r.tri(i, j), r.tri(i, k))) {
          rep.ok = false;
          rep.i = i;
          rep.j = j;
          rep.k = k;
          rep.reason = "self-distributivity fails";
          return rep;
        }
  return rep;
}

bool rack_is_abelian(const FiniteRack& r) {
  for (int i = 0; i < r.size; ++i)
    for (int j = 0; j < r.size; ++j)
      if (r.tri(i, j) != j) return false;
  return true;
}

std::vector<std::vector<int>> inn_orbits(const FiniteRack& r) {
  std::vector<int> all(size_t(r.size), 0);
  for (int i = 0; i < r.size; ++i) all[size_t(i)] = i;
  return inn_orbits_on(r, all);
}

std::vector<std::vector<int>> inn_orbits_on(const FiniteRack& r, const std::vector<int>& subset) {
  // orbit closure under the rows indexed by the subset, acting on the subset
  std::vector<int> pos(size_t(r.size), -1);
  for (size_t k = 0; k < subset.size(); ++k) pos[size_t(subset[k])] = int(k);
  std::vector<int> comp(subset.size(), -1);
  std::vector<std::vector<int>> orbits;
  for (size_t s = 0; s < subset.size(); ++s) {
    if (comp[s] >= 0) continue;
    int id = int(orbits.size());
    std::vector<int> orb = {subset[s]};
    comp[s] = id;
    for (size_t head = 0; head < orb.size(); ++head) {
      for (int actor : subset) {
        int img = r.tri(actor, orb[head]);
        int p = pos[size_t(img)];
        if (p < 0) throw std::logic_error("inn_orbits_on: subset is not closed");
        if (comp[size_t(p)] < 0) {
          comp[size_t(p)] = id;
          orb.push_back(img);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

bool is_indecomposable(const FiniteRack& r) { return inn_orbits(r).size() == 1; }

std::vector<int> subrack_closure(const FiniteRack& r, const std::vector<int>& seed) {
  if (seed.empty()) throw std::invalid_argument("subrack_closure: empty seed");
  std::vector<bool> in(size_t(r.size), false);
  std::vector<int> out;
  for (int s : seed)
    if (!in[size_t(s)]) {
      in[size_t(s)] = true;
      out.push_back(s);
    }
  for (size_t a = 0; a < out.size(); ++a)
    for (size_t b = 0; b < out.size(); ++b) {
      int v = r.tri(out[a], out[b]);
      if (!in[size_t(v)]) {
        in[size_t(v)] = true;
        out.push_back(v);
      }
      v = r.tri(out[b], out[a]);
      if (!in[size_t(v)]) {
        in[size_t(v)] = true;
        out.push_back(v);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subrack(const FiniteRack& r, const std::vector<int>& subset) {
  std::vector<bool> in(size_t(r.size), false);
  for (int s : subset) in[size_t(s)] = true;
  for (int a : subset)
    for (int b : subset)
      if (!in[size_t(r.tri(a, b))]) return false;
  return true;
}

FiniteRack induced_subrack(const FiniteRack& r, const std::vector<int>& subset) {
  if (!is_subrack(r, subset)) throw std::invalid_argument("induced_subrack: subset not closed");
  std::vector<int> pos(size_t(r.size), -1);
  for (size_t k = 0; k < subset.size(); ++k) pos[size_t(subset[k])] = int(k);
  FiniteRack s;
  s.size = int(subset.size());
  s.ctx = r.ctx;
  s.op.assign(subset.size(), std::vector<int>(subset.size(), -1));
  for (size_t i = 0; i < subset.size(); ++i) {
    if (!r.labels.empty()) s.labels.push_back(r.labels[size_t(subset[i])]);
    for (size_t j = 0; j < subset.size(); ++j)
      s.op[i][j] = pos[size_t(r.tri(subset[i], subset[j]))];
  }
  return s;
}

// Ganter-style next-closure walk over the subrack closure operator;
// visits every closed set exactly once
std::vector<std::vector<int>> enumerate_subracks(const FiniteRack& r, int max_rack_size) {
  if (r.size > max_rack_size)
    throw bound_error("enumerate_subracks: rack size " + std::to_string(r.size) +
                      " exceeds the exhaustive bound " + std::to_string(max_rack_size));
  int n = r.size;
  std::vector<std::vector<int>> out;
  std::vector<bool> cur(size_t(n), false);
  auto closure_of = [&](const std::vector<bool>& a) {
    std::vector<int> seed;
    for (int i = 0; i < n; ++i)
      if (a[size_t(i)]) seed.push_back(i);
    std::vector<bool> c(size_t(n), false);
    if (!seed.empty())
      for (int v : subrack_closure(r, seed)) c[size_t(v)] = true;
    return c;
  };
  for (;;) {
    bool found = false;
    for (int i = n - 1; i >= 0 && !found; --i) {
      if (cur[size_t(i)]) continue;
      std::vector<bool> probe(size_t(n), false);
      for (int k = 0; k < i; ++k) probe[size_t(k)] = cur[size_t(k)];
      probe[size_t(i)] = true;
      std::vector<bool> cl = closure_of(probe);
      bool lectic = true;
      for (int k = 0; k < i && lectic; ++k)
        if (cl[size_t(k)] && !cur[size_t(k)]) lectic = false;
      if (lectic) {
        cur = cl;
        found = true;
      }
    }
    if (!found) break;
    std::vector<int> set;
    for (int i = 0; i < n; ++i)
      if (cur[size_t(i)]) set.push_back(i);
    out.push_back(std::move(set));
  }
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

static bool subset_abelian(const FiniteRack& r, const std::vector<int>& sub) {
  for (int a : sub)
    for (int b : sub)
      if (r.tri(a, b) != b) return false;
  return true;
}

static bool subset_abelian_or_indecomposable(const FiniteRack& r, const std::vector<int>& sub) {
  if (subset_abelian(r, sub)) return true;
  return inn_orbits_on(r, sub).size() == 1;
}

bool is_sober(const FiniteRack& r, int max_rack_size) {
  if (rack_is_abelian(r)) return true;  // subracks of an abelian rack are abelian
  for (const auto& sub : enumerate_subracks(r, max_rack_size))
    if (!subset_abelian_or_indecomposable(r, sub)) return false;
  return true;
}

bool is_austere(const FiniteRack& r) {
  std::set<std::vector<int>> seen;
  for (int i = 0; i < r.size; ++i)
    for (int j = i; j < r.size; ++j) {
      std::vector<int> cl = subrack_closure(r, {i, j});
      if (!seen.insert(cl).second) continue;
      if (!subset_abelian_or_indecomposable(r, cl)) return false;
    }
  return true;
}

}  // namespace clab
