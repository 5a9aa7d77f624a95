#include "clab/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace clab {

SignedPerm signed_identity(int n) {
  SignedPerm w;
  w.n = n;
  w.images.resize(size_t(2 * n));
  std::iota(w.images.begin(), w.images.end(), 1);
  return w;
}

bool signed_perm_valid(const SignedPerm& w) {
  int m = 2 * w.n;
  if (int(w.images.size()) != m) return false;
  std::vector<bool> seen(size_t(m) + 1, false);
  for (int v : w.images) {
    if (v < 1 || v > m || seen[size_t(v)]) return false;
    seen[size_t(v)] = true;
  }
  for (int j = 1; j <= m; ++j)
    if (w.apply(m + 1 - j) != m + 1 - w.apply(j)) return false;
  return true;
}

SignedPerm signed_mul(const SignedPerm& a, const SignedPerm& b) {
  if (a.n != b.n) throw std::invalid_argument("signed_mul: rank mismatch");
  SignedPerm r;
  r.n = a.n;
  r.images.resize(size_t(2 * a.n));
  for (int j = 1; j <= 2 * a.n; ++j) r.images[size_t(j - 1)] = a.apply(b.apply(j));
  return r;
}

SignedPerm signed_inv(const SignedPerm& a) {
  SignedPerm r;
  r.n = a.n;
  r.images.resize(size_t(2 * a.n));
  for (int j = 1; j <= 2 * a.n; ++j) r.images[size_t(a.apply(j) - 1)] = j;
  return r;
}

int Partition::sum() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ")";
  return os.str();
}

static void partitions_rec(int n, int maxpart, std::vector<int>& cur,
                           std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition{cur});
    return;
  }
  for (int k = std::min(n, maxpart); k >= 1; --k) {
    cur.push_back(k);
    partitions_rec(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

SignedPerm c_block(int h, int k, int n) {
  if (!(1 <= h && h <= k && k <= n)) throw std::invalid_argument("c_block: need 1 <= h <= k <= n");
  SignedPerm w = signed_identity(n);
  // cycle (h h+1 ... k  2n+1-h 2n-h ... 2n+1-k)
  std::vector<int> cyc;
  for (int j = h; j <= k; ++j) cyc.push_back(j);
  for (int j = h; j <= k; ++j) cyc.push_back(2 * n + 1 - j);
  for (size_t i = 0; i < cyc.size(); ++i)
    w.images[size_t(cyc[i] - 1)] = cyc[(i + 1) % cyc.size()];
  return w;
}

SignedPerm c_lambda(const Partition& lam, int n) {
  if (lam.sum() != n) throw std::invalid_argument("c_lambda: partition must sum to n");
  SignedPerm w = signed_identity(n);
  int start = 1;
  for (int d : lam.parts) {
    w = signed_mul(w, c_block(start, start + d - 1, n));
    start += d;
  }
  return w;
}

MatZ reflection_rep(const SignedPerm& w) {
  int n = w.n;
  MatZ m = MatZ::Zero(n, n);
  for (int j = 1; j <= n; ++j) {
    int img = w.apply(j);
    if (img <= n)
      m(img - 1, j - 1) = 1;
    else
      m(2 * n - img, j - 1) = -1;  // img = 2n+1-k maps e_j to -e_k
  }
  return m;
}

long long det_exact(MatZ m) {
  int n = int(m.rows());
  if (n == 0) return 1;
  // Bareiss fraction-free elimination with row pivoting
  long long sign = 1, prev = 1;
  for (int c = 0; c < n - 1; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      sign = -sign;
    }
    for (int r = c + 1; r < n; ++r)
      for (int j = c + 1; j < n; ++j) {
        __int128 t = __int128(m(r, j)) * m(c, c) - __int128(m(r, c)) * m(c, j);
        t /= prev;
        if (t > __int128(INT64_MAX) || t < __int128(INT64_MIN))
          throw std::overflow_error("det_exact: entry overflow");
        m(r, j) = (long long)t;
      }
    prev = m(c, c);
  }
  return sign * m(n - 1, n - 1);
}

int rank_exact(MatZ m) {
  int rows = int(m.rows()), cols = int(m.cols());
  int rk = 0;
  long long prev = 1;
  for (int c = 0; c < cols && rk < rows; ++c) {
    int piv = -1;
    for (int r = rk; r < rows; ++r)
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rk) m.row(piv).swap(m.row(rk));
    for (int r = rk + 1; r < rows; ++r)
      for (int j = c + 1; j < cols; ++j) {
        __int128 t = __int128(m(r, j)) * m(rk, c) - __int128(m(r, c)) * m(rk, j);
        t /= prev;
        if (t > __int128(INT64_MAX) || t < __int128(INT64_MIN))
          throw std::overflow_error("rank_exact: entry overflow");
        m(r, j) = (long long)t;
      }
    for (int r = rk + 1; r < rows; ++r) m(r, c) = 0;
    prev = m(rk, c);
    ++rk;
  }
  return rk;
}

int absolute_length(const SignedPerm& w) {
  MatZ m = MatZ::Identity(w.n, w.n) - reflection_rep(w);
  return rank_exact(std::move(m));
}

bool is_cuspidal(const SignedPerm& w) { return absolute_length(w) == w.n; }

unsigned long long torus_order_signed(const SignedPerm& w, unsigned long long q) {
  if (q < 2) throw std::invalid_argument("torus_order: q >= 2");
  MatZ m = (long long)q * MatZ::Identity(w.n, w.n) - reflection_rep(w);
  long long d = det_exact(std::move(m));
  return (unsigned long long)(d < 0 ? -d : d);
}

unsigned long long torus_order_gl(const std::vector<int>& sigma, unsigned long long q) {
  if (q < 2) throw std::invalid_argument("torus_order: q >= 2");
  int n = int(sigma.size());
  MatZ m = (long long)q * MatZ::Identity(n, n);
  for (int j = 1; j <= n; ++j) m(sigma[size_t(j - 1)] - 1, j - 1) -= 1;
  long long d = det_exact(std::move(m));
  return (unsigned long long)(d < 0 ? -d : d);
}

std::vector<std::pair<Partition, SignedPerm>> cuspidal_representatives(int n) {
  if (n < 1) throw std::invalid_argument("cuspidal_representatives: n >= 1");
  std::vector<std::pair<Partition, SignedPerm>> out;
  for (const Partition& lam : partitions_of(n)) out.emplace_back(lam, c_lambda(lam, n));
  return out;
}

bool type_a_cuspidal_check(const std::vector<int>& sigma) {
  int n = int(sigma.size());
  // single n-cycle <=> fixed space of the reflection rep is zero
  std::vector<bool> seen(size_t(n) + 1, false);
  int cycles = 0;
  for (int j = 1; j <= n; ++j) {
    if (seen[size_t(j)]) continue;
    ++cycles;
    int k = j;
    while (!seen[size_t(k)]) {
      seen[size_t(k)] = true;
      k = sigma[size_t(k - 1)];
    }
  }
  return cycles == 1;
}

std::vector<std::pair<int, int>> signed_cycle_type(const SignedPerm& w) {
  int m = 2 * w.n;
  std::vector<bool> seen(size_t(m) + 1, false);
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j <= m; ++j) {
    if (seen[size_t(j)]) continue;
    std::vector<int> cyc;
    int k = j;
    while (!seen[size_t(k)]) {
      seen[size_t(k)] = true;
      cyc.push_back(k);
      k = w.apply(k);
    }
    bool self_paired = false;
    for (int v : cyc)
      if (std::find(cyc.begin(), cyc.end(), m + 1 - v) != cyc.end()) {
        self_paired = true;
        break;
      }
    if (self_paired) {
      out.emplace_back(int(cyc.size()) / 2, -1);
    } else {
      // partner cycle will be consumed when first visited; mark it now
      out.emplace_back(int(cyc.size()), 1);
      for (int v : cyc) seen[size_t(m + 1 - v)] = true;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SignedPerm> all_signed_perms(int n) {
  std::vector<int> base(size_t(n), 0);
  std::iota(base.begin(), base.end(), 1);
  std::vector<SignedPerm> out;
  std::vector<int> perm = base;
  do {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      SignedPerm w;
      w.n = n;
      w.images.assign(size_t(2 * n), 0);
      for (int j = 1; j <= n; ++j) {
        int target = perm[size_t(j - 1)];
        bool flip = (mask >> (j - 1)) & 1u;
        int img = flip ? 2 * n + 1 - target : target;
        w.images[size_t(j - 1)] = img;
        w.images[size_t(2 * n - j)] = 2 * n + 1 - img;
      }
      out.push_back(std::move(w));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace clab
