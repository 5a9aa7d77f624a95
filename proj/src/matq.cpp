#include "clab/matq.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace clab {

// ---------- PolyQ ----------

static PolyQ mk_poly(FieldPtr f, polyd::Poly c) {
  return PolyQ{f, polyd::trim(std::move(c))};
}

PolyQ poly_from(FieldPtr f, const std::vector<long>& coeffs) {
  polyd::Poly c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.push_back(fq_of(f, v).code());
  return mk_poly(f, std::move(c));
}

PolyQ poly_from_fq(FieldPtr f, const std::vector<Fq>& coeffs) {
  polyd::Poly c;
  c.reserve(coeffs.size());
  for (const Fq& v : coeffs) c.push_back(v.in(f).code());
  return mk_poly(f, std::move(c));
}

Fq PolyQ::eval(const Fq& x) const {
  Fq acc = fq_zero(field);
  for (int i = int(coeffs.size()) - 1; i >= 0; --i) acc = acc * x + Fq(field, coeffs[size_t(i)]);
  return acc;
}

std::string PolyQ::str() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < int(coeffs.size()); ++i) {
    if (coeffs[size_t(i)] == 0) continue;
    if (!first) os << " + ";
    os << Fq(field, coeffs[size_t(i)]).str();
    if (i >= 1) os << "*X^" << i;
    first = false;
  }
  return os.str();
}

PolyQ poly_mul(const PolyQ& a, const PolyQ& b) {
  if (a.field != b.field) throw std::invalid_argument("poly_mul: mismatched fields");
  return mk_poly(a.field, polyd::mul(a.field, a.coeffs, b.coeffs));
}

PolyQ poly_mod(const PolyQ& a, const PolyQ& b) {
  if (a.field != b.field) throw std::invalid_argument("poly_mod: mismatched fields");
  return mk_poly(a.field, polyd::mod(a.field, a.coeffs, b.coeffs));
}

PolyQ poly_gcd(const PolyQ& a, const PolyQ& b) {
  if (a.field != b.field) throw std::invalid_argument("poly_gcd: mismatched fields");
  return mk_poly(a.field, polyd::gcd_monic(a.field, a.coeffs, b.coeffs));
}

PolyQ poly_deriv(const PolyQ& a) { return mk_poly(a.field, polyd::deriv(a.field, a.coeffs)); }

bool poly_is_irreducible(const PolyQ& f) {
  if (f.degree() < 1) throw std::invalid_argument("poly_is_irreducible: degree must be >= 1");
  if (!f.is_monic()) throw std::invalid_argument("poly_is_irreducible: polynomial must be monic");
  return polyd::is_irreducible(f.field, f.coeffs);
}

bool poly_is_squarefree(const PolyQ& f) {
  if (f.degree() < 1) return true;
  PolyQ d = poly_deriv(f);
  if (d.is_zero()) return false;  // nonconstant with zero derivative: p-th power inside
  return poly_gcd(f, d).degree() == 0;
}

PolyQ poly_lift(const PolyQ& f, FieldPtr ext) {
  if (ext == f.field) return f;
  if (ext->base() != f.field)
    throw std::invalid_argument("poly_lift: target is not an extension of the coefficient field");
  // constant-term digit embedding: code of c in the tower is c itself
  return PolyQ{ext, f.coeffs};
}

// descend an ext element into the base field of ext; requires it to lie there
static Fq descend(const Fq& a, FieldPtr base) {
  FieldPtr E = a.field();
  if (E == base) return a;
  if (E->base() != base) throw std::invalid_argument("descend: field mismatch");
  for (int i = 1; i < E->ext_degree(); ++i)
    if (E->coeff(a.code(), i) != 0) throw std::invalid_argument("descend: element not in base field");
  return Fq(base, E->coeff(a.code(), 0));
}

std::vector<Fq> poly_roots(const PolyQ& f) {
  std::vector<Fq> out;
  if (f.degree() < 1) return out;
  polyd::Poly cur = f.coeffs;
  FieldPtr F = f.field;
  for (const Fq& r : all_elements(F)) {
    for (;;) {
      // evaluate
      Fq acc = fq_zero(F);
      for (int i = int(cur.size()) - 1; i >= 0; --i) acc = acc * r + Fq(F, cur[size_t(i)]);
      if (!acc.is_zero()) break;
      out.push_back(r);
      polyd::Poly lin = {F->neg(r.code()), 1};
      cur = polyd::divq(F, cur, lin);
      if (cur.size() <= 1) return out;
    }
  }
  return out;
}

static int poly_cmp_canon(const PolyQ& a, const PolyQ& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    int c = a.field->lex_cmp(a.coeffs[i], b.coeffs[i]);
    if (c != 0) return c;
  }
  return 0;
}

// p-th root of a polynomial with zero derivative: f(X) = r(X)^p
static polyd::Poly pth_root(FieldPtr F, const polyd::Poly& f) {
  long p = F->p();
  polyd::Poly r((f.size() - 1) / size_t(p) + 1, 0);
  // coefficient c -> c^(q/p) is the inverse of c -> c^p
  unsigned long long e = F->q() / (unsigned long long)p;
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    if (i % size_t(p) != 0) throw std::logic_error("pth_root: derivative was not zero");
    r[i / size_t(p)] = F->pow(f[i], (long long)e);
  }
  return polyd::trim(std::move(r));
}

// one monic irreducible factor of a nonconstant monic polynomial
static polyd::Poly find_irreducible_factor(FieldPtr F, polyd::Poly f) {
  for (;;) {
    if (f.size() == 2) return polyd::make_monic(F, f);
    polyd::Poly fp = polyd::deriv(F, f);
    if (fp.empty()) {
      f = pth_root(F, f);
      continue;
    }
    polyd::Poly g = polyd::gcd_monic(F, f, fp);
    polyd::Poly w = g.size() > 1 ? polyd::divq(F, f, g) : f;  // squarefree part
    // distinct-degree: smallest d with gcd(w, X^(q^d) - X) nonconstant
    int dw = int(w.size()) - 1;
    polyd::Poly x = {0, 1};
    for (int d = 1; d <= dw; ++d) {
      polyd::Poly xq = polyd::xq_pow_mod(F, F->q(), d, w);
      polyd::Poly gd = polyd::gcd_monic(F, polyd::sub(F, xq, x), w);
      if (gd.size() <= 1) continue;
      if (int(gd.size()) - 1 == d) return gd;  // a single irreducible of degree d
      // equal-degree split by root extraction in GF(q^d)
      FieldPtr E = extension_field(F, d);
      PolyQ lifted = poly_lift(PolyQ{F, gd}, E);
      Fq zeta = fq_zero(E);
      bool found = false;
      for (uint64_t v = 0; v < E->q() && !found; ++v) {
        Fq cand(E, uint32_t(v));
        if (lifted.eval(cand).is_zero()) {
          zeta = cand;
          found = true;
        }
      }
      if (!found) throw std::logic_error("find_irreducible_factor: no root in split field");
      // product over the Frobenius orbit of zeta
      PolyQ h{E, {1}};
      Fq z = zeta;
      for (int i = 0; i < d; ++i) {
        PolyQ lin{E, polyd::trim({E->neg(z.code()), 1})};
        h = poly_mul(h, lin);
        z = frobenius(z, 1, F->q());
      }
      polyd::Poly hf(h.coeffs.size());
      for (size_t i = 0; i < h.coeffs.size(); ++i) hf[i] = descend(Fq(E, h.coeffs[i]), F).code();
      return hf;
    }
    throw std::logic_error("find_irreducible_factor: exhausted degrees");
  }
}

std::vector<PolyQ> poly_factor(const PolyQ& f) {
  if (f.degree() < 1) throw std::invalid_argument("poly_factor: degree must be >= 1");
  if (!f.is_monic()) throw std::invalid_argument("poly_factor: polynomial must be monic");
  FieldPtr F = f.field;
  polyd::Poly rest = f.coeffs;
  std::vector<PolyQ> out;
  while (rest.size() > 1) {
    polyd::Poly h = find_irreducible_factor(F, rest);
    for (;;) {
      polyd::Poly r = polyd::mod(F, rest, h);
      if (!r.empty()) break;
      rest = polyd::divq(F, rest, h);
      out.push_back(PolyQ{F, h});
      if (rest.size() <= 1) break;
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyQ& a, const PolyQ& b) { return poly_cmp_canon(a, b) < 0; });
  return out;
}

// ---------- matrix constructors ----------

MatQ mat_zero(FieldPtr f, int r, int c) {
  MatQ m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = fq_zero(f);
  return m;
}

MatQ mat_identity(FieldPtr f, int n) {
  MatQ m = mat_zero(f, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = fq_one(f);
  return m;
}

MatQ mat_scalar(FieldPtr f, int n, const Fq& c) {
  MatQ m = mat_zero(f, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = c.in(f);
  return m;
}

MatQ mat_from(FieldPtr f, int n, const std::vector<long>& rowmajor) {
  if (int(rowmajor.size()) != n * n) throw std::invalid_argument("mat_from: wrong entry count");
  MatQ m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = fq_of(f, rowmajor[size_t(i * n + j)]);
  return m;
}

MatQ mat_diag(const std::vector<Fq>& d) {
  if (d.empty()) throw std::invalid_argument("mat_diag: empty diagonal");
  FieldPtr f = d[0].field();
  MatQ m = mat_zero(f, int(d.size()), int(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m(int(i), int(i)) = d[i].in(f);
  return m;
}

MatQ mat_diag_blocks(const MatQ& a, const MatQ& b) {
  FieldPtr f = mat_field(a);
  int n = int(a.rows()), m = int(b.rows());
  MatQ r = mat_zero(f, n + m, n + m);
  r.block(0, 0, n, n) = a;
  r.block(n, n, m, m) = b;
  return r;
}

FieldPtr mat_field(const MatQ& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j).field()) return a(i, j).field();
  throw std::invalid_argument("mat_field: matrix of literals");
}

MatQ normalized(const MatQ& a, FieldPtr f) {
  MatQ r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).in(f);
  return r;
}

MatQ antidiag_j(FieldPtr f, int m) {
  MatQ r = mat_zero(f, m, m);
  for (int i = 0; i < m; ++i) r(i, m - 1 - i) = fq_one(f);
  return r;
}

MatQ form_matrix(FieldPtr f, FormKind kind, int nprime) {
  switch (kind) {
    case FormKind::Symplectic: {
      if (nprime % 2) throw std::invalid_argument("form_matrix: symplectic size must be even");
      int n = nprime / 2;
      MatQ r = mat_zero(f, nprime, nprime);
      r.block(0, n, n, n) = antidiag_j(f, n);
      MatQ mj = antidiag_j(f, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mj(i, j) = -mj(i, j);
      r.block(n, 0, n, n) = mj;
      return r;
    }
    case FormKind::OrthogonalOdd:
      if (nprime % 2 == 0) throw std::invalid_argument("form_matrix: odd orthogonal size must be odd");
      return antidiag_j(f, nprime);
    case FormKind::OrthogonalEven:
      if (nprime % 2) throw std::invalid_argument("form_matrix: even orthogonal size must be even");
      return antidiag_j(f, nprime);
  }
  throw std::logic_error("form_matrix: unreachable");
}

// ---------- elimination-based operations ----------

MatQ mat_mul(const MatQ& a, const MatQ& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: dimension mismatch");
  FieldPtr f = mat_field(a);
  int n = int(a.rows()), k = int(a.cols()), m = int(b.cols());
  MatQ r = mat_zero(f, n, m);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      const Fq& ail = a(i, l);
      if (ail.is_zero()) continue;
      for (int j = 0; j < m; ++j) r(i, j) += ail * b(l, j);
    }
  return r;
}

Fq det(const MatQ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("det: square matrices only");
  FieldPtr f = mat_field(a);
  MatQ m = normalized(a, f);
  int n = int(m.rows());
  Fq d = fq_one(f);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return fq_zero(f);
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      d = -d;
    }
    d = d * m(c, c);
    Fq pi = inv(m(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      Fq factor = m(r, c) * pi;
      for (int j = c; j < n; ++j) m(r, j) -= factor * m(c, j);
    }
  }
  return d;
}

std::optional<MatQ> inverse_opt(const MatQ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse: square matrices only");
  FieldPtr f = mat_field(a);
  int n = int(a.rows());
  MatQ m = normalized(a, f);
  MatQ e = mat_identity(f, n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    if (piv != c) {
      m.row(piv).swap(m.row(c));
      e.row(piv).swap(e.row(c));
    }
    Fq pi = inv(m(c, c));
    for (int j = 0; j < n; ++j) {
      m(c, j) *= pi;
      e(c, j) *= pi;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m(r, c).is_zero()) continue;
      Fq factor = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= factor * m(c, j);
        e(r, j) -= factor * e(c, j);
      }
    }
  }
  return e;
}

MatQ inverse(const MatQ& a) {
  auto r = inverse_opt(a);
  if (!r) throw std::invalid_argument("inverse: singular matrix");
  return *r;
}

int rank(const MatQ& a) {
  FieldPtr f = mat_field(a);
  MatQ m = normalized(a, f);
  int rows = int(m.rows()), cols = int(m.cols());
  int rk = 0;
  for (int c = 0; c < cols && rk < rows; ++c) {
    int piv = -1;
    for (int r = rk; r < rows; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(rk));
    Fq pi = inv(m(rk, c));
    for (int r = rk + 1; r < rows; ++r) {
      if (m(r, c).is_zero()) continue;
      Fq factor = m(r, c) * pi;
      for (int j = c; j < cols; ++j) m(r, j) -= factor * m(rk, j);
    }
    ++rk;
  }
  return rk;
}

MatQ mat_pow(const MatQ& a, long long e) {
  FieldPtr f = mat_field(a);
  int n = int(a.rows());
  MatQ base = e < 0 ? inverse(a) : normalized(a, f);
  unsigned long long ee = e < 0 ? (unsigned long long)(-e) : (unsigned long long)e;
  MatQ r = mat_identity(f, n);
  while (ee) {
    if (ee & 1) r = mat_mul(r, base);
    base = mat_mul(base, base);
    ee >>= 1;
  }
  return r;
}

bool is_identity(const MatQ& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (i == j && !(a(i, j) == Fq(1))) return false;
      if (i != j && !a(i, j).is_zero()) return false;
    }
  return true;
}

bool is_scalar_mat(const MatQ& a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (i != j && !a(i, j).is_zero()) return false;
      if (i == j && !(a(i, j) == a(0, 0))) return false;
    }
  return true;
}

std::optional<VecQ> solve(const MatQ& a, const VecQ& b) {
  FieldPtr f = mat_field(a);
  int rows = int(a.rows()), cols = int(a.cols());
  MatQ m(rows, cols + 1);
  m.block(0, 0, rows, cols) = normalized(a, f);
  for (int i = 0; i < rows; ++i) m(i, cols) = b(i).in(f);
  std::vector<int> pivot_col;
  int rk = 0;
  for (int c = 0; c < cols && rk < rows; ++c) {
    int piv = -1;
    for (int r = rk; r < rows; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(rk));
    Fq pi = inv(m(rk, c));
    for (int j = c; j <= cols; ++j) m(rk, j) *= pi;
    for (int r = 0; r < rows; ++r) {
      if (r == rk || m(r, c).is_zero()) continue;
      Fq factor = m(r, c);
      for (int j = c; j <= cols; ++j) m(r, j) -= factor * m(rk, j);
    }
    pivot_col.push_back(c);
    ++rk;
  }
  for (int r = rk; r < rows; ++r)
    if (!m(r, cols).is_zero()) return std::nullopt;
  VecQ x(cols);
  for (int j = 0; j < cols; ++j) x(j) = fq_zero(f);
  for (int i = 0; i < rk; ++i) x(pivot_col[size_t(i)]) = m(i, cols);
  return x;
}

std::vector<VecQ> null_space(const MatQ& a) {
  FieldPtr f = mat_field(a);
  int rows = int(a.rows()), cols = int(a.cols());
  MatQ m = normalized(a, f);
  std::vector<int> pivot_of_col(size_t(cols), -1);
  int rk = 0;
  for (int c = 0; c < cols && rk < rows; ++c) {
    int piv = -1;
    for (int r = rk; r < rows; ++r)
      if (!m(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(rk));
    Fq pi = inv(m(rk, c));
    for (int j = c; j < cols; ++j) m(rk, j) *= pi;
    for (int r = 0; r < rows; ++r) {
      if (r == rk || m(r, c).is_zero()) continue;
      Fq factor = m(r, c);
      for (int j = c; j < cols; ++j) m(r, j) -= factor * m(rk, j);
    }
    pivot_of_col[size_t(c)] = rk;
    ++rk;
  }
  std::vector<VecQ> basis;
  for (int c = 0; c < cols; ++c) {
    if (pivot_of_col[size_t(c)] >= 0) continue;
    VecQ v(cols);
    for (int j = 0; j < cols; ++j) v(j) = fq_zero(f);
    v(c) = fq_one(f);
    for (int j = 0; j < cols; ++j)
      if (pivot_of_col[size_t(j)] >= 0) v(j) = -m(pivot_of_col[size_t(j)], c);
    basis.push_back(v);
  }
  return basis;
}

// ---------- characteristic and minimal polynomials ----------

PolyQ charpoly(const MatQ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("charpoly: square matrices only");
  FieldPtr f = mat_field(a);
  int n = int(a.rows());
  MatQ h = normalized(a, f);
  // similarity reduction to upper Hessenberg, pivoting on the first nonzero
  for (int c = 0; c + 2 < n; ++c) {
    int piv = -1;
    for (int r = c + 1; r < n; ++r)
      if (!h(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != c + 1) {
      h.row(piv).swap(h.row(c + 1));
      h.col(piv).swap(h.col(c + 1));
    }
    Fq pi = inv(h(c + 1, c));
    for (int r = c + 2; r < n; ++r) {
      if (h(r, c).is_zero()) continue;
      Fq factor = h(r, c) * pi;
      for (int j = 0; j < n; ++j) h(r, j) -= factor * h(c + 1, j);
      for (int i = 0; i < n; ++i) h(i, c + 1) += factor * h(i, r);
    }
  }
  // determinant recurrence on the Hessenberg form: p_i = charpoly of the
  // leading i x i block
  std::vector<polyd::Poly> p(size_t(n) + 1);
  p[0] = {1};
  for (int i = 1; i <= n; ++i) {
    polyd::Poly lin = polyd::trim({f->neg(h(i - 1, i - 1).code()), 1});
    p[size_t(i)] = polyd::mul(f, lin, p[size_t(i - 1)]);
    Fq prod = fq_one(f);
    for (int k = i - 1; k >= 1; --k) {
      prod = prod * h(k, k - 1);
      if (prod.is_zero()) break;
      Fq coeff = h(k - 1, i - 1) * prod;
      if (coeff.is_zero()) continue;
      polyd::Poly t = p[size_t(k - 1)];
      for (auto& cc : t) cc = f->mul(cc, coeff.code());
      p[size_t(i)] = polyd::sub(f, p[size_t(i)], t);
    }
  }
  return PolyQ{f, p[size_t(n)]};
}

PolyQ minpoly(const MatQ& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("minpoly: square matrices only");
  FieldPtr f = mat_field(a);
  int n = int(a.rows());
  MatQ m = normalized(a, f);
  polyd::Poly total = {1};
  for (int start = 0; start < n; ++start) {
    VecQ e(n);
    for (int j = 0; j < n; ++j) e(j) = fq_zero(f);
    e(start) = fq_one(f);
    // Krylov chain for e with combination tracking
    std::vector<VecQ> chain_red;     // reduced chain vectors (against local set)
    std::vector<int> chain_piv;
    std::vector<polyd::Poly> chain_comb;
    VecQ v = e;
    polyd::Poly comb = {1};
    polyd::Poly local;
    for (;;) {
      // reduce v against the chain, tracking the combination
      VecQ w = v;
      polyd::Poly wc = comb;
      for (size_t i = 0; i < chain_red.size(); ++i) {
        const Fq& c = w(chain_piv[i]);
        if (c.is_zero()) continue;
        Fq factor = c;
        for (int j = 0; j < n; ++j) w(j) -= factor * chain_red[i](j);
        polyd::Poly t = chain_comb[i];
        for (auto& cc : t) cc = f->mul(cc, factor.code());
        wc = polyd::sub(f, wc, t);
      }
      int piv = -1;
      for (int j = 0; j < n; ++j)
        if (!w(j).is_zero()) {
          piv = j;
          break;
        }
      if (piv < 0) {
        local = polyd::make_monic(f, wc);
        break;
      }
      Fq pi = inv(w(piv));
      for (int j = 0; j < n; ++j) w(j) *= pi;
      polyd::Poly wcn = wc;
      for (auto& cc : wcn) cc = f->mul(cc, pi.code());
      chain_red.push_back(w);
      chain_piv.push_back(piv);
      chain_comb.push_back(wcn);
      // next Krylov vector
      VecQ nv(n);
      for (int i = 0; i < n; ++i) {
        Fq acc = fq_zero(f);
        for (int j = 0; j < n; ++j) acc += m(i, j) * v(j);
        nv(i) = acc;
      }
      v = nv;
      comb.insert(comb.begin(), 0);  // multiply by X
    }
    // total = lcm(total, local)
    polyd::Poly g = polyd::gcd_monic(f, total, local);
    total = polyd::divq(f, polyd::mul(f, total, local), g);
    if (int(total.size()) - 1 == n) break;
  }
  return PolyQ{f, total};
}

bool is_semisimple(const MatQ& a) { return poly_is_squarefree(minpoly(a)); }

bool is_regular(const MatQ& a) { return minpoly(a) == charpoly(a); }

MatQ companion(const PolyQ& f) {
  if (f.degree() < 1) throw std::invalid_argument("companion: degree must be >= 1");
  if (!f.is_monic()) throw std::invalid_argument("companion: polynomial must be monic");
  FieldPtr F = f.field;
  int n = f.degree();
  MatQ m = mat_zero(F, n, n);
  for (int i = 1; i < n; ++i) m(i, i - 1) = fq_one(F);
  for (int i = 0; i < n; ++i) m(i, n - 1) = -f.coeff(i);
  return m;
}

MatQ phi(const MatQ& a) {
  FieldPtr f = mat_field(a);
  int m = int(a.rows());
  MatQ j = antidiag_j(f, m);
  MatQ ti = inverse(MatQ(a.transpose()));
  return mat_mul(mat_mul(j, ti), j);
}

bool form_membership(const MatQ& a, FormKind kind) {
  FieldPtr f = mat_field(a);
  int np = int(a.rows());
  if (int(a.cols()) != np) return false;
  switch (kind) {
    case FormKind::Symplectic:
      if (np % 2) return false;
      break;
    case FormKind::OrthogonalOdd:
      if (np % 2 == 0) return false;
      break;
    case FormKind::OrthogonalEven:
      if (np % 2) return false;
      break;
  }
  MatQ g = form_matrix(f, kind, np);
  // ᵗA G A = G exactly
  MatQ t = mat_mul(MatQ(a.transpose()), mat_mul(g, a));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < np; ++j)
      if (!(t(i, j) == g(i, j))) return false;
  if (!(det(a) == Fq(1))) return false;
  if (kind == FormKind::OrthogonalEven && f->p() == 2) {
    // quadratic form sum x_i x_(2n+1-i): require the diagonal of ᵗC J A and
    // ᵗB J D to vanish
    int n = np / 2;
    MatQ A = a.block(0, 0, n, n), B = a.block(0, n, n, n);
    MatQ C = a.block(n, 0, n, n), D = a.block(n, n, n, n);
    MatQ jn = antidiag_j(f, n);
    MatQ cja = mat_mul(MatQ(C.transpose()), mat_mul(jn, A));
    MatQ bjd = mat_mul(MatQ(B.transpose()), mat_mul(jn, D));
    for (int i = 0; i < n; ++i)
      if (!cja(i, i).is_zero() || !bjd(i, i).is_zero()) return false;
  }
  return true;
}

EigOrbit eigenvalue_orbit(const MatQ& a) {
  PolyQ f = charpoly(a);
  if (!poly_is_irreducible(f)) throw std::invalid_argument("eigenvalue_orbit: reducible characteristic polynomial");
  FieldPtr F = f.field;
  int n = f.degree();
  EigOrbit out;
  if (n == 1) {
    out.ext = F;
    out.root = -f.coeff(0);
    out.orbit = {out.root};
    return out;
  }
  FieldPtr E = extension_field(F, n);
  PolyQ lifted = poly_lift(f, E);
  // smallest root in canonical order
  bool found = false;
  Fq best = fq_zero(E);
  for (const Fq& cand : all_elements(E)) {
    if (lifted.eval(cand).is_zero()) {
      best = cand;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("eigenvalue_orbit: no root in the splitting field");
  out.ext = E;
  out.root = best;
  Fq z = best;
  for (int i = 0; i < n; ++i) {
    out.orbit.push_back(z);
    z = frobenius(z, 1, F->q());
  }
  return out;
}

long long mat_order(const MatQ& a) {
  FieldPtr f = mat_field(a);
  if (!inverse_opt(a)) throw std::invalid_argument("mat_order: singular matrix");
  PolyQ mp = minpoly(a);
  std::vector<PolyQ> fac = poly_factor(mp);
  // group equal factors
  long long ord = 1;
  int max_mult = 1;
  std::vector<PolyQ> distinct;
  for (size_t i = 0; i < fac.size(); ++i) {
    int mult = 1;
    while (i + 1 < fac.size() && fac[i + 1] == fac[i]) {
      ++mult;
      ++i;
    }
    max_mult = std::max(max_mult, mult);
    distinct.push_back(fac[i]);
  }
  for (const PolyQ& h : distinct) {
    int d = h.degree();
    long long o;
    if (d == 1) {
      Fq r = -h.coeff(0);
      if (r.is_zero()) throw std::invalid_argument("mat_order: singular matrix");
      o = element_order(r);
    } else {
      FieldPtr E = extension_field(f, d);
      PolyQ lifted = poly_lift(h, E);
      Fq root = fq_zero(E);
      for (const Fq& cand : all_elements(E))
        if (lifted.eval(cand).is_zero()) {
          root = cand;
          break;
        }
      o = element_order(root);
    }
    ord = std::lcm(ord, o);
  }
  long long punit = 1;
  while (punit < max_mult) punit *= f->p();
  return ord * punit;
}

std::string mat_str(const MatQ& a) {
  std::ostringstream os;
  for (int i = 0; i < a.rows(); ++i) {
    os << (i ? "; " : "[");
    for (int j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j).str();
  }
  os << "]";
  return os.str();
}

int mat_cmp(const MatQ& a, const MatQ& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("mat_cmp: shape mismatch");
  FieldPtr f = mat_field(a);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      int c = f->lex_cmp(a(i, j).in(f).code(), b(i, j).in(f).code());
      if (c != 0) return c;
    }
  return 0;
}

bool mat_less(const MatQ& a, const MatQ& b) { return mat_cmp(a, b) < 0; }

std::string mat_pack(const MatQ& a) {
  FieldPtr f = mat_field(a);
  int bytes = f->q() <= 256 ? 1 : (f->q() <= 65536 ? 2 : 3);
  std::string s;
  s.reserve(size_t(a.rows() * a.cols() * bytes));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      uint32_t c = a(i, j).in(f).code();
      for (int b = 0; b < bytes; ++b) s.push_back(char((c >> (8 * b)) & 0xff));
    }
  return s;
}

}  // namespace clab
