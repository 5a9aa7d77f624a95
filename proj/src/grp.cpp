#include "clab/grp.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace clab {

std::string family_name(Family f) {
  switch (f) {
    case Family::GL: return "gl";
    case Family::SL: return "sl";
    case Family::Sp: return "sp";
    case Family::SOodd: return "so-odd";
    case Family::SOeven: return "so-even";
  }
  return "?";
}

int GroupCtx::rank() const {
  switch (family) {
    case Family::GL:
    case Family::SL: return nprime;
    case Family::Sp:
    case Family::SOeven: return nprime / 2;
    case Family::SOodd: return (nprime - 1) / 2;
  }
  return 0;
}

std::optional<FormKind> GroupCtx::form() const {
  switch (family) {
    case Family::Sp: return FormKind::Symplectic;
    case Family::SOodd: return FormKind::OrthogonalOdd;
    case Family::SOeven: return FormKind::OrthogonalEven;
    default: return std::nullopt;
  }
}

std::string GroupCtx::name() const {
  std::ostringstream os;
  if (projective) os << "P";
  if (derived_only) os << "Omega(";
  switch (family) {
    case Family::GL: os << "GL_" << nprime; break;
    case Family::SL: os << "SL_" << nprime; break;
    case Family::Sp: os << "Sp_" << nprime; break;
    case Family::SOodd:
    case Family::SOeven: os << "SO_" << nprime; break;
  }
  if (derived_only) os << ")";
  os << "(" << field->q() << ")";
  return os.str();
}

GroupCtx make_ctx(Family fam, int n_param, FieldPtr f, bool projective, bool derived_only) {
  GroupCtx ctx;
  ctx.family = fam;
  ctx.field = f;
  ctx.projective = projective;
  ctx.derived_only = derived_only && (fam == Family::SOodd || fam == Family::SOeven);
  switch (fam) {
    case Family::GL:
    case Family::SL: ctx.nprime = n_param; break;
    case Family::Sp: ctx.nprime = 2 * n_param; break;
    case Family::SOodd: ctx.nprime = 2 * n_param + 1; break;
    case Family::SOeven: ctx.nprime = 2 * n_param; break;
  }
  if (ctx.nprime < 1) throw std::invalid_argument("make_ctx: bad size");
  if (fam == Family::SOodd && f->p() == 2)
    throw std::invalid_argument("make_ctx: odd orthogonal groups need odd q");
  return ctx;
}

u128 group_order(const GroupCtx& ctx) {
  u128 q = ctx.field->q();
  int n = ctx.nprime;
  auto qpow = [&](int e) { return ipow_checked(q, e); };
  u128 ord = 1;
  switch (ctx.family) {
    case Family::GL: {
      ord = ipow_checked(q, n * (n - 1) / 2);
      for (int i = 1; i <= n; ++i) ord *= qpow(i) - 1;
      if (ctx.projective) ord /= (q - 1);
      return ord;
    }
    case Family::SL: {
      ord = ipow_checked(q, n * (n - 1) / 2);
      for (int i = 1; i <= n; ++i) ord *= qpow(i) - 1;
      ord /= (q - 1);
      if (ctx.projective) ord /= gcd_u128(u128((unsigned long long)n), q - 1);
      return ord;
    }
    case Family::Sp: {
      int r = n / 2;
      ord = ipow_checked(q, r * r);
      for (int i = 1; i <= r; ++i) ord *= qpow(2 * i) - 1;
      if (ctx.projective) ord /= gcd_u128(2, q - 1);
      return ord;
    }
    case Family::SOodd: {
      int r = (n - 1) / 2;
      ord = ipow_checked(q, r * r);
      for (int i = 1; i <= r; ++i) ord *= qpow(2 * i) - 1;
      if (ctx.derived_only) ord /= 2;
      if (ctx.projective && !ctx.derived_only)
        throw std::invalid_argument("group_order: unsupported combination");
      return ord;
    }
    case Family::SOeven: {
      int r = n / 2;
      ord = ipow_checked(q, r * (r - 1)) * (qpow(r) - 1);
      for (int i = 1; i < r; ++i) ord *= qpow(2 * i) - 1;
      if (ctx.field->p() == 2) ord *= 2;  // the p=2 matrix group is the full O^+
      if (ctx.derived_only) ord /= 2;
      if (ctx.projective) throw std::invalid_argument("group_order: unsupported combination");
      return ord;
    }
  }
  throw std::logic_error("group_order: unreachable");
}

std::vector<Fq> center_scalars(const GroupCtx& ctx) {
  FieldPtr f = ctx.field;
  std::vector<Fq> out;
  switch (ctx.family) {
    case Family::GL:
      for (const Fq& z : all_elements(f))
        if (!z.is_zero()) out.push_back(z);
      return out;
    case Family::SL: return roots_of_unity(ctx.nprime, f);
    case Family::Sp: return roots_of_unity(2, f);
    case Family::SOodd: return {fq_one(f)};
    case Family::SOeven: {
      std::vector<Fq> cand = roots_of_unity(2, f);
      if (!ctx.derived_only) return cand;
      std::vector<Fq> kept;
      for (const Fq& z : cand) {
        MatQ zi = mat_scalar(f, ctx.nprime, z);
        GroupCtx plain = ctx;
        plain.derived_only = false;
        plain.projective = false;
        if (in_omega(zi, plain)) kept.push_back(z);
      }
      return kept;
    }
  }
  throw std::logic_error("center_scalars: unreachable");
}

bool group_membership(const MatQ& x, const GroupCtx& ctx) {
  if (int(x.rows()) != ctx.nprime || int(x.cols()) != ctx.nprime) return false;
  switch (ctx.family) {
    case Family::GL: return bool(inverse_opt(x));
    case Family::SL: return det(x) == Fq(1);
    case Family::Sp: return form_membership(x, FormKind::Symplectic);
    case Family::SOodd: return form_membership(x, FormKind::OrthogonalOdd);
    case Family::SOeven: return form_membership(x, FormKind::OrthogonalEven);
  }
  return false;
}

MatQ canonicalize(const MatQ& x, const GroupCtx& ctx) {
  MatQ best = normalized(x, ctx.field);
  if (!ctx.projective) return best;
  for (const Fq& z : center_scalars(ctx)) {
    if (z == fq_one(ctx.field)) continue;
    MatQ cand(x.rows(), x.cols());
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < x.cols(); ++j) cand(i, j) = z * x(i, j);
    if (mat_cmp(cand, best) < 0) best = cand;
  }
  return best;
}

PElem make_pelem(const MatQ& x, const GroupCtx& ctx) {
  if (!group_membership(x, ctx)) throw std::invalid_argument("make_pelem: not a group member");
  return PElem{ctx, canonicalize(x, ctx)};
}

bool pelem_eq(const PElem& a, const PElem& b) {
  return a.ctx == b.ctx && mat_cmp(a.rep, b.rep) == 0;
}

// ---------- generators ----------

static std::vector<MatQ> sl_transvections(FieldPtr f, int n) {
  std::vector<MatQ> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (const Fq& lam : all_elements(f)) {
        if (lam.is_zero()) continue;
        MatQ t = mat_identity(f, n);
        t(i, j) = lam;
        gens.push_back(t);
      }
    }
  return gens;
}

static std::vector<VecQ> projective_vectors(FieldPtr f, int m) {
  // nonzero vectors with first nonzero coordinate 1, in code order
  std::vector<VecQ> out;
  uint64_t q = f->q();
  uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= q;
  for (uint64_t code = 1; code < total; ++code) {
    VecQ v(m);
    uint64_t c = code;
    int first = -1;
    for (int i = 0; i < m; ++i) {
      v(i) = Fq(f, uint32_t(c % q));
      if (first < 0 && !v(i).is_zero()) first = i;
      c /= q;
    }
    if (!(v(first) == fq_one(f))) continue;
    out.push_back(v);
  }
  return out;
}

static Fq bilinear(const MatQ& g, const VecQ& x, const VecQ& y) {
  FieldPtr f = mat_field(g);
  Fq acc = fq_zero(f);
  int m = int(g.rows());
  for (int i = 0; i < m; ++i) {
    if (x(i).is_zero()) continue;
    for (int j = 0; j < m; ++j) acc += x(i) * g(i, j) * y(j);
  }
  return acc;
}

static std::vector<MatQ> sp_transvections(FieldPtr f, int nprime) {
  MatQ g = form_matrix(f, FormKind::Symplectic, nprime);
  std::vector<MatQ> gens;
  for (const VecQ& v : projective_vectors(f, nprime)) {
    for (const Fq& lam : all_elements(f)) {
      if (lam.is_zero()) continue;
      // T(x) = x + lam B(x, v) v, built by columns
      MatQ t = mat_identity(f, nprime);
      for (int k = 0; k < nprime; ++k) {
        Fq bkv = fq_zero(f);
        for (int j = 0; j < nprime; ++j) bkv += g(k, j) * v(j);
        if (bkv.is_zero()) continue;
        for (int i = 0; i < nprime; ++i) t(i, k) += lam * bkv * v(i);
      }
      gens.push_back(t);
    }
  }
  return gens;
}

// value of the quadratic form x_1 x_m + x_2 x_(m-1) + ..., with the middle
// square halved in odd dimension so that the J-form is its polarization
static Fq quad_value(FieldPtr f, const VecQ& v) {
  int m = int(v.rows());
  Fq acc = fq_zero(f);
  for (int i = 0; i < m / 2; ++i) acc += v(i) * v(m - 1 - i);
  if (m % 2) {
    if (f->p() == 2) throw std::logic_error("quad_value: odd dimension in characteristic 2");
    Fq mid = v(m / 2);
    acc += mid * mid / fq_of(f, 2);
  }
  return acc;
}

static std::vector<MatQ> eichler_generators(FieldPtr f, const GroupCtx& ctx) {
  int m = ctx.nprime;
  MatQ g = form_matrix(f, *ctx.form(), m);
  int mid = (m % 2) ? m / 2 : -1;
  std::vector<MatQ> gens;
  auto basis = [&](int i) {
    VecQ v(m);
    for (int k = 0; k < m; ++k) v(k) = k == i ? fq_one(f) : fq_zero(f);
    return v;
  };
  for (int i = 0; i < m; ++i) {
    if (i == mid) continue;  // Q(e_mid) != 0
    VecQ u = basis(i);
    for (int j = 0; j < m; ++j) {
      if (j == i || j == m - 1 - i) continue;  // need B(u, v) = 0
      for (const Fq& lam : all_elements(f)) {
        if (lam.is_zero()) continue;
        VecQ v(m);
        for (int k = 0; k < m; ++k) v(k) = k == j ? lam : fq_zero(f);
        Fq qv = quad_value(f, v);
        // E(x) = x + B(x,v)u - B(x,u)v - Q(v)B(x,u)u
        MatQ t = mat_identity(f, m);
        for (int k = 0; k < m; ++k) {
          VecQ ek = basis(k);
          Fq bxv = bilinear(g, ek, v);
          Fq bxu = bilinear(g, ek, u);
          for (int r = 0; r < m; ++r)
            t(r, k) += bxv * u(r) - bxu * v(r) - qv * bxu * u(r);
        }
        gens.push_back(t);
      }
    }
  }
  return gens;
}

std::vector<MatQ> generators(const GroupCtx& ctx) {
  FieldPtr f = ctx.field;
  switch (ctx.family) {
    case Family::SL: return sl_transvections(f, ctx.nprime);
    case Family::GL: {
      auto gens = sl_transvections(f, ctx.nprime);
      if (f->q() > 2) {
        MatQ d = mat_identity(f, ctx.nprime);
        d(0, 0) = Fq(f, f->generator_code());
        gens.push_back(d);
      }
      return gens;
    }
    case Family::Sp: return sp_transvections(f, ctx.nprime);
    case Family::SOodd:
    case Family::SOeven: return eichler_generators(f, ctx);
  }
  throw std::logic_error("generators: unreachable");
}

size_t default_enum_bound() {
  if (const char* env = std::getenv("COLLAPSE_LAB_MEM_LIMIT")) {
    long long v = std::atoll(env);
    if (v > 0) return size_t(v);
  }
  return 5000000;
}

int GroupSet::find(const MatQ& m) const {
  auto it = index.find(mat_pack(m));
  return it == index.end() ? -1 : it->second;
}

GroupSet enumerate_group(const GroupCtx& ctx, size_t bound) {
  if (bound == 0) bound = default_enum_bound();
  GroupSet gs;
  gs.ctx = ctx;
  std::vector<MatQ> gens = generators(ctx);
  MatQ id = canonicalize(mat_identity(ctx.field, ctx.nprime), ctx);
  gs.elems.push_back(id);
  gs.index.emplace(mat_pack(id), 0);
  for (size_t i = 0; i < gs.elems.size(); ++i) {
    for (const MatQ& g : gens) {
      MatQ y = canonicalize(mat_mul(gs.elems[i], g), ctx);
      std::string key = mat_pack(y);
      if (gs.index.emplace(key, int(gs.elems.size())).second) {
        gs.elems.push_back(std::move(y));
        if (gs.elems.size() > bound)
          throw bound_error("enumerate_group: bound " + std::to_string(bound) +
                            " exceeded (partial size " + std::to_string(gs.elems.size()) + ")");
      }
    }
  }
  return gs;
}

int ConjClass::find(const MatQ& m) const {
  auto it = index.find(mat_pack(m));
  return it == index.end() ? -1 : it->second;
}

ConjClass conj_class(const GroupCtx& ctx, const MatQ& x, size_t bound) {
  if (bound == 0) bound = default_enum_bound();
  ConjClass cls;
  cls.ctx = ctx;
  cls.gens = generators(ctx);
  std::vector<MatQ> ginv;
  ginv.reserve(cls.gens.size());
  for (const MatQ& g : cls.gens) ginv.push_back(inverse(g));
  cls.rep = canonicalize(x, ctx);
  cls.elems.push_back(cls.rep);
  cls.parent.emplace_back(-1, -1);
  cls.index.emplace(mat_pack(cls.rep), 0);
  for (size_t i = 0; i < cls.elems.size(); ++i) {
    for (size_t k = 0; k < cls.gens.size(); ++k) {
      MatQ y = canonicalize(mat_mul(mat_mul(cls.gens[k], cls.elems[i]), ginv[k]), ctx);
      std::string key = mat_pack(y);
      if (cls.index.emplace(key, int(cls.elems.size())).second) {
        cls.elems.push_back(std::move(y));
        cls.parent.emplace_back(int(i), int(k));
        if (cls.elems.size() > bound) {
          cls.complete = false;
          throw bound_error("conj_class: bound " + std::to_string(bound) +
                            " exceeded (partial size " + std::to_string(cls.elems.size()) + ")");
        }
      }
    }
  }
  return cls;
}

MatQ conjugator_to(const ConjClass& cls, int idx) {
  // elems[idx] = canon(g_k . elems[p] . g_k^-1); unwind the parent chain
  MatQ g = mat_identity(cls.ctx.field, cls.ctx.nprime);
  int cur = idx;
  while (cur > 0) {
    auto [p, k] = cls.parent[size_t(cur)];
    g = mat_mul(g, cls.gens[size_t(k)]);
    cur = p;
  }
  return g;
}

std::vector<ConjClass> all_classes(const GroupCtx& ctx, size_t bound) {
  GroupSet gs = enumerate_group(ctx, bound);
  std::vector<bool> seen(gs.elems.size(), false);
  std::vector<ConjClass> out;
  for (size_t i = 0; i < gs.elems.size(); ++i) {
    if (seen[i]) continue;
    ConjClass cls = conj_class(ctx, gs.elems[i], bound);
    for (const MatQ& y : cls.elems) {
      int idx = gs.find(y);
      if (idx < 0) throw std::logic_error("all_classes: class escapes the group");
      seen[size_t(idx)] = true;
    }
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<MatQ> centralizer(const MatQ& x, const GroupSet& ambient) {
  MatQ xc = canonicalize(x, ambient.ctx);
  std::vector<MatQ> out;
  for (const MatQ& g : ambient.elems) {
    MatQ y = canonicalize(mat_mul(mat_mul(g, xc), inverse(g)), ambient.ctx);
    if (mat_cmp(y, xc) == 0) out.push_back(g);
  }
  return out;
}

MatQ embed_j(const MatQ& a, FormKind target) {
  FieldPtr f = mat_field(a);
  int n = int(a.rows());
  MatQ pa = phi(a);
  if (target == FormKind::OrthogonalOdd) {
    MatQ r = mat_zero(f, 2 * n + 1, 2 * n + 1);
    r.block(0, 0, n, n) = a;
    r(n, n) = fq_one(f);
    r.block(n + 1, n + 1, n, n) = pa;
    return r;
  }
  return mat_diag_blocks(a, pa);
}

MatQ regular_representation(const Fq& alpha) {
  FieldPtr e = alpha.field();
  if (!e || !e->base())
    throw std::invalid_argument("regular_representation: element of a tower field required");
  FieldPtr f = e->base();
  int d = e->ext_degree();
  MatQ m = mat_zero(f, d, d);
  Fq y = d >= 2 ? fq_gen(e) : fq_one(e);
  Fq cur = alpha;
  for (int col = 0; col < d; ++col) {
    for (int row = 0; row < d; ++row) m(row, col) = Fq(f, e->coeff(cur.code(), row));
    cur = cur * y;
  }
  return m;
}

MatQ restrict_scalars(const MatQ& b) {
  FieldPtr e = mat_field(b);
  if (!e->base()) throw std::invalid_argument("restrict_scalars: entries must live in a tower field");
  FieldPtr f = e->base();
  int c = int(b.rows());
  int d = e->ext_degree();
  MatQ r = mat_zero(f, c * d, c * d);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < int(b.cols()); ++j)
      r.block(i * d, j * d, d, d) = regular_representation(b(i, j).in(e));
  return r;
}

CoxeterTorusGL coxeter_torus_gl(FieldPtr f, int n) {
  CoxeterTorusGL out;
  if (n == 1) {
    out.gen = mat_zero(f, 1, 1);
    out.gen(0, 0) = Fq(f, f->generator_code());
    Fq g(f, f->generator_code());
    Fq cur = fq_one(f);
    for (uint64_t i = 0; i + 1 < f->q(); ++i) {
      MatQ m(1, 1);
      m(0, 0) = cur;
      out.elems.push_back(m);
      cur = cur * g;
    }
    return out;
  }
  FieldPtr e = extension_field(f, n);
  PolyQ mod{f, e->modulus()};
  MatQ c = companion(mod);
  std::vector<MatQ> cpow;
  MatQ cur = mat_identity(f, n);
  for (int i = 0; i < n; ++i) {
    cpow.push_back(cur);
    cur = mat_mul(cur, c);
  }
  auto embed = [&](uint32_t code) {
    MatQ m = mat_zero(f, n, n);
    for (int i = 0; i < n; ++i) {
      Fq ci(f, e->coeff(code, i));
      if (ci.is_zero()) continue;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) m(r, s) += ci * cpow[size_t(i)](r, s);
    }
    return m;
  };
  out.gen = embed(e->generator_code());
  for (uint64_t v = 1; v < e->q(); ++v) out.elems.push_back(embed(uint32_t(v)));
  return out;
}

TwistData twist_data(const MatQ& x, const GroupCtx& ctx) {
  if (ctx.family != Family::SL && ctx.family != Family::GL)
    throw std::invalid_argument("twist_data: SL/GL contexts only");
  if (!is_semisimple(x)) throw std::invalid_argument("twist_data: non-semisimple input");
  FieldPtr f = ctx.field;
  int n = ctx.nprime;
  std::vector<Fq> roots = roots_of_unity(n, f);
  MatQ xq = normalized(x, f);
  for (int j = 1; j < n; ++j) {
    xq = mat_pow(xq, (long long)f->q());
    for (const Fq& lam : roots) {
      if (lam == fq_one(f)) continue;
      bool eq = true;
      for (int r = 0; r < n && eq; ++r)
        for (int c = 0; c < n && eq; ++c)
          if (!(xq(r, c) == lam * x(r, c))) eq = false;
      if (eq) {
        TwistData td{j, lam};
        if (poly_is_irreducible(charpoly(x))) {
          if (n % j != 0) throw std::logic_error("twist_data: j does not divide n");
          if (element_order(lam) != n / j)
            throw std::logic_error("twist_data: scalar is not a primitive n/j-th root");
        }
        return td;
      }
    }
  }
  return TwistData{n, fq_one(f)};
}

bool power_in_class(const MatQ& x, long long e, const ConjClass& cls, bool allow_scalar) {
  MatQ y = mat_pow(x, e);
  if (cls.find(canonicalize(y, cls.ctx)) >= 0) return true;
  if (!allow_scalar) return false;
  GroupCtx plain = cls.ctx;
  plain.projective = false;
  for (const Fq& z : center_scalars(plain)) {
    MatQ zy(y.rows(), y.cols());
    for (int i = 0; i < y.rows(); ++i)
      for (int j = 0; j < y.cols(); ++j) zy(i, j) = z * y(i, j);
    if (cls.find(canonicalize(zy, cls.ctx)) >= 0) return true;
  }
  return false;
}

// ---------- spinor norm ----------

static bool is_square_fq(const Fq& a) {
  if (a.is_zero()) return true;
  FieldPtr f = a.field();
  if (f->p() == 2) return true;
  return pow(a, (long long)((f->q() - 1) / 2)) == fq_one(f);
}

// Wall-form discriminant.  On W = Im(g-1) the pairing
// chi((g-1)a, w) = B(a, w) is well defined because Fix(g) is B-orthogonal
// to W; its discriminant equals the spinor norm for det-1 isometries (the
// (-1)^dim W correction vanishes when dim W is even).
bool spinor_norm_nontrivial(const MatQ& g0) {
  FieldPtr f = mat_field(g0);
  if (f->p() == 2)
    throw std::invalid_argument("spinor_norm: q must be odd (use the Dickson invariant)");
  int m = int(g0.rows());
  MatQ jform = antidiag_j(f, m);
  MatQ d = normalized(g0, f);
  for (int i = 0; i < m; ++i) d(i, i) -= fq_one(f);
  // independent columns of g - 1
  std::vector<int> cols;
  {
    MatQ red = d;
    int rk = 0;
    for (int c = 0; c < m && rk < m; ++c) {
      int piv = -1;
      for (int r = rk; r < m; ++r)
        if (!red(r, c).is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      red.row(piv).swap(red.row(rk));
      Fq pi = inv(red(rk, c));
      for (int r = rk + 1; r < m; ++r) {
        if (red(r, c).is_zero()) continue;
        Fq factor = red(r, c) * pi;
        for (int j = c; j < m; ++j) red(r, j) -= factor * red(rk, j);
      }
      cols.push_back(c);
      ++rk;
    }
  }
  int r = int(cols.size());
  if (r == 0) return false;  // identity
  if (r % 2 != 0) throw std::invalid_argument("spinor_norm: input has determinant -1");
  MatQ gram = mat_zero(f, r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      // B(e_{cols[i]}, (g-1) e_{cols[j]}) with B the J-form
      Fq acc = fq_zero(f);
      for (int k = 0; k < m; ++k) acc += jform(cols[size_t(i)], k) * d(k, cols[size_t(j)]);
      gram(i, j) = acc;
    }
  Fq disc = det(gram);
  if (disc.is_zero()) throw std::logic_error("spinor_norm: degenerate Wall form");
  return !is_square_fq(disc);
}

bool dickson_nontrivial(const MatQ& g) {
  FieldPtr f = mat_field(g);
  MatQ m = normalized(g, f);
  for (int i = 0; i < m.rows(); ++i) m(i, i) -= fq_one(f);
  return rank(m) % 2 == 1;
}

bool in_omega(const MatQ& g, const GroupCtx& so_ctx) {
  if (so_ctx.family != Family::SOodd && so_ctx.family != Family::SOeven)
    throw std::invalid_argument("in_omega: orthogonal contexts only");
  if (!group_membership(g, so_ctx)) return false;
  if (so_ctx.field->p() == 2) return !dickson_nontrivial(g);
  return !spinor_norm_nontrivial(g);
}

MatQ symplectic_basis_change(const MatQ& gram) {
  FieldPtr f = mat_field(gram);
  int m = int(gram.rows());
  if (m % 2) throw std::invalid_argument("symplectic_basis_change: odd dimension");
  for (int i = 0; i < m; ++i) {
    if (!gram(i, i).is_zero())
      throw std::invalid_argument("symplectic_basis_change: form not alternating");
    for (int j = 0; j < m; ++j)
      if (!(gram(i, j) == -gram(j, i)))
        throw std::invalid_argument("symplectic_basis_change: form not antisymmetric");
  }
  auto bf = [&](const VecQ& x, const VecQ& y) { return bilinear(gram, x, y); };
  std::vector<VecQ> pool;
  for (int i = 0; i < m; ++i) {
    VecQ v(m);
    for (int k = 0; k < m; ++k) v(k) = k == i ? fq_one(f) : fq_zero(f);
    pool.push_back(v);
  }
  std::vector<VecQ> us, ws;
  while (!pool.empty()) {
    VecQ u = pool.front();
    pool.erase(pool.begin());
    int mate = -1;
    for (size_t k = 0; k < pool.size(); ++k)
      if (!bf(u, pool[k]).is_zero()) {
        mate = int(k);
        break;
      }
    if (mate < 0) throw std::invalid_argument("symplectic_basis_change: degenerate form");
    VecQ w = pool[size_t(mate)];
    pool.erase(pool.begin() + mate);
    Fq scale = inv(bf(u, w));
    for (int i = 0; i < m; ++i) w(i) = w(i) * scale;  // B(u, w) = 1
    for (VecQ& v : pool) {
      Fq a = bf(v, w), b = bf(v, u);
      for (int i = 0; i < m; ++i) v(i) = v(i) - a * u(i) + b * w(i);
    }
    us.push_back(u);
    ws.push_back(w);
  }
  int n = m / 2;
  MatQ p = mat_zero(f, m, m);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < m; ++i) {
      p(i, k) = us[size_t(k)](i);
      p(i, m - 1 - k) = ws[size_t(k)](i);
    }
  return p;
}

}  // namespace clab
