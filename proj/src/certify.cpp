#include "clab/certify.hpp"

#include <algorithm>
#include <sstream>

namespace clab {

// ---------- shared constructions ----------

std::optional<MatQ> conjugator_in_sl(const MatQ& x, const MatQ& y) {
  FieldPtr f = mat_field(x);
  int n = int(x.rows());
  if (!(charpoly(x) == charpoly(y))) return std::nullopt;
  // solve g x = y g as a linear system on the n^2 entries of g
  MatQ sys = mat_zero(f, n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int row = i * n + j;
      for (int k = 0; k < n; ++k) {
        sys(row, i * n + k) += x(k, j);   // (g x)_ij depends on g_ik
        sys(row, k * n + j) -= y(i, k);   // (y g)_ij depends on g_kj
      }
    }
  std::vector<VecQ> basis = null_space(sys);
  if (basis.empty()) return std::nullopt;
  if (basis.size() > 8) throw bound_error("conjugator_in_sl: centralizer too large to scan");
  uint64_t q = f->q();
  uint64_t total = 1;
  for (size_t i = 0; i < basis.size(); ++i) total *= q;
  MatQ g0 = mat_zero(f, n, n);
  bool found = false;
  for (uint64_t code = 1; code < total && !found; ++code) {
    MatQ g = mat_zero(f, n, n);
    uint64_t cc = code;
    for (size_t b = 0; b < basis.size(); ++b) {
      Fq coef(f, uint32_t(cc % q));
      cc /= q;
      if (coef.is_zero()) continue;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) += coef * basis[b](i * n + j);
    }
    if (inverse_opt(g)) {
      g0 = g;
      found = true;
    }
  }
  if (!found) return std::nullopt;
  Fq d = det(g0);
  if (d == fq_one(f)) return g0;
  // correct the determinant inside the centralizer algebra of x
  std::vector<MatQ> xpow;
  {
    MatQ xp = mat_identity(f, n);
    for (int i = 0; i < n; ++i) {
      xpow.push_back(xp);
      xp = mat_mul(xp, x);
    }
  }
  uint64_t totz = 1;
  for (int i = 0; i < n; ++i) totz *= q;
  for (uint64_t code = 1; code < totz; ++code) {
    MatQ z = mat_zero(f, n, n);
    uint64_t cc = code;
    for (int i = 0; i < n; ++i) {
      Fq coef(f, uint32_t(cc % q));
      cc /= q;
      if (coef.is_zero()) continue;
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) z(r, s) += coef * xpow[size_t(i)](r, s);
    }
    if (!inverse_opt(z)) continue;
    if (det(z) * d == fq_one(f)) return mat_mul(g0, z);
  }
  return std::nullopt;
}

MatQ embed_sp_blocks(const std::vector<MatQ>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("embed_sp_blocks: no blocks");
  FieldPtr f = mat_field(blocks[0]);
  int n = 0;
  for (const MatQ& b : blocks) {
    if (b.rows() % 2) throw std::invalid_argument("embed_sp_blocks: odd block size");
    n += int(b.rows()) / 2;
  }
  int N = 2 * n;
  MatQ out = mat_zero(f, N, N);
  int off = 0;
  for (const MatQ& b : blocks) {
    int d = int(b.rows()) / 2;
    auto map = [&](int own) { return own < d ? off + own : N - off - 2 * d + own; };
    for (int r = 0; r < 2 * d; ++r)
      for (int c = 0; c < 2 * d; ++c) out(map(r), map(c)) = b(r, c);
    off += d;
  }
  if (!form_membership(out, FormKind::Symplectic))
    throw std::logic_error("embed_sp_blocks: image is not symplectic");
  return out;
}

MatQ root_unipotent(const GroupCtx& ctx, int root, const Fq& a0, bool negative) {
  FieldPtr f = ctx.field;
  Fq a = a0.in(f);
  int n = ctx.rank(), np = ctx.nprime;
  if (root < 1 || root > n) throw std::invalid_argument("root_unipotent: bad root index");
  MatQ m;
  if (root < n) {
    MatQ u = mat_identity(f, n);
    if (!negative)
      u(root - 1, root) = a;
    else
      u(root, root - 1) = a;
    m = embed_j(u, *ctx.form());
  } else {
    m = mat_identity(f, np);
    switch (ctx.family) {
      case Family::Sp:
        if (!negative)
          m(n - 1, n) = a;
        else
          m(n, n - 1) = a;
        break;
      case Family::SOodd: {
        Fq half = -(a * a) / fq_of(f, 2);
        if (!negative) {
          m(n - 1, n) = a;
          m(n, n + 1) = -a;
          m(n - 1, n + 1) = half;
        } else {
          m(n + 1, n) = a;
          m(n, n - 1) = -a;
          m(n + 1, n - 1) = half;
        }
        break;
      }
      case Family::SOeven:
        if (!negative) {
          m(n - 2, n) = a;
          m(n - 1, n + 1) = -a;
        } else {
          m(n, n - 2) = a;
          m(n + 1, n - 1) = -a;
        }
        break;
      default:
        throw std::invalid_argument("root_unipotent: symplectic/orthogonal contexts only");
    }
  }
  if (!group_membership(m, ctx)) throw std::logic_error("root_unipotent: not in the group");
  return m;
}

MatQ root_reflection(const GroupCtx& ctx, int root) {
  Fq one = fq_one(ctx.field);
  MatQ a = root_unipotent(ctx, root, one);
  MatQ b = root_unipotent(ctx, root, -one, true);
  return mat_mul(mat_mul(a, b), a);
}

static Recipe refuse(const std::string& name, const std::string& why) {
  Recipe r;
  r.name = name;
  r.applied = false;
  r.refusal = why;
  return r;
}

// compute the pair conditions exactly and record them; throws if the
// construction produced a bad pair
static void require_pair_positive(Certificate& c, const GroupCtx& ctx, const MatQ& r,
                                  const MatQ& s, bool want_type_d) {
  MatQ rc = canonicalize(r, ctx), sc = canonicalize(s, ctx);
  MatQ rs = canonicalize(mat_mul(r, s), ctx), sr = canonicalize(mat_mul(s, r), ctx);
  if (mat_cmp(rs, sr) == 0) throw std::logic_error("certify: witness pair commutes");
  std::vector<MatQ> gens = {r, s};
  std::vector<MatQ> ginv = {inverse(r), inverse(s)};
  auto orbit = [&](const MatQ& seed) {
    std::vector<MatQ> orb = {canonicalize(seed, ctx)};
    std::unordered_map<std::string, int> seen{{mat_pack(orb[0]), 0}};
    for (size_t i = 0; i < orb.size(); ++i)
      for (size_t k = 0; k < 2; ++k)
        for (int dir = 0; dir < 2; ++dir) {
          MatQ y = dir == 0
                       ? canonicalize(mat_mul(mat_mul(gens[k], orb[i]), ginv[k]), ctx)
                       : canonicalize(mat_mul(mat_mul(ginv[k], orb[i]), gens[k]), ctx);
          if (seen.emplace(mat_pack(y), int(orb.size())).second) orb.push_back(y);
        }
    return orb;
  };
  std::vector<MatQ> orb_r = orbit(r);
  bool s_in = false;
  for (const MatQ& m : orb_r)
    if (mat_cmp(m, sc) == 0) s_in = true;
  if (s_in) throw std::logic_error("certify: pair orbits coincide");
  c.check("non-commuting", true);
  c.check("orbits-distinct", true);
  if (want_type_d) {
    MatQ rs2 = canonicalize(mat_pow(mat_mul(r, s), 2), ctx);
    MatQ sr2 = canonicalize(mat_pow(mat_mul(s, r), 2), ctx);
    if (mat_cmp(rs2, sr2) == 0) throw std::logic_error("certify: squared products agree");
    c.check("squares-differ", true);
  } else {
    std::vector<MatQ> orb_s = orbit(s);
    size_t o1 = orb_r.size(), o2 = orb_s.size();
    if (!(std::min(o1, o2) > 2 || std::max(o1, o2) > 4))
      throw std::logic_error("certify: orbit size condition fails");
    c.check("size-condition", true);
  }
  (void)rc;
}

static void assert_acting(const GroupCtx& ctx, const MatQ& g, const std::string& who) {
  if (!group_membership(g, ctx)) throw std::logic_error("certify: " + who + " not in the group");
  if (ctx.derived_only && !in_omega(g, ctx))
    throw std::logic_error("certify: " + who + " lies outside the derived subgroup");
}

// ---------- split torus recipe ----------

Recipe split_certificate(const GroupCtx& ctx, const MatQ& x0) {
  const std::string name = "split";
  if (!ctx.form()) return refuse(name, "refused: split recipe needs a symplectic or orthogonal context");
  FieldPtr f = ctx.field;
  uint64_t q = f->q();
  MatQ x = normalized(x0, f);
  if (!group_membership(x, ctx)) throw std::invalid_argument("split_certificate: x not in the group");
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      if (i != j && !x(i, j).is_zero())
        throw std::invalid_argument("split_certificate: x must be a diagonal torus element");
  if (is_scalar_mat(x)) return refuse(name, "refused: central input");
  if (q == 2) return refuse(name, "refused: the split torus is trivial over the two-element field");
  int n = ctx.rank();
  std::vector<Fq> t;
  for (int i = 0; i < n; ++i) t.push_back(x(i, i));
  if (ctx.family == Family::Sp && n == 2 && ctx.projective && is_scalar_mat(mat_pow(x, 2)))
    return refuse(name,
                  "refused: split projective involution in the rank-2 symplectic group; the two "
                  "root-subgroup fibers are identified by the center");
  if (ctx.family == Family::SOodd) {
    bool all_minus = true;
    for (const Fq& ti : t)
      if (!(ti == fq_of(f, -1))) all_minus = false;
    if (all_minus)
      return refuse(name,
                    "refused: all torus entries equal -1 in the odd orthogonal group; the two "
                    "fibers are identified under the central quotient");
  }
  int root = n;
  for (int i = 1; i < n; ++i)
    if (!(t[size_t(i - 1)] == t[size_t(i)])) {
      root = i;
      break;
    }
  Fq alpha;
  if (root < n) {
    alpha = t[size_t(root - 1)] / t[size_t(root)];
  } else {
    switch (ctx.family) {
      case Family::Sp: alpha = t[size_t(n - 1)] * t[size_t(n - 1)]; break;
      case Family::SOodd: alpha = t[size_t(n - 1)]; break;
      case Family::SOeven: alpha = t[size_t(n - 2)] * t[size_t(n - 1)]; break;
      default: break;
    }
  }
  if (alpha == fq_one(f)) throw std::logic_error("split_certificate: chosen root fixes x");

  MatQ refl = root_reflection(ctx, root);
  assert_acting(ctx, refl, "reflection representative");
  MatQ sx = mat_mul(mat_mul(refl, x), inverse(refl));
  Certificate c;
  c.ctx = ctx;
  c.kind = "typeC";
  c.shape = "subrack";
  c.property = "C";
  c.recipe = name;
  c.put("rep", canonicalize(x, ctx));
  std::vector<MatQ> fiber, conj;
  Fq denom1 = inv(alpha) - fq_one(f);
  Fq denom2 = alpha - fq_one(f);
  for (const Fq& a : all_elements(f)) {
    MatQ xa = root_unipotent(ctx, root, a);
    fiber.push_back(mat_mul(x, xa));
    conj.push_back(root_unipotent(ctx, root, a / denom1));
    fiber.push_back(mat_mul(sx, xa));
    conj.push_back(mat_mul(root_unipotent(ctx, root, a / denom2), refl));
  }
  for (size_t i = 0; i < fiber.size(); ++i) {
    assert_acting(ctx, conj[i], "fiber conjugator");
    MatQ reach = canonicalize(mat_mul(mat_mul(conj[i], x), inverse(conj[i])), ctx);
    if (mat_cmp(reach, canonicalize(fiber[i], ctx)) != 0)
      throw std::logic_error("split_certificate: fiber conjugator mismatch");
  }
  FiniteRack y = rack_from_elements(ctx, fiber);
  if (y.size != int(2 * q)) throw std::logic_error("split_certificate: projection glued the fibers");
  c.check("fibers-inject", true);
  auto orbits = inn_orbits(y);
  if (orbits.size() != 2) throw std::logic_error("split_certificate: fiber orbits do not split");
  c.check("subrack-decomposes-into-two-orbits", true);
  c.check("size-condition", std::min(orbits[0].size(), orbits[1].size()) > 2 ||
                                std::max(orbits[0].size(), orbits[1].size()) > 4);
  int ri = -1, si = -1;
  for (int aa : orbits[0]) {
    for (int bb : orbits[1])
      if (y.tri(aa, bb) != bb) {
        ri = aa;
        si = bb;
        break;
      }
    if (ri >= 0) break;
  }
  if (ri < 0) throw std::logic_error("split_certificate: fibers commute elementwise");
  c.check("non-fixing-pair", true);
  c.put("r", y.labels[size_t(ri)]);
  c.put("s", y.labels[size_t(si)]);
  for (int k = 0; k < y.size; ++k) c.put("y_" + std::to_string(k), y.labels[size_t(k)]);
  for (int k = 0; k < y.size; ++k)
    for (size_t i = 0; i < fiber.size(); ++i)
      if (mat_cmp(canonicalize(fiber[i], ctx), y.labels[size_t(k)]) == 0) {
        c.put("conj_y_" + std::to_string(k), conj[i]);
        break;
      }
  std::ostringstream ap;
  ap << "simple root " << root << " of " << n << ", alpha(x) = " << alpha.str()
     << ", fibers of size " << q;
  c.applicability = ap.str();
  c.search_bound = "constructive";
  Recipe rec;
  rec.name = name;
  rec.applied = true;
  rec.cert = std::move(c);
  std::string why;
  if (!verify_certificate(rec.cert, &why))
    throw std::logic_error("split_certificate: self-verification failed: " + why);
  return rec;
}

// ---------- embedded GL classes ----------

static MatQ upper_unipotent_u(const GroupCtx& ctx, const MatQ& y) {
  // (I Y; 0 I), with the middle coordinate untouched in odd dimension
  FieldPtr f = ctx.field;
  int np = ctx.nprime, n = ctx.rank();
  MatQ m = mat_identity(f, np);
  int offc = np - n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, offc + j) = y(i, j);
  return m;
}

Recipe irr_k_certificate(const GroupCtx& ctx, const MatQ& a) {
  const std::string name = "irrk";
  if (!ctx.form()) return refuse(name, "refused: needs a symplectic or orthogonal context");
  FieldPtr f = ctx.field;
  uint64_t q = f->q();
  int n = ctx.rank();
  if (int(a.rows()) != n)
    throw std::invalid_argument("irr_k_certificate: block size must match the group rank");
  PolyQ pa = charpoly(a);
  if (!poly_is_irreducible(pa))
    return refuse(name, "refused: the characteristic polynomial of the block is reducible");
  MatQ x = embed_j(a, *ctx.form());
  MatQ xc = canonicalize(x, ctx);
  bool regular = poly_is_squarefree(charpoly(x));

  Certificate c;
  c.ctx = ctx;
  c.recipe = name;
  c.shape = "pair";
  c.put("rep", xc);

  if (regular) {
    // the q-power conjugate lands in a different fiber; push it off the
    // block diagonal with a form-preserving upper unipotent
    MatQ aq = mat_pow(a, (long long)q);
    auto g = conjugator_in_sl(a, aq);
    if (!g) throw std::logic_error("irr_k_certificate: no special-linear conjugator to the q-power");
    MatQ jg = embed_j(*g, *ctx.form());
    assert_acting(ctx, jg, "q-power conjugator");
    MatQ jn = antidiag_j(f, n);
    MatQ paq = phi(aq);
    MatQ u;
    bool found = false;
    bool symmetric = ctx.family == Family::Sp;
    for (int k = 0; k < n && !found; ++k)
      for (int l = (symmetric ? k : k + 1); l < n && !found; ++l) {
        MatQ sbase = mat_zero(f, n, n);
        sbase(k, l) = fq_one(f);
        if (l != k) sbase(l, k) = symmetric ? fq_one(f) : -fq_one(f);
        MatQ y = mat_mul(jn, sbase);
        if (mat_cmp(mat_mul(aq, y), mat_mul(y, paq)) == 0) continue;
        MatQ cand = upper_unipotent_u(ctx, y);
        if (!group_membership(cand, ctx)) continue;
        u = cand;
        found = true;
      }
    if (!found) throw std::logic_error("irr_k_certificate: no displacing unipotent found");
    assert_acting(ctx, u, "displacing unipotent");
    MatQ conj_s = mat_mul(u, jg);
    MatQ s = canonicalize(mat_mul(mat_mul(conj_s, x), inverse(conj_s)), ctx);
    c.kind = "typeC";
    c.property = "C";
    c.put("r", xc);
    c.put("s", s);
    c.put("conj_r", mat_identity(f, ctx.nprime));
    c.put("conj_s", conj_s);
    c.applicability = "regular embedded element: q-power fiber path";
    require_pair_positive(c, ctx, xc, s, false);
  } else {
    bool exception =
        ctx.family == Family::Sp && ctx.nprime == 4 && q % 4 == 3 && pa == poly_from(f, {1, 0, 1});
    if (exception) {
      MatQ rot = companion(poly_from(f, {1, 0, 1}));
      Fq aa = fq_zero(f), bb = fq_zero(f);
      bool got = false;
      for (const Fq& u1 : all_elements(f)) {
        if (u1.is_zero()) continue;
        for (const Fq& u2 : all_elements(f)) {
          if (u2.is_zero()) continue;
          if (u1 * u1 + u2 * u2 == fq_of(f, -1)) {
            aa = u1;
            bb = u2;
            got = true;
            break;
          }
        }
        if (got) break;
      }
      if (!got) throw std::logic_error("irr_k_certificate: no representation of -1 as a^2+b^2");
      MatQ sab = mat_zero(f, 2, 2);
      sab(0, 0) = aa;
      sab(0, 1) = bb;
      sab(1, 0) = bb;
      sab(1, 1) = -aa;
      auto g = conjugator_in_sl(rot, sab);
      if (!g)
        throw std::logic_error("irr_k_certificate: rotation not conjugate to the symmetric witness");
      MatQ xrot = embed_j(rot, FormKind::Symplectic);
      MatQ xrc = canonicalize(xrot, ctx);
      MatQ u = upper_unipotent_u(ctx, mat_identity(f, 2));
      assert_acting(ctx, u, "unipotent conjugator");
      MatQ jgm = embed_j(*g, FormKind::Symplectic);
      assert_acting(ctx, jgm, "witness conjugator");
      MatQ r = canonicalize(mat_mul(mat_mul(u, xrot), inverse(u)), ctx);
      MatQ s = canonicalize(mat_mul(mat_mul(jgm, xrot), inverse(jgm)), ctx);
      c.kind = "typeD";
      c.property = "D";
      c.witness.clear();
      c.put("rep", xrc);
      c.put("r", r);
      c.put("s", s);
      c.put("conj_r", u);
      c.put("conj_s", jgm);
      std::ostringstream ap;
      ap << "rank-2 rotation block with q = 3 mod 4; symmetric witness (a,b) = (" << aa.str()
         << "," << bb.str() << ")";
      c.applicability = ap.str();
      require_pair_positive(c, ctx, r, s, true);
    } else {
      auto g = conjugator_in_sl(a, inverse(a));
      if (!g)
        throw std::logic_error("irr_k_certificate: block not conjugate to its inverse in this branch");
      MatQ y;
      if (ctx.family == Family::Sp) {
        y = antidiag_j(f, n);
      } else {
        y = mat_zero(f, n, n);
        int half = n / 2;
        for (int i = 0; i < half; ++i) y(i, i) = fq_one(f);
        for (int i = n - half; i < n; ++i) y(i, i) = fq_of(f, -1);
      }
      MatQ u = upper_unipotent_u(ctx, y);
      if (!group_membership(u, ctx))
        throw std::logic_error("irr_k_certificate: block-displacement unipotent not in the group");
      assert_acting(ctx, u, "block-displacement unipotent");
      MatQ jgm = embed_j(*g, *ctx.form());
      assert_acting(ctx, jgm, "inverse conjugator");
      MatQ r = canonicalize(mat_mul(mat_mul(u, x), inverse(u)), ctx);
      MatQ s = canonicalize(mat_mul(mat_mul(jgm, x), inverse(jgm)), ctx);
      bool type_d = f->p() != 2;
      c.kind = type_d ? "typeD" : "typeC";
      c.property = type_d ? "D" : "C";
      c.witness.clear();
      c.put("rep", xc);
      c.put("r", r);
      c.put("s", s);
      c.put("conj_r", u);
      c.put("conj_s", jgm);
      c.applicability = "self-paired eigenvalue set: inverse fiber path";
      require_pair_positive(c, ctx, r, s, type_d);
    }
  }
  c.search_bound = "constructive";
  Recipe rec;
  rec.name = name;
  rec.applied = true;
  rec.cert = std::move(c);
  std::string why;
  if (!verify_certificate(rec.cert, &why))
    throw std::logic_error("irr_k_certificate: self-verification failed: " + why);
  return rec;
}

// ---------- rank-one group over the big field ----------

CoxeterEmbedding build_coxeter_embedding(const GroupCtx& sp_ctx) {
  if (sp_ctx.family != Family::Sp)
    throw std::invalid_argument("coxeter embedding: symplectic contexts only");
  int n = sp_ctx.rank();
  if (n < 2) throw std::invalid_argument("coxeter embedding: rank must be at least 2");
  if (n > 16) throw bound_error("coxeter embedding: rank bound exceeded");
  FieldPtr f = sp_ctx.field;
  uint64_t q = f->q();
  FieldPtr e = extension_field(f, n);
  auto tr = [&](const Fq& z) {
    Fq acc = fq_zero(e);
    Fq cur = z;
    for (int i = 0; i < n; ++i) {
      acc += cur;
      cur = frobenius(cur, 1, q);
    }
    for (int i = 1; i < n; ++i)
      if (e->coeff(acc.code(), i) != 0) throw std::logic_error("trace not in the base field");
    return Fq(f, e->coeff(acc.code(), 0));
  };
  std::vector<Fq> ypow(size_t(2 * n), fq_one(e));
  {
    Fq cur = fq_one(e);
    for (int k = 0; k < 2 * n; ++k) {
      ypow[size_t(k)] = cur;
      cur = cur * fq_gen(e);
    }
  }
  // Gram of (u, v) -> Tr(lambda (u1 v2 - u2 v1)) on the block power basis
  Fq lambda = fq_zero(e);
  MatQ gram;
  bool found = false;
  for (const Fq& cand : all_elements(e)) {
    if (cand.is_zero()) continue;
    MatQ g = mat_zero(f, 2 * n, 2 * n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        Fq v = tr(cand * ypow[size_t(k + l)]);
        g(k, n + l) = v;
        g(n + l, k) = -v;
      }
    if (inverse_opt(g)) {
      lambda = cand;
      gram = g;
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("coxeter embedding: no nondegenerate twist found");
  MatQ p = symplectic_basis_change(gram);
  MatQ pinv = inverse(p);
  auto emb = [&](const MatQ& m_over_e) {
    return mat_mul(pinv, mat_mul(restrict_scalars(m_over_e), p));
  };
  CoxeterEmbedding out;
  out.ext = e;
  for (const Fq& mu : all_elements(e)) {
    if (mu.is_zero()) continue;
    MatQ t12 = mat_identity(e, 2);
    t12(0, 1) = mu;
    out.hgens.push_back(emb(t12));
    MatQ t21 = mat_identity(e, 2);
    t21(1, 0) = mu;
    out.hgens.push_back(emb(t21));
  }
  for (const MatQ& g : out.hgens)
    if (!form_membership(g, FormKind::Symplectic))
      throw std::logic_error("coxeter embedding: transvection image not symplectic");
  // a generator of the norm-one circle in the quadratic extension
  FieldPtr e2 = extension_field(e, 2);
  MatQ cc = companion(PolyQ{e, e2->modulus()});
  Fq zgen = pow(Fq(e2, e2->generator_code()), (long long)(e->q() - 1));
  MatQ t = mat_zero(e, 2, 2);
  {
    MatQ cur = mat_identity(e, 2);
    for (int i = 0; i < 2; ++i) {
      Fq ci(e, e2->coeff(zgen.code(), i));
      if (!ci.is_zero())
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) t(r, s) += ci * cur(r, s);
      cur = mat_mul(cur, cc);
    }
  }
  if (!(det(t) == fq_one(e)))
    throw std::logic_error("coxeter embedding: torus generator not norm-one");
  out.x = emb(t);
  if (!form_membership(out.x, FormKind::Symplectic))
    throw std::logic_error("coxeter embedding: torus image not symplectic");
  // twisted q-power map: v -> c Frob(v) with c^2 = lambda^(q-1)
  Fq csc = f->p() == 2 ? pow(pow(lambda, (long long)(q - 1)), (long long)(e->q() / 2))
                       : pow(lambda, (long long)(q - 1) / 2);
  MatQ frobm = mat_zero(f, 2 * n, 2 * n);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < n; ++k) {
      Fq img = csc * frobenius(ypow[size_t(k)], 1, q);
      for (int row = 0; row < n; ++row)
        frobm(i * n + row, i * n + k) = Fq(f, e->coeff(img.code(), row));
    }
  out.frob = mat_mul(pinv, mat_mul(frobm, p));
  if (!form_membership(out.frob, FormKind::Symplectic))
    throw std::logic_error("coxeter embedding: twisted power map not symplectic");
  MatQ tq(2, 2);
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) tq(r, s) = frobenius(t(r, s), 1, q);
  MatQ lhs = mat_mul(mat_mul(out.frob, out.x), inverse(out.frob));
  if (mat_cmp(lhs, emb(tq)) != 0)
    throw std::logic_error("coxeter embedding: twisted power map misbehaves on the torus");
  return out;
}

Recipe coxeter_certificate(const GroupCtx& ctx, const MatQ& x0, const CoxeterEmbedding& emb) {
  const std::string name = "coxeter";
  if (ctx.family != Family::Sp) return refuse(name, "refused: symplectic contexts only");
  FieldPtr f = ctx.field;
  int n = ctx.rank();
  MatQ x = normalized(x0, f);
  {
    MatQ cur = emb.x;
    bool ok = false;
    long long torus_order = (long long)(ipow_checked(f->q(), n) + 1);
    for (long long k = 1; k <= torus_order; ++k) {
      if (mat_cmp(cur, x) == 0) {
        ok = true;
        break;
      }
      cur = mat_mul(cur, emb.x);
    }
    if (!ok) throw std::invalid_argument("coxeter_certificate: x is not in the constructed torus");
  }
  if (is_scalar_mat(x)) return refuse(name, "refused: central torus element");
  if (!poly_is_irreducible(charpoly(x)))
    return refuse(name, "refused: the torus element is not regular of full degree");
  MatQ xc = canonicalize(x, ctx);
  MatQ s = canonicalize(mat_mul(mat_mul(emb.frob, x), inverse(emb.frob)), ctx);
  Certificate c;
  c.ctx = ctx;
  c.kind = "typeC";
  c.property = "C";
  c.shape = "subgroup";
  c.recipe = name;
  c.put("rep", xc);
  c.put("x", xc);
  c.put("s", s);
  c.put("conj_x", mat_identity(f, ctx.nprime));
  c.put("conj_s", emb.frob);
  for (size_t i = 0; i < emb.hgens.size(); ++i) c.put("hgen_" + std::to_string(i), emb.hgens[i]);
  std::vector<MatQ> orb_x = {xc};
  std::unordered_map<std::string, int> seen{{mat_pack(xc), 0}};
  std::vector<std::pair<MatQ, MatQ>> use;
  for (const MatQ& g : emb.hgens) use.emplace_back(g, inverse(g));
  for (size_t i = 0; i < orb_x.size(); ++i)
    for (const auto& [g, gi] : use)
      for (int dir = 0; dir < 2; ++dir) {
        MatQ yy = dir == 0 ? canonicalize(mat_mul(mat_mul(g, orb_x[i]), gi), ctx)
                           : canonicalize(mat_mul(mat_mul(gi, orb_x[i]), g), ctx);
        if (seen.emplace(mat_pack(yy), int(orb_x.size())).second) orb_x.push_back(yy);
      }
  if (seen.count(mat_pack(s)))
    throw std::logic_error("coxeter_certificate: twist stayed inside the subgroup orbit");
  int ri = -1;
  for (size_t i = 0; i < orb_x.size(); ++i)
    if (mat_cmp(canonicalize(mat_mul(orb_x[i], s), ctx),
                canonicalize(mat_mul(s, orb_x[i]), ctx)) != 0) {
      ri = int(i);
      break;
    }
  if (ri < 0) throw std::logic_error("coxeter_certificate: twist centralizes the whole orbit");
  c.put("r", orb_x[size_t(ri)]);
  c.check("h-nonabelian", true);
  c.check("s-not-in-x-orbit", true);
  c.check("size-condition", true);
  std::ostringstream ap;
  ap << "rank-one group over the degree-" << n << " extension, |O_x^H| = " << orb_x.size();
  {
    long long match = 0, orbit_match = 0;
    MatQ cur = emb.x;
    PolyQ cp = charpoly(x);
    long long torus_order = (long long)(ipow_checked(f->q(), n) + 1);
    for (long long k = 1; k <= torus_order; ++k) {
      if (charpoly(cur) == cp) {
        ++match;
        if (seen.count(mat_pack(canonicalize(cur, ctx)))) ++orbit_match;
      }
      cur = mat_mul(cur, emb.x);
    }
    ap << "; the circle torus meets the class in " << match
       << " points and the subgroup orbit in " << orbit_match;
    if (f->p() != 2) {
      MatQ mx(ctx.nprime, ctx.nprime);
      for (int i = 0; i < ctx.nprime; ++i)
        for (int j = 0; j < ctx.nprime; ++j) mx(i, j) = -x(i, j);
      ap << (charpoly(mx) == cp ? "; -x shares the charpoly" : "; -x is not in the class");
    }
  }
  c.applicability = ap.str();
  c.search_bound = "constructive";
  Recipe rec;
  rec.name = name;
  rec.applied = true;
  rec.cert = std::move(c);
  std::string why;
  if (!verify_certificate(rec.cert, &why))
    throw std::logic_error("coxeter_certificate: self-verification failed: " + why);
  return rec;
}

Recipe coxeter_certificate_auto(const GroupCtx& ctx) {
  CoxeterEmbedding emb = build_coxeter_embedding(ctx);
  return coxeter_certificate(ctx, emb.x, emb);
}

// ---------- block product recipe ----------

Recipe cuspidal_product_certificate(const GroupCtx& sp_ctx, const Partition& lam,
                                    const std::vector<MatQ>& blocks) {
  const std::string name = "cuspidal";
  if (sp_ctx.family != Family::Sp) return refuse(name, "refused: symplectic contexts only");
  if (lam.parts.size() < 2)
    return refuse(name, "refused: a single-part partition belongs to the rank-one torus recipe");
  if (blocks.size() != lam.parts.size())
    throw std::invalid_argument("cuspidal_product_certificate: one block per part");
  FieldPtr f = sp_ctx.field;
  uint64_t q = f->q();
  int n = sp_ctx.rank();
  if (lam.sum() != n)
    throw std::invalid_argument("cuspidal_product_certificate: partition size mismatch");
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (int(blocks[i].rows()) != 2 * lam.parts[i])
      throw std::invalid_argument("cuspidal_product_certificate: block size mismatch");
    if (!form_membership(blocks[i], FormKind::Symplectic))
      throw std::invalid_argument("cuspidal_product_certificate: block not symplectic");
    if (is_scalar_mat(blocks[i])) return refuse(name, "refused: central block");
  }
  size_t t = blocks.size();
  // q-power movement per block
  std::vector<MatQ> qpow;
  std::vector<bool> moved(t, false);
  bool any_moved = false;
  for (size_t i = 0; i < t; ++i) {
    qpow.push_back(mat_pow(blocks[i], (long long)q));
    moved[i] = mat_cmp(qpow[i], blocks[i]) != 0;
    any_moved = any_moved || moved[i];
  }
  if (!any_moved)
    return refuse(name,
                  "refused: every block is fixed by the q-power map, so the element lies in a "
                  "split-type torus");
  // fiber: a factor whose class generates it and admits a non-commuting
  // partner; the remaining blocks need at least one q-power movement
  int fiber = -1;
  ConjClass cls_fib;
  int partner = -1;
  std::vector<size_t> order(t);
  for (size_t i = 0; i < t; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return lam.parts[a] > lam.parts[b]; });
  std::string fiber_log;
  for (size_t oi : order) {
    bool rest_moved = false;
    for (size_t k = 0; k < t; ++k)
      if (k != oi && moved[k]) rest_moved = true;
    if (!rest_moved) continue;
    GroupCtx gf = make_ctx(Family::Sp, lam.parts[oi], f);
    ConjClass cand = conj_class(gf, blocks[oi]);
    int nc = -1;
    for (int k2 = 0; k2 < int(cand.size()); ++k2)
      if (mat_cmp(mat_mul(blocks[oi], cand.elems[size_t(k2)]),
                  mat_mul(cand.elems[size_t(k2)], blocks[oi])) != 0) {
        nc = k2;
        break;
      }
    if (nc < 0) {
      fiber_log += " [block " + std::to_string(oi + 1) + ": class is abelian]";
      continue;
    }
    // class must generate the factor
    u128 want = group_order(gf);
    std::vector<MatQ> seed = {cand.elems[0], cand.elems[size_t(nc)]};
    size_t closure = subgroup_closure(gf, seed, default_enum_bound()).size();
    for (size_t extra = 2; u128(closure) != want && extra < cand.size(); ++extra) {
      seed.push_back(cand.elems[extra]);
      closure = subgroup_closure(gf, seed, default_enum_bound()).size();
    }
    if (u128(closure) != want) {
      fiber_log += " [block " + std::to_string(oi + 1) + ": class generates a proper subgroup]";
      continue;
    }
    fiber = int(oi);
    cls_fib = std::move(cand);
    partner = nc;
    break;
  }
  if (fiber < 0)
    return refuse(name,
                  "refused: no factor qualifies as the fiber (class must generate its factor and "
                  "the remaining blocks must move under the q-power map):" + fiber_log);
  // projective injectivity: either the pivot tuples differ from their
  // negated twists, or the fiber class avoids its own negative
  bool pi_ok = true;
  if (sp_ctx.projective && f->p() != 2) {
    bool tuples_differ = false;
    for (size_t k = 0; k < t; ++k) {
      if (int(k) == fiber) continue;
      MatQ neg(qpow[k].rows(), qpow[k].cols());
      for (int r2 = 0; r2 < qpow[k].rows(); ++r2)
        for (int c2 = 0; c2 < qpow[k].cols(); ++c2) neg(r2, c2) = -qpow[k](r2, c2);
      if (mat_cmp(blocks[k], neg) != 0) tuples_differ = true;
    }
    if (!tuples_differ) {
      MatQ negf(blocks[size_t(fiber)].rows(), blocks[size_t(fiber)].cols());
      for (int r2 = 0; r2 < negf.rows(); ++r2)
        for (int c2 = 0; c2 < negf.cols(); ++c2) negf(r2, c2) = -blocks[size_t(fiber)](r2, c2);
      GroupCtx gf = make_ctx(Family::Sp, lam.parts[size_t(fiber)], f);
      if (cls_fib.find(canonicalize(negf, gf)) >= 0) pi_ok = false;
    }
  }
  if (!pi_ok)
    return refuse(name,
                  "refused: the central quotient glues the two fibers (all pivot blocks are "
                  "negated by the q-power map and the fiber class meets its own negative)");
  // conjugators: per-block q-power reach, the fiber partner, identity elsewhere
  std::vector<MatQ> alts, conjs;
  for (size_t k = 0; k < t; ++k) {
    GroupCtx gk = make_ctx(Family::Sp, lam.parts[k], f);
    if (int(k) == fiber) {
      alts.push_back(cls_fib.elems[size_t(partner)]);
      conjs.push_back(conjugator_to(cls_fib, partner));
    } else if (moved[k]) {
      ConjClass ck = conj_class(gk, blocks[k]);
      int iq = ck.find(canonicalize(qpow[k], gk));
      if (iq < 0)
        throw std::logic_error("cuspidal_product_certificate: q-power left the block class");
      alts.push_back(qpow[k]);
      conjs.push_back(conjugator_to(ck, iq));
    } else {
      alts.push_back(blocks[k]);
      conjs.push_back(mat_identity(f, 2 * lam.parts[k]));
    }
  }
  MatQ r = embed_sp_blocks(blocks);
  MatQ s = embed_sp_blocks(alts);
  MatQ conj_s = embed_sp_blocks(conjs);
  Certificate c;
  c.ctx = sp_ctx;
  c.kind = "typeC";
  c.property = "C";
  c.recipe = name;
  MatQ rc = canonicalize(r, sp_ctx);
  MatQ sc = canonicalize(s, sp_ctx);
  std::ostringstream ap;
  ap << "partition " << lam.str() << ", fiber block " << (fiber + 1) << " with class size "
     << cls_fib.size();
  c.search_bound = "constructive";
  bool pair_ok = true;
  try {
    Certificate probe = c;
    probe.shape = "pair";
    probe.put("rep", rc);
    probe.put("r", rc);
    probe.put("s", sc);
    probe.put("conj_r", mat_identity(f, sp_ctx.nprime));
    probe.put("conj_s", conj_s);
    require_pair_positive(probe, sp_ctx, rc, sc, false);
    probe.applicability = ap.str();
    c = std::move(probe);
  } catch (const std::logic_error&) {
    pair_ok = false;
  }
  if (!pair_ok) {
    // two-element subgroup orbits can be too small (quaternion blocks);
    // fall back to the factor-level product criterion
    c.shape = "product";
    for (size_t k = 0; k < t; ++k) {
      c.put("block_" + std::to_string(k), blocks[k]);
      c.put("alt_" + std::to_string(k), alts[k]);
      c.put("conj_" + std::to_string(k), conjs[k]);
    }
    c.put("rep", rc);
    c.aux.emplace_back("fiber_index", fiber);
    c.check("fiber-pair-non-commuting", true);
    c.check("fiber-class-generates", true);
    c.check("pivot-side-moves", true);
    ap << "; factor-level product criterion";
    c.applicability = ap.str();
  }
  Recipe rec;
  rec.name = name;
  rec.applied = true;
  rec.cert = std::move(c);
  std::string why;
  if (!verify_certificate(rec.cert, &why))
    throw std::logic_error("cuspidal_product_certificate: self-verification failed: " + why);
  return rec;
}

// ---------- rank-2 Levi recipe ----------

Recipe sp4_levi_certificate(const GroupCtx& ctx, const Fq& lambda0, const Fq& z0) {
  const std::string name = "sp4levi";
  if (ctx.family != Family::Sp || ctx.nprime != 4)
    return refuse(name, "refused: rank-2 symplectic contexts only");
  FieldPtr f = ctx.field;
  Fq lambda = lambda0.in(f), z = z0.in(f);
  if (lambda.is_zero()) throw std::invalid_argument("sp4_levi_certificate: lambda must be invertible");
  PolyQ quad = poly_from_fq(f, {fq_one(f), -z, fq_one(f)});
  if (!poly_is_irreducible(quad))
    return refuse(name, "refused: X^2 - zX + 1 is reducible over this field");
  MatQ y = mat_zero(f, 2, 2);
  y(0, 1) = fq_one(f);
  y(1, 0) = -fq_one(f);
  y(1, 1) = z;
  MatQ x = mat_zero(f, 4, 4);
  x(0, 0) = lambda;
  x.block(1, 1, 2, 2) = y;
  x(3, 3) = inv(lambda);
  if (!form_membership(x, FormKind::Symplectic))
    throw std::logic_error("sp4_levi_certificate: seed element not symplectic");
  MatQ u = mat_identity(f, 4);
  u(0, 1) = fq_one(f);
  u(2, 3) = -fq_one(f);
  assert_acting(ctx, u, "upper unipotent");
  auto m = conjugator_in_sl(y, inverse(y));
  if (!m) throw std::logic_error("sp4_levi_certificate: no inverse conjugator in the middle block");
  MatQ flip = mat_zero(f, 4, 4);
  flip(0, 3) = fq_one(f);
  flip(3, 0) = -fq_one(f);
  flip.block(1, 1, 2, 2) = *m;
  assert_acting(ctx, flip, "torus flip");
  MatQ r = canonicalize(mat_mul(mat_mul(u, x), inverse(u)), ctx);
  MatQ s = canonicalize(mat_mul(mat_mul(flip, x), inverse(flip)), ctx);
  {
    MatQ want = mat_zero(f, 4, 4);
    want(0, 0) = inv(lambda);
    want.block(1, 1, 2, 2) = inverse(y);
    want(3, 3) = lambda;
    if (mat_cmp(s, canonicalize(want, ctx)) != 0)
      throw std::logic_error("sp4_levi_certificate: flip failed to invert the torus data");
  }
  bool type_d = f->p() != 2;
  Certificate c;
  c.ctx = ctx;
  c.kind = type_d ? "typeD" : "typeC";
  c.property = type_d ? "D" : "C";
  c.shape = "pair";
  c.recipe = name;
  c.put("rep", canonicalize(x, ctx));
  c.put("r", r);
  c.put("s", s);
  c.put("conj_r", u);
  c.put("conj_s", flip);
  std::ostringstream ap;
  ap << "lambda = " << lambda.str() << ", z = " << z.str()
     << "; fibers are the two block-triangular shapes";
  c.applicability = ap.str();
  c.search_bound = "constructive";
  require_pair_positive(c, ctx, r, s, type_d);
  Recipe rec;
  rec.name = name;
  rec.applied = true;
  rec.cert = std::move(c);
  std::string why;
  if (!verify_certificate(rec.cert, &why))
    throw std::logic_error("sp4_levi_certificate: self-verification failed: " + why);
  return rec;
}

// ---------- composite-rank linear recipe ----------

Recipe psl_composite_certificate(const GroupCtx& psl_ctx, int c_prime, int d) {
  const std::string name = "pslcomposite";
  if (psl_ctx.family != Family::SL) return refuse(name, "refused: special linear contexts only");
  int n = psl_ctx.nprime;
  if (c_prime < 2 || d < 2 || c_prime * d != n)
    throw std::invalid_argument("psl_composite_certificate: need n = c*d with c, d >= 2");
  {
    bool prime = true;
    for (int t = 2; t * t <= c_prime; ++t)
      if (c_prime % t == 0) prime = false;
    if (!prime) throw std::invalid_argument("psl_composite_certificate: c must be prime");
  }
  FieldPtr f = psl_ctx.field;
  uint64_t q = f->q();
  FieldPtr e = extension_field(f, d);
  FieldPtr e2 = extension_field(e, c_prime);
  MatQ dd = companion(PolyQ{e, e2->modulus()});
  auto torus_mat = [&](const Fq& z) {
    MatQ m = mat_zero(e, c_prime, c_prime);
    MatQ cur = mat_identity(e, c_prime);
    for (int i = 0; i < c_prime; ++i) {
      Fq ci(e, e2->coeff(z.code(), i));
      if (!ci.is_zero())
        for (int r = 0; r < c_prime; ++r)
          for (int s = 0; s < c_prime; ++s) m(r, s) += ci * cur(r, s);
      cur = mat_mul(cur, dd);
    }
    return m;
  };
  Fq unit = pow(Fq(e2, e2->generator_code()), (long long)(q - 1));
  MatQ x;
  bool got_x = false;
  long long unit_order = element_order(unit);
  for (long long k = 1; k <= unit_order && !got_x; ++k) {
    Fq z = pow(unit, k);
    MatQ cand = restrict_scalars(torus_mat(z));
    if (!(det(cand) == fq_one(f))) continue;
    if (!poly_is_irreducible(charpoly(cand))) continue;
    x = cand;
    got_x = true;
  }
  if (!got_x)
    return refuse(name,
                  "refused: the norm-one circle of this parameter pair has no element of full degree");
  MatQ xc = canonicalize(x, psl_ctx);
  std::vector<MatQ> m1gens;
  for (int k = 0; k < c_prime; ++k)
    for (int l = 0; l < c_prime; ++l) {
      if (k == l) continue;
      for (const Fq& mu : all_elements(e)) {
        if (mu.is_zero()) continue;
        MatQ t = mat_identity(e, c_prime);
        t(k, l) = mu;
        m1gens.push_back(restrict_scalars(t));
      }
    }
  MatQ tau = restrict_scalars(torus_mat(Fq(e2, e2->generator_code())));
  MatQ xq = mat_pow(x, (long long)q);
  auto gq = conjugator_in_sl(x, xq);
  if (!gq) throw std::logic_error("psl_composite_certificate: no conjugator to the q-power");
  MatQ xqc = canonicalize(xq, psl_ctx);
  std::vector<MatQ> orb = {xqc};
  std::vector<MatQ> orb_conj = {mat_identity(f, n)};
  std::unordered_map<std::string, int> seen{{mat_pack(xqc), 0}};
  int si = -1;
  for (size_t i = 0; i < orb.size() && si < 0; ++i) {
    for (const MatQ& g : m1gens) {
      MatQ yy = canonicalize(mat_mul(mat_mul(g, orb[i]), inverse(g)), psl_ctx);
      if (seen.emplace(mat_pack(yy), int(orb.size())).second) {
        orb.push_back(yy);
        orb_conj.push_back(mat_mul(g, orb_conj[i]));
        MatQ conj_tau = mat_mul(mat_mul(orb.back(), tau), inverse(orb.back()));
        if (mat_cmp(canonicalize(mat_mul(conj_tau, tau), psl_ctx),
                    canonicalize(mat_mul(tau, conj_tau), psl_ctx)) != 0) {
          si = int(orb.size()) - 1;
          break;
        }
      }
    }
  }
  if (si < 0)
    return refuse(name,
                  "refused: the subgroup orbit of the twisted element stayed inside the torus normalizer");
  MatQ s = orb[size_t(si)];
  MatQ conj_s = mat_mul(orb_conj[size_t(si)], *gq);
  Certificate cert;
  cert.ctx = psl_ctx;
  cert.kind = "typeC";
  cert.property = "C";
  cert.shape = "subgroup-pair";
  cert.recipe = name;
  cert.put("rep", xc);
  cert.put("r", xc);
  cert.put("s", s);
  cert.put("conj_r", mat_identity(f, n));
  cert.put("conj_s", conj_s);
  std::vector<MatQ> hgens = m1gens;
  hgens.push_back(xc);
  hgens.push_back(s);
  for (size_t i = 0; i < hgens.size(); ++i) cert.put("hgen_" + std::to_string(i), hgens[i]);
  std::ostringstream ap;
  ap << "n = " << c_prime << "*" << d << "; centralizer subgroup over the degree-" << d
     << " extension; twisted partner found at orbit position " << si;
  cert.applicability = ap.str();
  cert.search_bound = "constructive";
  Recipe rec;
  rec.name = name;
  rec.applied = true;
  rec.cert = std::move(cert);
  std::string why;
  if (!verify_certificate(rec.cert, &why))
    return refuse(name, "refused: subgroup-orbit disjointness failed (" + why + ")");
  return rec;
}

// ---------- orthogonal mixed recipe ----------

// outer block swap h with h x h^-1 = target, scanned over the solution
// family until one lands in the derived subgroup
static std::optional<MatQ> outer_swap_in_omega(const GroupCtx& ctx, const MatQ& x,
                                               const MatQ& target, const MatQ& a1) {
  FieldPtr f = ctx.field;
  int np = ctx.nprime;
  MatQ pa = phi(a1);
  MatQ ai = inverse(a1);
  MatQ sys = mat_zero(f, 4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      int row = i * 2 + j;
      for (int k = 0; k < 2; ++k) {
        sys(row, i * 2 + k) += pa(k, j);
        sys(row, k * 2 + j) -= ai(i, k);
      }
    }
  std::vector<VecQ> basis = null_space(sys);
  uint64_t q = f->q();
  uint64_t total = 1;
  for (size_t i = 0; i < basis.size(); ++i) total *= q;
  MatQ tc = canonicalize(target, ctx);
  for (uint64_t code = 1; code < total; ++code) {
    MatQ p = mat_zero(f, 2, 2);
    uint64_t cc = code;
    for (size_t b = 0; b < basis.size(); ++b) {
      Fq coef(f, uint32_t(cc % q));
      cc /= q;
      if (coef.is_zero()) continue;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p(i, j) += coef * basis[b](i * 2 + j);
    }
    if (!inverse_opt(p)) continue;
    MatQ h = mat_zero(f, np, np);
    for (int i = 2; i < np - 2; ++i) h(i, i) = fq_one(f);
    h.block(0, np - 2, 2, 2) = p;
    h.block(np - 2, 0, 2, 2) = phi(p);
    if (!group_membership(h, ctx)) continue;
    if (mat_cmp(canonicalize(mat_mul(mat_mul(h, x), inverse(h)), ctx), tc) != 0) continue;
    if (in_omega(h, ctx)) return h;
  }
  return std::nullopt;
}

Recipe so_mixed_certificate(const GroupCtx& so_ctx, const MatQ& a1,
                            const std::optional<Fq>& c_scalar, const std::optional<MatQ>& a2) {
  const std::string name = "somixed";
  if (so_ctx.family != Family::SOeven || !so_ctx.derived_only)
    return refuse(name, "refused: even orthogonal derived contexts only");
  FieldPtr f = so_ctx.field;
  if (!poly_is_irreducible(charpoly(a1)))
    return refuse(name, "refused: the first block must be irreducible");
  if (c_scalar.has_value()) {
    if (so_ctx.nprime != 6) return refuse(name, "refused: the scalar variant needs dimension 6");
    Fq c = c_scalar->in(f);
    if (c.is_zero()) throw std::invalid_argument("so_mixed_certificate: scalar must be invertible");
    MatQ at = mat_zero(f, 3, 3);
    at.block(0, 0, 2, 2) = a1;
    at(2, 2) = c;
    MatQ x = embed_j(at, FormKind::OrthogonalEven);
    MatQ xc = canonicalize(x, so_ctx);
    MatQ at_inv1 = mat_zero(f, 3, 3);
    at_inv1.block(0, 0, 2, 2) = inverse(a1);
    at_inv1(2, 2) = c;
    MatQ target = embed_j(at_inv1, FormKind::OrthogonalEven);
    auto h = outer_swap_in_omega(so_ctx, x, target, a1);
    if (!h) throw std::logic_error("so_mixed_certificate: no derived-subgroup swap found");
    MatQ w = mat_identity(f, 3);
    MatQ cmi = inverse(mat_scalar(f, 2, c) - inverse(a1));
    for (int i = 0; i < 2; ++i) w(i, 2) = cmi(i, 0);
    MatQ ju = embed_j(w, FormKind::OrthogonalEven);
    assert_acting(so_ctx, ju, "linear unipotent");
    MatQ conj_s = mat_mul(ju, *h);
    MatQ s = canonicalize(mat_mul(mat_mul(conj_s, x), inverse(conj_s)), so_ctx);
    MatQ rs2 = canonicalize(mat_pow(mat_mul(xc, s), 2), so_ctx);
    MatQ sr2 = canonicalize(mat_pow(mat_mul(s, xc), 2), so_ctx);
    bool type_d = mat_cmp(rs2, sr2) != 0;
    Certificate cert;
    cert.ctx = so_ctx;
    cert.kind = type_d ? "typeD" : "typeC";
    cert.property = type_d ? "D" : "C";
    cert.shape = "pair";
    cert.recipe = name;
    cert.put("rep", xc);
    cert.put("r", xc);
    cert.put("s", s);
    cert.put("conj_r", mat_identity(f, 6));
    cert.put("conj_s", conj_s);
    std::ostringstream ap;
    ap << "blocks (2x2 irreducible, scalar " << c.str() << "); "
       << (type_d ? "squared products differ" : "the scalar squares to -1: orbit-size route");
    cert.applicability = ap.str();
    cert.search_bound = "constructive";
    require_pair_positive(cert, so_ctx, xc, s, type_d);
    Recipe rec;
    rec.name = name;
    rec.applied = true;
    rec.cert = std::move(cert);
    std::string why;
    if (!verify_certificate(rec.cert, &why))
      throw std::logic_error("so_mixed_certificate: self-verification failed: " + why);
    return rec;
  }
  if (!a2.has_value())
    throw std::invalid_argument("so_mixed_certificate: need a scalar or a second block");
  if (so_ctx.nprime != 8) return refuse(name, "refused: the two-block variant needs dimension 8");
  if (f->p() == 2)
    return refuse(name,
                  "refused: over even fields the block-diagonal element is linear and is handled "
                  "through the special linear inclusion");
  if (!poly_is_irreducible(charpoly(*a2)))
    return refuse(name, "refused: the second block must be irreducible");
  MatQ rot = companion(poly_from(f, {1, 0, 1}));
  bool a1_rot = mat_cmp(a1, rot) == 0, a2_rot = mat_cmp(*a2, rot) == 0;
  if (a1_rot && a2_rot) {
    GroupCtx psl4 = make_ctx(Family::SL, 4, f, true);
    MatQ A = mat_diag_blocks(a1, *a2);
    ConjClass cls = conj_class(psl4, A);
    ClassRack cr = ClassRack::of_class(cls);
    Certificate cd = type_d_pair_search(cr);
    if (cd.kind != "typeD")
      throw std::logic_error("so_mixed_certificate: rotation route failed to find a witness");
    cd.recipe = name;
    cd.applicability =
        "both blocks are the rotation: witness found in the rank-4 projective linear class";
    Recipe rec;
    rec.name = name;
    rec.applied = true;
    rec.cert = std::move(cd);
    return rec;
  }
  std::vector<std::pair<MatQ, MatQ>> orders = {{a1, *a2}, {*a2, a1}};
  for (auto& [b1, b2] : orders) {
    MatQ A = mat_diag_blocks(b1, b2);
    MatQ x = embed_j(A, FormKind::OrthogonalEven);
    MatQ xc = canonicalize(x, so_ctx);
    MatQ Ainv1 = mat_diag_blocks(inverse(b1), b2);
    MatQ target = embed_j(Ainv1, FormKind::OrthogonalEven);
    auto h = outer_swap_in_omega(so_ctx, x, target, b1);
    if (!h) continue;
    MatQ u4 = mat_identity(f, 4);
    u4(0, 2) = fq_one(f);
    u4(1, 3) = fq_one(f);
    MatQ ju = embed_j(u4, FormKind::OrthogonalEven);
    assert_acting(so_ctx, ju, "block unipotent");
    MatQ r = canonicalize(mat_mul(mat_mul(ju, x), inverse(ju)), so_ctx);
    MatQ s = canonicalize(mat_mul(mat_mul(*h, x), inverse(*h)), so_ctx);
    MatQ rs2 = canonicalize(mat_pow(mat_mul(r, s), 2), so_ctx);
    MatQ sr2 = canonicalize(mat_pow(mat_mul(s, r), 2), so_ctx);
    if (mat_cmp(rs2, sr2) == 0) continue;
    Certificate cert;
    cert.ctx = so_ctx;
    cert.kind = "typeD";
    cert.property = "D";
    cert.shape = "pair";
    cert.recipe = name;
    cert.put("rep", xc);
    cert.put("r", r);
    cert.put("s", s);
    cert.put("conj_r", ju);
    cert.put("conj_s", *h);
    cert.applicability = "two irreducible blocks; block displacement against the inverse fiber";
    cert.search_bound = "constructive";
    require_pair_positive(cert, so_ctx, r, s, true);
    Recipe rec;
    rec.name = name;
    rec.applied = true;
    rec.cert = std::move(cert);
    std::string why;
    if (!verify_certificate(rec.cert, &why))
      throw std::logic_error("so_mixed_certificate: self-verification failed: " + why);
    return rec;
  }
  return refuse(name, "refused: both block orderings give agreeing squared products");
}

}  // namespace clab
