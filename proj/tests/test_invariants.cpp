#include "doctest.h"

#include <map>
#include <set>

#include <random>

#include "clab/certify.hpp"
#include "clab/numtheory.hpp"
#include "clab/weyl.hpp"

using namespace clab;

TEST_CASE("semisimple symplectic classes are separated by charpoly") {
  // two semisimple elements with the same characteristic polynomial lie in
  // one class; verified by full enumeration in the rank-2 group over F_3
  FieldPtr f3 = make_field(3, 1);
  GroupCtx ctx = make_ctx(Family::Sp, 2, f3);
  std::map<std::string, int> charpoly_class_count;
  for (const ConjClass& cls : all_classes(ctx)) {
    if (!is_semisimple(cls.rep)) continue;
    charpoly_class_count[charpoly(cls.rep).str()] += 1;
  }
  for (const auto& [cp, count] : charpoly_class_count) CHECK(count == 1);
  CHECK(charpoly_class_count.size() >= 5);
}

TEST_CASE("projective classes are the canonical images of matrix classes") {
  for (auto [p, famn] : {std::pair<long, int>{3, 2}, {5, 2}}) {
    FieldPtr f = make_field(p, 1);
    GroupCtx mat_ctx = make_ctx(Family::SL, famn, f);
    GroupCtx proj_ctx = make_ctx(Family::SL, famn, f, true);
    GroupSet g = enumerate_group(mat_ctx);
    for (size_t i = 0; i < g.elems.size(); i += 7) {
      ConjClass mc = conj_class(mat_ctx, g.elems[i]);
      ConjClass pc = conj_class(proj_ctx, g.elems[i]);
      std::set<std::string> image;
      for (const MatQ& m : mc.elems) image.insert(mat_pack(canonicalize(m, proj_ctx)));
      std::set<std::string> proj;
      for (const MatQ& m : pc.elems) proj.insert(mat_pack(m));
      CHECK(image == proj);
    }
  }
  // one spot check in the rank-2 symplectic quotient over F_3
  {
    FieldPtr f3 = make_field(3, 1);
    GroupCtx mat_ctx = make_ctx(Family::Sp, 2, f3);
    GroupCtx proj_ctx = make_ctx(Family::Sp, 2, f3, true);
    MatQ x = embed_j(mat_diag({fq_one(f3), fq_of(f3, -1)}), FormKind::Symplectic);
    ConjClass mc = conj_class(mat_ctx, x);
    ConjClass pc = conj_class(proj_ctx, x);
    std::set<std::string> image;
    for (const MatQ& m : mc.elems) image.insert(mat_pack(canonicalize(m, proj_ctx)));
    std::set<std::string> proj;
    for (const MatQ& m : pc.elems) proj.insert(mat_pack(m));
    CHECK(image == proj);
    CHECK(mc.size() == 90);
    CHECK(pc.size() == 45);
  }
}

TEST_CASE("subrack closure of a pair equals the union of its subgroup orbits") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx ctx = make_ctx(Family::SL, 2, f3);
  ConjClass cls = conj_class(ctx, mat_from(f3, 2, {1, 1, 0, 1}));
  FiniteRack r = rack_from_class(cls);
  ClassRack cr = ClassRack::of_class(cls);
  for (int i = 0; i < r.size; ++i)
    for (int j = 0; j < r.size; ++j) {
      auto cl = subrack_closure(r, {i, j});
      std::vector<int> orbi = conj_orbit(cr, i, {i, j});
      std::vector<int> orbj = conj_orbit(cr, j, {i, j});
      std::set<int> uni(orbi.begin(), orbi.end());
      uni.insert(orbj.begin(), orbj.end());
      CHECK(std::set<int>(cl.begin(), cl.end()) == uni);
    }
}

TEST_CASE("restricted Coxeter torus stays cyclic of full order") {
  // the blockwise regular representation of the cyclic torus of the
  // two-dimensional group over GF(q^2) is cyclic of order q^4 - 1
  FieldPtr f2 = make_field(2, 1);
  FieldPtr f4 = extension_field(f2, 2);
  CoxeterTorusGL t = coxeter_torus_gl(f4, 2);  // torus of GL_2(4)
  REQUIRE(t.elems.size() == 15);
  MatQ image = restrict_scalars(t.gen);
  CHECK(mat_order(image) == 15);
  // image of the whole torus is the cyclic group generated by the image
  std::set<std::string> imgs;
  for (const MatQ& m : t.elems) imgs.insert(mat_pack(restrict_scalars(m)));
  std::set<std::string> gen_powers;
  MatQ cur = image;
  for (int k = 0; k < 15; ++k) {
    gen_powers.insert(mat_pack(cur));
    cur = mat_mul(cur, image);
  }
  CHECK(imgs == gen_powers);
}

TEST_CASE("torus order is a class function on the rank-4 hyperoctahedral group") {
  auto all = all_signed_perms(4);
  REQUIRE(all.size() == 384);
  std::map<std::vector<std::pair<int, int>>, std::set<unsigned long long>> seen;
  for (const auto& w : all) seen[signed_cycle_type(w)].insert(torus_order_signed(w, 5));
  for (const auto& [type, vals] : seen) CHECK(vals.size() == 1);
}

TEST_CASE("norm-window gcd identity for subfield centralizers") {
  // (n (q0 - 1), q - 1) = (q0 - 1) * (n, (d)_q0) for q = q0^d with (d, n) = 1
  for (int n : {3, 5, 7})
    for (unsigned long long q0 : {2ull, 3ull, 4ull, 5ull, 8ull, 9ull})
      for (int d : {2, 3, 4}) {
        if (d % n == 0) continue;
        u128 q = ipow_checked(q0, d);
        u128 lhs = gcd_u128(u128((unsigned long long)n) * (q0 - 1), q - 1);
        u128 rhs = (q0 - 1) * gcd_u128(u128((unsigned long long)n), q_number(d, q0));
        CHECK(lhs == rhs);
      }
}

TEST_CASE("negative certificates round-trip with honest kinds") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx ctx = make_ctx(Family::SL, 2, f3, true);
  ConjClass c = conj_class(ctx, companion(poly_from(f3, {1, 0, 1})));
  ClassRack cr = ClassRack::of_class(c);
  VerdictRecord v = classify(cr);
  CHECK(v.type_d.kind == "negative-exhaustive");
  CHECK(v.type_f.kind == "negative-exhaustive");
  CHECK(!v.type_d.search_bound.empty());
}

TEST_CASE("spinor norm separates the two cosets completely at rank 2") {
  // the 288-element derived subgroup has trivial norm throughout; the
  // other coset of the special orthogonal group is nontrivial throughout
  FieldPtr f3 = make_field(3, 1);
  GroupCtx o43 = make_ctx(Family::SOeven, 2, f3, false, true);
  GroupSet omega = enumerate_group(o43);
  REQUIRE(omega.elems.size() == 288);
  for (const MatQ& g : omega.elems) CHECK(!spinor_norm_nontrivial(g));
  // a fixed reflection product with nonsquare norm shifts the coset
  MatQ jf = antidiag_j(f3, 4);
  auto reflection = [&](const VecQ& u) {
    MatQ r = mat_identity(f3, 4);
    Fq buu = fq_zero(f3);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) buu += u(i) * jf(i, j) * u(j);
    for (int col = 0; col < 4; ++col) {
      Fq bxu = fq_zero(f3);
      for (int j = 0; j < 4; ++j) bxu += jf(col, j) * u(j);
      Fq t = fq_of(f3, 2) * bxu / buu;
      for (int i = 0; i < 4; ++i) r(i, col) -= t * u(i);
    }
    return r;
  };
  VecQ u(4), v(4);
  for (int i = 0; i < 4; ++i) {
    u(i) = fq_zero(f3);
    v(i) = fq_zero(f3);
  }
  u(0) = fq_one(f3);
  u(3) = fq_one(f3);
  v(0) = fq_one(f3);
  v(3) = fq_of(f3, 2);
  MatQ shift = mat_mul(reflection(u), reflection(v));
  REQUIRE(spinor_norm_nontrivial(shift));
  for (size_t i = 0; i < omega.elems.size(); i += 5)
    CHECK(spinor_norm_nontrivial(mat_mul(shift, omega.elems[i])));
}

TEST_CASE("tampered certificates do not verify") {
  FieldPtr f3 = make_field(3, 1), f5 = make_field(5, 1);
  std::vector<Certificate> certs;
  certs.push_back(sp4_levi_certificate(make_ctx(Family::Sp, 2, f5, true), fq_of(f5, 2), fq_one(f5)).cert);
  certs.push_back(
      irr_k_certificate(make_ctx(Family::Sp, 2, f3, true), companion(poly_from(f3, {1, 0, 1}))).cert);
  certs.push_back(coxeter_certificate_auto(make_ctx(Family::Sp, 2, f3, true)).cert);
  std::mt19937 rng(99);
  for (const Certificate& base : certs) {
    REQUIRE(verify_certificate(base));
    for (int trial = 0; trial < 12; ++trial) {
      Certificate bad = base;
      size_t w = rng() % bad.witness.size();
      auto& [name, m] = bad.witness[w];
      int i = int(rng() % size_t(m.rows()));
      int j = int(rng() % size_t(m.cols()));
      m(i, j) += Fq(1);
      std::string why;
      CHECK(!verify_certificate(bad, &why));
    }
  }
}

TEST_CASE("minimal polynomials annihilate and are minimal") {
  std::mt19937 rng(123);
  for (auto [p, m] : {std::pair<long, int>{2, 1}, {3, 1}, {2, 2}}) {
    FieldPtr f = make_field(p, m);
    std::uniform_int_distribution<uint32_t> dist(0, uint32_t(f->q() - 1));
    for (int rep = 0; rep < 25; ++rep) {
      int n = 2 + int(rng() % 4);
      MatQ a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Fq(f, dist(rng));
      PolyQ mp = minpoly(a);
      // evaluate at the matrix
      MatQ acc = mat_zero(f, n, n);
      MatQ pw = mat_identity(f, n);
      for (int d = 0; d <= mp.degree(); ++d) {
        Fq c = mp.coeff(d);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) acc(i, j) += c * pw(i, j);
        pw = mat_mul(pw, a);
      }
      bool zero = true;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (!acc(i, j).is_zero()) zero = false;
      CHECK(zero);
      // removing any irreducible factor stops the annihilation
      for (const PolyQ& h : poly_factor(mp)) {
        PolyQ reduced{f, polyd::divq(f, mp.coeffs, h.coeffs)};
        if (reduced.degree() < 0) continue;
        MatQ acc2 = mat_zero(f, n, n);
        MatQ pw2 = mat_identity(f, n);
        for (int d = 0; d <= reduced.degree(); ++d) {
          Fq c = reduced.coeff(d);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) acc2(i, j) += c * pw2(i, j);
          pw2 = mat_mul(pw2, a);
        }
        bool zero2 = true;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (!acc2(i, j).is_zero()) zero2 = false;
        CHECK(!zero2);
      }
    }
  }
}

// determinant of a small polynomial matrix by Laplace expansion: the
// independent route to the characteristic polynomial
static PolyQ polydet(FieldPtr f, const std::vector<std::vector<PolyQ>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  PolyQ acc{f, {}};
  for (size_t k = 0; k < n; ++k) {
    std::vector<std::vector<PolyQ>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<PolyQ> row;
      for (size_t j = 0; j < n; ++j)
        if (j != k) row.push_back(m[i][j]);
      minor.push_back(row);
    }
    PolyQ term = poly_mul(m[0][k], polydet(f, minor));
    if (k % 2 == 1)
      for (auto& c : term.coeffs) c = f->neg(c);
    acc = PolyQ{f, polyd::add(f, acc.coeffs, term.coeffs)};
  }
  return acc;
}

TEST_CASE("characteristic polynomial matches the cofactor oracle") {
  std::mt19937 rng(321);
  for (auto [p, m] : {std::pair<long, int>{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
    FieldPtr f = make_field(p, m);
    std::uniform_int_distribution<uint32_t> dist(0, uint32_t(f->q() - 1));
    for (int rep = 0; rep < 20; ++rep) {
      int n = 1 + int(rng() % 4);
      MatQ a(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Fq(f, dist(rng));
      std::vector<std::vector<PolyQ>> xi;
      for (int i = 0; i < n; ++i) {
        std::vector<PolyQ> row;
        for (int j = 0; j < n; ++j) {
          if (i == j)
            row.push_back(PolyQ{f, polyd::trim({f->neg(a(i, j).code()), 1})});
          else
            row.push_back(PolyQ{f, polyd::trim({f->neg(a(i, j).code())})});
        }
        xi.push_back(row);
      }
      CHECK(charpoly(a) == polydet(f, xi));
    }
  }
}
