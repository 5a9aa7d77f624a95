#include "doctest.h"

#include "clab/certify.hpp"

using namespace clab;

TEST_CASE("split recipe on the rank-2 symplectic group over F_5") {
  FieldPtr f5 = make_field(5, 1);
  GroupCtx ctx = make_ctx(Family::Sp, 2, f5, true);
  MatQ x = mat_diag({fq_of(f5, 2), fq_one(f5), fq_one(f5), fq_of(f5, 3)});
  Recipe r = split_certificate(ctx, x);
  REQUIRE(r.applied);
  CHECK(r.cert.kind == "typeC");
  std::string why;
  CHECK(verify_certificate(r.cert, &why));
}

TEST_CASE("split recipe refuses the rank-2 split involution") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx ctx = make_ctx(Family::Sp, 2, f3, true);
  MatQ x = mat_diag({fq_one(f3), fq_of(f3, -1), fq_of(f3, -1), fq_one(f3)});
  Recipe r = split_certificate(ctx, x);
  CHECK(!r.applied);
  CHECK(r.refusal.find("involution") != std::string::npos);
}

TEST_CASE("split recipe refuses q = 2 and central input") {
  FieldPtr f2 = make_field(2, 1);
  GroupCtx ctx2 = make_ctx(Family::Sp, 2, f2);
  CHECK(!split_certificate(ctx2, mat_identity(f2, 4)).applied);
  FieldPtr f5 = make_field(5, 1);
  GroupCtx ctx5 = make_ctx(Family::Sp, 2, f5);
  MatQ scal = mat_scalar(f5, 4, fq_of(f5, -1));
  CHECK(!split_certificate(ctx5, scal).applied);
}

TEST_CASE("split recipe in the odd orthogonal group over F_3") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx ctx = make_ctx(Family::SOodd, 3, f3, false, true);  // Omega_7(3)
  std::vector<Fq> d = {fq_of(f3, 2), fq_one(f3), fq_one(f3), fq_one(f3),
                       fq_one(f3), fq_one(f3), fq_of(f3, 2)};
  MatQ x = mat_diag(d);
  REQUIRE(group_membership(x, ctx));
  Recipe r = split_certificate(ctx, x);
  REQUIRE(r.applied);
  CHECK(r.cert.kind == "typeC");
  std::string why;
  CHECK(verify_certificate(r.cert, &why));
  // the all-minus-one pattern is refused
  MatQ bad = mat_diag({fq_of(f3, -1), fq_of(f3, -1), fq_of(f3, -1), fq_one(f3),
                       fq_of(f3, -1), fq_of(f3, -1), fq_of(f3, -1)});
  REQUIRE(group_membership(bad, ctx));
  CHECK(!split_certificate(ctx, bad).applied);
}

TEST_CASE("embedded-block recipe on the rank-2 symplectic group") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx ctx = make_ctx(Family::Sp, 2, f3, true);
  // regular path: X^2+X+2 is irreducible with eigenvalues of order 8
  Recipe r1 = irr_k_certificate(ctx, companion(poly_from(f3, {2, 1, 1})));
  REQUIRE(r1.applied);
  CHECK(r1.cert.kind == "typeC");
  std::string why;
  CHECK(verify_certificate(r1.cert, &why));
  // rotation path: X^2+1 with q = 3 mod 4 gives the symmetric-witness pair
  Recipe r2 = irr_k_certificate(ctx, companion(poly_from(f3, {1, 0, 1})));
  REQUIRE(r2.applied);
  CHECK(r2.cert.kind == "typeD");
  CHECK(verify_certificate(r2.cert, &why));
  bool has_squares = false;
  for (const auto& [n, v] : r2.cert.checks)
    if (n == "squares-differ") has_squares = v;
  CHECK(has_squares);
}

TEST_CASE("embedded-block recipe: inverse fiber path in Sp_4(5)") {
  FieldPtr f5 = make_field(5, 1);
  GroupCtx ctx = make_ctx(Family::Sp, 2, f5, true);
  // X^2 - X + 1 = X^2 + 4X + 1 is irreducible over F_5 with determinant one,
  // so the eigenvalue set is closed under inversion and the element is not
  // regular after embedding
  PolyQ pa = poly_from(f5, {1, -1 + 5, 1});
  REQUIRE(poly_is_irreducible(pa));
  MatQ a = companion(pa);
  REQUIRE(!poly_is_squarefree(charpoly(embed_j(a, FormKind::Symplectic))));
  Recipe r = irr_k_certificate(ctx, a);
  REQUIRE(r.applied);
  CHECK(r.cert.kind == "typeD");
  std::string why;
  CHECK(verify_certificate(r.cert, &why));
}

TEST_CASE("embedded-block recipe refuses reducible blocks") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx ctx = make_ctx(Family::Sp, 2, f3);
  Recipe r = irr_k_certificate(ctx, mat_diag({fq_one(f3), fq_of(f3, 2)}));
  CHECK(!r.applied);
  CHECK(r.refusal.find("reducible") != std::string::npos);
}

TEST_CASE("embedded-block recipe on the derived orthogonal group over F_2") {
  FieldPtr f2 = make_field(2, 1);
  GroupCtx ctx = make_ctx(Family::SOeven, 3, f2, false, true);  // Omega_6(2)
  PolyQ cubic = poly_from(f2, {1, 1, 0, 1});  // X^3 + X + 1
  REQUIRE(poly_is_irreducible(cubic));
  Recipe r = irr_k_certificate(ctx, companion(cubic));
  REQUIRE(r.applied);
  CHECK(r.cert.kind == "typeC");  // odd order over an even field
  std::string why;
  CHECK(verify_certificate(r.cert, &why));
}

TEST_CASE("rank-one torus recipe over F_2 and F_3") {
  FieldPtr f2 = make_field(2, 1);
  GroupCtx sp42 = make_ctx(Family::Sp, 2, f2);
  Recipe r2 = coxeter_certificate_auto(sp42);
  REQUIRE(r2.applied);
  CHECK(r2.cert.kind == "typeC");
  std::string why;
  CHECK(verify_certificate(r2.cert, &why));
  CHECK(r2.cert.applicability.find("meets the class in 4 points") != std::string::npos);

  FieldPtr f3 = make_field(3, 1);
  GroupCtx sp43 = make_ctx(Family::Sp, 2, f3, true);
  Recipe r3 = coxeter_certificate_auto(sp43);
  REQUIRE(r3.applied);
  CHECK(r3.cert.kind == "typeC");
  CHECK(verify_certificate(r3.cert, &why));
  CHECK(r3.cert.applicability.find("meets the class in 4 points") != std::string::npos);
  CHECK(r3.cert.applicability.find("-x is not in the class") != std::string::npos);
}

TEST_CASE("rank-one torus embedding invariants in Sp_4(3)") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx sp43 = make_ctx(Family::Sp, 2, f3);
  CoxeterEmbedding emb = build_coxeter_embedding(sp43);
  // the embedded torus generator has order q^n + 1 = 10
  CHECK(mat_order(emb.x) == 10);
  // the embedded subgroup closure has the order of SL_2(9)
  std::vector<MatQ> h = {mat_identity(f3, 4)};
  std::unordered_map<std::string, int> seen{{mat_pack(h[0]), 0}};
  for (size_t i = 0; i < h.size(); ++i)
    for (const MatQ& g : emb.hgens) {
      MatQ y = mat_mul(h[i], g);
      if (seen.emplace(mat_pack(y), int(h.size())).second) h.push_back(y);
    }
  CHECK(h.size() == 720);
}

TEST_CASE("block product recipe in Sp_8(3)") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx sp83 = make_ctx(Family::Sp, 4, f3, true);
  GroupCtx sp43 = make_ctx(Family::Sp, 2, f3);
  CoxeterEmbedding emb = build_coxeter_embedding(sp43);
  MatQ b1 = emb.x;                    // order 10
  MatQ b2 = mat_pow(emb.x, 3);        // a different circle element
  Recipe r = cuspidal_product_certificate(sp83, Partition{{2, 2}}, {b1, b2});
  REQUIRE(r.applied);
  CHECK(r.cert.kind == "typeC");
  std::string why;
  CHECK(verify_certificate(r.cert, &why));
}

TEST_CASE("block product recipe refusals") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx sp83 = make_ctx(Family::Sp, 4, f3);
  // q-power-fixed blocks are refused
  MatQ split1 = mat_diag({fq_of(f3, 2), fq_one(f3), fq_one(f3), fq_of(f3, 2)});
  REQUIRE(form_membership(split1, FormKind::Symplectic));
  Recipe r = cuspidal_product_certificate(sp83, Partition{{2, 2}}, {split1, split1});
  CHECK(!r.applied);
  CHECK(r.refusal.find("fixed by the q-power") != std::string::npos);
  // single-part partitions are routed elsewhere
  GroupCtx sp43 = make_ctx(Family::Sp, 2, f3);
  CoxeterEmbedding emb = build_coxeter_embedding(sp43);
  GroupCtx sp432 = make_ctx(Family::Sp, 2, f3);
  Recipe r2 = cuspidal_product_certificate(sp432, Partition{{2}}, {emb.x});
  CHECK(!r2.applied);
  // central blocks are refused
  Recipe r3 = cuspidal_product_certificate(
      sp83, Partition{{2, 2}}, {mat_scalar(f3, 4, fq_of(f3, -1)), emb.x});
  CHECK(!r3.applied);
  CHECK(r3.refusal.find("central") != std::string::npos);
}

TEST_CASE("rank-2 Levi recipe") {
  // q = 5: X^2 - X + 1 irreducible (discriminant -3 is not a square)
  FieldPtr f5 = make_field(5, 1);
  GroupCtx sp45 = make_ctx(Family::Sp, 2, f5, true);
  Recipe r5 = sp4_levi_certificate(sp45, fq_of(f5, 2), fq_one(f5));
  REQUIRE(r5.applied);
  CHECK(r5.cert.kind == "typeD");
  std::string why;
  CHECK(verify_certificate(r5.cert, &why));
  // q = 2: the even branch gives a type C witness
  FieldPtr f2 = make_field(2, 1);
  GroupCtx sp42 = make_ctx(Family::Sp, 2, f2);
  Recipe r2 = sp4_levi_certificate(sp42, fq_one(f2), fq_one(f2));
  REQUIRE(r2.applied);
  CHECK(r2.cert.kind == "typeC");
  CHECK(verify_certificate(r2.cert, &why));
  // q = 4: search for a usable (lambda, z) pair and run it
  FieldPtr f4 = make_field(2, 2);
  GroupCtx sp44 = make_ctx(Family::Sp, 2, f4);
  bool found = false;
  for (const Fq& lam : all_elements(f4)) {
    if (lam.is_zero() || found) continue;
    for (const Fq& z : all_elements(f4)) {
      if (found) break;
      if (!poly_is_irreducible(poly_from_fq(f4, {fq_one(f4), -z, fq_one(f4)}))) continue;
      Recipe r = sp4_levi_certificate(sp44, lam, z);
      if (r.applied) {
        CHECK(r.cert.kind == "typeC");
        CHECK(verify_certificate(r.cert, &why));
        found = true;
      }
    }
  }
  CHECK(found);
  // reducible quadratic is refused
  Recipe bad = sp4_levi_certificate(sp45, fq_of(f5, 2), fq_of(f5, 2));
  CHECK(!bad.applied);
  CHECK(bad.refusal.find("reducible") != std::string::npos);
}

TEST_CASE("composite-rank linear recipe at n = 4") {
  FieldPtr f2 = make_field(2, 1);
  GroupCtx psl42 = make_ctx(Family::SL, 4, f2, true);
  Recipe r2 = psl_composite_certificate(psl42, 2, 2);
  REQUIRE(r2.applied);
  CHECK(r2.cert.kind == "typeC");
  std::string why;
  CHECK(verify_certificate(r2.cert, &why));

  FieldPtr f3 = make_field(3, 1);
  GroupCtx psl43 = make_ctx(Family::SL, 4, f3, true);
  Recipe r3 = psl_composite_certificate(psl43, 2, 2);
  REQUIRE(r3.applied);
  CHECK(r3.cert.kind == "typeC");
  CHECK(verify_certificate(r3.cert, &why));
}

TEST_CASE("orthogonal mixed recipe in dimension 6") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx o63 = make_ctx(Family::SOeven, 3, f3, false, true);
  Recipe r3 = so_mixed_certificate(o63, companion(poly_from(f3, {1, 0, 1})),
                                   fq_one(f3), std::nullopt);
  REQUIRE(r3.applied);
  CHECK(r3.cert.kind == "typeD");
  std::string why;
  CHECK(verify_certificate(r3.cert, &why));

  // q = 5 with c^2 = -1: the orbit-size route gives type C
  FieldPtr f5 = make_field(5, 1);
  GroupCtx o65 = make_ctx(Family::SOeven, 3, f5, false, true);
  PolyQ irr5 = poly_from(f5, {2, 1, 1});  // X^2+X+2, discriminant -7 = 3 nonsquare
  REQUIRE(poly_is_irreducible(irr5));
  Recipe r5 = so_mixed_certificate(o65, companion(irr5), fq_of(f5, 2), std::nullopt);
  REQUIRE(r5.applied);
  CHECK(r5.cert.kind == "typeC");
  CHECK(verify_certificate(r5.cert, &why));
}

TEST_CASE("orthogonal mixed recipe in dimension 8") {
  FieldPtr f3 = make_field(3, 1);
  GroupCtx o83 = make_ctx(Family::SOeven, 4, f3, false, true);
  MatQ a1 = companion(poly_from(f3, {1, 0, 1}));
  MatQ a2 = companion(poly_from(f3, {2, 1, 1}));
  Recipe r = so_mixed_certificate(o83, a1, std::nullopt, a2);
  REQUIRE(r.applied);
  CHECK(r.cert.kind == "typeD");
  std::string why;
  CHECK(verify_certificate(r.cert, &why));
}

TEST_CASE("shared constructions") {
  FieldPtr f3 = make_field(3, 1);
  // conjugator_in_sl reaches the q-power of an irreducible element
  MatQ a = companion(poly_from(f3, {2, 1, 1}));
  auto g = conjugator_in_sl(a, mat_pow(a, 3));
  REQUIRE(g.has_value());
  CHECK(det(*g) == fq_one(f3));
  CHECK(mat_cmp(mat_mul(mat_mul(*g, a), inverse(*g)), mat_pow(a, 3)) == 0);
  CHECK(!conjugator_in_sl(a, mat_identity(f3, 2)).has_value());
  // block embedding is a form-preserving morphism
  GroupCtx sp43 = make_ctx(Family::Sp, 2, f3);
  CoxeterEmbedding emb = build_coxeter_embedding(sp43);
  MatQ e1 = embed_sp_blocks({emb.x, mat_pow(emb.x, 2)});
  MatQ e2 = embed_sp_blocks({mat_pow(emb.x, 2), emb.x});
  CHECK(form_membership(e1, FormKind::Symplectic));
  CHECK(mat_cmp(mat_mul(e1, e1), embed_sp_blocks({mat_pow(emb.x, 2), mat_pow(emb.x, 4)})) == 0);
  (void)e2;
  // root reflections land in the group for all families
  for (GroupCtx ctx : {make_ctx(Family::Sp, 3, f3), make_ctx(Family::SOodd, 3, f3),
                       make_ctx(Family::SOeven, 3, f3)}) {
    for (int root = 1; root <= ctx.rank(); ++root) {
      MatQ refl = root_reflection(ctx, root);
      CHECK(group_membership(refl, ctx));
    }
  }
}

TEST_CASE("split involutions certify at the matrix level but not centrally") {
  FieldPtr f3 = make_field(3, 1);
  MatQ x = mat_diag({fq_one(f3), fq_of(f3, -1), fq_of(f3, -1), fq_one(f3)});
  // the matrix-level class keeps its two fibers apart
  GroupCtx mat_ctx = make_ctx(Family::Sp, 2, f3);
  Recipe rm = split_certificate(mat_ctx, x);
  REQUIRE(rm.applied);
  CHECK(rm.cert.kind == "typeC");
  std::string why;
  CHECK(verify_certificate(rm.cert, &why));
  // the central quotient glues them
  GroupCtx proj_ctx = make_ctx(Family::Sp, 2, f3, true);
  CHECK(!split_certificate(proj_ctx, x).applied);
}

TEST_CASE("embedded-block recipe: non-regular path over an even field") {
  // the degree-4 block with eigenvalues of order 5 over F_2 has an
  // inverse-closed eigenvalue set, so the embedded element is not regular
  FieldPtr f2 = make_field(2, 1);
  PolyQ phi5 = poly_from(f2, {1, 1, 1, 1, 1});
  REQUIRE(poly_is_irreducible(phi5));
  MatQ a = companion(phi5);
  REQUIRE(!poly_is_squarefree(charpoly(embed_j(a, FormKind::OrthogonalEven))));
  GroupCtx ctx = make_ctx(Family::SOeven, 4, f2, false, true);  // Omega_8(2)
  Recipe r = irr_k_certificate(ctx, a);
  REQUIRE(r.applied);
  CHECK(r.cert.kind == "typeC");  // even characteristic: odd-order route
  std::string why;
  CHECK(verify_certificate(r.cert, &why));
  // and the symplectic variant of the same block
  GroupCtx sp = make_ctx(Family::Sp, 4, f2);
  Recipe rs = irr_k_certificate(sp, a);
  REQUIRE(rs.applied);
  CHECK(rs.cert.kind == "typeC");
  CHECK(verify_certificate(rs.cert, &why));
}

TEST_CASE("rank-three circle certificate over F_2") {
  FieldPtr f2 = make_field(2, 1);
  GroupCtx sp62 = make_ctx(Family::Sp, 3, f2);
  Recipe r = coxeter_certificate_auto(sp62);
  REQUIRE(r.applied);
  CHECK(r.cert.kind == "typeC");
  std::string why;
  CHECK(verify_certificate(r.cert, &why));
  // the torus meets the class in 2n = 6 points
  CHECK(r.cert.applicability.find("meets the class in 6 points") != std::string::npos);
}

TEST_CASE("split recipe: middle root and the last-root orthogonal branch") {
  FieldPtr f3 = make_field(3, 1);
  // rank 3, first difference at the second position
  GroupCtx sp63 = make_ctx(Family::Sp, 3, f3, true);
  MatQ x = mat_diag({fq_one(f3), fq_one(f3), fq_of(f3, 2),
                     fq_of(f3, 2), fq_one(f3), fq_one(f3)});
  Recipe r = split_certificate(sp63, x);
  REQUIRE(r.applied);
  std::string why;
  CHECK(verify_certificate(r.cert, &why));
  CHECK(r.cert.applicability.find("simple root 2 of 3") != std::string::npos);
  // all-equal torus entries in the even orthogonal group take the last root
  FieldPtr f5 = make_field(5, 1);
  GroupCtx o85 = make_ctx(Family::SOeven, 4, f5, false, true);
  std::vector<Fq> diag;
  for (int i = 0; i < 4; ++i) diag.push_back(fq_of(f5, 2));
  for (int i = 0; i < 4; ++i) diag.push_back(fq_of(f5, 3));
  MatQ y = mat_diag(diag);
  REQUIRE(group_membership(y, o85));
  Recipe ro = split_certificate(o85, y);
  REQUIRE(ro.applied);
  CHECK(verify_certificate(ro.cert, &why));
  CHECK(ro.cert.applicability.find("simple root 4 of 4") != std::string::npos);
}
