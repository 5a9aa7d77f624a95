// Constructive certificate generators.  Each recipe is a pure function from
// (context, seed data) to a certificate or a refusal that names the failed
// hypothesis.  Every emitted certificate replays through the detect layer.

#pragma once

#include "clab/detect.hpp"
#include "clab/weyl.hpp"

namespace clab {

struct Recipe {
  std::string name;
  bool applied = false;
  std::string refusal;        // set when not applied
  Certificate cert;           // valid when applied
};

// ---- shared constructions ----

// g in SL_n(q) with g x g^-1 = y, for regular x (centralizer a torus);
// nullopt when x and y are not conjugate
std::optional<MatQ> conjugator_in_sl(const MatQ& x, const MatQ& y);

// block embedding Sp_2d1 x ... x Sp_2dt -> Sp_2n along a partition, nesting
// the factors from the outside in so the J-form is preserved
MatQ embed_sp_blocks(const std::vector<MatQ>& blocks);

// simple-root unipotents x_alpha(a) and the reflection representative
// built from them; root index 1..rank, last root per family
MatQ root_unipotent(const GroupCtx& ctx, int root, const Fq& a, bool negative = false);
MatQ root_reflection(const GroupCtx& ctx, int root);

// ---- the recipes ----

// two-fiber root-subgroup subrack for a split torus element (families
// Sp / SO-odd / SO-even); refuses the split-involution special case
Recipe split_certificate(const GroupCtx& ctx, const MatQ& x);

// class of j(A) for irreducible A: regular path, non-regular path, and the
// rotation exception in rank-2 symplectic groups
Recipe irr_k_certificate(const GroupCtx& ctx, const MatQ& a);

// embedded rank-one group over GF(q^n) catching a Coxeter-torus element of
// Sp_2n(q); subgroup-criterion certificate
struct CoxeterEmbedding {
  std::vector<MatQ> hgens;   // images of the rank-one transvections
  MatQ x;                    // embedded torus generator
  MatQ frob;                 // conjugator realizing t -> t^q
  FieldPtr ext;              // GF(q^n)
};
CoxeterEmbedding build_coxeter_embedding(const GroupCtx& sp_ctx);
Recipe coxeter_certificate(const GroupCtx& ctx, const MatQ& x, const CoxeterEmbedding& emb);
Recipe coxeter_certificate_auto(const GroupCtx& ctx);  // picks x from the torus

// product-of-blocks certificate for cuspidal non-Coxeter data along a
// partition with at least two parts
Recipe cuspidal_product_certificate(const GroupCtx& sp_ctx, const Partition& lam,
                                    const std::vector<MatQ>& blocks);

// rank-2 symplectic Levi class diag(lambda, y, lambda^-1) with y the
// displayed irreducible 2x2 of trace z
Recipe sp4_levi_certificate(const GroupCtx& ctx, const Fq& lambda, const Fq& z);

// composite-rank irreducible classes in the projective special linear
// group: n = c*d with c prime, via the centralizer subgroup over GF(q^d)
Recipe psl_composite_certificate(const GroupCtx& psl_ctx, int c, int d);

// orthogonal mixed classes: (A1 irreducible 2x2, scalar c) in SO_6, or
// (A1, A2 both irreducible 2x2) in SO_8
Recipe so_mixed_certificate(const GroupCtx& so_ctx, const MatQ& a1,
                            const std::optional<Fq>& c_scalar, const std::optional<MatQ>& a2);

}  // namespace clab
