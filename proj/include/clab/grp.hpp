// Classical group contexts over GF(q): canonicalization modulo the center,
// conjugacy-class enumeration by BFS over fixed generating sets, centralizers
// by filtering, the block embedding j, restriction of scalars, twist data for
// semisimple elements, and Omega-membership via spinor norm (q odd) or the
// Dickson invariant (q even).

#pragma once

#include <optional>
#include <unordered_map>

#include "clab/matq.hpp"
#include "clab/numtheory.hpp"

namespace clab {

enum class Family { GL, SL, Sp, SOodd, SOeven };

std::string family_name(Family f);

struct GroupCtx {
  Family family = Family::SL;
  int nprime = 2;        // matrix size
  FieldPtr field = nullptr;
  bool projective = false;
  bool derived_only = false;  // SO only: act by the commutator subgroup Omega

  int rank() const;  // n for Sp_2n, SO_2n+1, SO_2n; nprime for GL/SL
  std::optional<FormKind> form() const;
  std::string name() const;
  bool operator==(const GroupCtx& o) const {
    return family == o.family && nprime == o.nprime && field == o.field &&
           projective == o.projective && derived_only == o.derived_only;
  }
};

GroupCtx make_ctx(Family fam, int n_param, FieldPtr f, bool projective = false,
                  bool derived_only = false);
// n_param follows the CLI convention: matrix size for GL/SL, half size for
// Sp, the Witt index n for SO_2n+1 / SO_2n

u128 group_order(const GroupCtx& ctx);

// scalars z with zI in the (matrix-level) group
std::vector<Fq> center_scalars(const GroupCtx& ctx);

// matrix-level membership, ignoring the projective flag
bool group_membership(const MatQ& x, const GroupCtx& ctx);

// canonical coset representative: minimal entry sequence among central
// multiples when projective, the matrix itself otherwise
MatQ canonicalize(const MatQ& x, const GroupCtx& ctx);

struct PElem {
  GroupCtx ctx;
  MatQ rep;  // canonical
};
PElem make_pelem(const MatQ& x, const GroupCtx& ctx);  // checks membership
bool pelem_eq(const PElem& a, const PElem& b);

// fixed documented generating sets: elementary transvections for SL (plus a
// torus generator for GL), symplectic transvections for Sp, Eichler
// transformations for Omega
std::vector<MatQ> generators(const GroupCtx& ctx);

size_t default_enum_bound();  // 5e6, or COLLAPSE_LAB_MEM_LIMIT when set

struct GroupSet {
  GroupCtx ctx;
  std::vector<MatQ> elems;  // BFS order from the identity
  std::unordered_map<std::string, int> index;
  int find(const MatQ& m) const;
};
GroupSet enumerate_group(const GroupCtx& ctx, size_t bound = 0);

struct ConjClass {
  GroupCtx ctx;
  MatQ rep;                                   // canonical representative
  std::vector<MatQ> elems;                    // BFS order; elems[0] = rep
  std::vector<std::pair<int, int>> parent;    // (element, generator) indices
  std::vector<MatQ> gens;                     // generators used
  std::unordered_map<std::string, int> index;
  bool complete = true;

  size_t size() const { return elems.size(); }
  int find(const MatQ& m) const;  // expects a canonical form; -1 if absent
};

// BFS orbit of x under conjugation by generators(ctx); throws bound_error
// past the bound (default_enum_bound if 0)
ConjClass conj_class(const GroupCtx& ctx, const MatQ& x, size_t bound = 0);

// g in the acting group with canonicalize(g * rep * g^-1) = elems[idx]
MatQ conjugator_to(const ConjClass& cls, int idx);

// class decomposition of a fully enumerable group
std::vector<ConjClass> all_classes(const GroupCtx& ctx, size_t bound = 0);

// exact centralizer of x inside an enumerated ambient set
std::vector<MatQ> centralizer(const MatQ& x, const GroupSet& ambient);

// diag(A, phi(A)) or diag(A, 1, phi(A))
MatQ embed_j(const MatQ& a, FormKind target);

// matrix of multiplication by alpha on ext over its base, power basis,
// columns are images of the basis
MatQ regular_representation(const Fq& alpha);

// blockwise regular representation GL_c(q^d) -> GL_cd(q)
MatQ restrict_scalars(const MatQ& b);

// unit group of F_q[C], C the companion of the smallest irreducible of
// degree n: a cyclic maximal torus of GL_n(q) of order q^n - 1, listed in a
// deterministic order together with a generator
struct CoxeterTorusGL {
  MatQ gen;                  // generates the cyclic group
  std::vector<MatQ> elems;   // all q^n - 1 invertible elements
};
CoxeterTorusGL coxeter_torus_gl(FieldPtr f, int n);

// minimal j >= 1 with x^(q^j) = lambda x for a nontrivial n-th root of
// unity lambda; (n, 1) when only the trivial twist exists
struct TwistData {
  int j = 0;
  Fq lambda;
};
TwistData twist_data(const MatQ& x, const GroupCtx& ctx);

// x^e (or a central multiple when allow_scalar) lies in the enumerated class
bool power_in_class(const MatQ& x, long long e, const ConjClass& cls, bool allow_scalar = false);

// spinor norm square class for q odd: true = nontrivial.  g must preserve
// the J-form.  Computed from a reflection factorization.
bool spinor_norm_nontrivial(const MatQ& g);
// Dickson invariant for q even: rank(g - 1) mod 2
bool dickson_nontrivial(const MatQ& g);
// membership in Omega = [SO, SO]
bool in_omega(const MatQ& g, const GroupCtx& so_ctx);

// change of basis P with tP * gram * P equal to the standard symplectic
// form matrix (0 J; -J 0); gram must be invertible alternating
MatQ symplectic_basis_change(const MatQ& gram);

}  // namespace clab
