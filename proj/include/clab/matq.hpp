// Dense exact linear algebra over GF(q).
//
// MatQ is an Eigen dynamic matrix with Fq scalars; all operations are free
// functions.  Conventions pinned here and relied on elsewhere:
//   * companion(f) has 1s on the subdiagonal and -a_i in the last column,
//     so charpoly(companion(f)) = f.  Transposed conventions silently break
//     the certificate constructions; do not change this.
//   * antidiag_j(n) is the antidiagonal identity J_n; all bilinear forms
//     and block layouts come from the form_matrix() constructor.

#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "clab/gfq.hpp"

namespace Eigen {
template <>
struct NumTraits<clab::Fq> {
  using Real = clab::Fq;
  using NonInteger = clab::Fq;
  using Nested = clab::Fq;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 4,
    MulCost = 8
  };
  static inline clab::Fq epsilon() { return clab::Fq(0); }
  static inline clab::Fq dummy_precision() { return clab::Fq(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace clab {

using MatQ = Eigen::Matrix<Fq, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Fq, Eigen::Dynamic, 1>;

// Monic-or-zero dense polynomial over a field; coefficients ascending.
struct PolyQ {
  FieldPtr field = nullptr;
  std::vector<uint32_t> coeffs;  // trimmed; empty = zero polynomial

  int degree() const { return int(coeffs.size()) - 1; }
  bool is_zero() const { return coeffs.empty(); }
  bool is_monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  Fq coeff(int i) const {
    return Fq(field, i < int(coeffs.size()) ? coeffs[size_t(i)] : 0);
  }
  Fq eval(const Fq& x) const;
  std::string str() const;
  friend bool operator==(const PolyQ& a, const PolyQ& b) {
    return a.field == b.field && a.coeffs == b.coeffs;
  }
};

PolyQ poly_from(FieldPtr f, const std::vector<long>& coeffs);
PolyQ poly_from_fq(FieldPtr f, const std::vector<Fq>& coeffs);
PolyQ poly_mul(const PolyQ& a, const PolyQ& b);
PolyQ poly_mod(const PolyQ& a, const PolyQ& b);
PolyQ poly_gcd(const PolyQ& a, const PolyQ& b);
PolyQ poly_deriv(const PolyQ& a);
bool poly_is_irreducible(const PolyQ& f);
bool poly_is_squarefree(const PolyQ& f);
// multiset of monic irreducible factors with multiplicity, deterministic
// order (by degree, then canonical coefficient order)
std::vector<PolyQ> poly_factor(const PolyQ& f);
// roots in the coefficient field, canonical order, with multiplicity
std::vector<Fq> poly_roots(const PolyQ& f);
// lift f to an extension of its coefficient field
PolyQ poly_lift(const PolyQ& f, FieldPtr ext);

// ---- matrix constructors ----
MatQ mat_zero(FieldPtr f, int r, int c);
MatQ mat_identity(FieldPtr f, int n);
MatQ mat_scalar(FieldPtr f, int n, const Fq& c);
MatQ mat_from(FieldPtr f, int n, const std::vector<long>& rowmajor);
MatQ mat_diag(const std::vector<Fq>& d);
MatQ mat_diag_blocks(const MatQ& a, const MatQ& b);
// every entry resolved into f (promotes literals); throws on foreign fields
MatQ normalized(const MatQ& a, FieldPtr f);
FieldPtr mat_field(const MatQ& a);

// J_m: the antidiagonal identity
MatQ antidiag_j(FieldPtr f, int m);

enum class FormKind { Symplectic, OrthogonalOdd, OrthogonalEven };

// Gram matrix of the invariant bilinear form: (0 J; -J 0) for Sp_2n,
// J_{2n+1} for SO_2n+1, J_2n for SO_2n
MatQ form_matrix(FieldPtr f, FormKind kind, int nprime);

// ---- matrix operations ----
MatQ mat_mul(const MatQ& a, const MatQ& b);
Fq det(const MatQ& a);
std::optional<MatQ> inverse_opt(const MatQ& a);
MatQ inverse(const MatQ& a);  // throws on singular input
int rank(const MatQ& a);
MatQ mat_pow(const MatQ& a, long long e);
bool is_identity(const MatQ& a);
bool is_scalar_mat(const MatQ& a);

// solve a x = b; empty optional if inconsistent (least-norm not a concept here:
// returns one solution of the consistent system with free variables zeroed)
std::optional<VecQ> solve(const MatQ& a, const VecQ& b);
// basis of the null space of a
std::vector<VecQ> null_space(const MatQ& a);

// characteristic polynomial via Hessenberg reduction over the field
PolyQ charpoly(const MatQ& a);
// minimal polynomial via iterated Krylov spans
PolyQ minpoly(const MatQ& a);
bool is_semisimple(const MatQ& a);
// regular (cyclic): minpoly == charpoly
bool is_regular(const MatQ& a);

// companion matrix in the pinned convention
MatQ companion(const PolyQ& f);

// phi(A) = J ᵗA⁻¹ J
MatQ phi(const MatQ& a);

// exact membership test for the classical-group form conditions, including
// det = 1 and the p = 2 diagonal conditions for SO_2n
bool form_membership(const MatQ& a, FormKind kind);

// a root of the irreducible charpoly of A in GF(q^n) together with its
// Frobenius orbit {zeta^(q^h)}; the root is the canonically smallest one
struct EigOrbit {
  FieldPtr ext;
  Fq root;
  std::vector<Fq> orbit;
};
EigOrbit eigenvalue_orbit(const MatQ& a);

// multiplicative order of an invertible matrix
long long mat_order(const MatQ& a);

std::string mat_str(const MatQ& a);

// canonical row-major comparison in the documented element order
int mat_cmp(const MatQ& a, const MatQ& b);
bool mat_less(const MatQ& a, const MatQ& b);

// packed byte string for set membership
std::string mat_pack(const MatQ& a);

}  // namespace clab
