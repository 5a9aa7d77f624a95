// Exact arithmetic for GF(p^m) and its extension towers.
//
// A Field is immutable after construction and owned by a process-wide
// registry, so elements may hold plain pointers.  Elements are packed
// codes: the code of sum c_i X^i (coefficients over the base field) is
// sum code(c_i) * q_base^i, which makes the flat little-endian base-p
// digit string of the code equal to the coefficient sequence over F_p
// in ascending powers.  The canonical total order on elements is the
// lexicographic order on that digit string, constant term first.

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace clab {

class bound_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Field;
using FieldPtr = const Field*;

// GF(p^m) as F_p[X]/(modulus), or GF(q^d) as base[Y]/(modulus) when
// base != nullptr.  q = p^(total degree) <= 2^20.
class Field {
 public:
  long p() const { return p_; }
  int degree() const { return deg_; }           // over F_p
  int ext_degree() const { return ext_deg_; }   // over base()
  uint64_t q() const { return q_; }
  FieldPtr base() const { return base_; }       // nullptr for prime-based fields
  uint64_t base_q() const { return base_ ? base_->q() : uint64_t(p_); }

  // modulus over the base field (codes), ascending powers, length ext_degree()+1, monic
  const std::vector<uint32_t>& modulus() const { return modulus_; }
  // modulus with integer coefficients over F_p; only for prime-based fields
  std::vector<long> modulus_fp() const;

  uint32_t generator_code() const { return gen_; }

  // raw code arithmetic
  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const;
  uint32_t pow(uint32_t a, long long e) const;
  long long log(uint32_t a) const;  // discrete log base generator; a != 0

  // i-th coefficient of the code over the base field, 0 <= i < ext_degree()
  uint32_t coeff(uint32_t code, int i) const;
  uint32_t from_coeffs(const std::vector<uint32_t>& c) const;

  // lexicographic comparison of flat F_p coefficient strings, constant term first
  static int lex_cmp(uint32_t a, uint32_t b, long p);
  int lex_cmp(uint32_t a, uint32_t b) const { return lex_cmp(a, b, p_); }

  std::string show(uint32_t code) const;  // human-readable polynomial form

  ~Field() = default;
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  Field() = default;
  friend FieldPtr make_field(long p, int m);
  friend FieldPtr extension_field(FieldPtr base, int d);
  friend struct FieldRegistry;

  void init_tables();

  long p_ = 0;
  int deg_ = 0;
  int ext_deg_ = 0;
  FieldPtr base_ = nullptr;
  uint64_t q_ = 0;
  std::vector<uint32_t> modulus_;
  uint32_t gen_ = 0;
  std::vector<uint32_t> exp_;   // exp_[k] = gen^k, k in [0, q-1)
  std::vector<int64_t> log_;    // log_[code], log_[0] = -1
  std::vector<uint32_t> addt_;  // small fields only
  bool has_addt_ = false;
};

// GF(p^m) with the lexicographically smallest monic irreducible modulus
// (coefficient sequence compared from the constant term up).  Results are
// interned: repeated calls return the same pointer.
FieldPtr make_field(long p, int m);

// GF(q^d) over an existing field, modulus the smallest monic irreducible
// of degree d over the base in the canonical element order.
FieldPtr extension_field(FieldPtr base, int d);

// An element of a Field.  Default-constructed or integer-literal values
// carry no field; they are promoted when combined with a fielded operand
// (this is what lets Eigen write Scalar(0) internally).
class Fq {
 public:
  Fq() : f_(nullptr), lit_(0) {}
  Fq(long v) : f_(nullptr), lit_(v) {}      // NOLINT: implicit literal
  Fq(int v) : f_(nullptr), lit_(v) {}       // NOLINT
  Fq(FieldPtr f, uint32_t code) : f_(f), code_(code), lit_(0) {}

  FieldPtr field() const { return f_; }
  bool is_literal() const { return f_ == nullptr; }
  uint32_t code() const { return code_; }
  long literal() const { return lit_; }

  // resolve a literal into a concrete field
  Fq in(FieldPtr f) const;

  bool is_zero() const { return f_ ? code_ == 0 : lit_ == 0; }

  std::vector<long> coeffs_fp() const;  // flat coefficients over F_p, ascending

  friend Fq operator+(const Fq& a, const Fq& b);
  friend Fq operator-(const Fq& a, const Fq& b);
  friend Fq operator-(const Fq& a);
  friend Fq operator*(const Fq& a, const Fq& b);
  friend Fq operator/(const Fq& a, const Fq& b);
  Fq& operator+=(const Fq& b) { return *this = *this + b; }
  Fq& operator-=(const Fq& b) { return *this = *this - b; }
  Fq& operator*=(const Fq& b) { return *this = *this * b; }
  Fq& operator/=(const Fq& b) { return *this = *this / b; }
  friend bool operator==(const Fq& a, const Fq& b);
  friend bool operator!=(const Fq& a, const Fq& b) { return !(a == b); }

  std::string str() const;

 private:
  FieldPtr f_;
  uint32_t code_ = 0;
  long lit_ = 0;
};

// canonical total order (documented lex-on-coefficients order)
bool canonical_less(const Fq& a, const Fq& b);

Fq fq_zero(FieldPtr f);
Fq fq_one(FieldPtr f);
Fq fq_of(FieldPtr f, long v);  // image of an integer
Fq fq_gen(FieldPtr f);         // the class of X (resp. Y)

Fq inv(const Fq& a);
Fq pow(const Fq& a, long long e);

// a^(s^k) where s is p or an intermediate subfield order p^j
Fq frobenius(const Fq& a, int k = 1, uint64_t base_order = 0);

// minimal t >= 1 with a^t = 1; a != 0
long long element_order(const Fq& a);

// all x in f with x^n = 1, sorted in canonical order; |result| = gcd(n, q-1)
std::vector<Fq> roots_of_unity(long long n, FieldPtr f);

// every element of the field, in canonical order
std::vector<Fq> all_elements(FieldPtr f);

// ---- internal polynomial helpers over an arbitrary Field ----
// Dense coefficient vectors of codes, ascending powers, no trailing zeros
// (zero polynomial = empty vector).  Shared by the modulus search here and
// by the public polynomial layer in matq.
namespace polyd {
using Poly = std::vector<uint32_t>;
Poly trim(Poly f);
Poly add(FieldPtr F, const Poly& f, const Poly& g);
Poly sub(FieldPtr F, const Poly& f, const Poly& g);
Poly mul(FieldPtr F, const Poly& f, const Poly& g);
Poly mod(FieldPtr F, Poly f, const Poly& g);
Poly divq(FieldPtr F, Poly f, const Poly& g);
Poly gcd_monic(FieldPtr F, Poly f, Poly g);
Poly make_monic(FieldPtr F, Poly f);
Poly powmod(FieldPtr F, Poly b, unsigned long long e, const Poly& m);
Poly xq_pow_mod(FieldPtr F, uint64_t q, int i, const Poly& m);  // X^(q^i) mod m
bool is_irreducible(FieldPtr F, const Poly& f);
Poly deriv(FieldPtr F, const Poly& f);
}  // namespace polyd

}  // namespace clab
