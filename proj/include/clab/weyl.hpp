// Hyperoctahedral and symmetric Weyl groups as signed permutations:
// absolute length, cuspidal classes, block-cycle representatives per
// partition, and exact torus orders from the reflection representation.

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace clab {

using MatZ = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Element of W(B_n)/W(C_n) embedded in S_2n: images[j-1] = sigma(j) with the
// centrality constraint sigma(2n+1-j) = 2n+1-sigma(j).
struct SignedPerm {
  int n = 0;
  std::vector<int> images;  // length 2n, 1-based values

  int apply(int j) const { return images[size_t(j - 1)]; }
  bool operator==(const SignedPerm& o) const { return n == o.n && images == o.images; }
};

SignedPerm signed_identity(int n);
bool signed_perm_valid(const SignedPerm& w);
SignedPerm signed_mul(const SignedPerm& a, const SignedPerm& b);  // (a*b)(j) = a(b(j))
SignedPerm signed_inv(const SignedPerm& a);

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive
  int sum() const;
  std::string str() const;
  bool operator==(const Partition& o) const { return parts == o.parts; }
};
std::vector<Partition> partitions_of(int n);

// the 2(k-h+1)-cycle (h h+1 ... k 2n+1-h 2n-h ... 2n+1-k), 1 <= h <= k <= n
SignedPerm c_block(int h, int k, int n);
// product of disjoint blocks along the partition; a Coxeter element for (n)
SignedPerm c_lambda(const Partition& lam, int n);

// n-dimensional reflection representation as an integer matrix
MatZ reflection_rep(const SignedPerm& w);

int absolute_length(const SignedPerm& w);          // rank(id - rho(w)) over Q
bool is_cuspidal(const SignedPerm& w);             // rank = n, i.e. no fixed vector

// |det(q*id - rho(w))| in the signed reflection representation
unsigned long long torus_order_signed(const SignedPerm& w, unsigned long long q);

// GL convention: |det(q*id - P_sigma)| in the n-dimensional permutation
// representation of sigma in S_n (1-based images)
unsigned long long torus_order_gl(const std::vector<int>& sigma, unsigned long long q);

std::vector<std::pair<Partition, SignedPerm>> cuspidal_representatives(int n);

// cuspidal in type A_(n-1) iff sigma is an n-cycle
bool type_a_cuspidal_check(const std::vector<int>& sigma);

// conjugacy invariant: multiset of (length, sign) pairs; sign -1 marks
// cycles closed under j <-> 2n+1-j
std::vector<std::pair<int, int>> signed_cycle_type(const SignedPerm& w);

// all 2^n n! elements, for exhaustive checks at small rank
std::vector<SignedPerm> all_signed_perms(int n);

// exact integer determinant (fraction-free elimination)
long long det_exact(MatZ m);
int rank_exact(MatZ m);

}  // namespace clab
