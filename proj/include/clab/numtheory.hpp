// q-numbers, gcd identities, primitive prime divisors, and the closed-form
// irreducibility test for X^n + eps.  Integer work runs in unsigned 128-bit
// with explicit range guards; factoring inputs are capped at 2^63.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clab/gfq.hpp"

namespace clab {

using u128 = unsigned __int128;

std::string u128_str(u128 v);

// q^n with an overflow guard
u128 ipow_checked(u128 q, int n);

u128 gcd_u128(u128 a, u128 b);

// (n)_q = 1 + q + ... + q^(n-1)
u128 q_number(int n, u128 q);

// the four gcd identities for n an odd prime:
//   (i)   (n, q-1) = 1  =>  (n, q^n - 1) = (n, (n)_q) = 1
//   (ii)  (n, q-1) = n  =>  (n^2, (n)_q) = (n, (n)_q) = n
//   (iii) (q-1, (n)_q) = (n, q-1)
//   (iv)  (n(q-1), (n)_q) = (n, q-1)
struct GcdIdentityRecord {
  int n = 0;
  u128 q = 0;
  u128 n_q = 0;             // (n)_q
  u128 g_n_qm1 = 0;         // (n, q-1)
  u128 g_n_nq = 0;          // (n, (n)_q)
  u128 g_nsq_nq = 0;        // (n^2, (n)_q)
  u128 g_qm1_nq = 0;        // (q-1, (n)_q)
  u128 g_nqm1_nq = 0;       // (n(q-1), (n)_q)
  bool all_hold = false;
};
GcdIdentityRecord gcd_identities(int n, u128 q);

// prime factorization by trial division with a Pollard-rho fallback;
// input must be below 2^63
std::vector<std::pair<unsigned long long, int>> factorize(unsigned long long n);
bool is_prime_u64(unsigned long long n);

// primes l with l | q^n - 1 and l not dividing q^e - 1 for any e < n
std::vector<unsigned long long> primitive_prime_divisors(unsigned long long q, int n);

// closed form: X^n + eps irreducible over F_q iff n = 2, eps = +1, q = 3 mod 4
bool xn_eps_irreducible(int n, int eps, unsigned long long q);

// true iff some primitive prime divisor of q^n - 1 divides the given order
bool ppd_element_check(unsigned long long order, unsigned long long q, int n);

}  // namespace clab
