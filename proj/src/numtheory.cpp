#include "clab/numtheory.hpp"

#include <algorithm>
#include <stdexcept>

namespace clab {

std::string u128_str(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(char('0' + int(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 ipow_checked(u128 q, int n) {
  u128 r = 1;
  for (int i = 0; i < n; ++i) {
    if (q != 0 && r > (~u128(0)) / q) throw bound_error("ipow: 128-bit overflow");
    r *= q;
  }
  return r;
}

u128 gcd_u128(u128 a, u128 b) {
  while (b) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 q_number(int n, u128 q) {
  if (n < 1 || q < 2) throw std::invalid_argument("q_number: need n >= 1, q >= 2");
  u128 r = 0, term = 1;
  for (int i = 0; i < n; ++i) {
    if (r > (~u128(0)) - term) throw bound_error("q_number: 128-bit overflow");
    r += term;
    if (i + 1 < n) {
      if (term > (~u128(0)) / q) throw bound_error("q_number: 128-bit overflow");
      term *= q;
    }
  }
  return r;
}

GcdIdentityRecord gcd_identities(int n, u128 q) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("gcd_identities: n must be an odd prime");
  for (int d = 3; d * d <= n; d += 2)
    if (n % d == 0) throw std::invalid_argument("gcd_identities: n must be an odd prime");
  GcdIdentityRecord rec;
  rec.n = n;
  rec.q = q;
  rec.n_q = q_number(n, q);
  u128 un = u128((unsigned long long)n);
  rec.g_n_qm1 = gcd_u128(un, q - 1);
  rec.g_n_nq = gcd_u128(un, rec.n_q);
  rec.g_nsq_nq = gcd_u128(un * un, rec.n_q);
  rec.g_qm1_nq = gcd_u128(q - 1, rec.n_q);
  rec.g_nqm1_nq = gcd_u128(un * (q - 1), rec.n_q);
  bool ok = true;
  if (rec.g_n_qm1 == 1) {
    u128 qn1 = ipow_checked(q, n) - 1;
    ok = ok && gcd_u128(un, qn1) == 1 && rec.g_n_nq == 1;
  }
  if (rec.g_n_qm1 == un) ok = ok && rec.g_nsq_nq == un && rec.g_n_nq == un;
  ok = ok && rec.g_qm1_nq == rec.g_n_qm1;
  ok = ok && rec.g_nqm1_nq == rec.g_n_qm1;
  rec.all_hold = ok;
  return rec;
}

static unsigned long long mulmod_u64(unsigned long long a, unsigned long long b,
                                     unsigned long long m) {
  return (unsigned long long)((u128(a) * b) % m);
}

static unsigned long long powmod_u64(unsigned long long b, unsigned long long e,
                                     unsigned long long m) {
  unsigned long long r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

bool is_prime_u64(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  unsigned long long d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic Miller-Rabin witness set for 64-bit inputs
  for (unsigned long long a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    unsigned long long x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

static unsigned long long pollard_rho(unsigned long long n) {
  if (n % 2 == 0) return 2;
  unsigned long long c = 1;
  while (true) {
    unsigned long long x = 2, y = 2, d = 1;
    auto f = [&](unsigned long long v) { return (mulmod_u64(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      unsigned long long diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = (unsigned long long)gcd_u128(diff, n);
    }
    if (d != n && d != 1) return d;
    ++c;
  }
}

std::vector<std::pair<unsigned long long, int>> factorize(unsigned long long n) {
  std::vector<std::pair<unsigned long long, int>> out;
  for (unsigned long long d = 2; d <= 100000ull && d * d <= n; ++d) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        ++e;
      }
      out.emplace_back(d, e);
    }
  }
  std::vector<unsigned long long> stack;
  if (n > 1) stack.push_back(n);
  std::vector<unsigned long long> primes;
  while (!stack.empty()) {
    unsigned long long v = stack.back();
    stack.pop_back();
    if (v == 1) continue;
    if (is_prime_u64(v)) {
      primes.push_back(v);
      continue;
    }
    unsigned long long d = pollard_rho(v);
    stack.push_back(d);
    stack.push_back(v / d);
  }
  std::sort(primes.begin(), primes.end());
  for (size_t i = 0; i < primes.size();) {
    size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    out.emplace_back(primes[i], int(j - i));
    i = j;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<unsigned long long> primitive_prime_divisors(unsigned long long q, int n) {
  if (q < 2 || n < 1) throw std::invalid_argument("primitive_prime_divisors: need q >= 2, n >= 1");
  u128 qn = ipow_checked(q, n);
  if (qn - 1 > u128(~0ull >> 1))
    throw bound_error("primitive_prime_divisors: q^n - 1 exceeds the factoring bound 2^63");
  unsigned long long m = (unsigned long long)(qn - 1);
  std::vector<unsigned long long> out;
  for (auto [p, e] : factorize(m)) {
    (void)e;
    bool primitive = true;
    for (int d = 1; d < n && primitive; ++d)
      if (powmod_u64(q % p, (unsigned long long)d, p) == 1 % p) primitive = false;
    if (primitive) out.push_back(p);
  }
  return out;
}

bool xn_eps_irreducible(int n, int eps, unsigned long long q) {
  if (n < 2) throw std::invalid_argument("xn_eps_irreducible: n >= 2");
  if (eps != 1 && eps != -1) throw std::invalid_argument("xn_eps_irreducible: eps must be +-1");
  return n == 2 && eps == 1 && q % 4 == 3;
}

bool ppd_element_check(unsigned long long order, unsigned long long q, int n) {
  if (order < 1) throw std::invalid_argument("ppd_element_check: order >= 1");
  for (unsigned long long l : primitive_prime_divisors(q, n))
    if (order % l == 0) return true;
  return false;
}

}  // namespace clab
