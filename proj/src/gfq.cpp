#include "clab/gfq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace clab {

static constexpr uint64_t kFieldBound = 1u << 20;
static constexpr uint64_t kAddTableLimit = 512;

static bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

static std::vector<long long> prime_factors_ll(long long n) {
  std::vector<long long> ps;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      ps.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

// ---------- raw code arithmetic ----------

uint32_t Field::coeff(uint32_t code, int i) const {
  uint64_t bq = base_q();
  for (int j = 0; j < i; ++j) code = uint32_t(code / bq);
  return uint32_t(code % bq);
}

uint32_t Field::from_coeffs(const std::vector<uint32_t>& c) const {
  uint64_t bq = base_q();
  uint64_t v = 0;
  for (int i = int(c.size()) - 1; i >= 0; --i) v = v * bq + c[size_t(i)];
  return uint32_t(v);
}

uint32_t Field::add(uint32_t a, uint32_t b) const {
  if (has_addt_) return addt_[size_t(a) * q_ + b];
  if (!base_) {
    // digitwise mod p
    uint64_t r = 0, mult = 1;
    for (int i = 0; i < deg_; ++i) {
      long da = long(a % uint64_t(p_)), db = long(b % uint64_t(p_));
      r += uint64_t((da + db) % p_) * mult;
      mult *= uint64_t(p_);
      a = uint32_t(a / uint64_t(p_));
      b = uint32_t(b / uint64_t(p_));
    }
    return uint32_t(r);
  }
  uint64_t bq = base_->q();
  uint64_t r = 0, mult = 1;
  for (int i = 0; i < ext_deg_; ++i) {
    r += uint64_t(base_->add(uint32_t(a % bq), uint32_t(b % bq))) * mult;
    mult *= bq;
    a = uint32_t(a / bq);
    b = uint32_t(b / bq);
  }
  return uint32_t(r);
}

uint32_t Field::neg(uint32_t a) const {
  if (p_ == 2) return a;
  if (!base_) {
    uint64_t r = 0, mult = 1;
    for (int i = 0; i < deg_; ++i) {
      long d = long(a % uint64_t(p_));
      r += uint64_t((p_ - d) % p_) * mult;
      mult *= uint64_t(p_);
      a = uint32_t(a / uint64_t(p_));
    }
    return uint32_t(r);
  }
  uint64_t bq = base_->q();
  uint64_t r = 0, mult = 1;
  for (int i = 0; i < ext_deg_; ++i) {
    r += uint64_t(base_->neg(uint32_t(a % bq))) * mult;
    mult *= bq;
    a = uint32_t(a / bq);
  }
  return uint32_t(r);
}

// schoolbook multiply-and-reduce, used while tables are being built
static uint32_t mul_raw(const Field* F, uint32_t a, uint32_t b) {
  if (a == 0 || b == 0) return 0;
  int d = F->ext_degree();
  if (d == 1) {
    if (!F->base()) {
      return uint32_t((uint64_t(a) * b) % uint64_t(F->p()));
    }
    return F->base()->mul(a, b);
  }
  // convolution into 2d-1 coefficients over the base
  std::vector<uint32_t> prod(size_t(2 * d - 1), 0);
  std::vector<uint32_t> ca(size_t(d), 0), cb(size_t(d), 0);
  for (int i = 0; i < d; ++i) {
    ca[size_t(i)] = F->coeff(a, i);
    cb[size_t(i)] = F->coeff(b, i);
  }
  auto bmul = [&](uint32_t x, uint32_t y) -> uint32_t {
    if (!F->base()) return uint32_t((uint64_t(x) * y) % uint64_t(F->p()));
    return F->base()->mul(x, y);
  };
  auto badd = [&](uint32_t x, uint32_t y) -> uint32_t {
    if (!F->base()) return uint32_t((uint64_t(x) + y) % uint64_t(F->p()));
    return F->base()->add(x, y);
  };
  for (int i = 0; i < d; ++i) {
    if (ca[size_t(i)] == 0) continue;
    for (int j = 0; j < d; ++j)
      prod[size_t(i + j)] = badd(prod[size_t(i + j)], bmul(ca[size_t(i)], cb[size_t(j)]));
  }
  // fold Y^(d+k) via precomputed power basis: here reduce degree by degree
  // using the monic modulus
  const auto& md = F->modulus();
  auto bneg = [&](uint32_t x) -> uint32_t {
    if (!F->base()) return uint32_t((uint64_t(F->p()) - x) % uint64_t(F->p()));
    return F->base()->neg(x);
  };
  for (int k = 2 * d - 2; k >= d; --k) {
    uint32_t top = prod[size_t(k)];
    if (top == 0) continue;
    prod[size_t(k)] = 0;
    for (int j = 0; j < d; ++j) {
      // Y^k = Y^(k-d) * (-(m_0 + ... + m_{d-1} Y^{d-1}))
      uint32_t t = bmul(top, bneg(md[size_t(j)]));
      prod[size_t(k - d + j)] = badd(prod[size_t(k - d + j)], t);
    }
  }
  prod.resize(size_t(d));
  return F->from_coeffs(prod);
}

uint32_t Field::mul(uint32_t a, uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) {
    uint64_t e = uint64_t(log_[a]) + uint64_t(log_[b]);
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[size_t(e)];
  }
  return mul_raw(this, a, b);
}

uint32_t Field::inv(uint32_t a) const {
  if (a == 0) throw std::invalid_argument("gfq: inversion of zero");
  uint64_t e = (q_ - 1) - uint64_t(log_[a]);
  if (e == q_ - 1) e = 0;
  return exp_[size_t(e)];
}

uint32_t Field::pow(uint32_t a, long long e) const {
  if (a == 0) {
    if (e < 0) throw std::invalid_argument("gfq: inversion of zero");
    return e == 0 ? exp_[0] : 0;
  }
  long long m = (long long)(q_ - 1);
  long long r = e % m;
  if (r < 0) r += m;
  uint64_t le = (uint64_t(log_[a]) * uint64_t(r)) % uint64_t(m);
  return exp_[size_t(le)];
}

long long Field::log(uint32_t a) const {
  if (a == 0) throw std::invalid_argument("gfq: log of zero");
  return log_[a];
}

int Field::lex_cmp(uint32_t a, uint32_t b, long p) {
  while (a != 0 || b != 0) {
    long da = long(a % uint64_t(p)), db = long(b % uint64_t(p));
    if (da != db) return da < db ? -1 : 1;
    a = uint32_t(a / uint64_t(p));
    b = uint32_t(b / uint64_t(p));
  }
  return 0;
}

std::vector<long> Field::modulus_fp() const {
  if (base_) throw std::invalid_argument("gfq: modulus_fp on a tower field");
  std::vector<long> out;
  out.reserve(modulus_.size());
  for (uint32_t c : modulus_) out.push_back(long(c));
  return out;
}

std::string Field::show(uint32_t code) const {
  std::ostringstream os;
  os << "[";
  uint64_t bq = base_q();
  uint32_t v = code;
  for (int i = 0; i < ext_deg_; ++i) {
    if (i) os << ",";
    if (base_)
      os << base_->show(uint32_t(v % bq));
    else
      os << (v % bq);
    v = uint32_t(v / bq);
  }
  os << "]";
  return os.str();
}

void Field::init_tables() {
  // exp/log tables require a generator; find it by factoring q-1 and
  // testing candidates in code order
  std::vector<long long> fac = prime_factors_ll((long long)(q_ - 1));
  uint32_t g = 0;
  for (uint64_t cand = 1; cand < q_; ++cand) {
    bool ok = true;
    for (long long f : fac) {
      unsigned long long e = (q_ - 1) / (unsigned long long)f;
      uint32_t r = 1;
      uint32_t b = uint32_t(cand);
      unsigned long long ee = e;
      while (ee) {
        if (ee & 1) r = mul_raw(this, r, b);
        b = mul_raw(this, b, b);
        ee >>= 1;
      }
      if (r == 1 && e != 0) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = uint32_t(cand);
      break;
    }
  }
  if (g == 0) throw std::logic_error("gfq: no generator found");
  gen_ = g;
  exp_.resize(size_t(q_ - 1));
  log_.assign(size_t(q_), -1);
  uint32_t cur = 1;
  for (uint64_t k = 0; k < q_ - 1; ++k) {
    exp_[size_t(k)] = cur;
    log_[cur] = int64_t(k);
    cur = mul_raw(this, cur, g);
  }
  if (cur != 1) throw std::logic_error("gfq: generator order mismatch");
  if (q_ <= kAddTableLimit) {
    addt_.resize(size_t(q_) * q_);
    for (uint64_t a = 0; a < q_; ++a)
      for (uint64_t b = 0; b < q_; ++b) addt_[size_t(a) * q_ + b] = add(uint32_t(a), uint32_t(b));
    has_addt_ = true;
  }
}

// ---------- polynomial helpers ----------

namespace polyd {

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly add(FieldPtr F, const Poly& f, const Poly& g) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint32_t a = i < f.size() ? f[i] : 0;
    uint32_t b = i < g.size() ? g[i] : 0;
    r[i] = F->add(a, b);
  }
  return trim(std::move(r));
}

Poly sub(FieldPtr F, const Poly& f, const Poly& g) {
  Poly r(std::max(f.size(), g.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint32_t a = i < f.size() ? f[i] : 0;
    uint32_t b = i < g.size() ? g[i] : 0;
    r[i] = F->sub(a, b);
  }
  return trim(std::move(r));
}

Poly mul(FieldPtr F, const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) return {};
  Poly r(f.size() + g.size() - 1, 0);
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    for (size_t j = 0; j < g.size(); ++j)
      r[i + j] = F->add(r[i + j], F->mul(f[i], g[j]));
  }
  return trim(std::move(r));
}

Poly mod(FieldPtr F, Poly f, const Poly& g) {
  if (g.empty()) throw std::invalid_argument("polyd: mod by zero");
  uint32_t lead_inv = F->inv(g.back());
  while (f.size() >= g.size()) {
    uint32_t c = F->mul(f.back(), lead_inv);
    size_t off = f.size() - g.size();
    if (c != 0)
      for (size_t i = 0; i < g.size(); ++i) f[off + i] = F->sub(f[off + i], F->mul(c, g[i]));
    f.pop_back();
    f = trim(std::move(f));
    if (f.size() < g.size()) break;
  }
  return trim(std::move(f));
}

Poly divq(FieldPtr F, Poly f, const Poly& g) {
  if (g.empty()) throw std::invalid_argument("polyd: division by zero");
  if (f.size() < g.size()) return {};
  Poly q(f.size() - g.size() + 1, 0);
  uint32_t lead_inv = F->inv(g.back());
  while (f.size() >= g.size() && !f.empty()) {
    uint32_t c = F->mul(f.back(), lead_inv);
    size_t off = f.size() - g.size();
    q[off] = c;
    for (size_t i = 0; i < g.size(); ++i) f[off + i] = F->sub(f[off + i], F->mul(c, g[i]));
    f = trim(std::move(f));
  }
  return trim(std::move(q));
}

Poly make_monic(FieldPtr F, Poly f) {
  if (f.empty()) return f;
  uint32_t li = F->inv(f.back());
  for (auto& c : f) c = F->mul(c, li);
  return f;
}

Poly gcd_monic(FieldPtr F, Poly f, Poly g) {
  f = trim(std::move(f));
  g = trim(std::move(g));
  while (!g.empty()) {
    Poly r = mod(F, f, g);
    f = std::move(g);
    g = std::move(r);
  }
  return make_monic(F, std::move(f));
}

Poly powmod(FieldPtr F, Poly b, unsigned long long e, const Poly& m) {
  Poly r = {1};
  b = mod(F, std::move(b), m);
  while (e) {
    if (e & 1) r = mod(F, mul(F, r, b), m);
    b = mod(F, mul(F, b, b), m);
    e >>= 1;
  }
  return r;
}

Poly xq_pow_mod(FieldPtr F, uint64_t q, int i, const Poly& m) {
  Poly r = {0, 1};  // X
  r = mod(F, std::move(r), m);
  for (int k = 0; k < i; ++k) r = powmod(F, r, q, m);
  return r;
}

bool is_irreducible(FieldPtr F, const Poly& f) {
  if (f.size() < 2) return false;  // constants are not irreducible
  int d = int(f.size()) - 1;
  if (d == 1) return true;
  uint64_t q = F->q();
  // f irreducible iff X^(q^d) = X mod f and gcd(X^(q^(d/r)) - X, f) = 1
  // for every prime r | d
  Poly x = {0, 1};
  Poly xq = xq_pow_mod(F, q, d, f);
  if (trim(sub(F, xq, x)) != Poly{}) return false;
  for (long long r : prime_factors_ll(d)) {
    Poly t = xq_pow_mod(F, q, int(d / r), f);
    Poly g = gcd_monic(F, sub(F, t, x), f);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly deriv(FieldPtr F, const Poly& f) {
  if (f.size() <= 1) return {};
  Poly r(f.size() - 1, 0);
  for (size_t i = 1; i < f.size(); ++i) {
    uint32_t ci = fq_of(F, long(i % uint64_t(F->p()))).code();
    r[i - 1] = F->mul(f[i], ci);
  }
  return trim(std::move(r));
}

}  // namespace polyd

// ---------- field registry ----------

struct FieldRegistry {
  std::mutex mu;
  std::map<std::pair<long, int>, std::unique_ptr<Field>> prime_based;
  std::map<std::pair<const Field*, int>, std::unique_ptr<Field>> towers;

  static FieldRegistry& instance() {
    static FieldRegistry r;
    return r;
  }
};

FieldPtr make_field(long p, int m) {
  if (!is_prime_long(p)) throw std::invalid_argument("make_field: p must be prime");
  if (m < 1) throw std::invalid_argument("make_field: m must be >= 1");
  uint64_t q = 1;
  for (int i = 0; i < m; ++i) {
    q *= uint64_t(p);
    if (q > kFieldBound) throw bound_error("make_field: p^m exceeds 2^20");
  }
  auto& reg = FieldRegistry::instance();
  std::lock_guard<std::mutex> lk(reg.mu);
  auto key = std::make_pair(p, m);
  auto it = reg.prime_based.find(key);
  if (it != reg.prime_based.end()) return it->second.get();

  auto F = std::unique_ptr<Field>(new Field());
  F->p_ = p;
  F->deg_ = m;
  F->ext_deg_ = m;
  F->base_ = nullptr;
  F->q_ = q;
  if (m == 1) {
    F->modulus_ = {0, 1};  // X
    F->init_tables();
  } else {
    // need F_p available for the irreducibility search; construct it first
    // (recursion happens outside the lock)
    // NOTE: make_field(p,1) would deadlock on the mutex; build inline.
    auto key1 = std::make_pair(p, 1);
    if (reg.prime_based.find(key1) == reg.prime_based.end()) {
      auto Fp = std::unique_ptr<Field>(new Field());
      Fp->p_ = p;
      Fp->deg_ = 1;
      Fp->ext_deg_ = 1;
      Fp->base_ = nullptr;
      Fp->q_ = uint64_t(p);
      Fp->modulus_ = {0, 1};
      Fp->init_tables();
      reg.prime_based.emplace(key1, std::move(Fp));
    }
    FieldPtr Fp = reg.prime_based[key1].get();
    // enumerate monic polys over F_p in the documented order
    std::vector<size_t> idx(size_t(m), 0);
    polyd::Poly best;
    while (true) {
      polyd::Poly f(size_t(m) + 1, 0);
      for (int i = 0; i < m; ++i) f[size_t(i)] = uint32_t(idx[size_t(i)]);
      f[size_t(m)] = 1;
      if (polyd::is_irreducible(Fp, f)) {
        best = f;
        break;
      }
      int i = m - 1;
      for (;;) {
        if (i < 0) throw std::logic_error("gfq: no irreducible found");
        if (++idx[size_t(i)] < size_t(p)) break;
        idx[size_t(i)] = 0;
        --i;
      }
    }
    F->modulus_ = best;
    F->init_tables();
  }
  const Field* out = F.get();
  reg.prime_based.emplace(key, std::move(F));
  return out;
}

FieldPtr extension_field(FieldPtr base, int d) {
  if (!base) throw std::invalid_argument("extension_field: null base");
  if (d < 1) throw std::invalid_argument("extension_field: degree must be >= 1");
  if (d == 1) return base;
  uint64_t q = 1;
  for (int i = 0; i < d; ++i) {
    q *= base->q();
    if (q > kFieldBound) throw bound_error("extension_field: q^d exceeds 2^20");
  }
  auto& reg = FieldRegistry::instance();
  std::lock_guard<std::mutex> lk(reg.mu);
  auto key = std::make_pair(base, d);
  auto it = reg.towers.find(key);
  if (it != reg.towers.end()) return it->second.get();

  // search candidates ordered canonically per coefficient
  std::vector<uint32_t> order;
  for (uint64_t v = 0; v < base->q(); ++v) order.push_back(uint32_t(v));
  std::sort(order.begin(), order.end(),
            [&](uint32_t a, uint32_t b) { return base->lex_cmp(a, b) < 0; });
  std::vector<size_t> idx(size_t(d), 0);
  polyd::Poly best;
  while (true) {
    polyd::Poly f(size_t(d) + 1, 0);
    for (int i = 0; i < d; ++i) f[size_t(i)] = order[idx[size_t(i)]];
    f[size_t(d)] = 1;
    if (polyd::is_irreducible(base, f)) {
      best = f;
      break;
    }
    int i = d - 1;
    for (;;) {
      if (i < 0) throw std::logic_error("gfq: no irreducible found");
      if (++idx[size_t(i)] < order.size()) break;
      idx[size_t(i)] = 0;
      --i;
    }
  }
  auto F = std::unique_ptr<Field>(new Field());
  F->p_ = base->p();
  F->deg_ = base->degree() * d;
  F->ext_deg_ = d;
  F->base_ = base;
  F->q_ = q;
  F->modulus_ = best;
  F->init_tables();
  const Field* out = F.get();
  reg.towers.emplace(key, std::move(F));
  return out;
}

// ---------- Fq ----------

Fq Fq::in(FieldPtr f) const {
  if (f_ == f) return *this;
  if (f_ != nullptr) throw std::invalid_argument("Fq: mismatched fields");
  return fq_of(f, lit_);
}

std::vector<long> Fq::coeffs_fp() const {
  if (!f_) throw std::invalid_argument("Fq: literal has no field");
  std::vector<long> out(size_t(f_->degree()));
  uint32_t v = code_;
  for (int i = 0; i < f_->degree(); ++i) {
    out[size_t(i)] = long(v % uint64_t(f_->p()));
    v = uint32_t(v / uint64_t(f_->p()));
  }
  return out;
}

static void require_same(FieldPtr a, FieldPtr b) {
  if (a != b) throw std::invalid_argument("Fq: mismatched fields");
}

Fq operator+(const Fq& a, const Fq& b) {
  if (a.is_literal() && b.is_literal()) return Fq(a.literal() + b.literal());
  if (a.is_literal()) return b.field() ? Fq(b.field(), b.field()->add(fq_of(b.field(), a.literal()).code(), b.code())) : b;
  if (b.is_literal()) return Fq(a.field(), a.field()->add(a.code(), fq_of(a.field(), b.literal()).code()));
  require_same(a.field(), b.field());
  return Fq(a.field(), a.field()->add(a.code(), b.code()));
}

Fq operator-(const Fq& a) {
  if (a.is_literal()) return Fq(-a.literal());
  return Fq(a.field(), a.field()->neg(a.code()));
}

Fq operator-(const Fq& a, const Fq& b) { return a + (-b); }

Fq operator*(const Fq& a, const Fq& b) {
  if (a.is_literal() && b.is_literal()) return Fq(a.literal() * b.literal());
  if (a.is_literal()) return Fq(b.field(), b.field()->mul(fq_of(b.field(), a.literal()).code(), b.code()));
  if (b.is_literal()) return Fq(a.field(), a.field()->mul(a.code(), fq_of(a.field(), b.literal()).code()));
  require_same(a.field(), b.field());
  return Fq(a.field(), a.field()->mul(a.code(), b.code()));
}

Fq operator/(const Fq& a, const Fq& b) {
  if (b.is_literal()) {
    if (a.is_literal()) throw std::invalid_argument("Fq: literal division");
    return a * Fq(a.field(), a.field()->inv(fq_of(a.field(), b.literal()).code()));
  }
  Fq bi(b.field(), b.field()->inv(b.code()));
  return a * bi;
}

bool operator==(const Fq& a, const Fq& b) {
  if (a.is_literal() && b.is_literal()) return a.literal() == b.literal();
  if (a.is_literal()) return fq_of(b.field(), a.literal()).code() == b.code();
  if (b.is_literal()) return fq_of(a.field(), b.literal()).code() == a.code();
  return a.field() == b.field() && a.code() == b.code();
}

std::string Fq::str() const {
  if (!f_) return std::to_string(lit_) + "?";
  return f_->show(code_);
}

bool canonical_less(const Fq& a, const Fq& b) {
  if (a.is_literal() || b.is_literal()) {
    if (a.is_literal() && b.is_literal()) return a.literal() < b.literal();
    FieldPtr f = a.is_literal() ? b.field() : a.field();
    return f->lex_cmp(a.in(f).code(), b.in(f).code()) < 0;
  }
  require_same(a.field(), b.field());
  return a.field()->lex_cmp(a.code(), b.code()) < 0;
}

Fq fq_zero(FieldPtr f) { return Fq(f, 0); }
Fq fq_one(FieldPtr f) { return Fq(f, 1); }

Fq fq_of(FieldPtr f, long v) {
  long p = f->p();
  long r = v % p;
  if (r < 0) r += p;
  return Fq(f, uint32_t(r));
}

Fq fq_gen(FieldPtr f) {
  if (f->ext_degree() < 2) throw std::invalid_argument("fq_gen: field has no extension generator");
  return Fq(f, uint32_t(f->base_q()));
}

Fq inv(const Fq& a) {
  if (a.is_literal()) throw std::invalid_argument("inv: literal");
  return Fq(a.field(), a.field()->inv(a.code()));
}

Fq pow(const Fq& a, long long e) {
  if (a.is_literal()) throw std::invalid_argument("pow: literal");
  return Fq(a.field(), a.field()->pow(a.code(), e));
}

Fq frobenius(const Fq& a, int k, uint64_t base_order) {
  if (k < 0) throw std::invalid_argument("frobenius: negative iteration count");
  if (a.is_literal()) throw std::invalid_argument("frobenius: literal");
  FieldPtr f = a.field();
  uint64_t s = base_order ? base_order : uint64_t(f->p());
  if (a.is_zero()) return a;
  // exponent s^k mod (q-1)
  unsigned long long m = f->q() - 1;
  unsigned long long e = 1 % m;
  for (int i = 0; i < k; ++i) e = (unsigned long long)((__uint128_t(e) * s) % m);
  return pow(a, (long long)e);
}

long long element_order(const Fq& a) {
  if (a.is_literal() || a.is_zero()) throw std::invalid_argument("element_order: needs a nonzero field element");
  FieldPtr f = a.field();
  long long t = (long long)(f->q() - 1);
  for (long long d : prime_factors_ll(t)) {
    while (t % d == 0 && pow(a, t / d) == fq_one(f)) t /= d;
  }
  return t;
}

std::vector<Fq> roots_of_unity(long long n, FieldPtr f) {
  if (n < 1) throw std::invalid_argument("roots_of_unity: n must be positive");
  long long qm1 = (long long)(f->q() - 1);
  long long t = std::gcd(n, qm1);
  std::vector<Fq> out;
  out.reserve(size_t(t));
  // the n-th roots form the unique cyclic subgroup of order gcd(n, q-1)
  Fq g(f, f->generator_code());
  Fq step = pow(g, qm1 / t);
  Fq cur = fq_one(f);
  for (long long i = 0; i < t; ++i) {
    out.push_back(cur);
    cur = cur * step;
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Fq> all_elements(FieldPtr f) {
  std::vector<Fq> out;
  out.reserve(size_t(f->q()));
  for (uint64_t v = 0; v < f->q(); ++v) out.emplace_back(f, uint32_t(v));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace clab
