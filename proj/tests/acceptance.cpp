// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failing criteria.  Each criterion pins exact small-instance values; there
// are no tolerances anywhere (all arithmetic is exact).

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "clab/certify.hpp"
#include "clab/json_io.hpp"

using namespace clab;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::cout << "[" << id << "] " << (ok ? "PASS" : "FAIL") << "  " << detail << std::endl;
  if (!ok) ++g_failures;
}

// projective order: least t >= 1 with x^t scalar
long long proj_order(const MatQ& x) {
  MatQ cur = x;
  for (long long t = 1;; ++t) {
    if (is_scalar_mat(cur)) return t;
    cur = mat_mul(cur, x);
  }
}

struct ClassBundle {
  ConjClass cls;
  ClassRack cr;
};

std::vector<ClassBundle> semisimple_classes(const GroupCtx& ctx, const GroupSet& g) {
  std::vector<bool> seen(g.elems.size(), false);
  std::vector<ClassBundle> out;
  for (size_t i = 0; i < g.elems.size(); ++i) {
    if (seen[i]) continue;
    ConjClass cls = conj_class(ctx, g.elems[i]);
    for (const MatQ& m : cls.elems) seen[size_t(g.find(m))] = true;
    if (is_scalar_mat(cls.rep) || !is_semisimple(cls.rep)) continue;
    ClassRack cr = ClassRack::of_class(cls);
    out.push_back(ClassBundle{std::move(cls), std::move(cr)});
  }
  return out;
}

// the S4-sized normalizer of a foursome of commuting class involutions,
// together with the class intersection and its orbit split
struct FoursomeData {
  std::vector<MatQ> subgroup;
  std::vector<int> intersection;        // indices into the class rack
  std::vector<size_t> orbit_sizes;      // orbit split of the intersection
};

std::optional<FoursomeData> foursome_normalizer(const ClassRack& cr, const GroupSet& g) {
  MatQ id = canonicalize(mat_identity(cr.ctx.field, cr.ctx.nprime), cr.ctx);
  for (int i = 0; i < cr.size(); ++i) {
    if (!is_scalar_mat(mat_mul(cr.elems[size_t(i)], cr.elems[size_t(i)])) &&
        !is_scalar_mat(canonicalize(mat_mul(cr.elems[size_t(i)], cr.elems[size_t(i)]), cr.ctx)))
      continue;
    for (int j = i + 1; j < cr.size(); ++j) {
      if (cr.op(i, j) != j) continue;
      MatQ ab = canonicalize(mat_mul(cr.elems[size_t(i)], cr.elems[size_t(j)]), cr.ctx);
      std::vector<std::string> keys = {mat_pack(id), mat_pack(cr.elems[size_t(i)]),
                                       mat_pack(cr.elems[size_t(j)]), mat_pack(ab)};
      FoursomeData fd;
      for (const MatQ& h : g.elems) {
        MatQ hi = inverse(h);
        bool keep = true;
        for (const MatQ& v : {cr.elems[size_t(i)], cr.elems[size_t(j)]}) {
          MatQ w = canonicalize(mat_mul(mat_mul(h, v), hi), cr.ctx);
          if (std::find(keys.begin(), keys.end(), mat_pack(w)) == keys.end()) keep = false;
        }
        if (keep) fd.subgroup.push_back(h);
      }
      if (fd.subgroup.size() < 24) continue;
      std::unordered_map<std::string, int> hidx;
      for (size_t t = 0; t < fd.subgroup.size(); ++t)
        hidx.emplace(mat_pack(fd.subgroup[t]), int(t));
      for (int k = 0; k < cr.size(); ++k)
        if (hidx.count(mat_pack(cr.elems[size_t(k)]))) fd.intersection.push_back(k);
      // orbit split under the subgroup
      std::set<int> left(fd.intersection.begin(), fd.intersection.end());
      while (!left.empty()) {
        int seed = *left.begin();
        std::vector<MatQ> orb = {cr.elems[size_t(seed)]};
        std::unordered_map<std::string, int> os{{mat_pack(orb[0]), 0}};
        for (size_t h2 = 0; h2 < orb.size(); ++h2)
          for (const MatQ& gg : fd.subgroup) {
            MatQ w = canonicalize(mat_mul(mat_mul(gg, orb[h2]), inverse(gg)), cr.ctx);
            if (os.emplace(mat_pack(w), int(orb.size())).second) orb.push_back(w);
          }
        fd.orbit_sizes.push_back(orb.size());
        for (int k : fd.intersection)
          if (os.count(mat_pack(cr.elems[size_t(k)]))) left.erase(k);
      }
      std::sort(fd.orbit_sizes.begin(), fd.orbit_sizes.end());
      return fd;
    }
  }
  return std::nullopt;
}

// element order from the divisors of q^n - 1, for irreducible elements
long long order_by_divisors(const MatQ& x, unsigned long long bound) {
  for (unsigned long long t = 1; t <= bound; ++t)
    if (bound % t == 0 && is_identity(mat_pow(x, (long long)t))) return (long long)t;
  return -1;
}

// ---------------- criteria ----------------

void criterion_1() {
  std::ostringstream d;
  bool ok = true;
  // rank-1 small fields: verdicts of the semisimple classes
  {
    FieldPtr f2 = make_field(2, 1);
    GroupCtx ctx = make_ctx(Family::SL, 2, f2, true);
    GroupSet g = enumerate_group(ctx);
    auto cls = semisimple_classes(ctx, g);
    bool found = false;
    for (auto& cb : cls)
      if (proj_order(cb.cls.rep) == 3) {
        VerdictRecord v = classify(cb.cr);
        found = v.abelian && v.kthulhu == "yes-exhaustive";
      }
    ok = ok && found;
    d << "q=2 order-3 abelian " << (found ? "y" : "N");
  }
  {
    FieldPtr f3 = make_field(3, 1);
    GroupCtx ctx = make_ctx(Family::SL, 2, f3, true);
    GroupSet g = enumerate_group(ctx);
    auto cls = semisimple_classes(ctx, g);
    bool found = false;
    for (auto& cb : cls)
      if (proj_order(cb.cls.rep) == 2) {
        VerdictRecord v = classify(cb.cr);
        found = v.abelian && v.kthulhu == "yes-exhaustive";
      }
    ok = ok && found;
    d << "; q=3 involutions abelian " << (found ? "y" : "N");
  }
  {
    FieldPtr f4 = make_field(2, 2);
    GroupCtx ctx = make_ctx(Family::SL, 2, f4, true);
    GroupSet g = enumerate_group(ctx);
    auto cls = semisimple_classes(ctx, g);
    int sober5 = 0;
    bool split_c = false;
    for (auto& cb : cls) {
      long long po = proj_order(cb.cls.rep);
      if (po == 5) {
        VerdictRecord v = classify(cb.cr);
        if (cb.cls.size() == 12 && v.sober.has_value() && *v.sober &&
            v.kthulhu == "yes-exhaustive")
          ++sober5;
      }
      if (po == 3 && cb.cls.size() == 20) {
        Certificate c = type_c_pair_search(cb.cr);
        split_c = c.kind == "typeC" && verify_certificate(c);
      }
    }
    ok = ok && sober5 == 2 && split_c;
    d << "; q=4 (5)-classes sober " << sober5 << "/2, split typeC " << (split_c ? "y" : "N");
  }
  {
    FieldPtr f5 = make_field(5, 1);
    GroupCtx ctx = make_ctx(Family::SL, 2, f5, true);
    GroupSet g = enumerate_group(ctx);
    auto cls = semisimple_classes(ctx, g);
    bool invol_sober = false, irr_c = false;
    for (auto& cb : cls) {
      long long po = proj_order(cb.cls.rep);
      if (po == 2 && cb.cls.size() == 15) {
        VerdictRecord v = classify(cb.cr);
        invol_sober = v.sober.has_value() && *v.sober && v.kthulhu == "yes-exhaustive";
      }
      if (po == 3) {
        Certificate c = type_c_pair_search(cb.cr);
        if (c.kind == "typeC" && verify_certificate(c)) irr_c = true;
      }
    }
    ok = ok && invol_sober && irr_c;
    d << "; q=5 (1,2^2) sober " << (invol_sober ? "y" : "N") << ", irreducible typeC "
      << (irr_c ? "y" : "N");
  }
  {
    FieldPtr f9 = make_field(3, 2);
    GroupCtx ctx = make_ctx(Family::SL, 2, f9, true);
    GroupSet g = enumerate_group(ctx);
    auto cls = semisimple_classes(ctx, g);
    bool invol_c = false;
    for (auto& cb : cls)
      if (proj_order(cb.cls.rep) == 2 && cb.cls.size() == 45) {
        Certificate c = type_c_klein_search(cb.cr, g);
        invol_c = c.kind == "typeC" && verify_certificate(c);
      }
    ok = ok && invol_c;
    d << "; q=9 (1^2,2^2) typeC " << (invol_c ? "y" : "N");
  }
  report(" 1", ok, d.str());
}

void criterion_2() {
  FieldPtr f9 = make_field(3, 2);
  GroupCtx ctx = make_ctx(Family::SL, 2, f9, true);
  GroupSet g = enumerate_group(ctx);
  auto cls = semisimple_classes(ctx, g);
  for (auto& cb : cls) {
    if (!(proj_order(cb.cls.rep) == 2 && cb.cls.size() == 45)) continue;
    auto fd = foursome_normalizer(cb.cr, g);
    if (!fd) {
      report(" 2", false, "no order-24 foursome normalizer found");
      return;
    }
    bool as_stated = fd->intersection.size() == 12 && fd->orbit_sizes.size() == 2 &&
                     fd->orbit_sizes[0] == 6 && fd->orbit_sizes[1] == 6;
    std::ostringstream d;
    d << "as stated: intersection 12 split 6+6; computed: |H| = " << fd->subgroup.size()
      << ", intersection " << fd->intersection.size() << ", split";
    for (size_t s : fd->orbit_sizes) d << " " << s;
    report(" 2", as_stated, d.str());
    // corrected ground truth, pinned separately (see the decisions record):
    // the order-24 subgroup has 9 involutions, 6 + 3, and min(6,3) > 2
    // still yields the type C certificate
    bool corrected = fd->intersection.size() == 9 && fd->orbit_sizes.size() == 2 &&
                     fd->orbit_sizes[0] == 3 && fd->orbit_sizes[1] == 6;
    Certificate kc = type_c_klein_search(cb.cr, g);
    corrected = corrected && kc.kind == "typeC" && verify_certificate(kc);
    report(" 2*", corrected,
           "recounted intersection 9 = 6 + 3 with the type C subgroup certificate verifying "
           "(correction; not one of the eleven criteria)");
    return;
  }
  report(" 2", false, "class not found");
}

void criterion_3() {
  FieldPtr f4 = make_field(2, 2);
  GroupCtx ctx = make_ctx(Family::SL, 2, f4, true);
  GroupSet g = enumerate_group(ctx);
  std::vector<ConjClass> five;
  std::vector<bool> seen(g.elems.size(), false);
  for (size_t i = 0; i < g.elems.size(); ++i) {
    if (seen[i]) continue;
    ConjClass c = conj_class(ctx, g.elems[i]);
    for (const MatQ& m : c.elems) seen[size_t(g.find(m))] = true;
    if (mat_order(c.rep) == 5) five.push_back(std::move(c));
  }
  bool ok = five.size() == 2;
  std::ostringstream d;
  if (ok) {
    ClassRack un = ClassRack::of_union({&five[0], &five[1]});
    FiniteRack r = rack_from_elements(ctx, un.elems);
    auto orbits = inn_orbits(r);
    ok = orbits.size() == 2 && orbits[0].size() == 12 && orbits[1].size() == 12;
    Certificate c = type_c_pair_search(un);
    bool witness = c.kind == "typeC" && verify_certificate(c);
    ok = ok && witness;
    d << "union of the two 5-element classes: " << orbits.size() << " inner orbits of sizes "
      << orbits[0].size() << "," << (orbits.size() > 1 ? orbits[1].size() : 0)
      << "; pair witness " << (witness ? "verified" : "MISSING");
  } else {
    d << "expected two order-5 classes, found " << five.size();
  }
  report(" 3", ok, d.str());
}

void criterion_4() {
  bool ok = true;
  std::ostringstream d;
  int checked = 0;
  for (int n : {2, 3})
    for (long long q : {2ll, 3ll, 4ll, 5ll}) {
      FieldPtr f = q == 4 ? make_field(2, 2) : make_field(q, 1);
      GroupCtx gl = make_ctx(Family::GL, n, f);
      CoxeterTorusGL t = coxeter_torus_gl(f, n);
      // a few torus elements with irreducible charpoly
      int tested_here = 0;
      for (int k = 1; k < 8 && tested_here < 2; ++k) {
        MatQ y = mat_pow(t.gen, k);
        if (!poly_is_irreducible(charpoly(y))) continue;
        ++tested_here;
        ++checked;
        ConjClass cls = conj_class(gl, y);
        std::set<std::string> inter;
        for (const MatQ& m : t.elems)
          if (cls.find(canonicalize(m, gl)) >= 0) inter.insert(mat_pack(normalized(m, f)));
        std::set<std::string> expect;
        MatQ cur = y;
        for (int j = 0; j < n; ++j) {
          expect.insert(mat_pack(normalized(cur, f)));
          cur = mat_pow(cur, (long long)f->q());
        }
        if (inter != expect || int(inter.size()) != n) ok = false;
      }
    }
  d << checked << " irreducible torus elements over ranks {2,3} and the four small fields; "
    << "class-torus intersections all equal the power orbits";
  report(" 4", ok, d.str());
}

void criterion_5() {
  bool ok = true;
  std::ostringstream d;
  // q-power membership for all semisimple classes
  for (auto [fam, npar, p, m] :
       {std::tuple<Family, int, long, int>{Family::SL, 2, 3, 1},
        {Family::SL, 2, 5, 1},
        {Family::Sp, 2, 3, 1}}) {
    FieldPtr f = make_field(p, m);
    GroupCtx ctx = make_ctx(fam, npar, f);
    std::vector<ConjClass> all = all_classes(ctx);
    int ss = 0;
    for (const ConjClass& cls : all) {
      if (!is_semisimple(cls.rep)) continue;
      ++ss;
      if (!power_in_class(cls.rep, (long long)f->q(), cls)) ok = false;
    }
    d << ctx.name() << ": " << ss << " semisimple classes; ";
  }
  // -x avoids the class for the full-degree circle classes in the rank-2
  // symplectic group over F_3
  {
    FieldPtr f3 = make_field(3, 1);
    GroupCtx sp43 = make_ctx(Family::Sp, 2, f3);
    std::vector<ConjClass> all = all_classes(sp43);
    int coxeter_classes = 0;
    for (const ConjClass& cls : all) {
      if (!is_semisimple(cls.rep)) continue;
      long long o = mat_order(cls.rep);
      if ((10 % o != 0) || o <= 2) continue;
      if (!poly_is_irreducible(charpoly(cls.rep))) continue;
      ++coxeter_classes;
      MatQ neg(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) neg(i, j) = -cls.rep(i, j);
      if (cls.find(canonicalize(neg, sp43)) >= 0) ok = false;
    }
    d << "circle classes checked for -x exclusion: " << coxeter_classes;
    if (coxeter_classes == 0) ok = false;
  }
  report(" 5", ok, d.str());
}

void criterion_6() {
  bool ok = true;
  long long count = 0;
  for (int n = 1; n <= 6; ++n)
    for (unsigned long long q : {2ull, 3ull, 4ull, 5ull, 7ull, 8ull, 9ull}) {
      std::vector<int> cyc(size_t(n), 0);
      for (int j = 1; j <= n; ++j) cyc[size_t(j - 1)] = j % n + 1;
      unsigned long long qn = 1;
      for (int i = 0; i < n; ++i) qn *= q;
      if (torus_order_gl(cyc, q) != qn - 1) ok = false;
      if (torus_order_signed(c_lambda(Partition{{n}}, n), q) != qn + 1) ok = false;
      count += 2;
    }
  for (int n = 1; n <= 8; ++n)
    for (const Partition& lam : partitions_of(n))
      for (unsigned long long q : {2ull, 3ull, 5ull, 9ull}) {
        unsigned long long want = 1;
        for (int dpart : lam.parts) {
          unsigned long long t = 1;
          for (int i = 0; i < dpart; ++i) t *= q;
          want *= t + 1;
        }
        if (torus_order_signed(c_lambda(lam, n), q) != want) ok = false;
        ++count;
      }
  std::ostringstream d;
  d << count << " torus orders against the exact determinant";
  report(" 6", ok, d.str());
}

void criterion_7() {
  bool ok = true;
  std::map<int, size_t> pn = {{1, 1}, {2, 2}, {3, 3}, {4, 5}, {5, 7}, {6, 11}, {7, 15}, {8, 22}};
  for (auto [n, want] : pn) {
    auto reps = cuspidal_representatives(n);
    if (reps.size() != want) ok = false;
    for (const auto& [lam, w] : reps)
      if (!is_cuspidal(w)) ok = false;
  }
  size_t b4 = 0;
  {
    auto reps4 = cuspidal_representatives(4);
    std::set<std::vector<std::pair<int, int>>> cuspidal_types;
    for (const auto& [lam, w] : reps4) cuspidal_types.insert(signed_cycle_type(w));
    for (int n = 1; n <= 4; ++n) {
      auto reps = cuspidal_representatives(n);
      std::set<std::vector<std::pair<int, int>>> types;
      for (const auto& [lam, w] : reps) types.insert(signed_cycle_type(w));
      auto all = all_signed_perms(n);
      if (n == 4) b4 = all.size();
      for (const auto& w : all) {
        bool cusp_by_type = types.count(signed_cycle_type(w)) > 0;
        bool fixed_vector = absolute_length(w) < n;
        if (cusp_by_type == fixed_vector) ok = false;  // must be complementary
      }
    }
  }
  std::ostringstream d;
  d << "p(5) = 7, p(8) = 22 representatives, all fixed-point-free; exhaustive complement over "
    << b4 << " rank-4 signed permutations";
  report(" 7", ok && b4 == 384, d.str());
}

void criterion_8() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream d;
  int count = 0;
  auto run = [&](const char* label, Recipe r, const std::string& want_kind) {
    ++count;
    std::string why;
    bool good = r.applied && r.cert.kind == want_kind && verify_certificate(r.cert, &why);
    if (!good) {
      ok = false;
      d << " [" << label << " FAILED: "
        << (r.applied ? (r.cert.kind + " " + why) : r.refusal) << "]";
    }
  };
  FieldPtr f2 = make_field(2, 1), f3 = make_field(3, 1), f5 = make_field(5, 1);
  // split
  run("split Sp_4(5)", split_certificate(make_ctx(Family::Sp, 2, f5, true),
                                         mat_diag({fq_of(f5, 2), fq_one(f5), fq_one(f5), fq_of(f5, 3)})),
      "typeC");
  run("split Omega_7(3)",
      split_certificate(make_ctx(Family::SOodd, 3, f3, false, true),
                        mat_diag({fq_of(f3, 2), fq_one(f3), fq_one(f3), fq_one(f3), fq_one(f3),
                                  fq_one(f3), fq_of(f3, 2)})),
      "typeC");
  // embedded blocks
  run("irrk Sp_4(3) regular", irr_k_certificate(make_ctx(Family::Sp, 2, f3, true),
                                                companion(poly_from(f3, {2, 1, 1}))),
      "typeC");
  {
    Recipe r = irr_k_certificate(make_ctx(Family::Sp, 2, f3, true), companion(poly_from(f3, {1, 0, 1})));
    ++count;
    bool squares = false;
    for (const auto& [n, v] : r.cert.checks)
      if (n == "squares-differ") squares = v;
    std::string why;
    bool good = r.applied && r.cert.kind == "typeD" && squares && verify_certificate(r.cert, &why);
    if (!good) {
      ok = false;
      d << " [irrk rotation q=3 FAILED]";
    }
  }
  run("irrk Omega_6(2)", irr_k_certificate(make_ctx(Family::SOeven, 3, f2, false, true),
                                           companion(poly_from(f2, {1, 1, 0, 1}))),
      "typeC");
  run("irrk Sp_4(5) inverse-paired",
      irr_k_certificate(make_ctx(Family::Sp, 2, f5, true), companion(poly_from(f5, {1, 4, 1}))),
      "typeD");
  // rank-one circle
  run("coxeter Sp_4(2)", coxeter_certificate_auto(make_ctx(Family::Sp, 2, f2)), "typeC");
  run("coxeter PSp_4(3)", coxeter_certificate_auto(make_ctx(Family::Sp, 2, f3, true)), "typeC");
  {
    // the subgroup orbit count q^n (q^n - 1) at q = 2: 4 * 3 = 12
    GroupCtx sp42 = make_ctx(Family::Sp, 2, f2);
    CoxeterEmbedding emb = build_coxeter_embedding(sp42);
    std::vector<MatQ> orb = {canonicalize(emb.x, sp42)};
    std::unordered_map<std::string, int> seen{{mat_pack(orb[0]), 0}};
    for (size_t i = 0; i < orb.size(); ++i)
      for (const MatQ& g : emb.hgens) {
        MatQ y = canonicalize(mat_mul(mat_mul(g, orb[i]), inverse(g)), sp42);
        if (seen.emplace(mat_pack(y), int(orb.size())).second) orb.push_back(y);
      }
    ++count;
    if (orb.size() != 12) {
      ok = false;
      d << " [Sp_4(2) subgroup orbit " << orb.size() << " != 12]";
    }
    // exact torus intersection in Sp_4(3) by full enumeration
    GroupCtx sp43 = make_ctx(Family::Sp, 2, f3);
    CoxeterEmbedding emb3 = build_coxeter_embedding(sp43);
    ConjClass cls = conj_class(sp43, emb3.x);
    int hits = 0;
    MatQ cur = emb3.x;
    for (int k = 1; k <= 10; ++k) {
      if (cls.find(canonicalize(cur, sp43)) >= 0) ++hits;
      cur = mat_mul(cur, emb3.x);
    }
    ++count;
    if (hits != 4) {
      ok = false;
      d << " [Sp_4(3) circle-class intersection " << hits << " != 4]";
    }
  }
  // block products
  {
    GroupCtx sp43 = make_ctx(Family::Sp, 2, f3);
    CoxeterEmbedding emb = build_coxeter_embedding(sp43);
    run("cuspidal Sp_8(3) two parts",
        cuspidal_product_certificate(make_ctx(Family::Sp, 4, f3, true), Partition{{2, 2}},
                                     {emb.x, mat_pow(emb.x, 3)}),
        "typeC");
    GroupCtx sl23 = make_ctx(Family::Sp, 1, f3);
    (void)sl23;
    CoxeterEmbedding emb1 = build_coxeter_embedding(make_ctx(Family::Sp, 2, f2));
    (void)emb1;
    // three parts: (2,1,1) with rank-1 circle blocks
    MatQ y1 = companion(poly_from(f3, {1, 1, 1}));  // irreducible X^2+X+1? over F_3 it is not;
    // use X^2+1 instead for the rank-1 circle blocks
    MatQ rot = companion(poly_from(f3, {1, 0, 1}));
    run("cuspidal Sp_8(3) three parts",
        cuspidal_product_certificate(make_ctx(Family::Sp, 4, f3, true), Partition{{2, 1, 1}},
                                     {emb.x, rot, mat_pow(rot, 3)}),
        "typeC");
    (void)y1;
    ++count;
    Recipe refusal = cuspidal_product_certificate(
        make_ctx(Family::Sp, 4, f3), Partition{{2, 2}},
        {mat_diag({fq_of(f3, 2), fq_one(f3), fq_one(f3), fq_of(f3, 2)}),
         mat_diag({fq_of(f3, 2), fq_one(f3), fq_one(f3), fq_of(f3, 2)})});
    if (refusal.applied || refusal.refusal.find("fixed by the q-power") == std::string::npos) {
      ok = false;
      d << " [cuspidal refusal missing]";
    }
  }
  // rank-2 Levi
  run("sp4levi q=5", sp4_levi_certificate(make_ctx(Family::Sp, 2, f5, true), fq_of(f5, 2), fq_one(f5)),
      "typeD");
  run("sp4levi q=2", sp4_levi_certificate(make_ctx(Family::Sp, 2, f2), fq_one(f2), fq_one(f2)),
      "typeC");
  // composite-rank linear
  run("pslcomposite n=4 q=2", psl_composite_certificate(make_ctx(Family::SL, 4, f2, true), 2, 2),
      "typeC");
  run("pslcomposite n=4 q=3", psl_composite_certificate(make_ctx(Family::SL, 4, f3, true), 2, 2),
      "typeC");
  // orthogonal mixed
  run("somixed SO_6(3)",
      so_mixed_certificate(make_ctx(Family::SOeven, 3, f3, false, true),
                           companion(poly_from(f3, {1, 0, 1})), fq_one(f3), std::nullopt),
      "typeD");
  run("somixed SO_6(5)",
      so_mixed_certificate(make_ctx(Family::SOeven, 3, f5, false, true),
                           companion(poly_from(f5, {2, 1, 1})), fq_of(f5, 2), std::nullopt),
      "typeC");
  run("somixed SO_8(3)",
      so_mixed_certificate(make_ctx(Family::SOeven, 4, f3, false, true),
                           companion(poly_from(f3, {1, 0, 1})), std::nullopt,
                           companion(poly_from(f3, {2, 1, 1}))),
      "typeD");
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream head;
  head << count << " recipe instances re-verified in " << int(secs) << "s (< 600s budget)" << d.str();
  report(" 8", ok && secs < 600, head.str());
}

void criterion_9() {
  auto t0 = Clock::now();
  FieldPtr f3 = make_field(3, 1);
  GroupCtx ctx = make_ctx(Family::Sp, 2, f3, true);
  MatQ x = embed_j(mat_diag({fq_one(f3), fq_of(f3, -1)}), FormKind::Symplectic);
  ConjClass cls = conj_class(ctx, x);
  ClassRack cr = ClassRack::of_class(cls);
  Certificate cd = type_d_pair_search(cr);
  Certificate cf = type_f_search(cr);
  FiniteRack r = rack_from_class(cls);
  bool austere = is_austere(r);
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  bool ok = cls.size() == 45 && cd.kind == "negative-exhaustive" &&
            cf.kind == "negative-exhaustive" && austere && secs < 1800;
  std::ostringstream d;
  d << "split involutions (size " << cls.size() << "): type D " << cd.kind << ", type F "
    << cf.kind << ", austere " << (austere ? "yes" : "NO") << ", " << int(secs)
    << "s (< 1800s budget)";
  report(" 9", ok, d.str());
}

void criterion_10() {
  auto t0 = Clock::now();
  bool ok = true;
  // gcd identity suite
  {
    std::vector<unsigned long long> qs;
    for (unsigned long long p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                                 31ull, 37ull, 41ull, 43ull, 47ull, 53ull, 59ull, 61ull}) {
      unsigned long long v = p;
      while (v <= 64) {
        qs.push_back(v);
        v *= p;
      }
    }
    for (int n : {3, 5, 7, 11, 13})
      for (unsigned long long q : qs)
        if (!gcd_identities(n, q).all_hold) ok = false;
  }
  // closed form against the brute-force oracle on the full grid
  for (auto [p, m] : {std::pair<long, int>{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2},
                      {5, 1}, {7, 1}, {11, 1}, {13, 1}}) {
    FieldPtr f = make_field(p, m);
    for (int n = 2; n <= 8; ++n)
      for (int eps : {1, -1}) {
        std::vector<long> cs(size_t(n) + 1, 0);
        cs[0] = eps;
        cs[size_t(n)] = 1;
        if (poly_is_irreducible(poly_from(f, cs)) != xn_eps_irreducible(n, eps, f->q()))
          ok = false;
      }
  }
  // primitive divisor checks on the enumerated irreducible elements
  long long irr_total = 0;
  for (auto [p, m] : {std::pair<long, int>{2, 1}, {3, 1}, {2, 2}}) {
    FieldPtr f = make_field(p, m);
    GroupCtx ctx = make_ctx(Family::SL, 3, f);
    GroupSet g = enumerate_group(ctx);
    unsigned long long q3m1 = f->q() * f->q() * f->q() - 1;
    for (const MatQ& mm : g.elems) {
      if (!poly_is_irreducible(charpoly(mm))) continue;
      ++irr_total;
      long long o = order_by_divisors(mm, q3m1);
      if (o < 0 || !ppd_element_check((unsigned long long)o, f->q(), 3)) ok = false;
    }
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream d;
  d << "gcd identities, the closed-form grid, and " << irr_total
    << " irreducible rank-3 elements in " << int(secs) << "s (< 60s budget)";
  report("10", ok && secs < 60, d.str());
}

void criterion_11() {
  bool ok = true;
  std::ostringstream d;
  // rack axioms on freshly constructed racks
  {
    int racks = 0;
    FieldPtr f3 = make_field(3, 1);
    for (GroupCtx ctx : {make_ctx(Family::SL, 2, f3), make_ctx(Family::SL, 2, f3, true),
                         make_ctx(Family::Sp, 2, f3, true)}) {
      GroupSet g = enumerate_group(ctx);
      std::vector<bool> seen(g.elems.size(), false);
      for (size_t i = 0; i < g.elems.size() && racks < 24; ++i) {
        if (seen[i]) continue;
        ConjClass cls = conj_class(ctx, g.elems[i]);
        for (const MatQ& mm : cls.elems) seen[size_t(g.find(mm))] = true;
        if (cls.size() > 300) continue;
        FiniteRack r = rack_from_class(cls);
        if (!check_rack_axioms(r).ok) ok = false;
        ++racks;
      }
    }
    d << racks << " rack-axiom sweeps";
  }
  // orbit-stabilizer on every enumerated class of two full groups
  {
    for (auto [fam, npar, p] : {std::tuple<Family, int, long>{Family::SL, 2, 3},
                                {Family::SL, 2, 5}}) {
      FieldPtr f = make_field(p, 1);
      GroupCtx ctx = make_ctx(fam, npar, f);
      GroupSet g = enumerate_group(ctx);
      for (const ConjClass& cls : all_classes(ctx)) {
        auto cent = centralizer(cls.rep, g);
        if (cls.size() * cent.size() != g.elems.size()) ok = false;
      }
    }
    d << "; orbit-stabilizer on all classes of two rank-2 groups";
  }
  // morphism properties on >= 1000 random samples per group
  {
    std::mt19937 rng(2024);
    int samples = 0;
    for (auto [p, m] : {std::pair<long, int>{3, 1}, {5, 1}, {2, 2}}) {
      FieldPtr f = make_field(p, m);
      std::uniform_int_distribution<uint32_t> dist(0, uint32_t(f->q() - 1));
      auto rand_inv = [&](int n) {
        for (;;) {
          MatQ mm(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) mm(i, j) = Fq(f, dist(rng));
          if (inverse_opt(mm)) return mm;
        }
      };
      for (int rep = 0; rep < 1000; ++rep) {
        MatQ a = rand_inv(2), b = rand_inv(2);
        if (mat_cmp(phi(mat_mul(a, b)), mat_mul(phi(a), phi(b))) != 0) ok = false;
        if (mat_cmp(phi(phi(a)), a) != 0) ok = false;
        if (mat_cmp(embed_j(mat_mul(a, b), FormKind::Symplectic),
                    mat_mul(embed_j(a, FormKind::Symplectic), embed_j(b, FormKind::Symplectic))) != 0)
          ok = false;
        if (!form_membership(embed_j(a, FormKind::Symplectic), FormKind::Symplectic)) ok = false;
        samples += 1;
      }
    }
    d << "; " << samples << " random morphism samples";
  }
  // canonicalization idempotence and coset consistency
  {
    std::mt19937 rng(77);
    FieldPtr f4 = make_field(2, 2);
    GroupCtx ctx = make_ctx(Family::SL, 3, f4, true);
    std::uniform_int_distribution<uint32_t> dist(0, 3);
    auto zs = center_scalars(ctx);
    int tested = 0;
    while (tested < 300) {
      MatQ mm(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) mm(i, j) = Fq(f4, dist(rng));
      if (!(det(mm) == Fq(1))) continue;
      ++tested;
      MatQ c = canonicalize(mm, ctx);
      if (mat_cmp(canonicalize(c, ctx), c) != 0) ok = false;
      for (const Fq& z : zs) {
        MatQ zm(3, 3);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) zm(i, j) = z * mm(i, j);
        if (mat_cmp(canonicalize(zm, ctx), c) != 0) ok = false;
      }
    }
    d << "; 300 canonicalization checks";
  }
  report("11", ok, d.str());
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::cout << "acceptance: " << (g_failures == 0 ? "all criteria pass" :
                                  std::to_string(g_failures) + " criterion(s) failing")
            << " (" << int(secs) << "s total)" << std::endl;
  return g_failures;
}
