// Decision procedures for type C / D / F with machine-checkable certificates
// and honest bounded-search verdicts.
//
// Completeness, by property: type D is complete per class (the defining
// condition quantifies over pairs in the class); type F is complete when the
// budget covers every quadruple; type C is complete only through exhaustive
// subrack enumeration (rack size <= 22) or for abelian classes -- the pair
// and subgroup searches are sufficient conditions and report
// negative-bounded when they fail.

#pragma once

#include "clab/rack.hpp"

namespace clab {

// A conjugation domain for the scans: canonical elements with O(1) lookup,
// built from a class, a union of classes, or a labelled rack.
struct ClassRack {
  GroupCtx ctx;
  std::vector<MatQ> elems;
  std::vector<MatQ> invs;
  std::unordered_map<std::string, int> index;
  std::vector<int> table;  // full op table when the size permits, else empty

  int size() const { return int(elems.size()); }
  int op(int i, int j) const {  // index of x_i x_j x_i^-1
    if (!table.empty()) return table[size_t(i) * elems.size() + size_t(j)];
    return op_slow(i, j);
  }
  int op_slow(int i, int j) const;
  int find(const MatQ& m) const;

  static ClassRack of_class(const ConjClass& cls);
  static ClassRack of_union(const std::vector<const ConjClass*>& classes);
  static ClassRack of_rack(const FiniteRack& r);
};

struct Certificate {
  std::string kind;   // typeC | typeD | typeF | abelian | negative-exhaustive | negative-bounded
  std::string shape;  // pair | subgroup | quadruple | subrack | scan
  std::string property;  // which property the verdict is about: C, D or F
  GroupCtx ctx;
  std::vector<std::pair<std::string, MatQ>> witness;  // named matrices
  std::vector<std::pair<std::string, bool>> checks;   // named verified conditions
  std::string search_bound;
  std::string recipe;         // filled by the constructive generators
  std::string applicability;  // ditto
  std::vector<std::pair<std::string, long long>> aux;  // small named integers

  long long aux_of(const std::string& name, long long dflt = -1) const {
    for (const auto& [n, v] : aux)
      if (n == name) return v;
    return dflt;
  }

  bool positive() const { return kind == "typeC" || kind == "typeD" || kind == "typeF"; }
  const MatQ* find_witness(const std::string& name) const;
  void put(const std::string& name, const MatQ& m) { witness.emplace_back(name, m); }
  void check(const std::string& name, bool v) { checks.emplace_back(name, v); }
  bool all_checks() const;
};

struct SearchOpts {
  size_t max_closure = 100000;  // cap for subgroup closures inside scans
  long long budget = -1;        // max quadruples examined by the F-scan; -1 = unlimited
  int threads = 1;
  unsigned seed = 0;            // 0 = deterministic canonical order
};

// orbit of index a under conjugation by the elements listed in gens_idx
std::vector<int> conj_orbit(const ClassRack& cr, int a, const std::vector<int>& gens_idx);

// the subgroup generated by a list of elements (canonical forms), with a
// hard cap on the closure size
std::vector<MatQ> subgroup_closure(const GroupCtx& ctx, const std::vector<MatQ>& gens, size_t cap);

// complete type D decision on a single class / union
Certificate type_d_pair_search(const ClassRack& cr, const SearchOpts& opts = {});

// sufficient type C condition on pairs (two-element subgroup form)
Certificate type_c_pair_search(const ClassRack& cr, const SearchOpts& opts = {});

// sufficient type C condition from a supplied subgroup: H nonabelian,
// H generated by the H-orbit of x, s in the class meeting H outside that
// orbit with an H-orbit of size > 2
Certificate type_c_subgroup_check(const GroupCtx& ctx, const std::vector<MatQ>& hgens,
                                  const MatQ& x, const MatQ& s, const ClassRack& cls,
                                  const SearchOpts& opts = {});

// complete type C decision by exhaustive subrack enumeration
Certificate type_c_subrack_exhaustive(const FiniteRack& r, int max_rack_size = 22);

// sufficient type C search through normalizers of foursome subgroups built
// from commuting pairs of projective involutions in the class; needs the
// ambient group enumerated
Certificate type_c_klein_search(const ClassRack& cr, const GroupSet& ambient,
                                const SearchOpts& opts = {});

// type F quadruple scan with a pairwise-commutation prefilter
Certificate type_f_search(const ClassRack& cr, const SearchOpts& opts = {});

struct VerdictRecord {
  bool abelian = false;
  bool indecomposable = false;
  Certificate type_c, type_d, type_f;
  std::optional<bool> sober;    // nullopt when past the exhaustive bound
  std::optional<bool> austere;  // nullopt when skipped (size guard)
  std::string kthulhu;          // "yes-exhaustive" | "no" | "bounded: ..."
};

struct ClassifyOpts {
  SearchOpts search;
  int sober_bound = 22;
  int austere_max = 2000;   // skip the quadratic austere sweep past this size
  bool force_austere = false;
};

VerdictRecord classify(const ClassRack& cr, const ClassifyOpts& opts = {});

// replay every stored check of a certificate from its witness data;
// returns false (and fills *why) if any check fails to reproduce
bool verify_certificate(const Certificate& c, std::string* why = nullptr);

}  // namespace clab
