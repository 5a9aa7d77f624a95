// Finite racks as index tables: construction from conjugacy classes,
// axiom checking, inner-group orbits, subrack closure, and exhaustive
// closed-subset enumeration (Ganter-style next-closure walk).

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "clab/grp.hpp"

namespace clab {

struct FiniteRack {
  int size = 0;
  std::vector<std::vector<int>> op;  // op[i][j] = index of x_i > x_j
  std::vector<MatQ> labels;          // optional back-references
  std::optional<GroupCtx> ctx;

  int tri(int i, int j) const { return op[size_t(i)][size_t(j)]; }
};

// conjugation rack on the union of one or more classes in a common context;
// throws if the union is not closed under mutual conjugation
FiniteRack rack_from_classes(const std::vector<const ConjClass*>& classes);
FiniteRack rack_from_class(const ConjClass& cls);

// conjugation rack on an explicit element list (deduplicated canonical
// forms); throws if the list is not closed under mutual conjugation
FiniteRack rack_from_elements(const GroupCtx& ctx, const std::vector<MatQ>& elems);

// both rack axioms, exhaustively; reports a violating triple if any
struct RackAxiomReport {
  bool ok = true;
  int i = -1, j = -1, k = -1;  // violating triple / row when not ok
  std::string reason;
};
RackAxiomReport check_rack_axioms(const FiniteRack& r);

bool rack_is_abelian(const FiniteRack& r);

// orbits of the group generated by all rows (the inner group)
std::vector<std::vector<int>> inn_orbits(const FiniteRack& r);
bool is_indecomposable(const FiniteRack& r);

// orbits of the inner group of the subrack induced on `subset`
std::vector<std::vector<int>> inn_orbits_on(const FiniteRack& r, const std::vector<int>& subset);

// smallest op-closed superset of a nonempty seed
std::vector<int> subrack_closure(const FiniteRack& r, const std::vector<int>& seed);

bool is_subrack(const FiniteRack& r, const std::vector<int>& subset);

// the rack induced on a closed subset
FiniteRack induced_subrack(const FiniteRack& r, const std::vector<int>& subset);

// all nonempty op-closed subsets, ordered by cardinality then
// lexicographically; exhaustive, guarded by a size bound on the rack
std::vector<std::vector<int>> enumerate_subracks(const FiniteRack& r, int max_rack_size = 22);

// every subrack is abelian or indecomposable (exhaustive; bound as above)
bool is_sober(const FiniteRack& r, int max_rack_size = 22);

// every 2-generated subrack (closure of a pair) is abelian or indecomposable
bool is_austere(const FiniteRack& r);

}  // namespace clab
