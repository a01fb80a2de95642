#pragma once

// Automorphism groups by generator-image backtracking, isomorphism testing,
// inner/outer splitting, characteristic subgroup machinery and composition
// series. Everything is bounded by limits::max_aut_order / max_aut_size and
// fails loudly with bound_error beyond that.

#include <optional>
#include <vector>

#include "rapcert/group.hpp"

namespace rapcert {

struct AutGroup {
  FiniteGroup table;          // abstract Aut(g), identity at 0
  std::vector<GroupMap> maps; // maps[i] realizes element i on g
  std::vector<int> g_gens;    // greedy generators of g (lookup key positions)

  // index of an automorphism by its images on g_gens; -1 if absent
  int index_of(const GroupMap &f) const;
};

// all automorphisms of g, ordered lexicographically by image array (the
// identity lands at index 0). throws bound_error if |g| > max_aut_order or
// more than max_aut_size automorphisms exist.
AutGroup automorphism_group(const FiniteGroup &g,
                            const limits &lim = default_limits());

// first isomorphism g -> h in deterministic search order, nullopt if none
std::optional<GroupMap> find_isomorphism(const FiniteGroup &g,
                                         const FiniteGroup &h,
                                         const limits &lim = default_limits());

// backtracking over images of the greedy generators of src, pruning on the
// multiplication law. gen_candidates, when nonempty, restricts the allowed
// images per generator (e.g. to fibers of a projection); otherwise any
// order-compatible element is tried.
struct hom_search_spec {
  bool first_only = false;
  std::size_t cap = (std::size_t)-1; // bail out above this many results
  std::vector<std::vector<int>> gen_candidates;
};

std::vector<GroupMap> find_homomorphisms(const FiniteGroup &src,
                                         const FiniteGroup &dst,
                                         const hom_search_spec &spec = {});

struct InnerOuter {
  Subgroup inner; // Int(g) inside aut.table, isomorphic to g/Z(g)
  Extension out;  // quotient aut.table / inner
};

InnerOuter inner_and_outer(const FiniteGroup &g, const AutGroup &aut);

bool is_simple(const FiniteGroup &g);

// ---- semisimple structure ---------------------------------------------------

// internal direct product of nonabelian simple minimal normal subgroups;
// this is what lets characteristic machinery run far beyond max_aut_order
struct semisimple_structure {
  std::vector<Subgroup> factors;          // minimal normal subgroups, sorted
  std::vector<extracted_subgroup> parts;  // extraction per factor
  std::vector<std::vector<int>> coord;    // coord[i][x]: component of x in
                                          // factor i, as a parent element
  std::vector<int> iso_class;             // class id per factor
  std::vector<GroupMap> iso_from_first;   // factor-group iso: class-first
                                          // factor group -> factor i group
};

std::optional<semisimple_structure>
analyze_semisimple(const FiniteGroup &g, const limits &lim = default_limits());

// generators of Aut(g): full backtracking within bounds, otherwise the
// structural generators of a semisimple group (per-factor automorphisms
// plus swaps of isomorphic factors). throws bound_error when neither works.
std::vector<GroupMap> aut_generators(const FiniteGroup &g,
                                     const limits &lim = default_limits());

bool is_characteristically_simple(const FiniteGroup &g,
                                  const limits &lim = default_limits());

// all subgroups invariant under every automorphism, as joins of closures of
// element orbits under Aut; includes the trivial subgroup and g itself.
// sorted by (order, member set).
std::vector<Subgroup>
characteristic_subgroups(const FiniteGroup &g,
                         const limits &lim = default_limits());

// largest proper nontrivial characteristic subgroup (inclusion-maximal,
// tie-broken by largest order then smallest member set). throws
// contract_error on characteristically simple or trivial input.
Subgroup maximal_proper_characteristic(const FiniteGroup &g,
                                       const limits &lim = default_limits());

enum class series_policy { largest_kernel, smallest_kernel };

// composition factors along one series, top factor first. the series picks
// an inclusion-maximal proper normal subgroup at each step; the policy
// selects among them (order, then member set).
std::vector<FiniteGroup>
composition_factors(const FiniteGroup &g,
                    series_policy policy = series_policy::largest_kernel);

// every composition factor nonabelian (vacuously true for the trivial group)
bool is_antisolvable(const FiniteGroup &g);

struct power_decomposition {
  FiniteGroup factor;
  int copies = 1;
  FiniteGroup power; // factor^copies, mixed-radix indexing, big-endian digits
  GroupMap iso;      // power -> g isomorphism
  bool abelian_case = false;
};

// characteristically simple g as an explicit power of a simple group;
// elementary abelian input is reported with abelian_case set.
power_decomposition
direct_power_decomposition(const FiniteGroup &g,
                           const limits &lim = default_limits());

} // namespace rapcert
