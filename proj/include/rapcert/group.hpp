#pragma once

// Finite groups as explicit multiplication tables, identity fixed at index 0.
// Everything downstream (actions, cohomology, certificates) works with element
// indices into these tables.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rapcert/errors.hpp"
#include "rapcert/limits.hpp"

namespace rapcert {

struct FiniteGroup {
  int n = 1;
  std::vector<std::uint16_t> tab;  // row-major, tab[a*n+b] = a*b
  std::vector<std::uint16_t> invv; // two-sided inverses
  std::vector<std::string> labels; // optional display names, may be empty

  int order() const { return n; }
  int mul(int a, int b) const { return tab[(std::size_t)a * n + b]; }
  int inv(int a) const { return invv[a]; }
  int conj(int a, int g) const { return mul(mul(g, a), inv(g)); } // g a g^-1
  int pow(int a, long long e) const;
  int element_order(int a) const;
};

using GroupRef = std::shared_ptr<const FiniteGroup>;

GroupRef share(FiniteGroup g);

// builds inverse array and checks all axioms; identity must sit at index 0.
// associativity is scanned exhaustively up to lim.exhaustive_assoc_order and
// checked by Light's generator test above it.
FiniteGroup validate_group(const std::vector<std::vector<int>> &table,
                           const limits &lim = default_limits());

// trusted constructor for tables that are groups by construction (products,
// quotients, permutation closures); only fills inverses, no axiom scan.
FiniteGroup adopt_table(int n, std::vector<std::uint16_t> tab);

FiniteGroup trivial_group();

struct perm_closure {
  FiniteGroup group;
  std::vector<std::vector<int>> elements; // element index -> permutation
};

// closes generators under composition; element 0 is the identity, the order
// of discovery is BFS over right-multiplication by the given generators.
// product convention: (p*q)(x) = p(q(x)), i.e. apply q first.
perm_closure group_from_permutations(int degree,
                                     const std::vector<std::vector<int>> &gens,
                                     const limits &lim = default_limits());

// pair (a,b) <-> index a*|h|+b
FiniteGroup direct_product(const FiniteGroup &g, const FiniteGroup &h,
                           const limits &lim = default_limits());

// ---- maps ----------------------------------------------------------------

// f.img[x] is the image of x; domain/codomain are supplied by context
struct GroupMap {
  std::vector<int> img;

  int apply(int x) const { return img[x]; }
  int size() const { return (int)img.size(); }
  bool operator==(const GroupMap &o) const { return img == o.img; }
};

GroupMap identity_map(int n);
GroupMap compose(const GroupMap &f, const GroupMap &g); // x -> f(g(x))
GroupMap inverse_map(const GroupMap &f);
bool is_bijection(const GroupMap &f);
bool is_homomorphism(const FiniteGroup &src, const FiniteGroup &dst,
                     const GroupMap &f);
bool is_automorphism(const FiniteGroup &g, const GroupMap &f);
GroupMap inner_automorphism(const FiniteGroup &g, int a); // x -> a x a^-1

// ---- subgroups ------------------------------------------------------------

struct Subgroup {
  std::vector<int> members; // sorted, always contains 0

  int order() const { return (int)members.size(); }
  bool contains(int x) const;
  bool operator==(const Subgroup &o) const { return members == o.members; }
  bool operator<(const Subgroup &o) const { return members < o.members; }
};

Subgroup trivial_subgroup();
Subgroup whole_group(const FiniteGroup &g);
Subgroup subgroup_closure(const FiniteGroup &g, const std::vector<int> &seed);
bool is_subgroup(const FiniteGroup &g, const Subgroup &s);
bool is_normal(const FiniteGroup &g, const Subgroup &s);
Subgroup conjugate_subgroup(const FiniteGroup &g, const Subgroup &s, int x);
Subgroup normalizer(const FiniteGroup &g, const Subgroup &s);
Subgroup normal_closure(const FiniteGroup &g, const std::vector<int> &seed);
Subgroup center(const FiniteGroup &g);

bool is_abelian(const FiniteGroup &g);
bool is_cyclic(const FiniteGroup &g);
// T/M cyclic for M <= T <= g with M normal in T; scans for a single
// generating coset
bool quotient_is_cyclic(const FiniteGroup &g, const Subgroup &t,
                        const Subgroup &m);

// greedy minimal generating set: repeatedly adjoin the smallest element
// outside the closure so far. deterministic; used for Light's test, for
// backtracking searches and for the per-generator action input format.
std::vector<int> greedy_generators(const FiniteGroup &g);

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup &g);

// all normal subgroups: joins of normal closures of conjugacy classes
std::vector<Subgroup> normal_subgroups(const FiniteGroup &g);

std::vector<Subgroup> minimal_normal_subgroups(const FiniteGroup &g);

// ---- quotients and subgroup extraction ------------------------------------

struct Extension {
  Subgroup kernel;
  FiniteGroup quotient;
  std::vector<int> proj;       // element of g -> element of quotient
  std::vector<int> coset_reps; // quotient element -> minimal representative
};

// cosets of a normal subgroup, represented by their minimal member
Extension quotient(const FiniteGroup &g, const Subgroup &s);

struct extracted_subgroup {
  FiniteGroup group;
  std::vector<int> to_parent;   // subgroup element -> g element
  std::vector<int> from_parent; // g element -> subgroup element or -1
};

extracted_subgroup subgroup_as_group(const FiniteGroup &g, const Subgroup &s);

// ---- Sylow ----------------------------------------------------------------

int p_part(int n, int p);
bool is_p_group(const FiniteGroup &g, int p);

// all Sylow p-subgroups: grows one maximal p-subgroup through normalizer
// steps, then closes under conjugation. p not dividing |g| yields the
// trivial subgroup once. result sorted by member set.
std::vector<Subgroup> sylow_subgroups(const FiniteGroup &g, int p);

} // namespace rapcert
