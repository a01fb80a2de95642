#pragma once

// Finite Galois quotient actions: a finite group gamma acting by
// automorphisms on a finite group module. Covers stability, invariant Sylow
// subgroups, equivariant supersolvable chains, outer actions, almost
// complete groups and cocycle twists.

#include <optional>
#include <string>
#include <vector>

#include "rapcert/aut.hpp"
#include "rapcert/group.hpp"

namespace rapcert {

struct GaloisModule {
  GroupRef gamma;
  GroupRef mod;
  std::vector<GroupMap> rho; // one automorphism of *mod per gamma element

  const FiniteGroup &g() const { return *gamma; }
  const FiniteGroup &a() const { return *mod; }
  int act(int s, int x) const { return rho[s].img[x]; }
};

// checks rho(0) = id, every rho(s) an automorphism, rho(st) = rho(s)rho(t)
GaloisModule make_module(GroupRef gamma, GroupRef mod,
                         std::vector<GroupMap> rho);

// expand per-generator images (for the greedy generators of gamma) into a
// full rho, then validate as above
GaloisModule module_from_generator_images(GroupRef gamma, GroupRef mod,
                                          const std::vector<GroupMap> &gen_images);

GaloisModule trivial_action_module(GroupRef mod);

bool is_stable(const GaloisModule &m, const Subgroup &s);

// distinct automorphisms in the image of rho, as the quotient gamma/ker
struct action_image_result {
  Subgroup kernel;     // elements acting as the identity
  FiniteGroup image;   // gamma/kernel, isomorphic to im(rho) in Aut(A)
};

action_image_result action_image(const GaloisModule &m);

// image of rho is a 2-group
bool is_2group_action(const GaloisModule &m);

// restriction of the action to a stable subgroup, as a standalone module
struct submodule_result {
  GaloisModule sub;
  extracted_subgroup extraction;
};

submodule_result submodule(const GaloisModule &m, const Subgroup &s);

// quotient by a stable normal subgroup with the induced action
struct module_quotient_result {
  GaloisModule quot;
  Extension ext; // kernel, projection, coset reps (on the module groups)
};

module_quotient_result module_quotient(const GaloisModule &m,
                                       const Subgroup &s);

// gamma-stable Sylow p-subgroup, smallest member set among the stable ones;
// nullopt when every Sylow p-subgroup moves
std::optional<Subgroup> invariant_sylow(const GaloisModule &m, int p);

// nontrivial central gamma-fixed cyclic subgroup of a p-group under a
// p-group action (the generator with the smallest index wins). requires the
// hypotheses; throws contract_error outside them.
Subgroup central_stable_cyclic(const GaloisModule &m, int p);

// ---- supersolvable chains ---------------------------------------------------

struct Chain {
  std::vector<Subgroup> subgroups; // ascending, {1} first, module last
  std::vector<int> quotient_orders;
};

// each member gamma-stable and normal in the whole module, successive
// quotients cyclic
bool chain_valid(const GaloisModule &m, const Chain &c);

struct supersolvable_result {
  std::optional<Chain> chain;
  bool exhausted = false;        // search ran to completion before giving up
  std::string decided_by;        // "p-group-recursion" or "search"
};

// p-group module with p-group action: the center recursion, guaranteed to
// succeed. anything else: DFS over stable normal subgroups with memoized
// failures. force_search skips the recursion path (used for cross-checks).
supersolvable_result supersolvable_chain(const GaloisModule &m,
                                         bool force_search = false);

// ---- outer actions and almost complete groups -------------------------------

struct OuterAction {
  FiniteGroup out;        // Out(A) as a table group
  std::vector<int> kappa; // gamma element -> out element
};

// composition of rho with Aut(A) -> Out(A); needs Aut within bounds
OuterAction outer_action(const GaloisModule &m,
                         const limits &lim = default_limits());

// gamma elements acting by inner automorphisms (kernel of the outer
// action); works at any order, no Aut needed
Subgroup inner_acting_kernel(const GaloisModule &m);

struct almost_complete_result {
  bool centerless = false;
  bool almost_complete = false;
  std::string refusal;            // empty, "center", or "no section"
  std::optional<GroupMap> section; // Out -> Aut splitting the projection
  std::optional<AutGroup> aut;
  std::optional<InnerOuter> io;
};

// centerless and 1 -> Int -> Aut -> Out -> 1 splits; the section is found
// by backtracking over coset representatives per Out generator
almost_complete_result is_almost_complete(const FiniteGroup &g,
                                          const limits &lim = default_limits());

// ---- twisting ----------------------------------------------------------------

// cocycle values per gamma element: c(st) = c(s) * s(c(t))
bool is_cocycle(const GaloisModule &m, const std::vector<int> &values);

// twisted module: same groups, action s -> int(c_s) o rho(s)
GaloisModule twist_action(const GaloisModule &m, const std::vector<int> &values);

// a with int(a) = f, if any (unique when the module is centerless)
std::optional<int> inner_witness(const FiniteGroup &g, const GroupMap &f);

} // namespace rapcert
