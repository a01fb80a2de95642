#pragma once

// Brute-force nonabelian 1-cohomology over the finite model: cocycle
// enumeration by generator DFS, twisted-conjugation classes, restriction to
// order-2 subgroups modeling real places, the diagonal surjectivity report,
// twisting bijections, the fixed-coset image criterion and cocycle lifting
// through extensions.

#include <map>
#include <optional>
#include <vector>

#include "rapcert/action.hpp"
#include "rapcert/group.hpp"

namespace rapcert {

struct Cocycle {
  std::vector<int> values; // one module element per gamma element
};

bool operator==(const Cocycle &a, const Cocycle &b);

// complete Z^1 for the module, sorted lexicographically by values array.
// DFS assigns values on the greedy generators of gamma, extends by the
// cocycle law and prunes on any violated pair. bound_error beyond
// max_h1_gamma / max_h1_module.
std::vector<Cocycle> enumerate_cocycles(const GaloisModule &m,
                                        const limits &lim = default_limits());

struct H1Set {
  std::vector<Cocycle> classes; // lexicographically smallest representative
  std::map<std::vector<int>, int> class_of; // every cocycle -> class index
  int distinguished = 0;                    // class of the trivial cocycle
};

// classes under f ~ (s -> a f(s) rho(s)(a)^-1)
H1Set h1(const GaloisModule &m, const limits &lim = default_limits());

// real places are modeled by elements of gamma of order at most 2
struct LocalPlaceModel {
  std::vector<int> involutions;
};

// every element of order <= 2, identity excluded
LocalPlaceModel all_involution_places(const FiniteGroup &gamma);

struct PlaceRestriction {
  GaloisModule local;     // module over <c>
  std::vector<int> embed; // local gamma index -> gamma element
};

PlaceRestriction place_module(const GaloisModule &m, int c);

Cocycle restrict_cocycle(const PlaceRestriction &p, const Cocycle &f);

struct SurjectivityReport {
  bool surjective = false;
  bool finite_model_only = false; // caveat: negative answers only refute the
                                  // finite model, never the number-field claim
  long long tuple_count = 0;
  int global_classes = 0;
  std::vector<int> local_class_counts;
  std::vector<int> missing_tuple; // local class index per place, empty when
                                  // surjective
};

// the diagonal map on classes, H1(gamma, A) -> prod_v H1(<c_v>, A)
SurjectivityReport real_approx_surjective(const GaloisModule &m,
                                          const LocalPlaceModel &places,
                                          const limits &lim = default_limits());

struct TwistBijection {
  GaloisModule twisted;       // _sigma m
  H1Set source;               // H1 of the twisted module
  H1Set target;               // H1 of m
  std::vector<int> class_map; // source class -> target class, [tau]->[tau sigma]
  int distinguished_image = 0; // must be the class of sigma
};

// verified bijective and distinguished-to-[sigma]; contract_error otherwise
TwistBijection twisting_bijection(const GaloisModule &m, const Cocycle &sigma,
                                  const limits &lim = default_limits());

struct SylowImageResult {
  bool in_image = false;
  std::optional<int> fixed_coset_rep; // minimal element of a fixed coset
};

// alpha in the image of H1(gamma, S) -> H1(gamma, A), decided by the
// fixed-coset criterion on the twisted coset action and cross-checked
// against the direct image computation; contract_error on disagreement or
// an unstable subgroup.
SylowImageResult sylow_image_criterion(const GaloisModule &m,
                                       const Subgroup &s, const Cocycle &alpha,
                                       const limits &lim = default_limits());

// a fixed point of an involution on an odd-size set (smallest index)
int odd_set_fixed_point(int size, const std::vector<int> &involution);

// lift sigma (a cocycle of q.quot where q = module_quotient(m, b)) to a
// cocycle of m with projection sigma; DFS over the projection fibers on the
// greedy generators of gamma. nullopt when the exhaustive search fails.
std::optional<Cocycle>
lift_through_extension(const GaloisModule &m, const module_quotient_result &q,
                       const Cocycle &sigma,
                       const limits &lim = default_limits());

} // namespace rapcert
