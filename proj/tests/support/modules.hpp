#pragma once

// small helpers for building test modules

#include "rapcert/action.hpp"
#include "support/catalog.hpp"

namespace rapcert::cat {

// gamma acting trivially (gamma need not be the trivial group)
inline GaloisModule trivial_over(GroupRef gamma, GroupRef a) {
  std::vector<GroupMap> imgs(greedy_generators(*gamma).size(),
                             identity_map(a->n));
  return module_from_generator_images(gamma, a, imgs);
}

// C2 inverting an abelian group
inline GaloisModule inversion_module(GroupRef a) {
  GroupMap inv;
  inv.img.resize(a->n);
  for (int x = 0; x < a->n; ++x)
    inv.img[x] = a->inv(x);
  return module_from_generator_images(cyclic(2), a, {inv});
}

// cyclic gamma with its generator acting by a single automorphism f
inline GaloisModule cyclic_action(int n, GroupRef a, const GroupMap &f) {
  return module_from_generator_images(cyclic(n), a, {f});
}

// C2 swapping the two factors of a x a
inline GaloisModule swap_module(GroupRef a) {
  GroupRef sq = product(a, a);
  GroupMap sw;
  sw.img.resize(sq->n);
  for (int x = 0; x < a->n; ++x)
    for (int y = 0; y < a->n; ++y)
      sw.img[x * a->n + y] = y * a->n + x;
  return cyclic_action(2, sq, sw);
}

} // namespace rapcert::cat
