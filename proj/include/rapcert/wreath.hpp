#pragma once

// Structural model of Aut(F^n) = Aut(F)^n x| S_n for a simple nonabelian
// factor F. The full automorphism group is never materialized as a table
// (28800 elements already for two copies of the smallest case); elements are
// kept as (digit vector into Aut(F), permutation) pairs. Out(F^n) =
// Out(F)^n x| S_n is small and is materialized.

#include <cstdint>
#include <optional>
#include <vector>

#include "rapcert/aut.hpp"
#include "rapcert/group.hpp"

namespace rapcert {

struct WreathElem {
  std::vector<int> digits; // Aut(F) element per copy
  std::vector<int> perm;   // perm[i] = destination copy of copy i
};

bool operator==(const WreathElem &a, const WreathElem &b);

struct WreathAut {
  power_decomposition dec; // factor F, copy count, power table, iso power->a
  AutGroup fact_aut;       // Aut(F)
  InnerOuter fact_io;
  long long aut_order = 0; // |Aut F|^n * n!
  FiniteGroup out;         // Out(F)^n x| S_n, identity at 0
  std::vector<std::vector<int>> perms; // S_n in lexicographic order
  std::vector<int> inv_iso;            // a element -> power element

  int copies() const { return dec.copies; }
  int fsize() const { return dec.factor.n; }
};

// builds the structure for a characteristically simple nonabelian group;
// needs Aut(F) within bounds and the Out table within max_table_order
WreathAut power_automorphisms(const FiniteGroup &a,
                              const limits &lim = default_limits());

WreathElem wreath_identity(const WreathAut &w);
WreathElem wreath_mul(const WreathAut &w, const WreathElem &u,
                      const WreathElem &v);
WreathElem wreath_inv(const WreathAut &w, const WreathElem &u);

// the automorphism of the original group a realized by a wreath element
GroupMap realize(const WreathAut &w, const WreathElem &u);

// wreath form of an automorphism of a; nullopt when f is not of that shape
// (every automorphism of F^n is, so nullopt flags a non-automorphism)
std::optional<WreathElem> decompose(const WreathAut &w, const GroupMap &f);

// projection Aut(F^n) -> Out(F^n) in the materialized out table
int out_index(const WreathAut &w, const WreathElem &u);

// section Out(F^n) -> Aut(F^n) built per-coordinate from a section
// Out(F) -> Aut(F); one wreath element per out element, verified to be a
// homomorphism splitting out_index. throws contract_error if the candidate
// fails verification.
std::vector<WreathElem> power_section(const WreathAut &w,
                                      const GroupMap &section_f);

} // namespace rapcert
