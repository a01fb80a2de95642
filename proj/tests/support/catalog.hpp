#pragma once

// named test groups: explicit table builders for the standard small-group
// constructions, the complete isomorphism class lists through order 16, and
// a structural family sweep up to order 96. every table goes through
// validate_group, so a broken builder fails loudly.

#include <string>
#include <vector>

#include "rapcert/group.hpp"

namespace rapcert::cat {

struct entry {
  std::string name;
  GroupRef g;
};

GroupRef cyclic(int n);
GroupRef abelian(const std::vector<int> &factors); // product of cyclics
GroupRef elementary(int p, int k);
GroupRef dihedral(int order);  // order = 2n, n >= 3
GroupRef dicyclic(int order);  // order = 4n, n >= 2; Q8 = dicyclic(8)
GroupRef semidihedral(int order); // order = 2^k >= 16
GroupRef modular2(int order);     // modular 2-group, order = 2^k >= 16
GroupRef c4_semi_c4();            // C4 : C4, order 16
GroupRef c4xc2_semi_c2();         // (C4 x C2) : C2, order 16
GroupRef pauli16();               // central product D4 . C4
GroupRef heisenberg(int p);       // extraspecial p^3 of exponent p, p odd
GroupRef modularp(int p);         // extraspecial p^3 of exponent p^2
GroupRef frobenius(int n, int k, int r); // C_n : C_k, generator acts as ^r
GroupRef gen_dihedral_9();        // C3^2 : C2 by inversion, order 18
GroupRef sym(int n);
GroupRef alt(int n);
GroupRef sl23();                  // order 24
GroupRef psl27();                 // order 168
GroupRef product(GroupRef a, GroupRef b);

// semidirect n : h; phi[j] is the automorphism of n used by h element j
GroupRef semidirect(GroupRef n, GroupRef h, const std::vector<GroupMap> &phi);

// all 28 isomorphism classes of order <= 15
std::vector<entry> classes_upto_15();
// all 14 isomorphism classes of order 16
std::vector<entry> classes_16();

// classes through 16 plus families above: all abelian groups, all dihedral
// and dicyclic groups, semidihedral/modular 2-groups, the Frobenius and
// extraspecial constructions, symmetric/alternating groups and assorted
// products, each of order <= max_order
std::vector<entry> family_catalog(int max_order);

// the 2-groups from family_catalog
std::vector<entry> two_group_catalog(int max_order);

// the eight 2-groups of order <= 8, used as Galois quotients
std::vector<entry> gamma_catalog();

} // namespace rapcert::cat
