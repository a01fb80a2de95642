// regenerates tests/fixtures/catalog. every small-order class gets a trivial
// involution action; a handful of hand-picked modules exercise the other
// reduction rules, the permutations input form, places, and options. one
// deliberately broken file keeps the survey's error isolation honest.
//
// usage: make_fixtures <output-dir>

#include "rapcert/io.hpp"
#include "support/catalog.hpp"
#include "support/modules.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

using namespace rapcert;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slug(const std::string &name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum((unsigned char)c))
      out += (char)std::tolower((unsigned char)c);
    else if (!out.empty() && out.back() != '_')
      out += '_';
  }
  while (!out.empty() && out.back() == '_')
    out.pop_back();
  return out;
}

void emit(const fs::path &dir, const std::string &name, const json &doc) {
  std::ofstream out(dir / name);
  out << doc.dump(2) << "\n";
  std::printf("%s\n", name.c_str());
}

json permutation_group(int degree, const std::vector<std::vector<int>> &gens) {
  json g = json::array();
  for (const auto &p : gens)
    g.push_back(p);
  return json{{"permutations", json{{"degree", degree}, {"generators", g}}}};
}

json gamma_table(GroupRef g) {
  InputDocument tmp{cat::trivial_over(g, cat::cyclic(1)), std::nullopt,
                    default_limits()};
  return serialize_document(tmp).at("gamma");
}

std::vector<int> identity_images(int n) {
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i)
    id[i] = i;
  return id;
}

int first_of_order(const FiniteGroup &g, int k) {
  for (int x = 1; x < g.n; ++x)
    if (g.element_order(x) == k)
      return x;
  return -1;
}

std::vector<int> inner_images(const FiniteGroup &g, int by) {
  std::vector<int> img(g.n);
  for (int x = 0; x < g.n; ++x)
    img[x] = g.conj(x, by);
  return img;
}

// image of conjugation by an ambient permutation on a closed element list
std::vector<int> conj_images(const perm_closure &pc,
                             const std::vector<int> &s) {
  std::map<std::vector<int>, int> where;
  for (int i = 0; i < (int)pc.elements.size(); ++i)
    where[pc.elements[i]] = i;
  std::vector<int> sinv(s.size());
  for (int i = 0; i < (int)s.size(); ++i)
    sinv[s[i]] = i;
  std::vector<int> img(pc.elements.size());
  for (int i = 0; i < (int)pc.elements.size(); ++i) {
    const std::vector<int> &p = pc.elements[i];
    std::vector<int> q(p.size());
    for (int x = 0; x < (int)p.size(); ++x)
      q[s[x]] = s[p[x]];
    img[i] = where.at(q);
  }
  return img;
}

} // namespace

int main(int argc, char **argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <output-dir>\n", argv[0]);
    return 2;
  }
  fs::path dir = argv[1];
  fs::create_directories(dir);

  // the full small-order classification, each with the trivial C2 action
  for (const cat::entry &e : cat::family_catalog(16)) {
    GaloisModule m = cat::trivial_over(cat::cyclic(2), e.g);
    InputDocument doc{m, std::nullopt, default_limits()};
    char name[96];
    std::snprintf(name, sizeof name, "%03d_%s_triv.json", e.g->n,
                  slug(e.name).c_str());
    emit(dir, name, serialize_document(doc));
  }

  // inner involution action on S4
  {
    GroupRef s4 = cat::sym(4);
    GaloisModule m = module_from_generator_images(
        cat::cyclic(2), s4,
        {GroupMap{inner_images(*s4, first_of_order(*s4, 2))}});
    emit(dir, "s4_conj_c2.json",
         serialize_document({m, std::nullopt, default_limits()}));
  }

  // quaternion unit rotation: no rule applies, surveyed as UNKNOWN
  {
    GaloisModule m = module_from_generator_images(
        cat::cyclic(3), cat::dicyclic(8),
        {GroupMap{{0, 4, 2, 6, 5, 1, 7, 3}}});
    emit(dir, "q8_rot_c3.json",
         serialize_document({m, std::nullopt, default_limits()}));
  }

  // outer involution on D4
  {
    GaloisModule m = module_from_generator_images(
        cat::cyclic(2), cat::dihedral(8), {GroupMap{{0, 3, 2, 1, 5, 4, 7, 6}}});
    emit(dir, "d4_outer_c2.json",
         serialize_document({m, std::nullopt, default_limits()}));
  }

  // odd-order Frobenius group with an inner order-3 twist
  {
    GroupRef f21 = cat::frobenius(7, 3, 2);
    GaloisModule m = module_from_generator_images(
        cat::cyclic(3), f21,
        {GroupMap{inner_images(*f21, first_of_order(*f21, 3))}});
    emit(dir, "f21_inner_c3.json",
         serialize_document({m, std::nullopt, default_limits()}));
  }

  // inversion with places and a non-default bound
  {
    GaloisModule m = cat::inversion_module(cat::cyclic(15));
    InputDocument doc{m, all_involution_places(m.g()), default_limits()};
    doc.lim.max_local_product = 1000000;
    emit(dir, "c15_inv_places.json", serialize_document(doc));
  }

  // the permutation input form: alternating and projective groups
  {
    perm_closure a5 = group_from_permutations(5, {{1, 2, 0, 3, 4},
                                                  {1, 2, 3, 4, 0}});
    json doc{{"group", permutation_group(5, {{1, 2, 0, 3, 4},
                                             {1, 2, 3, 4, 0}})},
             {"gamma", gamma_table(cat::cyclic(2))},
             {"action", json::array({conj_images(a5, {1, 0, 2, 3, 4})})}};
    emit(dir, "a5_out_c2.json", doc);
  }
  {
    std::vector<std::vector<int>> gens = {{1, 2, 3, 4, 5, 6, 0, 7},
                                          {7, 6, 3, 2, 5, 4, 1, 0}};
    perm_closure psl = group_from_permutations(8, gens);
    json doc{{"group", permutation_group(8, gens)},
             {"gamma", gamma_table(cat::cyclic(2))},
             {"action",
              json::array({identity_images((int)psl.elements.size())})}};
    emit(dir, "psl27_triv.json", doc);
  }
  {
    // two disjoint copies of A_5 on ten points, swapped by (0 5)(1 6)...
    std::vector<std::vector<int>> gens = {
        {1, 2, 0, 3, 4, 5, 6, 7, 8, 9},
        {1, 2, 3, 4, 0, 5, 6, 7, 8, 9},
        {0, 1, 2, 3, 4, 6, 7, 5, 8, 9},
        {0, 1, 2, 3, 4, 6, 7, 8, 9, 5}};
    perm_closure sq = group_from_permutations(10, gens);
    json doc{{"group", permutation_group(10, gens)},
             {"gamma", gamma_table(cat::cyclic(2))},
             {"action",
              json::array({conj_images(sq, {5, 6, 7, 8, 9, 0, 1, 2, 3, 4})})}};
    emit(dir, "a5sq_swap.json", doc);
  }

  // malformed on purpose: the survey must fence this off as an ERROR row
  {
    std::ofstream out(dir / "zz_malformed.json");
    out << "{ \"group\": \"not a real document\"\n";
    std::printf("zz_malformed.json\n");
  }
  return 0;
}
