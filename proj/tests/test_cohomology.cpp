#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "rapcert/aut.hpp"
#include "rapcert/cohomology.hpp"
#include "support/catalog.hpp"
#include "support/modules.hpp"
#include "support/oracles.hpp"

using namespace rapcert;

namespace {

std::vector<std::vector<int>> value_arrays(const std::vector<Cocycle> &cs) {
  std::vector<std::vector<int>> out;
  for (const Cocycle &c : cs)
    out.push_back(c.values);
  std::sort(out.begin(), out.end());
  return out;
}

// canonical partition of Z^1 induced by an H1Set, for comparing with the
// reference orbit flooding
std::vector<std::vector<std::vector<int>>> partition_of(const H1Set &h) {
  std::vector<std::vector<std::vector<int>>> parts(h.classes.size());
  for (const auto &kv : h.class_of)
    parts[kv.second].push_back(kv.first);
  for (auto &p : parts)
    std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end());
  return parts;
}

GaloisModule q8_conj_i(int gamma_order) {
  GroupRef q8 = cat::dicyclic(8);
  return cat::cyclic_action(gamma_order, q8, inner_automorphism(*q8, 1));
}

std::vector<GaloisModule> sample_modules() {
  std::vector<GaloisModule> out;
  out.push_back(cat::inversion_module(cat::cyclic(3)));
  out.push_back(cat::inversion_module(cat::cyclic(4)));
  out.push_back(cat::inversion_module(cat::cyclic(5)));
  out.push_back(cat::inversion_module(cat::abelian({4, 2})));
  out.push_back(cat::trivial_over(cat::cyclic(2), cat::dihedral(6)));
  out.push_back(cat::trivial_over(cat::cyclic(2), cat::alt(4)));
  out.push_back(cat::trivial_over(cat::cyclic(2), cat::dicyclic(8)));
  out.push_back(cat::trivial_over(cat::elementary(2, 2), cat::dihedral(8)));
  out.push_back(cat::trivial_over(cat::cyclic(4), cat::dihedral(6)));
  GroupRef s3 = cat::dihedral(6);
  out.push_back(cat::cyclic_action(2, s3, inner_automorphism(*s3, 3)));
  out.push_back(q8_conj_i(2));
  out.push_back(q8_conj_i(4));
  GroupMap rot;
  rot.img = {0, 2, 3, 1};
  out.push_back(cat::cyclic_action(3, cat::elementary(2, 2), rot));
  GroupMap d4o;
  d4o.img = {0, 3, 2, 1, 5, 4, 7, 6};
  out.push_back(cat::cyclic_action(2, cat::dihedral(8), d4o));
  // S4 under conjugation by a 4-cycle through C4
  GroupRef s4 = cat::sym(4);
  int four = -1;
  for (int x = 1; x < 24; ++x)
    if (s4->element_order(x) == 4)
      four = x;
  out.push_back(cat::cyclic_action(4, s4, inner_automorphism(*s4, four)));
  return out;
}

} // namespace

TEST_CASE("cocycle enumeration: frozen counts and full set equality") {
  struct row {
    GaloisModule m;
    std::size_t z1, classes;
  };
  std::vector<row> rows;
  rows.push_back({cat::inversion_module(cat::cyclic(3)), 3, 1});
  rows.push_back({cat::inversion_module(cat::cyclic(4)), 4, 2});
  rows.push_back({cat::inversion_module(cat::cyclic(5)), 5, 1});
  rows.push_back({cat::trivial_over(cat::cyclic(2), cat::dihedral(6)), 4, 2});
  rows.push_back({cat::trivial_over(cat::cyclic(2), cat::alt(4)), 4, 2});
  rows.push_back({cat::trivial_over(cat::cyclic(2), cat::dicyclic(8)), 2, 2});
  rows.push_back({cat::trivial_over(cat::cyclic(2), cat::dihedral(8)), 6, 4});
  rows.push_back({q8_conj_i(2), 6, 3});
  rows.push_back({q8_conj_i(4), 8, 5});
  {
    GroupMap rot;
    rot.img = {0, 2, 3, 1};
    rows.push_back({cat::cyclic_action(3, cat::elementary(2, 2), rot), 4, 1});
    GroupMap d4o;
    d4o.img = {0, 3, 2, 1, 5, 4, 7, 6};
    rows.push_back({cat::cyclic_action(2, cat::dihedral(8), d4o), 4, 1});
    GroupRef s3 = cat::dihedral(6);
    rows.push_back({cat::cyclic_action(2, s3, inner_automorphism(*s3, 3)), 4, 2});
  }
  for (const row &r : rows) {
    std::vector<Cocycle> zs = enumerate_cocycles(r.m);
    CHECK(zs.size() == r.z1);
    CHECK(value_arrays(zs) == oracle::naive_cocycles(r.m));
    CHECK(h1(r.m).classes.size() == r.classes);
  }
}

TEST_CASE("every enumerated cocycle satisfies the law at every pair") {
  for (const GaloisModule &m : sample_modules()) {
    for (const Cocycle &c : enumerate_cocycles(m)) {
      CHECK(is_cocycle(m, c.values));
      for (int s = 0; s < m.g().n; ++s)
        for (int t = 0; t < m.g().n; ++t)
          CHECK(c.values[m.g().mul(s, t)] ==
                m.a().mul(c.values[s], m.act(s, c.values[t])));
    }
  }
}

TEST_CASE("cocycle enumeration is sorted and duplicate-free") {
  for (const GaloisModule &m : sample_modules()) {
    std::vector<Cocycle> zs = enumerate_cocycles(m);
    for (std::size_t i = 0; i + 1 < zs.size(); ++i)
      CHECK(zs[i].values < zs[i + 1].values);
  }
}

TEST_CASE("class partition agrees with the orbit-flooding reference") {
  for (const GaloisModule &m : sample_modules()) {
    H1Set h = h1(m);
    CHECK(partition_of(h) == oracle::naive_h1_classes(m));
    // class sizes sum to |Z^1|
    std::size_t total = 0;
    std::vector<std::size_t> sizes(h.classes.size(), 0);
    for (const auto &kv : h.class_of) {
      ++sizes[kv.second];
      ++total;
    }
    CHECK(total == enumerate_cocycles(m).size());
    for (std::size_t s : sizes)
      CHECK(s > 0);
    // representatives are the smallest members of their classes
    for (std::size_t i = 0; i < h.classes.size(); ++i) {
      CHECK(h.class_of.at(h.classes[i].values) == (int)i);
      for (const auto &kv : h.class_of)
        if (kv.second == (int)i)
          CHECK(h.classes[i].values <= kv.first);
    }
    // the distinguished class holds the trivial cocycle
    CHECK(h.class_of.at(std::vector<int>(m.g().n, 0)) == h.distinguished);
  }
}

TEST_CASE("generator DFS agrees with the literal odometer on tiny modules") {
  std::vector<GaloisModule> small = {
      cat::inversion_module(cat::cyclic(3)),
      cat::inversion_module(cat::cyclic(4)),
      cat::trivial_over(cat::cyclic(2), cat::dihedral(6)),
      q8_conj_i(2),
      cat::trivial_over(cat::elementary(2, 2), cat::cyclic(4)),
  };
  GroupMap rot;
  rot.img = {0, 2, 3, 1};
  small.push_back(cat::cyclic_action(3, cat::elementary(2, 2), rot));
  for (const GaloisModule &m : small)
    CHECK(value_arrays(enumerate_cocycles(m)) == oracle::odometer_cocycles(m));
}

TEST_CASE("trivial action gives Hom(gamma, A) up to conjugacy") {
  // frozen: Hom counts are 1 + (number of involutions) for gamma = C2
  struct row {
    GroupRef gamma, a;
    std::size_t homs, classes;
  };
  std::vector<row> rows = {
      {cat::cyclic(2), cat::dihedral(6), 4, 2},
      {cat::cyclic(2), cat::alt(4), 4, 2},
      {cat::cyclic(2), cat::dicyclic(8), 2, 2},
      {cat::cyclic(2), cat::dihedral(8), 6, 4},
      {cat::elementary(2, 2), cat::dihedral(6), 10, 4},
      {cat::cyclic(4), cat::dihedral(8), 8, 5},
      {cat::elementary(2, 3), cat::dihedral(6), 22, 8},
      {cat::elementary(2, 4), cat::cyclic(6), 16, 16},
  };
  for (const row &r : rows) {
    GaloisModule m = cat::trivial_over(r.gamma, r.a);
    std::vector<Cocycle> zs = enumerate_cocycles(m);
    INFO("gamma order " << r.gamma->n << " on module order " << r.a->n);
    CHECK(zs.size() == r.homs);
    // with a trivial action every cocycle is a homomorphism
    for (const Cocycle &c : zs)
      for (int s = 0; s < m.g().n; ++s)
        for (int t = 0; t < m.g().n; ++t)
          CHECK(c.values[m.g().mul(s, t)] ==
                m.a().mul(c.values[s], c.values[t]));
    H1Set h = h1(m);
    CHECK(h.classes.size() == r.classes);
    CHECK(partition_of(h) == oracle::naive_h1_classes(m));
  }
}

TEST_CASE("cocycle enumeration bounds") {
  CHECK_THROWS_AS(
      enumerate_cocycles(cat::trivial_over(cat::elementary(2, 5), cat::cyclic(2))),
      bound_error); // gamma order 32 > 16
  CHECK_THROWS_AS(
      enumerate_cocycles(cat::trivial_over(cat::cyclic(2), cat::cyclic(64))),
      bound_error); // module order 64 > 60
  limits tight;
  tight.max_h1_module = 4;
  CHECK_THROWS_AS(
      enumerate_cocycles(cat::inversion_module(cat::cyclic(5)), tight),
      bound_error);
  limits loose;
  loose.max_h1_module = 64;
  CHECK(enumerate_cocycles(cat::trivial_over(cat::cyclic(2), cat::cyclic(64)),
                           loose)
            .size() == 2);
}

TEST_CASE("involution places") {
  CHECK(all_involution_places(*cat::cyclic(2)).involutions ==
        std::vector<int>{1});
  CHECK(all_involution_places(*cat::cyclic(3)).involutions.empty());
  CHECK(all_involution_places(*cat::elementary(2, 2)).involutions ==
        std::vector<int>{1, 2, 3});
  CHECK(all_involution_places(*cat::cyclic(8)).involutions ==
        std::vector<int>{4});
  CHECK(all_involution_places(*cat::dicyclic(8)).involutions ==
        std::vector<int>{2});
  CHECK(all_involution_places(*cat::dihedral(8)).involutions.size() == 5);
}

TEST_CASE("place restriction") {
  GaloisModule m = q8_conj_i(4);
  // the only involution of C4 acts by conj(i^2) = identity
  PlaceRestriction p = place_module(m, 2);
  CHECK(p.local.g().n == 2);
  CHECK(p.embed == std::vector<int>{0, 2});
  CHECK(p.local.rho[1] == identity_map(8));
  for (const Cocycle &c : enumerate_cocycles(m)) {
    Cocycle r = restrict_cocycle(p, c);
    CHECK(is_cocycle(p.local, r.values));
    CHECK(r.values[1] == c.values[2]);
  }
  // the identity place gives the trivial local quotient
  PlaceRestriction pid = place_module(m, 0);
  CHECK(pid.local.g().n == 1);
  CHECK_THROWS_AS(place_module(m, 1), input_error); // order 4, not a place
}

TEST_CASE("restriction commutes with twisting") {
  for (const GaloisModule &m : sample_modules()) {
    std::vector<Cocycle> zs = enumerate_cocycles(m);
    LocalPlaceModel places = all_involution_places(m.g());
    for (const Cocycle &sigma : zs) {
      GaloisModule tw = twist_action(m, sigma.values);
      for (int c : places.involutions) {
        PlaceRestriction before = place_module(m, c);
        PlaceRestriction after = place_module(tw, c);
        GaloisModule local_twist = twist_action(
            before.local, restrict_cocycle(before, sigma).values);
        for (int s = 0; s < after.local.g().n; ++s)
          CHECK(after.local.rho[s] == local_twist.rho[s]);
      }
    }
  }
}

TEST_CASE("surjectivity report: frozen examples") {
  // C3 with inversion: one global class, one local class
  {
    GaloisModule m = cat::inversion_module(cat::cyclic(3));
    SurjectivityReport r =
        real_approx_surjective(m, all_involution_places(m.g()));
    CHECK(r.surjective);
    CHECK_FALSE(r.finite_model_only);
    CHECK(r.global_classes == 1);
    CHECK(r.local_class_counts == std::vector<int>{1});
    CHECK(r.tuple_count == 1);
    CHECK(r.missing_tuple.empty());
  }
  // C4 with inversion: two global classes map onto two local classes
  {
    GaloisModule m = cat::inversion_module(cat::cyclic(4));
    SurjectivityReport r =
        real_approx_surjective(m, all_involution_places(m.g()));
    CHECK(r.surjective);
    CHECK(r.global_classes == 2);
    CHECK(r.local_class_counts == std::vector<int>{2});
  }
  // no places at all: the empty product is always hit
  {
    GaloisModule m = q8_conj_i(2);
    SurjectivityReport r = real_approx_surjective(m, LocalPlaceModel{});
    CHECK(r.surjective);
    CHECK(r.tuple_count == 1);
  }
}

TEST_CASE("surjectivity matches a reference tuple scan") {
  for (const GaloisModule &m : sample_modules()) {
    LocalPlaceModel places = all_involution_places(m.g());
    SurjectivityReport r = real_approx_surjective(m, places);
    // reference: restrict every global representative, collect tuples of
    // reference-class indices, compare coverage
    std::vector<std::vector<std::vector<std::vector<int>>>> local_classes;
    std::vector<PlaceRestriction> locals;
    long long tuples = 1;
    for (int c : places.involutions) {
      locals.push_back(place_module(m, c));
      local_classes.push_back(oracle::naive_h1_classes(locals.back().local));
      tuples *= (long long)local_classes.back().size();
    }
    CHECK(r.tuple_count == tuples);
    auto class_index = [](const std::vector<std::vector<std::vector<int>>> &cls,
                          const std::vector<int> &values) {
      for (std::size_t i = 0; i < cls.size(); ++i)
        if (std::binary_search(cls[i].begin(), cls[i].end(), values))
          return (int)i;
      return -1;
    };
    std::set<std::vector<int>> covered;
    for (const auto &cls : oracle::naive_h1_classes(m)) {
      std::vector<int> tuple;
      for (std::size_t v = 0; v < locals.size(); ++v) {
        Cocycle rep;
        rep.values = cls[0];
        int idx = class_index(local_classes[v],
                              restrict_cocycle(locals[v], rep).values);
        REQUIRE(idx >= 0);
        tuple.push_back(idx);
      }
      covered.insert(tuple);
    }
    bool expect = (long long)covered.size() == tuples;
    CHECK(r.surjective == expect);
    CHECK(r.finite_model_only == !expect);
    if (!expect)
      CHECK(r.missing_tuple.size() == places.involutions.size());
  }
}

TEST_CASE("surjectivity respects the tuple budget") {
  limits tight;
  tight.max_local_product = 1;
  GaloisModule m = cat::inversion_module(cat::cyclic(4));
  CHECK_THROWS_AS(
      real_approx_surjective(m, all_involution_places(m.g()), tight),
      bound_error);
}

TEST_CASE("twisting bijection") {
  for (const GaloisModule &m : sample_modules()) {
    H1Set target = h1(m);
    for (const Cocycle &sigma : enumerate_cocycles(m)) {
      TwistBijection tb = twisting_bijection(m, sigma);
      // class_map is a bijection source -> target
      REQUIRE(tb.source.classes.size() == target.classes.size());
      std::vector<char> hit(target.classes.size(), 0);
      for (int t : tb.class_map) {
        REQUIRE(t >= 0);
        REQUIRE(t < (int)hit.size());
        CHECK(!hit[t]);
        hit[t] = 1;
      }
      // it maps [tau] to [tau * sigma], checked on every representative
      for (std::size_t i = 0; i < tb.source.classes.size(); ++i) {
        std::vector<int> prod(m.g().n);
        for (int s = 0; s < m.g().n; ++s)
          prod[s] =
              m.a().mul(tb.source.classes[i].values[s], sigma.values[s]);
        CHECK(target.class_of.at(prod) == tb.class_map[i]);
      }
      // the distinguished class lands on the class of sigma
      CHECK(tb.distinguished_image == target.class_of.at(sigma.values));
      CHECK(tb.class_map[tb.source.distinguished] == tb.distinguished_image);

      // the bijection induced by the inverse twist is the inverse map
      std::vector<int> sinv(m.g().n);
      for (int s = 0; s < m.g().n; ++s)
        sinv[s] = m.a().inv(sigma.values[s]);
      Cocycle sigma_inv;
      sigma_inv.values = sinv;
      TwistBijection back = twisting_bijection(tb.twisted, sigma_inv);
      REQUIRE(back.source.classes.size() == tb.class_map.size());
      for (std::size_t i = 0; i < back.class_map.size(); ++i)
        CHECK(tb.class_map[back.class_map[i]] == (int)i);
    }
  }
}

TEST_CASE("sylow image criterion") {
  // sweep: every stable subgroup, every cocycle; the criterion cross-checks
  // itself internally, here we re-check against the class partition
  for (const GaloisModule &m : sample_modules()) {
    if (m.g().n > 4 || m.a().n > 24)
      continue;
    std::vector<std::vector<std::vector<int>>> classes =
        oracle::naive_h1_classes(m);
    for (const Subgroup &s : oracle::all_subgroups(m.a())) {
      if (!is_stable(m, s))
        continue;
      for (const Cocycle &alpha : enumerate_cocycles(m)) {
        SylowImageResult r = sylow_image_criterion(m, s, alpha);
        // reference: alpha lies in the image iff its class holds a cocycle
        // with values inside s
        bool expect = false;
        for (const auto &cls : classes) {
          if (!std::binary_search(cls.begin(), cls.end(), alpha.values))
            continue;
          for (const std::vector<int> &c : cls) {
            bool inside = true;
            for (int v : c)
              inside = inside && s.contains(v);
            expect = expect || inside;
          }
        }
        CHECK(r.in_image == expect);
        if ((m.a().n / s.order()) % 2 == 1 && s.order() % 2 == 0)
          CHECK(r.in_image); // odd index over a 2-group target
        if (r.in_image && m.a().n / s.order() % 2 == 1)
          CHECK(r.fixed_coset_rep.has_value());
      }
    }
    // unstable subgroups are refused
    for (const Subgroup &s : oracle::all_subgroups(m.a()))
      if (!is_stable(m, s)) {
        Cocycle triv;
        triv.values.assign(m.g().n, 0);
        CHECK_THROWS_AS(sylow_image_criterion(m, s, triv), contract_error);
        break;
      }
  }
}

TEST_CASE("odd set fixed point") {
  CHECK(odd_set_fixed_point(5, {1, 0, 2, 4, 3}) == 2);
  CHECK(odd_set_fixed_point(1, {0}) == 0);
  CHECK(odd_set_fixed_point(3, {0, 2, 1}) == 0);
  CHECK(odd_set_fixed_point(7, {1, 0, 3, 2, 5, 4, 6}) == 6);
}

TEST_CASE("lifting cocycles through extensions") {
  // S4 / V4 = S3: lift every cocycle of the quotient
  GroupRef s4 = cat::sym(4);
  GaloisModule m = cat::trivial_over(cat::cyclic(2), s4);
  Subgroup v4;
  for (const Subgroup &s : normal_subgroups(*s4))
    if (s.order() == 4)
      v4 = s;
  module_quotient_result q = module_quotient(m, v4);
  CHECK(q.quot.a().n == 6);
  for (const Cocycle &sigma : enumerate_cocycles(q.quot)) {
    std::optional<Cocycle> lift = lift_through_extension(m, q, sigma);
    REQUIRE(lift.has_value());
    CHECK(is_cocycle(m, lift->values));
    for (int s = 0; s < m.g().n; ++s)
      CHECK(q.ext.proj[lift->values[s]] == sigma.values[s]);
  }

  // C4 -> C2 with trivial C2-action: the generator cocycle has no lift
  GaloisModule c4m = cat::trivial_over(cat::cyclic(2), cat::cyclic(4));
  Subgroup two = subgroup_closure(c4m.a(), {2});
  module_quotient_result q2 = module_quotient(c4m, two);
  Cocycle gen;
  gen.values = {0, 1};
  REQUIRE(is_cocycle(q2.quot, gen.values));
  CHECK_FALSE(lift_through_extension(c4m, q2, gen).has_value());
}
