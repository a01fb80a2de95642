#include "rapcert/aut.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rapcert {

namespace {

// generator-image backtracking shared by automorphism_group and
// find_isomorphism. assigns images for the greedy generators of src one at a
// time, closing the partial map over the generated subgroup and rejecting
// any multiplicativity or injectivity violation as early as possible.
struct map_search {
  const FiniteGroup &src;
  const FiniteGroup &dst;
  std::vector<int> gens;
  std::vector<std::vector<int>> candidates; // per level, order-matched
  bool stop_after_first = false;
  std::size_t cap; // found-count bail-out
  bool cap_hit = false;
  std::vector<GroupMap> found;

  map_search(const FiniteGroup &s, const FiniteGroup &d, std::size_t cap_)
      : src(s), dst(d), cap(cap_) {
    gens = greedy_generators(src);
    candidates.resize(gens.size());
    std::map<int, std::vector<int>> by_order;
    for (std::size_t lvl = 0; lvl < gens.size(); ++lvl) {
      int ord = src.element_order(gens[lvl]);
      auto it = by_order.find(ord);
      if (it == by_order.end()) {
        std::vector<int> c;
        for (int v = 0; v < dst.n; ++v)
          if (dst.element_order(v) == ord)
            c.push_back(v);
        it = by_order.emplace(ord, std::move(c)).first;
      }
      candidates[lvl] = it->second;
    }
  }

  void run() {
    std::vector<int> phi(src.n, -1);
    std::vector<char> used(dst.n, 0);
    phi[0] = 0;
    used[0] = 1;
    std::vector<int> closed{0};
    dfs(0, phi, used, closed);
  }

private:
  void dfs(std::size_t level, const std::vector<int> &phi,
           const std::vector<char> &used, const std::vector<int> &closed) {
    if (cap_hit)
      return;
    if (level == gens.size()) {
      if ((int)closed.size() == src.n && (int)closed.size() == dst.n) {
        found.push_back(GroupMap{phi});
        if (found.size() > cap)
          cap_hit = true;
      }
      return;
    }
    for (int v : candidates[level]) {
      if (used[v])
        continue;
      std::vector<int> phi2 = phi;
      std::vector<char> used2 = used;
      std::vector<int> closed2 = closed;
      if (!extend(level, gens[level], v, phi2, used2, closed2))
        continue;
      dfs(level + 1, phi2, used2, closed2);
      if (cap_hit || (stop_after_first && !found.empty()))
        return;
    }
  }

  // adjoin gen -> v, close the subgroup generated so far, check the
  // multiplication law on every pair touching a new element
  bool extend(std::size_t level, int gen, int v, std::vector<int> &phi,
              std::vector<char> &used, std::vector<int> &closed) {
    std::size_t old_size = closed.size();
    if (phi[gen] != -1)
      return false; // greedy generators never lie in the previous closure
    phi[gen] = v;
    if (used[v])
      return false;
    used[v] = 1;
    closed.push_back(gen);
    for (std::size_t head = 0; head < closed.size(); ++head) {
      int a = closed[head];
      for (std::size_t l = 0; l <= level; ++l) {
        int b = src.mul(a, gens[l]);
        int img = dst.mul(phi[a], phi[gens[l]]);
        if (phi[b] == -1) {
          if (used[img])
            return false;
          phi[b] = img;
          used[img] = 1;
          closed.push_back(b);
        } else if (phi[b] != img) {
          return false;
        }
      }
    }
    std::vector<char> fresh(src.n, 0);
    for (std::size_t i = old_size; i < closed.size(); ++i)
      fresh[closed[i]] = 1;
    for (int a : closed)
      for (int b : closed) {
        if (!fresh[a] && !fresh[b])
          continue;
        if (phi[src.mul(a, b)] != dst.mul(phi[a], phi[b]))
          return false;
      }
    return true;
  }
};

} // namespace

namespace {

// like map_search but without injectivity: all homomorphisms src -> dst
// whose generator images lie in the given candidate sets
struct hom_search {
  const FiniteGroup &src;
  const FiniteGroup &dst;
  const hom_search_spec &spec;
  std::vector<int> gens;
  std::vector<std::vector<int>> candidates;
  bool done = false;
  std::vector<GroupMap> found;

  hom_search(const FiniteGroup &s, const FiniteGroup &d,
             const hom_search_spec &sp)
      : src(s), dst(d), spec(sp) {
    gens = greedy_generators(src);
    candidates.resize(gens.size());
    for (std::size_t lvl = 0; lvl < gens.size(); ++lvl) {
      if (lvl < spec.gen_candidates.size() &&
          !spec.gen_candidates[lvl].empty()) {
        candidates[lvl] = spec.gen_candidates[lvl];
        continue;
      }
      int ord = src.element_order(gens[lvl]);
      for (int v = 0; v < dst.n; ++v)
        if (ord % dst.element_order(v) == 0)
          candidates[lvl].push_back(v);
    }
  }

  void run() {
    std::vector<int> phi(src.n, -1);
    phi[0] = 0;
    std::vector<int> closed{0};
    dfs(0, phi, closed);
  }

  void dfs(std::size_t level, const std::vector<int> &phi,
           const std::vector<int> &closed) {
    if (done)
      return;
    if (level == gens.size()) {
      found.push_back(GroupMap{phi});
      if (found.size() > spec.cap || spec.first_only)
        done = true;
      return;
    }
    for (int v : candidates[level]) {
      std::vector<int> phi2 = phi;
      std::vector<int> closed2 = closed;
      if (!extend(level, gens[level], v, phi2, closed2))
        continue;
      dfs(level + 1, phi2, closed2);
      if (done)
        return;
    }
  }

  bool extend(std::size_t level, int gen, int v, std::vector<int> &phi,
              std::vector<int> &closed) {
    std::size_t old_size = closed.size();
    phi[gen] = v;
    closed.push_back(gen);
    for (std::size_t head = 0; head < closed.size(); ++head) {
      int a = closed[head];
      for (std::size_t l = 0; l <= level; ++l) {
        int b = src.mul(a, gens[l]);
        int img = dst.mul(phi[a], phi[gens[l]]);
        if (phi[b] == -1) {
          phi[b] = img;
          closed.push_back(b);
        } else if (phi[b] != img) {
          return false;
        }
      }
    }
    std::vector<char> fresh(src.n, 0);
    for (std::size_t i = old_size; i < closed.size(); ++i)
      fresh[closed[i]] = 1;
    for (int a : closed)
      for (int b : closed) {
        if (!fresh[a] && !fresh[b])
          continue;
        if (phi[src.mul(a, b)] != dst.mul(phi[a], phi[b]))
          return false;
      }
    return true;
  }
};

} // namespace

std::vector<GroupMap> find_homomorphisms(const FiniteGroup &src,
                                         const FiniteGroup &dst,
                                         const hom_search_spec &spec) {
  hom_search search(src, dst, spec);
  search.run();
  if (!spec.first_only && search.found.size() > spec.cap)
    throw bound_error("homomorphism enumeration exceeded cap");
  std::sort(search.found.begin(), search.found.end(),
            [](const GroupMap &a, const GroupMap &b) { return a.img < b.img; });
  return search.found;
}

int AutGroup::index_of(const GroupMap &f) const {
  // automorphisms are determined by their generator images
  for (std::size_t i = 0; i < maps.size(); ++i) {
    bool ok = true;
    for (int x : g_gens)
      if (maps[i].img[x] != f.img[x]) {
        ok = false;
        break;
      }
    if (ok)
      return (int)i;
  }
  return -1;
}

AutGroup automorphism_group(const FiniteGroup &g, const limits &lim) {
  if (g.n > lim.max_aut_order)
    throw bound_error("automorphism search bound: |g| = " +
                      std::to_string(g.n) + " exceeds max_aut_order " +
                      std::to_string(lim.max_aut_order));
  map_search search(g, g, (std::size_t)lim.max_aut_size);
  search.run();
  if (search.cap_hit)
    throw bound_error("more than " + std::to_string(lim.max_aut_size) +
                      " automorphisms, raising max_aut_size would help");
  std::sort(search.found.begin(), search.found.end(),
            [](const GroupMap &a, const GroupMap &b) { return a.img < b.img; });

  AutGroup aut;
  aut.maps = std::move(search.found);
  aut.g_gens = greedy_generators(g);
  int m = (int)aut.maps.size();

  // composites are identified by generator images alone
  std::map<std::vector<int>, int> key_to_idx;
  auto key_of = [&](const GroupMap &f) {
    std::vector<int> k;
    k.reserve(aut.g_gens.size());
    for (int x : aut.g_gens)
      k.push_back(f.img[x]);
    return k;
  };
  for (int i = 0; i < m; ++i)
    key_to_idx[key_of(aut.maps[i])] = i;
  std::vector<std::uint16_t> tab((std::size_t)m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<int> k;
      k.reserve(aut.g_gens.size());
      for (int x : aut.g_gens)
        k.push_back(aut.maps[i].img[aut.maps[j].img[x]]);
      tab[(std::size_t)i * m + j] = (std::uint16_t)key_to_idx.at(k);
    }
  aut.table = adopt_table(m, std::move(tab));
  return aut;
}

std::optional<GroupMap> find_isomorphism(const FiniteGroup &g,
                                         const FiniteGroup &h,
                                         const limits &lim) {
  if (g.n != h.n)
    return std::nullopt;
  if (g.n > lim.max_aut_order)
    throw bound_error("isomorphism search bound: |g| = " +
                      std::to_string(g.n) + " exceeds max_aut_order " +
                      std::to_string(lim.max_aut_order));
  map_search search(g, h, (std::size_t)lim.max_aut_size);
  search.stop_after_first = true;
  search.run();
  if (search.found.empty())
    return std::nullopt;
  return search.found.front();
}

InnerOuter inner_and_outer(const FiniteGroup &g, const AutGroup &aut) {
  std::vector<int> inner;
  std::set<int> seen;
  for (int a = 0; a < g.n; ++a) {
    int idx = aut.index_of(inner_automorphism(g, a));
    if (idx < 0)
      throw contract_error("inner automorphism missing from Aut table");
    if (seen.insert(idx).second)
      inner.push_back(idx);
  }
  std::sort(inner.begin(), inner.end());
  InnerOuter io;
  io.inner = Subgroup{std::move(inner)};
  io.out = quotient(aut.table, io.inner);
  return io;
}

bool is_simple(const FiniteGroup &g) {
  return g.n > 1 && normal_subgroups(g).size() == 2;
}

// ---- semisimple structure ----------------------------------------------------

std::optional<semisimple_structure> analyze_semisimple(const FiniteGroup &g,
                                                       const limits &lim) {
  if (g.n == 1 || is_abelian(g))
    return std::nullopt;
  semisimple_structure st;
  st.factors = minimal_normal_subgroups(g);
  long long prod = 1;
  for (const auto &f : st.factors)
    prod *= f.order();
  if (prod != g.n)
    return std::nullopt;
  {
    std::vector<int> seed;
    for (const auto &f : st.factors)
      seed.insert(seed.end(), f.members.begin(), f.members.end());
    if (subgroup_closure(g, seed).order() != g.n)
      return std::nullopt;
  }
  for (const auto &f : st.factors) {
    st.parts.push_back(subgroup_as_group(g, f));
    const FiniteGroup &fg = st.parts.back().group;
    if (is_abelian(fg) || !is_simple(fg))
      return std::nullopt;
  }

  // coordinates: x = x_1 ... x_k with x_i in factor i. peel factors left to
  // right through membership in the closure of the remaining ones.
  int k = (int)st.factors.size();
  st.coord.assign(k, std::vector<int>(g.n, 0));
  std::vector<int> rest(g.n);
  for (int i = 0; i < g.n; ++i)
    rest[i] = i;
  std::vector<int> carry = rest; // carry[x]: what is left to peel
  for (int i = 0; i < k; ++i) {
    std::vector<char> tail(g.n, 0);
    {
      std::vector<int> seed;
      for (int j = i + 1; j < k; ++j)
        seed.insert(seed.end(), st.factors[j].members.begin(),
                    st.factors[j].members.end());
      for (int x : subgroup_closure(g, seed).members)
        tail[x] = 1;
    }
    for (int x = 0; x < g.n; ++x) {
      int y = carry[x];
      int comp = -1;
      for (int a : st.factors[i].members)
        if (tail[g.mul(g.inv(a), y)]) {
          comp = a;
          break;
        }
      if (comp < 0)
        return std::nullopt;
      st.coord[i][x] = comp;
      carry[x] = g.mul(g.inv(comp), y);
    }
  }
  for (int x = 0; x < g.n; ++x)
    if (carry[x] != 0)
      return std::nullopt;

  st.iso_class.assign(k, -1);
  st.iso_from_first.resize(k);
  int classes = 0;
  for (int i = 0; i < k; ++i) {
    if (st.iso_class[i] != -1)
      continue;
    st.iso_class[i] = classes;
    st.iso_from_first[i] = identity_map(st.parts[i].group.n);
    for (int j = i + 1; j < k; ++j) {
      if (st.iso_class[j] != -1 ||
          st.parts[j].group.n != st.parts[i].group.n)
        continue;
      auto iso = find_isomorphism(st.parts[i].group, st.parts[j].group, lim);
      if (iso) {
        st.iso_class[j] = classes;
        st.iso_from_first[j] = *iso;
      }
    }
    ++classes;
  }
  return st;
}

namespace {

// rebuild a parent element from its factor components, one swapped in
int assemble(const FiniteGroup &g, const semisimple_structure &st, int x,
             int which, int replacement) {
  int acc = 0;
  for (std::size_t i = 0; i < st.factors.size(); ++i)
    acc = g.mul(acc, (int)i == which ? replacement : st.coord[i][x]);
  return acc;
}

std::vector<GroupMap> structural_aut_generators(const FiniteGroup &g,
                                                const semisimple_structure &st,
                                                const limits &lim) {
  std::vector<GroupMap> out;
  int k = (int)st.factors.size();
  for (int i = 0; i < k; ++i) {
    AutGroup aut = automorphism_group(st.parts[i].group, lim);
    for (int ai : greedy_generators(aut.table)) {
      const GroupMap &alpha = aut.maps[ai];
      GroupMap ext;
      ext.img.resize(g.n);
      for (int x = 0; x < g.n; ++x) {
        int comp = st.parts[i].from_parent[st.coord[i][x]];
        ext.img[x] =
            assemble(g, st, x, i, st.parts[i].to_parent[alpha.img[comp]]);
      }
      out.push_back(std::move(ext));
    }
  }
  // swap each factor with the first member of its class: these star
  // transpositions generate the symmetric group on every class block
  for (int j = 1; j < k; ++j) {
    int i = -1;
    for (int t = 0; t < j; ++t)
      if (st.iso_class[t] == st.iso_class[j]) {
        i = t;
        break;
      }
    if (i < 0)
      continue;
    // psi: factor i group -> factor j group through the class-first copy
    GroupMap psi = compose(st.iso_from_first[j],
                           inverse_map(st.iso_from_first[i]));
    GroupMap psi_inv = inverse_map(psi);
    GroupMap swap;
    swap.img.resize(g.n);
    for (int x = 0; x < g.n; ++x) {
      int ci = st.parts[i].from_parent[st.coord[i][x]];
      int cj = st.parts[j].from_parent[st.coord[j][x]];
      int acc = 0;
      for (int t = 0; t < k; ++t) {
        int piece;
        if (t == i)
          piece = st.parts[i].to_parent[psi_inv.img[cj]];
        else if (t == j)
          piece = st.parts[j].to_parent[psi.img[ci]];
        else
          piece = st.coord[t][x];
        acc = g.mul(acc, piece);
      }
      swap.img[x] = acc;
    }
    out.push_back(std::move(swap));
  }
  // inner generators close the rest of Aut on a semisimple group
  for (int x : greedy_generators(g))
    out.push_back(inner_automorphism(g, x));
  return out;
}

} // namespace

std::vector<GroupMap> aut_generators(const FiniteGroup &g, const limits &lim) {
  if (g.n <= lim.max_aut_order) {
    AutGroup aut = automorphism_group(g, lim);
    std::vector<GroupMap> gens;
    for (int i : greedy_generators(aut.table))
      gens.push_back(aut.maps[i]);
    if (gens.empty())
      gens.push_back(identity_map(g.n));
    return gens;
  }
  auto st = analyze_semisimple(g, lim);
  if (!st)
    throw bound_error(
        "no automorphism generators: order " + std::to_string(g.n) +
        " exceeds max_aut_order and the group is not semisimple");
  return structural_aut_generators(g, *st, lim);
}

bool is_characteristically_simple(const FiniteGroup &g, const limits &lim) {
  if (g.n == 1)
    return false;
  if (is_abelian(g)) {
    // elementary abelian: a prime p with x^p = e for every x
    int p = g.element_order(1);
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0)
        return false;
    for (int x = 1; x < g.n; ++x)
      if (g.element_order(x) != p)
        return false;
    return true;
  }
  auto st = analyze_semisimple(g, lim);
  if (!st)
    return false;
  for (int c : st->iso_class)
    if (c != 0)
      return false;
  return true;
}

std::vector<Subgroup> characteristic_subgroups(const FiniteGroup &g,
                                               const limits &lim) {
  std::vector<GroupMap> gens = aut_generators(g, lim);

  // principal characteristic subgroups: closures of element orbits under Aut
  std::vector<Subgroup> principal;
  {
    std::vector<char> seen(g.n, 0);
    std::set<std::vector<int>> dedupe;
    for (int a = 1; a < g.n; ++a) {
      if (seen[a])
        continue;
      std::vector<int> orbit{a};
      seen[a] = 1;
      for (std::size_t head = 0; head < orbit.size(); ++head)
        for (const auto &f : gens) {
          int b = f.img[orbit[head]];
          if (!seen[b]) {
            seen[b] = 1;
            orbit.push_back(b);
          }
        }
      Subgroup cl = subgroup_closure(g, orbit);
      if (dedupe.insert(cl.members).second)
        principal.push_back(std::move(cl));
    }
  }
  std::set<std::vector<int>> all;
  std::vector<Subgroup> list{trivial_subgroup()};
  all.insert(list[0].members);
  for (std::size_t head = 0; head < list.size(); ++head) {
    Subgroup cur = list[head];
    for (const auto &p : principal) {
      std::vector<int> seed = cur.members;
      seed.insert(seed.end(), p.members.begin(), p.members.end());
      Subgroup join = subgroup_closure(g, seed);
      if (all.insert(join.members).second)
        list.push_back(std::move(join));
    }
  }
  if (g.n > 1 && !all.count(whole_group(g).members))
    list.push_back(whole_group(g));
  std::sort(list.begin(), list.end(), [](const Subgroup &a, const Subgroup &b) {
    if (a.order() != b.order())
      return a.order() < b.order();
    return a.members < b.members;
  });
  return list;
}

Subgroup maximal_proper_characteristic(const FiniteGroup &g,
                                       const limits &lim) {
  if (g.n == 1)
    throw contract_error("trivial group has no proper subgroup");
  std::vector<Subgroup> chars = characteristic_subgroups(g, lim);
  std::vector<Subgroup> proper;
  for (auto &s : chars)
    if (s.order() > 1 && s.order() < g.n)
      proper.push_back(std::move(s));
  if (proper.empty())
    throw contract_error("characteristically simple group");
  Subgroup best;
  for (const auto &a : proper) {
    bool maximal = true;
    for (const auto &b : proper)
      if (b.order() > a.order() &&
          std::includes(b.members.begin(), b.members.end(), a.members.begin(),
                        a.members.end())) {
        maximal = false;
        break;
      }
    if (!maximal)
      continue;
    if (best.members.empty() || a.order() > best.order() ||
        (a.order() == best.order() && a.members < best.members))
      best = a;
  }
  return best;
}

std::vector<FiniteGroup> composition_factors(const FiniteGroup &g,
                                             series_policy policy) {
  std::vector<FiniteGroup> factors;
  FiniteGroup cur = g;
  while (cur.n > 1) {
    std::vector<Subgroup> normals = normal_subgroups(cur);
    normals.pop_back(); // whole group
    std::vector<Subgroup> maximal;
    for (const auto &a : normals) {
      bool is_max = true;
      for (const auto &b : normals)
        if (b.order() > a.order() &&
            std::includes(b.members.begin(), b.members.end(),
                          a.members.begin(), a.members.end())) {
          is_max = false;
          break;
        }
      if (is_max)
        maximal.push_back(a);
    }
    Subgroup pick = maximal.front();
    for (const auto &a : maximal) {
      bool better;
      if (policy == series_policy::largest_kernel)
        better = a.order() > pick.order() ||
                 (a.order() == pick.order() && a.members < pick.members);
      else
        better = a.order() < pick.order() ||
                 (a.order() == pick.order() && a.members < pick.members);
      if (better)
        pick = a;
    }
    factors.push_back(quotient(cur, pick).quotient);
    cur = subgroup_as_group(cur, pick).group;
  }
  return factors;
}

bool is_antisolvable(const FiniteGroup &g) {
  for (const auto &f : composition_factors(g))
    if (is_abelian(f))
      return false;
  return true;
}

power_decomposition direct_power_decomposition(const FiniteGroup &g,
                                               const limits &lim) {
  if (!is_characteristically_simple(g, lim))
    throw contract_error("not characteristically simple");
  power_decomposition out;

  if (is_abelian(g)) {
    out.abelian_case = true;
    int p = g.element_order(1);
    // basis by greedy independence
    std::vector<int> basis;
    Subgroup span = trivial_subgroup();
    while (span.order() < g.n) {
      int pick = -1;
      for (int x = 1; x < g.n; ++x)
        if (!span.contains(x)) {
          pick = x;
          break;
        }
      basis.push_back(pick);
      std::vector<int> seed = span.members;
      seed.push_back(pick);
      span = subgroup_closure(g, seed);
    }
    out.copies = (int)basis.size();
    std::vector<std::vector<int>> ctab(p, std::vector<int>(p));
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        ctab[a][b] = (a + b) % p;
    out.factor = validate_group(ctab, lim);
    FiniteGroup power = out.factor;
    for (int i = 1; i < out.copies; ++i)
      power = direct_product(power, out.factor, lim);
    out.iso.img.resize(power.n);
    for (int idx = 0; idx < power.n; ++idx) {
      int rest = idx, acc = 0;
      for (int i = out.copies - 1; i >= 0; --i) {
        int digit = rest % p;
        rest /= p;
        acc = g.mul(g.pow(basis[i], digit), acc);
      }
      out.iso.img[idx] = acc;
    }
    out.power = std::move(power);
  } else {
    auto st = analyze_semisimple(g, lim);
    if (!st)
      throw contract_error("semisimple analysis failed on char-simple group");
    out.copies = (int)st->factors.size();
    out.factor = st->parts[0].group;
    FiniteGroup power = out.factor;
    for (int i = 1; i < out.copies; ++i)
      power = direct_product(power, out.factor, lim);
    out.iso.img.resize(power.n);
    int fn = out.factor.n;
    for (int idx = 0; idx < power.n; ++idx) {
      int rest = idx, acc = 0;
      std::vector<int> digits(out.copies);
      for (int i = out.copies - 1; i >= 0; --i) {
        digits[i] = rest % fn;
        rest /= fn;
      }
      for (int i = 0; i < out.copies; ++i)
        acc = g.mul(
            acc, st->parts[i].to_parent[st->iso_from_first[i].img[digits[i]]]);
      out.iso.img[idx] = acc;
    }
    out.power = std::move(power);
  }
  if (!is_bijection(out.iso) ||
      !is_homomorphism(out.power, g, out.iso))
    throw contract_error("power decomposition produced a non-isomorphism");
  return out;
}

} // namespace rapcert
