#include "rapcert/group.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <queue>
#include <set>

namespace rapcert {

int FiniteGroup::pow(int a, long long e) const {
  if (e < 0)
    return pow(inv(a), -e);
  int r = 0, b = a;
  while (e > 0) {
    if (e & 1)
      r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

int FiniteGroup::element_order(int a) const {
  int ord = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++ord;
  }
  return ord;
}

GroupRef share(FiniteGroup g) {
  return std::make_shared<const FiniteGroup>(std::move(g));
}

FiniteGroup trivial_group() {
  FiniteGroup g;
  g.n = 1;
  g.tab = {0};
  g.invv = {0};
  return g;
}

FiniteGroup adopt_table(int n, std::vector<std::uint16_t> tab) {
  FiniteGroup g;
  g.n = n;
  g.tab = std::move(tab);
  g.invv.assign(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g.mul(a, b) == 0) {
        g.invv[a] = (std::uint16_t)b;
        break;
      }
    }
  }
  return g;
}

namespace {

// greedy generating set of an unvalidated table: BFS closure by
// right-multiplication from 0, adjoining the smallest uncovered element
std::vector<int> raw_greedy_generators(int n,
                                       const std::vector<std::uint16_t> &tab) {
  std::vector<int> gens;
  std::vector<char> seen(n, 0);
  std::vector<int> list;
  seen[0] = 1;
  list.push_back(0);
  std::size_t head = 0;
  int missing = 1; // smallest candidate not yet known covered
  for (;;) {
    while (head < list.size()) {
      int a = list[head++];
      for (int x : gens) {
        int b = tab[(std::size_t)a * n + x];
        if (!seen[b]) {
          seen[b] = 1;
          list.push_back(b);
        }
      }
    }
    while (missing < n && seen[missing])
      ++missing;
    if (missing >= n)
      break;
    gens.push_back(missing);
    seen[missing] = 1;
    list.push_back(missing);
  }
  return gens;
}

} // namespace

FiniteGroup validate_group(const std::vector<std::vector<int>> &table,
                           const limits &lim) {
  int n = (int)table.size();
  if (n < 1)
    throw input_error("empty multiplication table");
  if (n > lim.max_table_order)
    throw bound_error("table order " + std::to_string(n) +
                      " exceeds max_table_order " +
                      std::to_string(lim.max_table_order));
  std::vector<std::uint16_t> tab((std::size_t)n * n);
  for (int i = 0; i < n; ++i) {
    if ((int)table[i].size() != n)
      throw input_error("table row " + std::to_string(i) + " has " +
                        std::to_string(table[i].size()) + " entries, want " +
                        std::to_string(n));
    for (int j = 0; j < n; ++j) {
      int v = table[i][j];
      if (v < 0 || v >= n)
        throw input_error("table entry out of range at (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
      tab[(std::size_t)i * n + j] = (std::uint16_t)v;
    }
  }
  auto at = [&](int a, int b) { return (int)tab[(std::size_t)a * n + b]; };

  // associativity first: exhaustive lexicographic triple scan at small
  // orders, Light's generator test above the bound
  if (n <= lim.exhaustive_assoc_order) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (at(at(i, j), k) != at(i, at(j, k)))
            throw group_error(group_defect::not_associative,
                              "not associative at (" + std::to_string(i) +
                                  "," + std::to_string(j) + "," +
                                  std::to_string(k) + ")",
                              i, j, k);
  } else {
    std::vector<int> gens = raw_greedy_generators(n, tab);
    for (int x : gens)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (at(at(a, x), b) != at(a, at(x, b)))
            throw group_error(group_defect::not_associative,
                              "not associative at (" + std::to_string(a) +
                                  "," + std::to_string(x) + "," +
                                  std::to_string(b) + ")",
                              a, x, b);
  }

  for (int a = 0; a < n; ++a)
    if (at(0, a) != a || at(a, 0) != a)
      throw group_error(group_defect::no_identity,
                        "element 0 is not a two-sided identity");

  std::vector<std::uint16_t> invv(n, 0);
  for (int a = 0; a < n; ++a) {
    int found = -1;
    for (int b = 0; b < n; ++b)
      if (at(a, b) == 0 && at(b, a) == 0) {
        found = b;
        break;
      }
    if (found < 0)
      throw group_error(group_defect::no_inverse,
                        "element " + std::to_string(a) + " has no inverse", a);
    invv[a] = (std::uint16_t)found;
  }

  for (int a = 0; a < n; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      if (row[at(a, b)]++)
        throw group_error(group_defect::not_latin,
                          "row " + std::to_string(a) + " repeats an entry", a);
      if (col[at(b, a)]++)
        throw group_error(group_defect::not_latin,
                          "column " + std::to_string(a) + " repeats an entry",
                          a);
    }
  }

  FiniteGroup g;
  g.n = n;
  g.tab = std::move(tab);
  g.invv = std::move(invv);
  return g;
}

perm_closure group_from_permutations(int degree,
                                     const std::vector<std::vector<int>> &gens,
                                     const limits &lim) {
  if (degree < 1)
    throw input_error("permutation degree must be positive");
  for (const auto &p : gens) {
    if ((int)p.size() != degree)
      throw input_error("permutation generator has wrong degree");
    std::vector<char> seen(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || seen[v]++)
        throw input_error("generator is not a permutation");
    }
  }

  std::vector<std::vector<int>> elems;
  std::map<std::vector<int>, int> index;
  std::vector<int> id(degree);
  for (int i = 0; i < degree; ++i)
    id[i] = i;
  elems.push_back(id);
  index[id] = 0;
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto &gen : gens) {
      // product convention (p*q)(x) = p(q(x)): right factor acts first
      std::vector<int> prod(degree);
      for (int x = 0; x < degree; ++x)
        prod[x] = elems[head][gen[x]];
      if (index.emplace(prod, (int)elems.size()).second) {
        elems.push_back(std::move(prod));
        if ((int)elems.size() > lim.max_table_order)
          throw bound_error("permutation closure exceeds max_table_order " +
                            std::to_string(lim.max_table_order));
      }
    }
  }

  int n = (int)elems.size();
  std::vector<std::uint16_t> tab((std::size_t)n * n);
  std::vector<int> prod(degree);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int x = 0; x < degree; ++x)
        prod[x] = elems[i][elems[j][x]];
      tab[(std::size_t)i * n + j] = (std::uint16_t)index.at(prod);
    }

  perm_closure out;
  out.group = adopt_table(n, std::move(tab));
  out.elements = std::move(elems);
  return out;
}

FiniteGroup direct_product(const FiniteGroup &g, const FiniteGroup &h,
                           const limits &lim) {
  long long n = (long long)g.n * h.n;
  if (n > lim.max_table_order)
    throw bound_error("direct product order " + std::to_string(n) +
                      " exceeds max_table_order " +
                      std::to_string(lim.max_table_order));
  int nn = (int)n;
  std::vector<std::uint16_t> tab((std::size_t)nn * nn);
  for (int a1 = 0; a1 < g.n; ++a1)
    for (int b1 = 0; b1 < h.n; ++b1)
      for (int a2 = 0; a2 < g.n; ++a2)
        for (int b2 = 0; b2 < h.n; ++b2)
          tab[(std::size_t)(a1 * h.n + b1) * nn + (a2 * h.n + b2)] =
              (std::uint16_t)(g.mul(a1, a2) * h.n + h.mul(b1, b2));
  return adopt_table(nn, std::move(tab));
}

// ---- maps ------------------------------------------------------------------

GroupMap identity_map(int n) {
  GroupMap f;
  f.img.resize(n);
  for (int i = 0; i < n; ++i)
    f.img[i] = i;
  return f;
}

GroupMap compose(const GroupMap &f, const GroupMap &g) {
  GroupMap r;
  r.img.resize(g.img.size());
  for (std::size_t i = 0; i < g.img.size(); ++i)
    r.img[i] = f.img[g.img[i]];
  return r;
}

GroupMap inverse_map(const GroupMap &f) {
  GroupMap r;
  r.img.assign(f.img.size(), 0);
  for (std::size_t i = 0; i < f.img.size(); ++i)
    r.img[f.img[i]] = (int)i;
  return r;
}

bool is_bijection(const GroupMap &f) {
  std::vector<char> seen(f.img.size(), 0);
  for (int v : f.img) {
    if (v < 0 || v >= (int)f.img.size() || seen[v]++)
      return false;
  }
  return true;
}

bool is_homomorphism(const FiniteGroup &src, const FiniteGroup &dst,
                     const GroupMap &f) {
  if ((int)f.img.size() != src.n)
    return false;
  for (int v : f.img)
    if (v < 0 || v >= dst.n)
      return false;
  for (int a = 0; a < src.n; ++a)
    for (int b = 0; b < src.n; ++b)
      if (f.img[src.mul(a, b)] != dst.mul(f.img[a], f.img[b]))
        return false;
  return true;
}

bool is_automorphism(const FiniteGroup &g, const GroupMap &f) {
  return (int)f.img.size() == g.n && is_bijection(f) &&
         is_homomorphism(g, g, f);
}

GroupMap inner_automorphism(const FiniteGroup &g, int a) {
  GroupMap f;
  f.img.resize(g.n);
  for (int x = 0; x < g.n; ++x)
    f.img[x] = g.conj(x, a);
  return f;
}

// ---- subgroups -------------------------------------------------------------

bool Subgroup::contains(int x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

Subgroup trivial_subgroup() { return Subgroup{{0}}; }

Subgroup whole_group(const FiniteGroup &g) {
  Subgroup s;
  s.members.resize(g.n);
  for (int i = 0; i < g.n; ++i)
    s.members[i] = i;
  return s;
}

Subgroup subgroup_closure(const FiniteGroup &g, const std::vector<int> &seed) {
  std::vector<char> seen(g.n, 0);
  std::vector<int> list;
  seen[0] = 1;
  list.push_back(0);
  for (int x : seed)
    if (!seen[x]) {
      seen[x] = 1;
      list.push_back(x);
    }
  std::vector<int> gens(list.begin() + 1, list.end());
  for (std::size_t head = 0; head < list.size(); ++head)
    for (int x : gens) {
      int b = g.mul(list[head], x);
      if (!seen[b]) {
        seen[b] = 1;
        list.push_back(b);
      }
    }
  std::sort(list.begin(), list.end());
  return Subgroup{std::move(list)};
}

bool is_subgroup(const FiniteGroup &g, const Subgroup &s) {
  if (s.members.empty() || s.members[0] != 0)
    return false;
  std::vector<char> in(g.n, 0);
  for (int x : s.members) {
    if (x < 0 || x >= g.n)
      return false;
    in[x] = 1;
  }
  for (int a : s.members)
    for (int b : s.members)
      if (!in[g.mul(a, b)])
        return false;
  return true;
}

Subgroup conjugate_subgroup(const FiniteGroup &g, const Subgroup &s, int x) {
  Subgroup r;
  r.members.reserve(s.members.size());
  for (int a : s.members)
    r.members.push_back(g.conj(a, x));
  std::sort(r.members.begin(), r.members.end());
  return r;
}

bool is_normal(const FiniteGroup &g, const Subgroup &s) {
  std::vector<char> in(g.n, 0);
  for (int x : s.members)
    in[x] = 1;
  for (int x = 0; x < g.n; ++x)
    for (int a : s.members)
      if (!in[g.conj(a, x)])
        return false;
  return true;
}

Subgroup normalizer(const FiniteGroup &g, const Subgroup &s) {
  std::vector<char> in(g.n, 0);
  for (int x : s.members)
    in[x] = 1;
  std::vector<int> mem;
  for (int x = 0; x < g.n; ++x) {
    bool ok = true;
    for (int a : s.members)
      if (!in[g.conj(a, x)]) {
        ok = false;
        break;
      }
    if (ok)
      mem.push_back(x);
  }
  return Subgroup{std::move(mem)};
}

Subgroup center(const FiniteGroup &g) {
  std::vector<int> mem;
  for (int a = 0; a < g.n; ++a) {
    bool ok = true;
    for (int b = 0; b < g.n; ++b)
      if (g.mul(a, b) != g.mul(b, a)) {
        ok = false;
        break;
      }
    if (ok)
      mem.push_back(a);
  }
  return Subgroup{std::move(mem)};
}

bool is_abelian(const FiniteGroup &g) {
  for (int a = 0; a < g.n; ++a)
    for (int b = a + 1; b < g.n; ++b)
      if (g.mul(a, b) != g.mul(b, a))
        return false;
  return true;
}

bool is_cyclic(const FiniteGroup &g) {
  for (int a = 0; a < g.n; ++a)
    if (g.element_order(a) == g.n)
      return true;
  return false;
}

bool quotient_is_cyclic(const FiniteGroup &g, const Subgroup &t,
                        const Subgroup &m) {
  int idx = t.order() / m.order();
  if (idx == 1)
    return true;
  // prime index quotients are cyclic outright
  bool prime = idx > 1;
  for (int d = 2; d * d <= idx; ++d)
    if (idx % d == 0) {
      prime = false;
      break;
    }
  if (prime)
    return true;
  std::vector<int> seed = m.members;
  seed.push_back(0);
  for (int x : t.members) {
    if (m.contains(x))
      continue;
    seed.back() = x;
    if (subgroup_closure(g, seed).members == t.members)
      return true;
  }
  return false;
}

std::vector<int> greedy_generators(const FiniteGroup &g) {
  return raw_greedy_generators(g.n, g.tab);
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup &g) {
  std::vector<int> ggens = greedy_generators(g);
  std::vector<char> seen(g.n, 0);
  std::vector<std::vector<int>> classes;
  for (int a = 0; a < g.n; ++a) {
    if (seen[a])
      continue;
    std::vector<int> orbit{a};
    seen[a] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head)
      for (int x : ggens) {
        int b = g.conj(orbit[head], x);
        if (!seen[b]) {
          seen[b] = 1;
          orbit.push_back(b);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  return classes;
}

Subgroup normal_closure(const FiniteGroup &g, const std::vector<int> &seed) {
  std::vector<int> ggens = greedy_generators(g);
  std::vector<char> seen(g.n, 0);
  std::vector<int> orbit;
  for (int x : seed)
    if (!seen[x]) {
      seen[x] = 1;
      orbit.push_back(x);
    }
  for (std::size_t head = 0; head < orbit.size(); ++head)
    for (int x : ggens) {
      int b = g.conj(orbit[head], x);
      if (!seen[b]) {
        seen[b] = 1;
        orbit.push_back(b);
      }
    }
  return subgroup_closure(g, orbit);
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup &g) {
  // every normal subgroup is a join of normal closures of single classes
  std::vector<Subgroup> principal;
  {
    std::set<std::vector<int>> seen;
    for (const auto &cls : conjugacy_classes(g)) {
      Subgroup n = subgroup_closure(g, cls);
      if (seen.insert(n.members).second)
        principal.push_back(std::move(n));
    }
  }
  std::set<std::vector<int>> all;
  std::vector<Subgroup> list{trivial_subgroup()};
  all.insert(list[0].members);
  for (std::size_t head = 0; head < list.size(); ++head) {
    Subgroup cur = list[head];
    if (cur.order() == g.n)
      continue;
    for (const auto &p : principal) {
      std::vector<int> seed = cur.members;
      seed.insert(seed.end(), p.members.begin(), p.members.end());
      Subgroup join = subgroup_closure(g, seed);
      if (all.insert(join.members).second)
        list.push_back(std::move(join));
    }
  }
  std::sort(list.begin(), list.end(), [](const Subgroup &a, const Subgroup &b) {
    if (a.order() != b.order())
      return a.order() < b.order();
    return a.members < b.members;
  });
  return list;
}

std::vector<Subgroup> minimal_normal_subgroups(const FiniteGroup &g) {
  std::vector<Subgroup> principal;
  std::set<std::vector<int>> seen;
  for (const auto &cls : conjugacy_classes(g)) {
    if (cls.size() == 1 && cls[0] == 0)
      continue;
    Subgroup n = subgroup_closure(g, cls);
    if (seen.insert(n.members).second)
      principal.push_back(std::move(n));
  }
  std::vector<Subgroup> out;
  for (const auto &a : principal) {
    bool minimal = true;
    for (const auto &b : principal) {
      if (b.members == a.members || b.order() >= a.order())
        continue;
      if (std::includes(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal)
      out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- quotients -------------------------------------------------------------

Extension quotient(const FiniteGroup &g, const Subgroup &s) {
  if (!is_normal(g, s))
    throw contract_error("quotient by a non-normal subgroup");
  std::vector<int> rep(g.n, -1);
  for (int x = 0; x < g.n; ++x) {
    int best = g.n;
    for (int a : s.members)
      best = std::min(best, g.mul(x, a));
    rep[x] = best;
  }
  std::vector<int> reps;
  std::vector<int> idx(g.n, -1);
  for (int x = 0; x < g.n; ++x)
    if (rep[x] == x) {
      idx[x] = (int)reps.size();
      reps.push_back(x);
    }
  int q = (int)reps.size();
  std::vector<std::uint16_t> tab((std::size_t)q * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      tab[(std::size_t)i * q + j] = (std::uint16_t)idx[rep[g.mul(reps[i], reps[j])]];
  Extension e;
  e.kernel = s;
  e.quotient = adopt_table(q, std::move(tab));
  e.proj.resize(g.n);
  for (int x = 0; x < g.n; ++x)
    e.proj[x] = idx[rep[x]];
  e.coset_reps = std::move(reps);
  return e;
}

extracted_subgroup subgroup_as_group(const FiniteGroup &g, const Subgroup &s) {
  extracted_subgroup out;
  out.to_parent = s.members;
  out.from_parent.assign(g.n, -1);
  for (std::size_t i = 0; i < s.members.size(); ++i)
    out.from_parent[s.members[i]] = (int)i;
  int m = s.order();
  std::vector<std::uint16_t> tab((std::size_t)m * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = g.mul(s.members[i], s.members[j]);
      int q = out.from_parent[p];
      if (q < 0)
        throw contract_error("member set is not closed under multiplication");
      tab[(std::size_t)i * m + j] = (std::uint16_t)q;
    }
  out.group = adopt_table(m, std::move(tab));
  return out;
}

// ---- Sylow -----------------------------------------------------------------

int p_part(int n, int p) {
  int r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_p_group(const FiniteGroup &g, int p) {
  return p_part(g.n, p) == g.n;
}

std::vector<Subgroup> sylow_subgroups(const FiniteGroup &g, int p) {
  if (p < 2)
    throw contract_error("sylow_subgroups needs a prime");
  int target = p_part(g.n, p);
  if (target == 1)
    return {trivial_subgroup()};

  // grow one Sylow subgroup through normalizer steps
  Subgroup s = trivial_subgroup();
  for (int a = 1; a < g.n; ++a) {
    int ord = g.element_order(a);
    if (ord % p == 0) {
      s = subgroup_closure(g, {g.pow(a, ord / p)});
      break;
    }
  }
  while (s.order() < target) {
    Subgroup nrm = normalizer(g, s);
    int grown = -1;
    for (int y : nrm.members) {
      if (s.contains(y))
        continue;
      if (s.contains(g.pow(y, p))) {
        grown = y;
        break;
      }
    }
    if (grown < 0)
      throw contract_error("sylow growth stalled"); // cannot happen in a group
    std::vector<int> seed = s.members;
    seed.push_back(grown);
    s = subgroup_closure(g, seed);
  }

  // close under conjugation
  std::vector<int> ggens = greedy_generators(g);
  std::set<std::vector<int>> seen;
  std::vector<Subgroup> list{s};
  seen.insert(s.members);
  for (std::size_t head = 0; head < list.size(); ++head) {
    Subgroup cur = list[head];
    for (int x : ggens) {
      Subgroup c = conjugate_subgroup(g, cur, x);
      if (seen.insert(c.members).second)
        list.push_back(std::move(c));
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

} // namespace rapcert
