#include "rapcert/cohomology.hpp"

#include <algorithm>
#include <set>

namespace rapcert {

bool operator==(const Cocycle &a, const Cocycle &b) {
  return a.values == b.values;
}

namespace {

// DFS over cocycle values on the greedy generators of gamma. values on the
// rest of the closure follow from c(a g) = c(a) * a(c(g)); every law pair
// touching a newly determined element is checked before descending, so
// inconsistent branches die at the first bad relation.
struct cocycle_search {
  const GaloisModule &m;
  std::vector<int> gens;
  struct disc {
    int elem, prev, via; // elem = prev * gens[via]
  };
  std::vector<std::vector<disc>> stage; // new elements per level, BFS order
  std::vector<std::vector<int>> members_before; // closure before each level
  std::vector<std::vector<int>> cand;           // candidate values per level
  std::vector<int> val;
  std::vector<Cocycle> found;
  bool first_only = false;
  bool done = false;

  explicit cocycle_search(const GaloisModule &mm) : m(mm) {
    gens = greedy_generators(m.g());
    stage.resize(gens.size());
    members_before.resize(gens.size());
    cand.resize(gens.size());
    val.assign(m.g().n, -1);
    val[0] = 0;
    std::vector<char> in(m.g().n, 0);
    std::vector<int> mem{0};
    in[0] = 1;
    for (std::size_t l = 0; l < gens.size(); ++l) {
      members_before[l] = mem;
      for (std::size_t head = 0; head < mem.size(); ++head) {
        int a = mem[head];
        for (std::size_t i = 0; i <= l; ++i) {
          int b = m.g().mul(a, gens[i]);
          if (!in[b]) {
            in[b] = 1;
            stage[l].push_back({b, a, (int)i});
            mem.push_back(b);
          }
        }
      }
    }
  }

  bool expand_and_check(std::size_t l) {
    for (const disc &d : stage[l])
      val[d.elem] =
          m.a().mul(val[d.prev], m.act(d.prev, val[gens[d.via]]));
    // law pairs touching an element new at this level
    const std::vector<int> &old = members_before[l];
    std::vector<char> is_old(m.g().n, 0);
    for (int a : old)
      is_old[a] = 1;
    auto law = [&](int a, int b) {
      return val[m.g().mul(a, b)] == m.a().mul(val[a], m.act(a, val[b]));
    };
    for (const disc &d : stage[l]) {
      for (int a : old)
        if (!law(d.elem, a) || !law(a, d.elem))
          return false;
      for (const disc &e : stage[l])
        if (!law(d.elem, e.elem))
          return false;
    }
    return true;
  }

  void dfs(std::size_t l) {
    if (done)
      return;
    if (l == gens.size()) {
      Cocycle c;
      c.values = val;
      found.push_back(std::move(c));
      if (first_only)
        done = true;
      return;
    }
    for (int v : cand[l]) {
      if (done)
        return;
      val[gens[l]] = v;
      if (expand_and_check(l))
        dfs(l + 1);
    }
  }
};

} // namespace

std::vector<Cocycle> enumerate_cocycles(const GaloisModule &m,
                                        const limits &lim) {
  if (m.g().n > lim.max_h1_gamma)
    throw bound_error("cocycle enumeration bound: |gamma| = " +
                      std::to_string(m.g().n) + " exceeds max_h1_gamma " +
                      std::to_string(lim.max_h1_gamma));
  if (m.a().n > lim.max_h1_module)
    throw bound_error("cocycle enumeration bound: |module| = " +
                      std::to_string(m.a().n) + " exceeds max_h1_module " +
                      std::to_string(lim.max_h1_module));
  cocycle_search search(m);
  for (auto &c : search.cand) {
    c.resize(m.a().n);
    for (int v = 0; v < m.a().n; ++v)
      c[v] = v;
  }
  search.dfs(0);
  std::sort(search.found.begin(), search.found.end(),
            [](const Cocycle &a, const Cocycle &b) {
              return a.values < b.values;
            });
  return search.found;
}

H1Set h1(const GaloisModule &m, const limits &lim) {
  std::vector<Cocycle> all = enumerate_cocycles(m, lim);
  H1Set res;
  for (const Cocycle &f : all) {
    if (res.class_of.count(f.values))
      continue;
    int idx = (int)res.classes.size();
    res.classes.push_back(f); // lexicographically first in its orbit
    // twisted conjugation orbit
    std::vector<int> t(m.g().n);
    for (int a = 0; a < m.a().n; ++a) {
      for (int s = 0; s < m.g().n; ++s)
        t[s] = m.a().mul(m.a().mul(a, f.values[s]),
                         m.a().inv(m.act(s, a)));
      res.class_of.emplace(t, idx);
    }
  }
  res.distinguished = res.class_of.at(std::vector<int>(m.g().n, 0));
  if ((int)res.class_of.size() != (int)all.size())
    throw contract_error("twisted conjugation left the cocycle set");
  return res;
}

LocalPlaceModel all_involution_places(const FiniteGroup &gamma) {
  LocalPlaceModel p;
  for (int c = 1; c < gamma.n; ++c)
    if (gamma.mul(c, c) == 0)
      p.involutions.push_back(c);
  return p;
}

PlaceRestriction place_module(const GaloisModule &m, int c) {
  if (c < 0 || c >= m.g().n)
    throw input_error("place index " + std::to_string(c) +
                      " out of range for gamma");
  if (m.g().mul(c, c) != 0)
    throw input_error("place element " + std::to_string(c) +
                      " is not an involution");
  Subgroup sub = subgroup_closure(m.g(), {c});
  extracted_subgroup ex = subgroup_as_group(m.g(), sub);
  PlaceRestriction r;
  r.embed = ex.to_parent;
  r.local.gamma = share(ex.group);
  r.local.mod = m.mod;
  r.local.rho.resize(ex.group.n);
  for (int i = 0; i < ex.group.n; ++i)
    r.local.rho[i] = m.rho[ex.to_parent[i]];
  return r;
}

Cocycle restrict_cocycle(const PlaceRestriction &p, const Cocycle &f) {
  Cocycle r;
  r.values.resize(p.embed.size());
  for (std::size_t i = 0; i < p.embed.size(); ++i)
    r.values[i] = f.values[p.embed[i]];
  return r;
}

SurjectivityReport real_approx_surjective(const GaloisModule &m,
                                          const LocalPlaceModel &places,
                                          const limits &lim) {
  H1Set global = h1(m, lim);
  std::vector<PlaceRestriction> locals;
  std::vector<H1Set> local_h1;
  SurjectivityReport rep;
  rep.global_classes = (int)global.classes.size();
  rep.tuple_count = 1;
  for (int c : places.involutions) {
    locals.push_back(place_module(m, c));
    local_h1.push_back(h1(locals.back().local, lim));
    rep.local_class_counts.push_back((int)local_h1.back().classes.size());
    rep.tuple_count *= rep.local_class_counts.back();
    if (rep.tuple_count > lim.max_local_product)
      throw bound_error("local class tuple space exceeds max_local_product");
  }

  std::set<std::vector<int>> image;
  for (const Cocycle &rep_c : global.classes) {
    std::vector<int> tuple(places.involutions.size());
    for (std::size_t v = 0; v < locals.size(); ++v)
      tuple[v] =
          local_h1[v].class_of.at(restrict_cocycle(locals[v], rep_c).values);
    image.insert(std::move(tuple));
  }

  // odometer over all local class tuples in lexicographic order
  std::vector<int> tuple(places.involutions.size(), 0);
  for (long long k = 0; k < rep.tuple_count; ++k) {
    if (!image.count(tuple)) {
      rep.surjective = false;
      rep.finite_model_only = true;
      rep.missing_tuple = tuple;
      return rep;
    }
    for (int v = (int)tuple.size() - 1; v >= 0; --v) {
      if (++tuple[v] < rep.local_class_counts[v])
        break;
      tuple[v] = 0;
    }
  }
  rep.surjective = true;
  return rep;
}

TwistBijection twisting_bijection(const GaloisModule &m, const Cocycle &sigma,
                                  const limits &lim) {
  TwistBijection tb;
  tb.twisted = twist_action(m, sigma.values);
  tb.source = h1(tb.twisted, lim);
  tb.target = h1(m, lim);
  if (tb.source.classes.size() != tb.target.classes.size())
    throw contract_error("twisting did not preserve the class count");
  std::vector<char> hit(tb.target.classes.size(), 0);
  for (const Cocycle &tau : tb.source.classes) {
    std::vector<int> prod(m.g().n);
    for (int s = 0; s < m.g().n; ++s)
      prod[s] = m.a().mul(tau.values[s], sigma.values[s]);
    auto it = tb.target.class_of.find(prod);
    if (it == tb.target.class_of.end())
      throw contract_error("twisted product is not a cocycle of the base");
    tb.class_map.push_back(it->second);
    if (hit[it->second]++)
      throw contract_error("twisting map is not injective on classes");
  }
  tb.distinguished_image = tb.class_map[tb.source.distinguished];
  if (tb.distinguished_image != tb.target.class_of.at(sigma.values))
    throw contract_error(
        "twisting does not send the distinguished class to [sigma]");
  return tb;
}

SylowImageResult sylow_image_criterion(const GaloisModule &m,
                                       const Subgroup &s, const Cocycle &alpha,
                                       const limits &lim) {
  if (!is_subgroup(m.a(), s) || !is_stable(m, s))
    throw contract_error("image criterion needs a stable subgroup");
  if (!is_cocycle(m, alpha.values))
    throw contract_error("image criterion needs a valid cocycle");

  // left cosets xS, canonical representative = minimal member
  std::vector<int> coset_rep(m.a().n, -1);
  std::vector<int> reps;
  for (int x = 0; x < m.a().n; ++x) {
    if (coset_rep[x] >= 0)
      continue;
    reps.push_back(x);
    for (int y : s.members)
      coset_rep[m.a().mul(x, y)] = x;
  }

  SylowImageResult res;
  for (int r : reps) {
    bool fixed = true;
    for (int t = 1; t < m.g().n && fixed; ++t)
      if (coset_rep[m.a().mul(alpha.values[t], m.act(t, r))] != r)
        fixed = false;
    if (fixed) {
      res.in_image = true;
      res.fixed_coset_rep = r;
      break;
    }
  }

  // direct image computation as the independent side
  H1Set target = h1(m, lim);
  int alpha_class = target.class_of.at(alpha.values);
  submodule_result sub = submodule(m, s);
  bool direct = false;
  for (const Cocycle &beta : enumerate_cocycles(sub.sub, lim)) {
    std::vector<int> mapped(m.g().n);
    for (int t = 0; t < m.g().n; ++t)
      mapped[t] = sub.extraction.to_parent[beta.values[t]];
    if (target.class_of.at(mapped) == alpha_class) {
      direct = true;
      break;
    }
  }
  if (direct != res.in_image)
    throw contract_error("fixed-coset and direct image answers disagree");
  return res;
}

int odd_set_fixed_point(int size, const std::vector<int> &involution) {
  if (size <= 0 || size % 2 == 0)
    throw contract_error("fixed point argument needs an odd set");
  if ((int)involution.size() != size)
    throw contract_error("involution has the wrong degree");
  for (int i = 0; i < size; ++i) {
    int j = involution[i];
    if (j < 0 || j >= size || involution[j] != i)
      throw contract_error("map is not an involution");
  }
  for (int i = 0; i < size; ++i)
    if (involution[i] == i)
      return i;
  throw contract_error("parity violation"); // unreachable on valid input
}

std::optional<Cocycle>
lift_through_extension(const GaloisModule &m, const module_quotient_result &q,
                       const Cocycle &sigma, const limits &lim) {
  if (!is_cocycle(q.quot, sigma.values))
    throw contract_error("lift needs a cocycle of the quotient module");
  cocycle_search search(m);
  search.first_only = true;
  long long space = 1;
  for (std::size_t l = 0; l < search.gens.size(); ++l) {
    int g = search.gens[l];
    for (int x = 0; x < m.a().n; ++x)
      if (q.ext.proj[x] == sigma.values[g])
        search.cand[l].push_back(x);
    space *= (long long)search.cand[l].size();
    if (space > lim.max_local_product)
      throw bound_error("lift fiber space exceeds max_local_product");
  }
  search.dfs(0);
  if (search.found.empty())
    return std::nullopt;
  Cocycle lift = search.found.front();
  for (int t = 0; t < m.g().n; ++t)
    if (q.ext.proj[lift.values[t]] != sigma.values[t])
      throw contract_error("lift does not project onto sigma");
  return lift;
}

} // namespace rapcert
