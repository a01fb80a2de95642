#include "rapcert/action.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rapcert {

namespace {

void check_action_law(const GaloisModule &m) {
  const FiniteGroup &g = m.g();
  if ((int)m.rho.size() != g.n)
    throw contract_error("rho must assign one automorphism per gamma element");
  if (!(m.rho[0] == identity_map(m.a().n)))
    throw contract_error("rho(identity) must be the identity");
  for (int s = 0; s < g.n; ++s)
    for (int t = 0; t < g.n; ++t) {
      int st = g.mul(s, t);
      for (int x = 0; x < m.a().n; ++x)
        if (m.rho[st].img[x] != m.rho[s].img[m.rho[t].img[x]])
          throw contract_error("rho(st) != rho(s)rho(t) at s=" +
                               std::to_string(s) + " t=" + std::to_string(t));
    }
}

} // namespace

GaloisModule make_module(GroupRef gamma, GroupRef mod,
                         std::vector<GroupMap> rho) {
  GaloisModule m;
  m.gamma = std::move(gamma);
  m.mod = std::move(mod);
  m.rho = std::move(rho);
  for (const auto &f : m.rho)
    if (!is_automorphism(m.a(), f))
      throw contract_error("action value is not an automorphism");
  check_action_law(m);
  return m;
}

GaloisModule module_from_generator_images(
    GroupRef gamma, GroupRef mod, const std::vector<GroupMap> &gen_images) {
  const FiniteGroup &g = *gamma;
  std::vector<int> gens = greedy_generators(g);
  if (gen_images.size() != gens.size())
    throw input_error("action must list " + std::to_string(gens.size()) +
                      " automorphisms (one per gamma generator), got " +
                      std::to_string(gen_images.size()));
  int an = mod->n;
  std::vector<GroupMap> rho(g.n);
  std::vector<char> have(g.n, 0);
  rho[0] = identity_map(an);
  have[0] = 1;
  std::vector<int> list{0};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if ((int)gen_images[i].img.size() != an)
      throw input_error("action image array has wrong length");
  }
  for (std::size_t head = 0; head < list.size(); ++head) {
    int a = list[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      int b = g.mul(a, gens[i]);
      if (!have[b]) {
        rho[b] = compose(rho[a], gen_images[i]);
        have[b] = 1;
        list.push_back(b);
      }
    }
  }
  return make_module(std::move(gamma), std::move(mod), std::move(rho));
}

GaloisModule trivial_action_module(GroupRef mod) {
  GaloisModule m;
  m.gamma = share(trivial_group());
  m.mod = std::move(mod);
  m.rho = {identity_map(m.mod->n)};
  return m;
}

bool is_stable(const GaloisModule &m, const Subgroup &s) {
  std::vector<char> in(m.a().n, 0);
  for (int x : s.members)
    in[x] = 1;
  for (int g = 1; g < m.g().n; ++g)
    for (int x : s.members)
      if (!in[m.act(g, x)])
        return false;
  return true;
}

action_image_result action_image(const GaloisModule &m) {
  GroupMap id = identity_map(m.a().n);
  std::vector<int> ker;
  for (int s = 0; s < m.g().n; ++s)
    if (m.rho[s] == id)
      ker.push_back(s);
  action_image_result r;
  r.kernel = Subgroup{std::move(ker)};
  r.image = quotient(m.g(), r.kernel).quotient;
  return r;
}

bool is_2group_action(const GaloisModule &m) {
  int n = action_image(m).image.n;
  while (n % 2 == 0)
    n /= 2;
  return n == 1;
}

submodule_result submodule(const GaloisModule &m, const Subgroup &s) {
  if (!is_stable(m, s))
    throw contract_error("submodule of an unstable subgroup");
  submodule_result r;
  r.extraction = subgroup_as_group(m.a(), s);
  std::vector<GroupMap> rho(m.g().n);
  for (int g = 0; g < m.g().n; ++g) {
    rho[g].img.resize(s.order());
    for (int i = 0; i < s.order(); ++i)
      rho[g].img[i] = r.extraction.from_parent[m.act(g, r.extraction.to_parent[i])];
  }
  r.sub.gamma = m.gamma;
  r.sub.mod = share(r.extraction.group);
  r.sub.rho = std::move(rho);
  check_action_law(r.sub);
  return r;
}

module_quotient_result module_quotient(const GaloisModule &m,
                                       const Subgroup &s) {
  if (!is_stable(m, s))
    throw contract_error("module quotient by an unstable subgroup");
  module_quotient_result r;
  r.ext = quotient(m.a(), s);
  int qn = r.ext.quotient.n;
  std::vector<GroupMap> rho(m.g().n);
  for (int g = 0; g < m.g().n; ++g) {
    rho[g].img.resize(qn);
    for (int i = 0; i < qn; ++i)
      rho[g].img[i] = r.ext.proj[m.act(g, r.ext.coset_reps[i])];
  }
  r.quot.gamma = m.gamma;
  r.quot.mod = share(r.ext.quotient);
  r.quot.rho = std::move(rho);
  check_action_law(r.quot);
  return r;
}

std::optional<Subgroup> invariant_sylow(const GaloisModule &m, int p) {
  for (const Subgroup &s : sylow_subgroups(m.a(), p))
    if (is_stable(m, s))
      return s;
  return std::nullopt;
}

Subgroup central_stable_cyclic(const GaloisModule &m, int p) {
  if (m.a().n == 1)
    throw contract_error("central_stable_cyclic needs a nontrivial module");
  if (!is_p_group(m.a(), p))
    throw contract_error("central_stable_cyclic needs a p-group module");
  if (p_part(action_image(m).image.n, p) != action_image(m).image.n)
    throw contract_error("central_stable_cyclic needs a p-group action");
  for (int z : center(m.a()).members) {
    if (z == 0)
      continue;
    bool fixed = true;
    for (int s = 1; s < m.g().n; ++s)
      if (m.act(s, z) != z) {
        fixed = false;
        break;
      }
    if (fixed)
      return subgroup_closure(m.a(), {z});
  }
  // a p-group has a nontrivial center and the fixed-point count argument
  // guarantees a fixed nonidentity central element under a p-group action
  throw contract_error("no fixed central element; hypotheses violated");
}

// ---- supersolvable chains ----------------------------------------------------

bool chain_valid(const GaloisModule &m, const Chain &c) {
  if (c.subgroups.empty())
    return false;
  if (c.subgroups.front().members != trivial_subgroup().members)
    return false;
  if (c.subgroups.back().members != whole_group(m.a()).members)
    return false;
  if (c.quotient_orders.size() + 1 != c.subgroups.size())
    return false;
  for (const auto &s : c.subgroups)
    if (!is_subgroup(m.a(), s) || !is_normal(m.a(), s) || !is_stable(m, s))
      return false;
  for (std::size_t i = 1; i < c.subgroups.size(); ++i) {
    const Subgroup &lo = c.subgroups[i - 1], &hi = c.subgroups[i];
    if (!std::includes(hi.members.begin(), hi.members.end(),
                       lo.members.begin(), lo.members.end()))
      return false;
    if (hi.order() == lo.order())
      return false;
    if (hi.order() % lo.order() != 0 ||
        hi.order() / lo.order() != c.quotient_orders[i - 1])
      return false;
    if (!quotient_is_cyclic(m.a(), hi, lo))
      return false;
  }
  return true;
}

namespace {

supersolvable_result chain_by_recursion(const GaloisModule &m, int p) {
  supersolvable_result res;
  res.decided_by = "p-group-recursion";
  if (m.a().n == 1) {
    res.chain = Chain{{trivial_subgroup()}, {}};
    return res;
  }
  Subgroup c = central_stable_cyclic(m, p);
  module_quotient_result q = module_quotient(m, c);
  supersolvable_result rec = chain_by_recursion(q.quot, p);
  Chain lifted;
  lifted.subgroups.push_back(trivial_subgroup());
  for (const Subgroup &qs : rec.chain->subgroups) {
    std::vector<int> pre;
    std::vector<char> in(q.ext.quotient.n, 0);
    for (int x : qs.members)
      in[x] = 1;
    for (int x = 0; x < m.a().n; ++x)
      if (in[q.ext.proj[x]])
        pre.push_back(x);
    lifted.subgroups.push_back(Subgroup{std::move(pre)});
  }
  lifted.quotient_orders.push_back(c.order());
  for (int o : rec.chain->quotient_orders)
    lifted.quotient_orders.push_back(o);
  res.chain = std::move(lifted);
  return res;
}

// ascends from {1}: each move adjoins one element to the current stable
// normal subgroup and keeps the result when it is again stable, normal and
// has a cyclic quotient over the previous level. every admissible next level
// arises this way (take any generator of the cyclic quotient), so a failed
// exhaustive ascent refutes existence. dead ends are memoized by member set.
// the normal-subgroup lattice is never enumerated up front; elementary
// abelian modules with thousands of subgroups stay cheap.
struct chain_dfs {
  const GaloisModule &m;
  std::set<std::vector<int>> dead;

  bool ascend(const Subgroup &cur, std::vector<Subgroup> &stack) {
    stack.push_back(cur);
    if (cur.order() == m.a().n)
      return true;
    if (!dead.count(cur.members)) {
      std::set<std::vector<int>> tried;
      for (int x = 1; x < m.a().n; ++x) {
        if (cur.contains(x))
          continue;
        std::vector<int> seed = cur.members;
        seed.push_back(x);
        Subgroup next = subgroup_closure(m.a(), seed);
        if (!tried.insert(next.members).second)
          continue;
        if (!is_normal(m.a(), next) || !is_stable(m, next))
          continue;
        if (!quotient_is_cyclic(m.a(), next, cur))
          continue;
        if (ascend(next, stack))
          return true;
      }
      dead.insert(cur.members);
    }
    stack.pop_back();
    return false;
  }
};

} // namespace

supersolvable_result supersolvable_chain(const GaloisModule &m,
                                         bool force_search) {
  if (m.a().n == 1) {
    supersolvable_result res;
    res.decided_by = force_search ? "search" : "p-group-recursion";
    res.chain = Chain{{trivial_subgroup()}, {}};
    return res;
  }
  if (!force_search) {
    int p = 2;
    while (m.a().n % p != 0)
      ++p;
    if (is_p_group(m.a(), p)) {
      const FiniteGroup &img = action_image(m).image;
      if (p_part(img.n, p) == img.n)
        return chain_by_recursion(m, p);
    }
  }
  supersolvable_result res;
  res.decided_by = "search";
  chain_dfs dfs{m, {}};
  std::vector<Subgroup> stack;
  if (dfs.ascend(trivial_subgroup(), stack)) {
    Chain c;
    c.subgroups = std::move(stack);
    for (std::size_t i = 1; i < c.subgroups.size(); ++i)
      c.quotient_orders.push_back(c.subgroups[i].order() /
                                  c.subgroups[i - 1].order());
    res.chain = std::move(c);
  } else {
    res.exhausted = true;
  }
  return res;
}

// ---- outer actions -----------------------------------------------------------

OuterAction outer_action(const GaloisModule &m, const limits &lim) {
  AutGroup aut = automorphism_group(m.a(), lim);
  InnerOuter io = inner_and_outer(m.a(), aut);
  OuterAction oa;
  oa.out = io.out.quotient;
  oa.kappa.resize(m.g().n);
  for (int s = 0; s < m.g().n; ++s) {
    int idx = aut.index_of(m.rho[s]);
    if (idx < 0)
      throw contract_error("action automorphism missing from Aut table");
    oa.kappa[s] = io.out.proj[idx];
  }
  return oa;
}

std::optional<int> inner_witness(const FiniteGroup &g, const GroupMap &f) {
  std::vector<int> gens = greedy_generators(g);
  for (int a = 0; a < g.n; ++a) {
    bool ok = true;
    for (int x : gens)
      if (f.img[x] != g.conj(x, a)) {
        ok = false;
        break;
      }
    if (!ok)
      continue;
    for (int x = 0; x < g.n && ok; ++x)
      if (f.img[x] != g.conj(x, a))
        ok = false;
    if (ok)
      return a;
  }
  return std::nullopt;
}

Subgroup inner_acting_kernel(const GaloisModule &m) {
  std::vector<int> mem;
  for (int s = 0; s < m.g().n; ++s)
    if (inner_witness(m.a(), m.rho[s]))
      mem.push_back(s);
  return Subgroup{std::move(mem)};
}

almost_complete_result is_almost_complete(const FiniteGroup &g,
                                          const limits &lim) {
  almost_complete_result r;
  if (center(g).order() > 1) {
    r.refusal = "center";
    return r;
  }
  r.centerless = true;
  r.aut = automorphism_group(g, lim);
  r.io = inner_and_outer(g, *r.aut);
  const FiniteGroup &out = r.io->out.quotient;

  // section candidates: one coset representative per Out generator
  hom_search_spec spec;
  spec.first_only = true;
  std::vector<int> out_gens = greedy_generators(out);
  spec.gen_candidates.resize(out_gens.size());
  for (std::size_t i = 0; i < out_gens.size(); ++i)
    for (int a = 0; a < r.aut->table.n; ++a)
      if (r.io->out.proj[a] == out_gens[i])
        spec.gen_candidates[i].push_back(a);
  std::vector<GroupMap> secs = find_homomorphisms(out, r.aut->table, spec);
  for (const auto &sec : secs) {
    bool splits = true;
    for (int o = 0; o < out.n; ++o)
      if (r.io->out.proj[sec.img[o]] != o) {
        splits = false;
        break;
      }
    if (splits) {
      r.section = sec;
      r.almost_complete = true;
      return r;
    }
  }
  r.refusal = "no section";
  return r;
}

// ---- twisting ------------------------------------------------------------------

bool is_cocycle(const GaloisModule &m, const std::vector<int> &values) {
  if ((int)values.size() != m.g().n)
    return false;
  for (int v : values)
    if (v < 0 || v >= m.a().n)
      return false;
  if (values[0] != 0)
    return false;
  for (int s = 0; s < m.g().n; ++s)
    for (int t = 0; t < m.g().n; ++t)
      if (values[m.g().mul(s, t)] !=
          m.a().mul(values[s], m.act(s, values[t])))
        return false;
  return true;
}

GaloisModule twist_action(const GaloisModule &m,
                          const std::vector<int> &values) {
  if (!is_cocycle(m, values))
    throw contract_error("twist by a non-cocycle");
  GaloisModule t;
  t.gamma = m.gamma;
  t.mod = m.mod;
  t.rho.resize(m.g().n);
  for (int s = 0; s < m.g().n; ++s) {
    t.rho[s].img.resize(m.a().n);
    int c = values[s], ci = m.a().inv(c);
    for (int x = 0; x < m.a().n; ++x)
      t.rho[s].img[x] = m.a().mul(m.a().mul(c, m.act(s, x)), ci);
  }
  // the homomorphism law for the twisted action is equivalent to the
  // cocycle condition; re-verify anyway
  check_action_law(t);
  return t;
}

} // namespace rapcert
