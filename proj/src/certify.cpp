#include "rapcert/certify.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "rapcert/errors.hpp"
#include "rapcert/wreath.hpp"

namespace rapcert {

using nlohmann::json;

const char *rule_name(step_rule r) {
  switch (r) {
  case step_rule::sylow_reduction:
    return "SYLOW_REDUCTION";
  case step_rule::inner_form:
    return "INNER_FORM";
  case step_rule::section_twist:
    return "SECTION_TWIST";
  case step_rule::char_quotient:
    return "CHAR_QUOTIENT";
  case step_rule::abelian:
    return "ABELIAN";
  case step_rule::two_group_action:
    return "TWO_GROUP_ACTION";
  }
  return "?";
}

std::optional<step_rule> rule_from_name(const std::string &name) {
  for (step_rule r :
       {step_rule::sylow_reduction, step_rule::inner_form,
        step_rule::section_twist, step_rule::char_quotient, step_rule::abelian,
        step_rule::two_group_action})
    if (name == rule_name(r))
      return r;
  return std::nullopt;
}

const char *dispatch_name(dispatch_rule r) {
  switch (r) {
  case dispatch_rule::abelian:
    return "ABELIAN";
  case dispatch_rule::two_group_action:
    return "TWO_GROUP_ACTION";
  case dispatch_rule::sylow_reduction:
    return "SYLOW_REDUCTION";
  case dispatch_rule::inner_form:
    return "INNER_FORM";
  case dispatch_rule::section_twist:
    return "SECTION_TWIST";
  case dispatch_rule::antisolvable:
    return "ANTISOLVABLE";
  }
  return "?";
}

std::optional<dispatch_rule> dispatch_from_name(const std::string &name) {
  for (dispatch_rule r :
       {dispatch_rule::abelian, dispatch_rule::two_group_action,
        dispatch_rule::sylow_reduction, dispatch_rule::inner_form,
        dispatch_rule::section_twist, dispatch_rule::antisolvable})
    if (name == dispatch_name(r))
      return r;
  return std::nullopt;
}

// ---- fingerprints -----------------------------------------------------------

namespace {

struct fnv64 {
  std::uint64_t h = 14695981039346656037ULL;

  void byte(unsigned char b) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  void u16(std::uint16_t v) {
    byte((unsigned char)(v & 0xff));
    byte((unsigned char)(v >> 8));
  }
  void u32(std::uint32_t v) {
    u16((std::uint16_t)(v & 0xffff));
    u16((std::uint16_t)(v >> 16));
  }
};

std::string hex64(std::uint64_t h) {
  static const char *digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

} // namespace

std::string fingerprint_module(const GaloisModule &m) {
  fnv64 f;
  f.u32((std::uint32_t)m.g().n);
  f.u32((std::uint32_t)m.a().n);
  for (std::uint16_t v : m.g().tab)
    f.u16(v);
  for (std::uint16_t v : m.a().tab)
    f.u16(v);
  for (const GroupMap &r : m.rho)
    for (int x : r.img)
      f.u16((std::uint16_t)x);
  return hex64(f.h);
}

// ---- shared helpers ---------------------------------------------------------

namespace {

const char *caveat_finite_model = "FINITE_MODEL_ONLY";
const char *caveat_bound = "BOUND_EXCEEDED";

bool power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

void merge_sorted(std::vector<std::string> &dst,
                  const std::vector<std::string> &src) {
  for (const auto &s : src)
    dst.push_back(s);
  std::sort(dst.begin(), dst.end());
  dst.erase(std::unique(dst.begin(), dst.end()), dst.end());
}

bool has_string(const std::vector<std::string> &v, const std::string &s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

Subgroup intersect(const Subgroup &a, const Subgroup &b) {
  Subgroup out;
  std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                        b.members.end(), std::back_inserter(out.members));
  return out;
}

// kernel of the action induced on the quotient by a stable normal subgroup
Subgroup quotient_action_kernel(const GaloisModule &m,
                                const module_quotient_result &q) {
  Subgroup out;
  GroupMap id = identity_map(q.quot.a().n);
  for (int s = 0; s < m.g().n; ++s)
    if (q.quot.rho[s] == id)
      out.members.push_back(s);
  return out;
}

const char *citation_abelian =
    "abelian groups satisfy real approximation (Sansuc)";
const char *citation_two_group =
    "actions through a 2-group quotient satisfy real approximation";
const char *citation_sylow =
    "real approximation descends from an invariant 2-Sylow subgroup of odd "
    "index";
const char *citation_inner =
    "inner twist to a constant action on a centerless group";
const char *citation_section =
    "almost complete twist through an outer-action section";
const char *citation_char =
    "antisolvable induction through a characteristic subgroup";

ReductionStep make_terminal_abelian(const GaloisModule &m,
                                    const std::string &fp) {
  ReductionStep st;
  st.rule = step_rule::abelian;
  st.citation = citation_abelian;
  st.input_fp = fp;
  st.output_fp = fp;
  st.witness = json{{"abelian", true}, {"order", m.a().n}};
  return st;
}

// invariant 2-Sylow plus a supersolvable chain of its submodule; nullopt
// when no stable Sylow or no chain turned up
std::optional<ReductionStep> make_terminal_two_group(const GaloisModule &m,
                                                     const std::string &fp,
                                                     std::string &why_not) {
  if (!is_2group_action(m)) {
    why_not = "the action does not factor through a 2-group";
    return std::nullopt;
  }
  auto s = invariant_sylow(m, 2);
  if (!s) {
    why_not = "no invariant 2-Sylow subgroup";
    return std::nullopt;
  }
  auto sub = submodule(m, *s);
  auto ch = supersolvable_chain(sub.sub);
  if (!ch.chain) {
    why_not = "no supersolvable chain on the invariant 2-Sylow submodule";
    return std::nullopt;
  }
  json chain_sub = json::array();
  for (const Subgroup &g : ch.chain->subgroups)
    chain_sub.push_back(g.members);
  auto img = action_image(m);
  ReductionStep st;
  st.rule = step_rule::two_group_action;
  st.citation = citation_two_group;
  st.input_fp = fp;
  st.output_fp = fp;
  st.witness = json{{"action_image_order", img.image.n},
                    {"sylow", s->members},
                    {"sylow_index", m.a().n / s->order()},
                    {"chain",
                     {{"subgroups", chain_sub},
                      {"quotient_orders", ch.chain->quotient_orders}}},
                    {"decided_by", ch.decided_by}};
  return st;
}

} // namespace

// ---- reductions -------------------------------------------------------------

reduction_result sylow_reduce(const GaloisModule &m, const limits &) {
  reduction_result rr;
  auto s = invariant_sylow(m, 2);
  if (!s) {
    rr.refusal = "no invariant 2-Sylow subgroup";
    return rr;
  }
  auto sub = submodule(m, *s);
  ReductionStep st;
  st.rule = step_rule::sylow_reduction;
  st.citation = citation_sylow;
  st.input_fp = fingerprint_module(m);
  st.output_fp = fingerprint_module(sub.sub);
  st.witness =
      json{{"sylow", s->members}, {"index", m.a().n / s->order()}};
  rr.ok = true;
  rr.out = sub.sub;
  rr.steps = {st};
  return rr;
}

reduction_result inner_form_normalize(const GaloisModule &m,
                                      const limits &) {
  reduction_result rr;
  if (center(m.a()).order() != 1) {
    rr.refusal = "the module group has nontrivial center";
    return rr;
  }
  std::vector<int> sigma(m.g().n), c(m.g().n);
  for (int s = 0; s < m.g().n; ++s) {
    auto w = inner_witness(m.a(), m.rho[s]);
    if (!w) {
      rr.refusal = "the action is not inner";
      return rr;
    }
    sigma[s] = *w;
    c[s] = m.a().inv(*w);
  }
  if (!is_cocycle(m, c))
    throw contract_error("inverse inner witnesses failed the cocycle law");
  GaloisModule out = twist_action(m, c);
  GroupMap id = identity_map(m.a().n);
  for (int s = 0; s < m.g().n; ++s)
    if (!(out.rho[s] == id))
      throw contract_error("inner twist did not produce the constant form");
  ReductionStep st;
  st.rule = step_rule::inner_form;
  st.citation = citation_inner;
  st.input_fp = fingerprint_module(m);
  st.output_fp = fingerprint_module(out);
  st.witness = json{{"inner_witnesses", sigma}, {"cocycle", c}};
  rr.ok = true;
  rr.out = out;
  rr.steps = {st};
  return rr;
}

reduction_result almost_complete_twist(const GaloisModule &m,
                                       const limits &lim) {
  reduction_result rr;
  const FiniteGroup &a = m.a();
  if (center(a).order() != 1) {
    rr.refusal = "the module group has nontrivial center";
    return rr;
  }
  json witness;
  std::vector<GroupMap> rho_prime(m.g().n);
  if (a.n <= lim.max_aut_order) {
    auto ac = is_almost_complete(a, lim);
    if (!ac.almost_complete) {
      rr.refusal = "no section of the outer projection";
      return rr;
    }
    OuterAction oa = outer_action(m, lim);
    Subgroup img = subgroup_closure(oa.out, oa.kappa);
    if (!power_of_two(img.order())) {
      rr.refusal = "the outer action image is not a 2-group";
      return rr;
    }
    for (int s = 0; s < m.g().n; ++s)
      rho_prime[s] = ac.aut->maps[ac.section->img[oa.kappa[s]]];
    witness["path"] = "table";
    witness["kappa"] = oa.kappa;
    witness["section"] = ac.section->img;
  } else {
    // beyond table bounds only the characteristically simple case is
    // structurally tractable: Aut(F^n) = Aut(F)^n x| S_n
    if (is_abelian(a) || !is_characteristically_simple(a, lim)) {
      rr.refusal = "the module group is beyond automorphism bounds and is "
                   "not a nonabelian direct power";
      return rr;
    }
    WreathAut wa = power_automorphisms(a, lim);
    auto fac = is_almost_complete(wa.dec.factor, lim);
    if (!fac.almost_complete) {
      rr.refusal = "the simple factor is not almost complete";
      return rr;
    }
    std::vector<int> kappa(m.g().n);
    for (int s = 0; s < m.g().n; ++s) {
      auto we = decompose(wa, m.rho[s]);
      if (!we)
        throw contract_error("action automorphism has no wreath form");
      kappa[s] = out_index(wa, *we);
    }
    for (int s = 0; s < m.g().n; ++s)
      for (int t = 0; t < m.g().n; ++t)
        if (kappa[m.g().mul(s, t)] != wa.out.mul(kappa[s], kappa[t]))
          throw contract_error("outer action is not a homomorphism");
    Subgroup img = subgroup_closure(wa.out, kappa);
    if (!power_of_two(img.order())) {
      rr.refusal = "the outer action image is not a 2-group";
      return rr;
    }
    std::vector<WreathElem> sec = power_section(wa, *fac.section);
    for (int s = 0; s < m.g().n; ++s)
      rho_prime[s] = realize(wa, sec[kappa[s]]);
    witness["path"] = "wreath";
    witness["kappa"] = kappa;
    witness["copies"] = wa.copies();
  }
  // the twisting cocycle carrying rho onto the section: int(c_s) = rho'_s o
  // rho_s^{-1}, inner because both sides share the outer class
  std::vector<int> c(m.g().n);
  for (int s = 0; s < m.g().n; ++s) {
    GroupMap d = compose(rho_prime[s], inverse_map(m.rho[s]));
    auto w = inner_witness(a, d);
    if (!w)
      throw contract_error("section composite is not an inner deviation");
    c[s] = *w;
  }
  if (!is_cocycle(m, c))
    throw contract_error("section deviation failed the cocycle law");
  GaloisModule out = twist_action(m, c);
  if (!is_2group_action(out))
    throw contract_error("section twist did not reach a 2-group action");
  witness["cocycle"] = c;
  ReductionStep st;
  st.rule = step_rule::section_twist;
  st.citation = citation_section;
  st.input_fp = fingerprint_module(m);
  st.output_fp = fingerprint_module(out);
  st.witness = witness;
  rr.ok = true;
  rr.out = out;
  rr.steps = {st};
  return rr;
}

reduction_result antisolvable_inner_form(const GaloisModule &m,
                                         const limits &lim) {
  reduction_result rr;
  const FiniteGroup &a = m.a();
  if (a.n == 1) {
    rr.refusal = "trivial module";
    return rr;
  }
  if (!is_antisolvable(a)) {
    rr.refusal = "the module group is not antisolvable";
    return rr;
  }
  {
    std::vector<FiniteGroup> checked;
    for (const FiniteGroup &f : composition_factors(a)) {
      bool seen = false;
      for (const FiniteGroup &prev : checked)
        if (prev.n == f.n && find_isomorphism(prev, f, lim)) {
          seen = true;
          break;
        }
      if (seen)
        continue;
      if (!is_almost_complete(f, lim).almost_complete) {
        rr.refusal = "a simple factor is not almost complete";
        return rr;
      }
      checked.push_back(f);
    }
  }
  Subgroup ik = inner_acting_kernel(m);
  if (!power_of_two(m.g().n / ik.order())) {
    rr.refusal = "the outer action does not factor through a 2-group";
    return rr;
  }
  if (is_characteristically_simple(a, lim)) {
    reduction_result base = almost_complete_twist(m, lim);
    if (!base.ok)
      rr.refusal = "characteristically simple base case: " + base.refusal;
    return base.ok ? base : rr;
  }

  // induction step: twist the characteristically simple quotient onto its
  // section, lift the twisting cocycle, recurse on the subgroup
  Subgroup b = maximal_proper_characteristic(a, lim);
  auto q = module_quotient(m, b);
  reduction_result ctw = almost_complete_twist(q.quot, lim);
  if (!ctw.ok) {
    rr.refusal = "quotient twist: " + ctw.refusal;
    return rr;
  }
  Cocycle sig_c;
  sig_c.values = ctw.steps[0].witness.at("cocycle").get<std::vector<int>>();
  auto lift = lift_through_extension(m, q, sig_c, lim);
  if (!lift) {
    // the neutrality theorem guarantees a lift over the number field; the
    // finite quotient may be too small to carry one
    rr.refusal = "no finite-level lift of the quotient twisting cocycle";
    rr.caveats = {caveat_finite_model};
    return rr;
  }
  GaloisModule m1 = twist_action(m, lift->values);
  auto q1 = module_quotient(m1, b);
  if (!is_2group_action(q1.quot))
    throw contract_error("quotient action is not a 2-group after the lift");
  Subgroup delta = intersect(inner_acting_kernel(m1),
                             quotient_action_kernel(m1, q1));
  if (!power_of_two(m.g().n / delta.order()))
    throw contract_error("joint kernel index is not a 2-power");
  // inner witnesses over the joint kernel land in the subgroup: their
  // images are central in the centerless quotient
  for (int s : delta.members) {
    auto w = inner_witness(m1.a(), m1.rho[s]);
    if (!w || !b.contains(*w))
      throw contract_error("joint kernel witness escapes the subgroup");
  }
  ReductionStep st1;
  st1.rule = step_rule::char_quotient;
  st1.citation = citation_char;
  st1.input_fp = fingerprint_module(m);
  st1.output_fp = fingerprint_module(m1);
  st1.witness = json{{"characteristic_subgroup", b.members},
                     {"quotient_order", q.quot.a().n},
                     {"quotient_cocycle", sig_c.values},
                     {"cocycle", lift->values},
                     {"joint_kernel", delta.members}};
  rr.steps.push_back(st1);
  rr.axioms = {axiom_neutrality};

  auto subb = submodule(m1, b);
  reduction_result rec = antisolvable_inner_form(subb.sub, lim);
  rr.caveats = rec.caveats;
  if (!rec.ok) {
    rr.refusal = "recursion on the characteristic subgroup: " + rec.refusal;
    rr.steps.clear();
    return rr;
  }
  // replay the recursion's twists at the ambient level; each cocycle is
  // valued in the stable subgroup, so the embedded values still satisfy the
  // cocycle law for the ambient action
  GaloisModule cur = m1;
  for (const ReductionStep &bs : rec.steps) {
    std::vector<int> bc = bs.witness.at("cocycle").get<std::vector<int>>();
    std::vector<int> ac(m.g().n);
    for (int s = 0; s < m.g().n; ++s)
      ac[s] = subb.extraction.to_parent[bc[s]];
    GaloisModule nxt = twist_action(cur, ac);
    ReductionStep st;
    st.rule = step_rule::char_quotient;
    st.citation = citation_char;
    st.input_fp = fingerprint_module(cur);
    st.output_fp = fingerprint_module(nxt);
    st.witness = json{{"characteristic_subgroup", b.members},
                      {"cocycle", ac},
                      {"via", rule_name(bs.rule)}};
    rr.steps.push_back(st);
    cur = nxt;
  }
  if (!is_2group_action(cur))
    throw contract_error("induction did not reach a 2-group action");
  merge_sorted(rr.axioms, rec.axioms);
  rr.ok = true;
  rr.out = cur;
  return rr;
}

// ---- the dispatcher ---------------------------------------------------------

namespace {

Certificate certify_impl(const GaloisModule &m, const certify_options &opt,
                         int depth) {
  if (depth > 64)
    throw contract_error("certify recursion depth exceeded");
  const limits &lim = opt.lim;
  const std::string fp = fingerprint_module(m);
  json refusals = json::object();
  std::vector<std::string> caveats_acc;
  bool bound_hit = false;

  auto allowed = [&](dispatch_rule r) {
    return depth > 0 || !opt.only_rule || *opt.only_rule == r;
  };

  if (allowed(dispatch_rule::abelian)) {
    if (is_abelian(m.a())) {
      Certificate cert;
      cert.verdict = "RA_HOLDS";
      cert.chain.push_back(make_terminal_abelian(m, fp));
      cert.axioms = {axiom_abelian};
      cert.refusals = json::object();
      return cert;
    }
    refusals["ABELIAN"] = "the module group is nonabelian";
  }

  if (allowed(dispatch_rule::two_group_action)) {
    try {
      std::string why_not;
      auto st = make_terminal_two_group(m, fp, why_not);
      if (st) {
        Certificate cert;
        cert.verdict = "RA_HOLDS";
        cert.chain.push_back(*st);
        cert.axioms = {axiom_descent, axiom_weak_approx};
        cert.refusals = json::object();
        return cert;
      }
      refusals["TWO_GROUP_ACTION"] = why_not;
    } catch (const bound_error &e) {
      refusals["TWO_GROUP_ACTION"] = e.what();
      bound_hit = true;
    }
  }

  using reduction_fn = reduction_result (*)(const GaloisModule &,
                                            const limits &);
  struct attempt {
    dispatch_rule rule;
    reduction_fn fn;
    bool require_proper; // skip when the reduction made no progress
  };
  const attempt attempts[] = {
      {dispatch_rule::sylow_reduction, &sylow_reduce, true},
      {dispatch_rule::inner_form, &inner_form_normalize, false},
      {dispatch_rule::section_twist, &almost_complete_twist, false},
      {dispatch_rule::antisolvable, &antisolvable_inner_form, false},
  };
  for (const attempt &at : attempts) {
    if (!allowed(at.rule))
      continue;
    const char *key = dispatch_name(at.rule);
    try {
      reduction_result rr = at.fn(m, lim);
      merge_sorted(caveats_acc, rr.caveats);
      if (!rr.ok) {
        refusals[key] = rr.refusal;
        continue;
      }
      if (at.require_proper && rr.out.a().n >= m.a().n) {
        refusals[key] = "the 2-Sylow subgroup is the whole module";
        continue;
      }
      Certificate rest = certify_impl(rr.out, opt, depth + 1);
      merge_sorted(caveats_acc, rest.caveats);
      if (rest.verdict != "RA_HOLDS") {
        refusals[key] = "the reduced module did not certify: " +
                        rest.refusals.dump();
        continue;
      }
      Certificate cert;
      cert.verdict = "RA_HOLDS";
      cert.chain = rr.steps;
      cert.chain.insert(cert.chain.end(), rest.chain.begin(),
                        rest.chain.end());
      merge_sorted(cert.axioms, rr.axioms);
      merge_sorted(cert.axioms, rest.axioms);
      merge_sorted(cert.caveats, rr.caveats);
      merge_sorted(cert.caveats, rest.caveats);
      cert.refusals = json::object();
      return cert;
    } catch (const bound_error &e) {
      refusals[key] = e.what();
      bound_hit = true;
    }
  }

  Certificate cert;
  cert.verdict = "UNKNOWN";
  cert.caveats = caveats_acc;
  if (bound_hit)
    merge_sorted(cert.caveats, {caveat_bound});
  cert.refusals = refusals;
  return cert;
}

} // namespace

Certificate certify(const GaloisModule &m, const certify_options &opt) {
  return certify_impl(m, opt, 0);
}

// ---- replay -----------------------------------------------------------------

namespace {

replay_result replay_fail(std::size_t i, step_rule rule,
                          const std::string &msg) {
  replay_result res;
  res.ok = false;
  res.first_failure =
      "step " + std::to_string(i) + " (" + rule_name(rule) + "): " + msg;
  return res;
}

} // namespace

replay_result replay(const Certificate &cert, const GaloisModule &m) {
  replay_result res;
  if (cert.verdict != "RA_HOLDS") {
    res.first_failure = "chain does not reach a base case";
    return res;
  }
  if (cert.chain.empty()) {
    res.first_failure = "empty theorem chain";
    return res;
  }
  GaloisModule cur = m;
  for (std::size_t i = 0; i < cert.chain.size(); ++i) {
    const ReductionStep &st = cert.chain[i];
    try {
      if (fingerprint_module(cur) != st.input_fp)
        return replay_fail(i, st.rule, "input fingerprint mismatch");
      const bool terminal = st.rule == step_rule::abelian ||
                            st.rule == step_rule::two_group_action;
      if (terminal) {
        if (i + 1 != cert.chain.size())
          return replay_fail(i, st.rule, "terminal rule before chain end");
        if (st.output_fp != st.input_fp)
          return replay_fail(i, st.rule, "terminal step transforms the module");
        if (st.rule == step_rule::abelian) {
          if (!is_abelian(cur.a()))
            return replay_fail(i, st.rule, "module group is not abelian");
          if (!has_string(cert.axioms, axiom_abelian))
            return replay_fail(i, st.rule, "missing axiom Sansuc-abelian");
        } else {
          if (!is_2group_action(cur))
            return replay_fail(i, st.rule,
                               "action does not factor through a 2-group");
          Subgroup s;
          s.members = st.witness.at("sylow").get<std::vector<int>>();
          if (!is_subgroup(cur.a(), s) || !is_stable(cur, s) ||
              s.order() != p_part(cur.a().n, 2))
            return replay_fail(i, st.rule,
                               "witness is not a stable 2-Sylow subgroup");
          auto sub = submodule(cur, s);
          Chain ch;
          for (const auto &members :
               st.witness.at("chain").at("subgroups")) {
            Subgroup g;
            g.members = members.get<std::vector<int>>();
            ch.subgroups.push_back(g);
          }
          ch.quotient_orders = st.witness.at("chain")
                                   .at("quotient_orders")
                                   .get<std::vector<int>>();
          if (!chain_valid(sub.sub, ch))
            return replay_fail(i, st.rule, "witness chain is invalid");
          if (!has_string(cert.axioms, axiom_weak_approx) ||
              !has_string(cert.axioms, axiom_descent))
            return replay_fail(i, st.rule, "missing base-case axioms");
        }
        res.ok = true;
        return res;
      }
      switch (st.rule) {
      case step_rule::sylow_reduction: {
        Subgroup s;
        s.members = st.witness.at("sylow").get<std::vector<int>>();
        if (!is_subgroup(cur.a(), s) || !is_stable(cur, s) ||
            s.order() != p_part(cur.a().n, 2))
          return replay_fail(i, st.rule,
                             "witness is not a stable 2-Sylow subgroup");
        if ((cur.a().n / s.order()) % 2 == 0)
          return replay_fail(i, st.rule, "subgroup index is even");
        auto sub = submodule(cur, s);
        if (fingerprint_module(sub.sub) != st.output_fp)
          return replay_fail(i, st.rule, "output fingerprint mismatch");
        cur = sub.sub;
        break;
      }
      case step_rule::inner_form: {
        if (center(cur.a()).order() != 1)
          return replay_fail(i, st.rule, "module group has a center");
        auto sigma =
            st.witness.at("inner_witnesses").get<std::vector<int>>();
        auto c = st.witness.at("cocycle").get<std::vector<int>>();
        if ((int)sigma.size() != cur.g().n || (int)c.size() != cur.g().n)
          return replay_fail(i, st.rule, "witness length mismatch");
        for (int s = 0; s < cur.g().n; ++s) {
          if (!(inner_automorphism(cur.a(), sigma[s]) == cur.rho[s]))
            return replay_fail(i, st.rule, "inner witness mismatch");
          if (c[s] != cur.a().inv(sigma[s]))
            return replay_fail(i, st.rule, "cocycle is not the inverse "
                                           "witness");
        }
        if (!is_cocycle(cur, c))
          return replay_fail(i, st.rule, "witness violates the cocycle law");
        GaloisModule nxt = twist_action(cur, c);
        GroupMap id = identity_map(cur.a().n);
        for (int s = 0; s < nxt.g().n; ++s)
          if (!(nxt.rho[s] == id))
            return replay_fail(i, st.rule, "twist is not the constant form");
        if (fingerprint_module(nxt) != st.output_fp)
          return replay_fail(i, st.rule, "output fingerprint mismatch");
        cur = nxt;
        break;
      }
      case step_rule::section_twist: {
        if (center(cur.a()).order() != 1)
          return replay_fail(i, st.rule, "module group has a center");
        auto c = st.witness.at("cocycle").get<std::vector<int>>();
        if ((int)c.size() != cur.g().n)
          return replay_fail(i, st.rule, "witness length mismatch");
        if (!is_cocycle(cur, c))
          return replay_fail(i, st.rule, "witness violates the cocycle law");
        GaloisModule nxt = twist_action(cur, c);
        if (!is_2group_action(nxt))
          return replay_fail(i, st.rule, "twist is not a 2-group action");
        if (fingerprint_module(nxt) != st.output_fp)
          return replay_fail(i, st.rule, "output fingerprint mismatch");
        cur = nxt;
        break;
      }
      case step_rule::char_quotient: {
        auto c = st.witness.at("cocycle").get<std::vector<int>>();
        if ((int)c.size() != cur.g().n)
          return replay_fail(i, st.rule, "witness length mismatch");
        Subgroup b;
        b.members = st.witness.at("characteristic_subgroup")
                        .get<std::vector<int>>();
        if (!is_subgroup(cur.a(), b) || !is_normal(cur.a(), b) ||
            !is_stable(cur, b))
          return replay_fail(i, st.rule,
                             "witness subgroup is not stable normal");
        if (st.witness.contains("quotient_cocycle") &&
            !has_string(cert.axioms, axiom_neutrality))
          return replay_fail(i, st.rule, "missing neutrality axiom");
        if (!is_cocycle(cur, c))
          return replay_fail(i, st.rule, "witness violates the cocycle law");
        GaloisModule nxt = twist_action(cur, c);
        if (fingerprint_module(nxt) != st.output_fp)
          return replay_fail(i, st.rule, "output fingerprint mismatch");
        cur = nxt;
        break;
      }
      default:
        return replay_fail(i, st.rule, "unreachable rule");
      }
    } catch (const std::exception &e) {
      return replay_fail(i, st.rule, e.what());
    }
  }
  res.first_failure = "chain does not reach a base case";
  return res;
}

// ---- serialization ----------------------------------------------------------

json certificate_to_json(const Certificate &cert) {
  json steps = json::array();
  for (const ReductionStep &st : cert.chain)
    steps.push_back(json{{"rule", rule_name(st.rule)},
                         {"citation", st.citation},
                         {"input_fingerprint", st.input_fp},
                         {"output_fingerprint", st.output_fp},
                         {"witness", st.witness}});
  json j{{"verdict", cert.verdict},
         {"theorem_chain", steps},
         {"axioms", cert.axioms},
         {"caveats", cert.caveats}};
  if (!cert.refusals.empty())
    j["refusals"] = cert.refusals;
  return j;
}

Certificate certificate_from_json(const json &j) {
  Certificate cert;
  try {
    cert.verdict = j.at("verdict").get<std::string>();
    if (cert.verdict != "RA_HOLDS" && cert.verdict != "UNKNOWN")
      throw input_error("unknown verdict: " + cert.verdict);
    for (const json &sj : j.at("theorem_chain")) {
      ReductionStep st;
      auto rule = rule_from_name(sj.at("rule").get<std::string>());
      if (!rule)
        throw input_error("unknown rule: " +
                          sj.at("rule").get<std::string>());
      st.rule = *rule;
      st.citation = sj.at("citation").get<std::string>();
      st.input_fp = sj.at("input_fingerprint").get<std::string>();
      st.output_fp = sj.at("output_fingerprint").get<std::string>();
      st.witness = sj.at("witness");
      cert.chain.push_back(st);
    }
    cert.axioms = j.at("axioms").get<std::vector<std::string>>();
    cert.caveats = j.at("caveats").get<std::vector<std::string>>();
    if (j.contains("refusals"))
      cert.refusals = j.at("refusals");
    else
      cert.refusals = json::object();
  } catch (const json::exception &e) {
    throw input_error(std::string("malformed certificate: ") + e.what());
  }
  return cert;
}

std::string canonical_dump(const json &j) { return j.dump(); }

// ---- empirical corroboration --------------------------------------------------

empirical_report empirical_check(const GaloisModule &m,
                                 const LocalPlaceModel &places,
                                 const Certificate &cert, const limits &lim) {
  empirical_report rep;
  try {
    rep.surjectivity = real_approx_surjective(m, places, lim);
    rep.evaluated = true;
    rep.finite_model_only = rep.surjectivity.finite_model_only;
    if (cert.verdict != "RA_HOLDS") {
      rep.detail = "no claim made; report is informational";
    } else if (rep.surjectivity.surjective) {
      rep.detail = "finite-level diagonal map is surjective, in agreement";
    } else {
      // never escalated: the finite quotient does not carry the full
      // Galois action the certificate's theorems assume
      rep.agrees = false;
      rep.finite_model_only = true;
      rep.detail = "finite-level diagonal map misses a tuple";
    }
  } catch (const bound_error &e) {
    rep.evaluated = false;
    rep.detail = std::string("cohomology bounds: ") + e.what();
  }
  return rep;
}

} // namespace rapcert
