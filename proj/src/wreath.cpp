#include "rapcert/wreath.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace rapcert {

bool operator==(const WreathElem &a, const WreathElem &b) {
  return a.digits == b.digits && a.perm == b.perm;
}

namespace {

// big-endian digits: digit 0 is the most significant
std::vector<int> power_digits(const WreathAut &w, int x) {
  std::vector<int> d(w.copies());
  for (int i = w.copies() - 1; i >= 0; --i) {
    d[i] = x % w.fsize();
    x /= w.fsize();
  }
  return d;
}

int power_index(const WreathAut &w, const std::vector<int> &d) {
  int x = 0;
  for (int v : d)
    x = x * w.fsize() + v;
  return x;
}

int perm_rank(const WreathAut &w, const std::vector<int> &p) {
  auto it = std::lower_bound(w.perms.begin(), w.perms.end(), p);
  if (it == w.perms.end() || *it != p)
    throw contract_error("wreath element carries a non-permutation");
  return (int)(it - w.perms.begin());
}

} // namespace

WreathAut power_automorphisms(const FiniteGroup &a, const limits &lim) {
  WreathAut w;
  w.dec = direct_power_decomposition(a, lim);
  if (w.dec.abelian_case)
    throw contract_error("wreath structure needs a nonabelian factor");
  w.fact_aut = automorphism_group(w.dec.factor, lim);
  w.fact_io = inner_and_outer(w.dec.factor, w.fact_aut);

  int n = w.copies();
  w.aut_order = 1;
  for (int i = 0; i < n; ++i)
    w.aut_order *= (long long)w.fact_aut.table.n;
  for (int i = 2; i <= n; ++i)
    w.aut_order *= i;

  w.inv_iso.assign(a.n, -1);
  for (int x = 0; x < a.n; ++x)
    w.inv_iso[w.dec.iso.img[x]] = x;

  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do
    w.perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  const FiniteGroup &of = w.fact_io.out.quotient;
  long long out_n = (long long)w.perms.size();
  for (int i = 0; i < n; ++i)
    out_n *= of.n;
  if (out_n > lim.max_table_order)
    throw bound_error("outer wreath group of order " + std::to_string(out_n) +
                      " exceeds max_table_order");

  // index = perm rank * |Out F|^n + big-endian out digits; identity at 0
  int block = 1;
  for (int i = 0; i < n; ++i)
    block *= of.n;
  auto decode = [&](int e, std::vector<int> &od, int &pr) {
    pr = e / block;
    int rest = e % block;
    od.assign(n, 0);
    for (int i = n - 1; i >= 0; --i) {
      od[i] = rest % of.n;
      rest /= of.n;
    }
  };
  std::vector<std::vector<int>> tab((std::size_t)out_n,
                                    std::vector<int>((std::size_t)out_n));
  std::vector<int> uod, vod, rod(n), rperm(n), uinv(n);
  int upr, vpr;
  for (int u = 0; u < out_n; ++u) {
    decode(u, uod, upr);
    const std::vector<int> &up = w.perms[upr];
    for (int i = 0; i < n; ++i)
      uinv[up[i]] = i;
    for (int v = 0; v < out_n; ++v) {
      decode(v, vod, vpr);
      const std::vector<int> &vp = w.perms[vpr];
      for (int i = 0; i < n; ++i) {
        rod[i] = of.mul(uod[i], vod[uinv[i]]);
        rperm[i] = up[vp[i]];
      }
      int acc = 0;
      for (int i = 0; i < n; ++i)
        acc = acc * of.n + rod[i];
      tab[u][v] = perm_rank(w, rperm) * block + acc;
    }
  }
  w.out = validate_group(tab, lim);
  return w;
}

WreathElem wreath_identity(const WreathAut &w) {
  WreathElem e;
  e.digits.assign(w.copies(), 0);
  e.perm.resize(w.copies());
  std::iota(e.perm.begin(), e.perm.end(), 0);
  return e;
}

WreathElem wreath_mul(const WreathAut &w, const WreathElem &u,
                      const WreathElem &v) {
  int n = w.copies();
  std::vector<int> uinv(n);
  for (int i = 0; i < n; ++i)
    uinv[u.perm[i]] = i;
  WreathElem r;
  r.digits.resize(n);
  r.perm.resize(n);
  for (int i = 0; i < n; ++i) {
    r.digits[i] = w.fact_aut.table.mul(u.digits[i], v.digits[uinv[i]]);
    r.perm[i] = u.perm[v.perm[i]];
  }
  return r;
}

WreathElem wreath_inv(const WreathAut &w, const WreathElem &u) {
  int n = w.copies();
  WreathElem r;
  r.digits.resize(n);
  r.perm.resize(n);
  for (int i = 0; i < n; ++i)
    r.perm[u.perm[i]] = i;
  for (int i = 0; i < n; ++i)
    r.digits[i] = w.fact_aut.table.inv(u.digits[u.perm[i]]);
  return r;
}

GroupMap realize(const WreathAut &w, const WreathElem &u) {
  int n = w.copies();
  GroupMap f;
  f.img.resize(w.dec.iso.img.size());
  std::vector<int> r(n);
  for (int a = 0; a < (int)f.img.size(); ++a) {
    std::vector<int> d = power_digits(w, w.inv_iso[a]);
    for (int j = 0; j < n; ++j)
      r[u.perm[j]] = w.fact_aut.maps[u.digits[u.perm[j]]].img[d[j]];
    f.img[a] = w.dec.iso.img[power_index(w, r)];
  }
  return f;
}

std::optional<WreathElem> decompose(const WreathAut &w, const GroupMap &f) {
  int n = w.copies(), fn = w.fsize();
  int an = (int)f.img.size();
  if (an != (int)w.dec.iso.img.size())
    return std::nullopt;
  // action in power coordinates
  auto through = [&](int x) { return w.inv_iso[f.img[w.dec.iso.img[x]]]; };

  // where does each coordinate subgroup land
  WreathElem u;
  u.perm.assign(n, -1);
  std::vector<int> unit(n, 0);
  for (int j = 0; j < n; ++j) {
    unit.assign(n, 0);
    unit[j] = 1;
    std::vector<int> img = power_digits(w, through(power_index(w, unit)));
    int dst = -1;
    for (int i = 0; i < n; ++i)
      if (img[i] != 0) {
        if (dst >= 0)
          return std::nullopt;
        dst = i;
      }
    if (dst < 0)
      return std::nullopt;
    u.perm[j] = dst;
  }
  std::vector<int> seen(n, 0);
  for (int j = 0; j < n; ++j) {
    if (seen[u.perm[j]])
      return std::nullopt;
    seen[u.perm[j]] = 1;
  }

  u.digits.assign(n, -1);
  GroupMap phi;
  phi.img.resize(fn);
  for (int j = 0; j < n; ++j) {
    for (int y = 0; y < fn; ++y) {
      unit.assign(n, 0);
      unit[j] = y;
      std::vector<int> img = power_digits(w, through(power_index(w, unit)));
      for (int i = 0; i < n; ++i)
        if (i != u.perm[j] && img[i] != 0)
          return std::nullopt;
      phi.img[y] = img[u.perm[j]];
    }
    int idx = w.fact_aut.index_of(phi);
    if (idx < 0)
      return std::nullopt;
    u.digits[u.perm[j]] = idx;
  }
  if (!(realize(w, u) == f))
    return std::nullopt;
  return u;
}

int out_index(const WreathAut &w, const WreathElem &u) {
  const FiniteGroup &of = w.fact_io.out.quotient;
  int block = 1;
  for (int i = 0; i < w.copies(); ++i)
    block *= of.n;
  int acc = 0;
  for (int i = 0; i < w.copies(); ++i)
    acc = acc * of.n + w.fact_io.out.proj[u.digits[i]];
  return perm_rank(w, u.perm) * block + acc;
}

std::vector<WreathElem> power_section(const WreathAut &w,
                                      const GroupMap &section_f) {
  const FiniteGroup &of = w.fact_io.out.quotient;
  int n = w.copies();
  if ((int)section_f.img.size() != of.n)
    throw contract_error("factor section has the wrong domain");
  for (int o = 0; o < of.n; ++o)
    if (w.fact_io.out.proj[section_f.img[o]] != o)
      throw contract_error("factor section does not split the projection");

  int block = 1;
  for (int i = 0; i < n; ++i)
    block *= of.n;
  std::vector<WreathElem> sec(w.out.n);
  for (int e = 0; e < w.out.n; ++e) {
    WreathElem &u = sec[e];
    u.perm = w.perms[e / block];
    u.digits.resize(n);
    int rest = e % block;
    for (int i = n - 1; i >= 0; --i) {
      u.digits[i] = section_f.img[rest % of.n];
      rest /= of.n;
    }
  }
  for (int x = 0; x < w.out.n; ++x) {
    if (out_index(w, sec[x]) != x)
      throw contract_error("power section does not split out_index");
    for (int y = 0; y < w.out.n; ++y)
      if (!(wreath_mul(w, sec[x], sec[y]) == sec[w.out.mul(x, y)]))
        throw contract_error("power section is not a homomorphism");
  }
  return sec;
}

} // namespace rapcert
