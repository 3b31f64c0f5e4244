#include "qkflag/groebner.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>

#include "qkflag/errors.hpp"

namespace qkflag {

namespace {

constexpr std::size_t kMaxVars = 64;

struct Mono {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint64_t mask = 0;
  int deg = 0;

  void refresh(std::size_t n) {
    mask = 0;
    deg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i]) mask |= std::uint64_t{1} << i;
      deg += e[i];
    }
  }
};

struct Term {
  Mono m;
  mpq_class c;
};

using Poly = std::vector<Term>;  // strictly descending

struct BlockSpec {
  std::size_t lo, hi;
  bool grevlex;
};

}  // namespace

struct GroebnerBasis::Impl {
  RegistryPtr source;
  RegistryPtr ring;
  MonomialOrder source_order;
  MonomialOrder order;
  std::vector<BlockSpec> blocks;
  std::size_t nvars = 0;
  // ring index -> source index (companions point at their parent)
  std::vector<std::size_t> parent;
  std::vector<Sort> kind;  // Sort::Inv, Sort::Loc, or the parent's sort
  std::vector<int> wt;
  std::vector<std::ptrdiff_t> ring_of_source;
  std::vector<std::ptrdiff_t> inv_of_source;
  std::vector<std::ptrdiff_t> loc_of_source;
  std::vector<std::size_t> q_ring_vars;

  std::vector<Poly> polys;
  std::vector<LaurentPoly> basis;
  GroebnerStats stats;
  int cap = -1;
  int max_q_degree = 0;

  int cmp(const Mono& a, const Mono& b) const {
    for (const auto& bl : blocks) {
      if (bl.grevlex) {
        int da = 0, db = 0;
        for (std::size_t i = bl.lo; i < bl.hi; ++i) {
          da += wt[i] * a.e[i];
          db += wt[i] * b.e[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (std::size_t i = bl.hi; i-- > bl.lo;)
          if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
      } else {
        for (std::size_t i = bl.lo; i < bl.hi; ++i)
          if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
      }
    }
    return 0;
  }

  static bool divides(const Mono& a, const Mono& b, std::size_t n) {
    if (a.mask & ~b.mask) return false;
    for (std::size_t i = 0; i < n; ++i)
      if (a.e[i] > b.e[i]) return false;
    return true;
  }

  Mono mul(const Mono& a, const Mono& b) const {
    Mono r;
    for (std::size_t i = 0; i < nvars; ++i) {
      int v = a.e[i] + b.e[i];
      if (v > 255) throw ExponentOverflow("Groebner exponent above 255");
      r.e[i] = static_cast<std::uint8_t>(v);
    }
    r.refresh(nvars);
    return r;
  }

  Mono quot(const Mono& a, const Mono& b) const {
    Mono r;
    for (std::size_t i = 0; i < nvars; ++i) r.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
    r.refresh(nvars);
    return r;
  }

  Mono lcm(const Mono& a, const Mono& b) const {
    Mono r;
    for (std::size_t i = 0; i < nvars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    r.refresh(nvars);
    return r;
  }

  void sort_poly(Poly& p) const {
    std::sort(p.begin(), p.end(), [&](const Term& a, const Term& b) { return cmp(a.m, b.m) > 0; });
    Poly out;
    for (auto& t : p) {
      if (!out.empty() && cmp(out.back().m, t.m) == 0)
        out.back().c += t.c;
      else
        out.push_back(std::move(t));
      if (out.back().c == 0) out.pop_back();
    }
    p = std::move(out);
  }

  // p[from..] - c * m * g
  Poly sub_mul(const Poly& p, std::size_t from, const mpq_class& c, const Mono& m, const Poly& g,
               std::size_t gfrom) const {
    Poly out;
    out.reserve(p.size() - from + g.size() - gfrom);
    std::size_t i = from, j = gfrom;
    Term cur;
    bool have = false;
    while (i < p.size() || j < g.size()) {
      if (!have && j < g.size()) {
        cur.m = mul(m, g[j].m);
        cur.c = -c * g[j].c;
        have = true;
      }
      if (!have) {
        out.push_back(p[i++]);
        continue;
      }
      if (i >= p.size()) {
        out.push_back(cur);
        have = false;
        ++j;
        continue;
      }
      int s = cmp(p[i].m, cur.m);
      if (s > 0) {
        out.push_back(p[i++]);
      } else if (s < 0) {
        out.push_back(cur);
        have = false;
        ++j;
      } else {
        mpq_class v = p[i].c + cur.c;
        if (v != 0) out.push_back({p[i].m, v});
        ++i;
        ++j;
        have = false;
      }
    }
    return out;
  }

  const Poly* find_divisor(const Mono& m, const std::vector<const Poly*>& G) const {
    for (const Poly* g : G)
      if (divides((*g)[0].m, m, nvars)) return g;
    return nullptr;
  }

  Poly reduce(Poly p, const std::vector<const Poly*>& G) const {
    Poly rem;
    std::size_t start = 0;
    while (start < p.size()) {
      const Term& lt = p[start];
      const Poly* g = find_divisor(lt.m, G);
      if (!g) {
        rem.push_back(lt);
        ++start;
        continue;
      }
      Mono q = quot(lt.m, (*g)[0].m);
      mpq_class c = lt.c / (*g)[0].c;
      p = sub_mul(p, start + 1, c, q, *g, 1);
      start = 0;
    }
    return rem;
  }

  void make_monic(Poly& p) const {
    if (p.empty()) return;
    mpq_class lc = p[0].c;
    if (lc == 1) return;
    for (auto& t : p) t.c /= lc;
  }

  int q_degree(const Poly& p) const {
    int best = 0;
    for (const auto& t : p) {
      int d = 0;
      for (auto v : q_ring_vars) d += t.m.e[v];
      best = std::max(best, d);
    }
    return best;
  }

  Poly from_laurent(const LaurentPoly& f) const {
    Poly p;
    for (const auto& [e, c] : f.terms()) {
      Term t;
      for (std::size_t i = 0; i < nvars; ++i) {
        if (e[i] < 0 || e[i] > 255) throw ExponentOverflow("ring exponent out of range");
        t.m.e[i] = static_cast<std::uint8_t>(e[i]);
      }
      t.m.refresh(nvars);
      t.c = c;
      p.push_back(std::move(t));
    }
    sort_poly(p);
    return p;
  }

  LaurentPoly to_laurent(const Poly& p) const {
    LaurentPoly f(ring);
    for (const auto& t : p) {
      Exponents e(nvars);
      for (std::size_t i = 0; i < nvars; ++i) e[i] = t.m.e[i];
      f.add_term(e, t.c);
    }
    return f;
  }

  void build_ring(const RegistryPtr& src, const MonomialOrder& ord);
  LaurentPoly to_ring(const QLocalized& f) const;
  QLocalized from_ring(const LaurentPoly& f) const;
  void run(const std::vector<QLocalized>& relations);
};

void GroebnerBasis::Impl::build_ring(const RegistryPtr& src, const MonomialOrder& ord) {
  source = src;
  source_order = ord;
  ring_of_source.assign(src->size(), -1);
  inv_of_source.assign(src->size(), -1);
  loc_of_source.assign(src->size(), -1);
  std::vector<VarInfo> vars;
  std::vector<std::vector<std::size_t>> rblocks;
  std::vector<std::vector<int>> rweights;
  for (std::size_t b = 0; b < ord.blocks.size(); ++b) {
    bool lex = ord.block_kinds[b] == OrderKind::Lex;
    BlockSpec spec{vars.size(), 0, !lex};
    std::vector<std::size_t> rb;
    std::vector<int> rw;
    auto push = [&](VarInfo vi, std::size_t sv, Sort k, int w) {
      std::size_t r = vars.size();
      vars.push_back(std::move(vi));
      parent.push_back(sv);
      kind.push_back(k);
      wt.push_back(w);
      rb.push_back(r);
      rw.push_back(w);
      return r;
    };
    for (std::size_t pos = 0; pos < ord.blocks[b].size(); ++pos) {
      std::size_t sv = ord.blocks[b][pos];
      if (sv >= src->size()) throw IndexOutOfRange("order names an unknown variable");
      if (ring_of_source[sv] >= 0) throw std::invalid_argument("variable ordered twice: " + src->var(sv).name);
      const VarInfo& vi = src->var(sv);
      int w = ord.weight(b, pos);
      bool inv = src->laurent(sv);
      if (inv && ord.is_inverse_first(b)) {
        std::size_t r = vars.size() + 1;
        inv_of_source[sv] = static_cast<std::ptrdiff_t>(push({"inv_" + vi.name, Sort::Inv, static_cast<int>(r), 0}, sv, Sort::Inv, w));
        ring_of_source[sv] = static_cast<std::ptrdiff_t>(push(vi, sv, vi.sort, w));
        continue;
      }
      std::size_t r = push(vi, sv, vi.sort, w);
      ring_of_source[sv] = static_cast<std::ptrdiff_t>(r);
      if (vi.sort == Sort::Q) q_ring_vars.push_back(r);
      if (inv) {
        inv_of_source[sv] = static_cast<std::ptrdiff_t>(push({"inv_" + vi.name, Sort::Inv, static_cast<int>(r), 0}, sv, Sort::Inv, w));
      } else if (vi.sort == Sort::Q) {
        loc_of_source[sv] = static_cast<std::ptrdiff_t>(push({"loc_" + vi.name, Sort::Loc, static_cast<int>(r), 0}, sv, Sort::Loc, w));
      }
    }
    spec.hi = vars.size();
    blocks.push_back(spec);
    rblocks.push_back(std::move(rb));
    rweights.push_back(std::move(rw));
  }
  if (vars.size() > kMaxVars) throw std::invalid_argument("too many ring variables");
  nvars = vars.size();
  ring = VarRegistry::make(std::move(vars));
  order = MonomialOrder::block(std::move(rblocks), ord.block_kinds);
  for (std::size_t b = 0; b < rweights.size(); ++b) {
    order = order.with_weights(b, rweights[b]);
    if (ord.is_inverse_first(b)) order = order.with_inverse_first(b);
  }
}

LaurentPoly GroebnerBasis::Impl::to_ring(const QLocalized& f) const {
  require_compatible(f.registry(), source);
  LaurentPoly out(ring);
  Exponents base(nvars, 0);
  for (const auto& [q, m] : f.den()) {
    if (loc_of_source[q] < 0) throw RegistryMismatch("denominator variable is not ordered");
    base[loc_of_source[q]] = m;
  }
  for (const auto& [e, c] : f.num().terms()) {
    Exponents r = base;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (ring_of_source[i] < 0) throw RegistryMismatch("variable " + source->var(i).name + " is not ordered");
      if (e[i] > 0)
        r[ring_of_source[i]] += e[i];
      else if (inv_of_source[i] >= 0)
        r[inv_of_source[i]] += -e[i];
      else
        throw SignViolation("negative power of " + source->var(i).name);
    }
    out.add_term(r, c);
  }
  return out;
}

QLocalized GroebnerBasis::Impl::from_ring(const LaurentPoly& f) const {
  require_compatible(f.registry(), ring);
  std::map<std::size_t, int> maxloc;
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < nvars; ++i)
      if (kind[i] == Sort::Loc && e[i] > 0) maxloc[parent[i]] = std::max(maxloc[parent[i]], e[i]);
  std::map<std::pair<std::size_t, int>, LaurentPoly> pow_cache;
  auto one_minus_pow = [&](std::size_t q, int k) -> const LaurentPoly& {
    auto key = std::make_pair(q, k);
    auto it = pow_cache.find(key);
    if (it == pow_cache.end()) it = pow_cache.emplace(key, one_minus(source, q).pow(k)).first;
    return it->second;
  };
  LaurentPoly num(source);
  for (const auto& [e, c] : f.terms()) {
    Exponents s(source->size(), 0);
    std::map<std::size_t, int> loc;
    for (std::size_t i = 0; i < nvars; ++i) {
      if (!e[i]) continue;
      if (kind[i] == Sort::Inv)
        s[parent[i]] -= e[i];
      else if (kind[i] == Sort::Loc)
        loc[parent[i]] += e[i];
      else
        s[parent[i]] += e[i];
    }
    LaurentPoly t = LaurentPoly::monomial(source, s, c);
    for (const auto& [q, m] : maxloc) {
      int k = m - (loc.count(q) ? loc[q] : 0);
      if (k > 0) t = t * one_minus_pow(q, k);
    }
    num += t;
  }
  QLocalized::Denominator den;
  for (const auto& [q, m] : maxloc) den[q] = m;
  return QLocalized(std::move(num), std::move(den));
}

namespace {

struct Pair {
  std::size_t i, j;
  Mono lcm;
  int sugar;
};

}  // namespace

void GroebnerBasis::Impl::run(const std::vector<QLocalized>& relations) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<Poly> inputs;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (kind[v] == Sort::Inv) {
      Poly p(2);
      p[0].m.e[v] = 1;
      p[0].m.e[ring_of_source[parent[v]]] = 1;
      p[0].m.refresh(nvars);
      p[0].c = 1;
      p[1].m.refresh(nvars);
      p[1].c = -1;
      inputs.push_back(std::move(p));
    } else if (kind[v] == Sort::Loc) {
      // loc (1 - Q) - 1 = loc - loc*Q - 1
      Poly p(3);
      p[0].m.e[v] = 1;
      p[0].m.e[ring_of_source[parent[v]]] = 1;
      p[0].c = -1;
      p[1].m.e[v] = 1;
      p[1].c = 1;
      p[2].c = -1;
      for (auto& t : p) t.m.refresh(nvars);
      sort_poly(p);
      inputs.push_back(std::move(p));
    }
  }
  for (const auto& r : relations) {
    Poly p = from_laurent(to_ring(r));
    if (!p.empty()) inputs.push_back(std::move(p));
  }

  std::vector<Poly> G;
  std::vector<int> sugar;
  std::vector<bool> active;
  std::vector<Pair> B;
  std::vector<const Poly*> reducers;

  auto rebuild_reducers = [&] {
    reducers.clear();
    for (std::size_t i = 0; i < G.size(); ++i)
      if (active[i]) reducers.push_back(&G[i]);
  };

  auto coprime = [&](const Mono& a, const Mono& b) { return (a.mask & b.mask) == 0; };

  auto add = [&](Poly h, int sug) {
    make_monic(h);
    if (cap >= 0) {
      int qd = q_degree(h);
      if (qd > cap)
        throw CapExceeded("Groebner basis element of Q-degree " + std::to_string(qd) + " exceeds the cap " +
                          std::to_string(cap) + "; raise --q-cap");
    }
    std::size_t t = G.size();
    G.push_back(std::move(h));
    sugar.push_back(sug);
    active.push_back(true);
    const Mono& lt = G[t][0].m;
    std::vector<Pair> C;
    for (std::size_t i = 0; i < t; ++i) {
      if (!active[i]) continue;
      Mono l = lcm(G[i][0].m, lt);
      int s = std::max(sugar[i] + l.deg - G[i][0].m.deg, sug + l.deg - lt.deg);
      C.push_back({i, t, l, s});
    }
    stats.pairs_created += C.size();
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair& p = C[a];
      bool keep = coprime(G[p.i][0].m, lt);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (divides(C[b].lcm, p.lcm, nvars)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (divides(D[b].lcm, p.lcm, nvars)) keep = false;
      }
      if (keep)
        D.push_back(p);
      else
        ++stats.chain_criterion;
    }
    std::vector<Pair> Bn;
    for (auto& p : B) {
      if (divides(lt, p.lcm, nvars) && cmp(lcm(G[p.i][0].m, lt), p.lcm) != 0 &&
          cmp(lcm(G[p.j][0].m, lt), p.lcm) != 0) {
        ++stats.chain_criterion;
        continue;
      }
      Bn.push_back(std::move(p));
    }
    for (auto& p : D) {
      if (coprime(G[p.i][0].m, lt)) {
        ++stats.product_criterion;
        continue;
      }
      Bn.push_back(std::move(p));
    }
    B = std::move(Bn);
    for (std::size_t i = 0; i < t; ++i)
      if (active[i] && divides(lt, G[i][0].m, nvars)) active[i] = false;
    rebuild_reducers();
  };

  // inputs sorted by sugar then leading term so the run is reproducible
  std::vector<std::pair<int, std::size_t>> by_deg;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    int d = 0;
    for (const auto& t : inputs[i]) d = std::max(d, t.m.deg);
    by_deg.push_back({d, i});
  }
  std::stable_sort(by_deg.begin(), by_deg.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return cmp(inputs[a.second][0].m, inputs[b.second][0].m) < 0;
  });
  for (const auto& [d, i] : by_deg) {
    Poly h = reduce(inputs[i], reducers);
    if (!h.empty()) add(std::move(h), d);
  }

  while (!B.empty()) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < B.size(); ++a) {
      const Pair& x = B[a];
      const Pair& y = B[best];
      if (x.sugar != y.sugar) {
        if (x.sugar < y.sugar) best = a;
        continue;
      }
      int c = cmp(x.lcm, y.lcm);
      if (c < 0 || (c == 0 && std::make_pair(x.j, x.i) < std::make_pair(y.j, y.i))) best = a;
    }
    Pair p = B[best];
    B.erase(B.begin() + static_cast<std::ptrdiff_t>(best));
    ++stats.pairs_reduced;
    stats.max_sugar = std::max(stats.max_sugar, p.sugar);
    const Poly& f = G[p.i];
    const Poly& g = G[p.j];
    Mono mf = quot(p.lcm, f[0].m);
    Mono mg = quot(p.lcm, g[0].m);
    Poly sf;
    for (const auto& t : f) {
      if (&t == &f[0]) continue;
      sf.push_back({mul(mf, t.m), t.c / f[0].c});
    }
    Poly s = sub_mul(sf, 0, 1 / g[0].c, mg, g, 1);
    Poly h = reduce(std::move(s), reducers);
    if (h.empty()) {
      ++stats.zero_reductions;
      continue;
    }
    add(std::move(h), p.sugar);
  }

  // interreduce the minimal basis
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i)
    if (active[i]) minimal.push_back(G[i]);
  std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) { return cmp(a[0].m, b[0].m) < 0; });
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<const Poly*> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(&minimal[j]);
    Poly tail(minimal[i].begin() + 1, minimal[i].end());
    Poly red = reduce(std::move(tail), others);
    Poly full;
    full.push_back(minimal[i][0]);
    full.insert(full.end(), red.begin(), red.end());
    make_monic(full);
    minimal[i] = std::move(full);
  }
  polys = std::move(minimal);
  basis.clear();
  max_q_degree = 0;
  for (const auto& p : polys) {
    basis.push_back(to_laurent(p));
    max_q_degree = std::max(max_q_degree, q_degree(p));
  }
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GroebnerBasis groebner(const std::vector<QLocalized>& relations, const MonomialOrder& order, int q_degree_cap) {
  if (relations.empty()) throw std::invalid_argument("groebner needs at least one relation");
  auto impl = std::make_shared<GroebnerBasis::Impl>();
  impl->cap = q_degree_cap;
  impl->build_ring(relations.front().registry(), order);
  impl->run(relations);
  GroebnerBasis gb;
  gb.impl_ = std::move(impl);
  return gb;
}

const RegistryPtr& GroebnerBasis::source() const { return impl_->source; }
const RegistryPtr& GroebnerBasis::ring() const { return impl_->ring; }
const MonomialOrder& GroebnerBasis::order() const { return impl_->order; }
const MonomialOrder& GroebnerBasis::source_order() const { return impl_->source_order; }
const std::vector<LaurentPoly>& GroebnerBasis::basis() const { return impl_->basis; }
const GroebnerStats& GroebnerBasis::stats() const { return impl_->stats; }
int GroebnerBasis::q_degree_cap() const { return impl_->cap; }
int GroebnerBasis::max_q_degree() const { return impl_->max_q_degree; }

std::vector<Exponents> GroebnerBasis::leading_monomials() const {
  std::vector<Exponents> out;
  for (const auto& p : impl_->polys) {
    Exponents e(impl_->nvars);
    for (std::size_t i = 0; i < impl_->nvars; ++i) e[i] = p[0].m.e[i];
    out.push_back(std::move(e));
  }
  return out;
}

std::size_t GroebnerBasis::ring_index(std::size_t source_var) const {
  auto r = impl_->ring_of_source.at(source_var);
  if (r < 0) throw RegistryMismatch("variable " + impl_->source->var(source_var).name + " is not ordered");
  return static_cast<std::size_t>(r);
}

LaurentPoly GroebnerBasis::to_ring(const QLocalized& f) const { return impl_->to_ring(f); }
QLocalized GroebnerBasis::from_ring(const LaurentPoly& f) const { return impl_->from_ring(f); }

LaurentPoly GroebnerBasis::reduce(const LaurentPoly& ring_poly) const {
  require_compatible(ring_poly.registry(), impl_->ring);
  std::vector<const Poly*> G;
  for (const auto& p : impl_->polys) G.push_back(&p);
  return impl_->to_laurent(impl_->reduce(impl_->from_laurent(ring_poly), G));
}

QLocalized GroebnerBasis::normal_form(const QLocalized& f) const { return from_ring(reduce(to_ring(f))); }

GroebnerBasis::GenericCoordinates GroebnerBasis::generic_coordinates(const LaurentPoly& ring_poly,
                                                                  const std::vector<std::size_t>& gen_vars) const {
  const Impl& I = *impl_;
  require_compatible(ring_poly.registry(), I.ring);
  std::uint64_t gmask = 0;
  for (auto v : gen_vars) gmask |= std::uint64_t{1} << v;
  auto gen_part = [&](const Mono& m) {
    Mono r;
    for (auto v : gen_vars) r.e[v] = m.e[v];
    r.refresh(I.nvars);
    return r;
  };
  auto same_gen = [&](const Mono& a, const Mono& b) {
    for (auto v : gen_vars)
      if (a.e[v] != b.e[v]) return false;
    return true;
  };
  auto mul_poly = [&](const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& x : a)
      for (const auto& y : b) out.push_back({I.mul(x.m, y.m), x.c * y.c});
    I.sort_poly(out);
    return out;
  };
  auto sub = [&](const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& t : b) out.push_back({t.m, -t.c});
    I.sort_poly(out);
    return out;
  };

  std::vector<const Poly*> base_only;
  struct Reducer {
    Mono lead;  // generator part of the leading monomial
    Poly lc;    // base coefficient of `lead`
    const Poly* g;
  };
  std::vector<Reducer> reducers;
  for (const auto& g : I.polys) {
    if (!(g[0].m.mask & gmask)) {
      base_only.push_back(&g);
      continue;
    }
    Reducer r{gen_part(g[0].m), {}, &g};
    for (const auto& t : g) {
      if (!same_gen(t.m, g[0].m)) break;
      r.lc.push_back({I.quot(t.m, r.lead), t.c});
    }
    reducers.push_back(std::move(r));
  }

  Poly f = I.reduce(I.from_laurent(ring_poly), base_only);
  Poly scale(1);
  scale[0].m.refresh(I.nvars);
  scale[0].c = 1;
  while (true) {
    // largest generator monomial of f divisible by some reducer
    bool found = false;
    std::size_t lo = 0, hi = 0;
    const Reducer* red = nullptr;
    for (std::size_t i = 0; i < f.size() && !found;) {
      std::size_t j = i;
      while (j < f.size() && same_gen(f[j].m, f[i].m)) ++j;
      Mono gp = gen_part(f[i].m);
      for (const auto& r : reducers)
        if (Impl::divides(r.lead, gp, I.nvars)) {
          red = &r;
          found = true;
          lo = i;
          hi = j;
          break;
        }
      i = j;
    }
    if (!found) break;
    Mono gp = gen_part(f[lo].m);
    Mono shift = I.quot(gp, red->lead);
    Poly C;
    for (std::size_t i = lo; i < hi; ++i) C.push_back({I.quot(f[i].m, gp), f[i].c});
    Poly gshift;
    for (const auto& t : *red->g) gshift.push_back({I.mul(shift, t.m), t.c});
    f = sub(mul_poly(red->lc, f), mul_poly(C, gshift));
    f = I.reduce(std::move(f), base_only);
    scale = I.reduce(mul_poly(scale, red->lc), base_only);
  }
  GenericCoordinates out{I.to_laurent(scale), {}};
  for (const auto& t : f) {
    Mono gp = gen_part(t.m);
    Exponents key(I.nvars, 0);
    for (auto v : gen_vars) key[v] = gp.e[v];
    Exponents rest(I.nvars, 0);
    Mono b = I.quot(t.m, gp);
    for (std::size_t i = 0; i < I.nvars; ++i) rest[i] = b.e[i];
    auto it = out.coeffs.try_emplace(key, I.ring).first;
    it->second.add_term(rest, t.c);
  }
  return out;
}

json GroebnerBasis::to_json() const {
  json j;
  j["order"] = impl_->source_order.describe(*impl_->source);
  json blocks = json::array();
  for (std::size_t b = 0; b < impl_->source_order.blocks.size(); ++b) {
    json names = json::array();
    json weights = json::array();
    for (std::size_t i = 0; i < impl_->source_order.blocks[b].size(); ++i) {
      names.push_back(impl_->source->var(impl_->source_order.blocks[b][i]).name);
      weights.push_back(impl_->source_order.weight(b, i));
    }
    blocks.push_back({{"kind", order_kind_name(impl_->source_order.block_kinds[b])},
                      {"variables", names},
                      {"weights", weights},
                      {"inverse_first", impl_->source_order.is_inverse_first(b)}});
  }
  j["blocks"] = blocks;
  j["q_degree_cap"] = impl_->cap;
  json basis = json::array();
  for (const auto& p : impl_->basis) basis.push_back(qkflag::to_json(p));
  j["basis"] = basis;
  return j;
}

GroebnerBasis GroebnerBasis::from_json(const RegistryPtr& source, const json& j) {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<OrderKind> kinds;
  std::vector<std::vector<int>> weights;
  std::vector<bool> inv_first;
  for (const auto& b : j.at("blocks")) {
    inv_first.push_back(b.value("inverse_first", false));
    weights.push_back(b.value("weights", std::vector<int>{}));
    std::string k = b.at("kind").get<std::string>();
    if (k == "lex")
      kinds.push_back(OrderKind::Lex);
    else if (k == "grevlex")
      kinds.push_back(OrderKind::Grevlex);
    else
      throw ParseError("unknown block kind " + k);
    std::vector<std::size_t> vars;
    for (const auto& name : b.at("variables")) vars.push_back(source->index(name.get<std::string>()));
    blocks.push_back(std::move(vars));
  }
  auto impl = std::make_shared<Impl>();
  MonomialOrder ord = MonomialOrder::block(std::move(blocks), std::move(kinds));
  for (std::size_t b = 0; b < weights.size(); ++b) {
    if (!weights[b].empty()) ord = ord.with_weights(b, weights[b]);
    if (inv_first[b]) ord = ord.with_inverse_first(b);
  }
  impl->build_ring(source, ord);
  impl->cap = j.value("q_degree_cap", -1);
  for (const auto& p : j.at("basis")) {
    LaurentPoly f = laurent_from_json(impl->ring, p);
    impl->polys.push_back(impl->from_laurent(f));
    impl->basis.push_back(std::move(f));
    impl->max_q_degree = std::max(impl->max_q_degree, impl->q_degree(impl->polys.back()));
  }
  GroebnerBasis gb;
  gb.impl_ = std::move(impl);
  return gb;
}

}  // namespace qkflag
