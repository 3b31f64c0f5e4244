#include "qkflag/quotient.hpp"

#include <openssl/sha.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>

#include "qkflag/errors.hpp"

namespace qkflag {

namespace {

std::vector<std::size_t> alphabet(const RegistryPtr& reg, Sort s, int j, int count) {
  std::vector<std::size_t> out;
  for (int l = 1; l <= count; ++l) out.push_back(reg->index(s, j, l));
  return out;
}

void append(std::vector<std::size_t>& a, const std::vector<std::size_t>& b) { a.insert(a.end(), b.begin(), b.end()); }

std::string sha256_hex(const std::string& data) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
  std::string out;
  char buf[3];
  for (unsigned char c : md) {
    std::snprintf(buf, sizeof buf, "%02x", c);
    out += buf;
  }
  return out;
}

}  // namespace

std::string default_cache_dir() {
  const char* env = std::getenv("QKFLAG_CACHE_DIR");
  return env ? env : "";
}

MonomialOrder default_order(const Presentation& p) {
  const auto& s = p.shape;
  const auto& reg = p.reg;
  std::vector<std::size_t> gens;
  switch (p.flavor) {
    case Flavor::Toda:
      for (int j = s.k(); j >= 0; --j) append(gens, alphabet(reg, Sort::EY, j, s.d(j)));
      break;
    case Flavor::Whitney:
      for (int j = s.k(); j >= 2; --j) append(gens, alphabet(reg, Sort::EX, j, s.r(j)));
      for (int j = s.k(); j >= 1; --j) append(gens, alphabet(reg, Sort::EY, j, s.d(j)));
      append(gens, alphabet(reg, Sort::EX, 1, s.r(1)));
      break;
    case Flavor::TodaP:
      for (int i = s.n; i >= 1; --i) gens.push_back(reg->index(Sort::P, i));
      break;
  }
  return MonomialOrder::block({gens, reg->of_sort(Sort::Q), reg->of_sort(Sort::T)},
                              {OrderKind::Grevlex, OrderKind::Grevlex, OrderKind::Grevlex})
      .with_inverse_first(0);
}

int q_degree(const QLocalized& f) {
  auto qs = f.registry() ? f.registry()->of_sort(Sort::Q) : std::vector<std::size_t>{};
  int best = 0;
  for (const auto& [e, c] : f.num().terms()) {
    int d = 0;
    for (auto q : qs) d += e[q];
    best = std::max(best, d);
  }
  return best;
}

QuotientRing::QuotientRing(Presentation p, QuotientOptions opt) : pres_(std::move(p)) {
  cap_ = opt.q_degree_cap < 0 ? pres_.shape.n : opt.q_degree_cap;
  MonomialOrder order = opt.order ? *opt.order : default_order(pres_);
  json rels = json::array();
  for (const auto& r : pres_.relations) rels.push_back(to_json(r.value));
  key_ = pres_.shape.to_string() + "|" + flavor_name(pres_.flavor) + "|" + order.describe(*pres_.reg) +
         "|cap=" + std::to_string(cap_);
  std::string hash = sha256_hex(key_ + "\n" + rels.dump());

  std::string dir = opt.cache_dir.empty() ? default_cache_dir() : opt.cache_dir;
  std::filesystem::path file;
  bool have = false;
  if (opt.use_cache && !dir.empty()) {
    file = std::filesystem::path(dir) / ("qkflag-gb-" + hash.substr(0, 32) + ".json");
    std::ifstream in(file);
    if (in) {
      try {
        json j = json::parse(in);
        if (j.at("hash") == hash && j.at("key") == key_) {
          gb_ = GroebnerBasis::from_json(pres_.reg, j.at("groebner"));
          have = true;
          from_cache_ = true;
        }
      } catch (const std::exception&) {
        have = false;
      }
    }
  }
  if (!have) {
    gb_ = groebner(pres_.values(), order);
    if (!file.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(file.parent_path(), ec);
      std::filesystem::path tmp = file;
      tmp += ".tmp";
      std::ofstream out(tmp);
      if (out) {
        out << json{{"key", key_}, {"hash", hash}, {"groebner", gb_.to_json()}}.dump(1) << "\n";
        out.close();
        std::filesystem::rename(tmp, file, ec);
      }
    }
  }

  const auto& reg = pres_.reg;
  const auto& s = pres_.shape;
  const auto& ring = gb_.ring();
  for (auto g : pres_.generators) {
    std::size_t r = gb_.ring_index(g);
    gen_ring_vars_.push_back(r);
    for (std::size_t i = 0; i < ring->size(); ++i)
      if (ring->var(i).sort == Sort::Inv && ring->var(i).j == static_cast<int>(r)) gen_ring_vars_.push_back(i);
  }
  std::sort(gen_ring_vars_.begin(), gen_ring_vars_.end());
  if (pres_.flavor != Flavor::Whitney) {
    auto partial = tridiag_partial_dets(toda_matrix(s));
    std::size_t y = reg->index(Sort::y);
    for (int j = 1; j <= s.k(); ++j) {
      auto coeffs = y_coefficients(partial[j], y);
      for (int l = 1; l <= s.r(j); ++l) {
        QLocalized c = l < static_cast<int>(coeffs.size()) ? coeffs[l] : QLocalized(LaurentPoly(reg));
        if (pres_.flavor == Flavor::TodaP) c = toda_to_p(c, s.n);
        to_gens_[reg->index(Sort::EX, j, l)] = c;
      }
    }
  }
}

QLocalized QuotientRing::from_whitney_generators(const QLocalized& f) const {
  require_compatible(f.registry(), pres_.reg);
  if (to_gens_.empty()) return f;
  return substitute(f, to_gens_);
}

QLocalized QuotientRing::normal_form(const QLocalized& f) const {
  QLocalized nf = gb_.normal_form(f);
  int d = q_degree(nf);
  if (d > cap_)
    throw CapExceeded("normal form has Q-degree " + std::to_string(d) + ", above the cap " + std::to_string(cap_) +
                      "; rerun with a larger --q-cap");
  return nf;
}

bool QuotientRing::reduces_to_zero(const QLocalized& f) const { return gb_.in_ideal(f); }

Staircase QuotientRing::staircase() const {
  Staircase sc;
  const auto& ring = gb_.ring();
  const auto& gens = gen_ring_vars_;
  std::vector<bool> is_gen(ring->size(), false);
  for (auto g : gens) is_gen[g] = true;

  std::vector<Exponents> walls;
  for (const auto& lm : gb_.leading_monomials()) {
    bool any_gen = false;
    std::size_t base_vars = 0;
    Exponents gp(lm.size(), 0);
    for (std::size_t i = 0; i < lm.size(); ++i) {
      if (!lm[i]) continue;
      if (is_gen[i]) {
        any_gen = true;
        gp[i] = lm[i];
      } else {
        ++base_vars;
      }
    }
    if (any_gen) {
      if (base_vars) sc.generator_pure = false;
      walls.push_back(std::move(gp));
      continue;
    }
    // only v * inv_v and Q * loc_Q are expected among base leading terms
    bool companion = false;
    if (base_vars == 2)
      for (std::size_t i = 0; i < lm.size(); ++i) {
        auto so = ring->var(i).sort;
        if (lm[i] == 1 && (so == Sort::Inv || so == Sort::Loc))
          companion = lm[static_cast<std::size_t>(ring->var(i).j)] == 1;
      }
    if (!companion) sc.generator_pure = false;
  }
  for (auto g : gens) {
    bool bounded = false;
    for (const auto& w : walls) {
      bool only = w[g] > 0;
      for (std::size_t i = 0; i < w.size() && only; ++i)
        if (w[i] && i != g) only = false;
      bounded = bounded || only;
    }
    if (!bounded) sc.finite = false;
  }
  if (!sc.finite) return sc;

  Exponents cur(ring->size(), 0);
  auto divisible = [&]() {
    for (const auto& w : walls) {
      bool d = true;
      for (auto g : gens)
        if (w[g] > cur[g]) {
          d = false;
          break;
        }
      if (d) return true;
    }
    return false;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == gens.size()) {
      Exponents src(pres_.reg->size(), 0);
      for (auto g : gens) {
        if (!cur[g]) continue;
        const auto& vi = ring->var(g);
        if (vi.sort == Sort::Inv)
          src[pres_.reg->index(ring->var(vi.j).name)] -= cur[g];
        else
          src[pres_.reg->index(vi.name)] += cur[g];
      }
      sc.monomials.push_back(std::move(src));
      return;
    }
    for (int e = 0;; ++e) {
      cur[gens[k]] = e;
      if (divisible()) break;
      rec(k + 1);
    }
    cur[gens[k]] = 0;
  };
  rec(0);
  return sc;
}

std::size_t QuotientRing::rank() const {
  auto sc = staircase();
  if (!sc.finite) throw SingularSystem("quotient is not finite over the base");
  return sc.monomials.size();
}

Coordinates QuotientRing::coordinates(const QLocalized& f) const {
  auto gc = gb_.generic_coordinates(gb_.to_ring(f), gen_ring_vars_);
  Coordinates out{gb_.from_ring(gc.scale), {}};
  for (const auto& [k, v] : gc.coeffs) {
    QLocalized c = gb_.from_ring(v);
    if (!c.is_zero()) out.coeffs.emplace(k, std::move(c));
  }
  return out;
}

QLocalized quantum_product(const SchubertPoly& a, const SchubertPoly& b, const QuotientRing& R) {
  const auto& s = R.presentation().shape;
  if (a.shape != s || b.shape != s)
    throw ShapeMismatch("factors of shape " + a.shape.to_string() + " and " + b.shape.to_string() +
                        " in a ring of shape " + s.to_string());
  QLocalized fa = R.from_whitney_generators(QLocalized(a.poly));
  QLocalized fb = R.from_whitney_generators(QLocalized(b.poly));
  return R.normal_form(fa * fb);
}

namespace {

// Fraction-free elimination over the localized base ring. Returns D and X
// with D * x = X for the unique solution x of A x = b.
std::pair<QLocalized, std::vector<QLocalized>> bareiss_solve(std::vector<std::vector<QLocalized>> A,
                                                              const RegistryPtr& reg) {
  std::size_t rows = A.size();
  std::size_t N = rows ? A[0].size() - 1 : 0;
  QLocalized zero{LaurentPoly(reg)};
  QLocalized prev{LaurentPoly::constant(reg, 1)};
  for (std::size_t c = 0; c < N; ++c) {
    std::size_t best = rows;
    for (std::size_t r = c; r < rows; ++r) {
      if (A[r][c].is_zero()) continue;
      if (best == rows || A[r][c].num().size() < A[best][c].num().size()) best = r;
    }
    if (best == rows)
      throw SingularSystem("basis elements are linearly dependent (column " + std::to_string(c) + ")");
    std::swap(A[c], A[best]);
    for (std::size_t r = c + 1; r < rows; ++r) {
      for (std::size_t j = c + 1; j <= N; ++j) {
        QLocalized v = A[c][c] * A[r][j];
        if (!A[r][c].is_zero()) v -= A[r][c] * A[c][j];
        A[r][j] = v.exact_divide(prev);
      }
      A[r][c] = zero;
    }
    prev = A[c][c];
  }
  for (std::size_t r = N; r < rows; ++r)
    if (!A[r][N].is_zero()) throw InconsistentSystem("target is not in the span of the basis");
  QLocalized D = N ? A[N - 1][N - 1] : QLocalized(LaurentPoly::constant(reg, 1));
  std::vector<QLocalized> X(N, zero);
  for (std::size_t c = N; c-- > 0;) {
    QLocalized acc = D * A[c][N];
    for (std::size_t j = c + 1; j < N; ++j)
      if (!X[j].is_zero()) acc -= A[c][j] * X[j];
    X[c] = acc.exact_divide(A[c][c]);
  }
  return {D, X};
}

}  // namespace

std::map<WeylElement, QLocalized> schubert_expand(const QLocalized& f, const std::vector<SchubertClass>& basis,
                                                  const QuotientRing& R) {
  const auto& reg = R.presentation().reg;
  std::vector<Coordinates> cols;
  for (const auto& c : basis) {
    if (c.rep.shape != R.presentation().shape) throw ShapeMismatch("basis element of another shape");
    cols.push_back(R.coordinates(R.from_whitney_generators(QLocalized(c.rep.poly))));
  }
  Coordinates target = R.coordinates(R.from_whitney_generators(f));
  std::map<Exponents, std::size_t> row_of;
  for (const auto& col : cols)
    for (const auto& [k, v] : col.coeffs) row_of.try_emplace(k, 0);
  for (const auto& [k, v] : target.coeffs) row_of.try_emplace(k, 0);
  std::size_t r = 0;
  for (auto& [k, idx] : row_of) idx = r++;
  if (row_of.size() < basis.size()) throw SingularSystem("fewer standard monomials than basis elements");
  QLocalized zero{LaurentPoly(reg)};
  std::vector<std::vector<QLocalized>> A(row_of.size(), std::vector<QLocalized>(basis.size() + 1, zero));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [k, v] : cols[c].coeffs) A[row_of[k]][c] = v;
  for (const auto& [k, v] : target.coeffs) A[row_of[k]][basis.size()] = v;
  // unknowns b_w = a_w * target.scale / scale_w
  auto [D, X] = bareiss_solve(std::move(A), reg);
  std::map<WeylElement, QLocalized> out;
  QLocalized denom = D * target.scale;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    QLocalized a;
    try {
      a = (X[c] * cols[c].scale).exact_divide(denom);
    } catch (const InexactDivision&) {
      throw SingularSystem("expansion coefficient of " + basis[c].w.to_string() + " is not in the base ring");
    }
    if (q_degree(a) > R.q_degree_cap())
      throw CapExceeded("expansion coefficient of Q-degree " + std::to_string(q_degree(a)) + " exceeds the cap " +
                        std::to_string(R.q_degree_cap()) + "; rerun with a larger --q-cap");
    out.emplace(basis[c].w, std::move(a));
  }
  return out;
}

namespace {

template <class Key>
const QuotientRing& memo_ring(std::map<Key, std::unique_ptr<QuotientRing>>& m, const Key& k,
                              const std::function<Presentation()>& make) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = m.find(k);
  if (it == m.end()) it = m.emplace(k, std::make_unique<QuotientRing>(make())).first;
  return *it->second;
}

LaurentPoly prod_T(const RegistryPtr& reg) {
  LaurentPoly p = LaurentPoly::constant(reg, 1);
  for (auto t : reg->of_sort(Sort::T)) p = p * LaurentPoly::variable(reg, t);
  return p;
}

}  // namespace

const QuotientRing& whitney_full_flag_ring(int n) {
  static std::map<int, std::unique_ptr<QuotientRing>> rings;
  return memo_ring<int>(rings, n, [n] { return whitney_presentation(FlagShape::full(n)); });
}

const QuotientRing& toda_ring(const FlagShape& s) {
  static std::map<FlagShape, std::unique_ptr<QuotientRing>> rings;
  return memo_ring<FlagShape>(rings, s, [s] { return toda_presentation(s); });
}

bool verify_mns_rewrite(int n, int i, int j) {
  if (!(1 <= i && i < j && j <= n))
    throw IndexOutOfRange("need 1 <= i < j <= n, got i=" + std::to_string(i) + " j=" + std::to_string(j));
  const QuotientRing& R = whitney_full_flag_ring(n);
  const auto& reg = R.presentation().reg;
  const auto& s = R.presentation().shape;
  auto det_S = [&](int m) {
    if (m == n) return prod_T(reg);
    return LaurentPoly::variable(reg, reg->index(Sort::EX, m, m));
  };
  QLocalized D;
  if (j == i + 1) {
    D = QLocalized(LaurentPoly::variable(reg, reg->index(Sort::EY, i, 1)));
  } else {
    LaurentPoly line = LaurentPoly::constant(reg, 1);
    for (int l = i; l < j; ++l) line = line * LaurentPoly::variable(reg, reg->index(Sort::EY, l, 1));
    auto basis = schubert_basis(s);
    auto coeff = classical_expand(line, s, basis);
    LaurentPoly sum(reg);
    for (const auto& c : basis) {
      auto it = coeff.find(c.w);
      if (it != coeff.end() && !it->second.is_zero()) sum += it->second * c.rep.poly;
    }
    D = QLocalized(sum);
  }
  std::size_t qi = reg->index(Sort::Q, i);
  QLocalized lhs = QLocalized(det_S(i)) * D - QLocalized(one_minus(reg, qi) * det_S(j));
  return R.reduces_to_zero(lhs);
}

bool verify_wedge_identity(int n, int k, int p) {
  QLocalized rhs = wedge_expansion_rhs(n, k, p);
  const QuotientRing& R = whitney_full_flag_ring(n);
  const auto& reg = R.presentation().reg;
  FlagShape s = FlagShape::full(n);
  rhs = toda_to_whitney_generators(rhs, s);
  LaurentPoly target;
  if (p == 0)
    target = LaurentPoly::constant(reg, 1);
  else if (k == n)
    target = elem_sym([&] {
      std::vector<LaurentPoly> ts;
      for (auto t : reg->of_sort(Sort::T)) ts.push_back(LaurentPoly::variable(reg, t));
      return ts;
    }(), p);
  else
    target = LaurentPoly::variable(reg, reg->index(Sort::EX, k, p));
  return R.reduces_to_zero(rhs - QLocalized(target));
}

}  // namespace qkflag
