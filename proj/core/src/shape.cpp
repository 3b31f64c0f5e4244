#include "qkflag/shape.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "qkflag/errors.hpp"

namespace qkflag {

FlagShape::FlagShape(std::vector<int> r, int n_) : n(n_), ranks(std::move(r)) {
  if (ranks.empty()) throw InvalidShape("at least one rank is required");
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (ranks[i] < 1 || ranks[i] > n - 1)
      throw InvalidShape("rank " + std::to_string(ranks[i]) + " outside 1.." + std::to_string(n - 1));
    if (i > 0 && ranks[i] <= ranks[i - 1]) throw InvalidShape("ranks must be strictly increasing");
  }
}

FlagShape FlagShape::parse(std::string_view text) {
  auto semi = text.find(';');
  if (semi == std::string_view::npos) throw InvalidShape("expected 'r1,...,rk;n', got '" + std::string(text) + "'");
  auto to_int = [&](std::string_view s) {
    std::string t(s);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      throw InvalidShape("not an integer: '" + t + "'");
    }
    while (used < t.size() && t[used] == ' ') ++used;
    if (used != t.size()) throw InvalidShape("not an integer: '" + t + "'");
    return v;
  };
  std::vector<int> r;
  std::string_view head = text.substr(0, semi);
  std::size_t start = 0;
  while (start <= head.size()) {
    auto comma = head.find(',', start);
    auto piece = head.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    r.push_back(to_int(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return FlagShape(std::move(r), to_int(text.substr(semi + 1)));
}

FlagShape FlagShape::full(int n) {
  std::vector<int> r;
  for (int i = 1; i < n; ++i) r.push_back(i);
  return FlagShape(std::move(r), n);
}

FlagShape FlagShape::grassmannian(int r, int n) { return FlagShape({r}, n); }

int FlagShape::r(int j) const {
  if (j < 0 || j > k() + 1) throw IndexOutOfRange("rank index " + std::to_string(j));
  if (j == 0) return 0;
  if (j == k() + 1) return n;
  return ranks[j - 1];
}

bool FlagShape::is_full() const { return k() == n - 1; }

std::string FlagShape::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < k(); ++i) os << (i ? "," : "") << ranks[i];
  os << ";" << n;
  return os.str();
}

std::vector<FlagShape> all_shapes(int n) {
  std::vector<FlagShape> out;
  for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> r;
    for (int i = 1; i < n; ++i)
      if (mask & (1u << (i - 1))) r.push_back(i);
    out.emplace_back(std::move(r), n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::mutex registry_mutex;

VarInfo info(Sort s, int j = 0, int l = 0) { return {VarRegistry::default_name(s, j, l), s, j, l}; }

}  // namespace

RegistryPtr shape_registry(const FlagShape& s) {
  static std::map<FlagShape, RegistryPtr> cache;
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  std::vector<VarInfo> v;
  for (int j = 1; j <= s.k(); ++j)
    for (int l = 1; l <= s.r(j); ++l) v.push_back(info(Sort::EX, j, l));
  for (int j = 0; j <= s.k(); ++j)
    for (int l = 1; l <= s.d(j); ++l) v.push_back(info(Sort::EY, j, l));
  for (int i = 1; i <= s.n; ++i) v.push_back(info(Sort::P, i));
  v.push_back(info(Sort::y));
  for (int j = 1; j <= s.k(); ++j) v.push_back(info(Sort::Q, j));
  for (int i = 1; i <= s.n; ++i) v.push_back(info(Sort::T, i));
  auto reg = VarRegistry::make(std::move(v));
  cache.emplace(s, reg);
  return reg;
}

RegistryPtr chain_x_registry(int n) {
  static std::map<int, RegistryPtr> cache;
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<VarInfo> v{info(Sort::q)};
  for (int i = 1; i <= n; ++i) v.push_back(info(Sort::x, i));
  auto reg = VarRegistry::make(std::move(v));
  cache.emplace(n, reg);
  return reg;
}

RegistryPtr chain_q_registry(int n) {
  static std::map<int, RegistryPtr> cache;
  std::lock_guard<std::mutex> lock(registry_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<VarInfo> v;
  for (int i = 1; i <= n; ++i) v.push_back(info(Sort::P, i));
  v.push_back(info(Sort::q));
  for (int i = 1; i < n; ++i) v.push_back(info(Sort::Q, i));
  auto reg = VarRegistry::make(std::move(v));
  cache.emplace(n, reg);
  return reg;
}

}  // namespace qkflag
