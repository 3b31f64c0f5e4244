#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qkflag/registry.hpp"

namespace qkflag {

// Fl(r_1, ..., r_k; n), with r_0 = 0 and r_{k+1} = n implicit
struct FlagShape {
  int n = 0;
  std::vector<int> ranks;

  FlagShape() = default;
  FlagShape(std::vector<int> r, int n_);

  static FlagShape parse(std::string_view text);  // "r1,r2,...;n"
  static FlagShape full(int n);
  static FlagShape grassmannian(int r, int n);

  int k() const { return static_cast<int>(ranks.size()); }
  int r(int j) const;  // 0 <= j <= k+1
  int d(int j) const { return r(j + 1) - r(j); }
  bool is_full() const;
  bool is_grassmannian() const { return k() == 1; }
  std::string to_string() const;

  friend bool operator==(const FlagShape& a, const FlagShape& b) { return a.n == b.n && a.ranks == b.ranks; }
  friend bool operator!=(const FlagShape& a, const FlagShape& b) { return !(a == b); }
  friend bool operator<(const FlagShape& a, const FlagShape& b) {
    return a.n != b.n ? a.n < b.n : a.ranks < b.ranks;
  }
};

// every valid shape with the given n, in a fixed order
std::vector<FlagShape> all_shapes(int n);

// Variables for a shape: e_l(X^(j)) for j = 1..k, e_l(Y^(j)) for j = 0..k,
// P_1..P_n, y, Q_1..Q_k, T_1..T_n. Memoized, so equal shapes share a pointer.
RegistryPtr shape_registry(const FlagShape& s);

// q, x_1..x_n
RegistryPtr chain_x_registry(int n);
// P_1..P_n, q, Q_1..Q_{n-1}
RegistryPtr chain_q_registry(int n);

}  // namespace qkflag
