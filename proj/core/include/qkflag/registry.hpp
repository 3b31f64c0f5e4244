#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qkflag {

// Inv and Loc are internal: Inv is the polynomial stand-in v^ for v^{-1},
// Loc is u_j standing for 1/(1-Q_j). Both only appear in Groebner rings.
enum class Sort { T, Q, y, q, x, P, EX, EY, Inv, Loc };

const char* sort_name(Sort s);
bool sort_is_laurent(Sort s);

struct VarInfo {
  std::string name;
  Sort sort;
  int j = 0;
  int l = 0;
};

class VarRegistry;
using RegistryPtr = std::shared_ptr<const VarRegistry>;

class VarRegistry {
 public:
  static RegistryPtr make(std::vector<VarInfo> vars);

  std::size_t size() const { return vars_.size(); }
  const VarInfo& var(std::size_t i) const { return vars_.at(i); }
  const std::vector<VarInfo>& vars() const { return vars_; }
  bool laurent(std::size_t i) const { return sort_is_laurent(vars_[i].sort); }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;
  std::optional<std::size_t> find(Sort s, int j = 0, int l = 0) const;
  std::size_t index(Sort s, int j = 0, int l = 0) const;
  std::vector<std::size_t> of_sort(Sort s) const;

  bool same_as(const VarRegistry& other) const;

  static std::string default_name(Sort s, int j, int l);
  std::string latex_name(std::size_t i) const;

 private:
  explicit VarRegistry(std::vector<VarInfo> vars);
  std::vector<VarInfo> vars_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

bool compatible(const RegistryPtr& a, const RegistryPtr& b);
void require_compatible(const RegistryPtr& a, const RegistryPtr& b);

}  // namespace qkflag
