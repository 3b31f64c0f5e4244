#include "qkflag/registry.hpp"

#include "qkflag/errors.hpp"

namespace qkflag {

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::T: return "T";
    case Sort::Q: return "Q";
    case Sort::y: return "y";
    case Sort::q: return "q";
    case Sort::x: return "x";
    case Sort::P: return "P";
    case Sort::EX: return "EX";
    case Sort::EY: return "EY";
    case Sort::Inv: return "Inv";
    case Sort::Loc: return "Loc";
  }
  return "?";
}

bool sort_is_laurent(Sort s) {
  return s == Sort::T || s == Sort::P || s == Sort::x || s == Sort::q;
}

VarRegistry::VarRegistry(std::vector<VarInfo> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name.empty()) throw std::invalid_argument("empty variable name");
    if (!by_name_.emplace(vars_[i].name, i).second)
      throw std::invalid_argument("duplicate variable name " + vars_[i].name);
  }
}

RegistryPtr VarRegistry::make(std::vector<VarInfo> vars) {
  return RegistryPtr(new VarRegistry(std::move(vars)));
}

std::optional<std::size_t> VarRegistry::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t VarRegistry::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw RegistryMismatch("no variable named " + std::string(name));
  return *i;
}

std::optional<std::size_t> VarRegistry::find(Sort s, int j, int l) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].sort == s && vars_[i].j == j && vars_[i].l == l) return i;
  return std::nullopt;
}

std::size_t VarRegistry::index(Sort s, int j, int l) const {
  auto i = find(s, j, l);
  if (!i)
    throw RegistryMismatch(std::string("no variable of sort ") + sort_name(s) + " with j=" +
                           std::to_string(j) + " l=" + std::to_string(l));
  return *i;
}

std::vector<std::size_t> VarRegistry::of_sort(Sort s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].sort == s) out.push_back(i);
  return out;
}

bool VarRegistry::same_as(const VarRegistry& other) const {
  if (this == &other) return true;
  if (vars_.size() != other.vars_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& a = vars_[i];
    const auto& b = other.vars_[i];
    if (a.name != b.name || a.sort != b.sort || a.j != b.j || a.l != b.l) return false;
  }
  return true;
}

std::string VarRegistry::default_name(Sort s, int j, int l) {
  auto n = std::to_string(j);
  switch (s) {
    case Sort::T: return "T" + n;
    case Sort::Q: return "Q" + n;
    case Sort::y: return "y";
    case Sort::q: return "q";
    case Sort::x: return "x" + n;
    case Sort::P: return "P" + n;
    case Sort::EX: return "eX" + n + "_" + std::to_string(l);
    case Sort::EY: return "eY" + n + "_" + std::to_string(l);
    case Sort::Inv: return "inv" + n;
    case Sort::Loc: return "u" + n;
  }
  return "?";
}

std::string VarRegistry::latex_name(std::size_t i) const {
  const auto& v = vars_.at(i);
  auto n = std::to_string(v.j);
  switch (v.sort) {
    case Sort::T: return "T_{" + n + "}";
    case Sort::Q: return "Q_{" + n + "}";
    case Sort::y: return "y";
    case Sort::q: return "q";
    case Sort::x: return "x_{" + n + "}";
    case Sort::P: return "P_{" + n + "}";
    case Sort::EX: return "e_{" + std::to_string(v.l) + "}(X^{(" + n + ")})";
    case Sort::EY: return "e_{" + std::to_string(v.l) + "}(Y^{(" + n + ")})";
    case Sort::Inv: return "\\hat{" + latex_name(static_cast<std::size_t>(v.j)) + "}";
    case Sort::Loc: return "u_{" + std::to_string(vars_.at(v.j).j) + "}";
  }
  return v.name;
}

bool compatible(const RegistryPtr& a, const RegistryPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

void require_compatible(const RegistryPtr& a, const RegistryPtr& b) {
  if (!compatible(a, b)) throw RegistryMismatch("operands live in different registries");
}

}  // namespace qkflag
