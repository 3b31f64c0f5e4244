#include "qkflag/monomial_order.hpp"

#include <sstream>
#include <stdexcept>

namespace qkflag {

const char* order_kind_name(OrderKind k) {
  switch (k) {
    case OrderKind::Lex: return "lex";
    case OrderKind::Grevlex: return "grevlex";
    case OrderKind::Block: return "block";
  }
  return "?";
}

MonomialOrder MonomialOrder::lex(std::vector<std::size_t> vars) {
  return {OrderKind::Lex, {std::move(vars)}, {OrderKind::Lex}, {}, {}};
}

MonomialOrder MonomialOrder::grevlex(std::vector<std::size_t> vars) {
  return {OrderKind::Grevlex, {std::move(vars)}, {OrderKind::Grevlex}, {}, {}};
}

MonomialOrder MonomialOrder::block(std::vector<std::vector<std::size_t>> blocks, std::vector<OrderKind> kinds) {
  if (blocks.size() != kinds.size()) throw std::invalid_argument("one kind per block");
  for (auto k : kinds)
    if (k == OrderKind::Block) throw std::invalid_argument("blocks are lex or grevlex");
  return {OrderKind::Block, std::move(blocks), std::move(kinds), {}, {}};
}

MonomialOrder MonomialOrder::with_weights(std::size_t block, std::vector<int> w) const {
  if (block >= blocks.size() || w.size() != blocks[block].size()) throw std::invalid_argument("weights do not fit the block");
  for (int x : w)
    if (x <= 0) throw std::invalid_argument("weights must be positive");
  MonomialOrder o = *this;
  o.weights.resize(blocks.size());
  o.weights[block] = std::move(w);
  return o;
}

int MonomialOrder::weight(std::size_t block, std::size_t pos) const {
  if (block < weights.size() && !weights[block].empty()) return weights[block].at(pos);
  return 1;
}

MonomialOrder MonomialOrder::with_inverse_first(std::size_t block) const {
  if (block >= blocks.size()) throw std::invalid_argument("no such block");
  MonomialOrder o = *this;
  o.inverse_first.resize(blocks.size(), false);
  o.inverse_first[block] = true;
  return o;
}

std::vector<std::size_t> MonomialOrder::variables() const {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string MonomialOrder::describe(const VarRegistry& reg) const {
  std::ostringstream os;
  os << order_kind_name(kind);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    os << " [" << order_kind_name(block_kinds[b]) << (is_inverse_first(b) ? "/inv-first" : "") << ":";
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      os << (i ? "," : "") << reg.var(blocks[b][i]).name;
      if (weight(b, i) != 1) os << "^" << weight(b, i);
    }
    os << "]";
  }
  return os.str();
}

}  // namespace qkflag
