#pragma once

#include <string>
#include <vector>

#include "qkflag/registry.hpp"

namespace qkflag {

enum class OrderKind { Lex, Grevlex, Block };

// Blocks are listed from most to least significant; inside a block the
// variables are listed from largest to smallest.
struct MonomialOrder {
  OrderKind kind = OrderKind::Block;
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<OrderKind> block_kinds;
  // optional per-variable weights for grevlex blocks (empty: all 1)
  std::vector<std::vector<int>> weights;
  // blocks where the inverse companion of a Laurent variable ranks above it,
  // so normal forms keep v rather than v^{-1}
  std::vector<bool> inverse_first;

  static MonomialOrder lex(std::vector<std::size_t> vars);
  static MonomialOrder grevlex(std::vector<std::size_t> vars);
  static MonomialOrder block(std::vector<std::vector<std::size_t>> blocks, std::vector<OrderKind> kinds);
  MonomialOrder with_weights(std::size_t block, std::vector<int> w) const;
  int weight(std::size_t block, std::size_t pos) const;
  MonomialOrder with_inverse_first(std::size_t block) const;
  bool is_inverse_first(std::size_t block) const { return block < inverse_first.size() && inverse_first[block]; }

  std::vector<std::size_t> variables() const;
  std::string describe(const VarRegistry& reg) const;
};

const char* order_kind_name(OrderKind k);

}  // namespace qkflag
