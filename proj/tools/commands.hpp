#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace qkflag::cli {

enum class Format { Json, Latex, Text };

struct Globals {
  Format format = Format::Json;
  int q_cap = -1;
  bool sl = false;
  std::uint64_t seed = 42;
};

enum Exit { Ok = 0, Failed = 1, Usage = 2, Cap = 3 };

int cmd_present(const Globals& g, const std::string& shape, const std::string& flavor, std::ostream& out);

int cmd_schubert(const Globals& g, const std::string& shape, const std::optional<std::string>& word,
                 const std::optional<std::string>& element, std::ostream& out);

int cmd_multiply(const Globals& g, const std::string& shape, const std::string& a, const std::string& b,
                 const std::string& flavor, std::ostream& out);

// f written in the Whitney generators e_l(X^(j)), like the Schubert representatives
int cmd_expand(const Globals& g, const std::string& shape, const std::string& poly, const std::string& flavor,
               std::ostream& out);

int cmd_toda_ham(const Globals& g, int n, int k, const std::string& what, std::ostream& out);

int cmd_verify(const Globals& g, const std::string& suite, const std::string& filter, const std::string& fixtures,
               std::ostream& out);

}  // namespace qkflag::cli
