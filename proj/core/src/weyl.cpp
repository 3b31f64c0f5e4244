#include "qkflag/weyl.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "qkflag/errors.hpp"

namespace qkflag {

WeylElement::WeylElement(std::vector<int> one_line) : w_(std::move(one_line)) {
  std::vector<int> seen(w_.size() + 1, 0);
  for (int v : w_) {
    if (v < 1 || v > n() || seen[v]) throw ParseError("not a permutation: " + to_string());
    seen[v] = 1;
  }
  init();
}

void WeylElement::init() {
  length_ = 0;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (w_[i] > w_[j]) ++length_;
  word_.clear();
  std::vector<int> cur = w_;
  // peel off the smallest left descent each time
  while (true) {
    std::vector<int> pos(cur.size() + 1);
    for (int i = 0; i < n(); ++i) pos[cur[i]] = i;
    int found = 0;
    for (int i = 1; i < n(); ++i)
      if (pos[i] > pos[i + 1]) {
        found = i;
        break;
      }
    if (!found) break;
    word_.push_back(found);
    std::swap(cur[pos[found]], cur[pos[found + 1]]);
  }
}

WeylElement WeylElement::identity(int n) {
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 1);
  return WeylElement(std::move(w));
}

WeylElement WeylElement::simple(int n, int i) {
  if (i < 1 || i >= n) throw IndexOutOfRange("simple reflection s_" + std::to_string(i));
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 1);
  std::swap(w[i - 1], w[i]);
  return WeylElement(std::move(w));
}

WeylElement WeylElement::longest(int n) {
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = n - i;
  return WeylElement(std::move(w));
}

WeylElement WeylElement::from_word(int n, const std::vector<int>& word) {
  WeylElement w = identity(n);
  for (int i : word) w = w.right_mul_simple(i);
  return w;
}

WeylElement WeylElement::parse(std::string_view text) {
  std::string t;
  for (char c : text)
    if (c != '[' && c != ']' && c != ' ') t += c;
  std::vector<int> w;
  std::stringstream ss(t);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      w.push_back(std::stoi(piece));
    } catch (const std::exception&) {
      throw ParseError("bad permutation entry '" + piece + "'");
    }
  }
  return WeylElement(std::move(w));
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
  if (o.n() != n()) throw IndexOutOfRange("permutations of different sizes");
  std::vector<int> r(n());
  for (int i = 0; i < n(); ++i) r[i] = w_[o.w_[i] - 1];
  return WeylElement(std::move(r));
}

WeylElement WeylElement::inverse() const {
  std::vector<int> r(n());
  for (int i = 0; i < n(); ++i) r[w_[i] - 1] = i + 1;
  return WeylElement(std::move(r));
}

WeylElement WeylElement::left_mul_simple(int i) const {
  if (i < 1 || i >= n()) throw IndexOutOfRange("simple reflection s_" + std::to_string(i));
  std::vector<int> r = w_;
  for (int& v : r) {
    if (v == i)
      v = i + 1;
    else if (v == i + 1)
      v = i;
  }
  return WeylElement(std::move(r));
}

WeylElement WeylElement::right_mul_simple(int i) const {
  if (i < 1 || i >= n()) throw IndexOutOfRange("simple reflection s_" + std::to_string(i));
  std::vector<int> r = w_;
  std::swap(r[i - 1], r[i]);
  return WeylElement(std::move(r));
}

bool WeylElement::is_left_descent(int i) const {
  auto inv = inverse();
  return inv(i) > inv(i + 1);
}

std::string WeylElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < w_.size(); ++i) os << (i ? "," : "") << w_[i];
  os << "]";
  return os.str();
}

std::vector<WeylElement> all_elements(int n) {
  std::vector<int> w(n);
  std::iota(w.begin(), w.end(), 1);
  std::vector<WeylElement> out;
  do {
    out.emplace_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

bool is_minimal_coset_rep(const WeylElement& w, const FlagShape& s) {
  std::vector<bool> in_r(s.n + 1, false);
  for (int r : s.ranks) in_r[r] = true;
  for (int i = 1; i < s.n; ++i)
    if (!in_r[i] && w(i) > w(i + 1)) return false;
  return true;
}

std::vector<WeylElement> minimal_coset_reps(const FlagShape& s) {
  std::vector<WeylElement> out;
  for (auto& w : all_elements(s.n))
    if (is_minimal_coset_rep(w, s)) out.push_back(w);
  std::stable_sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
    return a.length() != b.length() ? a.length() < b.length() : a < b;
  });
  return out;
}

WeylElement minimal_rep(const WeylElement& w, const FlagShape& s) {
  std::vector<int> r = w.one_line();
  for (int j = 0; j <= s.k(); ++j) std::sort(r.begin() + s.r(j), r.begin() + s.r(j + 1));
  return WeylElement(std::move(r));
}

std::vector<std::vector<int>> all_reduced_words(const WeylElement& w) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  std::function<void(const WeylElement&)> rec = [&](const WeylElement& cur) {
    if (cur.length() == 0) {
      out.push_back(prefix);
      return;
    }
    for (int i = 1; i < cur.n(); ++i) {
      if (!cur.is_left_descent(i)) continue;
      prefix.push_back(i);
      rec(cur.left_mul_simple(i));
      prefix.pop_back();
    }
  };
  rec(w);
  return out;
}

bool bruhat_leq(const WeylElement& u, const WeylElement& v) {
  // tableau criterion
  for (int k = 1; k < u.n(); ++k) {
    std::vector<int> a(u.one_line().begin(), u.one_line().begin() + k);
    std::vector<int> b(v.one_line().begin(), v.one_line().begin() + k);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (int i = 0; i < k; ++i)
      if (a[i] > b[i]) return false;
  }
  return true;
}

std::vector<int> partition_of(const WeylElement& w, const FlagShape& s) {
  if (!s.is_grassmannian()) throw InvalidShape("partitions index Grassmannian shapes only");
  int r = s.ranks[0];
  std::vector<int> a(w.one_line().begin(), w.one_line().begin() + r);
  std::sort(a.begin(), a.end());
  std::vector<int> lambda;
  for (int i = 1; i <= r; ++i) {
    int part = a[r - i] - (r + 1 - i);
    if (part > 0) lambda.push_back(part);
  }
  return lambda;
}

WeylElement element_of_partition(const std::vector<int>& lambda, const FlagShape& s) {
  if (!s.is_grassmannian()) throw InvalidShape("partitions index Grassmannian shapes only");
  int r = s.ranks[0];
  if (static_cast<int>(lambda.size()) > r) throw ParseError("partition has too many parts");
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0 || lambda[i] > s.n - r) throw ParseError("partition does not fit the box");
    if (i > 0 && lambda[i] > lambda[i - 1]) throw ParseError("partition parts must be weakly decreasing");
  }
  std::vector<int> a(r);
  for (int i = 1; i <= r; ++i) {
    int part = i <= static_cast<int>(lambda.size()) ? lambda[i - 1] : 0;
    a[r - i] = part + r + 1 - i;
  }
  std::vector<int> w = a;
  for (int v = 1; v <= s.n; ++v)
    if (std::find(a.begin(), a.end(), v) == a.end()) w.push_back(v);
  return WeylElement(std::move(w));
}

std::vector<int> parse_partition(std::string_view text) {
  std::string t;
  for (char c : text)
    if (c != '(' && c != ')' && c != ' ') t += c;
  if (t.empty() || t == "\xE2\x88\x85" || t == "empty" || t == "0") return {};
  std::vector<int> out;
  std::stringstream ss(t);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      int v = std::stoi(piece);
      if (v > 0) out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad partition entry '" + piece + "'");
    }
  }
  return out;
}

std::string partition_to_string(const std::vector<int>& lambda) {
  if (lambda.empty()) return "()";
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < lambda.size(); ++i) os << (i ? "," : "") << lambda[i];
  os << ")";
  return os.str();
}

std::vector<int> parse_word(std::string_view text) {
  std::vector<int> out;
  std::string t;
  for (char c : text)
    if (c != ' ' && c != '[' && c != ']') t += c;
  if (t.empty()) return out;
  std::stringstream ss(t);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      out.push_back(std::stoi(piece));
    } catch (const std::exception&) {
      throw ParseError("bad word entry '" + piece + "'");
    }
  }
  return out;
}

}  // namespace qkflag
