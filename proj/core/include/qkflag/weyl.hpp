#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qkflag/shape.hpp"

namespace qkflag {

// Permutation of {1..n} in one-line notation; (u*v)(i) = u(v(i)).
class WeylElement {
 public:
  WeylElement() = default;
  explicit WeylElement(std::vector<int> one_line);

  static WeylElement identity(int n);
  static WeylElement simple(int n, int i);
  static WeylElement longest(int n);
  static WeylElement from_word(int n, const std::vector<int>& word);
  static WeylElement parse(std::string_view text);  // "1,3,2,4" or "[1,3,2,4]"

  int n() const { return static_cast<int>(w_.size()); }
  int operator()(int i) const { return w_.at(i - 1); }
  const std::vector<int>& one_line() const { return w_; }
  int length() const { return length_; }
  // lexicographically least reduced word
  const std::vector<int>& reduced_word() const { return word_; }

  WeylElement operator*(const WeylElement& o) const;
  WeylElement inverse() const;
  WeylElement left_mul_simple(int i) const;   // s_i * w
  WeylElement right_mul_simple(int i) const;  // w * s_i
  bool is_left_descent(int i) const;
  bool is_right_descent(int i) const { return w_[i - 1] > w_[i]; }

  std::string to_string() const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.w_ == b.w_; }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return a.w_ != b.w_; }
  friend bool operator<(const WeylElement& a, const WeylElement& b) { return a.w_ < b.w_; }

 private:
  void init();
  std::vector<int> w_;
  int length_ = 0;
  std::vector<int> word_;
};

std::vector<WeylElement> all_elements(int n);
// minimal length representatives of W / W_r, sorted by (length, one-line)
std::vector<WeylElement> minimal_coset_reps(const FlagShape& s);
bool is_minimal_coset_rep(const WeylElement& w, const FlagShape& s);
// representative of w W_r of minimal length
WeylElement minimal_rep(const WeylElement& w, const FlagShape& s);
std::vector<std::vector<int>> all_reduced_words(const WeylElement& w);
bool bruhat_leq(const WeylElement& u, const WeylElement& v);

// Grassmannian dictionary; partitions have weakly decreasing parts, zero parts dropped
std::vector<int> partition_of(const WeylElement& w, const FlagShape& s);
WeylElement element_of_partition(const std::vector<int>& lambda, const FlagShape& s);
std::vector<int> parse_partition(std::string_view text);  // "(2,1)", "()", "∅"
std::string partition_to_string(const std::vector<int>& lambda);

std::vector<int> parse_word(std::string_view text);  // "2,1,3" or ""

}  // namespace qkflag
