#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkflag/serialize.hpp"

namespace qkflag {

struct Fixture {
  std::string id;
  std::string shape;
  std::string kind;  // toda_relations, whitney_relations, representative, product_expansion, symbol
  std::string anchor;
  std::vector<std::string> display;
  json params;
  json expected;
};

struct CheckResult {
  std::string suite;
  std::string id;
  std::string anchor;  // empty for property checks
  bool ok = false;
  std::string detail;  // first mismatch on failure
  double seconds = 0;
};

class FixtureSuite {
 public:
  // reads MANIFEST.json and the fixture files it lists; throws ParseError
  static FixtureSuite load(const std::string& dir);

  const std::vector<Fixture>& fixtures() const { return fixtures_; }
  const std::vector<std::string>& anchors() const { return anchors_; }
  const std::string& directory() const { return dir_; }
  // fixtures whose anchor is missing from the manifest
  std::vector<std::string> unanchored() const;

  CheckResult run(const Fixture& f) const;
  // fixtures whose id contains `filter`, sorted by id
  std::vector<CheckResult> run_all(const std::string& filter = "") const;

 private:
  std::string dir_;
  std::vector<Fixture> fixtures_;
  std::vector<std::string> anchors_;
};

// the fixture directory compiled in, overridden by $QKFLAG_FIXTURE_DIR
std::string default_fixture_dir();

// randomized identities driven by one seed
std::vector<CheckResult> run_property_suite(std::uint64_t seed);
// commutators and symbols of the Toda Hamiltonians up to max_n
std::vector<CheckResult> run_toda_ham_suite(int max_n = 4);

// suite names: golden (alias paper), properties, toda-ham, all
std::vector<std::string> suite_names();
bool is_suite_name(const std::string& name);
std::vector<CheckResult> run_suite(const std::string& name, std::uint64_t seed, const std::string& fixture_dir = "");

}  // namespace qkflag
