#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "qkflag/errors.hpp"
#include "qkflag/fixtures.hpp"

using namespace qkflag;
namespace fs = std::filesystem;

namespace {

fs::path copy_fixtures(const std::string& name) {
  auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const char* f : {"MANIFEST.json", "examples.json"}) fs::copy_file(fs::path(default_fixture_dir()) / f, dir / f);
  return dir;
}

json read(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

void write(const fs::path& p, const json& j) {
  std::ofstream out(p);
  out << j.dump(1);
}

}  // namespace

TEST(Fixtures, AllGoldenPass) {
  auto suite = FixtureSuite::load(default_fixture_dir());
  EXPECT_EQ(suite.fixtures().size(), 20u);
  EXPECT_TRUE(suite.unanchored().empty());
  for (const auto& r : suite.run_all()) EXPECT_TRUE(r.ok) << r.id << ": " << r.detail;
}

TEST(Fixtures, RunAllSortsAndFilters) {
  auto suite = FixtureSuite::load(default_fixture_dir());
  auto rs = suite.run_all("gr24-rep");
  EXPECT_EQ(rs.size(), 6u);
  for (std::size_t i = 1; i < rs.size(); ++i) EXPECT_LT(rs[i - 1].id, rs[i].id);
  for (const auto& r : rs) EXPECT_EQ(r.anchor, "gr24-representatives");
}

TEST(Fixtures, MutatedCoefficientFails) {
  auto dir = copy_fixtures("qkflag-fixture-mutated");
  json j = read(dir / "examples.json");
  bool mutated = false;
  for (auto& f : j["fixtures"]) {
    if (f["id"] != "gr24-product-1-1") continue;
    auto& terms = f["expected"]["coefficients"].begin().value();
    auto& first = terms.is_array() ? terms[0] : terms["numerator"][0];
    first["num"] = std::to_string(std::stoi(first["num"].get<std::string>()) + 1);
    mutated = true;
  }
  ASSERT_TRUE(mutated);
  write(dir / "examples.json", j);
  auto suite = FixtureSuite::load(dir.string());
  for (const auto& r : suite.run_all("gr24-product-1-1")) {
    EXPECT_EQ(r.ok, r.id != "gr24-product-1-1") << r.id;
    if (!r.ok) {
      EXPECT_FALSE(r.detail.empty());
    }
  }
  fs::remove_all(dir);
}

TEST(Fixtures, UnknownAnchorIsReported) {
  auto dir = copy_fixtures("qkflag-fixture-anchor");
  json j = read(dir / "examples.json");
  j["fixtures"][0]["anchor"] = "nowhere";
  write(dir / "examples.json", j);
  auto suite = FixtureSuite::load(dir.string());
  ASSERT_EQ(suite.unanchored().size(), 1u);
  fs::remove_all(dir);
}

TEST(Fixtures, MissingDirectory) {
  EXPECT_THROW(FixtureSuite::load("/nonexistent/qkflag"), ParseError);
}

TEST(Fixtures, Suites) {
  EXPECT_TRUE(is_suite_name("golden"));
  EXPECT_TRUE(is_suite_name("paper"));
  EXPECT_TRUE(is_suite_name("toda-ham"));
  EXPECT_FALSE(is_suite_name("nope"));
  for (const auto& r : run_property_suite(42)) EXPECT_TRUE(r.ok) << r.id << ": " << r.detail;
  for (const auto& r : run_toda_ham_suite(3)) EXPECT_TRUE(r.ok) << r.id << ": " << r.detail;
}

TEST(Fixtures, PropertySuiteIsDeterministic) {
  auto a = run_property_suite(7), b = run_property_suite(7);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, b[i].id);
    EXPECT_EQ(a[i].ok, b[i].ok);
    EXPECT_EQ(a[i].detail, b[i].detail);
  }
}
