#include "covquiz/bank.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "covquiz/error.hpp"
#include "fixtures.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace covquiz::bank {
namespace {

using flowgraph::TestingMethod;
using covquiz::testing::corpus_bank;
using covquiz::testing::data_dir;
using covquiz::testing::read_file;
using covquiz::testing::scratch_dir;

// Counts at loop bound 1, worked out by hand from the listings.
const std::map<std::string, std::array<int, 3>> kCorpusCounts = {
    {"array_sum", {4, 1, 1}},     {"factorial_flat", {6, 3, 3}}, {"factorial_nested", {4, 3, 3}},
    {"max_of_two", {2, 2, 2}},    {"number_sign", {3, 3, 3}},    {"palindrome", {6, 2, 2}},
    {"positive_count", {3, 2, 1}}, {"running_sum", {4, 1, 1}},   {"sum_to_n", {2, 1, 1}},
    {"unique_names", {14, 2, 1}},
};

TEST(Ingest, SingleStatement) {
  Bank b = ingest(make_bank(), "x = 1\n", "one");
  ASSERT_EQ(b.size(), 1u);
  const auto& c = b.at("one").counts;
  EXPECT_EQ(c.path, 1);
  EXPECT_EQ(c.branch, 1);
  EXPECT_EQ(c.statement, 1);
}

TEST(Ingest, DuplicateIdLeavesBankUnchanged) {
  Bank b = ingest(make_bank(), "x = 1\n", "one");
  EXPECT_THROW(ingest(b, "y = 2\n", "one"), DuplicateId);
  EXPECT_EQ(b.size(), 1u);
}

TEST(Ingest, SameProgramUnderNewIdRejected) {
  Bank b = ingest(make_bank(), read_file(data_dir() / "corpus" / "max_of_two.py"), "a");
  EXPECT_THROW(ingest(b, read_file(data_dir() / "extra" / "max_of_two_spaced.py"), "b"), DuplicateProgram);
}

TEST(Ingest, PropagatesSyntaxError) {
  EXPECT_THROW(ingest(make_bank(), read_file(data_dir() / "extra" / "max_of_two_typo.py"), "typo"), SyntaxError);
}

TEST(Ingest, PropagatesPathExplosion) {
  std::string src;
  for (int i = 0; i < 15; ++i) src += "if a > " + std::to_string(i) + ":\n    x = 1\n";
  EXPECT_THROW(ingest(make_bank(1, 10'000), src, "wide"), PathExplosion);
}

TEST(Ingest, CorpusMatchesHandCounts) {
  Bank b = corpus_bank();
  ASSERT_EQ(b.size(), kCorpusCounts.size());
  for (const auto& item : b.items()) {
    const auto& want = kCorpusCounts.at(item.item_id);
    EXPECT_EQ(item.counts.path, want[0]) << item.item_id;
    EXPECT_EQ(item.counts.branch, want[1]) << item.item_id;
    EXPECT_EQ(item.counts.statement, want[2]) << item.item_id;
    EXPECT_FALSE(item.counts.approximate);
  }
  EXPECT_TRUE(verify_against_oracle(b).empty());
}

TEST(Groups, SmallPartition) {
  Bank b = covquiz::testing::synthetic_bank(1, 3, 1);
  b = override_counts(b, "s0", {2, 1, 1, 1, false});
  b = override_counts(b, "s1", {2, 1, 1, 1, false});
  b = override_counts(b, "s2", {3, 1, 1, 1, false});
  auto g = groups(b, TestingMethod::PathCoverage);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].count_value, 2);
  EXPECT_EQ(g[0].size(), 2u);
  EXPECT_EQ(g[1].count_value, 3);
  EXPECT_EQ(g[1].size(), 1u);
}

TEST(Groups, EightItemMultiset) {
  const int counts[] = {1, 1, 1, 2, 2, 3, 4, 5};
  Bank b = covquiz::testing::synthetic_bank(2, 8, 1);
  for (int i = 0; i < 8; ++i) b = override_counts(b, "s" + std::to_string(i), {counts[i], 1, 1, 1, false});
  std::vector<std::size_t> sizes;
  for (const auto& g : groups(b, TestingMethod::PathCoverage)) sizes.push_back(g.size());
  std::sort(sizes.rbegin(), sizes.rend());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{3, 2, 1, 1, 1}));
}

TEST(Groups, PartitionProperty) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Bank b = covquiz::testing::synthetic_bank(seed, 1 + static_cast<int>(seed % 9), 4);
    for (TestingMethod m : flowgraph::kAllMethods) {
      std::size_t total = 0;
      int last = 0;
      for (const auto& g : groups(b, m)) {
        EXPECT_GT(g.count_value, last);
        last = g.count_value;
        for (const auto& id : g.member_ids) EXPECT_EQ(b.at(id).count(m), g.count_value);
        total += g.size();
      }
      EXPECT_EQ(total, b.size());
    }
  }
}

TEST(Persistence, EmptyRoundTrip) {
  Bank b = make_bank();
  EXPECT_TRUE(equivalent(from_json(to_json(b)), b));
}

TEST(Persistence, CorpusRoundTripThroughFile) {
  Bank b = corpus_bank();
  auto dir = scratch_dir("bank_roundtrip");
  save(b, dir / "bank.json");
  EXPECT_FALSE(std::filesystem::exists(dir / "bank.json.tmp"));
  Bank back = load(dir / "bank.json");
  EXPECT_TRUE(equivalent(back, b));
  EXPECT_EQ(back.metadata().created, b.metadata().created);
}

TEST(Persistence, EmbeddedGraphsRoundTrip) {
  Bank b = corpus_bank();
  SaveOptions so;
  so.embed_graphs = true;
  const std::string text = to_json(b, so);
  EXPECT_NE(text.find("\"graph\""), std::string::npos);
  EXPECT_TRUE(equivalent(from_json(text), b));
}

TEST(Persistence, WrongCountNamesItem) {
  auto doc = nlohmann::json::parse(to_json(corpus_bank()));
  doc["items"][3]["counts"]["branch"] = 99;
  const std::string id = doc["items"][3]["item_id"];
  try {
    from_json(doc.dump());
    FAIL() << "expected VerificationFailure";
  } catch (const VerificationFailure& e) {
    EXPECT_NE(std::string(e.what()).find(id), std::string::npos);
  }
  LoadOptions lo;
  lo.verify = false;
  EXPECT_EQ(from_json(doc.dump(), lo).at(id).counts.branch, 99);
}

TEST(Persistence, TamperedGraphRejected) {
  SaveOptions so;
  so.embed_graphs = true;
  auto doc = nlohmann::json::parse(to_json(corpus_bank(), so));
  doc["items"][0]["graph"]["edges"][0]["to"] = 0;
  EXPECT_THROW(from_json(doc.dump()), VerificationFailure);
}

TEST(Persistence, OverriddenCountsSurviveVerification) {
  Bank b = override_counts(corpus_bank(), "max_of_two", {7, 7, 7, 1, false});
  Bank back = from_json(to_json(b));
  EXPECT_TRUE(back.at("max_of_two").counts_overridden);
  EXPECT_EQ(back.at("max_of_two").counts.path, 7);
  EXPECT_TRUE(verify_against_oracle(back).empty());
}

TEST(Persistence, SchemaProblems) {
  EXPECT_THROW(from_json("not json"), SchemaMismatch);
  EXPECT_THROW(from_json("{}"), SchemaMismatch);
  EXPECT_THROW(from_json(R"({"schema_version": 99, "loop_bound": 1, "items": []})"), SchemaMismatch);
  EXPECT_THROW(from_json(R"({"schema_version": 1, "loop_bound": 1, "items": [{"item_id": "a"}]})"), SchemaMismatch);
  EXPECT_THROW(load(scratch_dir("bank_missing") / "nope.json"), IoError);
}

TEST(Persistence, LoopBoundIsKept) {
  Bank b = corpus_bank(2);
  Bank back = from_json(to_json(b));
  EXPECT_EQ(back.metadata().loop_bound, 2);
  EXPECT_EQ(back.at("sum_to_n").counts.path, 3);
}

TEST(Verify, ReportsDisagreement) {
  auto doc = nlohmann::json::parse(to_json(corpus_bank()));
  doc["items"][0]["counts"]["path"] = 42;
  LoadOptions lo;
  lo.verify = false;
  auto mismatches = verify_against_oracle(from_json(doc.dump(), lo));
  ASSERT_EQ(mismatches.size(), 1u);
  EXPECT_EQ(mismatches[0].stored.path, 42);
}

}  // namespace
}  // namespace covquiz::bank
