#include "covquiz/qgen.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "covquiz/error.hpp"
#include "fixtures.hpp"
#include "gtest/gtest.h"

namespace covquiz::qgen {
namespace {

using bank::Bank;
using covquiz::testing::corpus_bank;
using covquiz::testing::synthetic_bank;
using covquiz::testing::toy_bank;

// Independent check of every Mcq invariant; returns the first violation.
std::string violation(const Bank& b, const Mcq& q) {
  const auto& stim = b.at(q.stimulus_item);
  std::set<std::string> ids;
  int matches = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& opt = q.options[i];
    if (opt.item_id == q.stimulus_item) return "stimulus among options";
    if (opt.kind != choice_kind(q.qtype)) return "option kind";
    ids.insert(opt.item_id);
    const bool same = b.at(opt.item_id).count(q.method) == stim.count(q.method);
    if (same) ++matches;
    if (same != (static_cast<int>(i) == q.correct_index)) return "correct index";
  }
  if (ids.size() != 4) return "repeated option";
  if (matches != 1) return "not exactly one match";
  return {};
}

Bank bank_with_path_counts(const std::vector<int>& counts) {
  Bank b = synthetic_bank(0, static_cast<int>(counts.size()), 1);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    // distinct branch/statement values keep the other methods peerless
    b = bank::override_counts(b, "s" + std::to_string(i),
                              {counts[i], 10 + static_cast<int>(i), 20 + static_cast<int>(i), 1, false});
  }
  return b;
}

TEST(QuestionType, KindTable) {
  EXPECT_EQ(stimulus_kind(QuestionType::T1), Representation::Graph);
  EXPECT_EQ(choice_kind(QuestionType::T1), Representation::Graph);
  EXPECT_EQ(stimulus_kind(QuestionType::T2), Representation::Graph);
  EXPECT_EQ(choice_kind(QuestionType::T2), Representation::Code);
  EXPECT_EQ(stimulus_kind(QuestionType::T3), Representation::Code);
  EXPECT_EQ(choice_kind(QuestionType::T3), Representation::Code);
  EXPECT_EQ(stimulus_kind(QuestionType::T4), Representation::Code);
  EXPECT_EQ(choice_kind(QuestionType::T4), Representation::Graph);
}

TEST(QuestionType, Keys) {
  for (QuestionType t : kAllTypes) EXPECT_EQ(parse_type(type_key(t)), t);
  EXPECT_EQ(parse_type("t3"), QuestionType::T3);
  EXPECT_EQ(parse_type("2"), QuestionType::T2);
  EXPECT_FALSE(parse_type("T5"));
  EXPECT_FALSE(parse_type(""));
}

TEST(Formulate, ToyBankPath) {
  Bank b = toy_bank();
  std::set<std::pair<std::string, std::string>> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng(seed);
    for (QuestionType t : kAllTypes) {
      Mcq q = formulate(b, TestingMethod::PathCoverage, t, rng);
      EXPECT_EQ(violation(b, q), "");
      ASSERT_TRUE(q.stimulus_item == "i1" || q.stimulus_item == "i2");
      EXPECT_EQ(q.correct_item(), q.stimulus_item == "i1" ? "i2" : "i1");
      std::set<std::string> distractors;
      for (int i = 0; i < 4; ++i) {
        if (i != q.correct_index) distractors.insert(q.options[static_cast<std::size_t>(i)].item_id);
      }
      EXPECT_EQ(distractors, (std::set<std::string>{"i3", "i4", "i5"}));
      seen.insert({q.stimulus_item, q.correct_item()});
    }
  }
  EXPECT_EQ(seen.size(), 2u);
}

TEST(Formulate, NoPeerNamesMethod) {
  Rng rng(1);
  try {
    formulate(toy_bank(), TestingMethod::BranchCoverage, QuestionType::T1, rng);
    FAIL();
  } catch (const NoPeer& e) {
    EXPECT_NE(std::string(e.what()).find("branch"), std::string::npos);
  }
}

TEST(Formulate, InsufficientDistractors) {
  Rng rng(1);
  Bank b = bank_with_path_counts({1, 1, 2, 3});
  try {
    formulate(b, TestingMethod::PathCoverage, QuestionType::T1, rng);
    FAIL();
  } catch (const InsufficientDistractors& e) {
    EXPECT_NE(std::string(e.what()).find("M=2"), std::string::npos);
  }
}

TEST(Formulate, Deterministic) {
  Bank b = corpus_bank();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a(seed), c(seed);
    EXPECT_EQ(formulate(b, TestingMethod::BranchCoverage, QuestionType::T2, a),
              formulate(b, TestingMethod::BranchCoverage, QuestionType::T2, c));
  }
}

TEST(Formulate, TraceRecordsDraws) {
  Rng rng(99);
  Mcq q = formulate(toy_bank(), TestingMethod::PathCoverage, QuestionType::T1, rng);
  EXPECT_EQ(q.seed, 99u);
  // stimulus, correct, three distractors, three shuffle swaps
  EXPECT_EQ(q.draws.size(), 8u);
}

TEST(Formulate, PairFrequencies) {
  Bank b = toy_bank();
  int i1 = 0;
  const int n = 10'000;
  for (int s = 0; s < n; ++s) {
    Rng rng(static_cast<std::uint64_t>(s));
    if (formulate(b, TestingMethod::PathCoverage, QuestionType::T1, rng).stimulus_item == "i1") ++i1;
  }
  const double f = static_cast<double>(i1) / n;
  EXPECT_NEAR(f, 0.5, 0.05);
  EXPECT_NEAR(1.0 - f, 0.5, 0.05);
}

TEST(Formulate, CorrectPositionRoughlyUniform) {
  Bank b = corpus_bank();
  std::array<int, 4> pos{};
  for (int s = 0; s < 4000; ++s) {
    Rng rng(static_cast<std::uint64_t>(s));
    ++pos[static_cast<std::size_t>(formulate(b, TestingMethod::PathCoverage, QuestionType::T3, rng).correct_index)];
  }
  for (int p : pos) EXPECT_NEAR(p / 4000.0, 0.25, 0.04);
}

TEST(GenerateExam, StandardShape) {
  Bank b = corpus_bank();
  auto exam = generate_exam(b, ExamSpec::standard(5));
  ASSERT_EQ(exam.size(), 12u);
  std::set<std::tuple<std::string, std::string, TestingMethod>> keys;
  for (std::size_t i = 0; i < exam.size(); ++i) {
    EXPECT_EQ(exam[i].method, flowgraph::kAllMethods[i / 4]);
    EXPECT_EQ(exam[i].qtype, kAllTypes[i % 4]);
    EXPECT_EQ(violation(b, exam[i]), "");
    keys.insert({exam[i].stimulus_item, exam[i].correct_item(), exam[i].method});
  }
  EXPECT_EQ(keys.size(), 12u);
}

TEST(GenerateExam, EmptySpec) {
  ExamSpec spec;
  EXPECT_TRUE(generate_exam(toy_bank(), spec).empty());
  EXPECT_EQ(spec.total(), 0);
}

TEST(GenerateExam, SameSeedSameExam) {
  Bank b = corpus_bank();
  EXPECT_EQ(generate_exam(b, ExamSpec::standard(11)), generate_exam(b, ExamSpec::standard(11)));
  EXPECT_NE(generate_exam(b, ExamSpec::standard(11)), generate_exam(b, ExamSpec::standard(12)));
}

TEST(GenerateExam, ReportsEmptyCells) {
  try {
    generate_exam(toy_bank(), ExamSpec::standard(1));
    FAIL();
  } catch (const SpecUnachievable& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("branch/T1"), std::string::npos);
    EXPECT_NE(msg.find("statement/T4"), std::string::npos);
    EXPECT_EQ(msg.find("path/"), std::string::npos);
  }
}

TEST(GenerateExam, DuplicateSuppressionExhaustsPairs) {
  // only two (stimulus, correct) pairs exist under path in the toy bank
  Bank b = toy_bank();
  ExamSpec two;
  two.cell(TestingMethod::PathCoverage, QuestionType::T1) = 1;
  two.cell(TestingMethod::PathCoverage, QuestionType::T3) = 1;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    two.seed = seed;
    auto exam = generate_exam(b, two);
    ASSERT_EQ(exam.size(), 2u);
    EXPECT_NE(exam[0].stimulus_item, exam[1].stimulus_item);
  }
  ExamSpec three = two;
  three.cell(TestingMethod::PathCoverage, QuestionType::T2) = 1;
  EXPECT_THROW(generate_exam(b, three), SpecUnachievable);
  EXPECT_FALSE(feasibility_report(b, three).empty());
}

TEST(CountSpace, ToyBank) {
  Bank b = toy_bank();
  EXPECT_EQ(count_space(b, TestingMethod::PathCoverage).total, 2u);
  EXPECT_EQ(count_space(b, TestingMethod::BranchCoverage).total, 0u);
  EXPECT_EQ(all_types_total(b), 8u);
  EXPECT_EQ(enumerate_space(b, TestingMethod::PathCoverage, QuestionType::T4).size(), 2u);
  EXPECT_TRUE(enumerate_space(b, TestingMethod::BranchCoverage, QuestionType::T4).empty());
}

TEST(CountSpace, UndersizedComplement) {
  Bank b = bank_with_path_counts({1, 1, 2, 3});
  EXPECT_EQ(count_space(b, TestingMethod::PathCoverage).total, 0u);
}

TEST(CountSpace, Binomial) {
  EXPECT_EQ(choose(2, 3), 0u);
  EXPECT_EQ(choose(3, 3), 1u);
  EXPECT_EQ(choose(8, 3), 56u);
  EXPECT_EQ(choose(20, 10), 184756u);
}

TEST(CountSpace, MatchesIndependentBruteForce) {
  // Count (stimulus, option set) pairs straight from the definition: every
  // 4-subset of the other items holding exactly one peer of the stimulus.
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 4 + static_cast<int>(seed % 4);
    Bank b = synthetic_bank(seed, n, 3);
    for (TestingMethod m : flowgraph::kAllMethods) {
      std::uint64_t brute = 0;
      for (int s = 0; s < n; ++s) {
        const int v = b.items()[static_cast<std::size_t>(s)].count(m);
        for (int mask = 0; mask < (1 << n); ++mask) {
          if (__builtin_popcount(static_cast<unsigned>(mask)) != 4 || (mask >> s & 1)) continue;
          int peers = 0;
          for (int i = 0; i < n; ++i) {
            if ((mask >> i & 1) && b.items()[static_cast<std::size_t>(i)].count(m) == v) ++peers;
          }
          if (peers == 1) ++brute;
        }
      }
      EXPECT_EQ(count_space(b, m).total, brute) << "seed " << seed;
    }
  }
}

TEST(EnumerateSpace, AgreesWithCountOnRandomBanks) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Bank b = synthetic_bank(seed, 7, 3);
    for (TestingMethod m : flowgraph::kAllMethods) {
      auto all = enumerate_space(b, m, QuestionType::T1);
      EXPECT_EQ(all.size(), count_space(b, m).total);
      std::set<std::vector<std::string>> distinct;
      for (const auto& q : all) {
        ASSERT_EQ(violation(b, q), "");
        std::vector<std::string> k{q.stimulus_item};
        for (const auto& o : q.options) k.push_back(o.item_id);
        distinct.insert(k);
      }
      EXPECT_EQ(distinct.size(), all.size());
    }
  }
}

TEST(EnumerateSpace, Cap) {
  EXPECT_THROW(enumerate_space(corpus_bank(), TestingMethod::PathCoverage, QuestionType::T1, 10), CapExceeded);
}

TEST(EnumerateSpace, FormulateStaysInsideSpace) {
  Bank b = corpus_bank();
  auto all = enumerate_space(b, TestingMethod::StatementCoverage, QuestionType::T3);
  std::set<std::vector<std::string>> space;
  for (const auto& q : all) {
    std::vector<std::string> k{q.stimulus_item, q.correct_item()};
    std::vector<std::string> opts;
    for (const auto& o : q.options) opts.push_back(o.item_id);
    std::sort(opts.begin(), opts.end());
    k.insert(k.end(), opts.begin(), opts.end());
    space.insert(k);
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(seed);
    Mcq q = formulate(b, TestingMethod::StatementCoverage, QuestionType::T3, rng);
    std::vector<std::string> k{q.stimulus_item, q.correct_item()};
    std::vector<std::string> opts;
    for (const auto& o : q.options) opts.push_back(o.item_id);
    std::sort(opts.begin(), opts.end());
    k.insert(k.end(), opts.begin(), opts.end());
    EXPECT_TRUE(space.count(k)) << "seed " << seed;
  }
}

TEST(Rng, IndexRangeAndSample) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.index(7), 7u);
  auto s = rng.sample(10, 10);
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(s[i], i);
  EXPECT_THROW(rng.index(0), std::invalid_argument);
  EXPECT_THROW(rng.sample(2, 3), std::invalid_argument);
}

}  // namespace
}  // namespace covquiz::qgen
