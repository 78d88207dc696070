#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covquiz/bank.hpp"
#include "covquiz/flowgraph.hpp"
#include "covquiz/rng.hpp"

namespace covquiz::qgen {

using flowgraph::TestingMethod;

enum class Representation { Graph, Code };

/// T1 graph/graph, T2 graph stem with code options, T3 code/code,
/// T4 code stem with graph options.
enum class QuestionType { T1, T2, T3, T4 };

inline constexpr QuestionType kAllTypes[] = {QuestionType::T1, QuestionType::T2, QuestionType::T3, QuestionType::T4};

Representation stimulus_kind(QuestionType type);
Representation choice_kind(QuestionType type);

/// "T1".."T4".
std::string_view type_key(QuestionType type);
/// Accepts "T1", "t1" or "1".
std::optional<QuestionType> parse_type(std::string_view key);
std::string_view representation_name(Representation kind);

struct Option {
  std::string item_id;
  Representation kind = Representation::Code;

  friend bool operator==(const Option&, const Option&) = default;
};

struct Mcq {
  TestingMethod method{};
  QuestionType qtype{};
  std::string stimulus_item;
  std::array<Option, 4> options;
  int correct_index = 0;
  // trace: seed of the generator and the draws that produced this question
  std::uint64_t seed = 0;
  std::vector<std::size_t> draws;

  Representation stimulus_kind() const { return qgen::stimulus_kind(qtype); }
  const std::string& correct_item() const { return options[static_cast<std::size_t>(correct_index)].item_id; }

  friend bool operator==(const Mcq&, const Mcq&) = default;
};

/// One MCQ. The stimulus is uniform over items whose group has a peer and at
/// least three outsiders; the correct option is a uniform peer; the three
/// distractors are drawn without replacement from items with a different
/// count; then the four options are shuffled.
/// Throws NoPeer or InsufficientDistractors.
Mcq formulate(const bank::Bank& bank, TestingMethod method, QuestionType qtype, Rng& rng);

struct ExamSpec {
  // questions per (method, type), indexed in kAllMethods / kAllTypes order
  std::array<std::array<int, 4>, 3> per_cell{};
  std::uint64_t seed = 0;

  /// `per_cell` questions in every listed (method, type) cell.
  static ExamSpec uniform(int per_cell, const std::vector<TestingMethod>& methods,
                          const std::vector<QuestionType>& types, std::uint64_t seed);
  /// Three methods by four types, one question each.
  static ExamSpec standard(std::uint64_t seed);

  int& cell(TestingMethod method, QuestionType type);
  int cell(TestingMethod method, QuestionType type) const;
  int total() const;
};

/// Human-readable reasons the spec cannot be met on `bank`; empty when it can.
std::vector<std::string> feasibility_report(const bank::Bank& bank, const ExamSpec& spec);

/// Questions in method-major, type-minor order. No two share
/// (stimulus, correct option, method). Throws SpecUnachievable carrying the
/// feasibility report.
std::vector<Mcq> generate_exam(const bank::Bank& bank, const ExamSpec& spec);

struct GroupSpace {
  int count_value = 0;
  std::size_t members = 0;  // M
  std::uint64_t questions = 0;
};

struct SpaceCount {
  TestingMethod method{};
  std::vector<GroupSpace> groups;
  std::uint64_t total = 0;  // for one question type
};

/// Distinct MCQs for one type, ignoring option order: per group
/// M * (M - 1) * C(N - M, 3).
SpaceCount count_space(const bank::Bank& bank, TestingMethod method);

/// Sum over methods of count_space, times the four question types.
std::uint64_t all_types_total(const bank::Bank& bank);

/// Every distinct MCQ for (method, qtype), options in bank order.
/// Throws CapExceeded when there would be more than `cap`.
std::vector<Mcq> enumerate_space(const bank::Bank& bank, TestingMethod method, QuestionType qtype,
                                 std::size_t cap = 1'000'000);

std::uint64_t choose(std::uint64_t n, std::uint64_t k);

}  // namespace covquiz::qgen
