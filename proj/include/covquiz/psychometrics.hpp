#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace covquiz::psychometrics {

inline constexpr int kBlank = -1;

/// Students' choices on one exam. Options are the on-form letters A-D,
/// stored as 0..3; kBlank marks an unanswered question.
struct ResponseSet {
  std::string exam_id;
  std::vector<int> correct;  // per question, 0..3
  std::vector<std::string> student_ids;
  std::vector<std::vector<int>> choices;  // [student][question]

  std::size_t question_count() const { return correct.size(); }
  std::size_t student_count() const { return student_ids.size(); }
};

/// Parses `student_id,q1,...,qK` rows; cells are A-D (either case) or empty.
/// `correct` holds the on-form position (0..3) of each question's answer.
/// Throws SchemaMismatch (header or key length), RaggedRow, UnknownOption.
ResponseSet parse_responses(std::string_view csv_text, std::vector<int> correct, std::string exam_id = {});

/// Reads a response file and a `row,correct_position` key sidecar.
ResponseSet load_responses(const std::filesystem::path& responses_csv, const std::filesystem::path& key_csv);

struct DistractorStat {
  int option = 0;  // 0..3
  int choosers = 0;
  double fraction = 0.0;
  bool effective = false;
};

struct QuestionReport {
  int correct_option = 0;
  int correct_choosers = 0;
  int blanks = 0;
  std::array<DistractorStat, 3> distractors;  // on-form order
  int effective_distractors = 0;
  bool effective_mcq = false;
};

/// Fractions are over every student in the set, so correct, blank and
/// distractor fractions of a question sum to 1.
struct DistractorReport {
  std::size_t students = 0;
  std::vector<QuestionReport> questions;

  int effective_mcqs() const;
};

/// Strictly more than 5% of the students chose it.
bool is_effective(int choosers, std::size_t students);

DistractorReport distractor_report(const ResponseSet& rs);

struct ScoreStats {
  std::vector<int> scores;  // per student, blanks count as wrong
  double mean = 0.0;
  double sample_sd = 0.0;  // NaN with a single student
  double population_sd = 0.0;
  std::vector<int> modes;  // every score tied for the highest frequency, ascending
  std::map<int, int> frequency;
};

std::vector<int> scores(const ResponseSet& rs);
ScoreStats score_stats(const std::vector<int>& scores);
ScoreStats score_stats(const ResponseSet& rs);

struct Correlation {
  double r = 0.0;
  int df = 0;
  double t = 0.0;
};

/// Sample Pearson correlation with its t statistic on n - 2 degrees of
/// freedom. Throws LengthMismatch (sizes differ or fewer than 3 pairs) and
/// ConstantVector.
Correlation pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Two-tailed Student-t probability of |T| >= |t|.
double p_value(double t, double df);

/// One line per distractor: question,option,choosers,fraction,effective.
std::string report_csv(const DistractorReport& report);

/// Plain-text overview of both reports.
std::string summary_text(const DistractorReport& report, const ScoreStats& stats);

}  // namespace covquiz::psychometrics
