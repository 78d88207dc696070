#include "covquiz/psychometrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <boost/math/special_functions/beta.hpp>

#include "covquiz/atomic_file.hpp"
#include "covquiz/csv.hpp"
#include "covquiz/error.hpp"
#include "covquiz/render_export.hpp"

namespace covquiz::psychometrics {

namespace {

int parse_choice(const std::string& cell) {
  if (cell.empty()) return kBlank;
  if (cell.size() == 1) {
    const char c = cell[0];
    if (c >= 'A' && c <= 'D') return c - 'A';
    if (c >= 'a' && c <= 'd') return c - 'a';
  }
  return -2;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

char letter(int option) { return static_cast<char>('A' + option); }

}  // namespace

ResponseSet parse_responses(std::string_view csv_text, std::vector<int> correct, std::string exam_id) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) throw SchemaMismatch("response file is empty");
  const auto& header = rows[0];
  if (header.empty() || header[0] != "student_id") throw SchemaMismatch("response header must start with student_id");
  for (std::size_t q = 1; q < header.size(); ++q) {
    if (header[q] != "q" + std::to_string(q)) {
      throw SchemaMismatch("response header column " + std::to_string(q + 1) + " is '" + header[q] + "', expected q" +
                           std::to_string(q));
    }
  }
  const std::size_t k = header.size() - 1;
  if (correct.size() != k) {
    throw SchemaMismatch("answer key has " + std::to_string(correct.size()) + " questions, responses have " +
                         std::to_string(k));
  }
  for (int c : correct) {
    if (c < 0 || c > 3) throw SchemaMismatch("answer key position out of range");
  }

  ResponseSet rs;
  rs.exam_id = std::move(exam_id);
  rs.correct = std::move(correct);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw RaggedRow("response line " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                      " cells, header has " + std::to_string(header.size()));
    }
    std::vector<int> choices;
    for (std::size_t q = 1; q < row.size(); ++q) {
      const int c = parse_choice(row[q]);
      if (c == -2) {
        throw UnknownOption("student '" + row[0] + "', question q" + std::to_string(q) + ": '" + row[q] +
                            "' is not one of A, B, C, D or blank");
      }
      choices.push_back(c);
    }
    rs.student_ids.push_back(row[0]);
    rs.choices.push_back(std::move(choices));
  }
  return rs;
}

ResponseSet load_responses(const std::filesystem::path& responses_csv, const std::filesystem::path& key_csv) {
  const auto key = render::read_key_csv(read_text_file(key_csv));
  std::vector<int> correct(key.size(), -1);
  for (const auto& [row, pos] : key) {
    if (row < 1 || row > key.size() || correct[row - 1] != -1) {
      throw SchemaMismatch("key file rows must be 1.." + std::to_string(key.size()) + " without repeats");
    }
    correct[row - 1] = pos - 1;
  }
  return parse_responses(read_text_file(responses_csv), std::move(correct), responses_csv.stem().string());
}

bool is_effective(int choosers, std::size_t students) {
  // choosers / students > 1 / 20, kept in integers so 5% exactly never passes
  return static_cast<std::size_t>(choosers) * 20 > students;
}

int DistractorReport::effective_mcqs() const {
  return static_cast<int>(std::count_if(questions.begin(), questions.end(), [](const auto& q) { return q.effective_mcq; }));
}

DistractorReport distractor_report(const ResponseSet& rs) {
  DistractorReport report;
  report.students = rs.student_count();
  const double n = static_cast<double>(rs.student_count());
  for (std::size_t q = 0; q < rs.question_count(); ++q) {
    std::array<int, 4> tally{};
    QuestionReport qr;
    qr.correct_option = rs.correct[q];
    for (const auto& student : rs.choices) {
      if (student[q] == kBlank) {
        ++qr.blanks;
      } else {
        ++tally[static_cast<std::size_t>(student[q])];
      }
    }
    qr.correct_choosers = tally[static_cast<std::size_t>(qr.correct_option)];
    std::size_t d = 0;
    for (int opt = 0; opt < 4; ++opt) {
      if (opt == qr.correct_option) continue;
      DistractorStat& s = qr.distractors[d++];
      s.option = opt;
      s.choosers = tally[static_cast<std::size_t>(opt)];
      s.fraction = n > 0 ? s.choosers / n : 0.0;
      s.effective = is_effective(s.choosers, rs.student_count());
      if (s.effective) ++qr.effective_distractors;
    }
    qr.effective_mcq = qr.effective_distractors >= 1;
    report.questions.push_back(qr);
  }
  return report;
}

std::vector<int> scores(const ResponseSet& rs) {
  std::vector<int> out;
  for (const auto& student : rs.choices) {
    int s = 0;
    for (std::size_t q = 0; q < student.size(); ++q) s += student[q] == rs.correct[q] ? 1 : 0;
    out.push_back(s);
  }
  return out;
}

ScoreStats score_stats(const std::vector<int>& values) {
  ScoreStats st;
  st.scores = values;
  if (values.empty()) throw Error("score statistics need at least one student");
  const double n = static_cast<double>(values.size());
  double sum = 0;
  for (int v : values) {
    sum += v;
    ++st.frequency[v];
  }
  st.mean = sum / n;
  double ss = 0;
  for (int v : values) ss += (v - st.mean) * (v - st.mean);
  st.population_sd = std::sqrt(ss / n);
  st.sample_sd = values.size() > 1 ? std::sqrt(ss / (n - 1)) : std::numeric_limits<double>::quiet_NaN();
  int best = 0;
  for (const auto& [score, count] : st.frequency) best = std::max(best, count);
  for (const auto& [score, count] : st.frequency) {
    if (count == best) st.modes.push_back(score);
  }
  return st;
}

ScoreStats score_stats(const ResponseSet& rs) { return score_stats(scores(rs)); }

Correlation pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw LengthMismatch("vectors have " + std::to_string(x.size()) + " and " + std::to_string(y.size()) + " entries");
  }
  if (x.size() < 3) throw LengthMismatch("correlation needs at least 3 pairs");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) throw ConstantVector("correlation is undefined for a constant vector");
  Correlation c;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  c.df = static_cast<int>(x.size()) - 2;
  const double denom = 1.0 - c.r * c.r;
  c.t = denom > 0 ? c.r * std::sqrt(c.df / denom) : std::copysign(std::numeric_limits<double>::infinity(), c.r);
  return c;
}

double p_value(double t, double df) {
  if (!(df >= 1)) throw Error("p_value needs at least one degree of freedom");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return boost::math::ibeta(df / 2.0, 0.5, x);
}

std::string report_csv(const DistractorReport& report) {
  std::vector<csv::Row> rows{{"question", "option", "choosers", "fraction", "effective"}};
  for (std::size_t q = 0; q < report.questions.size(); ++q) {
    for (const auto& d : report.questions[q].distractors) {
      rows.push_back({"q" + std::to_string(q + 1), std::string(1, letter(d.option)), std::to_string(d.choosers),
                      fixed(d.fraction, 4), d.effective ? "yes" : "no"});
    }
  }
  return csv::write(rows);
}

std::string summary_text(const DistractorReport& report, const ScoreStats& stats) {
  std::string out;
  out += "students: " + std::to_string(report.students) + "\n";
  out += "questions: " + std::to_string(report.questions.size()) + "\n";
  out += "effective MCQs: " + std::to_string(report.effective_mcqs()) + "\n";
  for (std::size_t q = 0; q < report.questions.size(); ++q) {
    const auto& qr = report.questions[q];
    out += "  q" + std::to_string(q + 1) + " answer " + letter(qr.correct_option) + ", correct " +
           std::to_string(qr.correct_choosers) + ", blank " + std::to_string(qr.blanks) + ", effective distractors " +
           std::to_string(qr.effective_distractors) + "\n";
  }
  out += "mean: " + fixed(stats.mean, 4) + "\n";
  out += "sd (population): " + fixed(stats.population_sd, 4) + "\n";
  out += "sd (sample): " + (std::isnan(stats.sample_sd) ? std::string("n/a") : fixed(stats.sample_sd, 4)) + "\n";
  out += "mode:";
  for (int m : stats.modes) out += " " + std::to_string(m);
  out += "\nfrequency:\n";
  for (const auto& [score, count] : stats.frequency) {
    out += "  " + std::to_string(score) + ": " + std::to_string(count) + "\n";
  }
  return out;
}

}  // namespace covquiz::psychometrics
