#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covquiz/bank.hpp"
#include "covquiz/flowgraph.hpp"
#include "covquiz/qgen.hpp"

namespace covquiz::render {

using qgen::Representation;

inline constexpr std::size_t kMaxCellChars = 32'000;

inline constexpr std::string_view kCsvHeader[] = {"question", "correct_answer", "distractor_1", "distractor_2",
                                                  "distractor_3"};

/// The analytical question stem; the option noun comes first and the
/// stimulus noun last.
std::string question_text(flowgraph::TestingMethod method, Representation stimulus, Representation choice);

/// Graphviz text. Nodes show source line numbers only, so a graph never
/// reveals the code it came from; decision outcomes are labeled true/false.
std::string render_dot(const flowgraph::FlowGraph& graph);

/// What a student sees for one item: its source text or its DOT graph.
std::string payload(const bank::BankItem& item, Representation kind);

struct RenderedMcq {
  std::string question_text;
  Representation stimulus_kind = Representation::Code;
  Representation choice_kind = Representation::Code;
  std::string stimulus_payload;
  std::array<std::string, 4> option_payloads;  // on-form order
  int correct_index = 0;

  char answer_key() const { return static_cast<char>('A' + correct_index); }
};

RenderedMcq render_mcq(const bank::Bank& bank, const qgen::Mcq& mcq);

/// `<exam_id>_<row>_<slot>.dot`, row counted from 1, slot "stimulus" or "opt1".."opt4".
std::string asset_name(std::string_view exam_id, std::size_t row, std::string_view slot);

/// The five cells of one CSV row. Graph payloads are replaced by their asset
/// file names; the correct answer always sits in the second cell.
std::array<std::string, 5> csv_cells(const RenderedMcq& mcq, std::string_view exam_id, std::size_t row);

/// Every file of an export keyed by file name: `<exam_id>.csv`, the key
/// sidecar `<exam_id>.key.csv`, and one DOT file per graph slot.
/// Throws PayloadTooLarge.
std::vector<std::pair<std::string, std::string>> export_files(const std::vector<RenderedMcq>& mcqs,
                                                             std::string_view exam_id);

/// Writes export_files next to `csv_path`, using its stem as exam id. Nothing
/// is left behind on failure. Throws IoError or PayloadTooLarge.
void export_csv(const std::vector<RenderedMcq>& mcqs, const std::filesystem::path& csv_path);

/// Data rows of an exported exam CSV. Throws SchemaMismatch on a wrong header
/// or a row without exactly five cells.
std::vector<std::array<std::string, 5>> read_exam_csv(std::string_view text);

/// Pairs (row, correct_position) from a key sidecar; positions are 1..4.
std::vector<std::pair<std::size_t, int>> read_key_csv(std::string_view text);

}  // namespace covquiz::render
