#include "covquiz/render_export.hpp"

#include <algorithm>

#include "covquiz/atomic_file.hpp"
#include "covquiz/csv.hpp"
#include "covquiz/error.hpp"

namespace covquiz::render {

using flowgraph::BranchTag;
using flowgraph::FlowGraph;
using flowgraph::NodeKind;

namespace {

std::string_view noun(Representation kind) {
  return kind == Representation::Graph ? "flow graph" : "Python code segment";
}

std::string_view coverage_name(flowgraph::TestingMethod method) {
  switch (method) {
    case flowgraph::TestingMethod::PathCoverage: return "path coverage";
    case flowgraph::TestingMethod::BranchCoverage: return "branch coverage";
    case flowgraph::TestingMethod::StatementCoverage: return "statement coverage";
  }
  return "";
}

// Characters, not bytes: UTF-8 continuation bytes are not counted.
std::size_t char_count(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string cell_payload(Representation kind, const std::string& text, std::string_view exam_id, std::size_t row,
                         std::string_view slot) {
  return kind == Representation::Graph ? asset_name(exam_id, row, slot) : text;
}

std::string opt_slot(int index) { return "opt" + std::to_string(index + 1); }

}  // namespace

std::string question_text(flowgraph::TestingMethod method, Representation stimulus, Representation choice) {
  std::string out = "Which ";
  out += noun(choice);
  out += " does have the same number of minimum test cases covering 100% ";
  out += coverage_name(method);
  out += " as the given ";
  out += noun(stimulus);
  out += "?";
  return out;
}

std::string render_dot(const FlowGraph& graph) {
  std::string out = "digraph G {\n";
  for (const auto& n : graph.nodes) {
    out += "  n" + std::to_string(n.id) + " [";
    switch (n.kind) {
      case NodeKind::Entry: out += "label=\"start\", shape=ellipse"; break;
      case NodeKind::Exit: out += "label=\"end\", shape=ellipse"; break;
      case NodeKind::Decision: out += "label=\"" + std::to_string(n.line) + "\", shape=diamond"; break;
      case NodeKind::Statement:
        if (n.join) {
          out += "label=\"\", shape=point";
        } else {
          out += "label=\"" + std::to_string(n.line) + "\", shape=box";
        }
        break;
    }
    out += "];\n";
  }
  for (const auto& e : graph.edges) {
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to);
    std::string attrs;
    if (e.tag == BranchTag::True || e.tag == BranchTag::LoopEnter) attrs = "label=\"true\"";
    if (e.tag == BranchTag::False || e.tag == BranchTag::LoopExit) attrs = "label=\"false\"";
    if (e.back) attrs += std::string(attrs.empty() ? "" : ", ") + "style=dashed";
    if (!attrs.empty()) out += " [" + attrs + "]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

std::string payload(const bank::BankItem& item, Representation kind) {
  return kind == Representation::Graph ? render_dot(item.graph) : item.program.source_text;
}

RenderedMcq render_mcq(const bank::Bank& bank, const qgen::Mcq& mcq) {
  RenderedMcq r;
  r.stimulus_kind = qgen::stimulus_kind(mcq.qtype);
  r.choice_kind = qgen::choice_kind(mcq.qtype);
  r.question_text = question_text(mcq.method, r.stimulus_kind, r.choice_kind);
  r.stimulus_payload = payload(bank.at(mcq.stimulus_item), r.stimulus_kind);
  for (std::size_t i = 0; i < 4; ++i) r.option_payloads[i] = payload(bank.at(mcq.options[i].item_id), r.choice_kind);
  r.correct_index = mcq.correct_index;
  return r;
}

std::string asset_name(std::string_view exam_id, std::size_t row, std::string_view slot) {
  return std::string(exam_id) + "_" + std::to_string(row) + "_" + std::string(slot) + ".dot";
}

std::array<std::string, 5> csv_cells(const RenderedMcq& mcq, std::string_view exam_id, std::size_t row) {
  std::array<std::string, 5> cells;
  cells[0] = mcq.question_text + "\n" + cell_payload(mcq.stimulus_kind, mcq.stimulus_payload, exam_id, row, "stimulus");
  std::size_t next = 2;
  for (int i = 0; i < 4; ++i) {
    std::string cell = cell_payload(mcq.choice_kind, mcq.option_payloads[static_cast<std::size_t>(i)], exam_id, row, opt_slot(i));
    if (i == mcq.correct_index) {
      cells[1] = std::move(cell);
    } else {
      cells[next++] = std::move(cell);
    }
  }
  return cells;
}

std::vector<std::pair<std::string, std::string>> export_files(const std::vector<RenderedMcq>& mcqs,
                                                             std::string_view exam_id) {
  std::vector<csv::Row> rows{csv::Row(std::begin(kCsvHeader), std::end(kCsvHeader))};
  std::vector<csv::Row> key{{"row", "correct_position"}};
  std::vector<std::pair<std::string, std::string>> assets;
  for (std::size_t r = 0; r < mcqs.size(); ++r) {
    const RenderedMcq& q = mcqs[r];
    const std::size_t row = r + 1;
    auto cells = csv_cells(q, exam_id, row);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (char_count(cells[c]) > kMaxCellChars) {
        throw PayloadTooLarge("row " + std::to_string(row) + ", column " + std::string(kCsvHeader[c]) + ": " +
                              std::to_string(char_count(cells[c])) + " characters exceed the limit of " +
                              std::to_string(kMaxCellChars));
      }
    }
    rows.emplace_back(cells.begin(), cells.end());
    key.push_back({std::to_string(row), std::to_string(q.correct_index + 1)});
    if (q.stimulus_kind == Representation::Graph) {
      assets.emplace_back(asset_name(exam_id, row, "stimulus"), q.stimulus_payload);
    }
    if (q.choice_kind == Representation::Graph) {
      for (int i = 0; i < 4; ++i) {
        assets.emplace_back(asset_name(exam_id, row, opt_slot(i)), q.option_payloads[static_cast<std::size_t>(i)]);
      }
    }
  }
  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back(std::string(exam_id) + ".csv", csv::write(rows));
  files.emplace_back(std::string(exam_id) + ".key.csv", csv::write(key));
  for (auto& a : assets) files.push_back(std::move(a));
  return files;
}

void export_csv(const std::vector<RenderedMcq>& mcqs, const std::filesystem::path& csv_path) {
  const std::string exam_id = csv_path.stem().string();
  const auto dir = csv_path.parent_path();
  FileBatch batch;
  for (auto& [name, content] : export_files(mcqs, exam_id)) batch.add(dir / name, std::move(content));
  batch.commit();
}

std::vector<std::array<std::string, 5>> read_exam_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty() || !std::equal(rows[0].begin(), rows[0].end(), std::begin(kCsvHeader), std::end(kCsvHeader))) {
    throw SchemaMismatch("exam CSV header must be question,correct_answer,distractor_1,distractor_2,distractor_3");
  }
  std::vector<std::array<std::string, 5>> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 5) {
      throw SchemaMismatch("exam CSV row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                           " cells, expected 5");
    }
    std::array<std::string, 5> cells;
    std::copy(rows[r].begin(), rows[r].end(), cells.begin());
    out.push_back(std::move(cells));
  }
  return out;
}

std::vector<std::pair<std::size_t, int>> read_key_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty() || rows[0] != csv::Row{"row", "correct_position"}) {
    throw SchemaMismatch("key file header must be row,correct_position");
  }
  std::vector<std::pair<std::size_t, int>> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    try {
      if (rows[r].size() != 2) throw std::invalid_argument("cells");
      const std::size_t row = std::stoul(rows[r][0]);
      const int pos = std::stoi(rows[r][1]);
      if (pos < 1 || pos > 4) throw std::invalid_argument("position");
      out.emplace_back(row, pos);
    } catch (const std::logic_error&) {
      throw SchemaMismatch("key file line " + std::to_string(r + 1) + " is not a row number and a position 1-4");
    }
  }
  return out;
}

}  // namespace covquiz::render
