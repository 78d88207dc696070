#include "covquiz/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "covquiz/atomic_file.hpp"
#include "covquiz/bank.hpp"
#include "covquiz/error.hpp"
#include "covquiz/psychometrics.hpp"
#include "covquiz/qgen.hpp"
#include "covquiz/render_export.hpp"
#include "json.hpp"

namespace covquiz::cli {

namespace fs = std::filesystem;
using flowgraph::TestingMethod;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
  bool is_io() const noexcept override { return true; }
};

struct Options {
  std::string bank_path;
  std::optional<int> loop_bound;
  std::optional<std::size_t> cap;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::vector<std::string> methods{"path", "branch", "statement"};
  std::vector<std::string> types{"T1", "T2", "T3", "T4"};
  int per_cell = 1;
  bool no_verify = false;
  bool embed_graphs = false;
  std::string exam_id = "exam";
  std::vector<std::string> files;
  std::string responses;
  std::string key;
};

bank::Bank load_bank(const Options& o, bool verify) {
  bank::LoadOptions lo;
  lo.verify = verify && !o.no_verify;
  return bank::load(o.bank_path, lo);
}

std::string triple(const flowgraph::CoverageCounts& c) {
  return std::to_string(c.path) + " " + std::to_string(c.branch) + " " + std::to_string(c.statement);
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  bank::Bank b;
  if (fs::exists(o.bank_path)) {
    b = load_bank(o, true);
    if (o.loop_bound && *o.loop_bound != b.metadata().loop_bound) {
      throw UsageError("bank " + o.bank_path + " uses loop bound " + std::to_string(b.metadata().loop_bound) +
                       "; --loop-bound " + std::to_string(*o.loop_bound) + " conflicts");
    }
  } else {
    b = bank::make_bank(o.loop_bound.value_or(1), o.cap.value_or(flowgraph::kDefaultPathCap));
  }
  for (const auto& file : o.files) {
    const fs::path p(file);
    b = bank::ingest(b, read_text_file(p), p.stem().string());
    const auto& item = b.items().back();
    out << item.item_id << " " << triple(item.counts) << (item.counts.approximate ? " approximate" : "") << "\n";
    if (item.counts.approximate) err << "warning: " << item.item_id << ": a minimum fell back to the greedy cover\n";
  }
  bank::SaveOptions so;
  so.embed_graphs = o.embed_graphs;
  bank::save(b, o.bank_path, so);
  err << "bank " << o.bank_path << ": " << b.size() << " items\n";
  return kExitOk;
}

std::vector<TestingMethod> parse_methods(const std::vector<std::string>& keys) {
  std::vector<TestingMethod> out;
  for (const auto& k : keys) {
    auto m = flowgraph::parse_method(k);
    if (!m) throw UsageError("unknown method '" + k + "' (use path, branch, statement)");
    out.push_back(*m);
  }
  return out;
}

std::vector<qgen::QuestionType> parse_types(const std::vector<std::string>& keys) {
  std::vector<qgen::QuestionType> out;
  for (const auto& k : keys) {
    auto t = qgen::parse_type(k);
    if (!t) throw UsageError("unknown question type '" + k + "' (use T1, T2, T3, T4)");
    out.push_back(*t);
  }
  return out;
}

int cmd_gen(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.per_cell < 0) throw UsageError("--per-cell must be non-negative");
  if (o.exam_id.empty() || o.exam_id.find_first_of("/\\") != std::string::npos) {
    throw UsageError("--exam-id must be a plain file name");
  }
  const bank::Bank b = load_bank(o, true);
  const std::uint64_t seed = o.seed ? *o.seed : fresh_seed();
  const auto spec = qgen::ExamSpec::uniform(o.per_cell, parse_methods(o.methods), parse_types(o.types), seed);
  const auto exam = qgen::generate_exam(b, spec);

  std::vector<render::RenderedMcq> rendered;
  nlohmann::ordered_json questions = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < exam.size(); ++i) {
    const auto& q = exam[i];
    rendered.push_back(render::render_mcq(b, q));
    nlohmann::ordered_json opts = nlohmann::ordered_json::array();
    for (const auto& opt : q.options) opts.push_back(opt.item_id);
    questions.push_back({{"row", i + 1},
                         {"method", flowgraph::method_key(q.method)},
                         {"type", qgen::type_key(q.qtype)},
                         {"stimulus", q.stimulus_item},
                         {"options", opts},
                         {"correct_position", q.correct_index + 1},
                         {"draws", q.draws}});
  }
  nlohmann::ordered_json meta = {{"exam_id", o.exam_id},
                                 {"seed", seed},
                                 {"tool_version", kToolVersion},
                                 {"bank", fs::path(o.bank_path).filename().string()},
                                 {"loop_bound", b.metadata().loop_bound},
                                 {"per_cell", o.per_cell},
                                 {"methods", o.methods},
                                 {"types", o.types},
                                 {"questions", questions}};

  fs::create_directories(o.out_dir);
  FileBatch batch;
  std::size_t written = 0;
  for (auto& [name, content] : render::export_files(rendered, o.exam_id)) {
    batch.add(fs::path(o.out_dir) / name, std::move(content));
    ++written;
  }
  batch.add(fs::path(o.out_dir) / (o.exam_id + ".meta.json"), meta.dump(2) + "\n");
  batch.commit();
  out << "seed " << seed << "\n";
  out << "questions " << exam.size() << "\n";
  out << "files " << written + 1 << " in " << o.out_dir << "\n";
  if (!o.seed) err << "no --seed given; generated seed " << seed << "\n";
  return kExitOk;
}

int cmd_count(const Options& o, std::ostream& out, std::ostream&) {
  const bank::Bank b = load_bank(o, true);
  out << "method,count,M,questions\n";
  std::uint64_t per_type = 0;
  std::ostringstream totals;
  for (TestingMethod m : flowgraph::kAllMethods) {
    const auto space = qgen::count_space(b, m);
    for (const auto& g : space.groups) {
      out << flowgraph::method_key(m) << "," << g.count_value << "," << g.members << "," << g.questions << "\n";
    }
    totals << "total," << flowgraph::method_key(m) << "," << space.total << "\n";
    per_type += space.total;
  }
  out << totals.str();
  out << "per type," << per_type << "\n";
  out << "all types," << qgen::all_types_total(b) << "\n";
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const auto rs = psychometrics::load_responses(o.responses, o.key);
  const auto report = psychometrics::distractor_report(rs);
  const auto stats = psychometrics::score_stats(rs);
  out << psychometrics::summary_text(report, stats);
  if (!o.out_dir.empty() && o.out_dir != ".") {
    fs::create_directories(o.out_dir);
    const auto path = fs::path(o.out_dir) / (rs.exam_id + ".distractors.csv");
    write_file_atomic(path, psychometrics::report_csv(report));
    err << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const bank::Bank b = load_bank(o, false);
  const auto mismatches = bank::verify_against_oracle(b);
  for (const auto& m : mismatches) {
    err << m.item_id << ": stored " << triple(m.stored) << ", recomputed " << triple(m.recomputed) << "\n";
  }
  if (!mismatches.empty()) {
    throw VerificationFailure(std::to_string(mismatches.size()) + " of " + std::to_string(b.size()) +
                              " items disagree with recomputation");
  }
  out << "verified " << b.size() << " items\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coverage-count MCQ generator"};
  app.name("covquiz");
  app.require_subcommand(1);
  Options o;

  auto bank_opt = [&](CLI::App* sub) { sub->add_option("--bank", o.bank_path, "bank JSON file")->required(); };

  auto* ingest = app.add_subcommand("ingest", "parse and analyze snippets, adding them to the bank");
  bank_opt(ingest);
  ingest->add_option("files", o.files, "snippet files; the file stem becomes the item id")->required();
  ingest->add_option("--loop-bound", o.loop_bound, "back-edge traversals per loop activation (new banks)")
      ->check(CLI::NonNegativeNumber);
  ingest->add_option("--cap", o.cap, "maximum paths per item (new banks)");
  ingest->add_flag("--embed-graphs", o.embed_graphs, "store flow graphs in the bank file");
  ingest->add_flag("--no-verify", o.no_verify, "skip recomputing stored counts on load");

  auto* gen = app.add_subcommand("gen", "generate an exam: CSV, DOT assets, key and metadata");
  bank_opt(gen);
  gen->add_option("--seed", o.seed, "RNG seed; generated and printed when absent");
  gen->add_option("--out", o.out_dir, "output directory");
  gen->add_option("--exam-id", o.exam_id, "base name of the output files");
  gen->add_option("--methods", o.methods, "testing methods")->delimiter(',');
  gen->add_option("--types", o.types, "question types")->delimiter(',');
  gen->add_option("--per-cell", o.per_cell, "questions per (method, type)");
  gen->add_flag("--no-verify", o.no_verify, "skip recomputing stored counts on load");

  auto* count = app.add_subcommand("count", "size of the question space per group and method");
  bank_opt(count);
  count->add_flag("--no-verify", o.no_verify, "skip recomputing stored counts on load");

  auto* analyze = app.add_subcommand("analyze", "distractor and score reports for collected responses");
  analyze->add_option("--responses", o.responses, "responses CSV")->required();
  analyze->add_option("--key", o.key, "key sidecar written by gen")->required();
  analyze->add_option("--out", o.out_dir, "directory for the distractor CSV");

  auto* verify = app.add_subcommand("verify", "recompute all bank counts with the brute-force route");
  bank_opt(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(o, out, err);
    if (*gen) return cmd_gen(o, out, err);
    if (*count) return cmd_count(o, out, err);
    if (*analyze) return cmd_analyze(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_io() ? kExitUsage : kExitDomain;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace covquiz::cli
