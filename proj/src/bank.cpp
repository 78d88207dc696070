#include "covquiz/bank.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>

#include "covquiz/atomic_file.hpp"
#include "covquiz/error.hpp"
#include "json.hpp"

namespace covquiz::bank {

using flowgraph::CoverageCounts;
using flowgraph::FlowGraph;
using flowgraph::TestingMethod;
using json = nlohmann::ordered_json;

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string describe(const CoverageCounts& c) {
  return "path=" + std::to_string(c.path) + " branch=" + std::to_string(c.branch) +
         " statement=" + std::to_string(c.statement);
}

json graph_to_json(const FlowGraph& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) {
    nodes.push_back({{"id", n.id},
                     {"kind", flowgraph::kind_name(n.kind)},
                     {"label", n.label},
                     {"line", n.line},
                     {"join", n.join}});
  }
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"from", e.from}, {"to", e.to}, {"tag", flowgraph::tag_name(e.tag)}, {"back", e.back}});
  }
  return {{"entry", g.entry_id}, {"exit", g.exit_id}, {"nodes", nodes}, {"edges", edges}};
}

FlowGraph graph_from_json(const json& j) {
  FlowGraph g;
  g.entry_id = j.at("entry").get<int>();
  g.exit_id = j.at("exit").get<int>();
  for (const auto& n : j.at("nodes")) {
    auto kind = flowgraph::parse_kind(n.at("kind").get<std::string>());
    if (!kind) throw SchemaMismatch("unknown node kind " + n.at("kind").dump());
    g.nodes.push_back({n.at("id").get<int>(), *kind, n.at("label").get<std::string>(), n.at("line").get<int>(),
                       n.value("join", false)});
  }
  for (const auto& e : j.at("edges")) {
    auto tag = flowgraph::parse_tag(e.at("tag").get<std::string>());
    if (!tag) throw SchemaMismatch("unknown edge tag " + e.at("tag").dump());
    g.edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(), *tag, e.value("back", false)});
  }
  return g;
}

void check_unique(const Bank& bank, const std::string& item_id, const minilang::Program& program) {
  if (bank.find(item_id) != nullptr) throw DuplicateId("item '" + item_id + "' already in bank");
  for (const BankItem& item : bank.items()) {
    if (minilang::same_structure(item.program, program)) {
      throw DuplicateProgram("item '" + item_id + "' has the same program as '" + item.item_id + "'");
    }
  }
}

bool same_counts(const CoverageCounts& a, const CoverageCounts& b) {
  return a.path == b.path && a.branch == b.branch && a.statement == b.statement;
}

}  // namespace

Bank::Bank(BankMetadata metadata, std::vector<BankItem> items)
    : metadata_(std::move(metadata)), items_(std::move(items)) {}

const BankItem* Bank::find(std::string_view item_id) const {
  for (const BankItem& item : items_) {
    if (item.item_id == item_id) return &item;
  }
  return nullptr;
}

const BankItem& Bank::at(std::string_view item_id) const {
  const BankItem* item = find(item_id);
  if (item == nullptr) throw Error("no item '" + std::string(item_id) + "' in bank");
  return *item;
}

flowgraph::AnalysisConfig Bank::analysis_config() const {
  flowgraph::AnalysisConfig config;
  config.loop_bound = metadata_.loop_bound;
  config.path_cap = metadata_.path_cap;
  return config;
}

Bank make_bank(int loop_bound, std::size_t path_cap) {
  if (loop_bound < 0) throw Error("loop bound must be non-negative");
  BankMetadata meta;
  meta.created = utc_now();
  meta.loop_bound = loop_bound;
  meta.path_cap = path_cap;
  return Bank(std::move(meta));
}

Bank ingest(const Bank& bank, std::string_view source_text, std::string item_id) {
  if (item_id.empty()) throw Error("item id must not be empty");
  minilang::Program program = minilang::parse(source_text, item_id);
  check_unique(bank, item_id, program);
  BankItem item;
  item.item_id = std::move(item_id);
  item.graph = flowgraph::build_cfg(program);
  item.counts = flowgraph::coverage_counts(item.graph, bank.analysis_config());
  item.program = std::move(program);
  std::vector<BankItem> items = bank.items();
  items.push_back(std::move(item));
  return Bank(bank.metadata(), std::move(items));
}

Bank override_counts(const Bank& bank, std::string_view item_id, CoverageCounts counts) {
  std::vector<BankItem> items = bank.items();
  auto it = std::find_if(items.begin(), items.end(), [&](const BankItem& i) { return i.item_id == item_id; });
  if (it == items.end()) throw Error("no item '" + std::string(item_id) + "' in bank");
  counts.loop_bound = bank.metadata().loop_bound;
  it->counts = counts;
  it->counts_overridden = true;
  return Bank(bank.metadata(), std::move(items));
}

std::vector<EquivalenceGroup> groups(const Bank& bank, TestingMethod method) {
  std::map<int, EquivalenceGroup> by_value;
  for (const BankItem& item : bank.items()) {
    const int value = item.count(method);
    auto& g = by_value[value];
    g.method = method;
    g.count_value = value;
    g.member_ids.push_back(item.item_id);
  }
  std::vector<EquivalenceGroup> out;
  out.reserve(by_value.size());
  for (auto& [value, g] : by_value) out.push_back(std::move(g));
  return out;
}

std::string to_json(const Bank& bank, const SaveOptions& options) {
  const BankMetadata& meta = bank.metadata();
  json items = json::array();
  for (const BankItem& item : bank.items()) {
    json j = {{"item_id", item.item_id},
              {"source", item.program.source_text},
              {"counts", {{"path", item.counts.path}, {"branch", item.counts.branch}, {"statement", item.counts.statement}}},
              {"counts_overridden", item.counts_overridden},
              {"approximate", item.counts.approximate}};
    if (options.embed_graphs) j["graph"] = graph_to_json(item.graph);
    items.push_back(std::move(j));
  }
  json doc = {{"schema_version", kSchemaVersion},
              {"tool_version", meta.tool_version},
              {"created", meta.created},
              {"loop_bound", meta.loop_bound},
              {"path_cap", meta.path_cap},
              {"items", std::move(items)}};
  return doc.dump(2) + "\n";
}

Bank from_json(std::string_view text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaMismatch(std::string("bank file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("schema_version")) throw SchemaMismatch("missing schema_version");
    const int version = doc.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw SchemaMismatch("schema_version " + std::to_string(version) + " is not supported (expected " +
                           std::to_string(kSchemaVersion) + ")");
    }
    BankMetadata meta;
    meta.loop_bound = doc.at("loop_bound").get<int>();
    if (meta.loop_bound < 0) throw SchemaMismatch("loop_bound must be non-negative");
    meta.path_cap = doc.value("path_cap", flowgraph::kDefaultPathCap);
    meta.created = doc.value("created", std::string{});
    meta.tool_version = doc.value("tool_version", std::string{});

    Bank bank(meta);
    const flowgraph::AnalysisConfig config = bank.analysis_config();
    std::vector<BankItem> items;
    for (const json& j : doc.at("items")) {
      BankItem item;
      item.item_id = j.at("item_id").get<std::string>();
      item.program = minilang::parse(j.at("source").get<std::string>(), item.item_id);
      check_unique(Bank(meta, items), item.item_id, item.program);
      item.graph = flowgraph::build_cfg(item.program);
      if (j.contains("graph") && graph_from_json(j.at("graph")) != item.graph) {
        throw VerificationFailure("item '" + item.item_id + "': embedded graph differs from the derived graph");
      }
      const json& c = j.at("counts");
      item.counts.path = c.at("path").get<int>();
      item.counts.branch = c.at("branch").get<int>();
      item.counts.statement = c.at("statement").get<int>();
      item.counts.loop_bound = meta.loop_bound;
      item.counts.approximate = j.value("approximate", false);
      item.counts_overridden = j.value("counts_overridden", false);
      if (options.verify && !item.counts_overridden) {
        CoverageCounts fresh = flowgraph::coverage_counts(item.graph, config);
        if (!same_counts(fresh, item.counts)) {
          throw VerificationFailure("item '" + item.item_id + "': stored counts (" + describe(item.counts) +
                                    ") differ from recomputed (" + describe(fresh) + ")");
        }
        item.counts.approximate = fresh.approximate;
      }
      items.push_back(std::move(item));
    }
    return Bank(std::move(meta), std::move(items));
  } catch (const json::exception& e) {
    throw SchemaMismatch(std::string("malformed bank file: ") + e.what());
  }
}

void save(const Bank& bank, const std::filesystem::path& path, const SaveOptions& options) {
  write_file_atomic(path, to_json(bank, options));
}

Bank load(const std::filesystem::path& path, const LoadOptions& options) {
  return from_json(read_text_file(path), options);
}

std::vector<Mismatch> verify_against_oracle(const Bank& bank) {
  std::vector<Mismatch> out;
  for (const BankItem& item : bank.items()) {
    if (item.counts_overridden) continue;
    CoverageCounts fresh = flowgraph::brute_force_counts(item.graph, bank.metadata().loop_bound, bank.metadata().path_cap);
    if (!same_counts(fresh, item.counts)) out.push_back({item.item_id, item.counts, fresh});
  }
  return out;
}

bool equivalent(const Bank& a, const Bank& b) {
  if (a.metadata().loop_bound != b.metadata().loop_bound || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const BankItem& x = a.items()[i];
    const BankItem& y = b.items()[i];
    if (x.item_id != y.item_id || !minilang::same_structure(x.program, y.program) || x.graph != y.graph ||
        !same_counts(x.counts, y.counts) || x.counts_overridden != y.counts_overridden) {
      return false;
    }
  }
  return true;
}

}  // namespace covquiz::bank
