#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "covquiz/flowgraph.hpp"
#include "covquiz/minilang.hpp"

namespace covquiz {

inline constexpr std::string_view kToolVersion = "0.3.0";

namespace bank {

inline constexpr int kSchemaVersion = 1;

/// One code snippet fused with its flow graph and its per-method minimum
/// test-case counts.
struct BankItem {
  std::string item_id;
  minilang::Program program;
  flowgraph::FlowGraph graph;
  flowgraph::CoverageCounts counts;
  bool counts_overridden = false;

  int count(flowgraph::TestingMethod method) const { return counts.get(method); }
};

struct BankMetadata {
  std::string created;  // ISO-8601 UTC
  std::string tool_version{kToolVersion};
  int loop_bound = 1;
  std::size_t path_cap = flowgraph::kDefaultPathCap;
};

/// Immutable collection of items; operations that change it return a new Bank.
class Bank {
 public:
  Bank() = default;
  explicit Bank(BankMetadata metadata, std::vector<BankItem> items = {});

  const BankMetadata& metadata() const { return metadata_; }
  const std::vector<BankItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  /// nullptr when absent.
  const BankItem* find(std::string_view item_id) const;
  const BankItem& at(std::string_view item_id) const;

  flowgraph::AnalysisConfig analysis_config() const;

 private:
  BankMetadata metadata_;
  std::vector<BankItem> items_;
};

/// Empty bank stamped with the current time.
Bank make_bank(int loop_bound = 1, std::size_t path_cap = flowgraph::kDefaultPathCap);

/// Parses and analyzes `source_text` and appends it under `item_id`.
/// Throws DuplicateId, DuplicateProgram (same AST as an existing item),
/// SyntaxError or PathExplosion; `bank` itself is never modified.
Bank ingest(const Bank& bank, std::string_view source_text, std::string item_id);

/// Replaces an item's counts and flags it as overridden.
Bank override_counts(const Bank& bank, std::string_view item_id, flowgraph::CoverageCounts counts);

struct EquivalenceGroup {
  flowgraph::TestingMethod method{};
  int count_value = 0;
  std::vector<std::string> member_ids;  // bank order

  std::size_t size() const { return member_ids.size(); }  // M
};

/// Partition of the items by their count under `method`, ascending by count.
std::vector<EquivalenceGroup> groups(const Bank& bank, flowgraph::TestingMethod method);

struct SaveOptions {
  bool embed_graphs = false;
};

struct LoadOptions {
  bool verify = true;
};

std::string to_json(const Bank& bank, const SaveOptions& options = {});
Bank from_json(std::string_view text, const LoadOptions& options = {});

/// Writes via a temporary file and rename. Throws IoError.
void save(const Bank& bank, const std::filesystem::path& path, const SaveOptions& options = {});

/// Throws IoError, SchemaMismatch, and VerificationFailure when stored counts
/// (or an embedded graph) disagree with recomputation for a non-overridden item.
Bank load(const std::filesystem::path& path, const LoadOptions& options = {});

/// Items whose stored counts differ from `flowgraph::brute_force_counts`;
/// overridden items are skipped.
struct Mismatch {
  std::string item_id;
  flowgraph::CoverageCounts stored;
  flowgraph::CoverageCounts recomputed;
};
std::vector<Mismatch> verify_against_oracle(const Bank& bank);

/// Same items, programs, graphs, counts and flags, in the same order.
bool equivalent(const Bank& a, const Bank& b);

}  // namespace bank
}  // namespace covquiz
