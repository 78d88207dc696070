#include "covquiz/qgen.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "covquiz/error.hpp"

namespace covquiz::qgen {

using bank::Bank;
using bank::EquivalenceGroup;

namespace {

std::size_t method_index(TestingMethod m) { return static_cast<std::size_t>(m); }
std::size_t type_index(QuestionType t) { return static_cast<std::size_t>(t); }

// Group layout of a bank under one method, in bank positions.
struct Partition {
  std::size_t n = 0;
  std::vector<int> value;                    // count per item position
  std::map<int, std::vector<std::size_t>> members;  // count -> positions, bank order

  explicit Partition(const Bank& bank, TestingMethod method) : n(bank.size()) {
    for (std::size_t i = 0; i < n; ++i) {
      value.push_back(bank.items()[i].count(method));
      members[value.back()].push_back(i);
    }
  }

  const std::vector<std::size_t>& group_of(std::size_t pos) const { return members.at(value[pos]); }

  bool eligible(std::size_t pos) const {
    const std::size_t m = group_of(pos).size();
    return m >= 2 && n - m >= 3;
  }

  std::vector<std::size_t> outsiders(std::size_t pos) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
      if (value[i] != value[pos]) out.push_back(i);
    }
    return out;
  }
};

std::string group_desc(TestingMethod method, int value, std::size_t m) {
  return std::string(flowgraph::method_key(method)) + " group with count " + std::to_string(value) + " (M=" +
         std::to_string(m) + ")";
}

// Throws NoPeer/InsufficientDistractors when no item is eligible.
void require_eligible(const Partition& p, TestingMethod method) {
  const std::pair<const int, std::vector<std::size_t>>* largest = nullptr;
  for (const auto& g : p.members) {
    if (g.second.size() >= 2 && p.n - g.second.size() >= 3) return;
    if (largest == nullptr || g.second.size() > largest->second.size()) largest = &g;
  }
  if (largest == nullptr) {
    throw NoPeer("bank is empty; no " + std::string(flowgraph::method_key(method)) + " group to draw from");
  }
  if (largest->second.size() < 2) {
    throw NoPeer("no " + std::string(flowgraph::method_key(method)) + " group has 2 or more members (largest is " +
                 group_desc(method, largest->first, largest->second.size()) + ")");
  }
  for (const auto& g : p.members) {
    if (g.second.size() >= 2) {
      throw InsufficientDistractors(group_desc(method, g.first, g.second.size()) + " leaves only " +
                                    std::to_string(p.n - g.second.size()) + " items with a different count; 3 needed");
    }
  }
}

// Draws distractors and shuffles; stimulus and correct are already chosen.
Mcq complete(const Bank& bank, const Partition& p, TestingMethod method, QuestionType qtype, std::size_t stimulus,
             std::size_t correct, Rng& rng) {
  const auto outside = p.outsiders(stimulus);
  std::vector<std::size_t> chosen{correct};
  for (std::size_t k : rng.sample(outside.size(), 3)) chosen.push_back(outside[k]);
  rng.shuffle(chosen);

  Mcq q;
  q.method = method;
  q.qtype = qtype;
  q.stimulus_item = bank.items()[stimulus].item_id;
  for (std::size_t i = 0; i < 4; ++i) {
    q.options[i] = {bank.items()[chosen[i]].item_id, choice_kind(qtype)};
    if (chosen[i] == correct) q.correct_index = static_cast<int>(i);
  }
  q.seed = rng.seed();
  return q;
}

}  // namespace

Representation stimulus_kind(QuestionType type) {
  return type == QuestionType::T1 || type == QuestionType::T2 ? Representation::Graph : Representation::Code;
}

Representation choice_kind(QuestionType type) {
  return type == QuestionType::T1 || type == QuestionType::T4 ? Representation::Graph : Representation::Code;
}

std::string_view type_key(QuestionType type) {
  static constexpr std::string_view keys[] = {"T1", "T2", "T3", "T4"};
  return keys[type_index(type)];
}

std::optional<QuestionType> parse_type(std::string_view key) {
  if (key.size() == 2 && (key[0] == 'T' || key[0] == 't')) key.remove_prefix(1);
  if (key.size() == 1 && key[0] >= '1' && key[0] <= '4') return kAllTypes[key[0] - '1'];
  return std::nullopt;
}

std::string_view representation_name(Representation kind) {
  return kind == Representation::Graph ? "graph" : "code";
}

Mcq formulate(const Bank& bank, TestingMethod method, QuestionType qtype, Rng& rng) {
  const Partition p(bank, method);
  require_eligible(p, method);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < p.n; ++i) {
    if (p.eligible(i)) eligible.push_back(i);
  }
  const std::size_t mark = rng.draws().size();
  const std::size_t stimulus = eligible[rng.index(eligible.size())];
  std::vector<std::size_t> peers;
  for (std::size_t i : p.group_of(stimulus)) {
    if (i != stimulus) peers.push_back(i);
  }
  const std::size_t correct = peers[rng.index(peers.size())];
  Mcq q = complete(bank, p, method, qtype, stimulus, correct, rng);
  q.draws.assign(rng.draws().begin() + static_cast<std::ptrdiff_t>(mark), rng.draws().end());
  return q;
}

ExamSpec ExamSpec::uniform(int per_cell, const std::vector<TestingMethod>& methods,
                           const std::vector<QuestionType>& types, std::uint64_t seed) {
  ExamSpec spec;
  spec.seed = seed;
  for (TestingMethod m : methods) {
    for (QuestionType t : types) spec.cell(m, t) = per_cell;
  }
  return spec;
}

ExamSpec ExamSpec::standard(std::uint64_t seed) {
  return uniform(1, {std::begin(flowgraph::kAllMethods), std::end(flowgraph::kAllMethods)},
                 {std::begin(kAllTypes), std::end(kAllTypes)}, seed);
}

int& ExamSpec::cell(TestingMethod method, QuestionType type) { return per_cell[method_index(method)][type_index(type)]; }

int ExamSpec::cell(TestingMethod method, QuestionType type) const {
  return per_cell[method_index(method)][type_index(type)];
}

int ExamSpec::total() const {
  int sum = 0;
  for (const auto& row : per_cell) {
    for (int c : row) sum += c;
  }
  return sum;
}

std::vector<std::string> feasibility_report(const Bank& bank, const ExamSpec& spec) {
  std::vector<std::string> problems;
  for (TestingMethod m : flowgraph::kAllMethods) {
    const std::string key(flowgraph::method_key(m));
    int requested = 0;
    for (QuestionType t : kAllTypes) {
      const int c = spec.cell(m, t);
      if (c < 0) problems.push_back(key + "/" + std::string(type_key(t)) + ": negative question count");
      requested += std::max(c, 0);
    }
    if (requested == 0) continue;

    const Partition p(bank, m);
    std::uint64_t pairs = 0;
    for (const auto& [value, members] : p.members) {
      if (members.size() >= 2 && p.n - members.size() >= 3) pairs += members.size() * (members.size() - 1);
    }
    if (pairs == 0) {
      std::string why;
      try {
        require_eligible(p, m);
      } catch (const Error& e) {
        why = e.what();
      }
      for (QuestionType t : kAllTypes) {
        if (spec.cell(m, t) > 0) {
          problems.push_back(key + "/" + std::string(type_key(t)) + ": " + std::to_string(spec.cell(m, t)) +
                             " requested, none possible: " + why);
        }
      }
    } else if (static_cast<std::uint64_t>(requested) > pairs) {
      problems.push_back(key + ": " + std::to_string(requested) + " questions requested but only " +
                         std::to_string(pairs) + " distinct (stimulus, correct answer) pairs exist");
    }
  }
  return problems;
}

std::vector<Mcq> generate_exam(const Bank& bank, const ExamSpec& spec) {
  const auto problems = feasibility_report(bank, spec);
  if (!problems.empty()) {
    std::string msg = "exam spec cannot be met:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw SpecUnachievable(msg);
  }

  Rng rng(spec.seed);
  std::vector<Mcq> exam;
  for (TestingMethod m : flowgraph::kAllMethods) {
    const Partition p(bank, m);
    std::set<std::pair<std::size_t, std::size_t>> used;
    auto unused_peers = [&](std::size_t s) {
      std::vector<std::size_t> out;
      for (std::size_t i : p.group_of(s)) {
        if (i != s && used.count({s, i}) == 0) out.push_back(i);
      }
      return out;
    };
    for (QuestionType t : kAllTypes) {
      for (int k = 0; k < spec.cell(m, t); ++k) {
        std::vector<std::size_t> stimuli;
        for (std::size_t i = 0; i < p.n; ++i) {
          if (p.eligible(i) && !unused_peers(i).empty()) stimuli.push_back(i);
        }
        const std::size_t mark = rng.draws().size();
        const std::size_t stimulus = stimuli[rng.index(stimuli.size())];
        const auto peers = unused_peers(stimulus);
        const std::size_t correct = peers[rng.index(peers.size())];
        used.insert({stimulus, correct});
        Mcq q = complete(bank, p, m, t, stimulus, correct, rng);
        q.draws.assign(rng.draws().begin() + static_cast<std::ptrdiff_t>(mark), rng.draws().end());
        exam.push_back(std::move(q));
      }
    }
  }
  return exam;
}

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SpaceCount count_space(const Bank& bank, TestingMethod method) {
  SpaceCount out;
  out.method = method;
  const std::uint64_t n = bank.size();
  for (const EquivalenceGroup& g : bank::groups(bank, method)) {
    const std::uint64_t m = g.size();
    GroupSpace gs{g.count_value, g.size(), m < 2 ? 0 : m * (m - 1) * choose(n - m, 3)};
    out.total += gs.questions;
    out.groups.push_back(gs);
  }
  return out;
}

std::uint64_t all_types_total(const Bank& bank) {
  std::uint64_t sum = 0;
  for (TestingMethod m : flowgraph::kAllMethods) sum += count_space(bank, m).total;
  return 4 * sum;
}

std::vector<Mcq> enumerate_space(const Bank& bank, TestingMethod method, QuestionType qtype, std::size_t cap) {
  const std::uint64_t expected = count_space(bank, method).total;
  if (expected > cap) {
    throw CapExceeded(std::to_string(expected) + " questions exceed the enumeration cap of " + std::to_string(cap));
  }
  const Partition p(bank, method);
  std::vector<Mcq> out;
  for (std::size_t s = 0; s < p.n; ++s) {
    const auto outside = p.outsiders(s);
    for (std::size_t c : p.group_of(s)) {
      if (c == s) continue;
      const std::size_t k = outside.size();
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
          for (std::size_t d = b + 1; d < k; ++d) {
            std::array<std::size_t, 4> chosen{c, outside[a], outside[b], outside[d]};
            std::sort(chosen.begin(), chosen.end());
            Mcq q;
            q.method = method;
            q.qtype = qtype;
            q.stimulus_item = bank.items()[s].item_id;
            for (std::size_t i = 0; i < 4; ++i) {
              q.options[i] = {bank.items()[chosen[i]].item_id, choice_kind(qtype)};
              if (chosen[i] == c) q.correct_index = static_cast<int>(i);
            }
            out.push_back(std::move(q));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace covquiz::qgen
