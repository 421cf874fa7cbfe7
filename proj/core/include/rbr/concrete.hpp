#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rbr/protocol.hpp"

namespace rbr {

class MoveNotEnabled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A move applies transition `transition` (an index into Protocol::transitions)
// to a process at round `round`.
struct Move {
  std::size_t transition = 0;
  int round = 0;
  auto operator<=>(const Move&) const = default;
};

Location move_source(const Protocol& p, const Move& m);
Location move_target(const Protocol& p, const Move& m);
std::string move_to_string(const Protocol& p, const Move& m);

struct ConcreteConfig {
  std::map<Location, int> counts;        // only positive counts
  std::map<RegisterRef, SymbolId> regs;  // only non-blank registers

  int process_count() const;
  int count(const Location& l) const;
  SymbolId value(const RegisterRef& r) const;  // blank if unset or round < 0
  friend bool operator==(const ConcreteConfig&, const ConcreteConfig&) = default;
};

struct ConcreteExecution {
  ConcreteConfig initial;
  std::vector<Move> schedule;
};

ConcreteConfig initial_concrete(const Protocol& p, int n);

bool move_enabled(const Protocol& p, const ConcreteConfig& c, const Move& m);
// Moves enabled in c whose target round is at most round_cap, in a fixed order.
std::vector<Move> enabled_moves(const Protocol& p, const ConcreteConfig& c, int round_cap = INT_MAX);
void apply_move_in_place(const Protocol& p, ConcreteConfig& c, const Move& m);
ConcreteConfig apply_move(const Protocol& p, const ConcreteConfig& c, const Move& m);

// Configurations gamma_0 .. gamma_l. Throws MoveNotEnabled on a bad schedule.
std::vector<ConcreteConfig> replay(const Protocol& p, const ConcreteExecution& e);
ConcreteConfig final_config(const Protocol& p, const ConcreteExecution& e);

// Adds n copies of `target` (which must be in the final support) to the final
// configuration by letting n extra processes mimic an existing one.
ConcreteExecution copycat_extend(const Protocol& p, const ConcreteExecution& e,
                                 const Location& target, int n);

// Extends e so that its last configuration holds again the value register r had
// right after step `at` (default: right after its first write). Adds one
// process and one final write.
ConcreteExecution rewrite_register(const Protocol& p, const ConcreteExecution& e,
                                   const RegisterRef& r, std::optional<std::size_t> at = {});

// Uniformly random enabled moves; stops early when nothing is enabled.
ConcreteExecution random_execution(const Protocol& p, int n, std::size_t steps,
                                   std::uint64_t seed, int round_cap = INT_MAX);

// Max over configurations of the number of rounds hosting a process that
// still moves later (processes identified by smallest-token matching).
int active_rounds(const Protocol& p, const ConcreteExecution& e);

std::string format_trace(const Protocol& p, const ConcreteExecution& e);

struct ConcreteSearchResult {
  std::optional<ConcreteExecution> witness;  // shortest execution covering a target
  std::size_t explored = 0;
  bool exhausted = false;  // false when the node budget stopped the search
};

// Breadth-first search over all executions with n processes whose rounds stay
// within round_cap, looking for a configuration covering one of `targets`.
ConcreteSearchResult concrete_search(const Protocol& p, int n, int round_cap,
                                     const StateSet& targets, std::size_t node_budget = 20'000'000);

}  // namespace rbr
