#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rbr/concrete.hpp"
#include "rbr/protocol.hpp"

namespace rbr {

struct AbstractConfig {
  std::set<Location> locs;
  std::set<RegisterRef> written;
  friend bool operator==(const AbstractConfig&, const AbstractConfig&) = default;
};

// Abstract executions always start in the initial abstract configuration.
struct AbstractExecution {
  std::vector<Move> schedule;
};

AbstractConfig initial_abstract(const Protocol& p);

// Name of the violated rule, or nullopt when m is enabled in s.
std::optional<std::string> abstract_rejection(const Protocol& p, const AbstractConfig& s, const Move& m);
void abstract_step_in_place(const Protocol& p, AbstractConfig& s, const Move& m);
AbstractConfig abstract_step(const Protocol& p, const AbstractConfig& s, const Move& m);
std::vector<AbstractConfig> abstract_replay(const Protocol& p, const AbstractExecution& x);
AbstractConfig abstract_final(const Protocol& p, const AbstractExecution& x);

AbstractExecution lift(const Protocol& p, const ConcreteExecution& e);
// A concrete execution with at most 2|x|+1 processes whose final support and
// non-blank registers equal the final abstract locations and written set.
ConcreteExecution concretize(const Protocol& p, const AbstractExecution& x);

// Keeps only the moves needed to produce `target`; the result is still valid.
AbstractExecution slice_execution(const Protocol& p, const AbstractExecution& x, const Location& target);

struct AbstractReach {
  std::set<Location> coverable;               // every location with round <= K
  std::optional<AbstractExecution> witness;   // covers a target, when asked for
  std::optional<Location> covered;            // the target location reached
  std::size_t explored = 0;
};

// Exact bounded coverability: the locations with round <= K reachable by some
// abstract execution all of whose locations have round <= K. With targets set,
// stops at the first covering configuration (fewest first writes) and returns
// a sliced witness.
AbstractReach bounded_abstract_reach(const Protocol& p, int K, const std::optional<StateSet>& targets = {},
                                     std::size_t node_budget = 5'000'000);

bool bounded_compatible(const Protocol& p, const Location& a, const Location& b, int K,
                        std::size_t node_budget = 5'000'000);

// Per-round fixpoint for protocols with one register per round and
// visibility 0.
struct SaturationRound {
  int round = 0;
  StateSet states;
  std::vector<SymbolId> writable;
};

struct SaturationReach {
  std::vector<SaturationRound> rounds;
  std::optional<int> covered_round;
};

SaturationReach round_saturation_reach(const Protocol& p, int K, const std::optional<StateSet>& targets = {});
// "round <k>: states = {...}; writable = {...}" lines, states under their
// original names.
std::string format_saturation(const Protocol& p, const SaturationReach& r);

}  // namespace rbr
