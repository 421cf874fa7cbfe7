#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbr/window.hpp"

namespace rbr {

enum class Verdict { Safe, Unsafe, Inconclusive };
std::string to_string(Verdict v);

// F_0 .. F_k with absolute rounds, proving that the target is covered at k.
struct WitnessFamily {
  int round = 0;
  std::vector<RegisterSeq> F;
};

struct VerifyOptions {
  std::optional<int> max_rounds;
  std::size_t node_budget = 0;  // 0: default_node_budget()
  unsigned jobs = 1;
};

// RBR_NODE_BUDGET if set, else 20 million.
std::size_t default_node_budget();

struct VerifyResult {
  Verdict verdict = Verdict::Safe;
  std::optional<int> round;  // minimal covering round when unsafe
  std::optional<WitnessFamily> witness;
  std::size_t nodes = 0;   // distinct window states visited
  int depth = 0;           // deepest round explored
  double seconds = 0.0;
};

// Decides whether some state of `targets` is coverable. p must be desugared.
VerifyResult verify(const Protocol& p, const StateSet& targets, const VerifyOptions& opt = {});
VerifyResult verify(const Protocol& p, StateId target, const VerifyOptions& opt = {});

}  // namespace rbr
