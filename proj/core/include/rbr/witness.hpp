#pragma once

#include <string>
#include <string_view>

#include "rbr/verifier.hpp"

namespace rbr {

// "UNSAFE round=<k>" followed by one "F[<r>] = r<round>.<id> ..." line per round.
std::string format_witness(const WitnessFamily& w);
WitnessFamily parse_witness(std::string_view text);

struct ReplayResult {
  bool confirmed = false;
  std::string reason;  // why the family was refuted
};

// Re-runs the round-by-round saturation on the given family with the full
// history kept, independently of the window search, and checks that some
// target state is reached at the last round.
ReplayResult replay_witness(const Protocol& p, const StateSet& targets, const WitnessFamily& w);

}  // namespace rbr
