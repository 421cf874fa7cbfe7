#pragma once

#include "rbr/protocol.hpp"

namespace rbr {

// Rewrites p into the guard-free single-action fragment.
//  - a transition with actions a1;...;an becomes a chain through n-1 fresh
//    states, the guard staying on the first link;
//  - if any guard remains, every state q is split into q@0 (no incr yet) and
//    q@+ (at least one incr). Guarded transitions leave only the matching copy.
// Copies and original states carry origin tags; fresh states carry none.
// Idempotent, and the identity on already-atomic protocols.
Protocol desugar(const Protocol& p);

}  // namespace rbr
