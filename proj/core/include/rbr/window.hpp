#pragma once

#include <cstdint>
#include <vector>

#include "rbr/protocol.hpp"

namespace rbr {

// F_r: registers of rounds [r - v, r] in first-write order.
using RegisterSeq = std::vector<RegisterRef>;

struct WindowRound {
  RegisterSeq F;
  std::vector<StateSet> S;  // S[i] for the prefix of length i, i = 0..|F|
};

// Search state after processing round `round`: the data of the last
// max(v, 1) rounds, newest first. Rounds below 0 are simply absent.
struct WindowState {
  int round = 0;
  std::vector<WindowRound> rounds;

  const WindowRound& current() const { return rounds.front(); }
  // Everything reachable at `round` under the chosen F.
  const StateSet& full() const { return rounds.front().S.back(); }
};

// Longest prefix of `lower` (F_r) agreeing with the first `len` entries of
// `upper` (F_{r+1}) on rounds [r + 1 - v, r]; returned as a length.
std::size_t synchronise(const RegisterSeq& lower, const RegisterSeq& upper, std::size_t len, int r, int v);

// All F_{k+1} extending F_k: drop round k - v, insert up to d distinct
// round-(k+1) registers anywhere. Deterministic order.
std::vector<RegisterSeq> next_sequences(const RegisterSeq& Fk, int k, int v, int d);
// All ordered selections of distinct round-0 registers.
std::vector<RegisterSeq> initial_sequences(int d);

// Precompiled transition tables for window computations.
class WindowModel {
 public:
  explicit WindowModel(const Protocol& p);

  const Protocol& protocol() const { return *p_; }
  std::vector<WindowState> initial_states() const;
  std::vector<WindowState> successors(const WindowState& w) const;
  // The state for one given choice of F at round prev.round + 1 (or round 0
  // when prev is null); nullopt when a first write in F is not enabled.
  std::optional<WindowState> step(const WindowState* prev, const RegisterSeq& F) const;

 private:
  struct Edge {
    StateId source;
    StateId target;
    ActionKind kind;
    int offset;
    int reg;
    SymbolId symbol;
  };
  bool writer_pair(const StateSet& s, int reg, SymbolId x) const;

  const Protocol* p_;
  std::vector<Edge> edges_;
  // writers_[reg * |D| + x] = (q1, q2) pairs of write(reg, x) transitions
  std::vector<std::vector<std::pair<StateId, StateId>>> writers_;
};

// Canonical encoding: boundary min(k, v+1), then per stored round its F with
// rounds relative to k and all S sets.
using WindowKey = std::vector<std::uint64_t>;
WindowKey canonical_key(const WindowState& w, int v);

struct WindowKeyHash {
  std::size_t operator()(const WindowKey& k) const;
};

}  // namespace rbr
