#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rbr/abstract.hpp"

namespace rbr {

// First-write order: registers in the order of their first write.
using Fwo = std::vector<RegisterRef>;

Fwo fwo_of(const Protocol& p, const AbstractExecution& x);

// Entries with rounds in [max(0, k - v), k], order kept.
Fwo window_projection(const Fwo& w, int k, int v);

// Position i may be swapped when round(w[i]) > round(w[i+1]) + v.
bool swappable(const Fwo& w, std::size_t i, int v);
Fwo swap_at(const Fwo& w, std::size_t i, int v);
bool swap_proof(const Fwo& w, int v);
// Leftmost swaps until none applies. Every maximal swap sequence ends here.
Fwo swap_normalize(Fwo w, int v);

// Execution whose fwo is fwo(x) with positions i and i+1 exchanged and whose
// final configuration is unchanged. Requires swappable(fwo(x), i, v).
AbstractExecution swap_execution(const Protocol& p, const AbstractExecution& x, std::size_t i);
// Repeats swap_execution at the leftmost swappable position.
AbstractExecution swap_normalize_execution(const Protocol& p, const AbstractExecution& x);

// Interleaves two executions with the same fwo; the result reaches the union
// of both final configurations.
AbstractExecution combine_same_fwo(const Protocol& p, const AbstractExecution& a, const AbstractExecution& b);

class ProjectionMismatch : public std::invalid_argument {
 public:
  explicit ProjectionMismatch(int round)
      : std::invalid_argument("window projections differ at round " + std::to_string(round)), round_(round) {}
  int round() const { return round_; }

 private:
  int round_;
};

// Same as combine_same_fwo for executions whose window projections agree for
// every round; swap-normalises both first. Throws ProjectionMismatch.
AbstractExecution combine_same_projections(const Protocol& p, const AbstractExecution& a,
                                           const AbstractExecution& b);

std::string fwo_to_string(const Fwo& w);
Fwo parse_fwo(std::string_view text);

}  // namespace rbr
