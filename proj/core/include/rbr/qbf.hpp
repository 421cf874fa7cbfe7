#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "rbr/protocol.hpp"

namespace rbr {

struct Literal {
  int var = 0;
  bool negated = false;
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

// Prenex 3-CNF with quantifiers fixed by parity: x_i is existential when i
// is even and universal when i is odd. x_{n-1} is outermost.
struct QbfFormula {
  int var_count = 0;
  std::vector<Clause> clauses;
};

// bits[i] is the value of x_i.
using Valuation = std::vector<bool>;

enum class Flag { Yes, No, Wait };

struct NextResult {
  Valuation next;
  std::vector<Flag> b;  // b_0 .. b_n
};

bool satisfies(const QbfFormula& f, const Valuation& nu);
NextResult qbf_next(const QbfFormula& f, const Valuation& nu);
// Game-tree evaluation; at most 20 variables.
bool qbf_validity_brute(const QbfFormula& f);

// QDIMACS subset: "p cnf V C", one quantifier per variable alternating from
// an outer "a" to an inner "e", clauses of exactly three literals.
QbfFormula parse_qdimacs(std::string_view text);
std::string format_qdimacs(const QbfFormula& f);

// The reduction protocol (v=0, d=1): error qF is coverable iff f is valid.
// Requires an even, positive number of variables.
Protocol gen_qbf(const QbfFormula& f);

QbfFormula random_qbf(std::mt19937_64& rng, int var_count, int clause_count);

std::string flag_name(Flag f);

}  // namespace rbr
