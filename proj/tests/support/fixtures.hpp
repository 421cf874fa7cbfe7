#pragma once

#include "rbr/rbr.hpp"

namespace rbr::testing {

// Transition indices of gen_fig1().
enum Fig1 : std::size_t {
  kLoop,       // q0 -incr-> q0
  kWriteA0,    // q0 -write a-> q1
  kIncr02,     // q0 -incr-> q2
  kWriteA2,    // q2 -write a-> q3
  kReadBlank,  // q3 -read[-1] _-> q4
  kReadA,      // q2 -read[-1] a-> q5
  kReadCur,    // q5 -read[0] _-> q6
  kWriteB,     // q4 -write b-> q4
  kReadB,      // q6 -read[0] b-> qE
};

// rho1 covers (q4,1) with one process, rho2 covers (q6,1) with two.
inline ConcreteExecution fig1_rho1(const Protocol& p) {
  return {initial_concrete(p, 1), {{kIncr02, 0}, {kWriteA2, 1}, {kReadBlank, 1}}};
}
inline ConcreteExecution fig1_rho2(const Protocol& p) {
  return {initial_concrete(p, 2), {{kWriteA0, 0}, {kIncr02, 0}, {kReadA, 1}, {kReadCur, 1}}};
}
inline AbstractExecution fig1_xi1() { return {{{kIncr02, 0}, {kWriteA2, 1}, {kReadBlank, 1}}}; }
inline AbstractExecution fig1_xi2() { return {{{kWriteA0, 0}, {kIncr02, 0}, {kReadA, 1}, {kReadCur, 1}}}; }

inline Location loc(const Protocol& p, const char* q, int k) { return {p.state(q), k}; }

}  // namespace rbr::testing
