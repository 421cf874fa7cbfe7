#pragma once

#include <string>

#include "rbr/protocol.hpp"

namespace rbr {

// Reference protocol families. All outputs are valid but may carry
// multi-action labels and guards; run desugar() before analysing them.

// Two-round incompatibility example: d=1, v=1, alphabet {a, b}, error qE.
Protocol gen_fig1();

// Binary counter with m bits (v=0, d=1); qE is coverable exactly at round
// 2^(m-1). States q0, qtick, q<i>_0, q<i>_1 (i < m), q<m>_0, qE.
Protocol gen_counter(int m);
// Same bits, but every tick process writes move_1 once and then sinks.
Protocol gen_cutoff(int m);
// Same bits, v=1, with a tick cycle that forces many active rounds.
Protocol gen_drift(int m);

// Aspnes' noisy consensus round (d=2, v=1). init_pref is "A0" or "A1";
// the error state is the result for the other preference.
Protocol gen_aspnes(const std::string& init_pref);
// Agreement: init q0 reaching both A0 and A1, error qF covered iff R0 and R1
// are covered in one execution.
Protocol gen_aspnes_agreement();

}  // namespace rbr
