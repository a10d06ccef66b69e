#pragma once

#include <cstdint>
#include <ostream>

namespace doublemat {

// Runs the full acceptance suite (property checks plus fixed counterexample
// instances), printing one PASS/FAIL line per criterion. Returns true
// iff every criterion passed. Deterministic for a fixed seed.
bool run_acceptance(std::ostream& out, uint64_t seed = 20240817);

}  // namespace doublemat
