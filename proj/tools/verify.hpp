#pragma once

#include <cstdint>
#include <ostream>

#include "randfib/simd.hpp"

namespace randfib::tools {

/// Runs the invariant suite at desk scale and writes a CSV report
/// (check,status,detail) to `os`. Returns the number of failed checks.
/// Output bodies are byte-identical for a fixed seed regardless of thread
/// count or SIMD backend.
int run_verify(std::uint64_t seed, int threads, simd::Backend backend,
               std::ostream& os);

} // namespace randfib::tools
