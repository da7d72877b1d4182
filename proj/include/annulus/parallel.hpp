#pragma once

namespace annulus {

// Selects between the OpenMP kernels and their serial reference versions.
// Both produce bit-identical results; the serial path exists for testing and
// benchmarking.
enum class Execution { serial, parallel };

// Applies ANNULUS_EULER_THREADS (0 or unset = OpenMP default). Safe to call
// more than once; returns the thread count now in effect.
int configure_threads_from_env();

int max_threads();

}  // namespace annulus
