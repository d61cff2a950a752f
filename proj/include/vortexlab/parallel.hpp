#pragma once

namespace vortexlab::parallel {

/// Width used by the data-parallel kernels. Defaults to the VORTEXLAB_THREADS
/// environment variable when set, otherwise the OpenMP maximum.
int thread_count();

/// Overrides the width for the rest of the process; n <= 0 restores the default.
void set_thread_count(int n);

}  // namespace vortexlab::parallel
