#pragma once

namespace symflat {

// Thread count for the OpenMP kernels; results never depend on it.
void set_threads(int n);
int max_threads();

}  // namespace symflat
