#pragma once

// Thin wrapper so callers can size the OpenMP team without including omp.h.

namespace discrepal {

// omp_get_max_threads(), or 1 without OpenMP.
int max_threads();

// Bounds the worker count for candidate scoring and Gram construction.
// Values < 1 are ignored.
void set_max_threads(int n);

}  // namespace discrepal
