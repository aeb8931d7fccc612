#include "discrepal/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace discrepal {

#ifdef _OPENMP

int max_threads() { return omp_get_max_threads(); }

void set_max_threads(int n) {
  if (n >= 1) omp_set_num_threads(n);
}

#else

int max_threads() { return 1; }

void set_max_threads(int) {}

#endif

}  // namespace discrepal
