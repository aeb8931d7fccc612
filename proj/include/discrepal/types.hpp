#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace discrepal {

using IndexList = std::vector<std::size_t>;

// All stochastic steps draw from this engine; seeding it fixes every result.
using Rng = std::mt19937_64;

}  // namespace discrepal
