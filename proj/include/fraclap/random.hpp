#pragma once

#include <cstdint>
#include <random>

#include "fraclap/grid.hpp"

namespace fraclap {

/// Seeded uniform(-1,1) field over the active points. The 64-bit engine
/// output is mapped to doubles explicitly so results are identical across
/// platforms and standard libraries.
inline Field random_field(GridPtr grid, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    Field f = Field::zeros(std::move(grid));
    for (auto& v : f.values()) {
        const double u01 = static_cast<double>(eng() >> 11) * 0x1.0p-53;
        v = 2.0 * u01 - 1.0;
    }
    return f;
}

}  // namespace fraclap
