#pragma once

// FFTW planner calls are not thread-safe; executions on distinct buffers are.
// Every plan in this project is created under this lock and executed through
// the new-array interface on per-call scratch.

#include <fftw3.h>

#include <mutex>

namespace fraclap::detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace fraclap::detail
