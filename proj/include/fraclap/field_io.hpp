#pragma once

#include <string>

#include "fraclap/grid.hpp"

namespace fraclap {

/// CSV dump with header j1[,j2[,j3]],x1[,x2[,x3]],value, one active point per
/// row (1-based lattice indices), full-precision scientific values.
void write_field_csv(const Field& f, const std::string& path);

/// Flat binary: one text header line
///   fraclap-field v1 <d> <m> <lo1> <hi1> [... per axis] <n_active>
/// followed by n_active little-endian doubles in lexicographic active order.
void write_field_binary(const Field& f, const std::string& path);

/// Read a binary field dump onto the provided grid; validates d, m, box and
/// active count against the header.
Field read_field_binary(const std::string& path, GridPtr grid);

}  // namespace fraclap
