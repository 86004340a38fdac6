#pragma once

// Binary field snapshots. Layout (little-endian, no padding):
//   "CHFS" | u32 version = 1 | u32 dim | u32 cells[3] | f64 lengths[3] | f64 t
//   | f64 values[cells product], first axis fastest.
// Unused axes are written with one cell.

#include <cstdint>
#include <string>
#include <vector>

#include "chemoflow/grid.hpp"

namespace chemoflow {

inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 56;

struct Snapshot {
    Field field;
    double t = 0.0;
};

std::vector<std::uint8_t> encode_snapshot(const Field& field, double t);
Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes);

void write_snapshot(const Field& field, double t, const std::string& path);
Snapshot read_snapshot(const std::string& path);

}  // namespace chemoflow
