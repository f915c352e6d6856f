#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "undulant/field.hpp"
#include "undulant/operators.hpp"

namespace undulant {

/// Raw little-endian field snapshot.
///
/// Header (32 bytes):
///   0  char[4]  magic "UNDU"
///   4  uint32   version (1)
///   8  uint32   kind (0 = surface, 1 = radial)
///  12  uint32   nx
///  16  uint32   ntheta (1 for radial)
///  20  uint32   number of components
///  24  float64  time
/// Payload: components one after another, each nx*ntheta float64 in row-major order
/// (x index outer, theta index inner).
struct Snapshot {
    double time = 0.0;
    std::vector<Field> components;
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
void write_snapshot(const std::filesystem::path& path, const State& state, double time);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace undulant
