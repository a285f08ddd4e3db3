#pragma once

#include <cstdint>
#include <string>

#include "gsqg/dynamics.hpp"

namespace gsqg {

/// Binary checkpoint, little-endian regardless of host:
///   magic "GSQG1" (5 bytes), u32 version (= 1),
///   u32 n, f64 length, f64 shift, f64 t, u64 seed,
///   u32 descriptor length, descriptor bytes (JSON model descriptor),
///   payload: n*(n/2+1) complex coefficients as f64 (re, im) pairs in
///   stored row-major order (row = k1 index, column = k2 in {0..n/2}).
struct CheckpointMeta {
    std::string model_descriptor;
    std::uint64_t seed = 0;
};

void write_checkpoint(const SimulationState& state, const CheckpointMeta& meta, const std::string& path);

struct LoadedCheckpoint {
    SimulationState state;
    CheckpointMeta meta;
};

/// Throws std::runtime_error on tag/version mismatch or truncation.
LoadedCheckpoint read_checkpoint(const std::string& path);

}  // namespace gsqg
