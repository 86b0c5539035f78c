#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "cineloop/field.hpp"

namespace cineloop {

FlowField constant_flow(int width, int height, double u, double v);

/// Rigid rotation about (cx, cy): omega * (-(y - cy), x - cx).
FlowField rotation_flow(int width, int height, double cx, double cy, double omega);

/// Radial expansion (k > 0) or contraction (k < 0): k * (x - cx, y - cy).
FlowField radial_flow(int width, int height, double cx, double cy, double k);

/// Middlebury .flo tag (the bytes "PIEH").
inline constexpr float kFloMagic = 202021.25f;
/// Values above this magnitude mark unknown flow in .flo files.
inline constexpr float kFloUnknownThreshold = 1e9f;

/// Reads a little-endian Middlebury .flo file. Unknown-flow sentinels are
/// mapped to 0; their count is stored in `unknown_count` when given.
FlowField read_flo(const std::filesystem::path& path, std::size_t* unknown_count = nullptr);
void write_flo(const std::filesystem::path& path, const VectorGrid& field);

/// Byte-level encode/decode shared by the file functions.
std::vector<std::uint8_t> encode_flo(const VectorGrid& field);
FlowField decode_flo(const std::vector<std::uint8_t>& bytes, std::size_t* unknown_count = nullptr);

/// Middlebury color-wheel visualization as interleaved RGB8. Magnitudes are
/// normalized by the field's maximum; zero motion is white.
std::vector<std::uint8_t> flow_to_color(const VectorGrid& field);

}  // namespace cineloop
