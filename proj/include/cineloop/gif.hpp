#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cineloop/raster.hpp"

namespace cineloop {

/// Fixed 6x7x6 RGB palette (252 entries, padded to 256) shared by all frames.
std::uint8_t palette_index(std::uint8_t r, std::uint8_t g, std::uint8_t b);
std::vector<std::uint8_t> gif_palette();

/// GIF-variant LZW with variable code width (min code size 8), packed LSB first.
std::vector<std::uint8_t> lzw_encode(std::span<const std::uint8_t> indices);

/// Infinitely looping animated GIF; `delay_cs` is the per-frame delay in
/// hundredths of a second. Output depends only on the frame content.
std::vector<std::uint8_t> encode_gif(std::span<const ImageRGB> frames, int delay_cs = 4);
void write_gif(const std::filesystem::path& path, std::span<const ImageRGB> frames, int delay_cs = 4);

}  // namespace cineloop
