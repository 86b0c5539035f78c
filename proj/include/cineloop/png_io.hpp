#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cineloop/mask.hpp"
#include "cineloop/raster.hpp"

namespace cineloop {

/// 8-bit value for a float in [0, 1]: round(clamp(v) * 255).
std::uint8_t quantize_unit(float value);

/// Interleaved RGB8 bytes of an image.
std::vector<std::uint8_t> to_rgb8(const ImageRGB& image);

/// Loads any PNG as 8-bit RGB scaled to [0, 1].
ImageRGB read_png_rgb(const std::filesystem::path& path);
void write_png_rgb(const std::filesystem::path& path, const ImageRGB& image);
void write_png_rgb8(const std::filesystem::path& path, int width, int height, const std::vector<std::uint8_t>& rgb);

/// Masks are 8-bit single-channel PNGs holding only 0 (static) or 255 (dynamic).
Mask read_png_mask(const std::filesystem::path& path);
void write_png_mask(const std::filesystem::path& path, const Mask& mask);

}  // namespace cineloop
