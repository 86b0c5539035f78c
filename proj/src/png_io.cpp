#include "cineloop/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <string>

#include "cineloop/error.hpp"

namespace cineloop {

namespace {

struct PngImage {
  png_image image;

  PngImage() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

std::vector<std::uint8_t> read_png(const std::filesystem::path& path, png_uint_32 format, int& width, int& height) {
  PngImage png;
  if (!png_image_begin_read_from_file(&png.image, path.string().c_str())) {
    throw Error("cannot read PNG " + path.string() + ": " + png.image.message);
  }
  png.image.format = format;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, buffer.data(), 0, nullptr)) {
    throw Error("cannot decode PNG " + path.string() + ": " + png.image.message);
  }
  width = static_cast<int>(png.image.width);
  height = static_cast<int>(png.image.height);
  return buffer;
}

void write_png(const std::filesystem::path& path, png_uint_32 format, int width, int height, const std::uint8_t* data) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(width);
  png.image.height = static_cast<png_uint_32>(height);
  png.image.format = format;
  if (!png_image_write_to_file(&png.image, path.string().c_str(), 0, data, 0, nullptr)) {
    throw Error("cannot write PNG " + path.string() + ": " + png.image.message);
  }
}

}  // namespace

std::uint8_t quantize_unit(float value) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(value, 0.0f, 1.0f) * 255.0f));
}

std::vector<std::uint8_t> to_rgb8(const ImageRGB& image) {
  std::vector<std::uint8_t> out(image.data().size());
  std::transform(image.data().begin(), image.data().end(), out.begin(), quantize_unit);
  return out;
}

ImageRGB read_png_rgb(const std::filesystem::path& path) {
  int width = 0;
  int height = 0;
  const auto bytes = read_png(path, PNG_FORMAT_RGB, width, height);
  ImageRGB image(width, height);
  auto data = image.data();
  for (std::size_t i = 0; i < bytes.size(); ++i) data[i] = bytes[i] / 255.0f;
  return image;
}

void write_png_rgb8(const std::filesystem::path& path, int width, int height, const std::vector<std::uint8_t>& rgb) {
  if (rgb.size() != static_cast<std::size_t>(width) * height * 3) throw Error("RGB buffer size mismatch");
  write_png(path, PNG_FORMAT_RGB, width, height, rgb.data());
}

void write_png_rgb(const std::filesystem::path& path, const ImageRGB& image) {
  write_png_rgb8(path, image.width(), image.height(), to_rgb8(image));
}

Mask read_png_mask(const std::filesystem::path& path) {
  int width = 0;
  int height = 0;
  auto bytes = read_png(path, PNG_FORMAT_GRAY, width, height);
  for (auto& b : bytes) {
    if (b == 255) {
      b = 1;
    } else if (b != 0) {
      throw Error("mask " + path.string() + " holds value " + std::to_string(b) + "; only 0 and 255 are allowed");
    }
  }
  return Mask(width, height, std::move(bytes));
}

void write_png_mask(const std::filesystem::path& path, const Mask& mask) {
  std::vector<std::uint8_t> bytes(mask.cells().begin(), mask.cells().end());
  for (auto& b : bytes) b = b ? 255 : 0;
  write_png(path, PNG_FORMAT_GRAY, mask.width(), mask.height(), bytes.data());
}

}  // namespace cineloop
