#include "cineloop/gif.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <string>

#include "cineloop/error.hpp"
#include "cineloop/png_io.hpp"

namespace cineloop {

namespace {

constexpr int kRedLevels = 6;
constexpr int kGreenLevels = 7;
constexpr int kBlueLevels = 6;
constexpr int kMinCodeSize = 8;
constexpr int kMaxCode = 4095;

int level_of(std::uint8_t value, int levels) {
  return static_cast<int>(std::lround(value * (levels - 1) / 255.0));
}

std::uint8_t level_value(int level, int levels) {
  return static_cast<std::uint8_t>(std::lround(level * 255.0 / (levels - 1)));
}

class BitWriter {
 public:
  void write(unsigned code, int bits) {
    buffer_ |= static_cast<std::uint32_t>(code) << count_;
    count_ += bits;
    while (count_ >= 8) {
      bytes_.push_back(static_cast<std::uint8_t>(buffer_ & 0xff));
      buffer_ >>= 8;
      count_ -= 8;
    }
  }
  std::vector<std::uint8_t> finish() {
    if (count_ > 0) bytes_.push_back(static_cast<std::uint8_t>(buffer_ & 0xff));
    buffer_ = 0;
    count_ = 0;
    return std::move(bytes_);
  }

 private:
  std::uint32_t buffer_ = 0;
  int count_ = 0;
  std::vector<std::uint8_t> bytes_;
};

void put16(std::vector<std::uint8_t>& out, int v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
}

}  // namespace

std::uint8_t palette_index(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  return static_cast<std::uint8_t>(level_of(r, kRedLevels) * kGreenLevels * kBlueLevels +
                                   level_of(g, kGreenLevels) * kBlueLevels + level_of(b, kBlueLevels));
}

std::vector<std::uint8_t> gif_palette() {
  std::vector<std::uint8_t> palette(256 * 3, 0);
  for (int r = 0; r < kRedLevels; ++r) {
    for (int g = 0; g < kGreenLevels; ++g) {
      for (int b = 0; b < kBlueLevels; ++b) {
        const int i = (r * kGreenLevels + g) * kBlueLevels + b;
        palette[i * 3 + 0] = level_value(r, kRedLevels);
        palette[i * 3 + 1] = level_value(g, kGreenLevels);
        palette[i * 3 + 2] = level_value(b, kBlueLevels);
      }
    }
  }
  return palette;
}

std::vector<std::uint8_t> lzw_encode(std::span<const std::uint8_t> indices) {
  const unsigned clear_code = 1u << kMinCodeSize;
  const unsigned end_code = clear_code + 1;
  BitWriter writer;
  // Dictionary as a trie: child[code * 256 + byte] = next code (0 = absent).
  std::vector<std::uint16_t> child((kMaxCode + 1) * 256, 0);
  int code_size = kMinCodeSize + 1;
  unsigned max_code = end_code;

  writer.write(clear_code, code_size);
  if (indices.empty()) {
    writer.write(end_code, code_size);
    return writer.finish();
  }
  unsigned current = indices[0];
  for (std::size_t i = 1; i < indices.size(); ++i) {
    const std::uint8_t next = indices[i];
    const std::uint16_t found = child[current * 256 + next];
    if (found != 0) {
      current = found;
      continue;
    }
    writer.write(current, code_size);
    child[current * 256 + next] = static_cast<std::uint16_t>(++max_code);
    if (max_code >= (1u << code_size)) ++code_size;
    if (max_code == kMaxCode) {
      writer.write(clear_code, code_size);
      std::fill(child.begin(), child.end(), 0);
      code_size = kMinCodeSize + 1;
      max_code = end_code;
    }
    current = next;
  }
  writer.write(current, code_size);
  writer.write(end_code, code_size);
  return writer.finish();
}

std::vector<std::uint8_t> encode_gif(std::span<const ImageRGB> frames, int delay_cs) {
  if (frames.empty()) throw Error("GIF needs at least one frame");
  const int width = frames.front().width();
  const int height = frames.front().height();
  if (width > 0xffff || height > 0xffff) throw Error("GIF frame too large");

  std::vector<std::uint8_t> out = {'G', 'I', 'F', '8', '9', 'a'};
  put16(out, width);
  put16(out, height);
  out.push_back(0xf7);  // global color table, 8 bits, 256 entries
  out.push_back(0);     // background
  out.push_back(0);     // aspect
  const auto palette = gif_palette();
  out.insert(out.end(), palette.begin(), palette.end());

  // NETSCAPE2.0 application extension: loop forever.
  const std::array<std::uint8_t, 19> loop = {0x21, 0xff, 0x0b, 'N', 'E', 'T', 'S', 'C', 'A', 'P',
                                             'E',  '2',  '.',  '0', 0x03, 0x01, 0x00, 0x00, 0x00};
  out.insert(out.end(), loop.begin(), loop.end());

  for (const ImageRGB& frame : frames) {
    if (frame.width() != width || frame.height() != height) throw Error("GIF frames differ in size");
    out.insert(out.end(), {0x21, 0xf9, 0x04, 0x00});
    put16(out, delay_cs);
    out.push_back(0);
    out.push_back(0);

    out.push_back(0x2c);
    put16(out, 0);
    put16(out, 0);
    put16(out, width);
    put16(out, height);
    out.push_back(0);

    const auto rgb = to_rgb8(frame);
    std::vector<std::uint8_t> indices(frame.pixel_count());
    for (std::size_t i = 0; i < indices.size(); ++i) {
      indices[i] = palette_index(rgb[i * 3], rgb[i * 3 + 1], rgb[i * 3 + 2]);
    }
    out.push_back(kMinCodeSize);
    const auto data = lzw_encode(indices);
    for (std::size_t pos = 0; pos < data.size(); pos += 255) {
      const std::size_t n = std::min<std::size_t>(255, data.size() - pos);
      out.push_back(static_cast<std::uint8_t>(n));
      out.insert(out.end(), data.begin() + static_cast<std::ptrdiff_t>(pos),
                 data.begin() + static_cast<std::ptrdiff_t>(pos + n));
    }
    out.push_back(0);
  }
  out.push_back(0x3b);
  return out;
}

void write_gif(const std::filesystem::path& path, std::span<const ImageRGB> frames, int delay_cs) {
  const auto bytes = encode_gif(frames, delay_cs);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace cineloop
