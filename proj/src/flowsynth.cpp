#include "cineloop/flowsynth.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>

#include "cineloop/error.hpp"

namespace cineloop {

namespace {

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  static_assert(sizeof(T) == 4);
  std::uint32_t bits;
  std::memcpy(&bits, &value, 4);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

template <typename T>
T get_le(const std::uint8_t* p) {
  static_assert(sizeof(T) == 4);
  const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
                             (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
  T value;
  std::memcpy(&value, &bits, 4);
  return value;
}

}  // namespace

FlowField constant_flow(int width, int height, double u, double v) {
  return FlowField(width, height, Vec2{static_cast<float>(u), static_cast<float>(v)});
}

FlowField rotation_flow(int width, int height, double cx, double cy, double omega) {
  FlowField out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out.set(x, y, {static_cast<float>(-omega * (y - cy)), static_cast<float>(omega * (x - cx))});
    }
  }
  return out;
}

FlowField radial_flow(int width, int height, double cx, double cy, double k) {
  FlowField out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out.set(x, y, {static_cast<float>(k * (x - cx)), static_cast<float>(k * (y - cy))});
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_flo(const VectorGrid& field) {
  std::vector<std::uint8_t> out;
  out.reserve(12 + field.data().size() * 4);
  put_le(out, kFloMagic);
  put_le(out, static_cast<std::int32_t>(field.width()));
  put_le(out, static_cast<std::int32_t>(field.height()));
  for (float v : field.data()) put_le(out, v);
  return out;
}

FlowField decode_flo(const std::vector<std::uint8_t>& bytes, std::size_t* unknown_count) {
  if (bytes.size() < 12) throw Error("truncated .flo header");
  if (get_le<float>(bytes.data()) != kFloMagic) throw Error("invalid .flo magic");
  const std::int32_t width = get_le<std::int32_t>(bytes.data() + 4);
  const std::int32_t height = get_le<std::int32_t>(bytes.data() + 8);
  if (width <= 0 || height <= 0) throw Error("nonpositive .flo dimensions");
  const std::uint64_t expected = 12 + static_cast<std::uint64_t>(width) * static_cast<std::uint64_t>(height) * 8;
  if (bytes.size() < expected) throw Error("truncated .flo data");

  std::vector<float> data(static_cast<std::size_t>(width) * height * 2);
  std::size_t unknown = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    float v = get_le<float>(bytes.data() + 12 + 4 * i);
    if (std::isnan(v)) throw Error("non-finite value in .flo data");
    if (std::abs(v) > kFloUnknownThreshold) {
      v = 0.0f;
      ++unknown;
    }
    data[i] = v;
  }
  if (unknown_count) *unknown_count = unknown;
  return FlowField(width, height, std::move(data));
}

FlowField read_flo(const std::filesystem::path& path, std::size_t* unknown_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_flo(bytes, unknown_count);
}

void write_flo(const std::filesystem::path& path, const VectorGrid& field) {
  const std::vector<std::uint8_t> bytes = encode_flo(field);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing " + path.string());
}

namespace {

// Middlebury color wheel: RY, YG, GC, CB, BM, MR segments.
std::vector<std::array<double, 3>> make_colorwheel() {
  constexpr int kSegments[6] = {15, 6, 4, 11, 13, 6};
  std::vector<std::array<double, 3>> wheel;
  for (int i = 0; i < kSegments[0]; ++i) wheel.push_back({255, 255.0 * i / kSegments[0], 0});
  for (int i = 0; i < kSegments[1]; ++i) wheel.push_back({255 - 255.0 * i / kSegments[1], 255, 0});
  for (int i = 0; i < kSegments[2]; ++i) wheel.push_back({0, 255, 255.0 * i / kSegments[2]});
  for (int i = 0; i < kSegments[3]; ++i) wheel.push_back({0, 255 - 255.0 * i / kSegments[3], 255});
  for (int i = 0; i < kSegments[4]; ++i) wheel.push_back({255.0 * i / kSegments[4], 0, 255});
  for (int i = 0; i < kSegments[5]; ++i) wheel.push_back({255, 0, 255 - 255.0 * i / kSegments[5]});
  return wheel;
}

}  // namespace

std::vector<std::uint8_t> flow_to_color(const VectorGrid& field) {
  static const auto wheel = make_colorwheel();
  const int ncols = static_cast<int>(wheel.size());
  double max_rad = 0.0;
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      const Vec2 f = field.at(x, y);
      max_rad = std::max(max_rad, std::hypot(static_cast<double>(f.u), static_cast<double>(f.v)));
    }
  }
  std::vector<std::uint8_t> rgb(field.cell_count() * 3);
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      const Vec2 f = field.at(x, y);
      const double u = max_rad > 0 ? f.u / max_rad : 0.0;
      const double v = max_rad > 0 ? f.v / max_rad : 0.0;
      const double rad = std::hypot(u, v);
      const double angle = std::atan2(-v, -u) / std::numbers::pi;
      const double fk = (angle + 1.0) / 2.0 * (ncols - 1);
      const int k0 = static_cast<int>(std::floor(fk));
      const int k1 = (k0 + 1) % ncols;
      const double frac = fk - k0;
      for (int c = 0; c < 3; ++c) {
        const double col0 = wheel[k0][c] / 255.0;
        const double col1 = wheel[k1][c] / 255.0;
        double col = (1 - frac) * col0 + frac * col1;
        col = rad <= 1 ? 1 - rad * (1 - col) : col * 0.75;
        rgb[(static_cast<std::size_t>(y) * field.width() + x) * 3 + c] =
            static_cast<std::uint8_t>(std::lround(255.0 * col));
      }
    }
  }
  return rgb;
}

}  // namespace cineloop
