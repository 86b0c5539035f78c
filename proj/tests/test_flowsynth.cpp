#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "cineloop/error.hpp"
#include "cineloop/flowsynth.hpp"
#include "doctest.h"
#include "oracles/oracles.hpp"

using namespace cineloop;

TEST_CASE("generators") {
  CHECK(constant_flow(4, 4, 1, 0) == FlowField(4, 4, Vec2{1, 0}));
  CHECK(constant_flow(4, 4, 0, 0) == FlowField(4, 4));
  const DisplacementField d = integrate(constant_flow(6, 6, 0.5, -1.5), 4);
  CHECK(d.at(2, 2) == Vec2{2.0f, -6.0f});

  const FlowField rot = rotation_flow(9, 9, 4, 4, 0.1);
  CHECK(rot.at(4, 4) == Vec2{0, 0});
  CHECK(rot.at(5, 4).u == 0.0f);
  CHECK(rot.at(5, 4).v == doctest::Approx(0.1));
  CHECK(rotation_flow(9, 9, 4, 4, 0.0) == FlowField(9, 9));

  const FlowField rad = radial_flow(9, 9, 4, 4, 0.5);
  CHECK(rad.at(4, 4) == Vec2{0, 0});
  CHECK(rad.at(6, 3) == Vec2{1.0f, -0.5f});
  CHECK(radial_flow(9, 9, 4, 4, 0.0) == FlowField(9, 9));

  for (const FlowField& f : {rot, rad}) CHECK(f.all_finite());
}

TEST_CASE(".flo byte fixture") {
  // tag 202021.25 = 0x49524550 ("PIEH"), width 1, height 1, then (1.5, -2.0).
  const std::vector<std::uint8_t> bytes = {'P', 'I', 'E', 'H', 1, 0, 0, 0, 1, 0, 0, 0,
                                           0x00, 0x00, 0xc0, 0x3f, 0x00, 0x00, 0x00, 0xc0};
  const FlowField f = decode_flo(bytes);
  CHECK(f.size() == Size{1, 1});
  CHECK(f.at(0, 0) == Vec2{1.5f, -2.0f});
  CHECK(encode_flo(f) == bytes);
}

TEST_CASE(".flo errors") {
  std::vector<std::uint8_t> bytes = {0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK_THROWS_WITH_AS(decode_flo(bytes), "invalid .flo magic", Error);
  bytes = encode_flo(FlowField(3, 2));
  bytes.resize(bytes.size() - 1);
  CHECK_THROWS_AS(decode_flo(bytes), Error);
  bytes = encode_flo(FlowField(3, 2));
  bytes[4] = 0;  // width 0
  CHECK_THROWS_AS(decode_flo(bytes), Error);
  CHECK_THROWS_AS(decode_flo({'P', 'I', 'E'}), Error);
  CHECK_THROWS_AS(read_flo("/nonexistent/path.flo"), Error);
}

TEST_CASE(".flo unknown sentinel maps to zero") {
  FlowField f(2, 1, Vec2{0.25f, 0.5f});
  f.set(1, 0, {1.7e9f, 0.5f});
  std::size_t unknown = 0;
  const FlowField back = decode_flo(encode_flo(f), &unknown);
  CHECK(unknown == 1);
  CHECK(back.at(1, 0) == Vec2{0.0f, 0.5f});
  CHECK(back.at(0, 0) == Vec2{0.25f, 0.5f});
}

TEST_CASE(".flo file round trip is bit-exact") {
  std::mt19937 rng(4);
  const auto path = std::filesystem::temp_directory_path() / "cineloop_roundtrip.flo";
  for (int i = 0; i < 10; ++i) {
    const FlowField f = oracle::random_flow(rng, 3 + i, 7, 50.0);
    write_flo(path, f);
    const FlowField back = read_flo(path);
    CHECK(std::memcmp(back.data().data(), f.data().data(), f.data().size_bytes()) == 0);
    CHECK(back.size() == f.size());
  }
  std::filesystem::remove(path);
}

TEST_CASE("flow_to_color") {
  const auto zero = flow_to_color(FlowField(4, 3));
  for (auto v : zero) CHECK(v == 255);
  // Pure rightward motion at full magnitude maps to the wheel's red-ish end,
  // leftward to the cyan-ish end.
  FlowField f(2, 1);
  f.set(0, 0, {1, 0});
  f.set(1, 0, {-1, 0});
  const auto rgb = flow_to_color(f);
  CHECK(rgb[0] > rgb[2]);
  CHECK(rgb[5] > rgb[3]);
}
