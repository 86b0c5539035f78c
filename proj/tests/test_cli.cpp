#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "cineloop/field.hpp"
#include "cineloop/flowsynth.hpp"
#include "cineloop/png_io.hpp"
#include "doctest.h"

using namespace cineloop;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

fs::path work_dir() {
  const fs::path dir = fs::current_path() / "cli_work";
  fs::create_directories(dir);
  return dir;
}

Run run(const std::string& args) {
  const fs::path log = work_dir() / "stdout.txt";
  const std::string cmd = std::string(CINELOOP_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {raw, ss.str()};
}

std::string bytes_of(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string p(const fs::path& path) { return path.string(); }

}  // namespace

TEST_CASE("zero flow renders the input unchanged") {
  const fs::path dir = work_dir() / "zero";
  fs::remove_all(dir);
  REQUIRE(run("scene --kind demo --size 32 --out " + p(dir)).status == 0);
  const Run r = run("generate --image " + p(dir / "image.png") + " --mask " + p(dir / "mask.png") +
                    " --flow-preset constant:0,0 --flow-size 32 --frames 4 --levels 3 --out " + p(dir / "frames"));
  REQUIRE(r.status == 0);
  CHECK(r.out.find("frames: 5") != std::string::npos);
  const auto input = to_rgb8(read_png_rgb(dir / "image.png"));
  for (int t = 0; t <= 4; ++t) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%03d.png", t);
    CHECK(to_rgb8(read_png_rgb(dir / "frames" / name)) == input);
  }
}

TEST_CASE("generate writes N+1 frames whose ends coincide") {
  const fs::path dir = work_dir() / "loop";
  fs::remove_all(dir);
  REQUIRE(run("scene --kind translation --size 32 --out " + p(dir)).status == 0);
  const Run r = run("generate --image " + p(dir / "image.png") + " --mask " + p(dir / "mask.png") + " --flow " +
                    p(dir / "flow.flo") + " --frames 48 --levels 3 --out " + p(dir / "frames") + " --gif " +
                    p(dir / "loop.gif"));
  REQUIRE(r.status == 0);
  int count = 0;
  for (const auto& entry : fs::directory_iterator(dir / "frames")) count += entry.path().extension() == ".png";
  CHECK(count == 49);
  CHECK(bytes_of(dir / "frames" / "frame_000.png") == bytes_of(dir / "frames" / "frame_048.png"));
  CHECK(bytes_of(dir / "loop.gif").substr(0, 6) == "GIF89a");
}

TEST_CASE("flow synth, integrate, stats and viz") {
  const fs::path dir = work_dir() / "flow";
  fs::create_directories(dir);
  REQUIRE(run("flow synth --preset rotation:8,6,0.05 --width 16 --height 12 --out " + p(dir / "m.flo")).status == 0);
  REQUIRE(run("flow integrate --flo " + p(dir / "m.flo") + " --steps 5 --out " + p(dir / "d.flo")).status == 0);
  const FlowField from_cli = read_flo(dir / "d.flo");
  const DisplacementField in_process = integrate(read_flo(dir / "m.flo"), 5);
  CHECK(std::equal(from_cli.data().begin(), from_cli.data().end(), in_process.data().begin(), in_process.data().end()));

  REQUIRE(run("flow synth --preset constant:0.5,-0.25 --width 8 --height 8 --out " + p(dir / "c.flo")).status == 0);
  REQUIRE(run("flow integrate --flo " + p(dir / "c.flo") + " --steps 4 --out " + p(dir / "c4.flo")).status == 0);
  const Run stats = run("flow stats --flo " + p(dir / "c4.flo"));
  REQUIRE(stats.status == 0);
  CHECK(stats.out.find("size: 8x8") != std::string::npos);
  CHECK(stats.out.find("u: min 2 max 2 mean 2") != std::string::npos);
  CHECK(stats.out.find("v: min -1 max -1 mean -1") != std::string::npos);

  REQUIRE(run("flow synth --preset constant:0,0 --width 4 --height 4 --out " + p(dir / "z.flo")).status == 0);
  REQUIRE(run("flow viz --flo " + p(dir / "z.flo") + " --out " + p(dir / "z.png")).status == 0);
  const ImageRGB viz = read_png_rgb(dir / "z.png");
  for (float v : viz.data()) CHECK(v == 1.0f);
}

TEST_CASE("mask command removes small components and is idempotent") {
  const fs::path dir = work_dir() / "mask";
  fs::create_directories(dir);
  Mask m(100, 100);
  for (int y = 5; y < 15; ++y)
    for (int x = 5; x < 25; ++x) m.set(x, y, true);  // 200 px = 2%
  for (int y = 40; y < 80; ++y)
    for (int x = 40; x < 80; ++x) m.set(x, y, true);  // 1600 px = 16%
  write_png_mask(dir / "in.png", m);
  REQUIRE(run("mask --in " + p(dir / "in.png") + " --out " + p(dir / "out.png")).status == 0);
  const Mask out = read_png_mask(dir / "out.png");
  CHECK_FALSE(out.at(10, 10));
  CHECK(out.at(60, 60));
  CHECK(out.count() == 1600);
  REQUIRE(run("mask --in " + p(dir / "out.png") + " --out " + p(dir / "again.png")).status == 0);
  CHECK(bytes_of(dir / "out.png") == bytes_of(dir / "again.png"));
}

TEST_CASE("eval CSV") {
  const fs::path csv = work_dir() / "eval.csv";
  REQUIRE(run("eval --scene-size 32 --frames 4 --levels 3 --csv " + p(csv)).status == 0);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("#", 0) == 0);
  std::getline(in, line);
  CHECK(line == "method,metric,value");
  int rows = 0;
  bool full_rmse = false, full_ssim = false;
  while (std::getline(in, line)) {
    ++rows;
    if (line == "full,rmse_vs_full,0") full_rmse = true;
    if (line == "full,ms_ssim_vs_full,1") full_ssim = true;
  }
  CHECK(rows == 5 * 4);
  CHECK(full_rmse);
  CHECK(full_ssim);
}

TEST_CASE("errors exit nonzero with a message") {
  const Run missing = run("flow stats --flo does_not_exist.flo");
  CHECK(missing.status != 0);
  const fs::path dir = work_dir() / "err";
  fs::create_directories(dir);
  CHECK(run("flow synth --preset spiral:1 --out " + p(dir / "x.flo")).status != 0);
  std::ofstream(dir / "bad.flo", std::ios::binary) << "garbage-bytes";
  const Run bad = run("flow stats --flo " + p(dir / "bad.flo"));
  CHECK(bad.status != 0);
  CHECK(bad.out.find("error: invalid .flo magic") != std::string::npos);
  CHECK(run("").status != 0);
}
