// cineloop: command-line front end for the cinemagraph renderer.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cineloop/compose.hpp"
#include "cineloop/error.hpp"
#include "cineloop/eval.hpp"
#include "cineloop/field.hpp"
#include "cineloop/flowsynth.hpp"
#include "cineloop/gif.hpp"
#include "cineloop/mask.hpp"
#include "cineloop/metrics.hpp"
#include "cineloop/parallel.hpp"
#include "cineloop/png_io.hpp"
#include "cineloop/scene.hpp"
#include "cineloop/style.hpp"

namespace fs = std::filesystem;
using namespace cineloop;

namespace {

struct Preset {
  std::string kind;
  std::vector<double> args;
};

Preset parse_preset(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("flow preset must look like kind:a,b[,c]");
  Preset preset{text.substr(0, colon), {}};
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      preset.args.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error("bad number '" + item + "' in flow preset");
    }
  }
  const std::size_t expected = preset.kind == "constant" ? 2 : 3;
  if (preset.kind != "constant" && preset.kind != "rotation" && preset.kind != "radial") {
    throw Error("unknown flow preset '" + preset.kind + "' (constant, rotation, radial)");
  }
  if (preset.args.size() != expected) {
    throw Error("flow preset '" + preset.kind + "' takes " + std::to_string(expected) + " values");
  }
  return preset;
}

FlowField make_preset_flow(const Preset& p, int width, int height) {
  if (p.kind == "constant") return constant_flow(width, height, p.args[0], p.args[1]);
  if (p.kind == "rotation") return rotation_flow(width, height, p.args[0], p.args[1], p.args[2]);
  return radial_flow(width, height, p.args[0], p.args[1], p.args[2]);
}

std::string frame_name(int t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%03d.png", t);
  return buf;
}

struct GenerateArgs {
  std::string image;
  std::string mask;
  std::string flow;
  std::string flow_preset;
  int flow_size = 512;
  int frames = 48;
  int levels = 5;
  std::optional<double> speed;
  std::string style_image;
  std::vector<double> style_stats;
  double beta = 1.0;
  std::string out_dir;
  std::string gif;
  int gif_delay = 4;
};

int cmd_generate(const GenerateArgs& args) {
  if (args.flow.empty() == args.flow_preset.empty()) throw Error("give exactly one of --flow or --flow-preset");
  if (args.out_dir.empty() && args.gif.empty()) throw Error("give --out and/or --gif");

  const ImageRGB image = read_png_rgb(args.image);
  const Mask mask = read_png_mask(args.mask);
  FlowField flow = args.flow.empty()
                       ? make_preset_flow(parse_preset(args.flow_preset), args.flow_size, args.flow_size)
                       : read_flo(args.flow);
  if (args.speed) flow = normalize_speed(flow, resample_nearest(mask, flow.size()), *args.speed);

  std::optional<StyleParams> style;
  if (!args.style_image.empty() || !args.style_stats.empty()) {
    if (!args.style_image.empty() && !args.style_stats.empty()) throw Error("give only one of --style-image, --style");
    StyleParams params;
    if (!args.style_image.empty()) {
      params = fit_style(read_png_rgb(args.style_image));
    } else {
      if (args.style_stats.size() != 6) throw Error("--style takes six values: 3 means then 3 stddevs");
      params.mean = {args.style_stats[0], args.style_stats[1], args.style_stats[2]};
      params.stddev = {args.style_stats[3], args.style_stats[4], args.style_stats[5]};
    }
    params.beta = args.beta;
    validate(params);
    style = params;
  }

  CinemagraphJob job{image, mask, std::move(flow), LoopSpec(args.frames), args.levels, style, std::nullopt};
  RenderOptions options;
  options.threads = default_thread_count();

  const auto start = std::chrono::steady_clock::now();
  const std::vector<ImageRGB> frames = render_loop(job, options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!args.out_dir.empty()) {
    fs::create_directories(args.out_dir);
    for (std::size_t t = 0; t < frames.size(); ++t) {
      write_png_rgb(fs::path(args.out_dir) / frame_name(static_cast<int>(t)), frames[t]);
    }
  }
  if (!args.gif.empty()) write_gif(args.gif, frames, args.gif_delay);

  std::cout << "frames: " << frames.size() << "\n";
  std::cout << "loop_gap: " << loop_gap(frames) << "\n";
  std::cerr << "render time: " << seconds << " s\n";
  return 0;
}

void print_stats(const VectorGrid& field) {
  double min_u = field.at(0, 0).u, max_u = min_u, min_v = field.at(0, 0).v, max_v = min_v;
  double sum_u = 0, sum_v = 0;
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      const Vec2 f = field.at(x, y);
      min_u = std::min<double>(min_u, f.u);
      max_u = std::max<double>(max_u, f.u);
      min_v = std::min<double>(min_v, f.v);
      max_v = std::max<double>(max_v, f.v);
      sum_u += f.u;
      sum_v += f.v;
    }
  }
  const double n = static_cast<double>(field.cell_count());
  std::cout << "size: " << field.width() << "x" << field.height() << "\n"
            << "u: min " << min_u << " max " << max_u << " mean " << sum_u / n << "\n"
            << "v: min " << min_v << " max " << max_v << " mean " << sum_v / n << "\n";
}

struct MaskArgs {
  std::string in;
  std::string out;
  double threshold = kDefaultAreaRatio;
  std::optional<double> cutoff;
  int channel = 0;
};

int cmd_mask(const MaskArgs& args) {
  const Mask mask = args.cutoff ? threshold_mask(read_png_rgb(args.in), args.channel, *args.cutoff)
                                : read_png_mask(args.in);
  const Mask refined = refine_mask(mask, args.threshold);
  write_png_mask(args.out, refined);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < mask.cell_count(); ++i) changed += mask.cells()[i] != refined.cells()[i];
  std::cout << "dynamic pixels: " << refined.count() << " of " << refined.cell_count() << ", flipped: " << changed
            << "\n";
  return 0;
}

struct EvalArgs {
  std::string image;
  std::string mask;
  std::string flow_preset;
  int flow_size = 512;
  int frames = 8;
  int levels = 5;
  int scene_size = 128;
  std::string csv;
};

int cmd_eval(const EvalArgs& args) {
  std::optional<CinemagraphJob> job;
  std::optional<GroundTruth> truth;
  if (args.image.empty()) {
    TranslationScene config{{args.scene_size, args.scene_size}, args.frames, 1.0};
    SyntheticScene scene = make_scene(config);
    job.emplace(CinemagraphJob{scene.image, scene.mask, scene.flow, LoopSpec(args.frames), args.levels, {}, {}});
    truth = [config](int t) { return ground_truth_frame(config, t); };
  } else {
    if (args.mask.empty() || args.flow_preset.empty()) throw Error("--image needs --mask and --flow-preset");
    const ImageRGB image = read_png_rgb(args.image);
    const Mask mask = read_png_mask(args.mask);
    const Preset preset = parse_preset(args.flow_preset);
    job.emplace(CinemagraphJob{image, mask, make_preset_flow(preset, args.flow_size, args.flow_size),
                               LoopSpec(args.frames), args.levels, {}, {}});
    if (preset.kind == "constant") {
      const double cu = static_cast<double>(image.width()) / args.flow_size;
      const double cv = static_cast<double>(image.height()) / args.flow_size;
      truth = translation_ground_truth(image, mask, preset.args[0] * cu, preset.args[1] * cv);
    }
  }
  const auto rows = run_ablation(*job, truth, default_thread_count());
  const std::string csv = to_csv(rows);
  if (args.csv.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(args.csv);
    out << csv;
    if (!out) throw Error("cannot write " + args.csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cineloop: looping cinemagraphs from a still image, a mask and a motion field"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "render a looping video");
  generate->add_option("--image", gen.image, "input PNG")->required()->check(CLI::ExistingFile);
  generate->add_option("--mask", gen.mask, "mask PNG (0 static, 255 dynamic)")->required()->check(CLI::ExistingFile);
  generate->add_option("--flow", gen.flow, "motion field (.flo)")->check(CLI::ExistingFile);
  generate->add_option("--flow-preset", gen.flow_preset,
                       "constant:u,v | rotation:cx,cy,omega | radial:cx,cy,k");
  generate->add_option("--flow-size", gen.flow_size, "resolution of preset flows")->capture_default_str();
  generate->add_option("--frames", gen.frames, "loop length N (writes N+1 frames)")->capture_default_str();
  generate->add_option("--levels", gen.levels, "pyramid levels")->capture_default_str();
  generate->add_option("--speed", gen.speed, "target mean speed over the mask, px/frame");
  generate->add_option("--style-image", gen.style_image, "target style PNG")->check(CLI::ExistingFile);
  generate->add_option("--style", gen.style_stats, "target means and stddevs (6 values)")->expected(6);
  generate->add_option("--beta", gen.beta, "style interpolation weight")->capture_default_str();
  generate->add_option("--out", gen.out_dir, "directory for frame_NNN.png");
  generate->add_option("--gif", gen.gif, "animated GIF path");
  generate->add_option("--gif-delay", gen.gif_delay, "GIF frame delay, 1/100 s")->capture_default_str();

  auto* flow = app.add_subcommand("flow", "motion field utilities");
  flow->require_subcommand(1);
  std::string preset_text, flo_in, flo_out, png_out;
  int width = 512, height = 512, steps = 0;
  auto* synth = flow->add_subcommand("synth", "write a preset flow as .flo");
  synth->add_option("--preset", preset_text, "constant:u,v | rotation:cx,cy,omega | radial:cx,cy,k")->required();
  synth->add_option("--width", width)->capture_default_str();
  synth->add_option("--height", height)->capture_default_str();
  synth->add_option("--out", flo_out)->required();
  auto* integ = flow->add_subcommand("integrate", "Euler-integrate a flow for N steps");
  integ->add_option("--flo", flo_in)->required()->check(CLI::ExistingFile);
  integ->add_option("--steps", steps)->required()->check(CLI::NonNegativeNumber);
  integ->add_option("--out", flo_out)->required();
  auto* viz = flow->add_subcommand("viz", "color-wheel PNG of a .flo");
  viz->add_option("--flo", flo_in)->required()->check(CLI::ExistingFile);
  viz->add_option("--out", png_out)->required();
  auto* stats = flow->add_subcommand("stats", "print min/max/mean of a .flo");
  stats->add_option("--flo", flo_in)->required()->check(CLI::ExistingFile);

  MaskArgs mask_args;
  auto* mask = app.add_subcommand("mask", "remove small mask components");
  mask->add_option("--in", mask_args.in, "mask PNG, or RGB PNG with --cutoff")->required()->check(CLI::ExistingFile);
  mask->add_option("--out", mask_args.out)->required();
  mask->add_option("--threshold", mask_args.threshold, "minimum area ratio kept")->capture_default_str();
  mask->add_option("--cutoff", mask_args.cutoff, "threshold an RGB image channel at this value first");
  mask->add_option("--channel", mask_args.channel, "channel used with --cutoff")->capture_default_str();

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "ablation harness; CSV of RMSE / MS-SSIM");
  eval->add_option("--image", eval_args.image, "input PNG (default: built-in translation scene)");
  eval->add_option("--mask", eval_args.mask);
  eval->add_option("--flow-preset", eval_args.flow_preset);
  eval->add_option("--flow-size", eval_args.flow_size)->capture_default_str();
  eval->add_option("--frames", eval_args.frames)->capture_default_str();
  eval->add_option("--levels", eval_args.levels)->capture_default_str();
  eval->add_option("--scene-size", eval_args.scene_size, "side of the built-in scene")->capture_default_str();
  eval->add_option("--csv", eval_args.csv, "output path (default stdout)");

  std::string scene_kind = "demo", scene_out;
  int scene_size = 512;
  unsigned scene_seed = 1;
  auto* scene = app.add_subcommand("scene", "write a bundled synthetic scene (image.png, mask.png)");
  scene->add_option("--kind", scene_kind)->check(CLI::IsMember({"demo", "translation"}))->capture_default_str();
  scene->add_option("--size", scene_size)->capture_default_str();
  scene->add_option("--seed", scene_seed)->capture_default_str();
  scene->add_option("--out", scene_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return cmd_generate(gen);
    if (*synth) {
      write_flo(flo_out, make_preset_flow(parse_preset(preset_text), width, height));
      return 0;
    }
    if (*integ) {
      write_flo(flo_out, integrate(read_flo(flo_in), steps));
      return 0;
    }
    if (*viz) {
      const FlowField field = read_flo(flo_in);
      write_png_rgb8(png_out, field.width(), field.height(), flow_to_color(field));
      return 0;
    }
    if (*stats) {
      std::size_t unknown = 0;
      print_stats(read_flo(flo_in, &unknown));
      if (unknown > 0) std::cout << "unknown values mapped to 0: " << unknown << "\n";
      return 0;
    }
    if (*mask) return cmd_mask(mask_args);
    if (*eval) return cmd_eval(eval_args);
    if (*scene) {
      fs::create_directories(scene_out);
      const Size size{scene_size, scene_size};
      if (scene_kind == "demo") {
        write_png_rgb(fs::path(scene_out) / "image.png", make_demo_image(size, scene_seed));
        write_png_mask(fs::path(scene_out) / "mask.png", make_demo_mask(size, scene_seed));
      } else {
        const SyntheticScene s = make_scene(TranslationScene{size, 8, 1.0});
        write_png_rgb(fs::path(scene_out) / "image.png", s.image);
        write_png_mask(fs::path(scene_out) / "mask.png", s.mask);
        write_flo(fs::path(scene_out) / "flow.flo", s.flow);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
