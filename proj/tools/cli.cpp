#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "spineneck/metrics.hpp"
#include "spineneck/phantom.hpp"
#include "spineneck/pipeline.hpp"
#include "spineneck/raster_io.hpp"
#include "spineneck/svg.hpp"
#include "spineneck/sweep.hpp"

namespace spineneck::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct ReconstructArgs {
  std::string image, head, shaft, truth;
  std::string out_dir = ".";
  std::string method = "proposed";
  RunConfig config;
};

struct PhantomArgs {
  std::string preset = "standard";
  std::string config;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

struct EvalArgs {
  std::string reconstruction, truth;
  std::string out_dir;
};

struct SweepArgs {
  std::string scene;
  std::string out_dir = ".";
  std::vector<double> mus{3.7, 5.0, 7.0, 8.7, 10.0};
  int runs = 10;
  std::uint64_t seed = 0;
};

template <typename F>
auto stage(std::string_view name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_stage(name);
  }
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  f << text;
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

ordered_json point_json(GridPoint p) { return ordered_json::array({p.x, p.y}); }

ordered_json run_config_json(const RunConfig& c) {
  return {{"mu", c.mu},
          {"w", c.w},
          {"n_terminals", c.n_terminals},
          {"n_lambda", c.n_lambda},
          {"spline_samples", c.spline_samples},
          {"seed", c.seed},
          {"method", std::string(to_string(c.method))},
          {"step", c.step},
          {"tol", c.tol},
          {"absorbing_shaft", c.absorbing_shaft}};
}

std::vector<GridPoint> mask_outline(const BinaryMask& mask) {
  try {
    return extract_boundary(mask, nullptr);
  } catch (const Error&) {
    return {};
  }
}

SceneInputs load_scene(const fs::path& image, const fs::path& head, const fs::path& shaft) {
  return stage("load", [&] {
    return SceneInputs{io::read_image(image), io::read_mask_pgm(head), io::read_mask_pgm(shaft)};
  });
}

void add_run_options(CLI::App& cmd, RunConfig& c, std::string& method) {
  cmd.add_option("--mu", c.mu, "potential contrast exponent")->capture_default_str();
  cmd.add_option("--w", c.w, "potential floor")->capture_default_str();
  cmd.add_option("--n-terminals", c.n_terminals, "sampled shaft terminals")->capture_default_str();
  cmd.add_option("--n-lambda", c.n_lambda, "curve parameter samples")->capture_default_str();
  cmd.add_option("--spline-samples", c.spline_samples, "output spline samples")
      ->capture_default_str();
  cmd.add_option("--seed", c.seed, "terminal sampling seed")->capture_default_str();
  cmd.add_option("--method", method, "proposed or baseline")
      ->check(CLI::IsMember({"proposed", "baseline"}))
      ->capture_default_str();
}

int cmd_reconstruct(ReconstructArgs a, std::ostream& out) {
  a.config.method = parse_method(a.method);
  const SceneInputs inputs = load_scene(a.image, a.head, a.shaft);
  std::vector<GridPoint> truth;
  if (!a.truth.empty()) {
    truth = stage("load", [&] { return io::read_points_csv(a.truth).points; });
  }
  const PipelineResult r = reconstruct(inputs, a.config);

  const fs::path dir = a.out_dir;
  stage("write", [&] {
    ensure_dir(dir);
    io::write_points_csv(dir / "median.csv", "lambda", r.recon.lambda_grid, r.recon.median_points);
    io::write_points_csv(dir / "spline.csv", "lambda", r.recon.spline_lambdas,
                         r.recon.spline_points);
    io::write_points_csv(dir / "terminals.csv", r.terminals);
    for (std::size_t c = 0; c < r.candidates.n(); ++c) {
      char name[32];
      std::snprintf(name, sizeof name, "candidate_%02zu.csv", c);
      io::write_points_csv(dir / name, "lambda", r.candidates.lambdas[c],
                           r.candidates.paths[c].points);
    }

    ordered_json meta;
    meta["run_config"] = run_config_json(a.config);
    meta["image"] = {{"width", inputs.image.width()}, {"height", inputs.image.height()}};
    meta["head_centroid"] = point_json(r.head_centroid);
    meta["seed_pixel"] = point_json(r.seed_pixel);
    meta["phi_head"] = r.candidates.phi_h;
    meta["candidates"] = r.candidates.n();
    meta["support"] = r.recon.support;
    meta["warnings"] = r.warnings;
    if (!truth.empty()) meta["mae"] = centerline_mae(r.recon.spline_points, truth);
    write_text(dir / "reconstruction.json", meta.dump(2) + "\n");

    OverlayLayers layers;
    layers.image = &inputs.image;
    layers.shaft_contour = r.boundary;
    layers.head_contour = mask_outline(inputs.head);
    layers.prediction = r.recon.spline_points;
    layers.median_points = r.recon.median_points;
    layers.truth = truth;
    for (const auto& p : r.candidates.paths) layers.candidates.push_back(p.points);
    write_text(dir / "overlay.svg", render_overlay(layers));
  });

  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
  out << "candidates: " << r.candidates.n() << '\n';
  if (!truth.empty()) {
    out << "mae: " << io::format_real(centerline_mae(r.recon.spline_points, truth)) << '\n';
  }
  return 0;
}

int cmd_phantom(const PhantomArgs& a, std::ostream& out) {
  PhantomConfig config = stage("config", [&] {
    return a.config.empty() ? preset_config(a.preset) : config_from_json(read_text(a.config));
  });
  if (a.seed_given) config.seed = a.seed;
  const PhantomScene scene = stage("generate", [&] { return generate(config); });
  const fs::path dir = a.out_dir;
  stage("write", [&] {
    ensure_dir(dir);
    io::write_pgm(dir / "image.pgm", scene.image);
    io::write_mask_pgm(dir / "head.pgm", scene.head_mask);
    io::write_mask_pgm(dir / "shaft.pgm", scene.shaft_mask);
    io::write_points_csv(dir / "truth.csv", scene.truth_centerline);
    write_text(dir / "config.json", config_to_json(scene.config) + "\n");
  });
  out << "wrote scene to " << dir.string() << '\n';
  return 0;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto recon = stage("load", [&] { return io::read_points_csv(a.reconstruction).points; });
  const auto truth = stage("load", [&] { return io::read_points_csv(a.truth).points; });
  const double value = stage("mae", [&] { return centerline_mae(recon, truth); });
  out << "mae: " << io::format_real(value) << '\n';
  if (!a.out_dir.empty()) {
    stage("write", [&] {
      ensure_dir(a.out_dir);
      ordered_json j = {{"reconstruction", a.reconstruction}, {"truth", a.truth}, {"mae", value}};
      write_text(fs::path(a.out_dir) / "eval.json", j.dump(2) + "\n");
    });
  }
  return 0;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const fs::path scene_dir = a.scene;
  EvaluationScene scene{
      load_scene(scene_dir / "image.pgm", scene_dir / "head.pgm", scene_dir / "shaft.pgm"),
      stage("load", [&] { return io::read_points_csv(scene_dir / "truth.csv").points; })};
  const auto rows = stage("sweep", [&] { return mu_sweep(scene, a.mus, a.runs, a.seed); });
  const std::string csv = sweep_csv(rows);
  stage("write", [&] {
    ensure_dir(a.out_dir);
    write_text(fs::path(a.out_dir) / "sweep.csv", csv);
  });
  out << csv;
  out << "spread_across_mu proposed " << io::format_real(spread_across_mu(rows, Method::Proposed))
      << '\n';
  out << "spread_across_mu baseline " << io::format_real(spread_across_mu(rows, Method::Baseline))
      << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spine neck reconstruction from a head mask, a shaft mask and an image"};
  app.require_subcommand(1);

  ReconstructArgs rec;
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "trace the neck and write outputs");
  reconstruct_cmd->add_option("--image", rec.image, "PGM or CSV image")->required();
  reconstruct_cmd->add_option("--head", rec.head, "head mask PGM")->required();
  reconstruct_cmd->add_option("--shaft", rec.shaft, "shaft mask PGM")->required();
  reconstruct_cmd->add_option("--truth", rec.truth, "ground-truth centerline CSV");
  reconstruct_cmd->add_option("--out-dir", rec.out_dir, "output directory")->capture_default_str();
  add_run_options(*reconstruct_cmd, rec.config, rec.method);

  PhantomArgs ph;
  auto* phantom_cmd = app.add_subcommand("phantom", "write a synthetic scene bundle");
  phantom_cmd->add_option("--preset", ph.preset, "named configuration")->capture_default_str();
  phantom_cmd->add_option("--config", ph.config, "JSON configuration file");
  auto* seed_opt = phantom_cmd->add_option("--seed", ph.seed, "noise seed override");
  phantom_cmd->add_option("--out-dir", ph.out_dir, "output directory")->capture_default_str();

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "MAE between a reconstruction and the truth");
  eval_cmd->add_option("reconstruction", ev.reconstruction, "reconstruction CSV")->required();
  eval_cmd->add_option("truth", ev.truth, "truth CSV")->required();
  eval_cmd->add_option("--out-dir", ev.out_dir, "write eval.json here");

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "MAE over mu for both methods");
  sweep_cmd->add_option("--scene", sw.scene, "scene bundle directory")->required();
  sweep_cmd->add_option("--mu", sw.mus, "mu values")->delimiter(',')->capture_default_str();
  sweep_cmd->add_option("--runs", sw.runs, "runs per mu")->capture_default_str();
  sweep_cmd->add_option("--seed", sw.seed, "base seed")->capture_default_str();
  sweep_cmd->add_option("--out-dir", sw.out_dir, "output directory")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: arguments: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*reconstruct_cmd) return cmd_reconstruct(rec, out);
    if (*phantom_cmd) {
      ph.seed_given = seed_opt->count() > 0;
      return cmd_phantom(ph, out);
    }
    if (*eval_cmd) return cmd_eval(ev, out);
    if (*sweep_cmd) return cmd_sweep(sw, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.category());
  } catch (const fs::filesystem_error& e) {
    err << "error: io: " << e.what() << '\n';
    return 4;
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace spineneck::cli
