// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "spineneck/contour.hpp"
#include "spineneck/eikonal.hpp"
#include "spineneck/geodesic.hpp"
#include "spineneck/metrics.hpp"
#include "spineneck/pathspace.hpp"
#include "spineneck/phantom.hpp"
#include "spineneck/pipeline.hpp"
#include "spineneck/random.hpp"
#include "spineneck/raster_io.hpp"
#include "spineneck/sampler.hpp"
#include "spineneck/sweep.hpp"

namespace fs = std::filesystem;
using namespace spineneck;

namespace {

// Tolerances.
constexpr double kEikonalMaxError = 2.0;
constexpr double kEikonalMeanError = 0.5;
constexpr double kEikonalSeconds = 1.0;
constexpr double kBracketSlack = 0.15;
constexpr double kBracketPotentialLo = 1.0;
constexpr double kBracketPotentialHi = 1.3;
constexpr double kStraightness = 0.75;
constexpr double kProposedMaxMae = 3.0;
constexpr double kBaselineRatio = 2.0;
constexpr double kLambdaTolerance = 1e-6;
constexpr double kMaeTolerance = 1e-9;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

int run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  if (status != 0) std::fprintf(stderr, "%s", err.str().c_str());
  return status;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "spineneck_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Standard phantom bundle written through the CLI.
const fs::path& bundle() {
  static const fs::path dir = [] {
    const fs::path d = work_dir() / "standard";
    if (run_cli({"phantom", "--preset", "standard", "--out-dir", d.string()}) != 0) {
      throw Error(ErrorCode::IoError, "phantom bundle generation failed");
    }
    return d;
  }();
  return dir;
}

std::vector<std::string> reconstruct_args(const fs::path& out, const std::string& method) {
  const fs::path& b = bundle();
  return {"reconstruct", "--image", (b / "image.pgm").string(), "--head",
          (b / "head.pgm").string(), "--shaft", (b / "shaft.pgm").string(), "--truth",
          (b / "truth.csv").string(), "--method", method, "--out-dir", out.string()};
}

SceneInputs load_bundle() {
  const fs::path& b = bundle();
  return {io::read_image(b / "image.pgm"), io::read_mask_pgm(b / "head.pgm"),
          io::read_mask_pgm(b / "shaft.pgm")};
}

Outcome eikonal_analytic() {
  const int n = 201;
  const ScalarField p(n, n, 1.0);
  const GridPoint src{100.0, 100.0};
  const auto t0 = std::chrono::steady_clock::now();
  const ArrivalTimeField u = fast_march(p, src);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  double max_err = 0.0, sum = 0.0;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double e = std::abs(u.field(x, y) - distance({double(x), double(y)}, src));
      max_err = std::max(max_err, e);
      sum += e;
    }
  }
  const double mean = sum / (n * n);
  return {max_err <= kEikonalMaxError && mean <= kEikonalMeanError && seconds < kEikonalSeconds,
          fmt("max %.4f px (<= 2), mean %.4f px (<= 0.5), %.4f s (< 1)", max_err, mean, seconds)};
}

Outcome eikonal_bracket() {
  Rng rng(2024);
  double worst = 0.0;
  int outside = 0;
  for (int trial = 0; trial < 50; ++trial) {
    ScalarField p(9, 9);
    for (double& v : p.values()) {
      v = kBracketPotentialLo + (kBracketPotentialHi - kBracketPotentialLo) * rng.uniform();
    }
    const int sx = static_cast<int>(rng.below(9));
    const int sy = static_cast<int>(rng.below(9));
    const auto u = fast_march(p, {double(sx), double(sy)});
    const auto d4 = oracle::grid_dijkstra(p, sx, sy, false);
    const auto d8 = oracle::grid_dijkstra(p, sx, sy, true);
    for (int y = 0; y < 9; ++y) {
      for (int x = 0; x < 9; ++x) {
        const double lo = std::min(d4(x, y), d8(x, y));
        const double hi = std::max(d4(x, y), d8(x, y));
        const double v = u.field(x, y);
        double excess = 0.0;
        if (v < lo) excess = (lo - v) / lo;
        if (v > hi) excess = (v - hi) / hi;
        worst = std::max(worst, excess);
        if (v < (1.0 - kBracketSlack) * lo || v > (1.0 + kBracketSlack) * hi) ++outside;
      }
    }
  }
  return {outside == 0, fmt("potential in [%.1f, %.1f], worst excess %.4f (<= 0.15), %.0f pixels "
                            "outside",
                            kBracketPotentialLo, kBracketPotentialHi, worst, outside)};
}

Outcome geodesic_straightness() {
  const int n = 101;
  const ScalarField p(n, n, 1.0);
  const GridPoint src{50.0, 50.0};
  const auto arrival = fast_march(p, src);
  Rng rng(31);
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    GridPoint t;
    do {
      t = {2.0 + 96.0 * rng.uniform(), 2.0 + 96.0 * rng.uniform()};
    } while (distance(t, src) < 5.0);
    const GeodesicPath path = backtrack(arrival, t);
    for (const auto& q : path.points) {
      worst = std::max(worst, distance_to_polyline(q, {src, t}));
    }
  }
  return {worst <= kStraightness, fmt("max deviation %.4f px (<= 0.75)", worst)};
}

double json_mae(const fs::path& dir) {
  return nlohmann::json::parse(slurp(dir / "reconstruction.json")).at("mae").get<double>();
}

Outcome robustness() {
  const fs::path a = work_dir() / "robust_proposed";
  const fs::path b = work_dir() / "robust_baseline";
  if (run_cli(reconstruct_args(a, "proposed")) != 0) return {false, "proposed run failed"};
  if (run_cli(reconstruct_args(b, "baseline")) != 0) return {false, "baseline run failed"};
  const double proposed = json_mae(a);
  const double baseline = json_mae(b);
  return {proposed <= kProposedMaxMae && baseline >= kBaselineRatio * proposed,
          fmt("proposed MAE %.4f px (<= 3.0), baseline MAE %.4f px (>= 2x = %.4f)", proposed,
              baseline, kBaselineRatio * proposed)};
}

Outcome mu_stability() {
  EvaluationScene scene{load_bundle(), io::read_points_csv(bundle() / "truth.csv").points};
  const auto rows = mu_sweep(scene, {3.7, 5.0, 7.0, 8.7, 10.0}, 10, 0);
  int failed = 0;
  for (const auto& r : rows) failed += r.failures;
  const double proposed = spread_across_mu(rows, Method::Proposed);
  const double baseline = spread_across_mu(rows, Method::Baseline);
  return {proposed < baseline && failed == 0,
          fmt("std of mean MAE across mu: proposed %.4f, baseline %.4f; failed runs %.0f",
              proposed, baseline, failed)};
}

// Path whose vertices lie on the level sets lambda_i, so that its first
// crossing at every lambda_i is the chosen vertex.
GeodesicPath level_path(GridPoint head, const std::vector<GridPoint>& stops) {
  GeodesicPath p;
  p.points.push_back(head);
  p.points.insert(p.points.end(), stops.begin(), stops.end());
  return p;
}

Outcome median_breakdown() {
  const SceneInputs inputs = load_bundle();
  RunConfig cfg;
  cfg.n_terminals = 11;
  cfg.n_lambda = 25;
  const PipelineResult base = reconstruct(inputs, cfg);
  const std::size_t n = base.candidates.n();
  if (n != 11) return {false, fmt("expected 11 inlier candidates, traced %.0f", double(n))};
  const ScalarField& phi = base.phi;
  const GridPoint head = base.head_centroid;
  const double phi_h = base.candidates.phi_h;
  const int big_n = cfg.n_lambda;

  std::vector<double> grid;
  std::vector<std::vector<Contour>> contours;
  for (int i = 1; i <= big_n; ++i) {
    grid.push_back(static_cast<double>(i) / (big_n + 1));
    contours.push_back(iso_contours(phi, (1.0 - grid.back()) * phi_h));
  }

  Rng rng(11);
  int checks = 0, violations = 0;
  // Adversary strategies per lambda_i: first vertex of the first piece, last
  // vertex of the first piece, alternating ends, and random vertices of any
  // piece at that level.
  for (int k = 0; k <= 5; ++k) {
    for (int strategy = 0; strategy < 4; ++strategy) {
      for (int rep = 0; rep < (strategy == 3 ? 10 : 1); ++rep) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
        std::vector<bool> replaced(n, false);
        for (int j = 0; j < k; ++j) replaced[order[j]] = true;

        std::vector<GeodesicPath> paths;
        for (std::size_t c = 0; c < n; ++c) {
          if (!replaced[c]) {
            paths.push_back(base.candidates.paths[c]);
            continue;
          }
          std::vector<GridPoint> stops;
          for (int i = 0; i < big_n; ++i) {
            const auto& pieces = contours[i];
            const Contour& first = pieces.front();
            GridPoint q;
            switch (strategy) {
              case 0: q = first.vertices.front(); break;
              case 1: q = first.vertices.back(); break;
              case 2: q = (c % 2 == 0) ? first.vertices.front() : first.vertices.back(); break;
              default: {
                const Contour& piece = pieces[rng.below(pieces.size())];
                q = piece.vertices[rng.below(piece.vertices.size())];
              }
            }
            stops.push_back(q);
          }
          paths.push_back(level_path(head, stops));
        }
        const CandidatePathSet set = make_candidate_set(paths, phi, head);
        const SpineReconstruction recon = estimate_path(set, phi, big_n);

        for (int i = 0; i < big_n; ++i) {
          std::vector<GridPoint> samples;
          std::vector<bool> inlier;
          for (std::size_t c = 0; c < n; ++c) {
            try {
              samples.push_back(resample_at(set.paths[c], set.lambdas[c], grid[i]));
              inlier.push_back(!replaced[c]);
            } catch (const Error&) {
            }
          }
          const LevelSetRanking rank = rank_on_level_set(samples, contours[i]);
          double lo = std::numeric_limits<double>::infinity();
          double hi = -lo;
          double median_pos = std::numeric_limits<double>::quiet_NaN();
          for (std::size_t s = 0; s < samples.size(); ++s) {
            if (inlier[s]) {
              lo = std::min(lo, rank.positions[s]);
              hi = std::max(hi, rank.positions[s]);
            }
            if (samples[s] == recon.median_points[i]) median_pos = rank.positions[s];
          }
          ++checks;
          if (!(median_pos >= lo && median_pos <= hi)) ++violations;
        }
      }
    }
  }
  return {violations == 0, fmt("%.0f of %.0f lambda checks outside the inlier range "
                               "(n = 11, 0..5 adversaries, N = 25)",
                               violations, checks)};
}

Outcome weight_suite() {
  Rng rng(7);
  int bad = 0, trials = 0;
  for (int trial = 0; trial < 200; ++trial, ++trials) {
    const int w = 40, h = 30;
    const bool dyadic = trial % 2 == 0;
    ArrivalTimeField arrival{ScalarField(w, h), {0.0, 0.0}, {0.0, 0.0}, {}};
    const int span = 1 << (1 + rng.below(10));
    for (double& v : arrival.field.values()) {
      v = dyadic ? static_cast<double>(rng.below(span + 1)) : 100.0 * rng.uniform();
    }
    const int count = 3 + static_cast<int>(rng.below(100));
    std::vector<GridPoint> boundary;
    for (int i = 0; i < count; ++i) {
      boundary.push_back({double(rng.below(w)), double(rng.below(h))});
    }
    // Pin the extremes and, on dyadic trials, the midpoint.
    arrival.field(int(boundary[0].x), int(boundary[0].y)) = 0.0;
    arrival.field(int(boundary[1].x), int(boundary[1].y)) = dyadic ? span : 100.0;
    if (dyadic) arrival.field(int(boundary[2].x), int(boundary[2].y)) = span / 2;
    if (boundary[1] == boundary[0] || boundary[2] == boundary[0] || boundary[2] == boundary[1]) {
      continue;
    }
    const WeightedBoundary wb = weigh_boundary(boundary, arrival);
    const double range = wb.t_plus - wb.t_minus;
    for (std::size_t i = 0; i < boundary.size(); ++i) {
      const double wi = wb.weights[i];
      const double ti = wb.arrivals[i];
      if (!(wi >= 0.0 && wi <= 1.0)) ++bad;
      if (ti == wb.t_minus && wi != 1.0) ++bad;
      if (ti == wb.t_plus && wi != 0.0) ++bad;
      if (dyadic && 2.0 * ti == wb.t_minus + wb.t_plus && wi != 0.5) ++bad;
      for (std::size_t j = 0; j < boundary.size(); j += 7) {
        const double lhs = wb.weights[j] - wi;
        const double rhs = (ti - wb.arrivals[j]) / range;
        if (dyadic ? lhs != rhs : std::abs(lhs - rhs) > 1e-12) ++bad;
      }
    }
  }
  return {bad == 0, fmt("%.0f violations over %.0f randomized boundaries (bounds, endpoints, "
                        "midpoint, affinity)",
                        bad, trials)};
}

PhantomConfig random_phantom(Rng& rng) {
  PhantomConfig c;
  const double shaft_x = 95.0 + 10.0 * rng.uniform();
  c.shaft = {{shaft_x, -20.0}, {shaft_x, 148.0}};
  c.shaft_radius = 6.0 + 3.0 * rng.uniform();
  c.head_radius = 4.0 + 3.0 * rng.uniform();
  c.head_center = {shaft_x - c.shaft_radius - 20.0 - 20.0 * rng.uniform(),
                   20.0 + 88.0 * rng.uniform()};
  const GridPoint end{shaft_x - c.shaft_radius, c.head_center.y + 30.0 * rng.uniform() - 15.0};
  const GridPoint control = 0.5 * (c.head_center + end) +
                            GridPoint{0.0, 16.0 * rng.uniform() - 8.0};
  const GridPoint toward = control - c.head_center;
  const GridPoint start = c.head_center + (c.head_radius / toward.norm()) * toward;
  c.neck = bezier(start, control, end, 32);
  c.neck_width = 2.0 + 2.0 * rng.uniform();
  c.neck_attenuation = 0.2 + 0.6 * rng.uniform();
  if (rng.uniform() < 0.5) {
    c.distractors = {{{c.head_center.x + 10.0 * rng.uniform(), c.head_center.y - 15.0},
                      3.0 + 5.0 * rng.uniform(), 0.5 + 0.5 * rng.uniform()}};
  }
  c.seed = rng.next();
  return c;
}

Outcome parameterization() {
  Rng rng(20);
  int scenes = 0, candidates = 0, bad = 0;
  double worst = 0.0;
  std::string problems;
  while (scenes < 20) {
    PhantomScene scene;
    try {
      scene = generate(random_phantom(rng));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::GeometryError) continue;
      throw;
    }
    ++scenes;
    const PipelineResult r =
        reconstruct({scene.image, scene.head_mask, scene.shaft_mask}, RunConfig{});
    for (std::size_t c = 0; c < r.candidates.n(); ++c) {
      ++candidates;
      const auto& l = r.candidates.lambdas[c];
      const auto& pts = r.candidates.paths[c].points;
      const double head_err = std::abs(l.front());
      const double end_err = std::abs(l.back() - 1.0);
      const double phi_end = std::abs(sample_bilinear(r.phi, pts.back()));
      worst = std::max({worst, head_err, end_err});
      if (pts.front() != r.head_centroid || head_err > kLambdaTolerance ||
          end_err > kLambdaTolerance || phi_end > kLambdaTolerance) {
        ++bad;
      }
    }
  }
  return {bad == 0, fmt("%.0f candidates on %.0f random phantoms, worst |lambda error| %.2e "
                        "(<= 1e-6), %.0f violations",
                        candidates, scenes, worst, bad)};
}

Outcome mae_suite() {
  const std::vector<GridPoint> u{{0, 0}, {1, 0}};
  bool examples = mae(u, u) == 0.0 &&
                  mae(std::vector<GridPoint>{{0, 0}}, std::vector<GridPoint>{{3, 4}}) == 10.0 &&
                  mae(u, std::vector<GridPoint>{{0, 0}}) == 0.5;
  Rng rng(100);
  double sym = 0.0, shift_err = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<GridPoint> a(1 + rng.below(40)), b(1 + rng.below(40));
    for (auto& p : a) p = {128.0 * rng.uniform(), 128.0 * rng.uniform()};
    for (auto& p : b) p = {128.0 * rng.uniform(), 128.0 * rng.uniform()};
    const double d = mae(a, b);
    sym = std::max(sym, std::abs(d - mae(b, a)));
    const GridPoint s{400.0 * rng.uniform() - 200.0, 400.0 * rng.uniform() - 200.0};
    for (auto& p : a) p = p + s;
    for (auto& p : b) p = p + s;
    shift_err = std::max(shift_err, std::abs(mae(a, b) - d));
  }
  return {examples && sym <= kMaeTolerance && shift_err <= kMaeTolerance,
          std::string(examples ? "examples exact" : "examples FAILED") +
              fmt("; symmetry %.2e, translation %.2e (<= 1e-9) on 100 pairs", sym, shift_err)};
}

Outcome determinism() {
  const fs::path a = work_dir() / "det_a";
  const fs::path b = work_dir() / "det_b";
  if (run_cli(reconstruct_args(a, "proposed")) != 0) return {false, "first run failed"};
  if (run_cli(reconstruct_args(b, "proposed")) != 0) return {false, "second run failed"};
  int files = 0;
  std::string differ;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    const fs::path other = b / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) {
      differ += " " + entry.path().filename().string();
    }
  }
  int files_b = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(b)) ++files_b;
  const bool ok = differ.empty() && files == files_b && files > 0;
  return {ok, ok ? fmt("%.0f output files byte-identical", files) : "differ:" + differ};
}

}  // namespace

int main() {
  report("eikonal analytic", eikonal_analytic);
  report("eikonal oracle bracket", eikonal_bracket);
  report("geodesic straightness", geodesic_straightness);
  report("robustness", robustness);
  report("mu stability", mu_stability);
  report("median breakdown", median_breakdown);
  report("weight suite", weight_suite);
  report("parameterization", parameterization);
  report("mae suite", mae_suite);
  report("determinism", determinism);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
