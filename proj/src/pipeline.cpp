#include "spineneck/pipeline.hpp"

#include <string>
#include <utility>

namespace spineneck {

namespace {

template <typename F>
auto stage(std::string_view name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_stage(name);
  }
}

void validate(const SceneInputs& in, const RunConfig& cfg) {
  if (in.head.width() != in.image.width() || in.head.height() != in.image.height() ||
      in.shaft.width() != in.image.width() || in.shaft.height() != in.image.height()) {
    throw Error(ErrorCode::DimensionMismatch, "image and mask dimensions differ");
  }
  if (cfg.n_terminals < 1) throw Error(ErrorCode::BadParameter, "n_terminals must be >= 1");
  if (cfg.n_lambda < 3) throw Error(ErrorCode::BadParameter, "n_lambda must be >= 3");
  if (cfg.spline_samples < cfg.n_lambda) {
    throw Error(ErrorCode::BadParameter, "spline_samples must be >= n_lambda");
  }
}

}  // namespace

std::string_view to_string(Method method) {
  return method == Method::Proposed ? "proposed" : "baseline";
}

Method parse_method(std::string_view text) {
  if (text == "proposed") return Method::Proposed;
  if (text == "baseline") return Method::Baseline;
  throw Error(ErrorCode::BadParameter, "unknown method '" + std::string(text) + "'");
}

PipelineResult reconstruct(const SceneInputs& inputs, const RunConfig& cfg) {
  stage("validate", [&] { validate(inputs, cfg); });
  PipelineResult r;
  const ScalarField g = stage("normalize", [&] { return normalize_image(inputs.image); });
  r.phi = stage("signed_distance", [&] { return signed_distance(inputs.shaft); });
  r.head_centroid = stage("centroid", [&] {
    const GridPoint c = centroid(inputs.head);
    if (!(sample_bilinear(r.phi, c) > 0.0)) {
      throw Error(ErrorCode::HeadInsideShaft, "head centroid lies inside the shaft mask");
    }
    return c;
  });
  r.boundary = stage("extract_boundary", [&] { return extract_boundary(inputs.shaft, &r.warnings); });
  const PotentialField potential =
      stage("build_potential", [&] { return build_potential(g, cfg.mu, cfg.w); });
  r.arrival = stage("fast_march", [&] {
    return fast_march(potential, r.head_centroid, cfg.absorbing_shaft ? &inputs.shaft : nullptr);
  });
  r.seed_pixel = r.arrival.seed_pixel;
  r.weighted = stage("weigh_boundary", [&] { return weigh_boundary(r.boundary, r.arrival, &r.warnings); });
  r.terminals = stage("select_terminals", [&] {
    if (cfg.method == Method::Baseline) return std::vector<GridPoint>{nearest_terminal(r.weighted)};
    return sample_terminals(r.weighted, cfg.n_terminals, cfg.seed, &r.warnings);
  });
  const BacktrackParams bt{cfg.step, cfg.tol, 0};
  auto paths = stage("trace_candidates", [&] {
    return trace_candidates(r.arrival, r.terminals, bt, &r.warnings);
  });
  r.candidates = stage("parameterize", [&] {
    return make_candidate_set(std::move(paths), r.phi, r.head_centroid);
  });
  r.recon = stage("estimate_path", [&] {
    return estimate_path(r.candidates, r.phi, cfg.n_lambda, &r.warnings);
  });
  r.recon = stage("spline_smooth", [&] {
    return spline_smooth(std::move(r.recon), cfg.spline_samples, &r.warnings);
  });
  r.recon.params = {cfg.mu, cfg.w, cfg.n_terminals, cfg.n_lambda, cfg.spline_samples, cfg.seed,
                    cfg.step};
  return r;
}

}  // namespace spineneck
