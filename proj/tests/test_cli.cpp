#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "spineneck/phantom.hpp"
#include "spineneck/raster_io.hpp"

namespace fs = std::filesystem;
using namespace spineneck;

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("spineneck_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Standard phantom bundle, written once and shared.
const fs::path& bundle() {
  static const fs::path dir = [] {
    const fs::path d = scratch("bundle");
    const auto r = run_cli({"phantom", "--out-dir", d.string()});
    REQUIRE(r.status == 0);
    return d;
  }();
  return dir;
}

std::vector<std::string> reconstruct_args(const fs::path& out) {
  const fs::path& b = bundle();
  return {"reconstruct", "--image", (b / "image.pgm").string(), "--head",
          (b / "head.pgm").string(), "--shaft", (b / "shaft.pgm").string(), "--truth",
          (b / "truth.csv").string(), "--out-dir", out.string()};
}

}  // namespace

TEST_CASE("phantom writes a complete bundle") {
  for (const char* f : {"image.pgm", "head.pgm", "shaft.pgm", "truth.csv", "config.json"}) {
    CHECK(fs::exists(bundle() / f));
  }
  CHECK(io::read_mask_pgm(bundle() / "head.pgm").count() > 0);
}

TEST_CASE("reconstruct writes its outputs") {
  const fs::path out = scratch("recon");
  const auto r = run_cli(reconstruct_args(out));
  CHECK_MESSAGE(r.status == 0, r.err);
  for (const char* f : {"median.csv", "spline.csv", "terminals.csv", "reconstruction.json",
                        "overlay.svg", "candidate_00.csv"}) {
    CHECK(fs::exists(out / f));
  }
  const auto meta = nlohmann::json::parse(slurp(out / "reconstruction.json"));
  CHECK(meta.contains("mae"));
  CHECK(meta.at("run_config").at("mu") == 7.0);
  CHECK(io::read_points_csv(out / "spline.csv").points.size() == 100);
  CHECK(io::read_points_csv(out / "median.csv").points.size() == 25);
  CHECK(slurp(out / "overlay.svg").find("<svg") != std::string::npos);
}

TEST_CASE("reconstruct is byte-identical across runs") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  REQUIRE(run_cli(reconstruct_args(a)).status == 0);
  REQUIRE(run_cli(reconstruct_args(b)).status == 0);
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename();
    CHECK_MESSAGE(slurp(entry.path()) == slurp(b / name), name.string());
  }
}

TEST_CASE("baseline reconstruct keeps one candidate") {
  const fs::path out = scratch("baseline");
  auto args = reconstruct_args(out);
  args.insert(args.end(), {"--method", "baseline"});
  REQUIRE(run_cli(args).status == 0);
  CHECK(fs::exists(out / "candidate_00.csv"));
  CHECK_FALSE(fs::exists(out / "candidate_01.csv"));
  CHECK(io::read_points_csv(out / "terminals.csv").points.size() == 1);
}

TEST_CASE("mismatched mask dimensions fail with the stage named") {
  const fs::path dir = scratch("mismatch");
  io::write_mask_pgm(dir / "small.pgm", BinaryMask(64, 64));
  const fs::path& b = bundle();
  const auto r = run_cli({"reconstruct", "--image", (b / "image.pgm").string(), "--head",
                          (b / "head.pgm").string(), "--shaft", (dir / "small.pgm").string(),
                          "--out-dir", (dir / "out").string()});
  CHECK(r.status == 2);
  CHECK(r.err.find("validate") != std::string::npos);
}

TEST_CASE("missing input is an I/O failure") {
  const fs::path dir = scratch("missing");
  const auto r = run_cli({"reconstruct", "--image", (dir / "none.pgm").string(), "--head",
                          (dir / "none.pgm").string(), "--shaft", (dir / "none.pgm").string(),
                          "--out-dir", dir.string()});
  CHECK(r.status == 4);
  CHECK(r.err.find("load") != std::string::npos);
}

TEST_CASE("argument errors exit with status 2") {
  CHECK(run_cli({"reconstruct"}).status == 2);
  CHECK(run_cli({"nosuch"}).status == 2);
  auto args = reconstruct_args(scratch("badmu"));
  args.insert(args.end(), {"--mu", "-1"});
  CHECK(run_cli(args).status == 2);
}

TEST_CASE("eval reports the centerline MAE") {
  const fs::path dir = scratch("eval");
  io::write_points_csv(dir / "a.csv", std::vector<GridPoint>{{0, 0}});
  io::write_points_csv(dir / "b.csv", std::vector<GridPoint>{{3, 4}});
  const auto same = run_cli({"eval", (dir / "a.csv").string(), (dir / "a.csv").string()});
  CHECK(same.status == 0);
  CHECK(same.out.find("mae: 0.000000") != std::string::npos);
  const auto diff = run_cli({"eval", (dir / "a.csv").string(), (dir / "b.csv").string(),
                             "--out-dir", dir.string()});
  CHECK(diff.status == 0);
  CHECK(diff.out.find("mae: 10.000000") != std::string::npos);
  CHECK(nlohmann::json::parse(slurp(dir / "eval.json")).at("mae") == 10.0);
}

TEST_CASE("phantom seed override is recorded") {
  const fs::path dir = scratch("seed");
  REQUIRE(run_cli({"phantom", "--seed", "42", "--out-dir", dir.string()}).status == 0);
  CHECK(config_from_json(slurp(dir / "config.json")).seed == 42);
  CHECK(slurp(dir / "image.pgm") != slurp(bundle() / "image.pgm"));
}

TEST_CASE("phantom config file is honored and validated") {
  const fs::path dir = scratch("config");
  PhantomConfig c = standard_phantom_config();
  c.noise_sigma = 0.0;
  std::ofstream(dir / "ok.json") << config_to_json(c);
  REQUIRE(run_cli({"phantom", "--config", (dir / "ok.json").string(), "--out-dir",
                   (dir / "ok").string()})
              .status == 0);
  CHECK(config_from_json(slurp(dir / "ok" / "config.json")).noise_sigma == 0.0);

  c.neck.back() = {50.0, 120.0};
  std::ofstream(dir / "bad.json") << config_to_json(c);
  const auto r = run_cli({"phantom", "--config", (dir / "bad.json").string(), "--out-dir",
                          (dir / "bad").string()});
  CHECK(r.status == 2);
  CHECK(r.err.find("generate") != std::string::npos);
}
