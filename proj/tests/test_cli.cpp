#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>

#include "algd/cli.hpp"
#include "algd/errors.hpp"
#include "algd/forms.hpp"
#include "algd/lemmas.hpp"
#include "doctest.h"
#include "manifest.hpp"

using namespace algd;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string manifest_path(const std::string& name) { return std::string(ALGD_MANIFEST_DIR) + "/" + name; }

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("algd-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

RunFlags no_cache() {
  RunFlags f;
  f.use_cache = false;
  return f;
}

const char* kShared = R"(
version: 1
variables: [x1, x2, x3]
charts: [U0, U1, U2]
frames:
  U0: coordinate
  U1: {map: ["x1 + x2^2", x2, x3], inverse: ["x1 - x2^2", x2, x3]}
  U2: {map: [x1, "x2 + x1*x3", x3], inverse: [x1, "x2 - x1*x3", x3]}
tasks: [eva-class, compare-classes]
bounds: {degree: 8}
)";

std::string error_of(const std::string& text) {
  RunOutcome o = run_manifest_text(text, no_cache());
  CHECK(o.exit_code == 2);
  CHECK(o.machine.empty());
  return o.error;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("dlog manifest reproduces the fixture") {
    RunOutcome o = run_manifest_file(manifest_path("dlog.manifest"), no_cache());
    REQUIRE(o.exit_code == 0);
    json r = json::parse(o.machine);
    auto ctx = make_context({"x1", "x2"});
    DiffForm dl1 = DiffForm::term(ctx, mask_of({0}), RatFunc(1L) / RatFunc::var(0));
    DiffForm dl2 = DiffForm::term(ctx, mask_of({1}), RatFunc(1L) / RatFunc::var(1));
    DiffForm pi22 = -wedge(dl1, dl2);
    const json& pont = r["tasks"][0];
    CHECK(pont["task"] == "pontryagin");
    CHECK(pont["status"] == "pass");
    CHECK(pont["payload"]["Pi22"]["(U0,U1,U2)"] == pi22.to_string());
    CHECK(pont["payload"]["Pi31"].empty());
    CHECK(pont["payload"]["Pi40"].empty());
    const json& ch = r["tasks"][1];
    CHECK(ch["payload"]["ch22"]["(U0,U1,U2)"] == pi22.scaled(Rational(1, 2)).to_string());
    // the printed literal reads back to the same form
    CHECK(parse_form(pont["payload"]["Pi22"]["(U0,U1,U2)"].get<std::string>(), ctx) == pi22);
  }

  TEST_CASE("bad cocycle names the triple") {
    RunOutcome o = run_manifest_file(manifest_path("bad-cocycle.manifest"), no_cache());
    CHECK(o.exit_code == 2);
    CHECK(o.error.rfind("ValidationError", 0) == 0);
    CHECK(o.error.find("(a,b,c)") != std::string::npos);
  }

  TEST_CASE("schema errors") {
    CHECK(error_of("version: [1").rfind("ParseError", 0) == 0);
    CHECK(error_of("- 1\n- 2\n").rfind("ParseError", 0) == 0);
    CHECK(error_of("variables: [x]\ncharts: [U]\ntasks: []\n").find("version is required") != std::string::npos);
    CHECK(error_of("version: 2\nvariables: [x]\ncharts: [U]\ntasks: []\n").find("unsupported") != std::string::npos);
    CHECK(error_of("version: 1\nvariables: [x]\ncharts: [U]\ntasks: []\ncolour: red\n").find("'colour'") !=
          std::string::npos);
    CHECK(error_of("version: 1\nvariables: [x]\ncharts: [U]\ntasks: [integrate]\n").find("'integrate'") !=
          std::string::npos);
    CHECK(error_of("version: 1\nvariables: [x]\ncharts: [U, U]\ntasks: []\n").find("distinct") != std::string::npos);
    CHECK(error_of("version: 1\nvariables: [x]\ncharts: [U]\ntasks: [ch2]\n").find("needs a bundle") !=
          std::string::npos);
    CHECK(error_of("version: 1\nvariables: [x]\ncharts: [U]\ntasks: [eva-class]\n").find("frame") !=
          std::string::npos);
    CHECK(error_of("version: 1\nvariables: [x]\ncharts: [U]\ntasks: [verify-lemmas]\nlemmas: [nope]\n")
              .find("'nope'") != std::string::npos);
    CHECK(error_of("version: 1\nvariables: [x]\ncharts: [U]\ntasks: []\nbounds: {depth: 3}\n").find("'depth'") !=
          std::string::npos);

    const std::string head = "version: 1\nvariables: [x1, x2]\ncharts: [U0, U1]\n";
    const std::string bundle = "bundle: {rank: 1, cocycle: [{from: U0, to: U1, matrix: [[x1]]}]}\n";
    // unknown chart in a per-chart map
    CHECK(error_of(head + bundle + "connections: {U9: [[\"d(x1)\"]]}\ntasks: []\n").find("'U9'") !=
          std::string::npos);
    // malformed literal is a parse error, an unknown variable a validation error
    CHECK(error_of(head + bundle + "connections: {U0: [[\"d(x1\"]]}\ntasks: []\n").rfind("ParseError", 0) == 0);
    std::string unk = error_of(head + bundle + "connections: {U0: [[\"y*d(x1)\"]]}\ntasks: []\n");
    CHECK(unk.rfind("ValidationError", 0) == 0);
    CHECK(unk.find("UnknownVariable") != std::string::npos);
    // a 2-form where a connection entry must be a 1-form
    CHECK(error_of(head + bundle + "connections: {U0: [[\"d(x1)^d(x2)\"]]}\ntasks: []\n").find("DegreeError") !=
          std::string::npos);
    CHECK(error_of(head + "bundle: {rank: 2, cocycle: [{from: U0, to: U1, matrix: [[x1]]}]}\ntasks: []\n")
              .find("2 rows") != std::string::npos);
    // non-commuting frame
    CHECK(error_of(head + "frames: {U0: {fields: [[\"1\", \"0\"], [\"x1\", \"1\"]]}}\ntasks: []\n")
              .find("FrameInvalid") != std::string::npos);
    // transitions that are not mutually inverse
    CHECK(error_of(head + "transitions: [{from: U0, to: U1, forward: [\"x1 + x2\", x2], backward: [x1, x2]}]\n"
                          "tasks: []\n")
              .find("ChartMismatch") != std::string::npos);

    RunFlags f = no_cache();
    f.format = "yaml";
    CHECK(run_manifest_text(head + "tasks: []\n", f).exit_code == 2);
    CHECK(run_manifest_file("/nonexistent/x.manifest", no_cache()).exit_code == 2);
  }

  TEST_CASE("transition orientation does not matter") {
    // the same shear declared in both directions
    const std::string head = "version: 1\nvariables: [x1, x2]\ncharts: [U0, U1]\n";
    std::string a = head + "transitions: [{from: U0, to: U1, forward: [\"x1 + x2^2\", x2], backward: [\"x1 - x2^2\", x2]}]\n";
    std::string b = head + "transitions: [{from: U1, to: U0, forward: [\"x1 - x2^2\", x2], backward: [\"x1 + x2^2\", x2]}]\n";
    cli::Manifest ma = cli::parse_manifest(a + "tasks: []\n");
    cli::Manifest mb = cli::parse_manifest(b + "tasks: []\n");
    CHECK(ma.cover->transition(0, 1).images == mb.cover->transition(0, 1).images);
    CHECK(ma.cover->transition(1, 0).images == mb.cover->transition(1, 0).images);
  }

  TEST_CASE("frames on a shared cover") {
    RunOutcome o = run_manifest_text(kShared, no_cache());
    REQUIRE(o.exit_code == 0);
    json r = json::parse(o.machine);
    CHECK(r["tasks"][0]["task"] == "eva-class");
    CHECK(r["tasks"][1]["task"] == "compare-classes");
    CHECK(r["tasks"][1]["payload"].contains("primitive"));
    // the composite trivialization is not the identity here
    CHECK_FALSE(r["tasks"][0]["payload"]["b22"].empty());
    CHECK(r["status"] == "pass");
  }

  TEST_CASE("check-axioms reports every axiom per chart") {
    RunFlags f = no_cache();
    f.samples = 2;
    RunOutcome o = run_manifest_file(manifest_path("rank2.manifest"), f);
    REQUIRE(o.exit_code == 0);
    json r = json::parse(o.machine);
    const json& ax = r["tasks"][0]["payload"];
    for (const char* chart : {"U0", "U1"})
      for (const char* name : kCourantAxioms) {
        CHECK(ax[chart]["courant"][name]["passed"] == true);
        CHECK(ax[chart]["courant"][name]["checked"] == 2);
      }
    CHECK(r["bounds"]["samples"] == 2);

    // a non-closed H on a flat chart breaks admissibility and the Jacobi identity
    std::string text = "version: 1\nvariables: [x1, x2, x3]\ncharts: [U]\nprimitives: {U: \"x1*d(x1)^d(x2)^d(x3)\"}\n"
                       "tasks: [check-axioms]\nbounds: {samples: 4}\n";
    RunOutcome bad = run_manifest_text(text, no_cache());
    CHECK(bad.exit_code == 0);  // dH = 0 on three variables
    CHECK(error_of("version: 1\nvariables: [x1, x2, x3]\ncharts: [U]\nprimitives: {U: \"x1*d(x2)^d(x3)\"}\n"
                   "tasks: []\n")
              .find("3-form") != std::string::npos);
    text = "version: 1\nvariables: [x1, x2, x3, x4]\ncharts: [U]\nprimitives: {U: \"x1*d(x2)^d(x3)^d(x4)\"}\n"
           "tasks: [check-axioms]\nbounds: {samples: 4}\n";
    bad = run_manifest_text(text, no_cache());
    CHECK(bad.exit_code == 1);
    json br = json::parse(bad.machine);
    CHECK(br["tasks"][0]["status"] == "fail");
    CHECK(br["tasks"][0]["payload"]["U"]["courant"]["jacobi"]["passed"] == false);
    CHECK(br["tasks"][0]["payload"]["U"]["courant"]["leibniz"]["passed"] == true);
    CHECK(bad.text.find("witness: U courant not admissible") != std::string::npos);
  }

  TEST_CASE("verify-lemmas and mutations") {
    const std::string text =
        "version: 1\nvariables: [x1]\ncharts: [U]\ntasks: [verify-lemmas]\n"
        "lemmas: [cs-transgression, three-conns, vertex-axioms]\nbounds: {samples: 3}\n";
    RunOutcome o = run_manifest_text(text, no_cache());
    REQUIRE(o.exit_code == 0);
    json r = json::parse(o.machine);
    CHECK(r["tasks"][0]["payload"].size() == 3);

    RunFlags f = no_cache();
    f.mutation = "cs-sign";
    RunOutcome m = run_manifest_text(text, f);
    CHECK(m.exit_code == 1);
    json mr = json::parse(m.machine);
    CHECK(mr["mutation"] == "cs-sign");
    CHECK(mr["tasks"][0]["payload"]["cs-transgression"]["passed"] == false);
    CHECK(mr["tasks"][0]["payload"]["three-conns"]["passed"] == true);
    CHECK_FALSE(mr["tasks"][0]["witnesses"].empty());

    f.mutation = "no-such-mutation";
    CHECK(run_manifest_text(text, f).exit_code == 2);
  }

  TEST_CASE("machine reports are deterministic and cache-independent") {
    TempDir dir;
    RunFlags f;
    f.cache_dir = (dir.path / "cache").string();
    f.samples = 2;
    f.out = (dir.path / "first.json").string();
    RunOutcome a = run_manifest_file(manifest_path("rank2.manifest"), f);
    REQUIRE(a.exit_code == 0);
    for (const auto& [k, hit] : a.cache_hits) CHECK_FALSE(hit);

    f.out = (dir.path / "second.json").string();
    RunOutcome b = run_manifest_file(manifest_path("rank2.manifest"), f);
    for (const auto& [k, hit] : b.cache_hits) CHECK(hit);
    CHECK(a.machine == b.machine);
    std::ifstream i1(dir.path / "first.json"), i2(dir.path / "second.json");
    std::string s1((std::istreambuf_iterator<char>(i1)), {}), s2((std::istreambuf_iterator<char>(i2)), {});
    CHECK(s1 == a.machine);
    CHECK(s1 == s2);

    // parallel and uncached runs agree byte for byte
    RunFlags g = no_cache();
    g.samples = 2;
    g.parallel = true;
    CHECK(run_manifest_file(manifest_path("rank2.manifest"), g).machine == a.machine);

    // a torn cache entry is recomputed, not trusted
    for (const auto& e : fs::directory_iterator(f.cache_dir)) std::ofstream(e.path()) << "{\"status\":";
    f.out.clear();
    RunOutcome c = run_manifest_file(manifest_path("rank2.manifest"), f);
    for (const auto& [k, hit] : c.cache_hits) CHECK_FALSE(hit);
    CHECK(c.machine == a.machine);

    // a different seed is a different key
    f.seed = 99;
    RunOutcome d = run_manifest_file(manifest_path("rank2.manifest"), f);
    for (const auto& [k, hit] : d.cache_hits) CHECK_FALSE(hit);
    CHECK(json::parse(d.machine)["seed"] == 99);
  }

  TEST_CASE("cache directory from the environment") {
    TempDir dir;
    fs::path env_dir = dir.path / "env";
    setenv("ALGD_CACHE_DIR", env_dir.c_str(), 1);
    RunFlags f;
    RunOutcome o = run_manifest_file(manifest_path("dlog.manifest"), f);
    unsetenv("ALGD_CACHE_DIR");
    CHECK(o.exit_code == 0);
    CHECK(fs::exists(env_dir));
    CHECK(std::distance(fs::directory_iterator(env_dir), fs::directory_iterator{}) == 2);
  }

  TEST_CASE("sha256") {
    // FIPS 180-2 test vector
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  }
}
