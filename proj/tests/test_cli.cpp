#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prejsim/cli.hpp"
#include "prejsim/scenario.hpp"

using namespace prejsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("prejsim_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

constexpr const char* kTinyScenario = R"({
  "label": "tiny",
  "groups": [
    {"name": "A", "size": 4, "prejudiced_fraction": 1.0, "targets": ["B"]},
    {"name": "B", "size": 4}
  ],
  "params": {"faction_size": 2}
})";

constexpr const char* kSpanningScenario = R"({
  "label": "spans",
  "groups": [{"name": "A", "size": 2}, {"name": "B", "size": 2}],
  "params": {"faction_size": 2},
  "factions": [
    {"group": "A", "members": [0, 2]},
    {"group": "A", "members": [1, 3]}
  ]
})";

}  // namespace

TEST_CASE("list and print presets") {
    auto r = cli({"list-presets"});
    CHECK(r.code == kExitOk);
    for (const auto& name : preset_names()) CHECK(r.out.find(name) != std::string::npos);

    r = cli({"preset", "r1_concentration"});
    CHECK(r.code == kExitOk);
    CHECK(family_from_json(Json::parse(r.out)) == preset("r1_concentration"));

    r = cli({"preset", "nope"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("nope") != std::string::npos);
}

TEST_CASE("usage errors") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"run", "--preset", "r1_concentration", "--iterations", "0"}).code == kExitUsage);
    CHECK(cli({"run", "--preset", "r1_concentration", "--point", "eps_0.3"}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("validate") {
    const auto dir = scratch("validate");
    std::ofstream(dir / "good.json") << kTinyScenario;
    std::ofstream(dir / "spans.json") << kSpanningScenario;
    std::ofstream(dir / "broken.json") << "{ not json";

    auto r = cli({"validate", (dir / "good.json").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("ok (1 point)") != std::string::npos);

    r = cli({"validate", (dir / "spans.json").string()});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("faction 0") != std::string::npos);
    CHECK(r.err.find("spans") != std::string::npos);

    CHECK(cli({"validate", (dir / "broken.json").string()}).code == kExitConfig);
    CHECK(cli({"validate", (dir / "missing.json").string()}).code == kExitIo);
    fs::remove_all(dir);
}

TEST_CASE("run writes per-point outputs") {
    const auto dir = scratch("run");
    std::ofstream(dir / "tiny.json") << kTinyScenario;
    const auto out = dir / "out";
    auto r = cli({"run", (dir / "tiny.json").string(), "--iterations", "200", "--repetitions", "2",
                  "--stride", "50", "--seed", "7", "--out", out.string()});
    CHECK(r.code == kExitOk);
    for (const char* f : {"series.csv", "summary.csv", "run.meta"}) CHECK(fs::exists(out / "tiny" / f));
    CHECK(fs::exists(out / "preset_summary.csv"));

    r = cli({"run", "--preset", "r1_concentration", "--point", "eps_0.2", "--iterations", "100",
             "--repetitions", "1", "--memory-semantics", "own", "--out", out.string()});
    CHECK(r.code == kExitOk);
    std::ifstream meta(out / "eps_0.2" / "run.meta");
    std::stringstream text;
    text << meta.rdbuf();
    CHECK(text.str().find("memory_semantics=own") != std::string::npos);
    CHECK_FALSE(fs::exists(out / "eps_0.4"));

    CHECK(cli({"run", "--preset", "r1_concentration", "--memory-semantics", "maybe"}).code == kExitUsage);
    CHECK(cli({"run", (dir / "absent.json").string()}).code == kExitIo);
    fs::remove_all(dir);
}

TEST_CASE("output directory from the environment") {
    const auto dir = scratch("env");
    std::ofstream(dir / "tiny.json") << kTinyScenario;
    ::setenv(kOutDirEnv, (dir / "envout").string().c_str(), 1);
    const auto r = cli({"run", (dir / "tiny.json").string(), "--iterations", "10", "--repetitions", "1"});
    ::unsetenv(kOutDirEnv);
    CHECK(r.code == kExitOk);
    CHECK(fs::exists(dir / "envout" / "tiny" / "series.csv"));
    fs::remove_all(dir);
}
