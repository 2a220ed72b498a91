#include "support.hpp"

#include <legsum/atlas.hpp>
#include <legsum/front.hpp>

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

using namespace legsum;
using testsupport::run_shell;

namespace {

namespace fs = std::filesystem;

const std::string& cli() {
    static const std::string path = testsupport::cli_path();
    return path;
}

// One shared directory of fixture files, written on first use.
const fs::path& fixtures() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("legsum-cli-" + std::to_string(::getpid()));
        fs::create_directories(d);
        auto put = [&](const char* name, const std::string& text) {
            std::ofstream(d / name) << text;
        };
        put("tref_plus.front",
            "b 0\nb 1\nx 0\nx 0\nx 1\nx 1\nd 0\nd 0\n");
        put("tref_minus.front",
            "b 0\nb 0\nx 1\nx 1\nx 0\nx 0\nd 1\nd 0\n");
        put("unknot.front", "b 0\nd 0\n");
        put("open.front", "b 0\n");
        put("badsyntax.front", "b zero\n");
        put("t52.json", serialize_atlas(torus_atlas(-5, 2)));
        put("gap.json", serialize_atlas(testsupport::twin_top_gap_atlas()));
        put("dominated.json",
            serialize_atlas(PrimeAtlas::simple("nested", {{-1, 0}, {-3, 2}})));
        return d;
    }();
    return dir;
}

std::string fx(const char* name) { return (fixtures() / name).string(); }

} // namespace

TEST_CASE("help and version") {
    const auto help = run_shell(cli() + " --help");
    CHECK(help.status == 0);
    CHECK(help.out.find("Legendrian connected-sum calculator") != std::string::npos);

    const auto version = run_shell(cli() + " --version");
    CHECK(version.status == 0);
    CHECK(version.out == "legsum 0.1.0\n");

    CHECK(run_shell(cli() + " sum classify --help").status == 0);
}

TEST_CASE("argument errors exit 3") {
    CHECK(run_shell(cli() + " 2>/dev/null").status == 3);
    CHECK(run_shell(cli() + " --no-such-flag 2>/dev/null").status == 3);
    CHECK(run_shell(cli() + " atlas 2>/dev/null").status == 3);
    CHECK(run_shell(cli() + " atlas torus --p -7 2>/dev/null").status == 3);
    CHECK(run_shell(cli() + " sum classify --tb -11 --r 0 2>/dev/null").status == 3);
    CHECK(run_shell(cli() + " atlas torus --p -7 --q 3 --format yaml 2>/dev/null").status == 3);
}

TEST_CASE("atlas torus matches the library serialization") {
    const auto r = run_shell(cli() + " atlas torus --p -7 --q 3");
    CHECK(r.status == 0);
    CHECK(r.out == serialize_atlas(torus_atlas(-7, 3)));

    const auto text = run_shell(cli() + " atlas torus --p -7 --q 3 --format text");
    CHECK(text.status == 0);
    CHECK(text.out ==
          "atlas: T(-7,3)\n"
          "kind: simple\n"
          "max tb: -21\n"
          "peaks: (-21,-4) (-21,-2) (-21,2) (-21,4)\n");

    CHECK(run_shell(cli() + " atlas torus --p -9 --q 3 2>/dev/null").status == 3);
    CHECK(run_shell(cli() + " atlas torus --p 7 --q 3 2>/dev/null").status == 3);
}

TEST_CASE("atlas unknot and show round-trip") {
    const auto u = run_shell(cli() + " atlas unknot --format text");
    CHECK(u.status == 0);
    CHECK(u.out.rfind("atlas: unknot\n", 0) == 0);

    const auto shown = run_shell(cli() + " atlas show " + fx("t52.json"));
    CHECK(shown.status == 0);
    CHECK(shown.out == serialize_atlas(torus_atlas(-5, 2)));

    const auto piped = run_shell(cli() + " atlas unknot | " + cli() + " atlas show -");
    CHECK(piped.status == 0);
    CHECK(piped.out == serialize_atlas(unknot_atlas()));

    CHECK(run_shell(cli() + " atlas show /no/such/file.json 2>/dev/null").status == 3);
}

TEST_CASE("atlas validate flags broken data") {
    const auto good = run_shell(cli() + " atlas validate " + fx("t52.json") + " --format text");
    CHECK(good.status == 0);
    CHECK(good.out == "ok\n");

    const auto bad = run_shell(cli() + " atlas validate " + fx("dominated.json") +
                               " --format text");
    CHECK(bad.status == 3);
    CHECK(bad.out == "peak dominated by peak: (-3,2) lies in the cone of (-1,0)\n");

    const auto bad_json = run_shell(cli() + " atlas validate " + fx("dominated.json"));
    CHECK(bad_json.status == 3);
    const auto j = nlohmann::json::parse(bad_json.out);
    CHECK(j["atlas"] == "nested");
    CHECK(j["valid"] == false);
    CHECK(j["problems"].size() == 1);
}

TEST_CASE("sum classify text and json") {
    const std::string spec = " --atlas torus:-3,2 --atlas torus:-3,2";
    const auto text =
        run_shell(cli() + " sum classify" + spec + " --tb -11 --r 0 --format text");
    CHECK(text.status == 0);
    CHECK(text.out ==
          "spec: T(-3,2) # T(-3,2)\n"
          "point: (-11,0)\n"
          "classes: 1\n"
          "  ((-6,-1), (-6,1))  size 2\n");

    const auto deep =
        run_shell(cli() + " sum classify" + spec + " --tb -12 --r 1 --format json");
    CHECK(deep.status == 0);
    const auto j = nlohmann::json::parse(deep.out);
    CHECK(j["count"] == 1);
    CHECK(j["classes"][0]["size"] == 4);
    CHECK(j["classes"][0]["canonical"] == nlohmann::json({{-7, 0}, {-6, 1}}));
}

TEST_CASE("sum count") {
    const std::string spec = " --atlas torus:-11,4 --atlas torus:-11,4";
    const auto text = run_shell(cli() + " sum count" + spec + " --tb -87 --r 0 --format text");
    CHECK(text.status == 0);
    CHECK(text.out == "2\n");

    const auto j = nlohmann::json::parse(
        run_shell(cli() + " sum count" + spec + " --tb -87 --r 0").out);
    CHECK(j["spec"] == "T(-11,4) # T(-11,4)");
    CHECK(j["count"] == 2);

    CHECK(run_shell(cli() + " sum count --atlas torus:bad --tb 0 --r 0 2>/dev/null").status ==
          3);
    CHECK(run_shell(cli() + " sum count --atlas nowhere.json --tb 0 --r 0 2>/dev/null")
              .status == 3);
}

TEST_CASE("sum range formats") {
    const std::string base = " sum range --atlas torus:-3,2 --atlas torus:-3,2"
                             " --tb-min -12 --tb-max -11 --r-min -2 --r-max 2";
    const auto j = nlohmann::json::parse(run_shell(cli() + base).out);
    CHECK(j["window"]["tb_max"] == -11);
    CHECK(j["rows"] == nlohmann::json({{1, 0, 1, 0, 1}, {0, 1, 0, 1, 0}}));

    const auto jobs = run_shell(cli() + base + " --jobs 3");
    CHECK(nlohmann::json::parse(jobs.out) == j);

    const auto text = run_shell(cli() + base + " --format text");
    CHECK(text.status == 0);
    CHECK(text.out.find("tb   -11") != std::string::npos);

    const auto svg = run_shell(cli() + base + " --format svg");
    CHECK(svg.status == 0);
    CHECK(svg.out.rfind("<svg", 0) == 0);

    CHECK(run_shell(cli() + " sum range --atlas unknot --tb-min 0 --tb-max -1 --r-min 0"
                            " --r-max 0 2>/dev/null")
              .status == 3);
}

TEST_CASE("sum simple") {
    const auto j = nlohmann::json::parse(
        run_shell(cli() + " sum simple --atlas unknot --atlas unknot").out);
    CHECK(j["depth"] == 4);
    CHECK(j["pass"] == true);

    const auto shallow = run_shell(
        cli() + " sum simple --atlas torus:-11,4 --atlas torus:-11,4 --depth 0"
                " --tb-min -87 --tb-max -87 --r-min 0 --r-max 0 --format text");
    CHECK(shallow.status == 0);
    CHECK(shallow.out.find("not-merged-at-depth (2 remain)") != std::string::npos);

    CHECK(run_shell(cli() + " sum simple --atlas unknot --depth -1 2>/dev/null").status == 3);
}

TEST_CASE("examples report subcommand") {
    const auto j = nlohmann::json::parse(run_shell(cli() + " examples paper").out);
    CHECK(j["n"] == 1);
    CHECK(j["m"] == 0);
    CHECK(j["class_count"] == 2);
    CHECK(j["pass"] == true);

    const auto text = run_shell(cli() + " examples paper --format text");
    CHECK(text.status == 0);
    CHECK(text.out.find("classes found: 2") != std::string::npos);
}

TEST_CASE("front invariants") {
    const auto j = nlohmann::json::parse(
        run_shell(cli() + " front invariants " + fx("tref_plus.front")).out);
    CHECK(j["tb"] == -6);
    CHECK(j["r"] == 1);
    CHECK(j["writhe"] == -4);
    CHECK(j["right_cusps"] == 2);

    const auto text = run_shell(cli() + " front invariants " + fx("tref_minus.front") +
                                " --format text");
    CHECK(text.status == 0);
    CHECK(text.out ==
          "tb: -6\n"
          "r: -1\n"
          "writhe: -4\n"
          "right cusps: 2\n"
          "down cusps: 1\n"
          "up cusps: 3\n");
}

TEST_CASE("front error exit codes") {
    CHECK(run_shell(cli() + " front invariants /no/such.front 2>/dev/null").status == 3);
    CHECK(run_shell(cli() + " front invariants " + fx("badsyntax.front") + " 2>/dev/null")
              .status == 4);
    CHECK(run_shell(cli() + " front invariants " + fx("open.front") + " 2>/dev/null").status ==
          4);
    CHECK(run_shell(cli() + " front stabilize " + fx("open.front") +
                    " --sign + 2>/dev/null")
              .status == 4);
    // Plot only needs a parse, not a closed diagram.
    CHECK(run_shell(cli() + " front plot " + fx("open.front")).status == 0);
}

TEST_CASE("front stabilize emits a loadable front") {
    const auto r = run_shell(cli() + " front stabilize " + fx("unknot.front") + " --sign +");
    CHECK(r.status == 0);
    const FrontInvariants inv = invariants(parse_front(r.out));
    CHECK(inv.tb == -2);
    CHECK(inv.r == 1);

    const auto minus = run_shell(cli() + " front stabilize " + fx("tref_plus.front") +
                                 " --sign minus --gap 3 --slot 2");
    CHECK(minus.status == 0);
    CHECK(invariants(parse_front(minus.out)).tbr() == TbR{-7, 0});

    CHECK(run_shell(cli() + " front stabilize " + fx("unknot.front") +
                    " --sign + --gap 9 2>/dev/null")
              .status == 3);
}

TEST_CASE("front connect") {
    const auto r = run_shell(cli() + " front connect " + fx("tref_plus.front") + " " +
                             fx("tref_minus.front"));
    CHECK(r.status == 0);
    CHECK(invariants(parse_front(r.out)).tbr() == TbR{-11, 0});

    const auto adj = run_shell(cli() + " front connect " + fx("tref_plus.front") + " " +
                               fx("tref_minus.front") + " --convention adjacent");
    CHECK(adj.status == 0);
    CHECK(invariants(parse_front(adj.out)).tbr() == TbR{-11, 0});

    const auto site = run_shell(cli() + " front connect " + fx("tref_plus.front") + " " +
                                fx("tref_minus.front") + " --site-right 6 --site-left 1");
    CHECK(site.status == 0);
    CHECK(invariants(parse_front(site.out)).tb == -11);

    CHECK(run_shell(cli() + " front connect " + fx("tref_plus.front") + " " +
                    fx("tref_minus.front") + " --site-right 6 2>/dev/null")
              .status == 3);
    CHECK(run_shell(cli() + " front connect " + fx("tref_plus.front") + " " +
                    fx("tref_minus.front") + " --site-right 0 --site-left 0 2>/dev/null")
              .status == 3);
}

TEST_CASE("front plot") {
    const auto art = run_shell(cli() + " front plot " + fx("unknot.front"));
    CHECK(art.status == 0);
    CHECK(art.out.find("/--") != std::string::npos);

    const auto svg = run_shell(cli() + " front plot " + fx("unknot.front") + " --format svg");
    CHECK(svg.status == 0);
    CHECK(svg.out.rfind("<svg", 0) == 0);
}

TEST_CASE("front twist pipelines into invariants") {
    const auto r = run_shell(cli() + " front twist --n 3 | " + cli() +
                             " front invariants - --format text");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("tb: -14\nr: -1\n", 0) == 0);

    CHECK(run_shell(cli() + " front twist --n 0 2>/dev/null").status == 3);
    CHECK(run_shell(cli() + " front twist 2>/dev/null").status == 3);
}

TEST_CASE("format picks up the environment") {
    const auto env = run_shell("LEGSUM_FORMAT=text " + cli() +
                               " sum count --atlas unknot --atlas unknot --tb -1 --r 0");
    CHECK(env.status == 0);
    CHECK(env.out == "1\n");

    // An explicit flag beats the environment.
    const auto flag = run_shell("LEGSUM_FORMAT=text " + cli() +
                                " sum count --atlas unknot --atlas unknot --tb -1 --r 0"
                                " --format json");
    CHECK(flag.status == 0);
    CHECK(nlohmann::json::parse(flag.out)["count"] == 1);
}

TEST_CASE("incomplete atlas data exits 2") {
    const auto r = run_shell(cli() + " sum classify --atlas " + fx("gap.json") +
                             " --atlas unknot --tb 0 --r -1 2>&1");
    CHECK(r.status == 2);
    CHECK(r.out.find("node 'Y' has no S- edge") != std::string::npos);
}

TEST_CASE("stdin may back only one input") {
    const auto r = run_shell("cat " + fx("unknot.front") + " | " + cli() +
                             " front connect - - 2>&1");
    CHECK(r.status == 3);
    CHECK(r.out.find("stdin ('-') may back at most one input") != std::string::npos);
}
