// Shared fixtures and generators for the test suites.
#pragma once

#include <legsum/atlas.hpp>
#include <legsum/front.hpp>
#include <legsum/sumcalc.hpp>
#include <legsum/tbr.hpp>

#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace testsupport {

using namespace legsum;

// A small presented atlas with two distinct top classes that merge one
// level down on either side.
inline PrimeAtlas twin_top_atlas() {
    return PrimeAtlas::presented(
        "chek", 0, true,
        {{"X", TbR{1, 0}}, {"Y", TbR{1, 0}}, {"P", TbR{0, 1}}, {"M", TbR{0, -1}}},
        {{"X", "P", StabSign::Plus},
         {"X", "M", StabSign::Minus},
         {"Y", "P", StabSign::Plus},
         {"Y", "M", StabSign::Minus}});
}

// Same atlas with the Y -> M edge missing, so stabilizing Y negatively
// must raise AtlasIncompleteError.
inline PrimeAtlas twin_top_gap_atlas() {
    return PrimeAtlas::presented(
        "chek-gap", 0, true,
        {{"X", TbR{1, 0}}, {"Y", TbR{1, 0}}, {"P", TbR{0, 1}}, {"M", TbR{0, -1}}},
        {{"X", "P", StabSign::Plus},
         {"X", "M", StabSign::Minus},
         {"Y", "P", StabSign::Plus}});
}

// Uniformly random valid closed single-component front with a handful of
// events.  Rejection-samples the single-component condition.
inline FrontDiagram random_front(std::mt19937& rng, int max_extra_events = 10) {
    for (;;) {
        FrontDiagram f;
        int strands = 0;
        const int budget = 2 + (int)(rng() % (unsigned)max_extra_events);
        for (int step = 0; step < budget; ++step) {
            const bool can_pair = strands >= 2;
            const unsigned kind = rng() % (can_pair ? 4u : 1u);
            if (kind == 0 || !can_pair) {
                if (strands >= 8) continue;
                f.events.push_back(left_cusp((int)(rng() % (unsigned)(strands + 1))));
                strands += 2;
            } else if (kind == 1) {
                f.events.push_back(right_cusp((int)(rng() % (unsigned)(strands - 1))));
                strands -= 2;
            } else {
                f.events.push_back(crossing((int)(rng() % (unsigned)(strands - 1))));
            }
        }
        while (strands > 0) {
            f.events.push_back(right_cusp((int)(rng() % (unsigned)(strands - 1 > 0 ? strands - 1 : 1))));
            strands -= 2;
        }
        if (validate_front(f).empty()) return f;
    }
}

struct CliResult {
    int status = -1;
    std::string out;
};

// Runs a shell command, capturing stdout (callers append 2>&1 if they want
// stderr too).  The CLI binary path is baked in as LEGSUM_CLI_PATH.
inline CliResult run_shell(const std::string& cmd) {
    CliResult r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int rc = pclose(p);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

inline std::string cli_path() { return LEGSUM_CLI_PATH; }

} // namespace testsupport
