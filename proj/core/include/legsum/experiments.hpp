#pragma once

#include "legsum/sumcalc.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace legsum {

// Parameters of the doubled-torus-knot family: p = -(4n+1)s - 1, q = 2s,
// with s the least even number above m + 1.
struct ExampleParams {
    int n = 1;
    int m = 0;
    int s = 2;
    int p = 0;
    int q = 0;
};

ExampleParams example_params(int n, int m);

// Distinctness record for one unordered pair of classes at the top point.
// distinct_through is the largest budget b <= m with no merge at any
// stabilization multiset of total size <= b; merged_at is the smallest
// merging total, or -1 when none exists within m.
struct PairDistinctness {
    int first = 0;
    int second = 0;
    int distinct_through = 0;
    int merged_at = -1;
};

struct ExampleReport {
    ExampleParams params;
    std::vector<TbR> peak_list;
    std::vector<std::pair<int, int>> pairs;
    TbR sum_point;
    int stated_count = 0;      // the advertised number of knots, n
    int constructed_count = 0; // classes the construction actually yields, 2n
    std::int64_t class_count = 0;
    std::vector<SumClassId> classes;
    std::vector<PairDistinctness> distinctness;
    bool pass = false;
};

ExampleReport build_examples(int n, int m);

std::string report_json(const ExampleReport& report);
std::string report_text(const ExampleReport& report);

struct AdditivityRow {
    std::string spec;
    int expected = 0;
    int observed = 0;
    bool ok = false;
};

struct AdditivityReport {
    std::vector<AdditivityRow> rows;
    bool pass = false;
};

// Sweeps each spec's window for the highest point with a nonzero class
// count and compares it with the summand maxima plus n - 1.  The default
// window reaches a little above that level so nothing higher can hide.
AdditivityReport check_tbbar_additivity(const std::vector<SumSpec>& specs,
                                        std::optional<Window> window = {});

std::string additivity_json(const AdditivityReport& report);
std::string additivity_text(const AdditivityReport& report);

struct SimplicityReport {
    std::vector<DiagonalVerdict> verdicts;
    int depth = 0;
    bool pass = false;
};

SimplicityReport check_transverse_simplicity(const SumSpec& spec, const Window& window,
                                             int depth);

std::string simplicity_json(const SimplicityReport& report);
std::string simplicity_text(const SimplicityReport& report);

// Mountain range of the single torus atlas, defaulting to a window a few
// levels below the peaks.
MountainRange figure_mountain(int p, int q, std::optional<Window> window = {});

std::string mountain_text(const MountainRange& range);
std::string mountain_svg(const MountainRange& range);

} // namespace legsum
