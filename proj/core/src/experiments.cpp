#include "legsum/experiments.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

namespace legsum {

namespace {

using ordered_json = nlohmann::ordered_json;

int max_abs_peak_r(const PrimeAtlas& atlas) {
    int out = 0;
    for (TbR p : peaks(atlas)) out = std::max(out, std::abs(p.r));
    return out;
}

ordered_json tbr_json(TbR x) { return ordered_json::array({x.tb, x.r}); }

ordered_json class_json(const SumClassId& c) {
    ordered_json e;
    auto& tup = e["canonical"] = ordered_json::array();
    for (const auto& ref : c.canonical) {
        ordered_json r = ordered_json::array({ref.point.tb, ref.point.r});
        if (!ref.node.empty()) r.push_back(ref.node);
        tup.push_back(std::move(r));
    }
    e["size"] = c.size;
    return e;
}

std::string tuple_text(const SumTuple& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t[i].point);
        if (!t[i].node.empty()) out += "@" + t[i].node;
    }
    out += ")";
    return out;
}

} // namespace

ExampleParams example_params(int n, int m) {
    if (n < 1) throw std::invalid_argument("build_examples: n must be at least 1");
    if (m < 0) throw std::invalid_argument("build_examples: m must be non-negative");
    ExampleParams p;
    p.n = n;
    p.m = m;
    p.s = m + 2;
    if (p.s % 2 != 0) ++p.s; // smallest even integer exceeding m + 1
    p.p = -(4 * n + 1) * p.s - 1;
    p.q = 2 * p.s;
    return p;
}

ExampleReport build_examples(int n, int m) {
    ExampleReport rep;
    rep.params = example_params(n, m);
    const PrimeAtlas atlas = torus_atlas(rep.params.p, rep.params.q);
    rep.peak_list = peaks(atlas);

    // The construction pairs each listed rotation number with its negative.
    std::set<int> expected;
    for (int k = 0; k < 2 * n; ++k) {
        const int a = (4 * n - 1 - 4 * k) * rep.params.s + 1;
        rep.pairs.push_back({a, -a});
        expected.insert(a);
        expected.insert(-a);
    }
    std::set<int> got;
    for (TbR p : rep.peak_list) got.insert(p.r);
    const bool peaks_match = expected == got;

    const int pq = rep.params.p * rep.params.q;
    rep.sum_point = {2 * pq + 1, 0};
    rep.stated_count = n;
    rep.constructed_count = 2 * n;

    SumSpec spec({atlas, atlas});
    rep.classes = classify(spec, rep.sum_point);
    rep.class_count = static_cast<std::int64_t>(rep.classes.size());

    std::vector<SumClassId> built;
    std::set<SumTuple> built_canonicals;
    for (auto [a, b] : rep.pairs) {
        const SumTuple t{{TbR{pq, a}, ""}, {TbR{pq, b}, ""}};
        built.push_back(class_of(spec, t));
        built_canonicals.insert(built.back().canonical);
    }

    std::set<SumTuple> listed;
    for (const auto& c : rep.classes) listed.insert(c.canonical);
    const bool classes_match =
        built_canonicals == listed && built_canonicals.size() == built.size();

    bool all_distinct = true;
    for (std::size_t a = 0; a < built.size(); ++a) {
        for (std::size_t b = a + 1; b < built.size(); ++b) {
            PairDistinctness d;
            d.first = static_cast<int>(a);
            d.second = static_cast<int>(b);
            d.distinct_through = -1;
            d.merged_at = -1;
            for (int budget = 0; budget <= m; ++budget) {
                if (distinct_after_stabilizations(spec, built[a], built[b], budget,
                                                  StabOrder::Multiset)) {
                    d.distinct_through = budget;
                } else {
                    d.merged_at = budget;
                    break;
                }
            }
            if (d.distinct_through != m) all_distinct = false;
            rep.distinctness.push_back(d);
        }
    }

    rep.pass = peaks_match && classes_match && rep.class_count == 2 * n && all_distinct;
    return rep;
}

std::string report_json(const ExampleReport& rep) {
    ordered_json j;
    j["n"] = rep.params.n;
    j["m"] = rep.params.m;
    j["s"] = rep.params.s;
    j["p"] = rep.params.p;
    j["q"] = rep.params.q;
    j["sum"] = tbr_json(rep.sum_point);
    auto& pk = j["peaks"] = ordered_json::array();
    for (TbR p : rep.peak_list) pk.push_back(tbr_json(p));
    auto& pr = j["pairs"] = ordered_json::array();
    for (auto [a, b] : rep.pairs) pr.push_back(ordered_json::array({a, b}));
    j["stated_count"] = rep.stated_count;
    j["constructed_count"] = rep.constructed_count;
    j["class_count"] = rep.class_count;
    auto& cls = j["classes"] = ordered_json::array();
    for (const auto& c : rep.classes) cls.push_back(class_json(c));
    auto& dist = j["distinctness"] = ordered_json::array();
    for (const auto& d : rep.distinctness) {
        ordered_json e;
        e["first"] = d.first;
        e["second"] = d.second;
        e["distinct_through"] = d.distinct_through;
        e["merged_at"] = d.merged_at;
        dist.push_back(std::move(e));
    }
    j["pass"] = rep.pass;
    return j.dump(2) + "\n";
}

std::string report_text(const ExampleReport& rep) {
    std::ostringstream out;
    out << "examples n=" << rep.params.n << " m=" << rep.params.m << ": s=" << rep.params.s
        << ", torus (" << rep.params.p << "," << rep.params.q << ")\n";
    out << "sum point " << to_string(rep.sum_point) << "\n";
    out << "peak pairs:";
    for (auto [a, b] : rep.pairs) out << " {" << a << "," << b << "}";
    out << "\n";
    out << "classes found: " << rep.class_count << " (construction lists "
        << rep.constructed_count << ", statement says " << rep.stated_count << ")\n";
    for (const auto& c : rep.classes)
        out << "  " << tuple_text(c.canonical) << " size " << c.size << "\n";
    for (const auto& d : rep.distinctness) {
        out << "pair " << d.first << "/" << d.second << ": ";
        if (d.merged_at >= 0)
            out << "merged at budget " << d.merged_at << "\n";
        else
            out << "distinct through budget " << d.distinct_through << "\n";
    }
    out << (rep.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

AdditivityReport check_tbbar_additivity(const std::vector<SumSpec>& specs,
                                        std::optional<Window> window) {
    AdditivityReport rep;
    rep.pass = true;
    for (const auto& spec : specs) {
        AdditivityRow row;
        row.spec = spec.label();
        row.expected = max_tb_sum(spec);

        Window w;
        if (window) {
            w = *window;
        } else {
            int spread = 0;
            for (std::size_t i = 0; i < spec.size(); ++i) spread += max_abs_peak_r(spec.atlas(i));
            w = Window{row.expected - 3, row.expected + 2, -(spread + 4), spread + 4};
        }

        row.observed = w.tb_min - 1;
        for (int tb = w.tb_max; tb >= w.tb_min && row.observed < w.tb_min; --tb)
            for (int r = w.r_min; r <= w.r_max; ++r)
                if (count(spec, TbR{tb, r}) > 0) {
                    row.observed = tb;
                    break;
                }
        row.ok = row.observed == row.expected;
        if (!row.ok) rep.pass = false;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string additivity_json(const AdditivityReport& rep) {
    ordered_json j;
    auto& rows = j["rows"] = ordered_json::array();
    for (const auto& r : rep.rows) {
        ordered_json e;
        e["spec"] = r.spec;
        e["expected"] = r.expected;
        e["observed"] = r.observed;
        e["ok"] = r.ok;
        rows.push_back(std::move(e));
    }
    j["pass"] = rep.pass;
    return j.dump(2) + "\n";
}

std::string additivity_text(const AdditivityReport& rep) {
    std::ostringstream out;
    for (const auto& r : rep.rows)
        out << r.spec << ": expected " << r.expected << ", observed " << r.observed << " "
            << (r.ok ? "ok" : "MISMATCH") << "\n";
    out << (rep.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

SimplicityReport check_transverse_simplicity(const SumSpec& spec, const Window& window,
                                             int depth) {
    for (std::size_t i = 0; i < spec.size(); ++i)
        if (spec.atlas(i).kind() != PrimeAtlas::Kind::Simple)
            throw InvalidSpecError("transverse simplicity check needs simple atlases");
    SimplicityReport rep;
    rep.depth = depth;
    rep.verdicts = transversally_simple_check(spec, window, depth);
    rep.pass = true;
    for (const auto& v : rep.verdicts)
        if (!v.merged) rep.pass = false;
    return rep;
}

std::string simplicity_json(const SimplicityReport& rep) {
    ordered_json j;
    j["depth"] = rep.depth;
    auto& rows = j["diagonals"] = ordered_json::array();
    for (const auto& v : rep.verdicts) {
        ordered_json e;
        e["s"] = v.s;
        e["top"] = tbr_json(v.top);
        e["window_points"] = v.window_points;
        e["top_classes"] = v.top_classes;
        e["origins"] = v.origins;
        e["verdict"] = v.merged ? "stably-simple-within-depth" : "not-merged-at-depth";
        if (v.merged)
            e["depth_used"] = v.depth_used;
        else
            e["remaining"] = v.remaining;
        rows.push_back(std::move(e));
    }
    j["pass"] = rep.pass;
    return j.dump(2) + "\n";
}

std::string simplicity_text(const SimplicityReport& rep) {
    std::ostringstream out;
    out << "depth " << rep.depth << "\n";
    for (const auto& v : rep.verdicts) {
        out << "s=" << v.s << " top " << to_string(v.top) << " classes " << v.top_classes << ": ";
        if (v.merged)
            out << "stably-simple-within-depth (used " << v.depth_used << ")\n";
        else
            out << "not-merged-at-depth (" << v.remaining << " remain)\n";
    }
    out << (rep.pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

MountainRange figure_mountain(int p, int q, std::optional<Window> window) {
    const PrimeAtlas atlas = torus_atlas(p, q);
    SumSpec spec({atlas});
    Window w;
    if (window) {
        w = *window;
    } else {
        const int top = max_tb(atlas);
        const int spread = max_abs_peak_r(atlas) + 6;
        w = Window{top - 6, top, -spread, spread};
    }
    return mountain_range(spec, w);
}

std::string mountain_text(const MountainRange& range) {
    if (range.window.empty() || range.counts.empty()) return "(empty)\n";
    std::ostringstream out;
    out << std::setw(8) << "r:";
    for (int r = range.window.r_min; r <= range.window.r_max; ++r) out << std::setw(4) << r;
    out << "\n";
    for (int tb = range.window.tb_max; tb >= range.window.tb_min; --tb) {
        out << "tb" << std::setw(6) << tb;
        for (int r = range.window.r_min; r <= range.window.r_max; ++r) {
            const std::int64_t c = range.at(TbR{tb, r});
            if (c == 0)
                out << std::setw(4) << ".";
            else
                out << std::setw(4) << c;
        }
        out << "\n";
    }
    return out.str();
}

std::string mountain_svg(const MountainRange& range) {
    const int cw = 28, ch = 22, margin = 40;
    if (range.window.empty() || range.counts.empty())
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"80\" height=\"40\"/>\n";
    const int ncols = range.window.r_max - range.window.r_min + 1;
    const int nrows = range.window.tb_max - range.window.tb_min + 1;
    const int width = margin + ncols * cw + 10;
    const int height = margin + nrows * ch + 10;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"monospace\" font-size=\"11\">\n";
    for (int r = range.window.r_min; r <= range.window.r_max; ++r)
        svg << "<text x=\"" << margin + (r - range.window.r_min) * cw + cw / 2
            << "\" y=\"" << margin - 8 << "\" text-anchor=\"middle\">" << r << "</text>\n";
    for (int tb = range.window.tb_max; tb >= range.window.tb_min; --tb) {
        const int row = range.window.tb_max - tb;
        svg << "<text x=\"" << margin - 6 << "\" y=\"" << margin + row * ch + ch - 7
            << "\" text-anchor=\"end\">" << tb << "</text>\n";
        for (int r = range.window.r_min; r <= range.window.r_max; ++r) {
            const int col = r - range.window.r_min;
            const std::int64_t c = range.at(TbR{tb, r});
            const int x = margin + col * cw, y = margin + row * ch;
            svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cw << "\" height=\""
                << ch << "\" fill=\"" << (c > 0 ? "#cfe3f7" : "#f6f6f6")
                << "\" stroke=\"#bbb\"/>\n";
            if (c > 0)
                svg << "<text x=\"" << x + cw / 2 << "\" y=\"" << y + ch - 7
                    << "\" text-anchor=\"middle\">" << c << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace legsum
