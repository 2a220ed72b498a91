// Command-line surface for the legsum core library.
//
// One binary, git-style subcommands.  Every command is deterministic for
// fixed inputs and flags.  '-' names stdin wherever a file is expected,
// at most once per invocation.  Exit codes: 0 success, 1 internal error,
// 2 atlas graph incomplete, 3 invalid arguments or input data, 4 front
// diagram parse or validation failure.

#include <legsum/atlas.hpp>
#include <legsum/experiments.hpp>
#include <legsum/front.hpp>
#include <legsum/sumcalc.hpp>
#include <legsum/tbr.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::ordered_json;
using namespace legsum;

namespace {

// Raised for a front that parses but is not a valid closed diagram, so
// the top-level handler can map it to the same exit code as a parse error.
class FrontInvalid : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int g_exit = 0;
bool g_stdin_used = false;

std::string read_input(const std::string& path) {
    if (path == "-") {
        if (g_stdin_used)
            throw std::invalid_argument("stdin ('-') may back at most one input");
        g_stdin_used = true;
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& s) {
    std::cout << s;
    if (s.empty() || s.back() != '\n') std::cout << '\n';
}

// Atlas arguments accept a file path, '-', or one of two inline forms:
// "unknot" and "torus:P,Q".  A real file with one of those names wins.
PrimeAtlas load_atlas(const std::string& arg) {
    if (arg == "-" || std::filesystem::exists(arg)) return parse_atlas(read_input(arg));
    if (arg == "unknot") return unknot_atlas();
    if (arg.rfind("torus:", 0) == 0) {
        const std::string body = arg.substr(6);
        const auto comma = body.find(',');
        try {
            if (comma == std::string::npos) throw std::invalid_argument("no comma");
            std::size_t used1 = 0, used2 = 0;
            const int p = std::stoi(body.substr(0, comma), &used1);
            const int q = std::stoi(body.substr(comma + 1), &used2);
            if (used1 != comma || used2 != body.size() - comma - 1)
                throw std::invalid_argument("trailing junk");
            return torus_atlas(p, q);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("bad inline atlas '" + arg +
                                        "', expected torus:P,Q with integer P, Q");
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("bad inline atlas '" + arg + "', parameters out of range");
        }
    }
    throw std::invalid_argument("no atlas file '" + arg +
                                "' (inline forms: unknot, torus:P,Q)");
}

FrontDiagram load_front(const std::string& path) {
    FrontDiagram f = parse_front(read_input(path));
    const auto problems = validate_front(f);
    if (!problems.empty()) {
        std::string msg = "invalid front";
        if (path != "-") msg += " '" + path + "'";
        for (const auto& p : problems) msg += "\n  " + p;
        throw FrontInvalid(msg);
    }
    return f;
}

std::string sign_word(StabSign s) { return s == StabSign::Plus ? "+" : "-"; }

std::string atlas_text(const PrimeAtlas& a) {
    std::ostringstream out;
    out << "atlas: " << a.name() << '\n';
    out << "kind: " << (a.kind() == PrimeAtlas::Kind::Simple ? "simple" : "presented") << '\n';
    out << "max tb: " << max_tb(a) << '\n';
    out << "peaks:";
    for (TbR p : a.peak_points()) out << ' ' << to_string(p);
    out << '\n';
    if (a.kind() == PrimeAtlas::Kind::Presented) {
        out << "cutoff: " << a.cutoff() << '\n';
        out << "simple below: " << (a.simple_below() ? "yes" : "no") << '\n';
        out << "nodes:";
        for (const auto& n : a.nodes()) out << ' ' << n.id << '@' << to_string(n.point);
        out << '\n';
        out << "edges:";
        for (const auto& e : a.edges())
            out << ' ' << e.from << "-(" << sign_word(e.sign) << ")->" << e.to;
        out << '\n';
    }
    return out.str();
}

std::string tuple_text(const SumTuple& t) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out << ", ";
        out << to_string(t[i].point);
        if (!t[i].node.empty()) out << '@' << t[i].node;
    }
    out << ')';
    return out.str();
}

struct SpecArgs {
    std::vector<std::string> atlases;
    std::string adjacency = "cyclic";

    void attach(CLI::App* cmd) {
        cmd->add_option("--atlas", atlases,
                        "summand atlas: file path, '-', 'unknot', or 'torus:P,Q'; repeat "
                        "once per summand")
            ->required();
        cmd->add_option("--adjacency", adjacency, "shift relation shape")
            ->check(CLI::IsMember({"cyclic", "linear"}));
    }

    SumSpec build() const {
        std::vector<PrimeAtlas> summands;
        summands.reserve(atlases.size());
        for (const auto& a : atlases) summands.push_back(load_atlas(a));
        return SumSpec(std::move(summands),
                       adjacency == "linear" ? Adjacency::Linear : Adjacency::Cyclic);
    }
};

CLI::Option* attach_format(CLI::App* cmd, std::string& fmt, bool svg_ok) {
    std::vector<std::string> allowed = {"json", "text"};
    if (svg_ok) allowed.push_back("svg");
    return cmd->add_option("--format", fmt, "output format")
        ->envname("LEGSUM_FORMAT")
        ->check(CLI::IsMember(allowed));
}

Window window_or_throw(int tb_min, int tb_max, int r_min, int r_max) {
    const Window w{tb_min, tb_max, r_min, r_max};
    if (w.empty())
        throw std::invalid_argument("window is empty: need tb-min <= tb-max and r-min <= r-max");
    return w;
}

int sum_peak_r_extent(const SumSpec& spec) {
    int total = 0;
    for (const auto& a : spec.summands()) {
        int best = 0;
        for (TbR p : peaks(a)) best = std::max(best, std::abs(p.r));
        total += best;
    }
    return total;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Legendrian connected-sum calculator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "legsum 0.1.0");

    // ---- atlas ----------------------------------------------------------
    auto* atlas_cmd = app.add_subcommand("atlas", "build, inspect, and check atlases");
    atlas_cmd->require_subcommand(1);

    auto* atlas_torus = atlas_cmd->add_subcommand("torus", "negative torus knot atlas");
    int torus_p = 0, torus_q = 0;
    std::string atlas_torus_fmt = "json";
    atlas_torus->add_option("--p", torus_p, "longitude winding, p < 0")->required();
    atlas_torus->add_option("--q", torus_q, "meridian winding, 2 <= q < -p")->required();
    attach_format(atlas_torus, atlas_torus_fmt, false);
    atlas_torus->callback([&] {
        const PrimeAtlas a = torus_atlas(torus_p, torus_q);
        emit(atlas_torus_fmt == "text" ? atlas_text(a) : serialize_atlas(a));
    });

    auto* atlas_unknot = atlas_cmd->add_subcommand("unknot", "single-peak unknot atlas");
    std::string atlas_unknot_fmt = "json";
    attach_format(atlas_unknot, atlas_unknot_fmt, false);
    atlas_unknot->callback([&] {
        const PrimeAtlas a = unknot_atlas();
        emit(atlas_unknot_fmt == "text" ? atlas_text(a) : serialize_atlas(a));
    });

    auto* atlas_show = atlas_cmd->add_subcommand("show", "parse an atlas file and reprint it");
    std::string atlas_show_file;
    std::string atlas_show_fmt = "json";
    atlas_show->add_option("file", atlas_show_file, "atlas file, '-' for stdin")->required();
    attach_format(atlas_show, atlas_show_fmt, false);
    atlas_show->callback([&] {
        const PrimeAtlas a = parse_atlas(read_input(atlas_show_file));
        emit(atlas_show_fmt == "text" ? atlas_text(a) : serialize_atlas(a));
    });

    auto* atlas_validate =
        atlas_cmd->add_subcommand("validate", "check atlas invariants, exit 3 on problems");
    std::string atlas_validate_file;
    std::string atlas_validate_fmt = "json";
    atlas_validate->add_option("file", atlas_validate_file, "atlas file, '-' for stdin")
        ->required();
    attach_format(atlas_validate, atlas_validate_fmt, false);
    atlas_validate->callback([&] {
        const PrimeAtlas a = parse_atlas(read_input(atlas_validate_file));
        const auto problems = validate(a);
        if (atlas_validate_fmt == "text") {
            if (problems.empty()) {
                emit("ok");
            } else {
                for (const auto& p : problems) std::cout << p << '\n';
            }
        } else {
            json j;
            j["atlas"] = a.name();
            j["valid"] = problems.empty();
            j["problems"] = problems;
            emit(j.dump(2));
        }
        if (!problems.empty()) g_exit = 3;
    });

    // ---- sum ------------------------------------------------------------
    auto* sum_cmd = app.add_subcommand("sum", "classify connected sums of atlas summands");
    sum_cmd->require_subcommand(1);

    auto* sum_classify = sum_cmd->add_subcommand("classify", "classes at one (tb, r) point");
    SpecArgs classify_spec;
    int classify_tb = 0, classify_r = 0;
    std::string sum_classify_fmt = "json";
    classify_spec.attach(sum_classify);
    sum_classify->add_option("--tb", classify_tb, "Thurston-Bennequin invariant of the sum")
        ->required();
    sum_classify->add_option("--r", classify_r, "rotation number of the sum")->required();
    attach_format(sum_classify, sum_classify_fmt, false);
    sum_classify->callback([&] {
        const SumSpec spec = classify_spec.build();
        const TbR x{classify_tb, classify_r};
        const auto classes = classify(spec, x);
        if (sum_classify_fmt == "json") {
            emit(classes_json(spec, x, classes));
            return;
        }
        std::ostringstream out;
        out << "spec: " << spec.label() << '\n';
        out << "point: " << to_string(x) << '\n';
        out << "classes: " << classes.size() << '\n';
        for (const auto& c : classes)
            out << "  " << tuple_text(c.canonical) << "  size " << c.size << '\n';
        emit(out.str());
    });

    auto* sum_count = sum_cmd->add_subcommand("count", "class count at one (tb, r) point");
    SpecArgs count_spec;
    int count_tb = 0, count_r = 0;
    std::string sum_count_fmt = "json";
    count_spec.attach(sum_count);
    sum_count->add_option("--tb", count_tb, "Thurston-Bennequin invariant of the sum")
        ->required();
    sum_count->add_option("--r", count_r, "rotation number of the sum")->required();
    attach_format(sum_count, sum_count_fmt, false);
    sum_count->callback([&] {
        const SumSpec spec = count_spec.build();
        const TbR x{count_tb, count_r};
        const auto n = count(spec, x);
        if (sum_count_fmt == "text") {
            emit(std::to_string(n));
            return;
        }
        json j;
        j["spec"] = spec.label();
        j["tb"] = x.tb;
        j["r"] = x.r;
        j["count"] = n;
        emit(j.dump(2));
    });

    auto* sum_range = sum_cmd->add_subcommand("range", "class counts over a (tb, r) window");
    SpecArgs range_spec;
    int range_tb_min = 0, range_tb_max = 0, range_r_min = 0, range_r_max = 0;
    unsigned range_jobs = 1;
    std::string sum_range_fmt = "json";
    range_spec.attach(sum_range);
    sum_range->add_option("--tb-min", range_tb_min, "lowest tb row")->required();
    sum_range->add_option("--tb-max", range_tb_max, "highest tb row")->required();
    sum_range->add_option("--r-min", range_r_min, "leftmost r column")->required();
    sum_range->add_option("--r-max", range_r_max, "rightmost r column")->required();
    sum_range->add_option("--jobs", range_jobs, "worker threads, 0 = hardware")
        ->check(CLI::Range(0u, 4096u));
    attach_format(sum_range, sum_range_fmt, true);
    sum_range->callback([&] {
        const SumSpec spec = range_spec.build();
        const Window w = window_or_throw(range_tb_min, range_tb_max, range_r_min, range_r_max);
        unsigned jobs = range_jobs;
        if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
        const MountainRange range = mountain_range(spec, w, jobs);
        if (sum_range_fmt == "svg")
            emit(mountain_svg(range));
        else if (sum_range_fmt == "text")
            emit(mountain_text(range));
        else
            emit(range_json(range));
    });

    auto* sum_simple =
        sum_cmd->add_subcommand("simple", "flow s-diagonals down by negative stabilization");
    SpecArgs simple_spec;
    std::optional<int> simple_depth;
    std::optional<int> simple_tb_min, simple_tb_max, simple_r_min, simple_r_max;
    std::string sum_simple_fmt = "json";
    simple_spec.attach(sum_simple);
    sum_simple->add_option("--depth", simple_depth,
                           "largest merge charge to accept; default grows with the peak spread");
    sum_simple->add_option("--tb-min", simple_tb_min, "lowest tb row; default max tb - 10");
    sum_simple->add_option("--tb-max", simple_tb_max, "highest tb row; default max tb");
    sum_simple->add_option("--r-min", simple_r_min, "leftmost r column");
    sum_simple->add_option("--r-max", simple_r_max, "rightmost r column");
    attach_format(sum_simple, sum_simple_fmt, false);
    sum_simple->callback([&] {
        const SumSpec spec = simple_spec.build();
        const int top = max_tb_sum(spec);
        const int side = sum_peak_r_extent(spec) + 10;
        const Window w = window_or_throw(
            simple_tb_min.value_or(top - 10), simple_tb_max.value_or(top),
            simple_r_min.value_or(-side), simple_r_max.value_or(side));
        const int depth = simple_depth.value_or(default_simplicity_depth(spec));
        if (depth < 0) throw std::invalid_argument("depth must be non-negative");
        const SimplicityReport report = check_transverse_simplicity(spec, w, depth);
        emit(sum_simple_fmt == "text" ? simplicity_text(report) : simplicity_json(report));
    });

    // ---- examples -------------------------------------------------------
    auto* examples_cmd = app.add_subcommand("examples", "reproduce the headline computations");
    examples_cmd->require_subcommand(1);

    auto* examples_paper = examples_cmd->add_subcommand(
        "paper", "torus-sum family with many classes at one (tb, r) point");
    int examples_n = 1, examples_m = 0;
    std::string examples_fmt = "json";
    examples_paper->add_option("--n", examples_n, "pair count parameter, n >= 1");
    examples_paper->add_option("--m", examples_m, "stabilization budget the pairs survive");
    attach_format(examples_paper, examples_fmt, false);
    examples_paper->callback([&] {
        const ExampleReport report = build_examples(examples_n, examples_m);
        emit(examples_fmt == "text" ? report_text(report) : report_json(report));
    });

    // ---- front ----------------------------------------------------------
    auto* front_cmd = app.add_subcommand("front", "front diagram operations");
    front_cmd->require_subcommand(1);

    auto* front_invariants =
        front_cmd->add_subcommand("invariants", "classical invariants of a closed front");
    std::string front_invariants_file;
    std::string front_invariants_fmt = "json";
    front_invariants->add_option("file", front_invariants_file, "front file, '-' for stdin")
        ->required();
    attach_format(front_invariants, front_invariants_fmt, false);
    front_invariants->callback([&] {
        const FrontDiagram f = load_front(front_invariants_file);
        const FrontInvariants inv = invariants(f);
        if (front_invariants_fmt == "text") {
            std::ostringstream out;
            out << "tb: " << inv.tb << '\n';
            out << "r: " << inv.r << '\n';
            out << "writhe: " << inv.writhe << '\n';
            out << "right cusps: " << inv.right_cusps << '\n';
            out << "down cusps: " << inv.down_cusps << '\n';
            out << "up cusps: " << inv.up_cusps << '\n';
            emit(out.str());
            return;
        }
        json j;
        j["tb"] = inv.tb;
        j["r"] = inv.r;
        j["writhe"] = inv.writhe;
        j["right_cusps"] = inv.right_cusps;
        j["down_cusps"] = inv.down_cusps;
        j["up_cusps"] = inv.up_cusps;
        emit(j.dump(2));
    });

    auto* front_stabilize =
        front_cmd->add_subcommand("stabilize", "add one zigzag; prints the new front");
    std::string front_stabilize_file;
    std::string front_stabilize_sign;
    FrontLocation front_stabilize_loc;
    front_stabilize->add_option("file", front_stabilize_file, "front file, '-' for stdin")
        ->required();
    front_stabilize->add_option("--sign", front_stabilize_sign, "stabilization sign")
        ->required()
        ->check(CLI::IsMember({"+", "-", "plus", "minus"}));
    front_stabilize->add_option("--gap", front_stabilize_loc.gap,
                                "event gap holding the strand, 1-based");
    front_stabilize->add_option("--slot", front_stabilize_loc.slot,
                                "strand slot in that gap, 0 = topmost");
    front_stabilize->callback([&] {
        const FrontDiagram f = load_front(front_stabilize_file);
        const StabSign sign =
            (front_stabilize_sign == "+" || front_stabilize_sign == "plus") ? StabSign::Plus
                                                                            : StabSign::Minus;
        emit(serialize_front(stabilize_front(f, sign, front_stabilize_loc)));
    });

    auto* front_connect =
        front_cmd->add_subcommand("connect", "splice two fronts; prints the sum front");
    std::string front_connect_a, front_connect_b;
    std::string front_connect_convention = "nested";
    std::optional<int> front_connect_right, front_connect_left;
    front_connect->add_option("first", front_connect_a, "left operand front, '-' for stdin")
        ->required();
    front_connect->add_option("second", front_connect_b, "right operand front, '-' for stdin")
        ->required();
    front_connect->add_option("--convention", front_connect_convention, "splice routing shape")
        ->check(CLI::IsMember({"nested", "adjacent"}));
    auto* opt_site_right = front_connect->add_option(
        "--site-right", front_connect_right, "event index of the right cusp in the first front");
    auto* opt_site_left = front_connect->add_option(
        "--site-left", front_connect_left, "event index of the left cusp in the second front");
    opt_site_right->needs(opt_site_left);
    opt_site_left->needs(opt_site_right);
    front_connect->callback([&] {
        const FrontDiagram f1 = load_front(front_connect_a);
        const FrontDiagram f2 = load_front(front_connect_b);
        const SpliceConvention convention = front_connect_convention == "adjacent"
                                                ? SpliceConvention::Adjacent
                                                : SpliceConvention::Nested;
        const auto sites = splice_sites(f1, f2);
        const SpliceSite* chosen = nullptr;
        if (front_connect_right) {
            for (const auto& s : sites)
                if (s.right_cusp_event == *front_connect_right &&
                    s.left_cusp_event == *front_connect_left)
                    chosen = &s;
            if (!chosen)
                throw std::invalid_argument(
                    "no splice site joins right-cusp event " +
                    std::to_string(*front_connect_right) + " to left-cusp event " +
                    std::to_string(*front_connect_left));
        } else {
            for (const auto& s : sites)
                if (s.coherent && !chosen) chosen = &s;
            if (!chosen) chosen = &sites.front();
        }
        emit(serialize_front(connect_front(f1, f2, *chosen, convention)));
    });

    auto* front_plot = front_cmd->add_subcommand("plot", "draw a front diagram");
    std::string front_plot_file;
    std::string front_plot_fmt = "text";
    front_plot->add_option("file", front_plot_file, "front file, '-' for stdin")->required();
    attach_format(front_plot, front_plot_fmt, true);
    front_plot->callback([&] {
        const FrontDiagram f = parse_front(read_input(front_plot_file));
        emit(front_plot_fmt == "svg" ? plot_front_svg(f) : plot_front(f));
    });

    auto* front_twist =
        front_cmd->add_subcommand("twist", "maximal-tb front of a (-(2n+1), 2) torus knot");
    int front_twist_n = 1;
    front_twist->add_option("--n", front_twist_n, "half-twist pair count, n >= 1")->required();
    front_twist->callback([&] { emit(serialize_front(twist_front(front_twist_n))); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const AtlasIncompleteError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const FrontParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const FrontInvalid& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const InvalidSpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return g_exit;
}
