#include "legsum/front.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace legsum {

namespace {

enum Role : int { RoleUpper = 0, RoleLower = 1, RoleUR = 2, RoleLR = 3 };

struct SegEnd {
    std::size_t event = SIZE_MAX;
    int role = -1;
};

struct Segment {
    SegEnd left, right;
};

// Everything the rest of the module needs to know about a diagram, computed
// by one structural walk plus one oriented traversal.
struct Trace {
    std::vector<std::string> problems;
    std::vector<int> counts_before; // strand count ahead of each column, plus final
    int components = 0;
    int writhe = 0;
    int right_cusps = 0;
    int down = 0;
    int up = 0;
    // Right cusps: did the traversal enter on the upper strand (moving right)?
    std::map<std::size_t, bool> enter_upper;
    // Left cusps: does the traversal leave rightward on the upper strand?
    std::map<std::size_t, bool> exit_upper;

    bool ok() const { return problems.empty(); }
};

Trace trace(const FrontDiagram& f) {
    Trace out;
    const auto& ev = f.events;
    if (ev.empty()) {
        out.problems.push_back("diagram has no events");
        return out;
    }

    // Structural pass: slot ranges and closure.
    int cnt = 0;
    out.counts_before.reserve(ev.size() + 1);
    for (std::size_t k = 0; k < ev.size(); ++k) {
        out.counts_before.push_back(cnt);
        const auto& e = ev[k];
        std::ostringstream msg;
        switch (e.type) {
        case FrontEvent::Type::LeftCusp:
            if (e.slot < 0 || e.slot > cnt) {
                msg << "event " << k << ": left cusp at slot " << e.slot << " with " << cnt
                    << " strands";
                out.problems.push_back(msg.str());
                return out;
            }
            cnt += 2;
            break;
        case FrontEvent::Type::RightCusp:
            if (e.slot < 0 || e.slot + 1 >= cnt) {
                msg << "event " << k << ": right cusp at slot " << e.slot << " with " << cnt
                    << " strands";
                out.problems.push_back(msg.str());
                return out;
            }
            cnt -= 2;
            break;
        case FrontEvent::Type::Crossing:
            if (e.slot < 0 || e.slot + 1 >= cnt) {
                msg << "event " << k << ": crossing at slot " << e.slot << " with " << cnt
                    << " strands";
                out.problems.push_back(msg.str());
                return out;
            }
            break;
        }
    }
    out.counts_before.push_back(cnt);
    if (cnt != 0) {
        std::ostringstream msg;
        msg << "diagram leaves " << cnt << " strands open";
        out.problems.push_back(msg.str());
        return out;
    }

    // Segment graph: one entry per horizontal arc between events.
    std::vector<Segment> segs;
    std::vector<std::array<std::size_t, 4>> incident(ev.size(), {SIZE_MAX, SIZE_MAX, SIZE_MAX, SIZE_MAX});
    std::vector<std::size_t> cur;
    for (std::size_t k = 0; k < ev.size(); ++k) {
        const auto& e = ev[k];
        const std::size_t i = static_cast<std::size_t>(e.slot);
        switch (e.type) {
        case FrontEvent::Type::LeftCusp: {
            const std::size_t a = segs.size();
            segs.push_back({{k, RoleUpper}, {}});
            const std::size_t b = segs.size();
            segs.push_back({{k, RoleLower}, {}});
            incident[k] = {a, b, SIZE_MAX, SIZE_MAX};
            cur.insert(cur.begin() + i, {a, b});
            break;
        }
        case FrontEvent::Type::RightCusp: {
            const std::size_t a = cur[i], b = cur[i + 1];
            segs[a].right = {k, RoleUpper};
            segs[b].right = {k, RoleLower};
            incident[k] = {a, b, SIZE_MAX, SIZE_MAX};
            cur.erase(cur.begin() + i, cur.begin() + i + 2);
            break;
        }
        case FrontEvent::Type::Crossing: {
            const std::size_t ul = cur[i], ll = cur[i + 1];
            segs[ul].right = {k, RoleUpper};
            segs[ll].right = {k, RoleLower};
            const std::size_t ur = segs.size();
            segs.push_back({{k, RoleUR}, {}});
            const std::size_t lr = segs.size();
            segs.push_back({{k, RoleLR}, {}});
            incident[k] = {ul, ll, ur, lr};
            cur[i] = ur;
            cur[i + 1] = lr;
            break;
        }
        }
    }

    // Oriented traversal. Each segment is covered exactly once; the first
    // loop starts rightward on the upper strand of the first left cusp.
    enum class Dir { Right, Left };
    std::vector<char> visited(segs.size(), 0);
    std::map<std::size_t, std::vector<Dir>> crossing_dirs;

    std::size_t first_cusp = SIZE_MAX;
    for (std::size_t k = 0; k < ev.size(); ++k)
        if (ev[k].type == FrontEvent::Type::LeftCusp) {
            first_cusp = k;
            break;
        }

    auto walk = [&](std::size_t start, bool record) {
        std::size_t s = start;
        Dir dir = Dir::Right;
        do {
            visited[s] = 1;
            if (dir == Dir::Right) {
                const SegEnd end = segs[s].right;
                const auto& e = ev[end.event];
                if (e.type == FrontEvent::Type::RightCusp) {
                    if (record) {
                        if (end.role == RoleUpper) ++out.down;
                        else ++out.up;
                        out.enter_upper[end.event] = end.role == RoleUpper;
                    }
                    s = incident[end.event][end.role == RoleUpper ? RoleLower : RoleUpper];
                    dir = Dir::Left;
                } else { // crossing entered from the left
                    crossing_dirs[end.event].push_back(dir);
                    s = incident[end.event][end.role == RoleUpper ? RoleLR : RoleUR];
                }
            } else {
                const SegEnd end = segs[s].left;
                const auto& e = ev[end.event];
                if (e.type == FrontEvent::Type::LeftCusp) {
                    if (record) {
                        if (end.role == RoleLower) ++out.up;
                        else ++out.down;
                        out.exit_upper[end.event] = end.role == RoleLower;
                    }
                    s = incident[end.event][end.role == RoleUpper ? RoleLower : RoleUpper];
                    dir = Dir::Right;
                } else { // crossing left via one of its right outputs
                    crossing_dirs[end.event].push_back(dir);
                    s = incident[end.event][end.role == RoleUR ? RoleLower : RoleUpper];
                }
            }
        } while (s != start);
    };

    walk(incident[first_cusp][RoleUpper], true);
    out.components = 1;
    for (std::size_t s = 0; s < segs.size(); ++s)
        if (!visited[s]) {
            walk(s, false);
            ++out.components;
        }

    for (const auto& [k, dirs] : crossing_dirs)
        out.writhe += dirs.size() == 2 && dirs[0] == dirs[1] ? 1 : -1;
    for (const auto& e : ev)
        if (e.type == FrontEvent::Type::RightCusp) ++out.right_cusps;

    if (out.components != 1) {
        std::ostringstream msg;
        msg << "diagram splits into " << out.components << " separate loops";
        out.problems.push_back(msg.str());
    }
    return out;
}

} // namespace

std::vector<std::string> validate_front(const FrontDiagram& f) { return trace(f).problems; }

FrontInvariants invariants(const FrontDiagram& f) {
    const Trace t = trace(f);
    if (!t.ok()) throw std::invalid_argument("invalid front: " + t.problems.front());
    FrontInvariants inv;
    inv.writhe = t.writhe;
    inv.right_cusps = t.right_cusps;
    inv.down_cusps = t.down;
    inv.up_cusps = t.up;
    inv.tb = t.writhe - t.right_cusps;
    inv.r = (t.down - t.up) / 2;
    return inv;
}

std::vector<FrontLocation> stabilization_sites(const FrontDiagram& f) {
    const Trace t = trace(f);
    std::vector<FrontLocation> out;
    if (!t.ok()) return out;
    for (std::size_t gap = 1; gap < f.events.size(); ++gap)
        for (int slot = 0; slot < t.counts_before[gap]; ++slot)
            out.push_back({static_cast<int>(gap), slot});
    return out;
}

FrontDiagram stabilize_front(const FrontDiagram& f, StabSign sign, FrontLocation loc) {
    const Trace t = trace(f);
    if (!t.ok()) throw std::invalid_argument("stabilize_front: " + t.problems.front());
    if (loc.gap < 1 || loc.gap >= static_cast<int>(f.events.size()) || loc.slot < 0 ||
        loc.slot >= t.counts_before[loc.gap])
        throw std::invalid_argument("stabilize_front: no strand at that location");

    const FrontInvariants base = invariants(f);
    const int want_r = base.r + r_delta(sign);

    // A zigzag on the chosen strand comes in two shapes; which one shifts r
    // which way depends on how the traversal runs through that strand, so
    // build both and keep the one that matches the requested sign.
    const int s = loc.slot;
    const std::array<std::array<FrontEvent, 2>, 2> shapes = {{
        {left_cusp(s + 1), right_cusp(s)},
        {left_cusp(s), right_cusp(s + 1)},
    }};
    for (const auto& shape : shapes) {
        FrontDiagram cand = f;
        cand.events.insert(cand.events.begin() + loc.gap, shape.begin(), shape.end());
        const FrontInvariants got = invariants(cand);
        if (got.tb == base.tb - 1 && got.r == want_r) return cand;
    }
    throw std::logic_error("stabilize_front: no zigzag shape matches the requested sign");
}

std::vector<SpliceSite> splice_sites(const FrontDiagram& f1, const FrontDiagram& f2) {
    const Trace t1 = trace(f1), t2 = trace(f2);
    if (!t1.ok()) throw std::invalid_argument("splice_sites: first front: " + t1.problems.front());
    if (!t2.ok()) throw std::invalid_argument("splice_sites: second front: " + t2.problems.front());

    std::vector<std::size_t> rights, lefts;
    for (std::size_t k = f1.events.size(); k-- > 0;)
        if (f1.events[k].type == FrontEvent::Type::RightCusp) rights.push_back(k);
    for (std::size_t k = 0; k < f2.events.size(); ++k)
        if (f2.events[k].type == FrontEvent::Type::LeftCusp) lefts.push_back(k);

    std::vector<SpliceSite> out;
    for (auto e1 : rights)
        for (auto e2 : lefts)
            out.push_back({static_cast<int>(e1), static_cast<int>(e2),
                           t1.enter_upper.at(e1) == t2.exit_upper.at(e2)});
    return out;
}

FrontDiagram connect_front(const FrontDiagram& f1, const FrontDiagram& f2,
                           const SpliceSite& site, SpliceConvention convention) {
    const Trace t1 = trace(f1), t2 = trace(f2);
    if (!t1.ok()) throw std::invalid_argument("connect_front: first front: " + t1.problems.front());
    if (!t2.ok())
        throw std::invalid_argument("connect_front: second front: " + t2.problems.front());

    const std::size_t e1 = static_cast<std::size_t>(site.right_cusp_event);
    const std::size_t e2 = static_cast<std::size_t>(site.left_cusp_event);
    if (site.right_cusp_event < 0 || e1 >= f1.events.size() ||
        f1.events[e1].type != FrontEvent::Type::RightCusp)
        throw std::invalid_argument("connect_front: site does not name a right cusp of the first front");
    if (site.left_cusp_event < 0 || e2 >= f2.events.size() ||
        f2.events[e2].type != FrontEvent::Type::LeftCusp)
        throw std::invalid_argument("connect_front: site does not name a left cusp of the second front");

    const int i = f1.events[e1].slot;
    const int j = f2.events[e2].slot;
    const int before = t2.counts_before[e2];

    // The removed right cusp leaves its two strands alive at slots i, i+1;
    // the removed left cusp expects them at the slots it would have filled.
    // The second diagram plays out either inside the opened cusp (Nested,
    // shifted below the pair) or above it (Adjacent), and the pair is routed
    // to the meeting point by crossings; the route's crossings cancel in the
    // writhe because the pair's strands run antiparallel.
    FrontDiagram out;
    out.events.assign(f1.events.begin(), f1.events.begin() + e1);
    if (convention == SpliceConvention::Nested) {
        for (std::size_t k = 0; k < e2; ++k) {
            FrontEvent e = f2.events[k];
            e.slot += i + 2;
            out.events.push_back(e);
        }
        for (int t = 0; t < j; ++t) {
            out.events.push_back(crossing(i + t + 1));
            out.events.push_back(crossing(i + t));
        }
    } else {
        for (std::size_t k = 0; k < e2; ++k) {
            FrontEvent e = f2.events[k];
            e.slot += i;
            out.events.push_back(e);
        }
        for (int t = 1; t <= before - j; ++t) {
            out.events.push_back(crossing(i + before - t));
            out.events.push_back(crossing(i + before - t + 1));
        }
    }
    for (std::size_t k = e2 + 1; k < f2.events.size(); ++k) {
        FrontEvent e = f2.events[k];
        e.slot += i;
        out.events.push_back(e);
    }
    out.events.insert(out.events.end(), f1.events.begin() + e1 + 1, f1.events.end());
    return out;
}

FrontDiagram connect_front(const FrontDiagram& f1, const FrontDiagram& f2) {
    const auto sites = splice_sites(f1, f2);
    for (const auto& s : sites)
        if (s.coherent) return connect_front(f1, f2, s, SpliceConvention::Nested);
    return connect_front(f1, f2, sites.front(), SpliceConvention::Nested);
}

FrontDiagram twist_front(int n) {
    if (n < 1) throw std::invalid_argument("twist_front: n must be positive");
    // Two stacked cusps clasped n times.  Each clasp block contributes four
    // negative crossings; with the two right cusps this gives writhe
    // -(4n + 2) + 2, so tb = -(4n + 2) = pq and r = -1.  The block order
    // matters: collapsing the crossings into one twist region produces a
    // rational knot that is not the torus knot for n >= 2.
    FrontDiagram f;
    f.events.push_back(left_cusp(0));
    f.events.push_back(left_cusp(0));
    for (int k = 0; k < n; ++k) {
        f.events.push_back(crossing(1));
        f.events.push_back(crossing(1));
        f.events.push_back(crossing(0));
        f.events.push_back(crossing(0));
    }
    f.events.push_back(right_cusp(1));
    f.events.push_back(right_cusp(0));
    return f;
}

std::string serialize_front(const FrontDiagram& f) {
    std::string out;
    for (const auto& e : f.events) {
        switch (e.type) {
        case FrontEvent::Type::LeftCusp: out += 'b'; break;
        case FrontEvent::Type::RightCusp: out += 'd'; break;
        case FrontEvent::Type::Crossing: out += 'x'; break;
        }
        out += ' ';
        out += std::to_string(e.slot);
        out += '\n';
    }
    return out;
}

FrontDiagram parse_front(const std::string& text) {
    FrontDiagram f;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::string word;
        if (!(line >> word)) continue;
        if (word.size() != 1) throw FrontParseError("unknown event '" + word + "'", lineno);
        FrontEvent::Type type;
        switch (std::tolower(static_cast<unsigned char>(word[0]))) {
        case 'b': type = FrontEvent::Type::LeftCusp; break;
        case 'd': type = FrontEvent::Type::RightCusp; break;
        case 'x': type = FrontEvent::Type::Crossing; break;
        default: throw FrontParseError("unknown event '" + word + "'", lineno);
        }
        std::string num;
        if (!(line >> num)) throw FrontParseError("missing slot index", lineno);
        std::size_t used = 0;
        int slot = 0;
        try {
            slot = std::stoi(num, &used);
        } catch (const std::exception&) {
            throw FrontParseError("slot index '" + num + "' is not a number", lineno);
        }
        if (used != num.size())
            throw FrontParseError("slot index '" + num + "' is not a number", lineno);
        if (slot < 0) throw FrontParseError("negative slot index", lineno);
        std::string extra;
        if (line >> extra) throw FrontParseError("unexpected trailing '" + extra + "'", lineno);
        f.events.push_back({type, slot});
    }
    return f;
}

std::string plot_front(const FrontDiagram& f) {
    const Trace t = trace(f);
    int max_cnt = 0;
    for (int c : t.counts_before) max_cnt = std::max(max_cnt, c);
    if (f.events.empty() || max_cnt == 0) return "(empty)\n";

    const std::size_t cols = f.events.size();
    std::vector<std::string> rows(max_cnt, std::string(cols * 4, ' '));
    auto put = [&](int row, std::size_t col, const char* cell) {
        if (row < 0 || row >= max_cnt) return;
        for (int c = 0; c < 4 && cell[c]; ++c) rows[row][col * 4 + c] = cell[c];
    };

    for (std::size_t k = 0; k < cols && k < t.counts_before.size(); ++k) {
        const auto& e = f.events[k];
        const int before = t.counts_before[k];
        const int s = e.slot;
        switch (e.type) {
        case FrontEvent::Type::LeftCusp:
            for (int r = 0; r < s; ++r) put(r, k, "----");
            put(s, k, " /--");
            put(s + 1, k, " \\--");
            for (int r = s; r < before; ++r) put(r + 2, k, "----");
            break;
        case FrontEvent::Type::RightCusp:
            for (int r = 0; r < s; ++r) put(r, k, "----");
            put(s, k, "--\\ ");
            put(s + 1, k, "--/ ");
            for (int r = s + 2; r < before; ++r) put(r, k, "----");
            break;
        case FrontEvent::Type::Crossing:
            for (int r = 0; r < before; ++r)
                if (r != s && r != s + 1) put(r, k, "----");
            put(s, k, "-\\/-");
            put(s + 1, k, "-/\\-");
            break;
        }
    }

    std::string out;
    for (auto& row : rows) {
        while (!row.empty() && row.back() == ' ') row.pop_back();
        out += row;
        out += '\n';
    }
    return out;
}

std::string plot_front_svg(const FrontDiagram& f) {
    const Trace t = trace(f);
    const std::size_t cols = f.events.size();
    int max_cnt = 0;
    for (int c : t.counts_before) max_cnt = std::max(max_cnt, c);

    const int colw = 40, rowh = 24, margin = 20;
    const int width = margin * 2 + colw * static_cast<int>(std::max<std::size_t>(cols, 1));
    const int height = margin * 2 + rowh * std::max(max_cnt, 1);
    auto X = [&](double col) { return margin + col * colw; };
    auto Y = [&](double slot) { return margin + (slot + 0.5) * rowh; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<g fill=\"none\" stroke=\"#1f3552\" stroke-width=\"2\">\n";

    auto line = [&](double x1, double s1, double x2, double s2) {
        svg << "<line x1=\"" << X(x1) << "\" y1=\"" << Y(s1) << "\" x2=\"" << X(x2) << "\" y2=\""
            << Y(s2) << "\"/>\n";
    };
    auto arc = [&](double x1, double s1, double xm, double sm, double x2, double s2) {
        svg << "<path d=\"M " << X(x1) << ' ' << Y(s1) << " Q " << X(xm) << ' ' << Y(sm) << ' '
            << X(x2) << ' ' << Y(s2) << "\"/>\n";
    };

    if (t.counts_before.size() == cols + 1) {
        for (std::size_t k = 0; k < cols; ++k) {
            const auto& e = f.events[k];
            const int before = t.counts_before[k];
            const int s = e.slot;
            switch (e.type) {
            case FrontEvent::Type::LeftCusp:
                for (int r = 0; r < before; ++r) line(k, r, k + 1, r < s ? r : r + 2);
                arc(k + 1, s, k + 0.25, s + 0.5, k + 1, s + 1);
                break;
            case FrontEvent::Type::RightCusp:
                for (int r = 0; r < before; ++r)
                    if (r != s && r != s + 1) line(k, r, k + 1, r > s ? r - 2 : r);
                arc(k, s, k + 0.75, s + 0.5, k, s + 1);
                break;
            case FrontEvent::Type::Crossing:
                for (int r = 0; r < before; ++r)
                    if (r != s && r != s + 1) line(k, r, k + 1, r);
                line(k, s, k + 1, s + 1);
                line(k, s + 1, k + 1, s);
                break;
            }
        }
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

} // namespace legsum
