#include "legsum/atlas.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace legsum {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string sign_token(StabSign s) {
    return s == StabSign::Plus ? "+" : "-";
}

StabSign parse_sign_token(const std::string& t) {
    if (t == "+") return StabSign::Plus;
    if (t == "-") return StabSign::Minus;
    throw std::invalid_argument("atlas: bad edge sign '" + t + "', expected \"+\" or \"-\"");
}

} // namespace

PrimeAtlas PrimeAtlas::simple(std::string name, std::vector<TbR> peaks) {
    std::sort(peaks.begin(), peaks.end());
    peaks.erase(std::unique(peaks.begin(), peaks.end()), peaks.end());

    PrimeAtlas a;
    a.kind_ = Kind::Simple;
    a.name_ = std::move(name);
    a.peaks_ = std::move(peaks);
    return a;
}

PrimeAtlas PrimeAtlas::presented(std::string name, int cutoff, bool simple_below,
                                 std::vector<PresentedNode> nodes,
                                 std::vector<PresentedEdge> edges) {
    PrimeAtlas a;
    a.kind_ = Kind::Presented;
    a.name_ = std::move(name);
    a.cutoff_ = cutoff;
    a.simple_below_ = simple_below;
    a.nodes_ = std::move(nodes);
    a.edges_ = std::move(edges);

    // Peaks of the graph: nodes nothing stabilizes onto.
    std::set<std::string> targets;
    for (const auto& e : a.edges_) targets.insert(e.to);
    std::set<TbR> pts;
    for (const auto& n : a.nodes_)
        if (!targets.count(n.id)) pts.insert(n.point);
    a.peaks_.assign(pts.begin(), pts.end());
    return a;
}

const PresentedNode* PrimeAtlas::find_node(const std::string& id) const {
    for (const auto& n : nodes_)
        if (n.id == id) return &n;
    return nullptr;
}

PrimeAtlas torus_atlas(int p, int q) {
    if (!(p < 0 && q > 0 && -p > q))
        throw std::invalid_argument("torus_atlas: unsupported-range, need p < 0 and -p > q > 0");
    if (q < 2)
        throw std::invalid_argument(
            "torus_atlas: unsupported-range, q = 1 is the unknot and has no torus peak formula");
    if (std::gcd(-p, q) != 1)
        throw std::invalid_argument("torus_atlas: non-coprime parameters");

    const int ap = -p;
    std::vector<TbR> peaks;
    for (int k = 0; q * k < ap - q; ++k) {
        const int r = ap - q - 2 * q * k;
        peaks.push_back(TbR{p * q, r});
        peaks.push_back(TbR{p * q, -r});
    }
    std::string name = "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
    return PrimeAtlas::simple(std::move(name), std::move(peaks));
}

PrimeAtlas unknot_atlas() {
    return PrimeAtlas::simple("unknot", {TbR{-1, 0}});
}

bool realized(const PrimeAtlas& atlas, TbR x) {
    if (atlas.kind() == PrimeAtlas::Kind::Simple) {
        for (TbR peak : atlas.peak_points())
            if (in_cone(peak, x)) return true;
        return false;
    }
    if (x.tb >= atlas.cutoff()) {
        for (const auto& n : atlas.nodes())
            if (n.point == x) return true;
        return false;
    }
    if (!atlas.simple_below())
        throw AtlasIncompleteError("atlas '" + atlas.name() +
                                   "': no class data below cutoff tb=" +
                                   std::to_string(atlas.cutoff()));
    for (const auto& n : atlas.nodes())
        if (n.point.tb == atlas.cutoff() && in_cone(n.point, x)) return true;
    return false;
}

std::vector<LegendrianClassRef> classes_at(const PrimeAtlas& atlas, TbR x) {
    std::vector<LegendrianClassRef> out;
    if (atlas.kind() == PrimeAtlas::Kind::Simple) {
        if (realized(atlas, x)) out.push_back({x, ""});
        return out;
    }
    if (x.tb >= atlas.cutoff()) {
        for (const auto& n : atlas.nodes())
            if (n.point == x) out.push_back({x, n.id});
        std::sort(out.begin(), out.end());
        return out;
    }
    if (realized(atlas, x)) out.push_back({x, ""});
    return out;
}

std::vector<TbR> points_at(const PrimeAtlas& atlas, int tb) {
    std::set<TbR> pts;
    if (atlas.kind() == PrimeAtlas::Kind::Simple) {
        for (TbR peak : atlas.peak_points()) {
            const int drop = peak.tb - tb;
            if (drop < 0) continue;
            for (int r = peak.r - drop; r <= peak.r + drop; r += 2) pts.insert(TbR{tb, r});
        }
    } else if (tb >= atlas.cutoff()) {
        for (const auto& n : atlas.nodes())
            if (n.point.tb == tb) pts.insert(n.point);
    } else {
        if (!atlas.simple_below())
            throw AtlasIncompleteError("atlas '" + atlas.name() +
                                       "': no class data below cutoff tb=" +
                                       std::to_string(atlas.cutoff()));
        for (const auto& n : atlas.nodes()) {
            if (n.point.tb != atlas.cutoff()) continue;
            const int drop = n.point.tb - tb;
            for (int r = n.point.r - drop; r <= n.point.r + drop; r += 2) pts.insert(TbR{tb, r});
        }
    }
    return {pts.begin(), pts.end()};
}

std::vector<LegendrianClassRef> classes_at_level(const PrimeAtlas& atlas, int tb) {
    std::vector<LegendrianClassRef> out;
    if (atlas.kind() == PrimeAtlas::Kind::Presented && tb >= atlas.cutoff()) {
        for (const auto& n : atlas.nodes())
            if (n.point.tb == tb) out.push_back({n.point, n.id});
        std::sort(out.begin(), out.end());
        return out;
    }
    for (TbR x : points_at(atlas, tb)) out.push_back({x, ""});
    return out;
}

LegendrianClassRef stabilize_class(const PrimeAtlas& atlas, const LegendrianClassRef& c,
                                   StabSign sign) {
    const TbR target = stabilized(c.point, sign);
    if (atlas.kind() == PrimeAtlas::Kind::Simple) {
        if (!realized(atlas, c.point))
            throw std::invalid_argument("stabilize_class: class not realized in atlas '" +
                                        atlas.name() + "'");
        return {target, ""};
    }
    if (!c.node.empty()) {
        const PresentedNode* from = atlas.find_node(c.node);
        if (!from || from->point != c.point)
            throw std::invalid_argument("stabilize_class: unknown node '" + c.node + "'");
        for (const auto& e : atlas.edges()) {
            if (e.from != c.node || e.sign != sign) continue;
            const PresentedNode* to = atlas.find_node(e.to);
            if (to) return {to->point, to->id};
        }
        // No edge: fine at the cutoff boundary where the simple regime
        // takes over, an incompleteness anywhere above it.
        if (c.point.tb == atlas.cutoff() && atlas.simple_below()) return {target, ""};
        throw AtlasIncompleteError("atlas '" + atlas.name() + "': node '" + c.node +
                                   "' has no S" + sign_token(sign) + " edge");
    }
    if (!realized(atlas, c.point))
        throw std::invalid_argument("stabilize_class: class not realized in atlas '" +
                                    atlas.name() + "'");
    return {target, ""};
}

std::vector<LegendrianClassRef> destabilizations(const PrimeAtlas& atlas,
                                                 const LegendrianClassRef& c, StabSign sign) {
    std::vector<LegendrianClassRef> out;
    const TbR above{c.point.tb + 1, c.point.r - r_delta(sign)};
    if (atlas.kind() == PrimeAtlas::Kind::Simple) {
        if (realized(atlas, above)) out.push_back({above, ""});
        return out;
    }
    if (!c.node.empty()) {
        for (const auto& e : atlas.edges()) {
            if (e.to != c.node || e.sign != sign) continue;
            const PresentedNode* from = atlas.find_node(e.from);
            if (from) out.push_back({from->point, from->id});
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    // Synthesized point below the cutoff.
    if (above.tb == atlas.cutoff()) {
        for (const auto& n : atlas.nodes())
            if (n.point == above) out.push_back({n.point, n.id});
        std::sort(out.begin(), out.end());
        return out;
    }
    if (realized(atlas, above)) out.push_back({above, ""});
    return out;
}

int max_tb(const PrimeAtlas& atlas) {
    if (atlas.peak_points().empty())
        throw std::invalid_argument("max_tb: atlas '" + atlas.name() + "' has no peaks");
    int best = atlas.peak_points().front().tb;
    for (TbR p : atlas.peak_points()) best = std::max(best, p.tb);
    return best;
}

const std::vector<TbR>& peaks(const PrimeAtlas& atlas) {
    return atlas.peak_points();
}

std::vector<std::string> validate(const PrimeAtlas& atlas) {
    std::vector<std::string> out;
    if (atlas.name().empty()) out.push_back("atlas has an empty name");

    if (atlas.kind() == PrimeAtlas::Kind::Simple) {
        const auto& pk = atlas.peak_points();
        if (pk.empty()) out.push_back("simple atlas has no peaks");
        for (std::size_t i = 0; i < pk.size(); ++i)
            for (std::size_t j = 0; j < pk.size(); ++j)
                if (i != j && strictly_in_cone(pk[j], pk[i]))
                    out.push_back("peak dominated by peak: " + to_string(pk[i]) +
                                  " lies in the cone of " + to_string(pk[j]));
        for (std::size_t i = 1; i < pk.size(); ++i) {
            const int a = ((pk[0].tb + pk[0].r) % 2 + 2) % 2;
            const int b = ((pk[i].tb + pk[i].r) % 2 + 2) % 2;
            if (a != b) {
                out.push_back("peaks mix tb+r parity: " + to_string(pk[0]) + " vs " +
                              to_string(pk[i]));
                break;
            }
        }
        return out;
    }

    std::map<std::string, TbR> by_id;
    for (const auto& n : atlas.nodes()) {
        if (n.id.empty()) out.push_back("presented node with empty id");
        if (by_id.count(n.id)) out.push_back("duplicate node id '" + n.id + "'");
        by_id[n.id] = n.point;
        if (n.point.tb < atlas.cutoff())
            out.push_back("node '" + n.id + "' sits below the cutoff level");
    }
    for (const auto& e : atlas.edges()) {
        auto f = by_id.find(e.from);
        auto t = by_id.find(e.to);
        if (f == by_id.end()) {
            out.push_back("edge from unknown node '" + e.from + "'");
            continue;
        }
        if (t == by_id.end()) {
            out.push_back("edge to unknown node '" + e.to + "'");
            continue;
        }
        const TbR expect = stabilized(f->second, e.sign);
        if (t->second != expect)
            out.push_back("edge " + e.from + " -S" + sign_token(e.sign) + "-> " + e.to +
                          " moves " + to_string(f->second) + " to " + to_string(t->second) +
                          ", expected " + to_string(expect));
    }
    return out;
}

std::string serialize_atlas(const PrimeAtlas& atlas) {
    ordered_json j;
    j["name"] = atlas.name();
    if (atlas.kind() == PrimeAtlas::Kind::Simple) {
        j["kind"] = "simple";
        auto& arr = j["peaks"] = ordered_json::array();
        for (TbR p : atlas.peak_points()) {
            ordered_json e;
            e["tb"] = p.tb;
            e["r"] = p.r;
            arr.push_back(std::move(e));
        }
    } else {
        j["kind"] = "presented";
        j["cutoff"] = atlas.cutoff();
        j["simple_below"] = atlas.simple_below();
        auto& nodes = j["nodes"] = ordered_json::array();
        for (const auto& n : atlas.nodes()) {
            ordered_json e;
            e["id"] = n.id;
            e["tb"] = n.point.tb;
            e["r"] = n.point.r;
            nodes.push_back(std::move(e));
        }
        auto& edges = j["edges"] = ordered_json::array();
        for (const auto& e : atlas.edges()) {
            ordered_json o;
            o["from"] = e.from;
            o["to"] = e.to;
            o["sign"] = sign_token(e.sign);
            edges.push_back(std::move(o));
        }
    }
    return j.dump(2) + "\n";
}

namespace {

int require_int(const ordered_json& j, const char* key, const char* ctx) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw std::invalid_argument(std::string("atlas: ") + ctx + " needs integer field \"" +
                                    key + "\"");
    return j.at(key).get<int>();
}

std::string require_str(const ordered_json& j, const char* key, const char* ctx) {
    if (!j.contains(key) || !j.at(key).is_string())
        throw std::invalid_argument(std::string("atlas: ") + ctx + " needs string field \"" +
                                    key + "\"");
    return j.at(key).get<std::string>();
}

} // namespace

PrimeAtlas parse_atlas(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw std::invalid_argument(std::string("atlas: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("atlas: top level must be an object");

    const std::string name = require_str(j, "name", "atlas");
    const std::string kind = require_str(j, "kind", "atlas");
    if (kind == "simple") {
        if (!j.contains("peaks") || !j.at("peaks").is_array())
            throw std::invalid_argument("atlas: simple atlas needs a \"peaks\" array");
        std::vector<TbR> peaks;
        for (const auto& e : j.at("peaks"))
            peaks.push_back(TbR{require_int(e, "tb", "peak"), require_int(e, "r", "peak")});
        return PrimeAtlas::simple(name, std::move(peaks));
    }
    if (kind == "presented") {
        const int cutoff = require_int(j, "cutoff", "presented atlas");
        if (!j.contains("simple_below") || !j.at("simple_below").is_boolean())
            throw std::invalid_argument(
                "atlas: presented atlas needs boolean field \"simple_below\"");
        const bool simple_below = j.at("simple_below").get<bool>();
        std::vector<PresentedNode> nodes;
        if (j.contains("nodes"))
            for (const auto& e : j.at("nodes"))
                nodes.push_back({require_str(e, "id", "node"),
                                 TbR{require_int(e, "tb", "node"), require_int(e, "r", "node")}});
        std::vector<PresentedEdge> edges;
        if (j.contains("edges"))
            for (const auto& e : j.at("edges"))
                edges.push_back({require_str(e, "from", "edge"), require_str(e, "to", "edge"),
                                 parse_sign_token(require_str(e, "sign", "edge"))});
        return PrimeAtlas::presented(name, cutoff, simple_below, std::move(nodes),
                                     std::move(edges));
    }
    throw std::invalid_argument("atlas: unknown kind '" + kind + "'");
}

} // namespace legsum
