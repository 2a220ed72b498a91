#include "legsum/sumcalc.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace legsum {

namespace {

using ordered_json = nlohmann::ordered_json;

struct TupleHash {
    std::size_t operator()(const SumTuple& t) const noexcept {
        std::size_t h = 0x811c9dc5u;
        for (const auto& e : t) {
            h = (h ^ std::hash<TbR>{}(e.point)) * 0x01000193u;
            h = (h ^ std::hash<std::string>{}(e.node)) * 0x01000193u;
        }
        return h;
    }
};

using TupleSet = std::unordered_set<SumTuple, TupleHash>;

// Minimal union-find over tuple indices.
struct DisjointSet {
    std::vector<std::size_t> parent;

    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

SumSpec::SumSpec(std::vector<PrimeAtlas> summands, Adjacency adjacency)
    : summands_(std::move(summands)), adjacency_(adjacency) {
    if (summands_.empty()) throw InvalidSpecError("spec needs at least one summand");

    for (std::size_t i = 0; i < summands_.size(); ++i)
        for (std::size_t j = i + 1; j < summands_.size(); ++j)
            if (summands_[i].name() == summands_[j].name() && !(summands_[i] == summands_[j]))
                throw InvalidSpecError("conflicting definitions for atlas '" +
                                       summands_[i].name() + "'");

    // Group indices by identical summand, then take the product of the
    // per-group symmetric groups.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < summands_.size(); ++i)
        groups[summands_[i].name()].push_back(i);

    symmetry_.push_back({});
    auto& identity = symmetry_.front();
    identity.resize(summands_.size());
    std::iota(identity.begin(), identity.end(), 0);

    for (const auto& [name, idx] : groups) {
        if (idx.size() < 2) continue;
        std::vector<std::vector<std::size_t>> expanded;
        std::vector<std::size_t> arrangement = idx;
        do {
            for (const auto& base : symmetry_) {
                auto perm = base;
                for (std::size_t k = 0; k < idx.size(); ++k) perm[idx[k]] = base[arrangement[k]];
                expanded.push_back(std::move(perm));
            }
        } while (std::next_permutation(arrangement.begin(), arrangement.end()));
        std::sort(expanded.begin(), expanded.end());
        expanded.erase(std::unique(expanded.begin(), expanded.end()), expanded.end());
        symmetry_ = std::move(expanded);
    }

    const std::size_t n = summands_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) adjacent_.push_back({i, i + 1});
    if (adjacency_ == Adjacency::Cyclic && n >= 3) adjacent_.push_back({n - 1, 0});
}

std::string SumSpec::label() const {
    std::string out;
    for (std::size_t i = 0; i < summands_.size(); ++i) {
        if (i) out += " # ";
        out += summands_[i].name();
    }
    return out;
}

TbR sum_tbr(const std::vector<TbR>& parts) {
    if (parts.empty()) throw std::invalid_argument("sum_tbr: empty part list");
    TbR out{static_cast<int>(parts.size()) - 1, 0};
    for (TbR p : parts) {
        out.tb += p.tb;
        out.r += p.r;
    }
    return out;
}

TbR tuple_tbr(const SumSpec& spec, const SumTuple& t) {
    if (t.size() != spec.size())
        throw std::invalid_argument("tuple_tbr: tuple length does not match the spec");
    std::vector<TbR> parts;
    parts.reserve(t.size());
    for (const auto& e : t) parts.push_back(e.point);
    return sum_tbr(parts);
}

bool valid_tuple(const SumSpec& spec, const SumTuple& t) {
    if (t.size() != spec.size()) return false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& atlas = spec.atlas(i);
        if (t[i].node.empty()) {
            if (atlas.kind() == PrimeAtlas::Kind::Presented && t[i].point.tb >= atlas.cutoff())
                return false;
            if (!realized(atlas, t[i].point)) return false;
        } else {
            const PresentedNode* n =
                atlas.kind() == PrimeAtlas::Kind::Presented ? atlas.find_node(t[i].node) : nullptr;
            if (!n || n->point != t[i].point) return false;
        }
    }
    return true;
}

std::vector<SumTuple> shift_moves(const SumSpec& spec, const SumTuple& t) {
    std::vector<SumTuple> out;
    for (auto [a, b] : spec.adjacent_pairs()) {
        const std::size_t ends[2][2] = {{a, b}, {b, a}};
        for (const auto& pair : ends) {
            const std::size_t src = pair[0], dst = pair[1];
            if (src == dst) continue;
            for (StabSign sign : {StabSign::Plus, StabSign::Minus}) {
                for (const auto& y : destabilizations(spec.atlas(src), t[src], sign)) {
                    SumTuple next = t;
                    next[src] = y;
                    next[dst] = stabilize_class(spec.atlas(dst), t[dst], sign);
                    out.push_back(std::move(next));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<SumTuple> perm_moves(const SumSpec& spec, const SumTuple& t) {
    std::vector<SumTuple> out;
    for (const auto& perm : spec.symmetry()) {
        SumTuple img(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) img[i] = t[perm[i]];
        if (img != t) out.push_back(std::move(img));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<SumTuple> enumerate_cell(const SumSpec& spec, TbR x) {
    const std::size_t n = spec.size();
    std::vector<int> hi(n), lo(n);
    int hi_total = static_cast<int>(n) - 1;
    for (std::size_t i = 0; i < n; ++i) {
        hi[i] = max_tb(spec.atlas(i));
        hi_total += hi[i];
    }
    if (x.tb > hi_total) return {};
    for (std::size_t i = 0; i < n; ++i)
        lo[i] = x.tb - static_cast<int>(n) + 1 - (hi_total - static_cast<int>(n) + 1 - hi[i]);

    // Per-summand class lists per level, plus r extents for pruning.
    std::vector<std::vector<std::vector<LegendrianClassRef>>> levels(n);
    std::vector<int> r_lo(n, 0), r_hi(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        levels[i].resize(hi[i] - lo[i] + 1);
        bool any = false;
        for (int tb = lo[i]; tb <= hi[i]; ++tb) {
            auto& lvl = levels[i][tb - lo[i]];
            lvl = classes_at_level(spec.atlas(i), tb);
            for (const auto& c : lvl) {
                if (!any) {
                    r_lo[i] = r_hi[i] = c.point.r;
                    any = true;
                } else {
                    r_lo[i] = std::min(r_lo[i], c.point.r);
                    r_hi[i] = std::max(r_hi[i], c.point.r);
                }
            }
        }
        if (!any) return {};
    }

    std::vector<int> suf_r_lo(n + 1, 0), suf_r_hi(n + 1, 0);
    std::vector<int> suf_tb_lo(n + 1, 0), suf_tb_hi(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        suf_r_lo[i] = suf_r_lo[i + 1] + r_lo[i];
        suf_r_hi[i] = suf_r_hi[i + 1] + r_hi[i];
        suf_tb_lo[i] = suf_tb_lo[i + 1] + lo[i];
        suf_tb_hi[i] = suf_tb_hi[i + 1] + hi[i];
    }

    std::vector<SumTuple> out;
    SumTuple partial(n);
    const int tb_target = x.tb - static_cast<int>(n) + 1;

    auto rec = [&](auto&& self, std::size_t i, int tb_left, int r_left) -> void {
        if (i == n) {
            if (tb_left == 0 && r_left == 0) out.push_back(partial);
            return;
        }
        if (r_left < suf_r_lo[i] || r_left > suf_r_hi[i]) return;
        const int t_min = std::max(lo[i], tb_left - suf_tb_hi[i + 1]);
        const int t_max = std::min(hi[i], tb_left - suf_tb_lo[i + 1]);
        for (int tb = t_max; tb >= t_min; --tb) {
            for (const auto& c : levels[i][tb - lo[i]]) {
                if (i + 1 == n && c.point.r != r_left) continue;
                partial[i] = c;
                self(self, i + 1, tb_left - tb, r_left - c.point.r);
            }
        }
    };
    rec(rec, 0, tb_target, x.r);

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::vector<SumTuple>> classify_components(const SumSpec& spec, TbR x) {
    const std::vector<SumTuple> cell = enumerate_cell(spec, x);
    std::unordered_map<SumTuple, std::size_t, TupleHash> index;
    index.reserve(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i) index.emplace(cell[i], i);

    DisjointSet ds(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i) {
        for (const auto& nb : shift_moves(spec, cell[i])) {
            auto it = index.find(nb);
            if (it != index.end()) ds.unite(i, it->second);
        }
        for (const auto& nb : perm_moves(spec, cell[i])) {
            auto it = index.find(nb);
            if (it != index.end()) ds.unite(i, it->second);
        }
    }

    std::map<std::size_t, std::vector<SumTuple>> grouped;
    for (std::size_t i = 0; i < cell.size(); ++i) grouped[ds.find(i)].push_back(cell[i]);

    std::vector<std::vector<SumTuple>> out;
    out.reserve(grouped.size());
    for (auto& [root, members] : grouped) out.push_back(std::move(members));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

std::vector<SumClassId> classify(const SumSpec& spec, TbR x) {
    std::vector<SumClassId> out;
    for (auto& comp : classify_components(spec, x))
        out.push_back({comp.front(), static_cast<std::int64_t>(comp.size())});
    return out;
}

std::int64_t count(const SumSpec& spec, TbR x) {
    return static_cast<std::int64_t>(classify(spec, x).size());
}

std::vector<SumTuple> component_of(const SumSpec& spec, const SumTuple& t) {
    if (!valid_tuple(spec, t))
        throw std::invalid_argument("component_of: tuple is not valid for the spec");
    TupleSet seen;
    std::vector<SumTuple> queue{t};
    seen.insert(t);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const SumTuple cur = queue[head];
        for (const auto& nb : shift_moves(spec, cur))
            if (seen.insert(nb).second) queue.push_back(nb);
        for (const auto& nb : perm_moves(spec, cur))
            if (seen.insert(nb).second) queue.push_back(nb);
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

SumTuple canonical(const SumSpec& spec, const SumTuple& t) {
    return component_of(spec, t).front();
}

SumClassId class_of(const SumSpec& spec, const SumTuple& t) {
    auto comp = component_of(spec, t);
    return {comp.front(), static_cast<std::int64_t>(comp.size())};
}

bool equivalent(const SumSpec& spec, const SumTuple& t1, const SumTuple& t2) {
    if (tuple_tbr(spec, t1) != tuple_tbr(spec, t2)) return false;
    const auto comp = component_of(spec, t1);
    const bool member = std::binary_search(comp.begin(), comp.end(), t2);
    const bool by_canonical = comp.front() == canonical(spec, t2);
    if (member != by_canonical)
        throw std::logic_error("equivalent: closure membership and canonical form disagree");
    return member;
}

int max_tb_sum(const SumSpec& spec) {
    int out = static_cast<int>(spec.size()) - 1;
    for (std::size_t i = 0; i < spec.size(); ++i) out += max_tb(spec.atlas(i));
    return out;
}

std::int64_t MountainRange::at(TbR x) const {
    if (!window.contains(x)) return 0;
    const std::size_t row = static_cast<std::size_t>(window.tb_max - x.tb);
    const std::size_t col = static_cast<std::size_t>(x.r - window.r_min);
    return counts[row][col];
}

MountainRange mountain_range(const SumSpec& spec, const Window& window, unsigned jobs) {
    MountainRange out;
    out.window = window;
    if (window.empty()) return out;

    const std::size_t rows = static_cast<std::size_t>(window.tb_max - window.tb_min) + 1;
    const std::size_t cols = static_cast<std::size_t>(window.r_max - window.r_min) + 1;
    out.counts.assign(rows, std::vector<std::int64_t>(cols, 0));

    std::vector<TbR> cells;
    cells.reserve(rows * cols);
    for (int tb = window.tb_max; tb >= window.tb_min; --tb)
        for (int r = window.r_min; r <= window.r_max; ++r) cells.push_back(TbR{tb, r});

    jobs = std::max(1u, jobs);
    if (jobs == 1) {
        for (TbR c : cells)
            out.counts[window.tb_max - c.tb][c.r - window.r_min] = count(spec, c);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                const TbR c = cells[i];
                out.counts[window.tb_max - c.tb][c.r - window.r_min] = count(spec, c);
            }
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

SumClassId stabilize_sum_class(const SumSpec& spec, const SumClassId& c, StabSign sign) {
    if (c.canonical.empty())
        throw std::invalid_argument("stabilize_sum_class: empty class");
    SumTuple t = c.canonical;
    const std::size_t last = t.size() - 1;
    t[last] = stabilize_class(spec.atlas(last), t[last], sign);
    return class_of(spec, t);
}

bool distinct_after_stabilizations(const SumSpec& spec, const SumClassId& c1,
                                   const SumClassId& c2, int budget, StabOrder order) {
    if (budget < 0) throw std::invalid_argument("distinct_after_stabilizations: negative budget");
    if (tuple_tbr(spec, c1.canonical) != tuple_tbr(spec, c2.canonical))
        throw std::invalid_argument(
            "distinct_after_stabilizations: classes sit at different (tb, r) points");

    if (order == StabOrder::Multiset) {
        for (int plus = 0; plus <= budget; ++plus) {
            for (int minus = 0; plus + minus <= budget; ++minus) {
                SumClassId a = c1, b = c2;
                for (int k = 0; k < plus; ++k) {
                    a = stabilize_sum_class(spec, a, StabSign::Plus);
                    b = stabilize_sum_class(spec, b, StabSign::Plus);
                }
                for (int k = 0; k < minus; ++k) {
                    a = stabilize_sum_class(spec, a, StabSign::Minus);
                    b = stabilize_sum_class(spec, b, StabSign::Minus);
                }
                if (a.canonical == b.canonical) return false;
            }
        }
        return true;
    }

    // Full sequence mode: walk every sign word up to the budget length.
    struct State {
        SumClassId a, b;
        int used;
    };
    std::vector<State> frontier{{c1, c2, 0}};
    for (std::size_t head = 0; head < frontier.size(); ++head) {
        const State cur = frontier[head];
        if (cur.a.canonical == cur.b.canonical) return false;
        if (cur.used == budget) continue;
        for (StabSign sign : {StabSign::Plus, StabSign::Minus})
            frontier.push_back({stabilize_sum_class(spec, cur.a, sign),
                                stabilize_sum_class(spec, cur.b, sign), cur.used + 1});
    }
    return true;
}

int default_simplicity_depth(const SumSpec& spec) {
    int spread = 0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto& pk = peaks(spec.atlas(i));
        int lo = pk.front().r, hi = pk.front().r;
        for (TbR p : pk) {
            lo = std::min(lo, p.r);
            hi = std::max(hi, p.r);
        }
        spread = std::max(spread, hi - lo);
    }
    return spread + 4;
}

/* The check treats each class as the head of its chain of repeated negative
   stabilizations; two chains count as merged once their images coincide at a
   level at most `depth` below the lower of the two heads.  Walking a diagonal
   top-down realizes exactly that: images flow down one level at a time,
   classes first appearing at lower window points join the flow as new heads,
   and a coalescence at level L between groups whose highest heads are o1 and
   o2 costs min(o1, o2) - L.  A diagonal is stably simple within the depth
   when every such event fits the budget and a single group survives past the
   window floor. */
std::vector<DiagonalVerdict> transversally_simple_check(const SumSpec& spec,
                                                        const Window& window, int depth) {
    if (depth < 0) throw std::invalid_argument("transversally_simple_check: negative depth");
    std::vector<DiagonalVerdict> out;
    if (window.empty()) return out;

    for (int s = window.tb_min - window.r_max; s <= window.tb_max - window.r_min; ++s) {
        std::map<TbR, std::vector<SumClassId>> found;
        for (int tb = window.tb_max; tb >= window.tb_min; --tb) {
            const TbR x{tb, tb - s};
            if (!window.contains(x)) continue;
            auto cls = classify(spec, x);
            if (!cls.empty()) found.emplace(x, std::move(cls));
        }
        if (found.empty()) continue;

        DiagonalVerdict v;
        v.s = s;
        v.window_points = static_cast<int>(found.size());
        v.top = found.rbegin()->first;
        v.top_classes = static_cast<std::int64_t>(found.rbegin()->second.size());

        // alive: current image tuple -> highest head level in its group.
        std::map<SumTuple, int> alive;
        for (const auto& c : found.rbegin()->second) alive.emplace(c.canonical, v.top.tb);
        v.origins = static_cast<std::int64_t>(alive.size());

        const int floor_tb = found.begin()->first.tb;
        int level = v.top.tb;
        int max_charge = 0;
        bool merged = false, failed = false;

        while (!failed) {
            if (alive.size() == 1 && level <= floor_tb) {
                merged = true;
                break;
            }
            if (alive.size() > 1) {
                // The first pair to outrun the budget is the one joining the
                // two highest heads, and it cannot merge above level - 1.
                int o1 = std::numeric_limits<int>::min(), o2 = o1;
                for (const auto& [t, head] : alive) {
                    if (head >= o1) {
                        o2 = o1;
                        o1 = head;
                    } else {
                        o2 = std::max(o2, head);
                    }
                }
                if (o2 - (level - 1) > depth) {
                    failed = true;
                    break;
                }
            }

            --level;
            std::map<SumTuple, int> next;
            for (const auto& [t, head] : alive) {
                SumTuple img = t;
                const std::size_t last = img.size() - 1;
                img[last] = stabilize_class(spec.atlas(last), img[last], StabSign::Minus);
                const SumTuple cimg = canonical(spec, img);
                auto it = next.find(cimg);
                if (it == next.end()) {
                    next.emplace(cimg, head);
                } else {
                    const int charge = std::min(it->second, head) - level;
                    max_charge = std::max(max_charge, charge);
                    if (charge > depth) failed = true;
                    it->second = std::max(it->second, head);
                }
            }
            alive = std::move(next);
            if (failed) break;

            auto here = found.find(TbR{level, level - s});
            if (here != found.end()) {
                for (const auto& c : here->second) {
                    if (!alive.count(c.canonical)) {
                        alive.emplace(c.canonical, level);
                        ++v.origins;
                    }
                }
            }
        }

        v.merged = merged;
        if (merged) {
            v.depth_used = max_charge;
            v.remaining = 1;
        } else {
            v.depth_used = depth;
            v.remaining = static_cast<std::int64_t>(alive.size());
        }
        out.push_back(std::move(v));
    }
    return out;
}

namespace {

ordered_json ref_json(const LegendrianClassRef& ref) {
    ordered_json e = ordered_json::array();
    e.push_back(ref.point.tb);
    e.push_back(ref.point.r);
    if (!ref.node.empty()) e.push_back(ref.node);
    return e;
}

} // namespace

std::string classes_json(const SumSpec& spec, TbR x, const std::vector<SumClassId>& classes) {
    ordered_json j;
    j["spec"] = spec.label();
    j["tb"] = x.tb;
    j["r"] = x.r;
    j["count"] = classes.size();
    auto& arr = j["classes"] = ordered_json::array();
    for (const auto& c : classes) {
        ordered_json e;
        auto& tup = e["canonical"] = ordered_json::array();
        for (const auto& ref : c.canonical) tup.push_back(ref_json(ref));
        e["size"] = c.size;
        arr.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::string range_json(const MountainRange& range) {
    ordered_json j;
    j["window"] = {{"tb_min", range.window.tb_min},
                   {"tb_max", range.window.tb_max},
                   {"r_min", range.window.r_min},
                   {"r_max", range.window.r_max}};
    auto& rows = j["rows"] = ordered_json::array();
    for (const auto& row : range.counts) rows.push_back(row);
    return j.dump(2) + "\n";
}

} // namespace legsum
