#pragma once

#include "legsum/tbr.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace legsum {

// Raised when a presented atlas is asked a question its graph does not
// cover, e.g. stabilizing past a node with no outgoing edge while still
// above the cutoff level.
class AtlasIncompleteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PresentedNode {
    std::string id;
    TbR point;

    friend bool operator==(const PresentedNode&, const PresentedNode&) = default;
};

struct PresentedEdge {
    std::string from;
    std::string to;
    StabSign sign = StabSign::Plus;

    friend bool operator==(const PresentedEdge&, const PresentedEdge&) = default;
};

// Classification data for one prime knot type.
//
// A Simple atlas is a finite peak list; every class below a peak is the
// unique class at its (tb, r) point, obtained by stabilization.  A
// Presented atlas carries an explicit class graph down to a tb cutoff.
// With simple_below set, classes strictly below the cutoff are again
// determined by (tb, r), seeded by the cutoff-level nodes' cones.
class PrimeAtlas {
public:
    enum class Kind { Simple, Presented };

    static PrimeAtlas simple(std::string name, std::vector<TbR> peaks);
    static PrimeAtlas presented(std::string name, int cutoff, bool simple_below,
                                std::vector<PresentedNode> nodes,
                                std::vector<PresentedEdge> edges);

    const std::string& name() const { return name_; }
    Kind kind() const { return kind_; }

    // Peak points, ascending by (tb, r).  For a presented atlas these are
    // the points of nodes with no incoming stabilization edge.
    const std::vector<TbR>& peak_points() const { return peaks_; }

    int cutoff() const { return cutoff_; }
    bool simple_below() const { return simple_below_; }
    const std::vector<PresentedNode>& nodes() const { return nodes_; }
    const std::vector<PresentedEdge>& edges() const { return edges_; }
    const PresentedNode* find_node(const std::string& id) const;

    friend bool operator==(const PrimeAtlas&, const PrimeAtlas&) = default;

private:
    PrimeAtlas() = default;

    Kind kind_ = Kind::Simple;
    std::string name_;
    std::vector<TbR> peaks_;
    int cutoff_ = 0;
    bool simple_below_ = true;
    std::vector<PresentedNode> nodes_;
    std::vector<PresentedEdge> edges_;
};

// One Legendrian isotopy class inside an atlas.  The node id is empty for
// classes determined by their (tb, r) point (all of a simple atlas, and
// the synthesized region of a presented one below its cutoff).
struct LegendrianClassRef {
    TbR point;
    std::string node;

    friend auto operator<=>(const LegendrianClassRef&, const LegendrianClassRef&) = default;
};

// Atlas for the negative (p, q) torus knot, p < 0 < q < -p, gcd(p,q)=1,
// q >= 2.  Peaks sit at tb = pq with rotation numbers given by the
// closed-form list for this family.
PrimeAtlas torus_atlas(int p, int q);

PrimeAtlas unknot_atlas();

bool realized(const PrimeAtlas& atlas, TbR x);

// All classes at one point: at most one for a simple atlas, every node
// carrying the point for a presented one.
std::vector<LegendrianClassRef> classes_at(const PrimeAtlas& atlas, TbR x);

// Realized points on a whole tb level, ascending by r.
std::vector<TbR> points_at(const PrimeAtlas& atlas, int tb);

std::vector<LegendrianClassRef> classes_at_level(const PrimeAtlas& atlas, int tb);

LegendrianClassRef stabilize_class(const PrimeAtlas& atlas, const LegendrianClassRef& c,
                                   StabSign sign);

// All realized classes y with stabilize_class(y, sign) == c.
std::vector<LegendrianClassRef> destabilizations(const PrimeAtlas& atlas,
                                                 const LegendrianClassRef& c, StabSign sign);

int max_tb(const PrimeAtlas& atlas);
const std::vector<TbR>& peaks(const PrimeAtlas& atlas);

// Invariant check; returns human-readable violations, empty when clean.
std::vector<std::string> validate(const PrimeAtlas& atlas);

// JSON text with stable key order; parse accepts exactly what serialize
// emits plus whitespace variations.
std::string serialize_atlas(const PrimeAtlas& atlas);
PrimeAtlas parse_atlas(const std::string& text);

} // namespace legsum
