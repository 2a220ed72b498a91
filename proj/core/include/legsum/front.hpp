#pragma once

#include "legsum/tbr.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace legsum {

// One column of a front diagram.  Slots count strands from the top,
// 0-based.  A left cusp inserts two strands at slots (slot, slot+1), a
// right cusp closes those two slots, a crossing swaps them.  Crossings
// need no over/under datum: the strand of lesser slope is always in front.
struct FrontEvent {
    enum class Type { LeftCusp, RightCusp, Crossing };

    Type type = Type::LeftCusp;
    int slot = 0;

    friend auto operator<=>(const FrontEvent&, const FrontEvent&) = default;
};

inline FrontEvent left_cusp(int slot) { return {FrontEvent::Type::LeftCusp, slot}; }
inline FrontEvent right_cusp(int slot) { return {FrontEvent::Type::RightCusp, slot}; }
inline FrontEvent crossing(int slot) { return {FrontEvent::Type::Crossing, slot}; }

struct FrontDiagram {
    std::vector<FrontEvent> events;

    friend auto operator<=>(const FrontDiagram&, const FrontDiagram&) = default;
};

struct FrontInvariants {
    int writhe = 0;
    int right_cusps = 0;
    int down_cusps = 0;
    int up_cusps = 0;
    int tb = 0;
    int r = 0;

    TbR tbr() const { return TbR{tb, r}; }
};

class FrontParseError : public std::runtime_error {
public:
    FrontParseError(const std::string& msg, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    int line() const { return line_; }

private:
    int line_ = 0;
};

// Structural diagnostics: slot bounds, closedness, single component.
// Empty result means the diagram is a valid closed front.
std::vector<std::string> validate_front(const FrontDiagram& f);

// Orients the unique traversal starting rightward on the upper strand of
// the first left cusp, then reads off writhe, cusp directions, tb and r.
// Throws invalid_argument when the diagram fails validation.
FrontInvariants invariants(const FrontDiagram& f);

// An edge of the diagram: the strand at `slot` in the gap before event
// index `gap` (gaps run 1..events-1).
struct FrontLocation {
    int gap = 1;
    int slot = 0;

    friend auto operator<=>(const FrontLocation&, const FrontLocation&) = default;
};

std::vector<FrontLocation> stabilization_sites(const FrontDiagram& f);

// Adds one zigzag at the location.  tb drops by one, r moves by the sign.
FrontDiagram stabilize_front(const FrontDiagram& f, StabSign sign, FrontLocation loc = {});

// A candidate splice: one right cusp of the first diagram against one left
// cusp of the second.  The site is orientation-coherent when the glued
// strands carry matching directions, which is what makes rotation numbers
// add.  tb adds plus one at every site regardless.
struct SpliceSite {
    int right_cusp_event = 0;
    int left_cusp_event = 0;
    bool coherent = true;

    friend auto operator<=>(const SpliceSite&, const SpliceSite&) = default;
};

// The two routing shapes for a splice away from the diagram boundary; they
// agree on every invariant computed here.
enum class SpliceConvention { Nested, Adjacent };

std::vector<SpliceSite> splice_sites(const FrontDiagram& f1, const FrontDiagram& f2);

// Connected sum of two closed fronts.  The default picks the last right
// cusp of f1 against the first left cusp of f2 when that pairing is
// coherent, otherwise the first coherent site in scan order; diagrams with
// no coherent site at all are spliced at the default site, which reverses
// the second operand's orientation (r becomes r1 - r2, tb still adds).
FrontDiagram connect_front(const FrontDiagram& f1, const FrontDiagram& f2);
FrontDiagram connect_front(const FrontDiagram& f1, const FrontDiagram& f2,
                           const SpliceSite& site,
                           SpliceConvention convention = SpliceConvention::Nested);

// Standard front of the (-(2n+1), 2) torus knot at maximal tb = -2(2n+1).
FrontDiagram twist_front(int n);

// One event per line: "b <slot>", "d <slot>", "x <slot>".  '#' starts a
// comment.  serialize emits the normalized form, parse is case and
// whitespace tolerant and reports errors with line numbers.
std::string serialize_front(const FrontDiagram& f);
FrontDiagram parse_front(const std::string& text);

std::string plot_front(const FrontDiagram& f);
std::string plot_front_svg(const FrontDiagram& f);

} // namespace legsum
