#pragma once

#include "legsum/atlas.hpp"
#include "legsum/tbr.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace legsum {

class InvalidSpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Whether the stabilization-shift relation connects the last summand back
// to the first.  The two modes generate the same equivalence closure
// whenever n <= 2, and in practice always, because transfers compose along
// any connected adjacency graph; both are kept so neither is silently
// assumed.
enum class Adjacency { Cyclic, Linear };

// An ordered list of prime summands plus the index permutations that
// preserve summand types.  Two summands with the same name must be
// structurally identical.
class SumSpec {
public:
    explicit SumSpec(std::vector<PrimeAtlas> summands, Adjacency adjacency = Adjacency::Cyclic);

    std::size_t size() const { return summands_.size(); }
    const PrimeAtlas& atlas(std::size_t i) const { return summands_.at(i); }
    const std::vector<PrimeAtlas>& summands() const { return summands_; }
    Adjacency adjacency() const { return adjacency_; }

    // Full symmetry group as index maps, identity included.
    const std::vector<std::vector<std::size_t>>& symmetry() const { return symmetry_; }

    // Unordered adjacent index pairs for the shift relation.
    const std::vector<std::pair<std::size_t, std::size_t>>& adjacent_pairs() const {
        return adjacent_;
    }

    std::string label() const;

private:
    std::vector<PrimeAtlas> summands_;
    Adjacency adjacency_ = Adjacency::Cyclic;
    std::vector<std::vector<std::size_t>> symmetry_;
    std::vector<std::pair<std::size_t, std::size_t>> adjacent_;
};

using SumTuple = std::vector<LegendrianClassRef>;

struct SumClassId {
    SumTuple canonical;
    std::int64_t size = 0;

    friend bool operator==(const SumClassId&, const SumClassId&) = default;
};

// Class counts over a window, rows tb descending from tb_max, columns r
// ascending from r_min.
struct MountainRange {
    Window window;
    std::vector<std::vector<std::int64_t>> counts;

    std::int64_t at(TbR x) const;
};

// Invariants of a connected sum: tb values add plus one per splice, r
// values add.
TbR sum_tbr(const std::vector<TbR>& parts);
TbR tuple_tbr(const SumSpec& spec, const SumTuple& t);

bool valid_tuple(const SumSpec& spec, const SumTuple& t);

// Neighbors of t under moving one stabilization between adjacent summands.
// Every result has the same tuple_tbr as t.  Sorted, deduplicated.
std::vector<SumTuple> shift_moves(const SumSpec& spec, const SumTuple& t);

// Images of t under the nontrivial symmetry permutations.
std::vector<SumTuple> perm_moves(const SumSpec& spec, const SumTuple& t);

// All valid tuples whose invariants equal x, sorted.
std::vector<SumTuple> enumerate_cell(const SumSpec& spec, TbR x);

// Equivalence classes at x, one entry per class, sorted by canonical tuple.
std::vector<SumClassId> classify(const SumSpec& spec, TbR x);

// Same partition with full memberships, each component sorted.
std::vector<std::vector<SumTuple>> classify_components(const SumSpec& spec, TbR x);

std::int64_t count(const SumSpec& spec, TbR x);

// Breadth-first closure from one tuple; the oracle route.
std::vector<SumTuple> component_of(const SumSpec& spec, const SumTuple& t);

// Lexicographically least member of t's class.
SumTuple canonical(const SumSpec& spec, const SumTuple& t);

SumClassId class_of(const SumSpec& spec, const SumTuple& t);

// Checks canonical equality and direct closure membership; the two routes
// must agree, a mismatch throws logic_error.
bool equivalent(const SumSpec& spec, const SumTuple& t1, const SumTuple& t2);

int max_tb_sum(const SumSpec& spec);

MountainRange mountain_range(const SumSpec& spec, const Window& window, unsigned jobs = 1);

// Class of the tuple with the last entry stabilized; by the shift relation
// the entry choice does not matter.
SumClassId stabilize_sum_class(const SumSpec& spec, const SumClassId& c, StabSign sign);

enum class StabOrder { Multiset, FullSequence };

// True iff no stabilization pattern within the budget makes the images of
// c1 and c2 equivalent.  Multiset mode ranges over sign counts (a, b) with
// a + b <= budget; FullSequence ranges over every sign word.
bool distinct_after_stabilizations(const SumSpec& spec, const SumClassId& c1,
                                   const SumClassId& c2, int budget,
                                   StabOrder order = StabOrder::Multiset);

// Outcome of flowing one s = tb - r diagonal downward by negative
// stabilization.  Classes collected in the window feed the flow; merged
// means they coalesced to a single class using at most `depth` steps from
// the highest contributing origin.
struct DiagonalVerdict {
    int s = 0;
    TbR top;
    int window_points = 0;
    std::int64_t top_classes = 0;
    std::int64_t origins = 0;
    bool merged = false;
    int depth_used = 0;
    std::int64_t remaining = 0;
};

int default_simplicity_depth(const SumSpec& spec);

std::vector<DiagonalVerdict> transversally_simple_check(const SumSpec& spec,
                                                        const Window& window, int depth);

std::string classes_json(const SumSpec& spec, TbR x, const std::vector<SumClassId>& classes);
std::string range_json(const MountainRange& range);

} // namespace legsum
