#pragma once

#include <compare>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <string>

namespace legsum {

// A point in the (Thurston-Bennequin, rotation) lattice.  Everything in this
// library lives on these integer pairs; classes of knots are referred to by
// the point they sit at plus, where needed, a node id inside a prime atlas.
struct TbR {
    int tb = 0;
    int r = 0;

    friend constexpr auto operator<=>(const TbR&, const TbR&) = default;
};

// Sign of a stabilization.  Plus lowers tb by one and raises r by one,
// Minus lowers tb by one and lowers r by one.
enum class StabSign { Plus, Minus };

constexpr int r_delta(StabSign s) {
    return s == StabSign::Plus ? +1 : -1;
}

constexpr StabSign opposite(StabSign s) {
    return s == StabSign::Plus ? StabSign::Minus : StabSign::Plus;
}

constexpr TbR stabilized(TbR x, StabSign s) {
    return TbR{x.tb - 1, x.r + r_delta(s)};
}

// The stabilization cone below a peak: everything reachable from `peak`
// by some number of S+ and S- moves.  A point x is in the cone iff the
// tb drop is non-negative, the r shift fits inside the drop, and drop and
// shift have the same parity (each move changes both by exactly one).
constexpr bool in_cone(TbR peak, TbR x) {
    const int drop = peak.tb - x.tb;
    if (drop < 0) return false;
    const int shift = x.r - peak.r;
    const int spread = shift < 0 ? -shift : shift;
    if (spread > drop) return false;
    return ((drop + shift) % 2) == 0;
}

constexpr bool strictly_in_cone(TbR peak, TbR x) {
    return in_cone(peak, x) && !(peak == x);
}

// Axis-aligned window of lattice points, inclusive on all sides.
struct Window {
    int tb_min = 0;
    int tb_max = 0;
    int r_min = 0;
    int r_max = 0;

    constexpr bool contains(TbR x) const {
        return x.tb >= tb_min && x.tb <= tb_max && x.r >= r_min && x.r <= r_max;
    }
    constexpr bool empty() const {
        return tb_min > tb_max || r_min > r_max;
    }
};

inline std::string to_string(TbR x) {
    return "(" + std::to_string(x.tb) + "," + std::to_string(x.r) + ")";
}

} // namespace legsum

template <>
struct std::hash<legsum::TbR> {
    std::size_t operator()(const legsum::TbR& x) const noexcept {
        // tb and r stay small in practice; mix them into one word
        std::size_t h = static_cast<std::size_t>(static_cast<unsigned>(x.tb));
        h = h * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::size_t>(static_cast<unsigned>(x.r)) + (h << 6) + (h >> 2);
        return h;
    }
};
