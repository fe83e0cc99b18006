#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace hexmc {

/// Cell center in the hexagonal offset coordinate system.
/// (0, 0) is the reference cell holding TX0/RX0.
struct OffsetCoord {
    int xp = 0;
    int yp = 0;

    friend bool operator==(OffsetCoord a, OffsetCoord b) = default;

    /// x'^2 + y'^2 + x'y'; the squared center distance in units of the
    /// cell spacing. Always an integer on the lattice.
    [[nodiscard]] std::int64_t norm2() const
    {
        const std::int64_t x = xp, y = yp;
        return x * x + y * y + x * y;
    }
};

struct Interferer {
    int index;      ///< 1-based, sorted by distance from the origin
    OffsetCoord cell;
    double r0;      ///< Euclidean distance to RX0 [m]
};

/// Hexagonal TX/RX lattice truncated to n_rings rings of interferers.
struct GridLayout {
    double d_hex = 0.0; ///< adjacent cell-center distance [m]
    int n_rings = 0;
    std::vector<Interferer> interferers; ///< sorted by (distance, x', y')
};

/// Equidistant interferers grouped together: distances strictly increasing,
/// multiplicities summing to the interferer count.
struct DistanceClass {
    double distance;
    int multiplicity;
};

/// Map offset coordinates to Cartesian: x = d_hex (sqrt(3)/2) x',
/// y = d_hex (y' + x'/2).
std::pair<double, double> offset_to_cartesian(OffsetCoord c, double d_hex);

/// d_hex * sqrt(x'^2 + y'^2 + x'y')
double distance_from_origin(OffsetCoord c, double d_hex);

/// Enumerate rings 1..n_rings (6k cells each) and sort the interferers by
/// distance, breaking ties lexicographically on (x', y').
GridLayout build_layout(double d_hex, int n_rings);

/// Collapse the layout into distance classes. Grouping is exact: lattice
/// distances are d_hex * sqrt(integer), so cells are grouped by that integer.
std::vector<DistanceClass> distance_classes(const GridLayout& layout);

/// Area of one hexagonal cell, (sqrt(3)/2) d_hex^2.
double hex_cell_area(double d_hex);

} // namespace hexmc
