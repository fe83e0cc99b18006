#include "hexmc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace hexmc {

namespace {

void require_positive_spacing(double d_hex)
{
    if (!(d_hex > 0.0))
        throw std::invalid_argument("grid: d_hex must be > 0");
}

} // namespace

std::pair<double, double> offset_to_cartesian(OffsetCoord c, double d_hex)
{
    require_positive_spacing(d_hex);
    const double x = d_hex * (std::sqrt(3.0) / 2.0) * c.xp;
    const double y = d_hex * (c.yp + 0.5 * c.xp);
    return {x, y};
}

double distance_from_origin(OffsetCoord c, double d_hex)
{
    require_positive_spacing(d_hex);
    return d_hex * std::sqrt(static_cast<double>(c.norm2()));
}

GridLayout build_layout(double d_hex, int n_rings)
{
    require_positive_spacing(d_hex);
    if (n_rings < 0)
        throw std::invalid_argument("grid: n_rings must be >= 0");

    // Unit steps on the lattice; ring k is walked from corner (k, -k)
    // taking k steps in each of the six directions.
    static constexpr OffsetCoord kDirections[6] = {
        {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}};

    GridLayout layout;
    layout.d_hex = d_hex;
    layout.n_rings = n_rings;
    layout.interferers.reserve(static_cast<std::size_t>(3) * n_rings * (n_rings + 1));

    for (int k = 1; k <= n_rings; ++k) {
        OffsetCoord cur{k, -k};
        for (const auto& dir : kDirections) {
            for (int step = 0; step < k; ++step) {
                layout.interferers.push_back({0, cur, 0.0});
                cur.xp += dir.xp;
                cur.yp += dir.yp;
            }
        }
    }

    std::sort(layout.interferers.begin(), layout.interferers.end(),
              [](const Interferer& a, const Interferer& b) {
                  return std::tuple(a.cell.norm2(), a.cell.xp, a.cell.yp)
                       < std::tuple(b.cell.norm2(), b.cell.xp, b.cell.yp);
              });

    int index = 1;
    for (auto& itf : layout.interferers) {
        itf.index = index++;
        itf.r0 = distance_from_origin(itf.cell, d_hex);
    }
    return layout;
}

std::vector<DistanceClass> distance_classes(const GridLayout& layout)
{
    std::vector<DistanceClass> classes;
    std::int64_t current_norm2 = -1;
    for (const auto& itf : layout.interferers) {
        const std::int64_t n2 = itf.cell.norm2();
        if (n2 != current_norm2) {
            classes.push_back({itf.r0, 1});
            current_norm2 = n2;
        } else {
            ++classes.back().multiplicity;
        }
    }
    return classes;
}

double hex_cell_area(double d_hex)
{
    require_positive_spacing(d_hex);
    return std::sqrt(3.0) / 2.0 * d_hex * d_hex;
}

} // namespace hexmc
