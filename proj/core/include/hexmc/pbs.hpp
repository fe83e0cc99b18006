#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hexmc/channel.hpp"
#include "hexmc/grid.hpp"

namespace hexmc {

using Vec3 = std::array<double, 3>;

struct PbsConfig {
    double dt = 1e-3;       ///< time resolution [s]
    double t_sim = 15.0;
    int n_particles = 100;  ///< released molecules per realization
    int n_realizations = 3000;
    std::uint64_t seed = 1;
    Vec3 release_position = {0.0, 0.0, 0.0};

    void validate() const;
};

/// Empirical CIR: fraction of released particles inside RX0 at each step,
/// averaged over realizations.
struct PbsCirEstimate {
    std::vector<double> times;
    std::vector<double> mean_fraction;
    std::vector<double> std_error;
};

/// One Euler-Maruyama step of free Brownian motion with axial drift: each
/// axis gains sqrt(2 D dt) times the given unit normal, z additionally v dt.
Vec3 step_particle(const Vec3& pos, double dt, double D, double v,
                   const Vec3& unit_normals);

/// Transparent cylindrical receiver test; radial boundary inclusive, axial
/// boundaries strict.
bool inside_receiver(const Vec3& pos, double cx, double cy,
                     const ChannelParams& p);

/// Particle-based CIR estimate for a release at the center of the given
/// source cell. Bit-reproducible for a fixed (cfg, params): noise comes from
/// counter-based substreams keyed by (seed, realization, particle, step) and
/// realizations are reduced in fixed order regardless of thread schedule.
PbsCirEstimate estimate_cir(const PbsConfig& cfg, const ChannelParams& p,
                            OffsetCoord source, double d_hex,
                            int n_threads = 0);

} // namespace hexmc
