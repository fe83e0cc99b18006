#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hexmc/channel.hpp"

namespace hexmc {

/// Gauss-Legendre nodes and weights on [a, b].
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
Quadrature gauss_legendre(int n, double a, double b);

/// Brute-force CIR: numerical integration of the concentration kernel over
/// the receiver cylinder. Deliberately independent of the series route
/// (no incomplete gamma, no Bessel expansion); the z and (r, phi) factors
/// of the separable Gaussian are each integrated by Gauss-Legendre rules.
double cir_quadrature(double r0, double t, const ChannelParams& p,
                      int n_r = 160, int n_phi = 512, int n_z = 64);

/// Brute-force ML decision over all 2^n interferer activation vectors
/// (flat means, uniform weights). Guards n <= 25.
int ml_decide_bruteforce(long long r, double c_bar_s,
                         std::span<const double> means);

/// Brute-force threshold: smallest Theta in [0, theta_max] satisfying the
/// threshold inequality with exhaustive 2^n sums.
int compute_threshold_bruteforce(double c_bar_s, std::span<const double> means,
                                 int theta_max = 200);

/// One self-check outcome of the validation suite.
struct CheckResult {
    std::string name;
    bool passed;
    double measured;  ///< observed deviation
    double tolerance;
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 1;
    double series_rel_tol = 1e-6;
    int mc_realizations = 20'000;
};

/// Cross-route consistency checks: series vs quadrature, ML vs threshold,
/// class collapse vs exhaustive enumeration, analytical BER vs Monte Carlo,
/// and the no-IUI closed form.
std::vector<CheckResult> run_validation(const ValidationOptions& opts);

} // namespace hexmc
