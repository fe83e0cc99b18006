#pragma once

#include <vector>

namespace hexmc {

/// Physical constants of the advection-diffusion channel and the cylindrical
/// transparent receiver. SI units throughout.
struct ChannelParams {
    double D = 0.01;    ///< diffusion coefficient [m^2/s]
    double v = 0.2;     ///< flow velocity along z [m/s]
    double z0 = 0.0;    ///< TX plane
    double zR = 0.5;    ///< RX plane (cylinder center)
    double a_rx = 0.1;  ///< receiver radius [m]
    double L_rx = 0.2;  ///< receiver length [m]
    double zS = 0.4;    ///< cylinder start
    double zE = 0.6;    ///< cylinder end
    int n_mol = 100;    ///< molecules released per '1' symbol

    [[nodiscard]] double plane_separation() const { return zR - z0; }

    /// Table-1 defaults with the receiver radius tied to the cell spacing
    /// (a_rx = d_hex / 2, adjacent receivers touch) and the cylinder centered
    /// on the RX plane.
    static ChannelParams for_hex_spacing(double d_hex);

    void validate() const;
};

/// Receiver volume a_rx^2 pi L_rx.
double receiver_volume(const ChannelParams& p);

/// Free-space Green's function of diffusion with axial drift, in cylindrical
/// coordinates around the receiver axis. dphi is the angle between the field
/// point and the source in the xy-plane. Units 1/m^3.
double concentration_kernel(double r, double r0, double dphi, double z,
                            double t, const ChannelParams& p);

struct CirEval {
    double value = 0.0;
    int terms_used = 0;        ///< number of retained series terms
    bool converged = false;    ///< last term fell below rel_tol of the sum
    double last_term_ratio = 0.0;
};

/// Truncated series evaluation of the analytical CIR for a transmitter at
/// lateral distance r0 from the receiver axis:
///   1/2 [erf((z0+vt-zS)/sqrt(4Dt)) - erf((z0+vt-zE)/sqrt(4Dt))]
///     * e^{-rho} sum_{k=0}^{k_max} rho^k/(k!)^2 gamma(k+1, chi)
/// with rho = r0^2/(4Dt), chi = a_rx^2/(4Dt). Terms are evaluated in
/// log-space as Pois(rho)(k) * P(k+1, chi); the series stops early once a
/// term drops below rel_tol of the running sum.
CirEval cir_series(double r0, double t, int k_max, const ChannelParams& p,
                   double rel_tol = 1e-12);

/// Value-only convenience wrapper around cir_series.
double cir(double r0, double t, int k_max, const ChannelParams& p);

/// Uniform-concentration approximation: kernel at the receiver center scaled
/// by the receiver volume. Not bounded by 1.
double cir_uca(double r0, double t, const ChannelParams& p);

/// CIR of one TX->RX0 link evaluated on a time grid.
struct CirCurve {
    double r0 = 0.0;
    std::vector<double> times;
    std::vector<double> values;
    double t_max = 0.0;
    double peak_value = 0.0;
};

CirCurve evaluate_cir_curve(double r0, const std::vector<double>& times,
                            int k_max, const ChannelParams& p);

struct SamplingTime {
    double t_max;
    double peak; ///< CIR(0, t_max)
};

/// Peak time of the desired-link CIR: coarse grid scan over (0, t_sim] at
/// coarse_dt followed by golden-section refinement to a 1e-6 s bracket.
/// Throws NumericalError if the maximum sits on the t_sim boundary.
SamplingTime find_sampling_time(const ChannelParams& p, int k_max,
                                double t_sim = 15.0, double coarse_dt = 1e-3);

} // namespace hexmc
