#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace manasim::quadrature {

using Complex = std::complex<double>;

/// Panel layout of the 2-D engine. Panels are squares from a quadtree over
/// the domain; the accepted value on each panel comes from the higher-order
/// tensor Gauss-Legendre rule and the error estimate from the rule pair.
struct PanelScheme {
    int gauss_order = 6;       // base tensor rule
    int gauss_order_ref = 10;  // reference rule; the accepted value
    /// When positive, panels touching the diagonal tau = tau' are pre-split
    /// down to about this size (set it to the kernel's peak scale epsilon).
    double diagonal_peak_scale = 0.0;
    /// Panels may grow proportionally to their distance from the diagonal.
    double distance_growth = 1.0;
    /// Structural cap: panels never start coarser than extent / coarse_divisions.
    int coarse_divisions = 4;
    int max_subdivisions = 32;
    /// Hard stop for the refinement loop; exceeding it flags non-convergence.
    std::int64_t max_evaluations = 80'000'000;
};

struct QuadratureSpec {
    /// Half-width of the integration square in units of sigma_t; the Gaussian
    /// tail beyond 6 sigma is below double precision.
    double truncation_radius = 6.0;
    double target_abs_tol = 1e-10;
    PanelScheme panels{};

    void validate() const;  // radius >= 4, tol > 0, sane panel orders
};

/// Integration square [lo, hi] x [lo, hi].
struct Square {
    double lo = -1.0;
    double hi = 1.0;
};

enum class Region {
    square,         // whole square
    lower_triangle  // tau > tau' half only (Heaviside-ordered kernels)
};

enum class Symmetry {
    none,
    /// f(tau, tau') = conj(f(tau', tau)): mirrored panels are folded into
    /// 2 Re(...) and diagonal panels are summed in node pairs, so the result
    /// is exactly real and the +-dtau contact contributions cancel
    /// analytically instead of numerically.
    hermitian
};

struct Integral {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    bool converged = true;
    std::int64_t evaluations = 0;
};

using Integrand2D = std::function<Complex(double, double)>;

/// Deterministic adaptive 2-D integration: fixed panel decomposition, fixed
/// reduction order, nested-rule error estimates. When the target tolerance
/// cannot be met within the subdivision limit the result carries
/// converged = false together with the achieved estimate.
Integral integrate2d(const Integrand2D& f, Square domain, const QuadratureSpec& spec,
                     Region region = Region::square, Symmetry symmetry = Symmetry::none);

/// Strictly decreasing regulator schedule.
struct EpsilonSchedule {
    std::vector<double> values;

    /// epsilon_k = sigma_t * 2^{-k}, k = k_min .. k_max.
    static EpsilonSchedule dyadic(double sigma_t, int k_min = 4, int k_max = 10);
    void validate() const;
};

struct EpsilonSample {
    double epsilon = 0.0;
    Complex value{0.0, 0.0};
};

struct Extrapolation {
    Complex limit{0.0, 0.0};
    double error_estimate = 0.0;
    bool converged = true;
    std::vector<EpsilonSample> samples;
};

/// Richardson extrapolation to epsilon = 0 through a polynomial model of
/// degree <= 2, using the smallest epsilon levels. The error estimate is the
/// shift between the last two extrapolant windows; a growing shift sequence
/// flags non-convergence (the raw samples are always returned).
Extrapolation extrapolate_eps(std::vector<EpsilonSample> samples);

}  // namespace manasim::quadrature
