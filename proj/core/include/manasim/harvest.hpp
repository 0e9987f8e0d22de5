#pragma once

#include "manasim/phase_space.hpp"
#include "manasim/quadrature.hpp"

#include <complex>
#include <vector>

namespace manasim::harvest {

using Complex = std::complex<double>;

/// Coupling, detector gaps, switching scale, and the numerical knobs of the
/// quadrature path. The per-lambda^2 quantities depend on the gaps and the
/// switching scale only through the product omega * sigma_t.
struct HarvestParams {
    double lambda = 0.1;
    double omega1 = 1.0;
    double omega2 = 1.0;
    double sigma_t = 1.0;
    quadrature::QuadratureSpec quad{};
    /// Empty schedule means the dyadic default sigma_t * 2^{-k}, k = 4..10.
    quadrature::EpsilonSchedule eps{};

    /// Convenience: sigma_t = 1 and equal gaps omega_sigma, so the
    /// dimensionless product is set directly.
    static HarvestParams from_omega_sigma(double omega_sigma, double lambda);

    double omega_sigma() const { return omega1 * sigma_t; }
    bool equal_gaps() const;
    quadrature::EpsilonSchedule effective_eps() const;
    void validate() const;  // lambda > 0, gaps >= 0, sigma_t > 0, schedule decreasing
};

enum class Method { closed, quadrature };

/// Excitation probability, closed form:
///   q = lambda^2/(8 pi) { e^{-x^2/2} - x sqrt(pi/2) erfc(x/sqrt 2) },  x = omega1 sigma_t.
double q_closed(const HarvestParams& params);

/// Coherence between the top and bottom levels, closed form (equal gaps only):
///   beta = -lambda^2/(16 pi) e^{-x^2/2}. Always real and negative.
double beta_closed(const HarvestParams& params);

/// Harvested mana to leading order (equal gaps only):
///   M = lambda^2/(12 sqrt(2 pi)) x erfc(x/sqrt 2).
double mana_closed(const HarvestParams& params);

/// Outcome of an epsilon-scheduled double quadrature followed by the
/// epsilon -> 0 extrapolation of the real part. The raw complex values per
/// level stay available; for the time-ordered integrand the imaginary part
/// carries a 1/epsilon contact artifact which is reported as the
/// epsilon * Im plateau instead of being extrapolated.
struct EpsilonLimit {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
    std::vector<quadrature::EpsilonSample> table;
    std::vector<double> quad_errors;
    double im_eps_plateau = 0.0;
    double im_plateau_spread = 0.0;
};

/// F_q = q / lambda^2 by symmetric-paired quadrature of
///   (1/2) chi(t) chi(t') e^{-i omega1 (t - t')} W(t, t')
/// over the truncated square, extrapolated to epsilon = 0. Real and >= 0
/// within the reported error.
EpsilonLimit f_q_quadrature(const HarvestParams& params);

/// F_beta = beta / lambda^2 by quadrature of
///   -(1/2) chi(t) chi(t') e^{i (omega2 t + omega1 t')} W(t, t')
/// over the time-ordered half-domain t > t'. Unequal gaps are allowed here;
/// only the real part has an epsilon -> 0 limit.
EpsilonLimit f_beta_quadrature(const HarvestParams& params);

/// Single-level variant of the time-ordered integral, for unequal gaps where
/// no extrapolation is attempted.
quadrature::Integral f_beta_at_epsilon(const HarvestParams& params, double epsilon);

struct HarvestDiagnostics {
    EpsilonLimit fq{};
    EpsilonLimit fbeta{};
    double rho_min_eigenvalue = 0.0;
    /// Set when lambda^2 F_q > 0.05 and second-order truncation is suspect.
    bool perturbative_warning = false;
};

struct HarvestResult {
    explicit HarvestResult(phase_space::DensityMatrix rho_state) : rho(std::move(rho_state)) {}

    double q = 0.0;
    Complex beta{0.0, 0.0};
    phase_space::DensityMatrix rho;
    double mana_general = 0.0;   // via the discrete Wigner transform
    double mana_family = 0.0;    // via the family closed form
    double mana_closed = 0.0;    // via the leading-order closed form
    HarvestDiagnostics diagnostics{};
};

/// Full pipeline: q and beta by the chosen method, state assembly with
/// p = 1 - q (the |2> population is higher order), and mana via all three
/// routes. Requires equal gaps, matching the closed forms.
HarvestResult run_pipeline(const HarvestParams& params, Method method);

/// One row of the sweep table; fields in CSV column order.
struct SweepRow {
    double omega_sigma = 0.0;
    double q_per_lambda2 = 0.0;
    double re_beta_per_lambda2 = 0.0;
    double im_beta_eps_plateau = 0.0;
    double mana_closed_per_lambda2 = 0.0;
    double mana_family_per_lambda2 = 0.0;
    double mana_general_per_lambda2 = 0.0;
    double quad_error_estimate = 0.0;
};

/// Uniform grid of `steps` points over [x_min, x_max] (inclusive).
std::vector<SweepRow> sweep(double x_min, double x_max, int steps, double lambda, Method method);

struct OptimizeResult {
    double x_star = 0.0;
    double mana_star = 0.0;  // at the given lambda
    int iterations = 0;
};

/// Golden-section maximization of the closed-form mana over x = omega sigma_t,
/// resolved to |x residual| <= 1e-6.
OptimizeResult optimize(double lambda);

}  // namespace manasim::harvest
