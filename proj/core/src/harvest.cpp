#include "manasim/harvest.hpp"

#include "manasim/detector.hpp"
#include "manasim/field_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace manasim::harvest {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string& message) { throw std::invalid_argument(message); }

void require_equal_gaps(const HarvestParams& params, const char* what) {
    if (!params.equal_gaps()) {
        std::ostringstream msg;
        msg << what << " requires omega1 == omega2, got " << params.omega1 << " and "
            << params.omega2;
        fail(msg.str());
    }
}

// Extrapolation noise bound: the quadratic window weights per-level errors by
// at most |1/3| + |-2| + |8/3| = 5 for a ratio-2 schedule.
constexpr double kWindowNoiseGain = 5.0;

EpsilonLimit extrapolate_real_part(EpsilonLimit out) {
    std::vector<quadrature::EpsilonSample> real_samples;
    real_samples.reserve(out.table.size());
    for (const auto& row : out.table) real_samples.push_back({row.epsilon, {row.value.real(), 0.0}});
    auto extrapolated = quadrature::extrapolate_eps(std::move(real_samples));
    out.value = extrapolated.limit.real();
    const double quad_noise =
        out.quad_errors.empty() ? 0.0 : *std::max_element(out.quad_errors.begin(), out.quad_errors.end());
    out.error_estimate = extrapolated.error_estimate + kWindowNoiseGain * quad_noise;
    out.converged = out.converged && extrapolated.converged;
    return out;
}

}  // namespace

HarvestParams HarvestParams::from_omega_sigma(double omega_sigma, double lambda) {
    HarvestParams params;
    params.lambda = lambda;
    params.omega1 = omega_sigma;
    params.omega2 = omega_sigma;
    params.sigma_t = 1.0;
    return params;
}

bool HarvestParams::equal_gaps() const {
    return std::abs(omega1 - omega2) <= 1e-12 * std::max(std::abs(omega1), std::abs(omega2));
}

quadrature::EpsilonSchedule HarvestParams::effective_eps() const {
    if (eps.values.empty()) return quadrature::EpsilonSchedule::dyadic(sigma_t);
    return eps;
}

void HarvestParams::validate() const {
    if (!(lambda > 0.0)) fail("harvest: coupling lambda must be positive");
    if (omega1 < 0.0 || omega2 < 0.0) fail("harvest: energy gaps must be non-negative");
    if (!(sigma_t > 0.0)) fail("harvest: sigma_t must be positive");
    quad.validate();
    if (!eps.values.empty()) eps.validate();
}

double q_closed(const HarvestParams& params) {
    params.validate();
    const double x = params.omega_sigma();
    const double lam2 = params.lambda * params.lambda;
    return lam2 / (8.0 * kPi) *
           (std::exp(-0.5 * x * x) - x * std::sqrt(kPi / 2.0) * std::erfc(x / std::numbers::sqrt2));
}

double beta_closed(const HarvestParams& params) {
    params.validate();
    require_equal_gaps(params, "beta closed form");
    const double x = params.omega_sigma();
    const double lam2 = params.lambda * params.lambda;
    return -lam2 / (16.0 * kPi) * std::exp(-0.5 * x * x);
}

double mana_closed(const HarvestParams& params) {
    params.validate();
    require_equal_gaps(params, "mana closed form");
    const double x = params.omega_sigma();
    const double lam2 = params.lambda * params.lambda;
    return lam2 / (12.0 * std::sqrt(2.0 * kPi)) * x * std::erfc(x / std::numbers::sqrt2);
}

EpsilonLimit f_q_quadrature(const HarvestParams& params) {
    params.validate();
    const double radius = params.quad.truncation_radius * params.sigma_t;
    const field_kernel::GaussianSwitching chi(params.sigma_t);
    const double omega1 = params.omega1;

    EpsilonLimit out;
    for (double eps : params.effective_eps().values) {
        const field_kernel::WightmanKernel kernel(eps);
        // The 1/2 is the squared monopole matrix element; the integrand is
        // Hermitian-symmetric, so the paired engine returns an exactly real
        // value with the contact terms cancelled in pairs.
        const auto f = [&](double t, double tp) {
            return 0.5 * chi(t) * chi(tp) * std::polar(1.0, -omega1 * (t - tp)) * kernel(t, tp);
        };
        quadrature::QuadratureSpec spec = params.quad;
        spec.panels.diagonal_peak_scale = eps;
        const auto integral = quadrature::integrate2d(f, {-radius, radius}, spec,
                                                      quadrature::Region::square,
                                                      quadrature::Symmetry::hermitian);
        out.table.push_back({eps, integral.value});
        out.quad_errors.push_back(integral.error_estimate);
        out.converged = out.converged && integral.converged;
    }
    return extrapolate_real_part(std::move(out));
}

namespace {

quadrature::Integral beta_integral(const HarvestParams& params, double eps) {
    const double radius = params.quad.truncation_radius * params.sigma_t;
    const field_kernel::GaussianSwitching chi(params.sigma_t);
    const field_kernel::WightmanKernel kernel(eps);
    const double omega1 = params.omega1;
    const double omega2 = params.omega2;
    // Time ordering restricts to t > t'; both Heaviside branches of the
    // original double integral map onto this half-domain, leaving -1/2 of the
    // matrix-element prefactor.
    const auto f = [&, omega1, omega2](double t, double tp) {
        return -0.5 * chi(t) * chi(tp) * std::polar(1.0, omega2 * t + omega1 * tp) * kernel(t, tp);
    };
    quadrature::QuadratureSpec spec = params.quad;
    spec.panels.diagonal_peak_scale = eps;
    return quadrature::integrate2d(f, {-radius, radius}, spec, quadrature::Region::lower_triangle,
                                   quadrature::Symmetry::none);
}

}  // namespace

quadrature::Integral f_beta_at_epsilon(const HarvestParams& params, double epsilon) {
    params.validate();
    if (!(epsilon > 0.0)) fail("harvest: epsilon must be positive");
    return beta_integral(params, epsilon);
}

EpsilonLimit f_beta_quadrature(const HarvestParams& params) {
    params.validate();
    EpsilonLimit out;
    for (double eps : params.effective_eps().values) {
        const auto integral = beta_integral(params, eps);
        out.table.push_back({eps, integral.value});
        out.quad_errors.push_back(integral.error_estimate);
        out.converged = out.converged && integral.converged;
    }

    // eps * Im settles on a plateau (the contact term is a pure 1/eps); track
    // it over the last three levels as a diagnostic.
    const std::size_t count = std::min<std::size_t>(3, out.table.size());
    double mean = 0.0, lo = 0.0, hi = 0.0;
    for (std::size_t i = out.table.size() - count; i < out.table.size(); ++i) {
        const double scaled = out.table[i].epsilon * out.table[i].value.imag();
        mean += scaled / static_cast<double>(count);
        if (i == out.table.size() - count) {
            lo = hi = scaled;
        } else {
            lo = std::min(lo, scaled);
            hi = std::max(hi, scaled);
        }
    }
    out.im_eps_plateau = mean;
    out.im_plateau_spread = mean != 0.0 ? (hi - lo) / std::abs(mean) : 0.0;

    return extrapolate_real_part(std::move(out));
}

HarvestResult run_pipeline(const HarvestParams& params, Method method) {
    params.validate();
    require_equal_gaps(params, "harvest pipeline");

    double q = 0.0;
    double beta_re = 0.0;
    EpsilonLimit fq, fbeta;
    const double lam2 = params.lambda * params.lambda;
    if (method == Method::closed) {
        q = q_closed(params);
        beta_re = beta_closed(params);
    } else {
        fq = f_q_quadrature(params);
        fbeta = f_beta_quadrature(params);
        q = lam2 * fq.value;
        beta_re = lam2 * fbeta.value;
    }
    const Complex beta{beta_re, 0.0};

    // The assembled state violates strict positivity by |beta|^2/(1-q), one
    // order beyond the kept matrix elements; widen the floor to admit exactly
    // that much and surface the actual eigenvalue in the diagnostics.
    const double truncation_violation = std::norm(beta) / std::max(1.0 - q, 0.5);
    const double floor = std::max(detector::kDefaultPsdFloor, 2.0 * truncation_violation);
    auto rho = detector::assemble_state({1.0 - q, q, beta}, floor);

    HarvestResult result(std::move(rho));
    result.q = q;
    result.beta = beta;
    result.mana_general = phase_space::mana(result.rho);
    result.mana_family = detector::family_mana(q, beta);
    result.mana_closed = mana_closed(params);
    result.diagnostics.fq = std::move(fq);
    result.diagnostics.fbeta = std::move(fbeta);
    result.diagnostics.rho_min_eigenvalue = result.rho.min_eigenvalue();
    result.diagnostics.perturbative_warning = q > 0.05;
    return result;
}

std::vector<SweepRow> sweep(double x_min, double x_max, int steps, double lambda, Method method) {
    if (!(x_min >= 0.0) || !(x_min < x_max)) fail("sweep: need 0 <= x_min < x_max");
    if (steps < 2) fail("sweep: need at least 2 grid points");

    const double dx = (x_max - x_min) / (steps - 1);
    const double lam2 = lambda * lambda;
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double x = (i == steps - 1) ? x_max : x_min + i * dx;
        const auto result = run_pipeline(HarvestParams::from_omega_sigma(x, lambda), method);
        SweepRow row;
        row.omega_sigma = x;
        row.q_per_lambda2 = result.q / lam2;
        row.re_beta_per_lambda2 = result.beta.real() / lam2;
        row.im_beta_eps_plateau = result.diagnostics.fbeta.im_eps_plateau;
        row.mana_closed_per_lambda2 = result.mana_closed / lam2;
        row.mana_family_per_lambda2 = result.mana_family / lam2;
        row.mana_general_per_lambda2 = result.mana_general / lam2;
        row.quad_error_estimate =
            result.diagnostics.fq.error_estimate + result.diagnostics.fbeta.error_estimate;
        rows.push_back(row);
    }
    return rows;
}

OptimizeResult optimize(double lambda) {
    const auto value = [lambda](double x) {
        return mana_closed(HarvestParams::from_omega_sigma(x, lambda));
    };

    double a = 0.0, b = 5.0;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = value(c), fd = value(d);
    int iterations = 0;
    while (b - a > 1e-7) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = value(d);
        }
        ++iterations;
    }
    OptimizeResult out;
    out.x_star = 0.5 * (a + b);
    out.mana_star = value(out.x_star);
    out.iterations = iterations;
    if (out.mana_star < std::max(value(0.0), value(5.0)))
        throw std::runtime_error("optimize: bracket failure, maximum not interior to [0, 5]");
    return out;
}

}  // namespace manasim::harvest
