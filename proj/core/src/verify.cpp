#include "manasim/verify.hpp"

#include "manasim/detector.hpp"
#include "manasim/harvest.hpp"
#include "manasim/phase_space.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

namespace manasim::verify {

namespace {

namespace ps = manasim::phase_space;

using Clock = std::chrono::steady_clock;

std::string scientific(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

ps::Matrix random_hermitian_unit_trace(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ps::Matrix g(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) g(r, c) = ps::Complex{gauss(rng), gauss(rng)};
    ps::Matrix h = 0.5 * (g + g.adjoint().eval());
    const double shift = (1.0 - h.trace().real()) / dim;
    h += shift * ps::Matrix::Identity(dim, dim);
    return h;
}

detector::DetectorFamilyState random_family_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double p = uniform(rng);
    const double q = (1.0 - p) * uniform(rng);
    const double top = 1.0 - p - q;
    // |beta|^2 <= p * rho_22 keeps the {0,2} block positive semidefinite.
    const double magnitude = std::sqrt(std::max(p * top, 0.0)) * uniform(rng);
    const double phase = 2.0 * std::numbers::pi * uniform(rng);
    return {p, q, std::polar(magnitude, phase)};
}

// --- criterion 1: phase-space operator algebra --------------------------------

CriterionResult check_phase_space_algebra(std::mt19937_64& rng) {
    CriterionResult res{"1. phase-space algebra (n = 3, 5, 7)", true, "", 0.0};
    const double tol = 1e-12;
    double worst = 0.0;

    for (int n : {3, 5, 7}) {
        std::vector<ps::Matrix> points;
        points.reserve(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int ap = 0; ap < n; ++ap) points.push_back(ps::phase_point_operator(n, {a, ap}));

        ps::Matrix sum = ps::Matrix::Zero(n, n);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto& A = points[i];
            worst = std::max(worst, (A - A.adjoint().eval()).cwiseAbs().maxCoeff());
            worst = std::max(worst, std::abs(A.trace() - ps::Complex{1.0, 0.0}));
            sum += A;
            for (std::size_t j = 0; j < points.size(); ++j) {
                const double expected = i == j ? n : 0.0;
                worst = std::max(worst, std::abs((points[i] * points[j]).trace() - expected));
            }
        }
        worst = std::max(
            worst, (sum - double(n) * ps::Matrix::Identity(n, n)).cwiseAbs().maxCoeff());

        // reconstruction round trip and displacement covariance on random input
        for (int trial = 0; trial < 8; ++trial) {
            const ps::DensityMatrix rho(random_hermitian_unit_trace(n, rng), {.check_psd = false});
            const auto map = ps::wigner(rho);
            worst = std::max(worst, std::abs(map.sum() - 1.0));
            const auto back = ps::reconstruct(map);
            worst = std::max(worst,
                             (back.entries() - rho.entries()).cwiseAbs().maxCoeff());

            std::uniform_int_distribution<int> pick(0, n - 1);
            const ps::WeylIndex shift_by{pick(rng), pick(rng)};
            const ps::Matrix t = ps::weyl(n, shift_by);
            const ps::DensityMatrix displaced(t * rho.entries() * t.adjoint(), {.check_psd = false});
            const auto displaced_map = ps::wigner(displaced);
            for (int b = 0; b < n; ++b)
                for (int bp = 0; bp < n; ++bp) {
                    const auto source = ps::WeylIndex::reduced(b - shift_by.a, bp - shift_by.a_prime, n);
                    worst = std::max(worst,
                                     std::abs(displaced_map.at(b, bp) - map.at(source)));
                }
        }
    }

    res.passed = worst <= tol;
    res.detail = "max deviation " + scientific(worst) + " (tol 1e-12)";
    return res;
}

// --- criterion 2: stabilizer zeros and the strange state ----------------------

CriterionResult check_stabilizer_zeros() {
    CriterionResult res{"2. stabilizer zeros and strange-state mana", true, "", 0.0};
    const double tol = 1e-12;
    double worst = 0.0;

    std::vector<ps::Matrix> bases;
    bases.push_back(ps::Matrix::Identity(3, 3));  // clock eigenbasis (computational)
    ps::Matrix fourier(3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) fourier(r, c) = ps::root_of_unity(3, r * c) / std::sqrt(3.0);
    bases.push_back(fourier);  // shift eigenbasis
    Eigen::ComplexEigenSolver<ps::Matrix> xz(ps::shift(3) * ps::clock(3));
    bases.push_back(xz.eigenvectors());

    for (const auto& basis : bases) {
        for (int k = 0; k < 3; ++k) {
            Eigen::Vector3cd v = basis.col(k);
            v.normalize();
            const ps::DensityMatrix projector(v * v.adjoint(), {});
            worst = std::max(worst, std::abs(ps::mana(projector)));
        }
    }
    worst = std::max(worst, std::abs(ps::mana(
                                ps::DensityMatrix(ps::Matrix::Identity(3, 3) / 3.0, {}))));

    Eigen::Vector3cd strange;
    strange << 0.0, 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2;
    const double strange_mana = ps::mana(ps::DensityMatrix(strange * strange.adjoint(), {}));
    const double strange_dev = std::abs(strange_mana - std::log(5.0 / 3.0));
    worst = std::max(worst, strange_dev);

    res.passed = worst <= tol;
    res.detail = "max deviation " + scientific(worst) + " (tol 1e-12)";
    return res;
}

// --- criterion 3: family formula equals the Wigner route -----------------------

CriterionResult check_family_formula(std::mt19937_64& rng) {
    CriterionResult res{"3. family mana formula vs Wigner transform (1000 states)", true, "", 0.0};
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto fam = random_family_state(rng);
        const auto rho = detector::assemble_state(fam);
        worst = std::max(worst,
                         std::abs(detector::family_mana(fam.q, fam.beta) - ps::mana(rho)));
    }
    res.passed = worst <= 1e-12;
    res.detail = "max |formula - transform| " + scientific(worst) + " (tol 1e-12)";
    return res;
}

// --- criteria 4 and 5: quadrature oracles -------------------------------------

const std::vector<double>& oracle_grid() {
    static const std::vector<double> grid{0.25, 0.5, 1.0, 2.0, 4.0};
    return grid;
}

CriterionResult check_q_oracle() {
    CriterionResult res{"4. excitation-probability quadrature vs closed form", true, "", 0.0};
    double worst_rel = 0.0;
    bool all_ok = true;
    for (double x : oracle_grid()) {
        const auto params = harvest::HarvestParams::from_omega_sigma(x, 0.1);
        const double expected = harvest::q_closed(params) / (params.lambda * params.lambda);
        const auto limit = harvest::f_q_quadrature(params);
        const double tol = std::max(1e-4 * std::abs(expected), 1e-8);
        const double dev = std::abs(limit.value - expected);
        all_ok = all_ok && dev <= tol && limit.converged && limit.value >= -limit.error_estimate;
        worst_rel = std::max(worst_rel, dev / std::abs(expected));
    }
    res.passed = all_ok;
    res.detail = "worst relative deviation " + scientific(worst_rel) + " (tol 1e-4)";
    return res;
}

CriterionResult check_beta_oracle() {
    CriterionResult res{"5. coherence quadrature vs closed form + Im plateau", true, "", 0.0};
    double worst_rel = 0.0, worst_spread = 0.0;
    bool all_ok = true;
    for (double x : oracle_grid()) {
        const auto params = harvest::HarvestParams::from_omega_sigma(x, 0.1);
        const double expected = harvest::beta_closed(params) / (params.lambda * params.lambda);
        const auto limit = harvest::f_beta_quadrature(params);
        const double rel = std::abs(limit.value - expected) / std::abs(expected);
        all_ok = all_ok && rel <= 1e-3 && limit.converged;
        all_ok = all_ok && limit.im_plateau_spread <= 0.05;
        worst_rel = std::max(worst_rel, rel);
        worst_spread = std::max(worst_spread, limit.im_plateau_spread);
    }
    res.passed = all_ok;
    res.detail = "worst relative deviation " + scientific(worst_rel) + " (tol 1e-3), plateau spread " +
                 scientific(worst_spread) + " (tol 5e-2)";
    return res;
}

// --- criterion 6: the family/closed-form gap scales as lambda^4 ----------------

CriterionResult check_lambda4_scaling() {
    CriterionResult res{"6. mana consistency gap scales as lambda^4", true, "", 0.0};
    std::vector<double> gaps;
    for (double lambda : {0.01, 0.02, 0.04}) {
        const auto params = harvest::HarvestParams::from_omega_sigma(1.0, lambda);
        const double family = detector::family_mana(
            harvest::q_closed(params), {harvest::beta_closed(params), 0.0});
        gaps.push_back(std::abs(family - harvest::mana_closed(params)));
    }
    const double r1 = gaps[1] / gaps[0];
    const double r2 = gaps[2] / gaps[1];
    res.passed = r1 >= 14.4 && r1 <= 17.6 && r2 >= 14.4 && r2 <= 17.6;
    std::ostringstream detail;
    detail.precision(4);
    detail << "doubling ratios " << r1 << ", " << r2 << " (target 16 +- 10%)";
    res.detail = detail.str();
    return res;
}

// --- criterion 7: the harvested-mana curve and its peak ------------------------

CriterionResult check_curve_and_peak() {
    CriterionResult res{"7. mana curve over omega*sigma in [0, 5] and its peak", true, "", 0.0};
    const double lambda = 0.1;
    const auto rows = harvest::sweep(0.0, 5.0, 501, lambda, harvest::Method::closed);

    double worst = 0.0;
    int sign_changes = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double x = rows[i].omega_sigma;
        const double curve =
            x * std::erfc(x / std::numbers::sqrt2) / (12.0 * std::sqrt(2.0 * std::numbers::pi));
        worst = std::max(worst, std::abs(rows[i].mana_closed_per_lambda2 - curve));
        if (i >= 2) {
            const double prev = rows[i - 1].mana_closed_per_lambda2 - rows[i - 2].mana_closed_per_lambda2;
            const double next = rows[i].mana_closed_per_lambda2 - rows[i - 1].mana_closed_per_lambda2;
            if (prev > 0.0 && next <= 0.0) ++sign_changes;
        }
    }

    const auto opt = harvest::optimize(lambda);
    const double peak_per_lambda2 = opt.mana_star / (lambda * lambda);
    const bool peak_ok = std::abs(opt.x_star - 0.752) <= 0.01 &&
                         std::abs(peak_per_lambda2 - 1.13e-2) <= 2e-4;

    res.passed = worst <= 1e-14 && sign_changes == 1 && peak_ok;
    std::ostringstream detail;
    detail.precision(6);
    detail << "curve deviation " << scientific(worst) << ", interior maxima " << sign_changes
           << ", x* = " << opt.x_star << ", peak/lambda^2 = " << peak_per_lambda2;
    res.detail = detail.str();
    return res;
}

// --- criterion 8: monopole-product selection rules ------------------------------

CriterionResult check_selection_rules(std::mt19937_64& rng) {
    CriterionResult res{"8. monopole-product selection rules (100 random tuples)", true, "", 0.0};
    std::uniform_real_distribution<double> tau(-10.0, 10.0);
    std::uniform_int_distribution<int> length(1, 6);
    bool ok = detector::parity_support({}, 1.0, 1.0) == std::set<int>{0};
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const int m = length(rng);
        std::vector<double> taus(static_cast<std::size_t>(m));
        for (auto& t : taus) t = tau(rng);
        const auto support = detector::parity_support(taus, 1.3, 0.7);
        if (m % 2 == 1) {
            ok = support == std::set<int>{1};
        } else {
            for (int level : support) ok = ok && (level == 0 || level == 2);
        }
    }
    res.passed = ok;
    res.detail = ok ? "support confined to the allowed parity levels"
                    : "support leaked outside the allowed parity levels";
    return res;
}

}  // namespace

std::vector<CriterionResult> run_all(const VerifyOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::vector<CriterionResult> results;

    const auto timed = [&results](CriterionResult (*check)(std::mt19937_64&), std::mt19937_64& r) {
        const auto start = Clock::now();
        auto res = check(r);
        res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        results.push_back(std::move(res));
    };
    const auto timed_plain = [&results](CriterionResult (*check)()) {
        const auto start = Clock::now();
        auto res = check();
        res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        results.push_back(std::move(res));
    };

    timed(check_phase_space_algebra, rng);
    timed_plain(check_stabilizer_zeros);
    timed(check_family_formula, rng);
    timed_plain(check_q_oracle);
    timed_plain(check_beta_oracle);
    timed_plain(check_lambda4_scaling);
    timed_plain(check_curve_and_peak);
    timed(check_selection_rules, rng);
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& res : results) {
        if (!res.passed) return false;
    }
    return true;
}

}  // namespace manasim::verify
