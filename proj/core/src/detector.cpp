#include "manasim/detector.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace manasim::detector {

namespace {

constexpr double kSupportThreshold = 1e-12;

void require_positive_gaps(double omega1, double omega2) {
    if (!(omega1 > 0.0) || !(omega2 > 0.0)) {
        std::ostringstream msg;
        msg << "detector: energy gaps must be positive, got omega1=" << omega1
            << " omega2=" << omega2;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

Matrix free_hamiltonian(double omega1, double omega2) {
    require_positive_gaps(omega1, omega2);
    Matrix h = Matrix::Zero(3, 3);
    h(1, 1) = omega1;
    h(2, 2) = omega1 + omega2;
    return h;
}

Matrix monopole(double tau, double omega1, double omega2) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    Matrix mu = Matrix::Zero(3, 3);
    mu(1, 0) = inv_sqrt2 * std::polar(1.0, omega1 * tau);
    mu(2, 1) = inv_sqrt2 * std::polar(1.0, omega2 * tau);
    mu(0, 1) = std::conj(mu(1, 0));
    mu(1, 2) = std::conj(mu(2, 1));
    return mu;
}

std::set<int> parity_support(const std::vector<double>& taus, double omega1, double omega2) {
    Eigen::Vector3cd state = Eigen::Vector3cd::Zero();
    state(0) = 1.0;
    for (double tau : taus) state = monopole(tau, omega1, omega2) * state;
    const double norm = state.norm();
    if (norm > 0.0) state /= norm;
    std::set<int> support;
    for (int level = 0; level < 3; ++level) {
        if (std::abs(state(level)) > kSupportThreshold) support.insert(level);
    }
    return support;
}

phase_space::DensityMatrix assemble_state(const DetectorFamilyState& state, double psd_floor) {
    if (state.p < 0.0 || state.q < 0.0 || state.p + state.q > 1.0 + 1e-15) {
        std::ostringstream msg;
        msg << "family state: populations must satisfy p, q >= 0 and p + q <= 1, got p=" << state.p
            << " q=" << state.q;
        throw std::invalid_argument(msg.str());
    }
    Matrix rho = Matrix::Zero(3, 3);
    rho(0, 0) = state.p;
    rho(1, 1) = state.q;
    rho(2, 2) = 1.0 - state.p - state.q;
    rho(2, 0) = state.beta;
    rho(0, 2) = std::conj(state.beta);
    phase_space::ValidationOptions options;
    options.psd_floor = psd_floor;
    return phase_space::DensityMatrix(std::move(rho), options);
}

DetectorFamilyState extract_family(const phase_space::DensityMatrix& rho) {
    return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 0)};
}

double family_mana(double q, Complex beta) {
    const double re = beta.real();
    const double im = beta.imag();
    const double sqrt3 = std::numbers::sqrt3;
    const double t1 = std::abs(q + 2.0 * re);
    const double t2 = std::abs(q - re - sqrt3 * im);
    const double t3 = std::abs(q - re + sqrt3 * im);
    // t2 and t3 swap under conjugation; grouping them keeps the sum bitwise
    // symmetric. log1p keeps full precision when the argument is O(lambda^2).
    return std::log1p((t1 + (t2 + t3)) / 3.0 - q);
}

}  // namespace manasim::detector
