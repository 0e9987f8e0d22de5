#include "manasim/field_kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace manasim::field_kernel {

GaussianSwitching::GaussianSwitching(double sigma) : sigma_t(sigma) {
    if (!(sigma > 0.0)) {
        std::ostringstream msg;
        msg << "switching: sigma_t must be positive, got " << sigma;
        throw std::invalid_argument(msg.str());
    }
}

double GaussianSwitching::operator()(double tau) const {
    const double u = tau / sigma_t;
    return std::exp(-u * u);
}

WightmanKernel::WightmanKernel(double eps) : epsilon(eps) {
    if (!(eps > 0.0)) {
        std::ostringstream msg;
        msg << "wightman kernel: regulator epsilon must be positive, got " << eps;
        throw std::invalid_argument(msg.str());
    }
}

Complex WightmanKernel::operator()(double tau1, double tau2) const {
    constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    const Complex z{epsilon, tau1 - tau2};
    return 1.0 / (four_pi_sq * z * z);
}

}  // namespace manasim::field_kernel
