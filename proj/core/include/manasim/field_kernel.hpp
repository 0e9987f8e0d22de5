#pragma once

#include <complex>
#include <functional>

namespace manasim::field_kernel {

using Complex = std::complex<double>;

/// Unnormalised Gaussian switching chi(tau) = e^{-tau^2 / sigma_t^2}.
struct GaussianSwitching {
    double sigma_t;

    explicit GaussianSwitching(double sigma);
    double operator()(double tau) const;
};

/// Regularized vacuum two-point function of a massless scalar along an
/// inertial worldline in 3+1 dimensions:
///   W(tau1, tau2) = 1 / (4 pi^2 (epsilon + i (tau1 - tau2))^2).
/// Hermitian: W(tau1, tau2) = conj(W(tau2, tau1)). Homogeneous of degree -2
/// under (epsilon, dtau) -> (s epsilon, s dtau).
struct WightmanKernel {
    double epsilon;

    explicit WightmanKernel(double eps);
    Complex operator()(double tau1, double tau2) const;
};

/// Generic two-point kernel O(tau, tau') along the trajectory. The harvest
/// integrands accept any kernel of this shape; the inertial massless-scalar
/// Wightman function above is the one shipped.
using TwoPointKernel = std::function<Complex(double, double)>;

/// Generic switching profile; Gaussian is the one shipped.
using Switching = std::function<double(double)>;

}  // namespace manasim::field_kernel
