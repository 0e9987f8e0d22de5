#pragma once

#include "manasim/phase_space.hpp"

#include <set>
#include <vector>

namespace manasim::detector {

using phase_space::Complex;
using phase_space::Matrix;

/// Free Hamiltonian diag(0, omega1, omega1 + omega2) of the three-level
/// detector. Gaps must be positive so the levels are strictly ordered.
Matrix free_hamiltonian(double omega1, double omega2);

/// Interaction-picture monopole operator
///   mu(tau) = (|1><0| e^{i omega1 tau} + |2><1| e^{i omega2 tau}) / sqrt(2) + h.c.
Matrix monopole(double tau, double omega1, double omega2);

/// Levels populated by the product mu(tau_m) ... mu(tau_1) |0>, using a 1e-12
/// amplitude threshold. Odd-length products reach only |1>; even-length ones
/// stay in {|0>, |2>}.
std::set<int> parity_support(const std::vector<double>& taus, double omega1, double omega2);

/// Parameters of the post-interaction state family
///   [[p, 0, beta*], [0, q, 0], [beta, 0, 1-p-q]].
struct DetectorFamilyState {
    double p = 0.0;
    double q = 0.0;
    Complex beta{0.0, 0.0};
};

inline constexpr double kDefaultPsdFloor = 1e-10;

/// Assemble the family matrix as a validated density matrix. The floor admits
/// the slight positivity violation of truncated perturbative states; callers
/// that know their truncation order can widen it.
phase_space::DensityMatrix assemble_state(const DetectorFamilyState& state,
                                          double psd_floor = kDefaultPsdFloor);

/// Read (p, q, beta) back off a family-shaped matrix.
DetectorFamilyState extract_family(const phase_space::DensityMatrix& rho);

/// Closed-form mana of the family state,
///   ln{ 1 - q + (|q + 2 Re b| + |q - Re b - sqrt(3) Im b| + |q - Re b + sqrt(3) Im b|) / 3 }.
/// Independent of p, and invariant under beta -> conj(beta) exactly.
double family_mana(double q, Complex beta);

}  // namespace manasim::detector
