#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace manasim::phase_space {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Grid point a = (a, a') of the n x n discrete phase space Z_n x Z_n.
struct WeylIndex {
    int a = 0;
    int a_prime = 0;

    /// Reduce arbitrary integers into [0, dim).
    static WeylIndex reduced(long long a, long long a_prime, int dim);

    friend bool operator==(const WeylIndex&, const WeylIndex&) = default;
};

/// Throws std::invalid_argument unless dim is odd and >= 3.
void require_odd_dimension(int dim);

/// e^{2 pi i k / n}, computed from the exact rational angle (k reduced mod n
/// first, so repeated phase products cannot drift).
Complex root_of_unity(int dim, long long k);

/// Clock operator Z = diag(1, w, w^2, ...), w = e^{2 pi i / n}.
Matrix clock(int dim);

/// Shift operator X |k> = |k+1 mod n>.
Matrix shift(int dim);

/// Weyl operator T_(a,a') = w^{-(n+1)/2 * a a'} Z^a X^{a'}.
Matrix weyl(int dim, WeylIndex idx);

/// Phase-point operator A_idx = T_idx A_0 T_idx^dag with A_0 = n^{-1} sum_a T_a.
/// A_0 is the parity permutation |k> -> |-k mod n>.
Matrix phase_point_operator(int dim, WeylIndex idx);

struct ValidationOptions {
    double hermiticity_tol = 1e-12;
    double trace_tol = 1e-12;
    /// Eigenvalues >= -psd_floor are accepted. Slightly negative floors admit
    /// truncated perturbative states whose positivity violation is higher
    /// order than the matrix elements themselves.
    double psd_floor = 1e-10;
    bool check_psd = true;
};

/// Validated n x n density matrix: Hermitian, unit trace, positive
/// semidefinite up to the configured floor. n must be odd (>= 3) so the
/// discrete Wigner transform applies.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix entries, ValidationOptions options = {});

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    Complex operator()(int row, int col) const { return entries_(row, col); }

    /// Smallest eigenvalue found at validation time (diagnostic; negative
    /// values within the floor were accepted).
    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    Matrix entries_;
    double min_eigenvalue_ = 0.0;
};

/// Real quasi-probability values over the n x n phase-space grid.
class WignerMap {
public:
    WignerMap(int dim, std::vector<double> values);

    int dim() const { return dim_; }
    double at(int a, int a_prime) const { return values_[static_cast<std::size_t>(a) * dim_ + a_prime]; }
    double at(WeylIndex idx) const { return at(idx.a, idx.a_prime); }
    const std::vector<double>& values() const { return values_; }

    double sum() const;
    /// Total weight of the negative values, sum_{W<0} |W|.
    double negativity() const;

private:
    int dim_;
    std::vector<double> values_;
};

/// Discrete Wigner function W_a = n^{-1} Tr(A_a rho).
WignerMap wigner(const DensityMatrix& rho);

/// Mana M = ln sum_a |W_a|. Zero exactly when the map is non-negative.
double mana(const WignerMap& map);
double mana(const DensityMatrix& rho);

/// Inverse transform rho = sum_a W_a A_a. Round-trips wigner() to 1e-12.
DensityMatrix reconstruct(const WignerMap& map);

}  // namespace manasim::phase_space
