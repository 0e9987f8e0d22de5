#include "manasim/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace manasim::phase_space {

namespace {

long long positive_mod(long long value, long long modulus) {
    const long long r = value % modulus;
    return r < 0 ? r + modulus : r;
}

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument(message);
}

}  // namespace

void require_odd_dimension(int dim) {
    if (dim < 3 || dim % 2 == 0) {
        std::ostringstream msg;
        msg << "discrete phase space: dimension must be odd and >= 3, got " << dim;
        fail(msg.str());
    }
}

WeylIndex WeylIndex::reduced(long long a, long long a_prime, int dim) {
    require_odd_dimension(dim);
    return {static_cast<int>(positive_mod(a, dim)), static_cast<int>(positive_mod(a_prime, dim))};
}

Complex root_of_unity(int dim, long long k) {
    require_odd_dimension(dim);
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(positive_mod(k, dim)) / dim;
    return {std::cos(angle), std::sin(angle)};
}

Matrix clock(int dim) {
    require_odd_dimension(dim);
    Matrix z = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) z(k, k) = root_of_unity(dim, k);
    return z;
}

Matrix shift(int dim) {
    require_odd_dimension(dim);
    Matrix x = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) x((k + 1) % dim, k) = 1.0;
    return x;
}

Matrix weyl(int dim, WeylIndex idx) {
    require_odd_dimension(dim);
    if (idx.a < 0 || idx.a >= dim || idx.a_prime < 0 || idx.a_prime >= dim) {
        std::ostringstream msg;
        msg << "weyl: index (" << idx.a << ", " << idx.a_prime << ") not reduced mod " << dim;
        fail(msg.str());
    }
    // Z^a X^{a'} |k> = w^{a(k+a')} |k+a'>, so each column carries one exact
    // integer power of w; the leading phase is -((n+1)/2) a a'.
    const long long half = (dim + 1) / 2;
    Matrix t = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const long long exponent =
            -half * idx.a * idx.a_prime + static_cast<long long>(idx.a) * (k + idx.a_prime);
        t((k + idx.a_prime) % dim, k) = root_of_unity(dim, exponent);
    }
    return t;
}

Matrix phase_point_operator(int dim, WeylIndex idx) {
    require_odd_dimension(dim);
    Matrix a0 = Matrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int ap = 0; ap < dim; ++ap) a0 += weyl(dim, {a, ap});
    a0 /= static_cast<double>(dim);
    if (idx.a == 0 && idx.a_prime == 0) return a0;
    const Matrix t = weyl(dim, idx);
    return t * a0 * t.adjoint();
}

DensityMatrix::DensityMatrix(Matrix entries, ValidationOptions options) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) fail("density matrix: entries must be square");
    const int n = static_cast<int>(entries_.rows());
    require_odd_dimension(n);

    const double herm_dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > options.hermiticity_tol) {
        std::ostringstream msg;
        msg << "density matrix: not Hermitian (deviation " << herm_dev << " exceeds "
            << options.hermiticity_tol << ")";
        fail(msg.str());
    }

    const double trace_dev = std::abs(entries_.trace() - Complex{1.0, 0.0});
    if (trace_dev > options.trace_tol) {
        std::ostringstream msg;
        msg << "density matrix: trace differs from 1 by " << trace_dev << " (tolerance "
            << options.trace_tol << ")";
        fail(msg.str());
    }

    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    min_eigenvalue_ = solver.eigenvalues().minCoeff();
    if (options.check_psd && min_eigenvalue_ < -options.psd_floor) {
        std::ostringstream msg;
        msg << "density matrix: not positive semidefinite (smallest eigenvalue " << min_eigenvalue_
            << " below floor -" << options.psd_floor << ")";
        fail(msg.str());
    }
}

WignerMap::WignerMap(int dim, std::vector<double> values) : dim_(dim), values_(std::move(values)) {
    require_odd_dimension(dim);
    if (values_.size() != static_cast<std::size_t>(dim) * dim) {
        std::ostringstream msg;
        msg << "wigner map: expected " << dim * dim << " values, got " << values_.size();
        fail(msg.str());
    }
}

double WignerMap::sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
}

double WignerMap::negativity() const {
    double neg = 0.0;
    for (double v : values_) {
        if (v < 0.0) neg -= v;
    }
    return neg;
}

WignerMap wigner(const DensityMatrix& rho) {
    const int n = rho.dim();
    const Matrix a0 = phase_point_operator(n, {0, 0});
    std::vector<double> values(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        for (int ap = 0; ap < n; ++ap) {
            const Matrix t = weyl(n, {a, ap});
            const Matrix point = t * a0 * t.adjoint();
            // Tr(A rho) is real for Hermitian A, rho; discard the rounding residue.
            values[static_cast<std::size_t>(a) * n + ap] = (point * rho.entries()).trace().real() / n;
        }
    }
    return {n, std::move(values)};
}

double mana(const WignerMap& map) {
    // ln sum|W| = log1p((sum W - 1) + 2 * negativity), exact for tiny arguments.
    return std::log1p((map.sum() - 1.0) + 2.0 * map.negativity());
}

double mana(const DensityMatrix& rho) { return mana(wigner(rho)); }

DensityMatrix reconstruct(const WignerMap& map) {
    const int n = map.dim();
    Matrix rho = Matrix::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int ap = 0; ap < n; ++ap) rho += map.at(a, ap) * phase_point_operator(n, {a, ap});
    // The transform pair is defined for any Hermitian unit-trace input, PSD or
    // not, so positivity is not enforced on the way back.
    return DensityMatrix(std::move(rho), {.check_psd = false});
}

}  // namespace manasim::phase_space
