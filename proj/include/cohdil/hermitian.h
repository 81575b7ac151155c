#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>

#include <Eigen/Dense>

namespace cohdil {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Which factor of a bipartite space A (x) B a partial trace keeps.
enum class Subsystem { A, B };

/// Normalized pure state in the referenced basis {|0>, ..., |d-1>}.
class PureState {
public:
    /// Throws std::invalid_argument if `amps` is empty or its norm differs from 1 by more than 1e-12.
    explicit PureState(Vector amps);

    /// Rescales `amps` to unit norm. Throws on empty or zero vectors.
    static PureState normalized(Vector amps);
    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Vector& amps() const { return amps_; }
    Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

    /// |phi><phi|
    Matrix projector() const { return amps_ * amps_.adjoint(); }

private:
    Vector amps_;
};

/// Dense complex Hermitian operator. Construction symmetrizes (X + X^dag)/2 and
/// rejects inputs whose anti-Hermitian part exceeds 1e-10 (relative to max(1, max|X_ij|)).
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const Matrix& m);

    static HermitianMatrix zero(std::size_t dim);
    static HermitianMatrix identity(std::size_t dim);
    static HermitianMatrix diagonal(const RealVector& diag);
    static HermitianMatrix projector(const PureState& phi);
    static HermitianMatrix from_real(const Eigen::MatrixXd& m);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }

    double trace() const { return m_.trace().real(); }
    RealVector diag() const { return m_.diagonal().real(); }
    /// Largest elementwise modulus.
    double max_abs() const;

    HermitianMatrix operator+(const HermitianMatrix& o) const;
    HermitianMatrix operator-(const HermitianMatrix& o) const;
    HermitianMatrix operator*(double s) const;
    HermitianMatrix transpose() const;

private:
    struct Trusted {};
    HermitianMatrix(Matrix m, Trusted) : m_(std::move(m)) {}

    Matrix m_;
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& x) { return x * s; }

/// Output of the completely dephasing channel: an operator fixed by dephasing.
class DiagonalMatrix {
public:
    DiagonalMatrix() = default;
    explicit DiagonalMatrix(RealVector diag) : diag_(std::move(diag)) {}

    std::size_t dim() const { return static_cast<std::size_t>(diag_.size()); }
    const RealVector& diagonal() const { return diag_; }
    double trace() const { return diag_.sum(); }
    HermitianMatrix to_hermitian() const { return HermitianMatrix::diagonal(diag_); }

private:
    RealVector diag_;
};

/// |Psi_d> = d^{-1/2} sum_i |i>. Throws std::invalid_argument for d = 0.
PureState maximally_coherent(std::size_t d);

/// Completely dephasing channel: keeps the diagonal.
DiagonalMatrix dephase(const HermitianMatrix& x);
Matrix dephase(const Matrix& x);

/// Hilbert-Schmidt inner product <X, Y> = tr(X^dag Y); real for Hermitian arguments.
double inner(const HermitianMatrix& x, const HermitianMatrix& y);
Complex inner(const Matrix& x, const Matrix& y);

double min_eigenvalue(const HermitianMatrix& x);
double max_eigenvalue(const HermitianMatrix& x);
RealVector eigenvalues(const HermitianMatrix& x);

/// Spectral norm.
double operator_norm(const HermitianMatrix& x);

/// Accepts X as PSD iff min eigenvalue >= -tol * (1 + ||X||).
bool is_psd(const HermitianMatrix& x, double tol = 1e-8);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2. Throws std::domain_error
/// when either argument is not a unit-trace PSD operator within 1e-8.
double fidelity(const HermitianMatrix& rho, const HermitianMatrix& sigma);

/// tr(sigma |phi><phi|). Throws std::invalid_argument on dimension mismatch.
double fidelity_pure(const PureState& phi, const HermitianMatrix& sigma);

Matrix kron(const Matrix& a, const Matrix& b);
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);

/// Partial trace over the factor not named by `keep`, for X on C^{dim_a} (x) C^{dim_b}.
Matrix partial_trace(const Matrix& x, Subsystem keep, std::size_t dim_a, std::size_t dim_b);
HermitianMatrix partial_trace(const HermitianMatrix& x, Subsystem keep, std::size_t dim_a, std::size_t dim_b);

/// |i><j| in dimension d.
Matrix matrix_unit(std::size_t d, std::size_t i, std::size_t j);

}  // namespace cohdil
