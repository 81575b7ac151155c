#include "cohdil/hermitian.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cohdil {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kAntiHermitianTol = 1e-10;
constexpr double kStateTol = 1e-8;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

// Hermitian square root with negative eigenvalues clamped to zero.
Matrix psd_sqrt(const Matrix& x) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x);
    RealVector ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

void require_state(const HermitianMatrix& x, const char* name) {
    double scale = 1.0 + operator_norm(x);
    if (min_eigenvalue(x) < -kStateTol * scale) {
        throw std::domain_error(std::string("fidelity: ") + name + " is not positive semidefinite");
    }
    if (std::abs(x.trace() - 1.0) > kStateTol * scale) {
        throw std::domain_error(std::string("fidelity: ") + name + " does not have unit trace");
    }
}

}  // namespace

PureState::PureState(Vector amps) : amps_(std::move(amps)) {
    if (amps_.size() == 0) {
        throw std::invalid_argument("PureState: dimension must be at least 1");
    }
    double n2 = amps_.squaredNorm();
    if (std::abs(n2 - 1.0) > kNormTol) {
        throw std::invalid_argument("PureState: amplitudes are not normalized (|amps|^2 = " +
                                    std::to_string(n2) + ")");
    }
}

PureState PureState::normalized(Vector amps) {
    if (amps.size() == 0) {
        throw std::invalid_argument("PureState: dimension must be at least 1");
    }
    double n = amps.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("PureState: cannot normalize a zero or non-finite vector");
    }
    amps /= n;
    return PureState(std::move(amps));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (dim == 0) throw std::invalid_argument("PureState::basis: dimension must be at least 1");
    if (index >= dim) throw std::invalid_argument("PureState::basis: index out of range");
    Vector v = Vector::Zero(idx(dim));
    v(idx(index)) = 1.0;
    return PureState(std::move(v));
}

HermitianMatrix::HermitianMatrix(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("HermitianMatrix: matrix is not square");
    }
    Matrix herm = (m + m.adjoint()) * 0.5;
    double anti = m.size() == 0 ? 0.0 : ((m - m.adjoint()) * 0.5).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff());
    if (anti > kAntiHermitianTol * scale) {
        throw std::invalid_argument("HermitianMatrix: anti-Hermitian part " + std::to_string(anti) +
                                    " exceeds tolerance");
    }
    m_ = std::move(herm);
}

HermitianMatrix HermitianMatrix::zero(std::size_t dim) {
    return HermitianMatrix(Matrix::Zero(idx(dim), idx(dim)), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
    return HermitianMatrix(Matrix::Identity(idx(dim), idx(dim)), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& diag) {
    Matrix m = Matrix::Zero(diag.size(), diag.size());
    m.diagonal() = diag.cast<Complex>();
    return HermitianMatrix(std::move(m), Trusted{});
}

HermitianMatrix HermitianMatrix::projector(const PureState& phi) {
    return HermitianMatrix(phi.projector(), Trusted{});
}

HermitianMatrix HermitianMatrix::from_real(const Eigen::MatrixXd& m) {
    return HermitianMatrix(Matrix(m.cast<Complex>()));
}

double HermitianMatrix::max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
    require_same_dim(dim(), o.dim(), "HermitianMatrix::operator+");
    return HermitianMatrix(Matrix(m_ + o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
    require_same_dim(dim(), o.dim(), "HermitianMatrix::operator-");
    return HermitianMatrix(Matrix(m_ - o.m_), Trusted{});
}

HermitianMatrix HermitianMatrix::operator*(double s) const { return HermitianMatrix(Matrix(m_ * s), Trusted{}); }

HermitianMatrix HermitianMatrix::transpose() const { return HermitianMatrix(Matrix(m_.transpose()), Trusted{}); }

PureState maximally_coherent(std::size_t d) {
    if (d == 0) throw std::invalid_argument("maximally_coherent: invalid dimension 0");
    return PureState(Vector::Constant(idx(d), Complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0)));
}

DiagonalMatrix dephase(const HermitianMatrix& x) { return DiagonalMatrix(x.diag()); }

Matrix dephase(const Matrix& x) {
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    out.diagonal() = x.diagonal();
    return out;
}

double inner(const HermitianMatrix& x, const HermitianMatrix& y) {
    require_same_dim(x.dim(), y.dim(), "inner");
    return (x.matrix().conjugate().cwiseProduct(y.matrix())).sum().real();
}

Complex inner(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw std::invalid_argument("inner: dimension mismatch");
    }
    return x.conjugate().cwiseProduct(y).sum();
}

RealVector eigenvalues(const HermitianMatrix& x) {
    if (x.dim() == 0) return RealVector();
    Eigen::SelfAdjointEigenSolver<Matrix> es(x.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

double min_eigenvalue(const HermitianMatrix& x) {
    RealVector ev = eigenvalues(x);
    return ev.size() == 0 ? 0.0 : ev(0);
}

double max_eigenvalue(const HermitianMatrix& x) {
    RealVector ev = eigenvalues(x);
    return ev.size() == 0 ? 0.0 : ev(ev.size() - 1);
}

double operator_norm(const HermitianMatrix& x) {
    RealVector ev = eigenvalues(x);
    return ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
}

bool is_psd(const HermitianMatrix& x, double tol) {
    RealVector ev = eigenvalues(x);
    if (ev.size() == 0) return true;
    double norm = ev.cwiseAbs().maxCoeff();
    return ev(0) >= -tol * (1.0 + norm);
}

double fidelity(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "fidelity");
    require_state(rho, "rho");
    require_state(sigma, "sigma");
    Matrix sr = psd_sqrt(rho.matrix());
    Matrix inner_op = sr * sigma.matrix() * sr;
    inner_op = (inner_op + inner_op.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> es(inner_op, Eigen::EigenvaluesOnly);
    double root_sum = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double fidelity_pure(const PureState& phi, const HermitianMatrix& sigma) {
    require_same_dim(phi.dim(), sigma.dim(), "fidelity_pure");
    return (phi.amps().adjoint() * sigma.matrix() * phi.amps())(0, 0).real();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& x, Subsystem keep, std::size_t dim_a, std::size_t dim_b) {
    const Eigen::Index da = idx(dim_a);
    const Eigen::Index db = idx(dim_b);
    if (x.rows() != x.cols() || x.rows() != da * db) {
        throw std::invalid_argument("partial_trace: operator dimension " + std::to_string(x.rows()) +
                                    " does not factor as " + std::to_string(dim_a) + " x " +
                                    std::to_string(dim_b));
    }
    if (keep == Subsystem::A) {
        Matrix out(da, da);
        for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index j = 0; j < da; ++j) {
                out(i, j) = x.block(i * db, j * db, db, db).trace();
            }
        }
        return out;
    }
    Matrix out = Matrix::Zero(db, db);
    for (Eigen::Index i = 0; i < da; ++i) {
        out += x.block(i * db, i * db, db, db);
    }
    return out;
}

HermitianMatrix partial_trace(const HermitianMatrix& x, Subsystem keep, std::size_t dim_a, std::size_t dim_b) {
    return HermitianMatrix(partial_trace(x.matrix(), keep, dim_a, dim_b));
}

Matrix matrix_unit(std::size_t d, std::size_t i, std::size_t j) {
    if (i >= d || j >= d) throw std::invalid_argument("matrix_unit: index out of range");
    Matrix m = Matrix::Zero(idx(d), idx(d));
    m(idx(i), idx(j)) = 1.0;
    return m;
}

}  // namespace cohdil
