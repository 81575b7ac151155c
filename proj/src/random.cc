#include "cohdil/random.h"

#include <cmath>

namespace cohdil {

Matrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            double re = n(rng);
            double im = n(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

PureState random_pure_state(std::size_t d, Rng& rng) {
    return PureState::normalized(random_matrix(d, 1, rng).col(0));
}

PureState random_real_state(std::size_t d, Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::abs(n(rng));
    return PureState::normalized(std::move(v));
}

HermitianMatrix random_hermitian(std::size_t d, Rng& rng) {
    Matrix g = random_matrix(d, d, rng);
    return HermitianMatrix(Matrix((g + g.adjoint()) * 0.5));
}

HermitianMatrix random_density(std::size_t d, Rng& rng) {
    Matrix g = random_matrix(d, d, rng);
    Matrix w = g * g.adjoint();
    w /= w.trace().real();
    return HermitianMatrix(w);
}

Matrix random_unitary(std::size_t d, Rng& rng) {
    Matrix g = random_matrix(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        Complex diag = r(i, i);
        double a = std::abs(diag);
        if (a > 0.0) q.col(i) *= diag / a;
    }
    return q;
}

}  // namespace cohdil
