#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cohdil/hermitian.h"
#include "cohdil/random.h"

namespace cohdil {
namespace {

HermitianMatrix diag2(double a, double b) { return HermitianMatrix::diagonal(RealVector{{a, b}}); }

TEST(PureState, RejectsUnnormalized) {
    EXPECT_THROW(PureState(Vector{{Complex(1.0), Complex(1.0)}}), std::invalid_argument);
    EXPECT_THROW(PureState(Vector(0)), std::invalid_argument);
    EXPECT_THROW(PureState::normalized(Vector::Zero(3)), std::invalid_argument);
    EXPECT_NEAR(PureState::normalized(Vector{{Complex(3.0), Complex(0, 4.0)}}).amps().norm(), 1.0, 1e-15);
}

TEST(MaximallyCoherent, Examples) {
    EXPECT_EQ(maximally_coherent(1).amps()(0), Complex(1.0));
    const PureState p2 = maximally_coherent(2);
    EXPECT_NEAR(p2[0].real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(p2[1].real(), 1 / std::sqrt(2.0), 1e-15);
    const PureState p8 = maximally_coherent(8);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(p8[i].real(), 1 / std::sqrt(8.0), 1e-15);
    EXPECT_THROW(maximally_coherent(0), std::invalid_argument);
}

TEST(HermitianMatrix, RejectsNonHermitian) {
    Matrix m(2, 2);
    m << 1, 2, 0, 1;
    EXPECT_THROW(HermitianMatrix{m}, std::invalid_argument);
    m << 1, Complex(0, 1), Complex(0, -1), 1;
    EXPECT_NO_THROW(HermitianMatrix{m});
}

TEST(Dephase, Examples) {
    EXPECT_TRUE(dephase(HermitianMatrix::identity(3)).diagonal().isApprox(RealVector::Ones(3)));
    const DiagonalMatrix d = dephase(HermitianMatrix::projector(maximally_coherent(2)));
    EXPECT_NEAR(d.diagonal()(0), 0.5, 1e-15);
    EXPECT_NEAR(d.diagonal()(1), 0.5, 1e-15);
    const RealVector v{{0.3, -1.2, 4.0}};
    EXPECT_TRUE(dephase(HermitianMatrix::diagonal(v)).diagonal().isApprox(v));
}

TEST(Fidelity, Examples) {
    Rng rng(1);
    const HermitianMatrix rho = random_density(3, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-8);
    const HermitianMatrix p0 = HermitianMatrix::projector(PureState::basis(2, 0));
    const HermitianMatrix p1 = HermitianMatrix::projector(PureState::basis(2, 1));
    EXPECT_NEAR(fidelity(p0, p1), 0.0, 1e-8);
    EXPECT_NEAR(fidelity(p0, HermitianMatrix::identity(2) * 0.5), 0.5, 1e-8);
    EXPECT_THROW(fidelity(p0, HermitianMatrix::identity(2)), std::domain_error);
}

TEST(FidelityPure, Examples) {
    const PureState zero = PureState::basis(5, 0);
    EXPECT_NEAR(fidelity_pure(zero, HermitianMatrix::projector(zero)), 1.0, 1e-15);
    EXPECT_NEAR(fidelity_pure(zero, HermitianMatrix::projector(maximally_coherent(5))), 0.2, 1e-15);
    Rng rng(2);
    for (int k = 0; k < 5; ++k) {
        const PureState phi = random_pure_state(4, rng);
        const Matrix u = random_unitary(4, rng);
        const Vector uphi = u * phi.amps();
        const HermitianMatrix sigma(Matrix(uphi * uphi.adjoint()));
        EXPECT_NEAR(fidelity_pure(phi, sigma), std::norm(phi.amps().dot(uphi)), 1e-12);
    }
    EXPECT_THROW(fidelity_pure(zero, HermitianMatrix::identity(2)), std::invalid_argument);
}

TEST(MinEigenvalue, Examples) {
    EXPECT_NEAR(min_eigenvalue(HermitianMatrix::identity(4)), 1.0, 1e-15);
    EXPECT_NEAR(min_eigenvalue(diag2(3, -2)), -2.0, 1e-15);
    EXPECT_NEAR(min_eigenvalue(HermitianMatrix::projector(maximally_coherent(6))), 0.0, 1e-14);
}

TEST(IsPsd, RelativeTolerance) {
    EXPECT_TRUE(is_psd(diag2(1.0, -1e-9)));
    EXPECT_FALSE(is_psd(diag2(1.0, -1e-6)));
    EXPECT_TRUE(is_psd(diag2(1e6, -1e-3)));
}

TEST(PartialTrace, Examples) {
    Rng rng(3);
    const HermitianMatrix x = random_hermitian(2, rng);
    const HermitianMatrix y = random_hermitian(3, rng);
    const HermitianMatrix xy = kron(x, y);
    EXPECT_TRUE(partial_trace(xy, Subsystem::A, 2, 3).matrix().isApprox(x.matrix() * y.trace(), 1e-12));
    EXPECT_TRUE(partial_trace(kron(HermitianMatrix::identity(2), y), Subsystem::B, 2, 3)
                    .matrix()
                    .isApprox(y.matrix() * 2.0, 1e-12));
}

TEST(Random, Reproducible) {
    Rng a(42);
    Rng b(42);
    EXPECT_TRUE(random_pure_state(6, a).amps().isApprox(random_pure_state(6, b).amps()));
    const Matrix u = random_unitary(5, a);
    EXPECT_TRUE((u.adjoint() * u).isApprox(Matrix::Identity(5, 5), 1e-12));
    const HermitianMatrix rho = random_density(4, a);
    EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
    EXPECT_TRUE(is_psd(rho));
}

}  // namespace
}  // namespace cohdil
