#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "cohdil/channel.h"
#include "cohdil/checks.h"
#include "cohdil/oracle.h"
#include "cohdil/random.h"

namespace cohdil {
namespace {

ChoiOperator identity_channel(std::size_t d) {
    return choi_of(d, d, [d](std::size_t i, std::size_t j) { return matrix_unit(d, i, j); });
}

ChoiOperator dephasing_channel(std::size_t d) {
    return choi_of(d, d, [d](std::size_t i, std::size_t j) { return i == j ? matrix_unit(d, i, i) : Matrix(Matrix::Zero(d, d)); });
}

ChoiOperator unitary_channel(const Matrix& u) {
    const std::size_t d = static_cast<std::size_t>(u.rows());
    return choi_of(d, d, [&](std::size_t i, std::size_t j) { return Matrix(u * matrix_unit(d, i, j) * u.adjoint()); });
}

bool close(const Matrix& a, const Matrix& b, double tol = 1e-12) { return (a - b).cwiseAbs().maxCoeff() <= tol; }

TEST(ChoiOf, IdentityChannel) {
    const ChoiOperator j = identity_channel(2);
    Vector omega = Vector::Zero(4);
    omega(0) = omega(3) = 1.0;
    EXPECT_TRUE(close(j.matrix().matrix(), omega * omega.adjoint()));
}

TEST(ChoiOf, DephasingChannel) {
    Matrix expect = Matrix::Zero(4, 4);
    expect(0, 0) = expect(3, 3) = 1.0;
    EXPECT_TRUE(close(dephasing_channel(2).matrix().matrix(), expect));
}

TEST(ChoiOf, Replacer) {
    Rng rng(4);
    const HermitianMatrix sigma = random_density(3, rng);
    const ChoiOperator j = choi_of(2, 3, [&](std::size_t a, std::size_t b) {
        return a == b ? sigma.matrix() : Matrix(Matrix::Zero(3, 3));
    });
    EXPECT_TRUE(close(j.matrix().matrix(), kron(Matrix(Matrix::Identity(2, 2)), sigma.matrix())));
}

TEST(Apply, Examples) {
    Rng rng(5);
    const HermitianMatrix x = random_hermitian(3, rng);
    EXPECT_TRUE(close(cohdil::apply(identity_channel(3), x).matrix(), x.matrix()));
    const HermitianMatrix out = cohdil::apply(dephasing_channel(2), HermitianMatrix::projector(maximally_coherent(2)));
    EXPECT_TRUE(close(out.matrix(), Matrix(Matrix::Identity(2, 2) * 0.5)));
    const HermitianMatrix rho = random_density(4, rng);
    EXPECT_TRUE(close(depolarize(rho, 1.0).matrix(), Matrix(Matrix::Identity(4, 4) * 0.25)));
    EXPECT_TRUE(close(depolarize(rho, 0.0).matrix(), rho.matrix()));
    EXPECT_THROW(depolarize(rho, 1.5), std::invalid_argument);
}

TEST(Adjoint, Examples) {
    EXPECT_TRUE(close(adjoint(identity_channel(3)).matrix().matrix(), identity_channel(3).matrix().matrix()));
    Rng rng(6);
    const ChoiOperator j = random_channel(ChannelFamily::cptp, 3, rng);
    const HermitianMatrix tr_in = partial_trace(adjoint(j).matrix(), Subsystem::B, 3, 3);
    EXPECT_TRUE(close(tr_in.matrix(), Matrix(Matrix::Identity(3, 3)), 1e-10));
    // <X, E(Y)> = <E^dag(X), Y>
    const Matrix x = random_matrix(3, 3, rng);
    const Matrix y = random_matrix(3, 3, rng);
    EXPECT_NEAR(std::abs(inner(x, cohdil::apply(j, y)) - inner(cohdil::apply(adjoint(j), x), y)), 0.0, 1e-10);
}

TEST(Depolarize, SelfAdjoint) {
    Rng rng(7);
    for (int k = 0; k < 5; ++k) {
        const Matrix x = random_matrix(4, 4, rng);
        const Matrix y = random_matrix(4, 4, rng);
        EXPECT_NEAR(std::abs(inner(depolarize(x, 0.3), y) - inner(x, depolarize(y, 0.3))), 0.0, 1e-12);
    }
}

TEST(Verdict, Examples) {
    const ChannelVerdict id = verdict(identity_channel(3));
    EXPECT_TRUE(id.is_cp && id.is_tp && id.is_unital && id.is_mio && id.is_dio);
    const ChannelVerdict deph = verdict(dephasing_channel(3));
    EXPECT_TRUE(deph.is_cp && deph.is_tp && deph.is_unital && deph.is_mio && deph.is_dio);
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    const ChannelVerdict had = verdict(unitary_channel(h / std::sqrt(2.0)));
    EXPECT_TRUE(had.is_cp && had.is_tp && had.is_unital);
    EXPECT_FALSE(had.is_mio);
    EXPECT_FALSE(had.is_dio);
    EXPECT_GT(had.worst_violation, 0.1);
}

TEST(Twirl, Examples) {
    const Matrix psi3 = maximally_coherent(3).projector();
    EXPECT_TRUE(close(twirl(psi3), psi3));
    EXPECT_TRUE(close(twirl(matrix_unit(3, 0, 0)), Matrix(Matrix::Identity(3, 3) / 3.0)));
    const Matrix psi2 = maximally_coherent(2).projector();
    EXPECT_TRUE(close(twirl(matrix_unit(2, 0, 1)), Matrix(psi2 - Matrix::Identity(2, 2) / 2.0)));
    const Matrix psi4 = maximally_coherent(4).projector();
    EXPECT_TRUE(close(twirl(matrix_unit(4, 1, 3)), Matrix((psi4 - Matrix::Identity(4, 4) / 4.0) / 3.0)));
}

TEST(Twirl, MatchesPermutationSum) {
    Rng rng(8);
    for (std::size_t m = 1; m <= 4; ++m) {
        for (int k = 0; k < 3; ++k) {
            const HermitianMatrix x = random_hermitian(m, rng);
            EXPECT_TRUE(close(twirl(x).matrix(), oracle::permutation_twirl_reference(x).matrix(), 1e-12));
        }
    }
}

TEST(Reconstruct, IncoherentTarget) {
    const HermitianMatrix c = HermitianMatrix::projector(PureState::basis(3, 0));
    const ChoiOperator j = reconstruct_dilution_channel(c, HermitianMatrix::zero(3), 1, 3);
    const ChannelVerdict v = verdict(j);
    EXPECT_TRUE(v.is_cp && v.is_tp && v.is_mio);
    EXPECT_NEAR(fidelity_pure(PureState::basis(3, 0), cohdil::apply(j, HermitianMatrix::projector(maximally_coherent(1)))), 1.0,
                1e-12);
}

TEST(Reconstruct, MaximallyCoherentTarget) {
    const std::size_t d = 4;
    const HermitianMatrix c = HermitianMatrix::projector(maximally_coherent(d));
    const ChoiOperator j = reconstruct_dilution_channel(c, HermitianMatrix::identity(d) - c, d, d);
    const ChannelVerdict v = verdict(j);
    EXPECT_TRUE(v.is_cp && v.is_tp && v.is_mio);
    EXPECT_NEAR(fidelity_pure(maximally_coherent(d), cohdil::apply(j, c)), 1.0, 1e-12);
}

TEST(Reconstruct, RejectsBadInputs) {
    const HermitianMatrix c = HermitianMatrix::projector(maximally_coherent(2));
    EXPECT_THROW(reconstruct_dilution_channel(c * 2.0, HermitianMatrix::identity(2) - c, 2, 2), std::invalid_argument);
    EXPECT_THROW(reconstruct_dilution_channel(c, c - HermitianMatrix::identity(2), 2, 2), std::invalid_argument);
    EXPECT_THROW(reconstruct_dilution_channel(c, c, 1, 2), std::invalid_argument);
}

TEST(ChoiText, RoundTrip) {
    Rng rng(9);
    const ChoiOperator j = random_channel(ChannelFamily::cptp, 3, rng);
    std::stringstream ss;
    write_choi(ss, j);
    const ChoiOperator back = read_choi(ss);
    EXPECT_EQ(back.dim_in(), 3u);
    EXPECT_EQ(back.dim_out(), 3u);
    EXPECT_TRUE(close(back.matrix().matrix(), j.matrix().matrix(), 1e-15));
    std::istringstream bad("choi 2 2\n1 0\n");
    EXPECT_THROW(read_choi(bad), std::exception);
}

TEST(ChoiEquivalences, RandomSuite) {
    Rng rng(10);
    const EquivalenceSummary s = choi_equivalence_suite(rng, 100, 4);
    for (const auto& t : s.tallies) {
        EXPECT_EQ(t.mismatches, 0) << t.name;
        EXPECT_GT(t.seen_true, 0) << t.name;
        EXPECT_GT(t.seen_false, 0) << t.name;
    }
    EXPECT_TRUE(s.pass());
}

}  // namespace
}  // namespace cohdil
