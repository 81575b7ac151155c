#include <cmath>

#include <gtest/gtest.h>

#include "cohdil/dilution.h"
#include "cohdil/oracle.h"
#include "cohdil/random.h"

namespace cohdil {
namespace {

EngineOptions no_dual() {
    EngineOptions o;
    o.with_dual = false;
    return o;
}

TEST(Mio, IncoherentTargetIsFree) {
    for (double eps : {0.0, 0.05, 0.3}) {
        const DilutionResult r = mio_dilution(PureState::basis(4, 0), eps);
        ASSERT_TRUE(r.ok());
        EXPECT_NEAR(r.cost_bits_continuous, 0.0, 1e-7);
        EXPECT_EQ(r.cost_bits_integer, 0.0);
        EXPECT_NEAR(r.G_opt.trace(), 1.0, 1e-7);
        EXPECT_NEAR(fidelity_pure(r.phi, r.C_opt), 1.0 - eps, 1e-7);
    }
}

TEST(Mio, MaximallyCoherentAtZero) {
    for (std::size_t d : {2, 3, 5, 8}) {
        const DilutionResult r = mio_dilution(maximally_coherent(d), 0.0);
        ASSERT_TRUE(r.ok());
        EXPECT_NEAR(r.cost_bits_continuous, std::log2(static_cast<double>(d)), 1e-7);
        ASSERT_TRUE(r.dual.has_value());
        EXPECT_NEAR(r.dual->value, static_cast<double>(d), 1e-6);
    }
}

TEST(Mio, AnalyticAtZero) {
    Rng rng(21);
    for (std::size_t d = 2; d <= 6; ++d) {
        const PureState phi = random_pure_state(d, rng);
        EXPECT_NEAR(mio_dilution(phi, 0.0, no_dual()).cost_bits_continuous, oracle::analytic_mio_eps0(phi), 1e-6);
    }
}

TEST(Mio, RejectsBadEpsilon) {
    EXPECT_THROW(mio_dilution(maximally_coherent(2), -0.1), std::invalid_argument);
    EXPECT_THROW(mio_dilution(maximally_coherent(2), 1.0), std::invalid_argument);
}

TEST(Mio, OneDimensional) {
    const DilutionResult r = mio_dilution(PureState::basis(1, 0), 0.0);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(r.cost_bits_continuous, 0.0);
}

TEST(Mio, FidelityVariantsAgree) {
    Rng rng(22);
    for (int k = 0; k < 5; ++k) {
        const PureState phi = random_pure_state(2 + static_cast<std::size_t>(k), rng);
        const double eps = 0.02 + 0.03 * k;
        const double eq = mio_dilution(phi, eps, no_dual(), FidelityConstraint::equal).value;
        const double ge = mio_dilution(phi, eps, no_dual(), FidelityConstraint::at_least).value;
        EXPECT_NEAR(eq, ge, 1e-7);
    }
}

TEST(Mio, StrongDuality) {
    Rng rng(23);
    for (int k = 0; k < 5; ++k) {
        const PureState phi = random_pure_state(3 + static_cast<std::size_t>(k), rng);
        const DilutionResult r = mio_dilution(phi, 0.05, EngineOptions{});
        ASSERT_TRUE(r.ok());
        ASSERT_TRUE(r.dual.has_value());
        EXPECT_NEAR(std::log2(r.dual->value), r.cost_bits_continuous, 1e-6);
    }
}

TEST(DioMargin, Examples) {
    EXPECT_EQ(dio_feasible(PureState::basis(3, 0), 0.1, 1.0), Feasibility::feasible);
    for (std::size_t d : {2, 4, 6}) {
        const double dd = static_cast<double>(d);
        EXPECT_EQ(dio_feasible(maximally_coherent(d), 0.0, dd), Feasibility::feasible);
        EXPECT_EQ(dio_feasible(maximally_coherent(d), 0.0, dd - 0.5), Feasibility::infeasible);
    }
    EXPECT_THROW(dio_margin(maximally_coherent(2), 0.0, 0.5), std::invalid_argument);
}

TEST(Dio, Examples) {
    EXPECT_NEAR(dio_dilution(PureState::basis(5, 0), 0.05, no_dual()).cost_bits_continuous, 0.0, 1e-7);
    const DilutionResult full = dio_dilution(maximally_coherent(6), 0.0, no_dual());
    ASSERT_TRUE(full.ok());
    EXPECT_NEAR(full.cost_bits_continuous, std::log2(6.0), 2e-6);
    EXPECT_NEAR(full.cost_bits_integer, std::log2(6.0), 1e-12);
    const PureState half(Vector{{Complex(std::sqrt(0.5)), Complex(std::sqrt(0.5)), Complex(0.0)}});
    EXPECT_NEAR(dio_dilution(half, 0.0, no_dual()).cost_bits_continuous, 1.0, 2e-6);
}

TEST(Dio, SupportSizeAtZero) {
    Rng rng(24);
    for (std::size_t d = 2; d <= 6; ++d) {
        Vector v = random_pure_state(d, rng).amps();
        v(0) = 0.0;
        const PureState phi = PureState::normalized(v);
        EXPECT_NEAR(dio_dilution(phi, 0.0, no_dual()).cost_bits_continuous, oracle::analytic_dio_eps0(phi), 2e-6);
    }
}

TEST(Dio, NotBelowMio) {
    Rng rng(25);
    for (int k = 0; k < 4; ++k) {
        const PureState phi = random_pure_state(3 + static_cast<std::size_t>(k), rng);
        const double mio = mio_dilution(phi, 0.05, no_dual()).cost_bits_continuous;
        const double dio = dio_dilution(phi, 0.05, no_dual()).cost_bits_continuous;
        EXPECT_GE(dio, mio - 1e-6);
    }
}

TEST(Dual, IncoherentAttained) {
    const DualCertificate c = dual_program(PureState::basis(3, 0), 0.0);
    EXPECT_NEAR(c.value, 1.0, 1e-7);
    EXPECT_TRUE(c.attained);
}

TEST(Dual, GapAgainstDio) {
    const PureState phi = PureState::normalized(Vector{{Complex(0.9), Complex(0.3), Complex(0.3), Complex(0.1)}});
    const DualCertificate c = dual_program(phi, 0.01);
    const DilutionResult dio = dio_dilution(phi, 0.01, no_dual());
    EXPECT_LT(c.value, dio.value - 1e-3);
}

TEST(Monotones, EqualToCosts) {
    Rng rng(26);
    for (int k = 0; k < 3; ++k) {
        const PureState phi = random_pure_state(3 + static_cast<std::size_t>(k), rng);
        const double eps = 0.03 * (k + 1);
        EXPECT_NEAR(c_max_eps(phi, eps), mio_dilution(phi, eps, no_dual()).cost_bits_continuous, 1e-6);
        EXPECT_NEAR(c_max_delta_eps(phi, eps), dio_dilution(phi, eps, no_dual()).cost_bits_continuous, 2e-6);
    }
    EXPECT_NEAR(c_max_eps(maximally_coherent(4), 0.0), 2.0, 1e-7);
    EXPECT_NEAR(c_max_delta_eps(PureState::basis(4, 2), 0.1), 0.0, 1e-7);
}

TEST(Monotones, NonincreasingInEpsilon) {
    Rng rng(27);
    const PureState phi = random_pure_state(5, rng);
    double prev = c_max_eps(phi, 0.0);
    for (double eps : {0.01, 0.05, 0.1, 0.2, 0.4}) {
        const double v = c_max_eps(phi, eps);
        EXPECT_LE(v, prev + 1e-7);
        prev = v;
    }
}

TEST(Sandwich, Examples) {
    const SandwichBounds b = sandwich_bounds_check(maximally_coherent(8), 0.0);
    EXPECT_NEAR(b.lower, 3.0, 1e-6);
    EXPECT_NEAR(b.integer_cost, 3.0, 1e-12);
    EXPECT_NEAR(b.upper, 4.0, 1e-6);
    EXPECT_TRUE(b.holds);
    const SandwichBounds z = sandwich_bounds_check(PureState::basis(3, 0), 0.1);
    EXPECT_NEAR(z.lower, 0.0, 1e-7);
    EXPECT_EQ(z.integer_cost, 0.0);
    EXPECT_TRUE(z.holds);
    Rng rng(28);
    for (int k = 0; k < 3; ++k) EXPECT_TRUE(sandwich_bounds_check(random_pure_state(6, rng), 0.05).holds);
}

TEST(Realize, RoundTrip) {
    Rng rng(29);
    for (int k = 0; k < 3; ++k) {
        const PureState phi = random_pure_state(3 + static_cast<std::size_t>(k), rng);
        const double eps = 0.02 + 0.04 * k;
        for (const DilutionResult& r : {mio_dilution(phi, eps, no_dual()), dio_dilution(phi, eps, no_dual())}) {
            const ChannelRealization ch = realize_channel(r);
            EXPECT_EQ(static_cast<double>(ch.m), std::exp2(r.cost_bits_integer));
            const ChannelVerdict v = verdict(ch.channel);
            EXPECT_TRUE(v.is_cp);
            EXPECT_TRUE(v.is_tp);
            EXPECT_TRUE(r.operation_class == OperationClass::MIO ? v.is_mio : v.is_dio);
            const double f = fidelity_pure(phi, cohdil::apply(ch.channel, HermitianMatrix::projector(maximally_coherent(ch.m))));
            EXPECT_GE(f, 1.0 - eps - 1e-7);
        }
    }
}

TEST(Realize, MaximallyCoherentExact) {
    const DilutionResult r = mio_dilution(maximally_coherent(4), 0.0, no_dual());
    const ChannelRealization ch = realize_channel(r);
    EXPECT_EQ(ch.m, 4u);
    EXPECT_NEAR(fidelity_pure(maximally_coherent(4), cohdil::apply(ch.channel, HermitianMatrix::projector(maximally_coherent(4)))),
                1.0, 1e-7);
}

// Costs computed independently with cvxpy/Clarabel (tools/reference_values.py).
struct Reference {
    const char* name;
    PureState phi;
    double eps;
    double mio_bits;
    double dio_bits;
};

PureState test_state_d8(double alpha) {
    const double c = 1.0 / std::sqrt(8.0);
    const double beta = -alpha * c + std::sqrt(alpha * alpha * (c * c - 1.0) + 1.0);
    Vector v = Vector::Constant(8, Complex(alpha * c));
    v(0) += beta;
    return PureState::normalized(v);
}

TEST(Reference, FrozenValues) {
    const PureState three(Vector{{Complex(0.6), Complex(0, 0.48), Complex(0.64)}});
    const PureState four(Vector{{Complex(0.5), Complex(0.5), Complex(0.5), Complex(0, 0.5)}});
    const Reference refs[] = {
        {"alpha=0.25 eps=0.01", test_state_d8(0.25), 0.01, 0.8641266067, 2.7484612052},
        {"alpha=0.25 eps=0.1", test_state_d8(0.25), 0.1, 0.0, 0.0},
        {"alpha=0.5 eps=0.01", test_state_d8(0.5), 0.01, 1.8876239959, 2.9411063067},
        {"alpha=0.5 eps=0.1", test_state_d8(0.5), 0.1, 1.0135150137, 2.2630343946},
        {"alpha=0.75 eps=0.01", test_state_d8(0.75), 0.01, 2.5708116963, 2.9741213669},
        {"alpha=0.75 eps=0.1", test_state_d8(0.75), 0.1, 2.0889076443, 2.7176002664},
        {"d=3 eps=0.01", three, 0.01, 1.5157231409, 1.5666652049},
        {"d=3 eps=0.1", three, 0.1, 1.2964471136, 1.3843476978},
        {"d=4 eps=0.01", four, 0.01, 1.9855004303, 1.9855004300},
        {"d=4 eps=0.1", four, 0.1, 1.8479969065, 1.8479969072},
    };
    for (const Reference& ref : refs) {
        EXPECT_NEAR(mio_dilution(ref.phi, ref.eps, no_dual()).cost_bits_continuous, ref.mio_bits, 1e-6) << ref.name;
        EXPECT_NEAR(dio_dilution(ref.phi, ref.eps, no_dual()).cost_bits_continuous, ref.dio_bits, 2e-6) << ref.name;
    }
}

}  // namespace
}  // namespace cohdil
