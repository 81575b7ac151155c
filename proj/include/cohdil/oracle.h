#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cohdil/hermitian.h"

namespace cohdil::oracle {

/// Amplitudes with modulus at or below this count as zero in the support-size formula.
inline constexpr double kSupportThreshold = 1e-12;

struct OracleReport {
    std::string instance;
    double oracle_value = 0.0;
    double engine_value = 0.0;
    double abs_gap = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    /// E.g. amplitudes close to the support threshold.
    std::vector<std::string> flags;
};

OracleReport compare(std::string instance, double oracle_value, double engine_value, double tolerance);

/// log2 (sum_i |phi_i|)^2: the least trace of a diagonal G with G >= phi phi^dag.
double analytic_mio_eps0(const PureState& phi);

/// log2 of the support size of phi.
double analytic_dio_eps0(const PureState& phi);

/// Indices whose modulus lies above the support threshold but below 1e-6.
std::vector<std::size_t> near_zero_amplitudes(const PureState& phi);

/// Brute-force MIO cost for d = 2 in bits, without any SDP.
///
/// After removing the phases of phi (a diagonal unitary leaves the program invariant), C is
/// scanned over a steps x steps grid of the fidelity slice of the Bloch ball, and g_0 over a
/// steps-point grid above C_00; the least g_1 with G >= C is closed form. The scan is repeated
/// on shrinking windows around the incumbent. Throws std::invalid_argument for d != 2,
/// steps < 10, or eps outside [0, 1).
double grid_mio_d2(const PureState& phi, double eps, int steps);

/// (1/m!) sum over permutations pi of U_pi X U_pi^{-1}. Throws for m > 4.
HermitianMatrix permutation_twirl_reference(const HermitianMatrix& x);

}  // namespace cohdil::oracle
