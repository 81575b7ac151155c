#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohdil/channel.h"
#include "cohdil/hermitian.h"
#include "cohdil/sdp.h"

namespace cohdil {

enum class OperationClass { MIO, DIO };

std::string to_string(OperationClass op);

struct EngineOptions {
    sdp::SolveOptions solver;
    /// Bisection stops once the bracket on m is narrower than this.
    double bisection_tol = 1e-6;
    /// A fixed-m DIO margin t* >= -feasibility_tol counts as feasible.
    double feasibility_tol = 1e-8;
    /// Subtracted before rounding tr G (resp. m*) up to an integer.
    double rounding_slack = 1e-9;
    /// Attach the dual certificate to dilution results.
    bool with_dual = true;
};

/// Dual program  max a + b(1 - eps)  s.t.  offdiag <= I,  aI + b phi + offdiag <= I,
/// with offdiag Hermitian and zero on the diagonal.
///
/// At eps = 0 the supremum is generally approached only as a -> -inf. The value then comes
/// from  max tr(Z phi)  s.t.  Z >= 0, Delta(Z) = I, the certificate is reported as a = 0,
/// b = value, offdiag = I - Z, and `attained` says whether that triple is feasible.
struct DualCertificate {
    double a = 0.0;
    double b = 0.0;
    HermitianMatrix offdiag;
    double value = 0.0;
    bool attained = true;
    sdp::Status status = sdp::Status::numerical_failure;
};

struct DilutionResult {
    explicit DilutionResult(PureState target) : phi(std::move(target)) {}

    /// tr G* (MIO) or m* (DIO).
    double value = 0.0;
    double cost_bits_continuous = 0.0;
    double cost_bits_integer = 0.0;
    HermitianMatrix C_opt;
    DiagonalMatrix G_opt;
    std::optional<DualCertificate> dual;
    sdp::Status status = sdp::Status::numerical_failure;
    OperationClass operation_class = OperationClass::MIO;
    double epsilon = 0.0;
    PureState phi;
    /// Backend SDP solves behind the result.
    int solves = 0;
    std::vector<std::string> warnings;

    bool ok() const { return status == sdp::Status::optimal; }
};

/// Raised by the scalar-valued programs when the backend does not reach optimality.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, sdp::Status status) : std::runtime_error(what), status_(status) {}
    sdp::Status status() const { return status_; }

private:
    sdp::Status status_;
};

enum class FidelityConstraint { equal, at_least };

/// min tr G  s.t.  0 <= C <= G,  tr C = 1,  tr C phi = 1 - eps (or >= 1 - eps),  G diagonal.
/// Throws std::invalid_argument unless 0 <= eps < 1.
DilutionResult mio_dilution(const PureState& phi, double eps, const EngineOptions& opts = {},
                            FidelityConstraint fidelity = FidelityConstraint::equal);

enum class Feasibility { feasible, infeasible, unknown };

std::string to_string(Feasibility f);

/// Fixed-m DIO system  0 <= C <= m Delta(C),  tr C = 1,  tr C phi = 1 - eps,  decided through
/// max t  s.t.  m Delta(C) - C >= t R, with the diagonal reference R = Delta(phi phi^dag) + 1e-3 I/d.
struct DioMargin {
    Feasibility verdict = Feasibility::unknown;
    double margin = 0.0;
    HermitianMatrix C;
    sdp::Status status = sdp::Status::numerical_failure;
    /// Backend solves, including re-solves at tighter or looser tolerances.
    int solves = 0;
};

DioMargin dio_margin(const PureState& phi, double eps, double m, const EngineOptions& opts = {});
Feasibility dio_feasible(const PureState& phi, double eps, double m, const EngineOptions& opts = {});

/// Bisection for the least feasible m in [1, d]. Unknown verdicts count as infeasible and
/// are recorded in `warnings`.
DilutionResult dio_dilution(const PureState& phi, double eps, const EngineOptions& opts = {});

DualCertificate dual_program(const PureState& phi, double eps, const EngineOptions& opts = {});

/// Smoothed max-relative-entropy monotones, in bits. Throw SolverError on backend failure.
double c_max_eps(const PureState& phi, double eps, const EngineOptions& opts = {});
double c_max_delta_eps(const PureState& phi, double eps, const EngineOptions& opts = {});

struct SandwichBounds {
    double lower = 0.0;
    double integer_cost = 0.0;
    double upper = 0.0;
    double lower_delta = 0.0;
    double integer_cost_delta = 0.0;
    double upper_delta = 0.0;
    bool holds = false;
};

/// lower <= integer cost <= lower + 1 for MIO against c_max_eps and for DIO against
/// c_max_delta_eps, each within 1e-6.
SandwichBounds sandwich_bounds_check(const PureState& phi, double eps, const EngineOptions& opts = {});

/// Explicit dilution channel at the integer dimension m = ceil(value): the constraint system is
/// re-solved at that m, and the resulting (C, D) are fed to reconstruct_dilution_channel.
struct ChannelRealization {
    std::size_t m = 1;
    HermitianMatrix C;
    HermitianMatrix D;
    ChoiOperator channel;
    double margin = 0.0;
};

/// Throws SolverError if the re-solve fails and std::invalid_argument if `result` is not optimal.
ChannelRealization realize_channel(const DilutionResult& result, const EngineOptions& opts = {});

/// The problem instances behind the programs above, for dumping.
sdp::SdpProblem mio_problem(const PureState& phi, double eps, FidelityConstraint fidelity = FidelityConstraint::equal);
sdp::SdpProblem dio_margin_problem(const PureState& phi, double eps, double m);
sdp::SdpProblem dual_problem(const PureState& phi, double eps);

}  // namespace cohdil
