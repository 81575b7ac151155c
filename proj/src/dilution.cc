#include "cohdil/dilution.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace cohdil {

using sdp::AffineMatrix;
using sdp::AffineScalar;
using sdp::SdpProblem;
using sdp::Sense;
using sdp::Status;
using sdp::VarKind;

namespace {

constexpr double kSandwichSlack = 1e-6;

void check_eps(double eps) {
    if (!(eps >= 0.0 && eps < 1.0)) {
        throw std::invalid_argument("epsilon = " + std::to_string(eps) + " outside [0, 1)");
    }
}

double dim_of(const PureState& phi) { return static_cast<double>(phi.dim()); }

// At eps = 0 the constraints tr C = 1, C >= 0, tr C phi = 1 force C = phi phi^dag, and the
// feasible set has no interior. C is then substituted as a constant instead of a variable.
struct StateBlock {
    AffineMatrix expr;
    bool variable = false;
};

StateBlock add_state(SdpProblem& p, const PureState& phi, double eps, FidelityConstraint fidelity,
                     const std::string& name) {
    const HermitianMatrix proj = HermitianMatrix::projector(phi);
    if (eps == 0.0) return StateBlock{AffineMatrix(proj), false};
    const auto v = p.add_variable(name, phi.dim(), VarKind::hermitian);
    AffineMatrix c = p.matrix(v);
    p.add_psd(c, name + " >= 0");
    p.add_equality(c.trace() - AffineScalar(1.0), "tr " + name + " = 1");
    const AffineScalar fid = c.inner(proj) - AffineScalar(1.0 - eps);
    if (fidelity == FidelityConstraint::equal) {
        p.add_equality(fid, "tr " + name + " phi = 1 - eps");
    } else {
        p.add_psd(fid * HermitianMatrix::identity(1), "tr " + name + " phi >= 1 - eps");
    }
    return StateBlock{std::move(c), true};
}

HermitianMatrix state_value(const StateBlock& s, const sdp::SdpSolution& sol, const PureState& phi,
                            const std::string& name) {
    return s.variable ? sol.hermitian(name) : HermitianMatrix::projector(phi);
}

double clamp_value(double v, double d) { return std::clamp(v, 1.0, d); }

double integer_bits(double value, double slack) {
    return std::log2(std::max(1.0, std::ceil(value - slack)));
}

SdpProblem build_mio(const PureState& phi, double eps, FidelityConstraint fidelity, const std::string& state,
                     const std::string& bound, StateBlock* c_out) {
    SdpProblem p;
    StateBlock c = add_state(p, phi, eps, fidelity, state);
    const auto g = p.add_variable(bound, phi.dim(), VarKind::diagonal_real);
    p.add_psd(p.matrix(g) - c.expr, bound + " - " + state + " >= 0");
    p.set_objective(Sense::minimize, p.matrix(g).trace());
    if (c_out) *c_out = std::move(c);
    return p;
}

// Reference R = Delta(phi) + (kappa/d) I for the margin  m Delta(C) - C >= t R. Near the optimum
// Delta(C) is close to Delta(phi), so t moves by about one unit per unit of m even when some
// amplitudes are small; with R = I a fixed tolerance on t would cost up to tol/|phi_i|^2 in m.
constexpr double kReferenceFloor = 1e-3;

HermitianMatrix margin_reference(const PureState& phi) {
    const double d = static_cast<double>(phi.dim());
    const RealVector w = phi.amps().cwiseAbs2() + RealVector::Constant(phi.amps().size(), kReferenceFloor / d);
    return HermitianMatrix::diagonal(w);
}

SdpProblem build_dio_margin(const PureState& phi, double eps, double m, StateBlock* c_out) {
    SdpProblem p;
    StateBlock c = add_state(p, phi, eps, FidelityConstraint::equal, "C");
    const auto t = p.add_variable("t", 1, VarKind::scalar_real);
    p.add_psd(m * c.expr.dephased() - c.expr - p.scalar(t) * margin_reference(phi), "m Delta(C) - C - t R >= 0");
    p.set_objective(Sense::maximize, p.scalar(t));
    if (c_out) *c_out = std::move(c);
    return p;
}

struct MarginOutcome {
    Feasibility verdict = Feasibility::unknown;
    double margin = 0.0;
    HermitianMatrix state;
    Status status = Status::numerical_failure;
    int solves = 0;
};

constexpr double kTightestTol = 1e-10;
constexpr double kTightenFactor = 1e-2;
constexpr double kLoosenFactor = 1e2;

// Solves a margin problem (max t) and decides the sign of t* against -tol. A verdict is taken
// only when certified: feasible when the primal t reaches -tol, infeasible when the dual bound
// falls below it. Otherwise the solve is repeated with tighter tolerances; if that runs out,
// the midpoint of the primal/dual bracket decides.
MarginOutcome solve_margin(const SdpProblem& p, const StateBlock& c, const PureState& phi, const std::string& name,
                           const EngineOptions& opts) {
    const double tol = opts.feasibility_tol;
    sdp::SolveOptions so = opts.solver;
    MarginOutcome out;
    std::optional<sdp::SdpSolution> last;
    for (;;) {
        sdp::SdpSolution sol = sdp::solve(p, so);
        ++out.solves;
        if (sol.status == Status::infeasible) {
            out.status = sol.status;
            out.verdict = Feasibility::infeasible;
            return out;
        }
        if (sol.status != Status::optimal) {
            if (last) break;
            // One retry at looser tolerances, accepted only if both bounds agree on the sign.
            sdp::SolveOptions loose = opts.solver;
            loose.gap_tol *= kLoosenFactor;
            loose.feas_tol *= kLoosenFactor;
            sdp::SdpSolution retry = sdp::solve(p, loose);
            ++out.solves;
            const bool above = retry.primal_value >= -tol && retry.dual_value >= -tol;
            const bool below = retry.primal_value < -tol && retry.dual_value < -tol;
            if (retry.status != Status::optimal || !(above || below)) {
                out.status = sol.status;
                out.verdict = Feasibility::unknown;
                return out;
            }
            out.verdict = above ? Feasibility::feasible : Feasibility::infeasible;
            last = std::move(retry);
            break;
        }
        last = std::move(sol);
        if (last->primal_value >= -tol) {
            out.verdict = Feasibility::feasible;
            break;
        }
        if (last->dual_value < -tol) {
            out.verdict = Feasibility::infeasible;
            break;
        }
        if (so.gap_tol <= kTightestTol && so.feas_tol <= kTightestTol) {
            out.verdict = 0.5 * (last->primal_value + last->dual_value) >= -tol ? Feasibility::feasible
                                                                                  : Feasibility::infeasible;
            break;
        }
        so.gap_tol = std::max(kTightestTol, so.gap_tol * kTightenFactor);
        so.feas_tol = std::max(kTightestTol, so.feas_tol * kTightenFactor);
    }
    if (out.verdict == Feasibility::unknown) {
        out.verdict = 0.5 * (last->primal_value + last->dual_value) >= -tol ? Feasibility::feasible
                                                                              : Feasibility::infeasible;
    }
    out.status = Status::optimal;
    out.margin = last->primal_value;
    out.state = state_value(c, *last, phi, name);
    return out;
}

// Least m in [1, d] with a feasible margin problem, to within opts.bisection_tol.
struct BisectionOutcome {
    double m = 0.0;
    HermitianMatrix state;
    Status status = Status::numerical_failure;
    int solves = 0;
    std::vector<std::string> warnings;
};

BisectionOutcome bisect(double d, const EngineOptions& opts, const std::function<MarginOutcome(double)>& margin) {
    BisectionOutcome out;
    auto probe = [&](double m) {
        MarginOutcome r = margin(m);
        out.solves += r.solves;
        if (r.verdict == Feasibility::unknown) {
            std::ostringstream w;
            w << "m = " << m << ": solver returned " << sdp::to_string(r.status) << ", treated as infeasible";
            out.warnings.push_back(w.str());
        }
        return r;
    };
    MarginOutcome lo = probe(1.0);
    if (lo.verdict == Feasibility::feasible) {
        out.m = 1.0;
        out.state = lo.state;
        out.status = Status::optimal;
        return out;
    }
    MarginOutcome hi_r = probe(d);
    if (hi_r.verdict != Feasibility::feasible) {
        out.warnings.push_back("upper bracket m = d reported infeasible");
        out.status = Status::numerical_failure;
        return out;
    }
    double lo_m = 1.0;
    double hi_m = d;
    out.state = hi_r.state;
    while (hi_m - lo_m > opts.bisection_tol) {
        const double mid = 0.5 * (lo_m + hi_m);
        MarginOutcome r = probe(mid);
        if (r.verdict == Feasibility::feasible) {
            hi_m = mid;
            out.state = r.state;
        } else {
            lo_m = mid;
        }
    }
    out.m = hi_m;
    out.status = Status::optimal;
    return out;
}

}  // namespace

std::string to_string(OperationClass op) { return op == OperationClass::MIO ? "MIO" : "DIO"; }

std::string to_string(Feasibility f) {
    switch (f) {
        case Feasibility::feasible: return "feasible";
        case Feasibility::infeasible: return "infeasible";
        case Feasibility::unknown: return "unknown";
    }
    return "?";
}

sdp::SdpProblem mio_problem(const PureState& phi, double eps, FidelityConstraint fidelity) {
    check_eps(eps);
    return build_mio(phi, eps, fidelity, "C", "G", nullptr);
}

DilutionResult mio_dilution(const PureState& phi, double eps, const EngineOptions& opts, FidelityConstraint fidelity) {
    check_eps(eps);
    DilutionResult r(phi);
    r.operation_class = OperationClass::MIO;
    r.epsilon = eps;
    const std::size_t d = phi.dim();
    if (d == 1) {
        r.value = 1.0;
        r.C_opt = HermitianMatrix::identity(1);
        r.G_opt = DiagonalMatrix(RealVector::Ones(1));
        r.status = Status::optimal;
        if (eps > 0.0) r.warnings.push_back("d = 1: the only state has fidelity 1 >= 1 - eps");
    } else {
        StateBlock c{AffineMatrix(std::size_t{1}), false};
        const SdpProblem p = build_mio(phi, eps, fidelity, "C", "G", &c);
        const sdp::SdpSolution sol = sdp::solve(p, opts.solver);
        r.solves = 1;
        r.status = sol.status;
        if (sol.status != Status::optimal) {
            r.warnings.push_back("MIO program: " + sdp::to_string(sol.status) + " (" + sol.message + ")");
            return r;
        }
        r.value = clamp_value(sol.primal_value, dim_of(phi));
        r.C_opt = state_value(c, sol, phi, "C");
        r.G_opt = DiagonalMatrix(sol.diagonal("G"));
    }
    r.cost_bits_continuous = std::log2(r.value);
    r.cost_bits_integer = integer_bits(r.value, opts.rounding_slack);
    if (opts.with_dual && d > 1) {
        r.dual = dual_program(phi, eps, opts);
        ++r.solves;
        if (r.dual->status != Status::optimal) r.warnings.push_back("dual program: " + sdp::to_string(r.dual->status));
    }
    return r;
}

sdp::SdpProblem dio_margin_problem(const PureState& phi, double eps, double m) {
    check_eps(eps);
    return build_dio_margin(phi, eps, m, nullptr);
}

DioMargin dio_margin(const PureState& phi, double eps, double m, const EngineOptions& opts) {
    check_eps(eps);
    if (!(m >= 1.0)) throw std::invalid_argument("dio_margin: m must be at least 1");
    StateBlock c{AffineMatrix(std::size_t{1}), false};
    const SdpProblem p = build_dio_margin(phi, eps, m, &c);
    const MarginOutcome r = solve_margin(p, c, phi, "C", opts);
    return DioMargin{r.verdict, r.margin, r.state, r.status, r.solves};
}

Feasibility dio_feasible(const PureState& phi, double eps, double m, const EngineOptions& opts) {
    return dio_margin(phi, eps, m, opts).verdict;
}

DilutionResult dio_dilution(const PureState& phi, double eps, const EngineOptions& opts) {
    check_eps(eps);
    DilutionResult r(phi);
    r.operation_class = OperationClass::DIO;
    r.epsilon = eps;
    const std::size_t d = phi.dim();
    if (d == 1) {
        r.value = 1.0;
        r.C_opt = HermitianMatrix::identity(1);
        r.G_opt = DiagonalMatrix(RealVector::Ones(1));
        r.status = Status::optimal;
        if (eps > 0.0) r.warnings.push_back("d = 1: the only state has fidelity 1 >= 1 - eps");
    } else {
        BisectionOutcome b = bisect(dim_of(phi), opts, [&](double m) {
            DioMargin dm = dio_margin(phi, eps, m, opts);
            return MarginOutcome{dm.verdict, dm.margin, dm.C, dm.status, dm.solves};
        });
        r.solves = b.solves;
        r.warnings = std::move(b.warnings);
        r.status = b.status;
        if (b.status != Status::optimal) return r;
        r.value = b.m;
        r.C_opt = b.state;
        r.G_opt = DiagonalMatrix(b.m * b.state.diag());
    }
    r.cost_bits_continuous = std::log2(r.value);
    r.cost_bits_integer = integer_bits(r.value, opts.rounding_slack);
    if (opts.with_dual && d > 1) {
        r.dual = dual_program(phi, eps, opts);
        ++r.solves;
        if (r.dual->status != Status::optimal) r.warnings.push_back("dual program: " + sdp::to_string(r.dual->status));
    }
    return r;
}

sdp::SdpProblem dual_problem(const PureState& phi, double eps) {
    check_eps(eps);
    const std::size_t d = phi.dim();
    const HermitianMatrix id = HermitianMatrix::identity(d);
    SdpProblem p;
    const auto a = p.add_variable("a", 1, VarKind::scalar_real);
    const auto b = p.add_variable("b", 1, VarKind::scalar_real);
    const auto c = p.add_variable("c", d, VarKind::hermitian);
    const AffineMatrix cm = p.matrix(c);
    p.add_equality(cm.dephased(), "Delta(c) = 0");
    p.add_psd(id - cm, "I - c >= 0");
    p.add_psd(id - (p.scalar(a) * id + p.scalar(b) * HermitianMatrix::projector(phi) + cm),
              "I - aI - b phi - c >= 0");
    p.set_objective(Sense::maximize, p.scalar(a) + (1.0 - eps) * p.scalar(b));
    return p;
}

DualCertificate dual_program(const PureState& phi, double eps, const EngineOptions& opts) {
    const std::size_t d = phi.dim();
    const HermitianMatrix id = HermitianMatrix::identity(d);
    const HermitianMatrix proj = HermitianMatrix::projector(phi);
    DualCertificate cert;
    cert.offdiag = HermitianMatrix::zero(d);
    if (eps == 0.0) {
        SdpProblem p;
        const auto z = p.add_variable("Z", d, VarKind::hermitian);
        const AffineMatrix zm = p.matrix(z);
        p.add_psd(zm, "Z >= 0");
        p.add_equality(zm.dephased() - id, "Delta(Z) = I");
        p.set_objective(Sense::maximize, zm.inner(proj));
        const sdp::SdpSolution sol = sdp::solve(p, opts.solver);
        cert.status = sol.status;
        if (sol.status != Status::optimal) return cert;
        const Matrix zv = sol.variable_values.at("Z");
        cert.value = sol.primal_value;
        cert.b = cert.value;
        cert.offdiag = HermitianMatrix(dephase(zv) - zv);
        const HermitianMatrix slack = id - (cert.b * proj + cert.offdiag);
        cert.attained = is_psd(slack, opts.solver.feas_tol);
        return cert;
    }
    const SdpProblem p = dual_problem(phi, eps);
    const sdp::SdpSolution sol = sdp::solve(p, opts.solver);
    cert.status = sol.status;
    if (sol.status != Status::optimal) return cert;
    cert.a = sol.scalar("a");
    cert.b = sol.scalar("b");
    cert.offdiag = HermitianMatrix(sol.variable_values.at("c") - dephase(sol.variable_values.at("c")));
    cert.value = cert.a + cert.b * (1.0 - eps);
    return cert;
}

double c_max_eps(const PureState& phi, double eps, const EngineOptions& opts) {
    check_eps(eps);
    if (phi.dim() == 1) return 0.0;
    // min lambda over rho with rho <= lambda delta, written with w = lambda delta.
    const SdpProblem p = build_mio(phi, eps, FidelityConstraint::equal, "rho", "w", nullptr);
    const sdp::SdpSolution sol = sdp::solve(p, opts.solver);
    if (sol.status != Status::optimal) {
        throw SolverError("c_max_eps: " + sdp::to_string(sol.status) + " (" + sol.message + ")", sol.status);
    }
    return std::log2(clamp_value(sol.primal_value, dim_of(phi)));
}

double c_max_delta_eps(const PureState& phi, double eps, const EngineOptions& opts) {
    check_eps(eps);
    const std::size_t d = phi.dim();
    if (d == 1) return 0.0;
    auto margin = [&](double lambda) {
        // max t  s.t.  lambda diag(delta) - rho >= t R,  delta = Delta(rho).
        SdpProblem p;
        StateBlock rho = add_state(p, phi, eps, FidelityConstraint::equal, "rho");
        const auto delta = p.add_variable("delta", d, VarKind::diagonal_real);
        const auto t = p.add_variable("t", 1, VarKind::scalar_real);
        p.add_equality(p.matrix(delta) - rho.expr.dephased(), "delta = Delta(rho)");
        p.add_psd(lambda * p.matrix(delta) - rho.expr - p.scalar(t) * margin_reference(phi),
                  "lambda delta - rho - t R >= 0");
        p.set_objective(Sense::maximize, p.scalar(t));
        return solve_margin(p, rho, phi, "rho", opts);
    };
    BisectionOutcome b = bisect(static_cast<double>(d), opts, margin);
    if (b.status != Status::optimal) {
        throw SolverError("c_max_delta_eps: bisection failed", b.status);
    }
    return std::log2(b.m);
}

SandwichBounds sandwich_bounds_check(const PureState& phi, double eps, const EngineOptions& opts) {
    EngineOptions o = opts;
    o.with_dual = false;
    SandwichBounds z;
    const DilutionResult mio = mio_dilution(phi, eps, o);
    const DilutionResult dio = dio_dilution(phi, eps, o);
    if (!mio.ok() || !dio.ok()) return z;
    z.lower = c_max_eps(phi, eps, o);
    z.integer_cost = mio.cost_bits_integer;
    z.upper = z.lower + 1.0;
    z.lower_delta = c_max_delta_eps(phi, eps, o);
    z.integer_cost_delta = dio.cost_bits_integer;
    z.upper_delta = z.lower_delta + 1.0;
    z.holds = z.lower - kSandwichSlack <= z.integer_cost && z.integer_cost <= z.upper + kSandwichSlack &&
              z.lower_delta - kSandwichSlack <= z.integer_cost_delta &&
              z.integer_cost_delta <= z.upper_delta + kSandwichSlack;
    return z;
}

ChannelRealization realize_channel(const DilutionResult& result, const EngineOptions& opts) {
    if (!result.ok()) throw std::invalid_argument("realize_channel: result is not optimal");
    const PureState& phi = result.phi;
    const double eps = result.epsilon;
    const std::size_t d = phi.dim();
    const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(result.value - opts.rounding_slack)));

    HermitianMatrix c;
    HermitianMatrix dmat;
    double margin = 0.0;
    if (d == 1) {
        c = HermitianMatrix::identity(1);
    } else if (result.operation_class == OperationClass::MIO) {
        // max t  s.t.  G - C >= t I,  tr G = m, plus the state constraints.
        SdpProblem p;
        StateBlock cs = add_state(p, phi, eps, FidelityConstraint::equal, "C");
        const auto g = p.add_variable("G", d, VarKind::diagonal_real);
        const auto t = p.add_variable("t", 1, VarKind::scalar_real);
        p.add_equality(p.matrix(g).trace() - AffineScalar(static_cast<double>(m)), "tr G = m");
        p.add_psd(p.matrix(g) - cs.expr - p.scalar(t) * HermitianMatrix::identity(d), "G - C - t I >= 0");
        p.set_objective(Sense::maximize, p.scalar(t));
        const sdp::SdpSolution sol = sdp::solve(p, opts.solver);
        if (sol.status != Status::optimal) {
            throw SolverError("realize_channel: MIO re-solve " + sdp::to_string(sol.status), sol.status);
        }
        c = state_value(cs, sol, phi, "C");
        dmat = HermitianMatrix::diagonal(sol.diagonal("G")) - c;
        margin = sol.primal_value;
    } else {
        const DioMargin dm = dio_margin(phi, eps, static_cast<double>(m), opts);
        if (dm.status != Status::optimal) {
            throw SolverError("realize_channel: DIO re-solve " + sdp::to_string(dm.status), dm.status);
        }
        c = dm.C;
        dmat = HermitianMatrix::diagonal(static_cast<double>(m) * c.diag()) - c;
        margin = dm.margin;
    }
    if (m == 1) dmat = HermitianMatrix::zero(d);
    ChannelRealization out{m, c, dmat, reconstruct_dilution_channel(c, dmat, m, d), margin};
    return out;
}

}  // namespace cohdil
