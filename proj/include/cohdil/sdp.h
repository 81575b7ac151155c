#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cohdil/hermitian.h"

namespace cohdil::sdp {

enum class VarKind { hermitian, diagonal_real, scalar_real };
enum class Sense { minimize, maximize };
enum class Status { optimal, infeasible, unbounded, numerical_failure };

std::string to_string(VarKind k);
std::string to_string(Status s);

/// Handle to a declared variable; only meaningful for the problem that issued it.
struct Variable {
    std::size_t id = 0;
};

/// Real affine function of the problem's real parameters: constant + sum_k coef_k x_k.
class AffineScalar {
public:
    AffineScalar(double constant = 0.0) : constant_(constant) {}  // NOLINT(google-explicit-constructor)

    double constant() const { return constant_; }
    const std::map<std::size_t, double>& terms() const { return terms_; }
    void add_term(std::size_t param, double coef);

    double evaluate(const RealVector& x) const;

    AffineScalar& operator+=(const AffineScalar& o);
    AffineScalar& operator-=(const AffineScalar& o);
    AffineScalar& operator*=(double s);

private:
    double constant_;
    std::map<std::size_t, double> terms_;
};

AffineScalar operator+(AffineScalar a, const AffineScalar& b);
AffineScalar operator-(AffineScalar a, const AffineScalar& b);
AffineScalar operator-(AffineScalar a);
AffineScalar operator*(double s, AffineScalar a);
AffineScalar operator*(AffineScalar a, double s);

/// Hermitian-valued affine function: M_0 + sum_k x_k M_k with Hermitian M_k.
class AffineMatrix {
public:
    explicit AffineMatrix(std::size_t dim);
    explicit AffineMatrix(const HermitianMatrix& constant);

    std::size_t dim() const { return dim_; }
    const Matrix& constant() const { return constant_; }
    const std::map<std::size_t, Matrix>& terms() const { return terms_; }
    void add_term(std::size_t param, const Matrix& coef);

    /// True when the constant and every coefficient are real symmetric.
    bool is_real() const;
    Matrix evaluate(const RealVector& x) const;

    AffineMatrix dephased() const;
    AffineScalar trace() const;
    /// Re tr(W E).
    AffineScalar inner(const HermitianMatrix& w) const;

    AffineMatrix& operator+=(const AffineMatrix& o);
    AffineMatrix& operator-=(const AffineMatrix& o);
    AffineMatrix& operator*=(double s);

private:
    std::size_t dim_;
    Matrix constant_;
    std::map<std::size_t, Matrix> terms_;
};

AffineMatrix operator+(AffineMatrix a, const AffineMatrix& b);
AffineMatrix operator-(AffineMatrix a, const AffineMatrix& b);
AffineMatrix operator*(double s, AffineMatrix a);
AffineMatrix operator+(AffineMatrix a, const HermitianMatrix& b);
AffineMatrix operator-(AffineMatrix a, const HermitianMatrix& b);
AffineMatrix operator-(const HermitianMatrix& a, const AffineMatrix& b);
/// Scalar expression times a fixed Hermitian matrix.
AffineMatrix operator*(const AffineScalar& s, const HermitianMatrix& m);

struct VariableInfo {
    std::string name;
    std::size_t dim = 0;
    VarKind kind = VarKind::scalar_real;
    std::size_t first_param = 0;
    std::size_t num_params = 0;
};

struct PsdConstraint {
    AffineMatrix expr;
    std::string label;
};

struct EqConstraint {
    /// Real rows, each required to vanish. A Hermitian matrix equality contributes its
    /// diagonal, then Re and Im of each upper-triangular entry.
    std::vector<AffineScalar> rows;
    std::string label;
};

/// Semidefinite program over Hermitian, diagonal and scalar real variables. A Hermitian
/// variable of order d owns d^2 real parameters (diagonal, then Re/Im of each i < j
/// entry); a diagonal variable owns d; a scalar owns one.
class SdpProblem {
public:
    Variable add_variable(std::string name, std::size_t dim, VarKind kind);

    /// Matrix view of a variable (scalars are 1 x 1).
    AffineMatrix matrix(Variable v) const;
    /// Scalar view of a scalar_real variable.
    AffineScalar scalar(Variable v) const;

    void add_psd(AffineMatrix expr, std::string label = "");
    void add_equality(const AffineScalar& expr, std::string label = "");
    void add_equality(const AffineMatrix& expr, std::string label = "");
    void set_objective(Sense sense, AffineScalar objective);

    std::size_t num_params() const { return num_params_; }
    const std::vector<VariableInfo>& variables() const { return vars_; }
    const std::vector<PsdConstraint>& psd_constraints() const { return psd_; }
    const std::vector<EqConstraint>& eq_constraints() const { return eq_; }
    Sense sense() const { return sense_; }
    const AffineScalar& objective() const { return objective_; }

    /// Variable value assembled from a parameter vector.
    Matrix variable_value(const VariableInfo& v, const RealVector& x) const;

private:
    void check_expr(const AffineScalar& e) const;
    void check_expr(const AffineMatrix& e) const;

    std::vector<VariableInfo> vars_;
    std::vector<PsdConstraint> psd_;
    std::vector<EqConstraint> eq_;
    Sense sense_ = Sense::minimize;
    AffineScalar objective_;
    std::size_t num_params_ = 0;
};

struct SolveOptions {
    double feas_tol = 1e-8;
    double gap_tol = 1e-8;
    int max_iter = 200;
};

struct SdpSolution {
    Status status = Status::numerical_failure;
    /// Objective in the problem's own sense; dual_value is the backend's dual bound on it.
    double primal_value = 0.0;
    double dual_value = 0.0;
    std::map<std::string, Matrix> variable_values;
    /// Multiplier Z_k >= 0 of each PSD constraint and y of each equality row, for the
    /// Lagrangian  f - sum_k <Z_k, E_k(x)> + sum_r y_r g_r(x)  of the minimization form
    /// (f is the negated objective for maximize problems).
    std::vector<HermitianMatrix> psd_duals;
    std::vector<RealVector> eq_duals;
    double max_constraint_violation = 0.0;
    int iterations = 0;
    /// Infeasible/unbounded: residual of the backend certificate (should be ~0).
    double certificate_residual = 0.0;
    std::string message;

    HermitianMatrix hermitian(const std::string& name) const;
    RealVector diagonal(const std::string& name) const;
    double scalar(const std::string& name) const;
};

/// [[Re X, -Im X], [Im X, Re X]]; X >= 0 iff realify(X) >= 0, and tr realify(X) = 2 tr X.
Eigen::MatrixXd realify(const Matrix& x);
Eigen::MatrixXd realify(const HermitianMatrix& x);

/// Solves through the real conic backend. Deterministic for identical inputs; reentrant.
SdpSolution solve(const SdpProblem& problem, const SolveOptions& options = {});

/// Self-describing text dump of the problem data.
void dump(std::ostream& out, const SdpProblem& problem);

}  // namespace cohdil::sdp
