#include "cohdil/sdp.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>

#include "cohdil/conic.h"

namespace cohdil::sdp {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kZeroCoef = 1e-14;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void check_hermitian(const Matrix& m, const char* where) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(where) + ": matrix is not square");
    if (max_abs(m - m.adjoint()) > 1e-10 * std::max(1.0, max_abs(m))) {
        throw std::invalid_argument(std::string(where) + ": matrix is not Hermitian");
    }
}

}  // namespace

std::string to_string(VarKind k) {
    switch (k) {
        case VarKind::hermitian: return "hermitian";
        case VarKind::diagonal_real: return "diagonal";
        case VarKind::scalar_real: return "scalar";
    }
    return "?";
}

std::string to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
        case Status::numerical_failure: return "numerical-failure";
    }
    return "?";
}

// ---- AffineScalar ----

void AffineScalar::add_term(std::size_t param, double coef) {
    if (coef == 0.0) return;
    terms_[param] += coef;
}

double AffineScalar::evaluate(const RealVector& x) const {
    double v = constant_;
    for (const auto& [k, c] : terms_) v += c * x(idx(k));
    return v;
}

AffineScalar& AffineScalar::operator+=(const AffineScalar& o) {
    constant_ += o.constant_;
    for (const auto& [k, c] : o.terms_) terms_[k] += c;
    return *this;
}

AffineScalar& AffineScalar::operator-=(const AffineScalar& o) {
    constant_ -= o.constant_;
    for (const auto& [k, c] : o.terms_) terms_[k] -= c;
    return *this;
}

AffineScalar& AffineScalar::operator*=(double s) {
    constant_ *= s;
    for (auto& kv : terms_) kv.second *= s;
    return *this;
}

AffineScalar operator+(AffineScalar a, const AffineScalar& b) { return a += b; }
AffineScalar operator-(AffineScalar a, const AffineScalar& b) { return a -= b; }
AffineScalar operator-(AffineScalar a) { return a *= -1.0; }
AffineScalar operator*(double s, AffineScalar a) { return a *= s; }
AffineScalar operator*(AffineScalar a, double s) { return a *= s; }

// ---- AffineMatrix ----

AffineMatrix::AffineMatrix(std::size_t dim) : dim_(dim), constant_(Matrix::Zero(idx(dim), idx(dim))) {}

AffineMatrix::AffineMatrix(const HermitianMatrix& constant) : dim_(constant.dim()), constant_(constant.matrix()) {}

void AffineMatrix::add_term(std::size_t param, const Matrix& coef) {
    if (coef.rows() != idx(dim_) || coef.cols() != idx(dim_)) {
        throw std::invalid_argument("AffineMatrix::add_term: coefficient dimension mismatch");
    }
    check_hermitian(coef, "AffineMatrix::add_term");
    auto it = terms_.find(param);
    if (it == terms_.end()) {
        terms_.emplace(param, coef);
    } else {
        it->second += coef;
    }
}

bool AffineMatrix::is_real() const {
    if (constant_.imag().cwiseAbs().maxCoeff() > 0.0) return false;
    for (const auto& kv : terms_) {
        if (kv.second.imag().cwiseAbs().maxCoeff() > 0.0) return false;
    }
    return true;
}

Matrix AffineMatrix::evaluate(const RealVector& x) const {
    Matrix m = constant_;
    for (const auto& [k, c] : terms_) m += x(idx(k)) * c;
    return m;
}

AffineMatrix AffineMatrix::dephased() const {
    AffineMatrix out(dim_);
    out.constant_ = dephase(constant_);
    for (const auto& [k, c] : terms_) {
        Matrix d = dephase(c);
        if (max_abs(d) > 0.0) out.terms_.emplace(k, std::move(d));
    }
    return out;
}

AffineScalar AffineMatrix::trace() const {
    AffineScalar s(constant_.trace().real());
    for (const auto& [k, c] : terms_) s.add_term(k, c.trace().real());
    return s;
}

AffineScalar AffineMatrix::inner(const HermitianMatrix& w) const {
    if (w.dim() != dim_) throw std::invalid_argument("AffineMatrix::inner: dimension mismatch");
    const Matrix& wm = w.matrix();
    auto re_tr = [&](const Matrix& m) { return (wm.cwiseProduct(m.transpose())).sum().real(); };
    AffineScalar s(re_tr(constant_));
    for (const auto& [k, c] : terms_) s.add_term(k, re_tr(c));
    return s;
}

AffineMatrix& AffineMatrix::operator+=(const AffineMatrix& o) {
    if (o.dim_ != dim_) throw std::invalid_argument("AffineMatrix: dimension mismatch in +");
    constant_ += o.constant_;
    for (const auto& [k, c] : o.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
        }
    }
    return *this;
}

AffineMatrix& AffineMatrix::operator-=(const AffineMatrix& o) {
    AffineMatrix neg = o;
    neg *= -1.0;
    return *this += neg;
}

AffineMatrix& AffineMatrix::operator*=(double s) {
    constant_ *= s;
    for (auto& kv : terms_) kv.second *= s;
    return *this;
}

AffineMatrix operator+(AffineMatrix a, const AffineMatrix& b) { return a += b; }
AffineMatrix operator-(AffineMatrix a, const AffineMatrix& b) { return a -= b; }
AffineMatrix operator*(double s, AffineMatrix a) { return a *= s; }
AffineMatrix operator+(AffineMatrix a, const HermitianMatrix& b) { return a += AffineMatrix(b); }
AffineMatrix operator-(AffineMatrix a, const HermitianMatrix& b) { return a -= AffineMatrix(b); }
AffineMatrix operator-(const HermitianMatrix& a, const AffineMatrix& b) { return AffineMatrix(a) - b; }

AffineMatrix operator*(const AffineScalar& s, const HermitianMatrix& m) {
    AffineMatrix out(s.constant() * m);
    for (const auto& [k, c] : s.terms()) out.add_term(k, c * m.matrix());
    return out;
}

// ---- SdpProblem ----

Variable SdpProblem::add_variable(std::string name, std::size_t dim, VarKind kind) {
    if (dim == 0) throw std::invalid_argument("add_variable: dimension must be positive");
    if (kind == VarKind::scalar_real && dim != 1) {
        throw std::invalid_argument("add_variable: scalar variables have dimension 1");
    }
    for (const auto& v : vars_) {
        if (v.name == name) throw std::invalid_argument("add_variable: duplicate name '" + name + "'");
    }
    VariableInfo info;
    info.name = std::move(name);
    info.dim = dim;
    info.kind = kind;
    info.first_param = num_params_;
    info.num_params = kind == VarKind::hermitian ? dim * dim : dim;
    num_params_ += info.num_params;
    vars_.push_back(std::move(info));
    return Variable{vars_.size() - 1};
}

AffineMatrix SdpProblem::matrix(Variable v) const {
    if (v.id >= vars_.size()) throw std::invalid_argument("matrix: unknown variable");
    const VariableInfo& info = vars_[v.id];
    const std::size_t d = info.dim;
    AffineMatrix m(d);
    std::size_t p = info.first_param;
    for (std::size_t i = 0; i < d; ++i) m.add_term(p++, matrix_unit(d, i, i));
    if (info.kind == VarKind::hermitian) {
        const Complex iu(0.0, 1.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                m.add_term(p++, matrix_unit(d, i, j) + matrix_unit(d, j, i));
                m.add_term(p++, iu * matrix_unit(d, i, j) - iu * matrix_unit(d, j, i));
            }
        }
    }
    return m;
}

AffineScalar SdpProblem::scalar(Variable v) const {
    if (v.id >= vars_.size()) throw std::invalid_argument("scalar: unknown variable");
    const VariableInfo& info = vars_[v.id];
    if (info.kind != VarKind::scalar_real) {
        throw std::invalid_argument("scalar: variable '" + info.name + "' is not a scalar");
    }
    AffineScalar s;
    s.add_term(info.first_param, 1.0);
    return s;
}

void SdpProblem::check_expr(const AffineScalar& e) const {
    for (const auto& kv : e.terms()) {
        if (kv.first >= num_params_) throw std::invalid_argument("expression references an unknown parameter");
    }
}

void SdpProblem::check_expr(const AffineMatrix& e) const {
    for (const auto& kv : e.terms()) {
        if (kv.first >= num_params_) throw std::invalid_argument("expression references an unknown parameter");
    }
}

void SdpProblem::add_psd(AffineMatrix expr, std::string label) {
    check_expr(expr);
    check_hermitian(expr.constant(), "add_psd");
    psd_.push_back(PsdConstraint{std::move(expr), std::move(label)});
}

void SdpProblem::add_equality(const AffineScalar& expr, std::string label) {
    check_expr(expr);
    eq_.push_back(EqConstraint{{expr}, std::move(label)});
}

void SdpProblem::add_equality(const AffineMatrix& expr, std::string label) {
    check_expr(expr);
    check_hermitian(expr.constant(), "add_equality");
    const std::size_t d = expr.dim();
    auto entry = [&](std::size_t i, std::size_t j, bool imag) {
        auto part = [&](const Matrix& m) {
            const Complex z = m(idx(i), idx(j));
            return imag ? z.imag() : z.real();
        };
        AffineScalar s(part(expr.constant()));
        for (const auto& [k, c] : expr.terms()) s.add_term(k, part(c));
        return s;
    };
    EqConstraint eq;
    eq.label = std::move(label);
    for (std::size_t i = 0; i < d; ++i) eq.rows.push_back(entry(i, i, false));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            eq.rows.push_back(entry(i, j, false));
            eq.rows.push_back(entry(i, j, true));
        }
    }
    eq_.push_back(std::move(eq));
}

void SdpProblem::set_objective(Sense sense, AffineScalar objective) {
    check_expr(objective);
    sense_ = sense;
    objective_ = std::move(objective);
}

Matrix SdpProblem::variable_value(const VariableInfo& v, const RealVector& x) const {
    const Eigen::Index d = idx(v.dim);
    Matrix m = Matrix::Zero(d, d);
    std::size_t p = v.first_param;
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) = x(idx(p++));
    if (v.kind == VarKind::hermitian) {
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = i + 1; j < d; ++j) {
                const double re = x(idx(p++));
                const double im = x(idx(p++));
                m(i, j) = Complex(re, im);
                m(j, i) = Complex(re, -im);
            }
        }
    }
    return m;
}

// ---- SdpSolution ----

HermitianMatrix SdpSolution::hermitian(const std::string& name) const {
    auto it = variable_values.find(name);
    if (it == variable_values.end()) throw std::out_of_range("no variable named '" + name + "'");
    return HermitianMatrix(it->second);
}

RealVector SdpSolution::diagonal(const std::string& name) const {
    auto it = variable_values.find(name);
    if (it == variable_values.end()) throw std::out_of_range("no variable named '" + name + "'");
    return it->second.diagonal().real();
}

double SdpSolution::scalar(const std::string& name) const {
    auto it = variable_values.find(name);
    if (it == variable_values.end()) throw std::out_of_range("no variable named '" + name + "'");
    return it->second(0, 0).real();
}

// ---- realification and solve ----

MatrixXd realify(const Matrix& x) {
    const Eigen::Index n = x.rows();
    MatrixXd r(2 * n, 2 * n);
    r.topLeftCorner(n, n) = x.real();
    r.topRightCorner(n, n) = -x.imag();
    r.bottomLeftCorner(n, n) = x.imag();
    r.bottomRightCorner(n, n) = x.real();
    return r;
}

MatrixXd realify(const HermitianMatrix& x) { return realify(x.matrix()); }

namespace {

struct Block {
    bool complex = false;
    int order = 0;
    int offset = 0;
};

MatrixXd real_form(const Matrix& m, bool complex) { return complex ? realify(m) : MatrixXd(m.real()); }

// Backend dual block of a PSD constraint, mapped back to a Hermitian multiplier Y with
// Re tr(Y E) = tr(Z realify(E)).
HermitianMatrix complex_dual(const MatrixXd& z, bool complex) {
    if (!complex) return HermitianMatrix::from_real(z);
    const Eigen::Index n = z.rows() / 2;
    Matrix y(n, n);
    y.real() = z.topLeftCorner(n, n) + z.bottomRightCorner(n, n);
    y.imag() = z.bottomLeftCorner(n, n) - z.topRightCorner(n, n);
    return HermitianMatrix(y);
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, const SolveOptions& options) {
    const std::size_t n = problem.num_params();
    const double sign = problem.sense() == Sense::minimize ? 1.0 : -1.0;

    conic::Problem cp;
    cp.c = VectorXd::Zero(idx(n));
    for (const auto& [k, v] : problem.objective().terms()) cp.c(idx(k)) = sign * v;

    // PSD constraints: s = svec(E(x)) = h - G x with h = svec(E_0), G = -svec(E_k).
    std::vector<Block> blocks;
    int rows = 0;
    for (const auto& psd : problem.psd_constraints()) {
        Block b;
        b.complex = !psd.expr.is_real();
        b.order = static_cast<int>(psd.expr.dim()) * (b.complex ? 2 : 1);
        b.offset = rows;
        rows += conic::svec_size(b.order);
        blocks.push_back(b);
        cp.blocks.push_back(b.order);
    }
    cp.h = VectorXd::Zero(rows);
    std::vector<Eigen::Triplet<double>> trip;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& psd = problem.psd_constraints()[bi];
        const Block& b = blocks[bi];
        cp.h.segment(b.offset, conic::svec_size(b.order)) = conic::svec(real_form(psd.expr.constant(), b.complex));
        for (const auto& [k, coef] : psd.expr.terms()) {
            const MatrixXd rc = real_form(coef, b.complex);
            for (int j = 0; j < b.order; ++j) {
                for (int i = j; i < b.order; ++i) {
                    const double v = rc(i, j);
                    if (std::abs(v) <= kZeroCoef) continue;
                    const double s = i == j ? v : kSqrt2 * v;
                    trip.emplace_back(b.offset + conic::svec_index(b.order, i, j), static_cast<int>(k), -s);
                }
            }
        }
    }
    cp.G.resize(rows, idx(n));
    cp.G.setFromTriplets(trip.begin(), trip.end());

    // Equality rows g(x) = a^T x + a_0 = 0, i.e. A x = -a_0.
    std::vector<const AffineScalar*> eq_rows;
    std::vector<std::pair<std::size_t, std::size_t>> eq_pos;
    for (std::size_t e = 0; e < problem.eq_constraints().size(); ++e) {
        const auto& rs = problem.eq_constraints()[e].rows;
        for (std::size_t r = 0; r < rs.size(); ++r) {
            eq_rows.push_back(&rs[r]);
            eq_pos.emplace_back(e, r);
        }
    }
    MatrixXd a_full = MatrixXd::Zero(idx(eq_rows.size()), idx(n));
    VectorXd b_full(idx(eq_rows.size()));
    for (std::size_t r = 0; r < eq_rows.size(); ++r) {
        for (const auto& [k, v] : eq_rows[r]->terms()) a_full(idx(r), idx(k)) = v;
        b_full(idx(r)) = -eq_rows[r]->constant();
    }

    SdpSolution sol;
    auto finish_infeasible = [&](const std::string& why) {
        sol.status = Status::infeasible;
        sol.message = why;
        return sol;
    };

    // Presolve: zero rows, then linearly dependent rows.
    std::vector<Eigen::Index> kept;
    for (Eigen::Index r = 0; r < a_full.rows(); ++r) {
        const double scale = a_full.row(r).cwiseAbs().maxCoeff();
        if (scale <= kZeroCoef) {
            if (std::abs(b_full(r)) > options.feas_tol) {
                return finish_infeasible("presolve: constant equality row violated by " +
                                         std::to_string(std::abs(b_full(r))));
            }
            continue;
        }
        kept.push_back(r);
    }
    MatrixXd a_nz(idx(kept.size()), idx(n));
    VectorXd b_nz(idx(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i) {
        a_nz.row(idx(i)) = a_full.row(kept[i]);
        b_nz(idx(i)) = b_full(kept[i]);
    }
    std::vector<Eigen::Index> independent;
    if (a_nz.rows() > 0) {
        Eigen::ColPivHouseholderQR<MatrixXd> qr(a_nz.transpose());
        qr.setThreshold(1e-10);
        const Eigen::Index rank = qr.rank();
        std::vector<Eigen::Index> piv(static_cast<std::size_t>(a_nz.rows()));
        for (Eigen::Index i = 0; i < a_nz.rows(); ++i) piv[static_cast<std::size_t>(i)] = qr.colsPermutation().indices()(i);
        std::vector<Eigen::Index> sel(piv.begin(), piv.begin() + rank);
        std::sort(sel.begin(), sel.end());
        MatrixXd a_ind(rank, idx(n));
        VectorXd b_ind(rank);
        for (Eigen::Index i = 0; i < rank; ++i) {
            a_ind.row(i) = a_nz.row(sel[static_cast<std::size_t>(i)]);
            b_ind(i) = b_nz(sel[static_cast<std::size_t>(i)]);
        }
        // Dropped rows must be consistent combinations of the kept ones.
        if (rank < a_nz.rows()) {
            Eigen::ColPivHouseholderQR<MatrixXd> qi(a_ind.transpose());
            for (Eigen::Index i = rank; i < a_nz.rows(); ++i) {
                const Eigen::Index r = piv[static_cast<std::size_t>(i)];
                VectorXd w = qi.solve(VectorXd(a_nz.row(r).transpose()));
                const double mismatch = std::abs(b_nz(r) - w.dot(b_ind));
                if (mismatch > options.feas_tol * (1.0 + std::abs(b_nz(r)))) {
                    return finish_infeasible("presolve: inconsistent dependent equality rows (mismatch " +
                                             std::to_string(mismatch) + ")");
                }
            }
        }
        for (Eigen::Index s : sel) independent.push_back(kept[static_cast<std::size_t>(s)]);
        cp.A = a_ind;
        cp.b = b_ind;
    } else {
        cp.A = MatrixXd::Zero(0, idx(n));
        cp.b = VectorXd::Zero(0);
    }

    // Parameters absent from every constraint are either free with zero cost or unbounded.
    VectorXd col_weight = VectorXd::Zero(idx(n));
    for (int k = 0; k < cp.G.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(cp.G, k); it; ++it) col_weight(k) += std::abs(it.value());
    }
    if (cp.A.rows() > 0) col_weight += cp.A.cwiseAbs().colwise().sum().transpose();
    for (Eigen::Index k = 0; k < idx(n); ++k) {
        if (col_weight(k) == 0.0 && cp.c(k) != 0.0) {
            sol.status = Status::unbounded;
            sol.message = "presolve: unconstrained parameter with nonzero objective";
            return sol;
        }
    }
    if (n == 0 || rows == 0) {
        throw std::invalid_argument("solve: problem needs at least one variable and one PSD constraint");
    }

    conic::Options co;
    co.feas_tol = options.feas_tol;
    co.gap_tol = options.gap_tol;
    co.max_iter = options.max_iter;
    const conic::Result res = conic::solve(cp, co);

    sol.iterations = res.iterations;
    sol.message = res.message;
    switch (res.status) {
        case conic::Status::optimal: sol.status = Status::optimal; break;
        case conic::Status::primal_infeasible: sol.status = Status::infeasible; break;
        case conic::Status::dual_infeasible: sol.status = Status::unbounded; break;
        case conic::Status::numerical_failure: sol.status = Status::numerical_failure; break;
    }

    if (sol.status == Status::infeasible) {
        VectorXd r = cp.G.transpose() * res.z;
        if (cp.A.rows() > 0) r += cp.A.transpose() * res.y;
        sol.certificate_residual = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    } else if (sol.status == Status::unbounded) {
        VectorXd r = cp.G * res.x + res.s;
        double worst = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
        if (cp.A.rows() > 0) worst = std::max(worst, (cp.A * res.x).cwiseAbs().maxCoeff());
        sol.certificate_residual = worst;
    }
    if (sol.status == Status::infeasible || sol.status == Status::unbounded || res.x.size() != idx(n)) {
        return sol;
    }

    const VectorXd& x = res.x;
    sol.primal_value = problem.objective().evaluate(x);
    sol.dual_value = sign * res.dual_value + problem.objective().constant();
    for (const auto& v : problem.variables()) sol.variable_values[v.name] = problem.variable_value(v, x);

    double viol = 0.0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const Block& b = blocks[bi];
        const MatrixXd z = conic::smat(res.z.segment(b.offset, conic::svec_size(b.order)), b.order);
        sol.psd_duals.push_back(complex_dual(z, b.complex));
        const HermitianMatrix e(problem.psd_constraints()[bi].expr.evaluate(x));
        viol = std::max(viol, -min_eigenvalue(e));
    }
    std::vector<double> y_full(eq_rows.size(), 0.0);
    for (std::size_t i = 0; i < independent.size(); ++i) {
        y_full[static_cast<std::size_t>(independent[i])] = res.y(idx(i));
    }
    for (const auto& eq : problem.eq_constraints()) sol.eq_duals.emplace_back(RealVector::Zero(idx(eq.rows.size())));
    for (std::size_t r = 0; r < eq_rows.size(); ++r) {
        sol.eq_duals[eq_pos[r].first](idx(eq_pos[r].second)) = y_full[r];
        viol = std::max(viol, std::abs(eq_rows[r]->evaluate(x)));
    }
    sol.max_constraint_violation = viol;
    return sol;
}

// ---- dump ----

namespace {

void write_scalar(std::ostream& out, const AffineScalar& s, const SdpProblem& p) {
    out << s.constant();
    for (const auto& [k, c] : s.terms()) {
        for (const auto& v : p.variables()) {
            if (k >= v.first_param && k < v.first_param + v.num_params) {
                out << (c < 0 ? " - " : " + ") << std::abs(c) << '*' << v.name << '[' << (k - v.first_param) << ']';
                break;
            }
        }
    }
}

void write_matrix(std::ostream& out, const Matrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out << "    ";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ' ';
            out << '(' << m(i, j).real() << ',' << m(i, j).imag() << ')';
        }
        out << '\n';
    }
}

}  // namespace

void dump(std::ostream& out, const SdpProblem& p) {
    std::ostringstream o;
    o << std::setprecision(17);
    o << "sdp\n";
    o << "params " << p.num_params() << '\n';
    for (const auto& v : p.variables()) {
        o << "variable " << v.name << ' ' << to_string(v.kind) << " dim " << v.dim << " params [" << v.first_param
          << ", " << v.first_param + v.num_params << ")\n";
    }
    o << "objective " << (p.sense() == Sense::minimize ? "minimize " : "maximize ");
    write_scalar(o, p.objective(), p);
    o << '\n';
    for (std::size_t i = 0; i < p.psd_constraints().size(); ++i) {
        const auto& c = p.psd_constraints()[i];
        o << "psd " << i << " '" << c.label << "' dim " << c.expr.dim() << " terms " << c.expr.terms().size() << '\n';
        o << "  constant\n";
        write_matrix(o, c.expr.constant());
        for (const auto& [k, m] : c.expr.terms()) {
            o << "  param " << k << '\n';
            write_matrix(o, m);
        }
    }
    for (std::size_t i = 0; i < p.eq_constraints().size(); ++i) {
        const auto& c = p.eq_constraints()[i];
        o << "eq " << i << " '" << c.label << "' rows " << c.rows.size() << '\n';
        for (const auto& r : c.rows) {
            o << "  0 = ";
            write_scalar(o, r, p);
            o << '\n';
        }
    }
    out << o.str();
}

}  // namespace cohdil::sdp
