#include "cohdil/conic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cohdil::conic {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kStepFraction = 0.99;
constexpr int kRefinementSteps = 2;

bool finite(const VectorXd& v) { return v.allFinite(); }

double inf_norm(const VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Cone layout and per-block NT scaling.
class Cone {
public:
    explicit Cone(const std::vector<int>& blocks) : blocks_(blocks) {
        offsets_.reserve(blocks.size());
        int off = 0;
        for (int k : blocks) {
            offsets_.push_back(off);
            off += svec_size(k);
        }
        size_ = off;
        degree_ = std::accumulate(blocks.begin(), blocks.end(), 0);
    }

    int size() const { return size_; }
    int degree() const { return degree_; }
    std::size_t count() const { return blocks_.size(); }
    int order(std::size_t b) const { return blocks_[b]; }
    int offset(std::size_t b) const { return offsets_[b]; }

    MatrixXd block(const VectorXd& u, std::size_t b) const {
        return smat(u.segment(offsets_[b], svec_size(blocks_[b])), blocks_[b]);
    }
    void set_block(VectorXd& u, std::size_t b, const MatrixXd& m) const {
        u.segment(offsets_[b], svec_size(blocks_[b])) = svec(m);
    }

    VectorXd identity() const {
        VectorXd e = VectorXd::Zero(size_);
        for (std::size_t b = 0; b < count(); ++b) set_block(e, b, MatrixXd::Identity(order(b), order(b)));
        return e;
    }

    // Smallest eigenvalue over all blocks.
    double min_eig(const VectorXd& u) const {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < count(); ++b) {
            Eigen::SelfAdjointEigenSolver<MatrixXd> es(block(u, b), Eigen::EigenvaluesOnly);
            lo = std::min(lo, es.eigenvalues()(0));
        }
        return lo;
    }

private:
    std::vector<int> blocks_;
    std::vector<int> offsets_;
    int size_ = 0;
    int degree_ = 0;
};

// Nesterov-Todd scaling W with W z = W^{-T} s = lambda (diagonal). Per block,
// W(u) = R^T U R and W^{-T}(u) = Rti^T U Rti with Rti = R^{-T}.
struct Scaling {
    std::vector<MatrixXd> r;
    std::vector<MatrixXd> rti;
    std::vector<VectorXd> lambda;

    static Scaling identity(const Cone& cone) {
        Scaling w;
        for (std::size_t b = 0; b < cone.count(); ++b) {
            int k = cone.order(b);
            w.r.push_back(MatrixXd::Identity(k, k));
            w.rti.push_back(MatrixXd::Identity(k, k));
            w.lambda.push_back(VectorXd::Ones(k));
        }
        return w;
    }

    // Returns false when s or z is not numerically positive definite.
    static bool compute(const Cone& cone, const VectorXd& s, const VectorXd& z, Scaling& w) {
        w.r.clear();
        w.rti.clear();
        w.lambda.clear();
        for (std::size_t b = 0; b < cone.count(); ++b) {
            Eigen::LLT<MatrixXd> ls(cone.block(s, b));
            Eigen::LLT<MatrixXd> lz(cone.block(z, b));
            if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return false;
            MatrixXd l_s = ls.matrixL();
            MatrixXd l_z = lz.matrixL();
            Eigen::JacobiSVD<MatrixXd> svd(l_z.transpose() * l_s, Eigen::ComputeFullU | Eigen::ComputeFullV);
            VectorXd lam = svd.singularValues();
            if (!(lam.minCoeff() > 0.0) || !lam.allFinite()) return false;
            VectorXd inv_sqrt = lam.cwiseSqrt().cwiseInverse();
            w.r.push_back(l_s * svd.matrixV() * inv_sqrt.asDiagonal());
            w.rti.push_back(l_z * svd.matrixU() * inv_sqrt.asDiagonal());
            w.lambda.push_back(lam);
        }
        return true;
    }
};

enum class Op { W, WT, Winv, WinvT };

VectorXd scale(const Cone& cone, const Scaling& w, Op op, const VectorXd& u) {
    VectorXd out(u.size());
    for (std::size_t b = 0; b < cone.count(); ++b) {
        MatrixXd m = cone.block(u, b);
        MatrixXd res;
        switch (op) {
            case Op::W: res = w.r[b].transpose() * m * w.r[b]; break;
            case Op::WT: res = w.r[b] * m * w.r[b].transpose(); break;
            case Op::Winv: res = w.rti[b] * m * w.rti[b].transpose(); break;
            case Op::WinvT: res = w.rti[b].transpose() * m * w.rti[b]; break;
        }
        cone.set_block(out, b, res);
    }
    return out;
}

// Solves lambda o u = v for diagonal lambda: u_ij = 2 v_ij / (l_i + l_j).
VectorXd lambda_div(const Cone& cone, const Scaling& w, const VectorXd& v) {
    VectorXd out(v.size());
    for (std::size_t b = 0; b < cone.count(); ++b) {
        MatrixXd m = cone.block(v, b);
        const VectorXd& l = w.lambda[b];
        for (int j = 0; j < m.cols(); ++j)
            for (int i = 0; i < m.rows(); ++i) m(i, j) *= 2.0 / (l(i) + l(j));
        cone.set_block(out, b, m);
    }
    return out;
}

// Symmetrized product (UV + VU)/2.
VectorXd jordan_prod(const Cone& cone, const VectorXd& u, const VectorXd& v) {
    VectorXd out(u.size());
    for (std::size_t b = 0; b < cone.count(); ++b) {
        MatrixXd mu = cone.block(u, b);
        MatrixXd mv = cone.block(v, b);
        cone.set_block(out, b, 0.5 * (mu * mv + mv * mu));
    }
    return out;
}

VectorXd lambda_sq(const Cone& cone, const Scaling& w) {
    VectorXd out = VectorXd::Zero(cone.size());
    for (std::size_t b = 0; b < cone.count(); ++b) {
        const VectorXd& l = w.lambda[b];
        cone.set_block(out, b, MatrixXd(l.cwiseProduct(l).asDiagonal()));
    }
    return out;
}

// Largest alpha with lambda + alpha * d in the cone (d given in scaled coordinates).
double max_step_scaled(const Cone& cone, const Scaling& w, const VectorXd& d) {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < cone.count(); ++b) {
        MatrixXd m = cone.block(d, b);
        VectorXd isq = w.lambda[b].cwiseSqrt().cwiseInverse();
        m = isq.asDiagonal() * m * isq.asDiagonal();
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
        double lo = es.eigenvalues()(0);
        if (lo < 0.0) alpha = std::min(alpha, -1.0 / lo);
    }
    return alpha;
}

// Reduced KKT system
//
//     [ 0  A^T  G^T ] [ux]   [bx]
//     [ A  0    0   ] [uy] = [by]
//     [ G  0   -W^TW] [uz]   [bz]
//
// eliminated to [P A^T; A 0] with P = (W^{-T} G)^T (W^{-T} G).
class Kkt {
public:
    Kkt(const Problem& p, const Cone& cone) : p_(p), cone_(cone) {}

    bool factor(const Scaling& w) {
        w_ = &w;
        const int n = static_cast<int>(p_.c.size());
        const int m = cone_.size();
        const int np = static_cast<int>(p_.b.size());
        gt_.setZero(m, n);
        for (int col = 0; col < n; ++col) {
            gt_.col(col) = scaled_column(col);
        }
        MatrixXd k = MatrixXd::Zero(n + np, n + np);
        k.topLeftCorner(n, n).noalias() = gt_.transpose() * gt_;
        if (np > 0) {
            k.topRightCorner(n, np) = p_.A.transpose();
            k.bottomLeftCorner(np, n) = p_.A;
        }
        lu_.compute(k);
        return k.allFinite();
    }

    void solve(const VectorXd& bx, const VectorXd& by, const VectorXd& bz, VectorXd& ux, VectorXd& uy,
               VectorXd& uz) const {
        solve_once(bx, by, bz, ux, uy, uz);
        for (int it = 0; it < kRefinementSteps; ++it) {
            VectorXd rx = bx - p_.G.transpose() * uz;
            if (uy.size() > 0) rx -= p_.A.transpose() * uy;
            VectorXd ry = by;
            if (by.size() > 0) ry -= p_.A * ux;
            VectorXd rz = bz - p_.G * ux + scale(cone_, *w_, Op::WT, scale(cone_, *w_, Op::W, uz));
            VectorXd cx;
            VectorXd cy;
            VectorXd cz;
            solve_once(rx, ry, rz, cx, cy, cz);
            ux += cx;
            uy += cy;
            uz += cz;
        }
    }

private:
    // W^{-T} G_col using the sparsity of G: a symmetric unit at (i, j) maps to
    // r_i r_j^T + r_j r_i^T where r_i is row i of Rti.
    VectorXd scaled_column(int col) const {
        VectorXd out = VectorXd::Zero(cone_.size());
        std::vector<MatrixXd> acc(cone_.count());
        std::vector<bool> touched(cone_.count(), false);
        for (Eigen::SparseMatrix<double>::InnerIterator it(p_.G, col); it; ++it) {
            int row = static_cast<int>(it.row());
            auto [b, i, j] = locate(row);
            int k = cone_.order(b);
            if (!touched[b]) {
                acc[b] = MatrixXd::Zero(k, k);
                touched[b] = true;
            }
            const MatrixXd& rti = w_->rti[b];
            if (i == j) {
                acc[b].noalias() += it.value() * rti.row(i).transpose() * rti.row(i);
            } else {
                double v = it.value() / kSqrt2;
                MatrixXd outer = rti.row(i).transpose() * rti.row(j);
                acc[b] += v * (outer + outer.transpose());
            }
        }
        for (std::size_t b = 0; b < cone_.count(); ++b) {
            if (touched[b]) cone_.set_block(out, b, acc[b]);
        }
        return out;
    }

    std::tuple<std::size_t, int, int> locate(int row) const {
        std::size_t b = 0;
        while (b + 1 < cone_.count() && cone_.offset(b + 1) <= row) ++b;
        int k = cone_.order(b);
        int r = row - cone_.offset(b);
        int j = 0;
        while (r >= k - j) {
            r -= k - j;
            ++j;
        }
        return {b, j + r, j};
    }

    void solve_once(const VectorXd& bx, const VectorXd& by, const VectorXd& bz, VectorXd& ux, VectorXd& uy,
                    VectorXd& uz) const {
        const int n = static_cast<int>(p_.c.size());
        const int np = static_cast<int>(p_.b.size());
        VectorXd t = scale(cone_, *w_, Op::WinvT, bz);
        VectorXd rhs(n + np);
        rhs.head(n) = bx + gt_.transpose() * t;
        if (np > 0) rhs.tail(np) = by;
        VectorXd sol = lu_.solve(rhs);
        ux = sol.head(n);
        uy = sol.tail(np);
        VectorXd wuz = gt_ * ux - t;
        uz = scale(cone_, *w_, Op::Winv, wuz);
    }

    const Problem& p_;
    const Cone& cone_;
    const Scaling* w_ = nullptr;
    MatrixXd gt_;
    Eigen::PartialPivLU<MatrixXd> lu_;
};

struct Direction {
    VectorXd dx, dy, dz, ds;
    VectorXd dz_scaled, ds_scaled;
    double dtau = 0.0;
    double dkappa = 0.0;
};

}  // namespace

std::string to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::primal_infeasible: return "infeasible";
        case Status::dual_infeasible: return "unbounded";
        case Status::numerical_failure: return "numerical-failure";
    }
    return "unknown";
}

int cone_size(const std::vector<int>& blocks) {
    int n = 0;
    for (int k : blocks) n += svec_size(k);
    return n;
}

VectorXd svec(const MatrixXd& m) {
    const int k = static_cast<int>(m.rows());
    VectorXd v(svec_size(k));
    int pos = 0;
    for (int j = 0; j < k; ++j) {
        v(pos++) = m(j, j);
        for (int i = j + 1; i < k; ++i) v(pos++) = kSqrt2 * 0.5 * (m(i, j) + m(j, i));
    }
    return v;
}

MatrixXd smat(const Eigen::Ref<const VectorXd>& v, int k) {
    MatrixXd m(k, k);
    int pos = 0;
    for (int j = 0; j < k; ++j) {
        m(j, j) = v(pos++);
        for (int i = j + 1; i < k; ++i) {
            double x = v(pos++) / kSqrt2;
            m(i, j) = x;
            m(j, i) = x;
        }
    }
    return m;
}

Result solve(const Problem& p, const Options& opt) {
    Result res;
    const int n = static_cast<int>(p.c.size());
    const int np = static_cast<int>(p.b.size());
    const Cone cone(p.blocks);
    const int m = cone.size();

    if (p.G.rows() != m || p.G.cols() != n || p.h.size() != m || p.A.rows() != np || (np > 0 && p.A.cols() != n)) {
        res.message = "inconsistent problem dimensions";
        return res;
    }

    const VectorXd e = cone.identity();
    Kkt kkt(p, cone);
    Scaling w = Scaling::identity(cone);
    if (!kkt.factor(w)) {
        res.message = "initial KKT factorization failed";
        return res;
    }

    VectorXd x, y, s, z;
    {
        VectorXd zt;
        kkt.solve(VectorXd::Zero(n), p.b, p.h, x, y, zt);
        s = -zt;
        VectorXd xt;
        kkt.solve(-p.c, VectorXd::Zero(np), VectorXd::Zero(m), xt, y, z);
    }
    if (!finite(x) || !finite(s) || !finite(y) || !finite(z)) {
        res.message = "initial point is not finite";
        return res;
    }
    if (m > 0) {
        double ts = -cone.min_eig(s);
        if (ts >= -1e-8 * std::max(s.norm(), 1.0)) s += (1.0 + ts) * e;
        double tz = -cone.min_eig(z);
        if (tz >= -1e-8 * std::max(z.norm(), 1.0)) z += (1.0 + tz) * e;
    }
    double tau = 1.0;
    double kappa = 1.0;

    const double nu = static_cast<double>(cone.degree()) + 1.0;
    // Residuals are measured relative to the size of the data.
    const double pscale = 1.0 + std::max(inf_norm(p.b), p.h.norm());
    const double dscale = 1.0 + inf_norm(p.c);

    for (int iter = 0; iter <= opt.max_iter; ++iter) {
        res.iterations = iter;

        // Residuals of the homogeneous embedding.
        VectorXd hrx = p.G.transpose() * z;
        if (np > 0) hrx += p.A.transpose() * y;
        VectorXd r1 = hrx + p.c * tau;
        VectorXd hry = np > 0 ? VectorXd(p.A * x) : VectorXd::Zero(0);
        VectorXd r2 = p.b * tau - hry;
        VectorXd hrz = s + p.G * x;
        VectorXd r3 = hrz - p.h * tau;
        const double cx = p.c.dot(x);
        const double by = p.b.dot(y);
        const double hz = p.h.dot(z);
        const double r4 = kappa + cx + by + hz;

        const double pres = std::max(inf_norm(r2), r3.norm()) / (tau * pscale);
        const double dres = inf_norm(r1) / (tau * dscale);
        const double pcost = cx / tau;
        const double dcost = -(by + hz) / tau;
        const double gap = s.dot(z) / (tau * tau);
        res.primal_residual = pres;
        res.dual_residual = dres;
        res.gap = gap;

        if (!std::isfinite(pres) || !std::isfinite(dres) || !std::isfinite(gap)) {
            res.message = "iterates became non-finite";
            return res;
        }

        const double gap_bound = opt.gap_tol * (1.0 + std::abs(pcost));
        if (pres <= opt.feas_tol && dres <= opt.feas_tol && gap <= gap_bound &&
            std::abs(pcost - dcost) <= gap_bound) {
            res.status = Status::optimal;
            res.x = x / tau;
            res.y = y / tau;
            res.s = s / tau;
            res.z = z / tau;
            res.primal_value = pcost;
            res.dual_value = dcost;
            return res;
        }
        if (hz + by < 0.0 && inf_norm(hrx) / (-(hz + by)) <= opt.feas_tol) {
            res.status = Status::primal_infeasible;
            double q = -(hz + by);
            res.y = y / q;
            res.z = z / q;
            return res;
        }
        if (cx < 0.0 && std::max(inf_norm(hry), hrz.norm()) / (-cx) <= opt.feas_tol) {
            res.status = Status::dual_infeasible;
            res.x = x / (-cx);
            res.s = s / (-cx);
            return res;
        }
        if (iter == opt.max_iter) break;

        if (!Scaling::compute(cone, s, z, w) || !kkt.factor(w)) {
            res.message = "lost positive definiteness of iterates";
            return res;
        }

        VectorXd x1, y1, z1;
        kkt.solve(-p.c, p.b, p.h, x1, y1, z1);
        const double wz1 = scale(cone, w, Op::W, z1).squaredNorm();
        const double mu = (s.dot(z) + tau * kappa) / nu;
        const VectorXd lsq = lambda_sq(cone, w);

        auto direction = [&](double eta, const VectorXd& rs, double rk) {
            Direction d;
            VectorXd ts = lambda_div(cone, w, rs);
            VectorXd bz = -eta * r3 - scale(cone, w, Op::WT, ts);
            VectorXd dx0, dy0, dz0;
            kkt.solve(-eta * r1, eta * r2, bz, dx0, dy0, dz0);
            double num = eta * r4 + rk / tau + p.c.dot(dx0) + p.b.dot(dy0) + p.h.dot(dz0);
            d.dtau = num / (kappa / tau + wz1);
            d.dx = dx0 + d.dtau * x1;
            d.dy = dy0 + d.dtau * y1;
            d.dz = dz0 + d.dtau * z1;
            d.dz_scaled = scale(cone, w, Op::W, d.dz);
            d.ds_scaled = ts - d.dz_scaled;
            d.ds = scale(cone, w, Op::WT, d.ds_scaled);
            d.dkappa = (rk - kappa * d.dtau) / tau;
            return d;
        };

        auto max_step = [&](const Direction& d) {
            double a = std::min(max_step_scaled(cone, w, d.ds_scaled), max_step_scaled(cone, w, d.dz_scaled));
            if (d.dtau < 0.0) a = std::min(a, -tau / d.dtau);
            if (d.dkappa < 0.0) a = std::min(a, -kappa / d.dkappa);
            return a;
        };

        // Predictor.
        Direction aff = direction(1.0, -lsq, -tau * kappa);
        double alpha_aff = std::min(1.0, max_step(aff));
        double sigma = std::pow(1.0 - alpha_aff, 3);

        // Corrector with Mehrotra second-order term.
        VectorXd rs = -lsq + sigma * mu * e - jordan_prod(cone, aff.ds_scaled, aff.dz_scaled);
        double rk = -tau * kappa + sigma * mu - aff.dtau * aff.dkappa;
        Direction dir = direction(1.0 - sigma, rs, rk);
        if (!finite(dir.dx) || !finite(dir.dz) || !std::isfinite(dir.dtau)) {
            res.message = "search direction is not finite";
            return res;
        }
        double alpha = std::min(1.0, kStepFraction * max_step(dir));

        x += alpha * dir.dx;
        y += alpha * dir.dy;
        z += alpha * dir.dz;
        s += alpha * dir.ds;
        tau += alpha * dir.dtau;
        kappa += alpha * dir.dkappa;
    }

    res.message = "iteration limit reached";
    res.x = x / tau;
    res.y = y / tau;
    res.s = s / tau;
    res.z = z / tau;
    res.primal_value = p.c.dot(x) / tau;
    res.dual_value = -(p.b.dot(y) + p.h.dot(z)) / tau;
    return res;
}

}  // namespace cohdil::conic
