#include "cohdil/channel.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cohdil {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

ChoiOperator::ChoiOperator(std::size_t dim_in, std::size_t dim_out, HermitianMatrix matrix)
    : dim_in_(dim_in), dim_out_(dim_out), matrix_(std::move(matrix)) {
    if (dim_in == 0 || dim_out == 0) {
        throw std::invalid_argument("ChoiOperator: dimensions must be positive");
    }
    if (matrix_.dim() != dim_in * dim_out) {
        throw std::invalid_argument("ChoiOperator: matrix dimension " + std::to_string(matrix_.dim()) +
                                    " != " + std::to_string(dim_in) + " * " + std::to_string(dim_out));
    }
}

Matrix ChoiOperator::block(std::size_t i, std::size_t j) const {
    const Eigen::Index db = idx(dim_out_);
    return matrix_.matrix().block(idx(i) * db, idx(j) * db, db, db);
}

ChoiOperator choi_of(std::size_t dim_in, std::size_t dim_out,
                     const std::function<Matrix(std::size_t, std::size_t)>& map_on_basis) {
    const Eigen::Index db = idx(dim_out);
    Matrix j = Matrix::Zero(idx(dim_in) * db, idx(dim_in) * db);
    for (std::size_t a = 0; a < dim_in; ++a) {
        for (std::size_t b = 0; b < dim_in; ++b) {
            Matrix img = map_on_basis(a, b);
            if (img.rows() != db || img.cols() != db) {
                throw std::invalid_argument("choi_of: image of |" + std::to_string(a) + "><" + std::to_string(b) +
                                            "| has dimension " + std::to_string(img.rows()) + "x" +
                                            std::to_string(img.cols()) + ", expected " + std::to_string(dim_out));
            }
            j.block(idx(a) * db, idx(b) * db, db, db) = img;
        }
    }
    return ChoiOperator(dim_in, dim_out, HermitianMatrix(j));
}

Matrix apply(const ChoiOperator& j, const Matrix& x) {
    if (x.rows() != idx(j.dim_in()) || x.cols() != idx(j.dim_in())) {
        throw std::invalid_argument("apply: input dimension " + std::to_string(x.rows()) +
                                    " does not match channel input dimension " + std::to_string(j.dim_in()));
    }
    const Eigen::Index db = idx(j.dim_out());
    const Matrix& jm = j.matrix().matrix();
    Matrix out = Matrix::Zero(db, db);
    for (Eigen::Index a = 0; a < x.rows(); ++a) {
        for (Eigen::Index b = 0; b < x.cols(); ++b) {
            if (x(a, b) != Complex(0.0, 0.0)) out += x(a, b) * jm.block(a * db, b * db, db, db);
        }
    }
    return out;
}

HermitianMatrix apply(const ChoiOperator& j, const HermitianMatrix& x) {
    return HermitianMatrix(apply(j, x.matrix()));
}

ChoiOperator adjoint(const ChoiOperator& j) {
    const Eigen::Index din = idx(j.dim_in());
    const Eigen::Index dout = idx(j.dim_out());
    const Matrix& src = j.matrix().matrix();
    Matrix dst(din * dout, din * dout);
    for (Eigen::Index i = 0; i < din; ++i) {
        for (Eigen::Index k = 0; k < dout; ++k) {
            for (Eigen::Index jj = 0; jj < din; ++jj) {
                for (Eigen::Index l = 0; l < dout; ++l) {
                    dst(k * din + i, l * din + jj) = std::conj(src(i * dout + k, jj * dout + l));
                }
            }
        }
    }
    return ChoiOperator(j.dim_out(), j.dim_in(), HermitianMatrix(dst));
}

ChannelVerdict verdict(const ChoiOperator& j, double tol) {
    ChannelVerdict v;
    const std::size_t din = j.dim_in();
    const std::size_t dout = j.dim_out();

    double cp_violation = std::max(0.0, -min_eigenvalue(j.matrix()));
    Matrix tr_out = partial_trace(j.matrix().matrix(), Subsystem::A, din, dout);
    Matrix tr_in = partial_trace(j.matrix().matrix(), Subsystem::B, din, dout);
    double tp_violation = max_abs(tr_out - Matrix::Identity(idx(din), idx(din)));
    double unital_violation = max_abs(tr_in - Matrix::Identity(idx(dout), idx(dout)));

    double mio_violation = 0.0;
    double dio_violation = 0.0;
    for (std::size_t a = 0; a < din; ++a) {
        for (std::size_t b = 0; b < din; ++b) {
            Matrix img = j.block(a, b);
            if (a == b) {
                mio_violation = std::max(mio_violation, max_abs(img - dephase(img)));
            } else {
                dio_violation = std::max(dio_violation, max_abs(dephase(img)));
            }
        }
    }

    v.is_cp = cp_violation <= tol;
    v.is_tp = tp_violation <= tol;
    v.is_unital = unital_violation <= tol;
    v.is_mio = mio_violation <= tol;
    v.is_dio = v.is_mio && dio_violation <= tol;
    v.worst_violation =
        std::max({cp_violation, tp_violation, mio_violation, dio_violation});
    return v;
}

Matrix twirl(const Matrix& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("twirl: matrix is not square");
    const Eigen::Index m = x.rows();
    if (m <= 1) return x;
    const Matrix psi = maximally_coherent(static_cast<std::size_t>(m)).projector();
    const Matrix id = Matrix::Identity(m, m);
    const Complex a = inner(psi, x);
    const Complex b = x.trace() - a;
    return a * psi + b * (id - psi) / static_cast<double>(m - 1);
}

HermitianMatrix twirl(const HermitianMatrix& x) { return HermitianMatrix(twirl(x.matrix())); }

Matrix depolarize(const Matrix& x, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarize: p = " + std::to_string(p) + " outside [0, 1]");
    }
    if (x.rows() != x.cols()) throw std::invalid_argument("depolarize: matrix is not square");
    const Eigen::Index m = x.rows();
    return p * x.trace() * Matrix::Identity(m, m) / static_cast<double>(m) + (1.0 - p) * x;
}

HermitianMatrix depolarize(const HermitianMatrix& x, double p) { return HermitianMatrix(depolarize(x.matrix(), p)); }

ChoiOperator reconstruct_dilution_channel(const HermitianMatrix& c, const HermitianMatrix& d, std::size_t m,
                                          std::size_t out_dim, double tol) {
    if (m == 0) throw std::invalid_argument("reconstruct_dilution_channel: m must be at least 1");
    if (c.dim() != out_dim || d.dim() != out_dim) {
        throw std::invalid_argument("reconstruct_dilution_channel: C and D must have dimension " +
                                    std::to_string(out_dim));
    }
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("reconstruct_dilution_channel: constraint violated: " + what);
    };
    if (min_eigenvalue(c) < -tol) fail("C >= 0");
    if (min_eigenvalue(d) < -tol) fail("D >= 0");
    if (std::abs(c.trace() - 1.0) > tol) fail("tr C = 1");
    if (std::abs(d.trace() - static_cast<double>(m - 1)) > tol) fail("tr D = m - 1");

    const Eigen::Index mm = idx(m);
    const Matrix psi = maximally_coherent(m).projector();
    Matrix adjoint_choi = kron(c.transpose().matrix(), psi);
    if (m > 1) {
        Matrix rest = (Matrix::Identity(mm, mm) - psi) / static_cast<double>(m - 1);
        adjoint_choi += kron(d.transpose().matrix(), rest);
    } else if (d.max_abs() > tol) {
        fail("D = 0 when m = 1");
    }
    return adjoint(ChoiOperator(out_dim, m, HermitianMatrix(adjoint_choi)));
}

void write_choi(std::ostream& out, const ChoiOperator& j) {
    const Matrix& m = j.matrix().matrix();
    std::ostringstream buf;
    buf << std::setprecision(std::numeric_limits<double>::max_digits10);
    buf << "choi " << j.dim_in() << ' ' << j.dim_out() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) buf << ' ';
            buf << m(r, c).real() << ' ' << m(r, c).imag();
        }
        buf << '\n';
    }
    out << buf.str();
}

ChoiOperator read_choi(std::istream& in) {
    std::string tag;
    std::size_t din = 0;
    std::size_t dout = 0;
    if (!(in >> tag >> din >> dout) || tag != "choi") {
        throw std::invalid_argument("read_choi: missing 'choi d_in d_out' header");
    }
    if (din == 0 || dout == 0) throw std::invalid_argument("read_choi: dimensions must be positive");
    const Eigen::Index n = idx(din * dout);
    Matrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            double re = 0.0;
            double im = 0.0;
            if (!(in >> re >> im)) {
                throw std::invalid_argument("read_choi: truncated matrix at row " + std::to_string(r));
            }
            m(r, c) = Complex(re, im);
        }
    }
    return ChoiOperator(din, dout, HermitianMatrix(m));
}

}  // namespace cohdil
