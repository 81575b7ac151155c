#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace cohdil::conic {

/// Real conic program over a product of symmetric PSD cones:
///
///     minimize    c^T x
///     subject to  G x + s = h,   A x = b,   s in S_+^{k_1} x ... x S_+^{k_L}
///
/// with dual
///
///     maximize   -h^T z - b^T y
///     subject to  G^T z + A^T y + c = 0,   z in the same cone.
///
/// Cone vectors use the scaled lower-triangular layout (svec): per block, column-major lower
/// triangle with off-diagonal entries multiplied by sqrt(2), so u^T v = tr(U V).
struct Problem {
    Eigen::VectorXd c;
    Eigen::SparseMatrix<double> G;
    Eigen::VectorXd h;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    std::vector<int> blocks;
};

struct Options {
    double feas_tol = 1e-8;
    double gap_tol = 1e-8;
    int max_iter = 200;
};

enum class Status { optimal, primal_infeasible, dual_infeasible, numerical_failure };

std::string to_string(Status s);

/// Optimal: (x, y, s, z) solve the primal/dual pair. Primal infeasible: (y, z) is a
/// certificate with A^T y + G^T z ~ 0, h^T z + b^T y = -1, z in K. Dual infeasible:
/// (x, s) is a ray with A x ~ 0, G x + s ~ 0, c^T x = -1, s in K.
struct Result {
    Status status = Status::numerical_failure;
    Eigen::VectorXd x;
    Eigen::VectorXd y;
    Eigen::VectorXd s;
    Eigen::VectorXd z;
    double primal_value = 0.0;
    double dual_value = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
    int iterations = 0;
    std::string message;
};

Result solve(const Problem& problem, const Options& options = {});

inline int svec_size(int k) { return k * (k + 1) / 2; }
int cone_size(const std::vector<int>& blocks);

/// Offset of entry (i, j), i >= j, inside an order-k svec block.
inline int svec_index(int k, int i, int j) { return j * k - j * (j - 1) / 2 + (i - j); }

Eigen::VectorXd svec(const Eigen::MatrixXd& m);
Eigen::MatrixXd smat(const Eigen::Ref<const Eigen::VectorXd>& v, int k);

}  // namespace cohdil::conic
