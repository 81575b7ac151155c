#include "cohdil/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cohdil::oracle {

namespace {

constexpr int kOuterLevels = 4;
constexpr int kInnerLevels = 3;

// For C = [[p, c], [c*, 1 - p]], min over g_0 > p of g_0 + (1 - p) + |c|^2 / (g_0 - p), scanned on
// a grid of offsets u = g_0 - p. The second term is the least g_1 with G >= C.
double min_trace_for(double c_abs, int steps) {
    if (c_abs == 0.0) return 1.0;
    const double c2 = c_abs * c_abs;
    double lo = 0.0;
    double hi = 1.0;
    double best_u = hi;
    double best = std::numeric_limits<double>::infinity();
    for (int level = 0; level < kInnerLevels; ++level) {
        const double h = (hi - lo) / steps;
        for (int k = 1; k <= steps; ++k) {
            const double u = lo + k * h;
            const double t = u + 1.0 + c2 / u;
            if (t < best) {
                best = t;
                best_u = u;
            }
        }
        lo = std::max(0.0, best_u - 2.0 * h);
        hi = best_u + 2.0 * h;
    }
    return best;
}

}  // namespace

OracleReport compare(std::string instance, double oracle_value, double engine_value, double tolerance) {
    OracleReport r;
    r.instance = std::move(instance);
    r.oracle_value = oracle_value;
    r.engine_value = engine_value;
    r.abs_gap = std::abs(oracle_value - engine_value);
    r.tolerance = tolerance;
    r.pass = r.abs_gap <= tolerance;
    return r;
}

double analytic_mio_eps0(const PureState& phi) {
    const double l1 = phi.amps().cwiseAbs().sum();
    return std::log2(l1 * l1);
}

double analytic_dio_eps0(const PureState& phi) {
    std::size_t support = 0;
    for (std::size_t i = 0; i < phi.dim(); ++i) {
        if (std::abs(phi[i]) > kSupportThreshold) ++support;
    }
    return std::log2(static_cast<double>(support));
}

std::vector<std::size_t> near_zero_amplitudes(const PureState& phi) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < phi.dim(); ++i) {
        const double a = std::abs(phi[i]);
        if (a > kSupportThreshold && a < 1e-6) out.push_back(i);
    }
    return out;
}

double grid_mio_d2(const PureState& phi, double eps, int steps) {
    if (phi.dim() != 2) throw std::invalid_argument("grid_mio_d2: state must have dimension 2");
    if (steps < 10) throw std::invalid_argument("grid_mio_d2: steps must be at least 10");
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("grid_mio_d2: epsilon outside [0, 1)");

    // Bloch vector of the phase-free target and an orthonormal frame of the fidelity plane
    // n . r = 1 - 2 eps.
    const double r0 = std::abs(phi[0]);
    const double r1 = std::abs(phi[1]);
    const double nx = 2.0 * r0 * r1;
    const double nz = r0 * r0 - r1 * r1;
    const double h = 1.0 - 2.0 * eps;
    const double radius = std::sqrt(std::max(0.0, 1.0 - h * h));

    auto trace_at = [&](double a, double b) {
        // r = h n + a (nz, 0, -nx) + b (0, 1, 0)
        const double x = h * nx + a * nz;
        const double y = b;
        return min_trace_for(0.5 * std::sqrt(x * x + y * y), steps);
    };

    double best = trace_at(0.0, 0.0);
    double best_a = 0.0;
    double best_b = 0.0;
    if (radius > 0.0) {
        double ca = 0.0;
        double cb = 0.0;
        double half = radius;
        for (int level = 0; level < kOuterLevels; ++level) {
            const double spacing = 2.0 * half / (steps - 1);
            for (int i = 0; i < steps; ++i) {
                const double a = ca - half + i * spacing;
                for (int j = 0; j < steps; ++j) {
                    const double b = cb - half + j * spacing;
                    if (a * a + b * b > radius * radius) continue;
                    const double t = trace_at(a, b);
                    if (t < best) {
                        best = t;
                        best_a = a;
                        best_b = b;
                    }
                }
            }
            ca = best_a;
            cb = best_b;
            half = 2.0 * spacing;
        }
    }
    return std::log2(best);
}

HermitianMatrix permutation_twirl_reference(const HermitianMatrix& x) {
    const std::size_t m = x.dim();
    if (m == 0 || m > 4) {
        throw std::invalid_argument("permutation_twirl_reference: dimension " + std::to_string(m) +
                                    " outside 1..4");
    }
    std::vector<Eigen::Index> perm(m);
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    const auto n = static_cast<Eigen::Index>(m);
    Matrix sum = Matrix::Zero(n, n);
    int count = 0;
    do {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                sum(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) += x.matrix()(i, j);
            }
        }
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return HermitianMatrix(sum / static_cast<double>(count));
}

}  // namespace cohdil::oracle
