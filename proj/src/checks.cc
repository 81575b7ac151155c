#include "cohdil/checks.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cohdil {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

bool psd_within(const Matrix& x, double tol) {
    const HermitianMatrix h(x);
    return min_eigenvalue(h) >= -tol * std::max(1.0, operator_norm(h));
}

std::vector<Matrix> random_kraus(std::size_t d, std::size_t rank, Rng& rng) {
    std::vector<Matrix> k;
    for (std::size_t i = 0; i < rank; ++i) k.push_back(random_matrix(d, d, rng));
    return k;
}

// Rescales Kraus operators so that sum K^dag K = I.
void make_trace_preserving(std::vector<Matrix>& kraus) {
    Matrix s = Matrix::Zero(kraus[0].cols(), kraus[0].cols());
    for (const auto& k : kraus) s += k.adjoint() * k;
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    const Matrix inv_sqrt =
        es.eigenvectors() * es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
    for (auto& k : kraus) k = k * inv_sqrt;
}

ChoiOperator from_kraus(const std::vector<Matrix>& kraus, const std::vector<double>& weights, bool transpose_out) {
    const std::size_t d = static_cast<std::size_t>(kraus[0].cols());
    return choi_of(d, d, [&](std::size_t a, std::size_t b) {
        Matrix out = Matrix::Zero(kraus[0].rows(), kraus[0].rows());
        for (std::size_t i = 0; i < kraus.size(); ++i) {
            out += weights[i] * kraus[i].col(idx(a)) * kraus[i].col(idx(b)).adjoint();
        }
        return transpose_out ? Matrix(out.transpose()) : out;
    });
}

}  // namespace

Matrix apply_extended(const ChoiOperator& j, const Matrix& x, std::size_t k) {
    const std::size_t din = j.dim_in();
    const std::size_t dout = j.dim_out();
    if (x.rows() != idx(din * k) || x.cols() != idx(din * k)) {
        throw std::invalid_argument("apply_extended: input dimension mismatch");
    }
    Matrix out = Matrix::Zero(idx(dout * k), idx(dout * k));
    for (std::size_t a = 0; a < din; ++a) {
        for (std::size_t b = 0; b < din; ++b) {
            const Matrix img = j.block(a, b);
            const Matrix xs = x.block(idx(a * k), idx(b * k), idx(k), idx(k));
            out += kron(img, xs);
        }
    }
    return out;
}

bool cp_by_action(const ChoiOperator& j, Rng& rng, int samples, double tol) {
    const std::size_t d = j.dim_in();
    Vector omega = Vector::Zero(idx(d * d));
    for (std::size_t i = 0; i < d; ++i) omega(idx(i * d + i)) = 1.0;
    if (!psd_within(apply_extended(j, omega * omega.adjoint(), d), tol)) return false;
    for (int s = 0; s < samples; ++s) {
        const PureState psi = random_pure_state(d * d, rng);
        if (!psd_within(apply_extended(j, psi.projector(), d), tol)) return false;
    }
    return true;
}

bool tp_by_action(const ChoiOperator& j, double tol) {
    const std::size_t d = j.dim_in();
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            const Complex t = cohdil::apply(j, matrix_unit(d, a, b)).trace();
            if (std::abs(t - (a == b ? 1.0 : 0.0)) > tol) return false;
        }
    }
    return true;
}

bool unital_by_action(const ChoiOperator& j, double tol) {
    const std::size_t din = j.dim_in();
    const std::size_t dout = j.dim_out();
    const Matrix out = cohdil::apply(j, Matrix(Matrix::Identity(idx(din), idx(din))));
    return (out - Matrix::Identity(idx(dout), idx(dout))).cwiseAbs().maxCoeff() <= tol;
}

std::string to_string(ChannelFamily f) {
    switch (f) {
        case ChannelFamily::cptp: return "cptp";
        case ChannelFamily::cp_not_tp: return "cp-not-tp";
        case ChannelFamily::mixed_unitary: return "mixed-unitary";
        case ChannelFamily::transpose_composed: return "transpose-composed";
        case ChannelFamily::hermitian_preserving: return "hermitian-preserving";
    }
    return "?";
}

ChoiOperator random_channel(ChannelFamily family, std::size_t d, Rng& rng) {
    std::uniform_int_distribution<std::size_t> rank_dist(1, d * d);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (family) {
        case ChannelFamily::cptp: {
            auto k = random_kraus(d, rank_dist(rng), rng);
            make_trace_preserving(k);
            return from_kraus(k, std::vector<double>(k.size(), 1.0), false);
        }
        case ChannelFamily::cp_not_tp: {
            auto k = random_kraus(d, rank_dist(rng), rng);
            make_trace_preserving(k);
            // Scale away from 1 so the trace defect is far above any tolerance.
            const double scale = unit(rng) < 0.5 ? 0.3 + 0.5 * unit(rng) : 1.2 + unit(rng);
            return from_kraus(k, std::vector<double>(k.size(), scale), false);
        }
        case ChannelFamily::mixed_unitary: {
            const std::size_t n = 1 + rank_dist(rng) % 4;
            std::vector<Matrix> u;
            std::vector<double> p;
            for (std::size_t i = 0; i < n; ++i) {
                u.push_back(random_unitary(d, rng));
                p.push_back(0.1 + unit(rng));
            }
            double total = 0.0;
            for (double w : p) total += w;
            for (double& w : p) w /= total;
            return from_kraus(u, p, false);
        }
        case ChannelFamily::transpose_composed: {
            // Low Kraus rank keeps the partial transpose of the Choi operator indefinite.
            auto k = random_kraus(d, 1 + rank_dist(rng) % 2, rng);
            make_trace_preserving(k);
            return from_kraus(k, std::vector<double>(k.size(), 1.0), true);
        }
        case ChannelFamily::hermitian_preserving: {
            auto k = random_kraus(d, 2 + rank_dist(rng) % 3, rng);
            std::vector<double> w(k.size(), 1.0);
            w[0] = -1.0;
            return from_kraus(k, w, false);
        }
    }
    throw std::invalid_argument("random_channel: unknown family");
}

bool EquivalenceSummary::pass() const {
    if (tallies.empty()) return false;
    return std::all_of(tallies.begin(), tallies.end(),
                       [](const Tally& t) { return t.mismatches == 0 && t.seen_true > 0 && t.seen_false > 0; });
}

EquivalenceSummary choi_equivalence_suite(Rng& rng, int trials, std::size_t max_dim) {
    if (max_dim < 2) throw std::invalid_argument("choi_equivalence_suite: max_dim must be at least 2");
    EquivalenceSummary s;
    s.trials = trials;
    s.tallies = {{"CP <=> J >= 0"},
                 {"TP <=> tr_out J = I"},
                 {"unital <=> tr_in J = I"},
                 {"TP(E) <=> unital(E^dag)"},
                 {"CP(E) <=> CP(E^dag)"}};
    const ChannelFamily families[] = {ChannelFamily::cptp, ChannelFamily::cp_not_tp, ChannelFamily::mixed_unitary,
                                      ChannelFamily::transpose_composed, ChannelFamily::hermitian_preserving};
    std::uniform_int_distribution<std::size_t> dim_dist(2, max_dim);
    auto record = [](EquivalenceSummary::Tally& t, bool lhs, bool rhs) {
        if (lhs != rhs) ++t.mismatches;
        (lhs ? t.seen_true : t.seen_false)++;
    };
    for (int i = 0; i < trials; ++i) {
        const ChannelFamily fam = families[static_cast<std::size_t>(i) % 5];
        const std::size_t d = dim_dist(rng);
        const ChoiOperator j = random_channel(fam, d, rng);
        const ChoiOperator jd = adjoint(j);
        const ChannelVerdict v = verdict(j);
        const bool cp = cp_by_action(j, rng);
        const bool cp_adj = cp_by_action(jd, rng);
        const bool tp = tp_by_action(j);
        record(s.tallies[0], cp, v.is_cp);
        record(s.tallies[1], tp, v.is_tp);
        record(s.tallies[2], unital_by_action(j), v.is_unital);
        record(s.tallies[3], tp, unital_by_action(jd));
        record(s.tallies[4], cp, cp_adj);
    }
    return s;
}

}  // namespace cohdil
