// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cohdil/channel.h"
#include "cohdil/checks.h"
#include "cohdil/dilution.h"
#include "cohdil/experiment.h"
#include "cohdil/oracle.h"
#include "cohdil/random.h"

using namespace cohdil;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

struct Instance {
    PureState phi;
    double eps;
};

struct Solved {
    DilutionResult mio;
    DilutionResult dio;
    double cmax = 0.0;
    double cmaxd = 0.0;
};

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s %d %s: %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

void guarded(int id, const std::string& name, const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(id, name, false, std::string("exception: ") + e.what());
    }
}

std::vector<Instance> random_instances(Rng& rng, int count) {
    std::uniform_int_distribution<std::size_t> dim(2, 8);
    std::uniform_real_distribution<double> eps(0.001, 0.2);
    std::vector<Instance> out;
    for (int i = 0; i < count; ++i) {
        const std::size_t d = dim(rng);
        out.push_back({random_pure_state(d, rng), eps(rng)});
    }
    return out;
}

}  // namespace

int main() {
    Rng rng(7031);
    EngineOptions opts;
    EngineOptions no_dual = opts;
    no_dual.with_dual = false;

    const std::vector<Instance> instances = random_instances(rng, 100);
    std::vector<Solved> solved;

    guarded(1, "MIO strong duality", [&] {
        const auto t0 = Clock::now();
        double worst = 0.0;
        int bad = 0;
        for (const Instance& in : instances) {
            DilutionResult r = mio_dilution(in.phi, in.eps, opts);
            const bool ok = r.ok() && r.dual && r.dual->status == sdp::Status::optimal;
            const double gap = ok ? std::abs(std::log2(r.dual->value) - r.cost_bits_continuous) : INFINITY;
            worst = std::max(worst, gap);
            if (!(gap <= 1e-6)) ++bad;
            solved.push_back({std::move(r), DilutionResult(in.phi)});
        }
        const double secs = seconds_since(t0);
        report(1, "MIO strong duality", bad == 0 && secs < 60.0,
               "100 instances, d in 2..8, worst |log2(dual) - cost| " + fmt("%.2e", worst) + " bits (tol 1e-6), " +
                   std::to_string(bad) + " failing, " + fmt("%.1f", secs) + " s (target < 60 s)");
    });

    guarded(2, "monotone equalities", [&] {
        if (solved.size() != instances.size()) throw std::runtime_error("criterion 1 did not complete");
        double worst_mio = 0.0;
        double worst_dio = 0.0;
        int bad = 0;
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const Instance& in = instances[i];
            Solved& s = solved[i];
            s.dio = dio_dilution(in.phi, in.eps, no_dual);
            s.cmax = c_max_eps(in.phi, in.eps, opts);
            s.cmaxd = c_max_delta_eps(in.phi, in.eps, opts);
            const double gm = s.mio.ok() ? std::abs(s.cmax - s.mio.cost_bits_continuous) : INFINITY;
            const double gd = s.dio.ok() ? std::abs(s.cmaxd - s.dio.cost_bits_continuous) : INFINITY;
            worst_mio = std::max(worst_mio, gm);
            worst_dio = std::max(worst_dio, gd);
            if (!(gm <= 1e-6 && gd <= 2e-6)) ++bad;
        }
        report(2, "monotone equalities", bad == 0,
               "c_max_eps vs MIO worst " + fmt("%.2e", worst_mio) + " (tol 1e-6), c_max_delta_eps vs DIO worst " +
                   fmt("%.2e", worst_dio) + " (tol 2e-6), " + std::to_string(bad) + " failing");
    });

    guarded(3, "integer cost sandwich", [&] {
        if (solved.empty() || !solved.back().dio.ok()) throw std::runtime_error("criterion 2 did not complete");
        int bad = 0;
        for (const Solved& s : solved) {
            const double slack = 1e-6;
            const bool mio = s.cmax - slack <= s.mio.cost_bits_integer && s.mio.cost_bits_integer <= s.cmax + 1.0 + slack;
            const bool dio =
                s.cmaxd - slack <= s.dio.cost_bits_integer && s.dio.cost_bits_integer <= s.cmaxd + 1.0 + slack;
            if (!(mio && dio)) ++bad;
        }
        report(3, "integer cost sandwich", bad == 0,
               std::to_string(solved.size()) + " instances, MIO and DIO, slack 1e-6, " + std::to_string(bad) +
                   " failing");
    });

    guarded(4, "eps=0 analytic oracles", [&] {
        double worst_mio = 0.0;
        double worst_dio = 0.0;
        int bad = 0;
        int cases = 0;
        std::bernoulli_distribution drop(0.3);
        for (std::size_t d = 2; d <= 8; ++d) {
            for (int k = 0; k < 50; ++k) {
                Vector v = random_pure_state(d, rng).amps();
                // Every other state gets a random support so the support-size oracle varies.
                if (k % 2 == 1) {
                    for (Eigen::Index i = 1; i < v.size(); ++i) {
                        if (drop(rng)) v(i) = 0.0;
                    }
                }
                const PureState phi = PureState::normalized(v);
                const double gm =
                    std::abs(mio_dilution(phi, 0.0, no_dual).cost_bits_continuous - oracle::analytic_mio_eps0(phi));
                const double gd =
                    std::abs(dio_dilution(phi, 0.0, no_dual).cost_bits_continuous - oracle::analytic_dio_eps0(phi));
                worst_mio = std::max(worst_mio, gm);
                worst_dio = std::max(worst_dio, gd);
                if (!(gm <= 1e-6 && gd <= 2e-6)) ++bad;
                ++cases;
            }
        }
        report(4, "eps=0 analytic oracles", bad == 0,
               std::to_string(cases) + " states, MIO worst " + fmt("%.2e", worst_mio) + " (tol 1e-6), DIO worst " +
                   fmt("%.2e", worst_dio) + " (tol 2e-6), " + std::to_string(bad) + " failing");
    });

    std::vector<SweepRow> rows;
    double sweep_seconds = 0.0;
    try {
        SweepConfig cfg;
        cfg.d = 8;
        cfg.alphas = alpha_grid(33);
        cfg.epsilons = {0.001, 0.01, 0.1};
        cfg.modes = {Mode::mio, Mode::dio, Mode::dual};
        cfg.options = opts;
        const auto t0 = Clock::now();
        rows = run_sweep(cfg);
        sweep_seconds = seconds_since(t0);
    } catch (const std::exception& e) {
        std::printf("sweep failed: %s\n", e.what());
    }
    auto series = [&](double eps) {
        std::vector<const SweepRow*> out;
        for (const SweepRow& r : rows) {
            if (r.epsilon == eps) out.push_back(&r);
        }
        return out;
    };

    guarded(5, "d=8 eps=0.01 sweep shape", [&] {
        const std::vector<const SweepRow*> s = series(0.01);
        if (s.size() != 33) throw std::runtime_error("sweep produced " + std::to_string(s.size()) + " rows at eps=0.01");
        double max_gap = -INFINITY;
        double max_gap_alpha = 0.0;
        double worst_drop = 0.0;
        bool statuses = true;
        for (std::size_t i = 0; i < s.size(); ++i) {
            statuses = statuses && s[i]->mio_status == "optimal" && s[i]->dio_status == "optimal";
            if (i > 0 && i + 1 < s.size() && s[i]->gap_bits > max_gap) {
                max_gap = s[i]->gap_bits;
                max_gap_alpha = s[i]->alpha;
            }
            if (i > 0) {
                worst_drop = std::max(worst_drop, s[i - 1]->c_mio_bits - s[i]->c_mio_bits);
                worst_drop = std::max(worst_drop, s[i - 1]->c_dio_bits - s[i]->c_dio_bits);
            }
        }
        const double end0 = std::abs(s.front()->c_dio_bits - s.front()->c_mio_bits);
        const double end1 = std::abs(s.back()->c_dio_bits - s.back()->c_mio_bits);
        const bool pass = statuses && max_gap >= 0.1 && worst_drop <= 1e-4 && end0 <= 1e-4 && end1 <= 1e-4 &&
                          sweep_seconds < 300.0;
        report(5, "d=8 eps=0.01 sweep shape", pass,
               "33 alphas, max interior gap " + fmt("%.4f", max_gap) + " bits at alpha " + fmt("%.4f", max_gap_alpha) +
                   " (need >= 0.1), largest decrease " + fmt("%.2e", worst_drop) + " (tol 1e-4), endpoint gaps " +
                   fmt("%.2e", end0) + " / " + fmt("%.2e", end1) + " (tol 1e-4), full sweep " +
                   fmt("%.1f", sweep_seconds) + " s (target < 300 s)");
    });

    guarded(6, "ordering across eps", [&] {
        const std::vector<double> eps = {0.001, 0.01, 0.1};
        std::vector<std::vector<const SweepRow*>> s;
        for (double e : eps) s.push_back(series(e));
        for (const auto& v : s) {
            if (v.size() != 33) throw std::runtime_error("incomplete sweep");
        }
        double worst = 0.0;
        for (std::size_t k = 1; k < s.size(); ++k) {
            for (std::size_t i = 0; i < 33; ++i) {
                // Larger eps (index k) must not cost more than smaller eps (index k - 1).
                worst = std::max(worst, s[k][i]->c_mio_bits - s[k - 1][i]->c_mio_bits);
                worst = std::max(worst, s[k][i]->c_dio_bits - s[k - 1][i]->c_dio_bits);
            }
        }
        report(6, "ordering across eps", worst <= 1e-6,
               "eps 0.1 <= 0.01 <= 0.001 pointwise for MIO and DIO, worst violation " + fmt("%.2e", worst) +
                   " bits (tol 1e-6)");
    });

    guarded(7, "DIO duality gap", [&] {
        int witnesses = 0;
        int tested = 0;
        double best = 0.0;
        for (const SweepRow& r : rows) {
            if (r.epsilon != 0.01 || !std::isfinite(r.dual_bits) || !std::isfinite(r.c_dio_bits)) continue;
            ++tested;
            const double m_star = std::exp2(r.c_dio_bits);
            const double shortfall = m_star - std::exp2(r.dual_bits);
            best = std::max(best, shortfall);
            if (shortfall > 1e-3) ++witnesses;
        }
        report(7, "DIO duality gap", witnesses > 0,
               std::to_string(witnesses) + " of " + std::to_string(tested) +
                   " sweep points with 2^dual < m* - 1e-3, largest m* - 2^dual " + fmt("%.4f", best));
    });

    guarded(8, "channel round trip", [&] {
        if (solved.size() < 20 || !solved[19].dio.ok()) throw std::runtime_error("criteria 1-2 did not complete");
        int bad = 0;
        double worst_slack = -INFINITY;
        for (std::size_t i = 0; i < 20; ++i) {
            const Solved& s = solved[i];
            for (const DilutionResult* r : {&s.mio, &s.dio}) {
                const ChannelRealization ch = realize_channel(*r, opts);
                const ChannelVerdict v = verdict(ch.channel, 1e-7);
                const bool member = r->operation_class == OperationClass::MIO ? v.is_mio : v.is_dio;
                const double f =
                    fidelity_pure(r->phi, cohdil::apply(ch.channel, HermitianMatrix::projector(maximally_coherent(ch.m))));
                worst_slack = std::max(worst_slack, (1.0 - r->epsilon) - f);
                if (!(v.is_cp && v.is_tp && member && f >= 1.0 - r->epsilon - 1e-7)) ++bad;
            }
        }
        report(8, "channel round trip", bad == 0,
               "20 instances x {MIO, DIO}, CP/TP/class verdicts at tol 1e-7, worst (1 - eps) - fidelity " +
                   fmt("%.2e", worst_slack) + " (tol 1e-7), " + std::to_string(bad) + " failing");
    });

    guarded(9, "Choi equivalence suite", [&] {
        const EquivalenceSummary s = choi_equivalence_suite(rng, 200, 4);
        std::string detail = "200 random maps, d <= 4:";
        for (const auto& t : s.tallies) {
            detail += " [" + t.name + ": " + std::to_string(t.mismatches) + " mismatches, " +
                      std::to_string(t.seen_true) + " true / " + std::to_string(t.seen_false) + " false]";
        }
        report(9, "Choi equivalence suite", s.pass(), detail);
    });

    guarded(10, "brute-force agreement", [&] {
        double worst_grid = 0.0;
        std::uniform_real_distribution<double> eps(0.0, 0.2);
        for (int k = 0; k < 10; ++k) {
            const PureState phi = random_pure_state(2, rng);
            const double e = eps(rng);
            const double grid = oracle::grid_mio_d2(phi, e, 400);
            worst_grid = std::max(worst_grid, std::abs(grid - mio_dilution(phi, e, no_dual).cost_bits_continuous));
        }
        double worst_twirl = 0.0;
        for (std::size_t m = 1; m <= 4; ++m) {
            for (int k = 0; k < 10; ++k) {
                const HermitianMatrix x = random_hermitian(m, rng);
                const Matrix diff = twirl(x).matrix() - oracle::permutation_twirl_reference(x).matrix();
                worst_twirl = std::max(worst_twirl, diff.cwiseAbs().maxCoeff());
            }
        }
        report(10, "brute-force agreement", worst_grid <= 1e-3 && worst_twirl <= 1e-12,
               "d=2 grid (400 steps) vs MIO program on 10 instances, worst " + fmt("%.2e", worst_grid) +
                   " bits (tol 1e-3); permutation-sum vs closed-form twirl, m <= 4, worst " +
                   fmt("%.2e", worst_twirl) + " (tol 1e-12)");
    });

    guarded(11, "fidelity constraint variants", [&] {
        const std::vector<Instance> more = random_instances(rng, 50);
        double worst = 0.0;
        for (const Instance& in : more) {
            const DilutionResult eq = mio_dilution(in.phi, in.eps, no_dual, FidelityConstraint::equal);
            const DilutionResult ge = mio_dilution(in.phi, in.eps, no_dual, FidelityConstraint::at_least);
            const double g = eq.ok() && ge.ok() ? std::abs(eq.cost_bits_continuous - ge.cost_bits_continuous) : INFINITY;
            worst = std::max(worst, g);
        }
        report(11, "fidelity constraint variants", worst <= 1e-7,
               "50 instances, equality vs lower-bound fidelity, worst " + fmt("%.2e", worst) + " bits (tol 1e-7)");
    });

    std::printf("acceptance: %s\n", failures == 0 ? "all criteria passed" : (std::to_string(failures) + " failing").c_str());
    return failures == 0 ? 0 : 1;
}
