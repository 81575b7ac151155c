#include "cohdil/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "cohdil/channel.h"
#include "cohdil/checks.h"
#include "cohdil/oracle.h"
#include "cohdil/random.h"

namespace cohdil {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v, int precision = 12) {
    std::ostringstream o;
    o << std::setprecision(precision) << v;
    return o.str();
}

}  // namespace

PureState make_test_state(std::size_t d, double alpha) {
    if (d == 0) throw std::invalid_argument("make_test_state: d must be positive");
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("make_test_state: alpha = " + fmt(alpha) + " outside [0, 1]");
    }
    const double c = 1.0 / std::sqrt(static_cast<double>(d));
    const double beta = -alpha * c + std::sqrt(alpha * alpha * (c * c - 1.0) + 1.0);
    Vector amps = Vector::Constant(static_cast<Eigen::Index>(d), Complex(alpha * c, 0.0));
    amps(0) += beta;
    return PureState::normalized(amps);
}

std::string to_string(Mode m) {
    switch (m) {
        case Mode::mio: return "mio";
        case Mode::dio: return "dio";
        case Mode::dual: return "dual";
        case Mode::cmax: return "cmax";
        case Mode::cmaxd: return "cmaxd";
    }
    return "?";
}

Mode parse_mode(const std::string& name) {
    for (Mode m : {Mode::mio, Mode::dio, Mode::dual, Mode::cmax, Mode::cmaxd}) {
        if (to_string(m) == name) return m;
    }
    throw std::invalid_argument("unknown mode '" + name + "' (expected mio, dio, dual, cmax or cmaxd)");
}

std::vector<double> alpha_grid(std::size_t count) {
    std::vector<double> out;
    if (count == 1) return {0.0};
    for (std::size_t i = 0; i < count; ++i) out.push_back(static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
}

void validate(const SweepConfig& cfg) {
    if (cfg.d < 2) throw ConfigError("dimension must be at least 2");
    if (cfg.alphas.empty()) throw ConfigError("alpha grid is empty");
    if (cfg.epsilons.empty()) throw ConfigError("epsilon list is empty");
    if (cfg.modes.empty()) throw ConfigError("no modes selected");
    for (double a : cfg.alphas) {
        if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha " + fmt(a) + " outside [0, 1]");
    }
    for (double e : cfg.epsilons) {
        if (!(e >= 0.0 && e < 1.0)) throw ConfigError("epsilon " + fmt(e) + " outside [0, 1)");
    }
}

namespace {

SweepRow run_cell(const SweepConfig& cfg, double alpha, double eps) {
    SweepRow row;
    row.alpha = alpha;
    row.epsilon = eps;
    row.c_mio_bits = row.c_dio_bits = row.dual_bits = row.gap_bits = row.cmax_bits = row.cmaxd_bits = kNaN;
    const PureState phi = make_test_state(cfg.d, alpha);
    const bool want_dual = cfg.modes.count(Mode::dual) > 0;
    auto guard = [&](const std::string& what, const std::function<void()>& f) {
        try {
            f();
        } catch (const std::exception& e) {
            row.warnings.push_back(what + ": " + e.what());
        }
    };

    if (cfg.modes.count(Mode::mio)) {
        row.mio_status = "error";
        guard("mio", [&] {
            EngineOptions o = cfg.options;
            o.with_dual = want_dual;
            const DilutionResult r = mio_dilution(phi, eps, o);
            row.mio_status = sdp::to_string(r.status);
            if (r.ok()) row.c_mio_bits = r.cost_bits_continuous;
            if (r.dual && r.dual->status == sdp::Status::optimal) row.dual_bits = std::log2(r.dual->value);
            row.warnings.insert(row.warnings.end(), r.warnings.begin(), r.warnings.end());
        });
    } else if (want_dual) {
        guard("dual", [&] {
            const DualCertificate c = dual_program(phi, eps, cfg.options);
            if (c.status == sdp::Status::optimal) row.dual_bits = std::log2(c.value);
        });
    }
    if (cfg.modes.count(Mode::dio)) {
        row.dio_status = "error";
        guard("dio", [&] {
            EngineOptions o = cfg.options;
            o.with_dual = false;
            const DilutionResult r = dio_dilution(phi, eps, o);
            row.dio_status = sdp::to_string(r.status);
            if (r.ok()) row.c_dio_bits = r.cost_bits_continuous;
            row.warnings.insert(row.warnings.end(), r.warnings.begin(), r.warnings.end());
        });
    }
    if (cfg.modes.count(Mode::cmax)) guard("cmax", [&] { row.cmax_bits = c_max_eps(phi, eps, cfg.options); });
    if (cfg.modes.count(Mode::cmaxd)) guard("cmaxd", [&] { row.cmaxd_bits = c_max_delta_eps(phi, eps, cfg.options); });
    row.gap_bits = row.c_dio_bits - row.c_mio_bits;
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
    validate(cfg);
    std::vector<double> alphas = cfg.alphas;
    std::vector<double> eps = cfg.epsilons;
    std::sort(alphas.begin(), alphas.end());
    std::sort(eps.begin(), eps.end());
    const std::size_t n = alphas.size() * eps.size();
    std::vector<SweepRow> rows(n);

    unsigned jobs = cfg.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.jobs;
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            rows[i] = run_cell(cfg, alphas[i % alphas.size()], eps[i / alphas.size()]);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

int sweep_exit_code(const std::vector<SweepRow>& rows) {
    for (const auto& r : rows) {
        for (const auto* s : {&r.mio_status, &r.dio_status}) {
            if (*s != "optimal" && *s != "skipped") return 1;
        }
        for (const auto& w : r.warnings) {
            if (w.rfind("dual", 0) == 0 || w.rfind("cmax", 0) == 0) return 1;
        }
    }
    return 0;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    std::ostringstream o;
    o << "alpha,epsilon,c_mio_bits,c_dio_bits,dual_bits,gap_bits,mio_status,dio_status\n";
    for (const auto& r : rows) {
        o << fmt(r.alpha) << ',' << fmt(r.epsilon) << ',' << fmt(r.c_mio_bits) << ',' << fmt(r.c_dio_bits) << ','
          << fmt(r.dual_bits) << ',' << fmt(r.gap_bits) << ',' << r.mio_status << ',' << r.dio_status << '\n';
    }
    out << o.str();
}

std::string render_svg(const std::vector<SweepRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("render_svg: no rows");
    constexpr double W = 720, H = 480, L = 70, R = 170, T = 30, B = 60;
    double ymax = 1.0;
    for (const auto& r : rows) {
        for (double v : {r.c_mio_bits, r.c_dio_bits}) {
            if (std::isfinite(v)) ymax = std::max(ymax, v);
        }
    }
    ymax = std::ceil(ymax * 2.0) / 2.0;
    auto px = [&](double a) { return L + a * (W - L - R); };
    auto py = [&](double b) { return H - B - b / ymax * (H - T - B); };

    std::map<double, std::vector<const SweepRow*>> by_eps;
    for (const auto& r : rows) by_eps[r.epsilon].push_back(&r);
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    std::ostringstream o;
    o << std::setprecision(6);
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 10; ++i) {
        const double a = i / 10.0;
        o << "<line x1=\"" << px(a) << "\" y1=\"" << H - B << "\" x2=\"" << px(a) << "\" y2=\"" << H - B + 5
          << "\" stroke=\"black\"/>";
        if (i % 2 == 0) {
            o << "<text x=\"" << px(a) << "\" y=\"" << H - B + 20 << "\" text-anchor=\"middle\">" << a << "</text>";
        }
        o << '\n';
    }
    const int yticks = static_cast<int>(std::round(ymax * 2.0));
    for (int i = 0; i <= yticks; ++i) {
        const double b = i * 0.5;
        o << "<line x1=\"" << L - 5 << "\" y1=\"" << py(b) << "\" x2=\"" << L << "\" y2=\"" << py(b)
          << "\" stroke=\"black\"/><text x=\"" << L - 8 << "\" y=\"" << py(b) + 4 << "\" text-anchor=\"end\">" << b
          << "</text>\n";
    }
    o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">&#945;</text>\n";
    o << "<text x=\"20\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << (T + H - B) / 2 << ")\">bits</text>\n";

    int series = 0;
    std::size_t ci = 0;
    for (const auto& [eps, list] : by_eps) {
        std::vector<const SweepRow*> sorted = list;
        std::sort(sorted.begin(), sorted.end(), [](const SweepRow* a, const SweepRow* b) { return a->alpha < b->alpha; });
        const char* color = colors[ci++ % 6];
        for (int mode = 0; mode < 2; ++mode) {
            std::ostringstream pts;
            pts << std::setprecision(6);
            std::vector<std::pair<double, double>> xy;
            for (const SweepRow* r : sorted) {
                const double v = mode == 0 ? r->c_mio_bits : r->c_dio_bits;
                if (std::isfinite(v)) xy.emplace_back(px(r->alpha), py(v));
            }
            if (xy.empty()) continue;
            for (const auto& [x, y] : xy) pts << x << ',' << y << ' ';
            const std::string dash = mode == 0 ? "" : " stroke-dasharray=\"6 4\"";
            const std::string label = std::string(mode == 0 ? "MIO" : "DIO") + " eps=" + fmt(eps, 6);
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << dash << " points=\""
              << pts.str() << "\"><title>" << label << "</title></polyline>\n";
            for (const auto& [x, y] : xy) {
                o << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2\" fill=\"" << color << "\"/>\n";
            }
            const double ly = T + 10 + 18 * series;
            o << "<line x1=\"" << W - R + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 45 << "\" y2=\"" << ly
              << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << dash << "/><text x=\"" << W - R + 50
              << "\" y=\"" << ly + 4 << "\">" << label << "</text>\n";
            ++series;
        }
    }
    o << "</svg>\n";
    return o.str();
}

void emit_plot(const std::vector<SweepRow>& rows, const std::string& path) {
    const std::string svg = render_svg(rows);
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << svg;
}

// ---- self test ----

namespace {

struct Checker {
    std::vector<SelfTestLine> lines;

    void add(std::string name, bool pass, std::string detail) {
        lines.push_back(SelfTestLine{std::move(name), pass, std::move(detail)});
    }
    // Adds one line summarizing the worst gap over a batch.
    void batch(const std::string& name, const std::vector<double>& gaps, double tol, int failures_other = 0) {
        double worst = 0.0;
        int bad = failures_other;
        for (double g : gaps) {
            if (!(g <= tol)) ++bad;
            if (std::isfinite(g)) worst = std::max(worst, g);
        }
        add(name, bad == 0 && !gaps.empty(),
            std::to_string(gaps.size()) + " cases, worst " + fmt(worst, 3) + " (tol " + fmt(tol, 3) + ")" +
                (bad ? ", " + std::to_string(bad) + " failing" : ""));
    }
};

}  // namespace

std::vector<SelfTestLine> self_test(const SelfTestOptions& opts) {
    Checker ck;
    Rng rng(opts.seed);
    EngineOptions eo = opts.options;
    const double solver_tol = std::max(eo.solver.gap_tol, eo.solver.feas_tol);
    // Checks loosen together with the solver tolerances.
    auto tol = [&](double base) { return std::max(base, 10.0 * solver_tol); };
    std::uniform_real_distribution<double> eps_dist(0.005, 0.2);

    auto guarded = [&](const std::string& name, const std::function<void()>& f) {
        try {
            f();
        } catch (const std::exception& e) {
            ck.add(name, false, std::string("exception: ") + e.what());
        }
    };

    guarded("oracle: MIO at eps=0 vs analytic", [&] {
        std::vector<double> gaps;
        EngineOptions o = eo;
        o.with_dual = false;
        for (std::size_t d = 2; d <= 8; ++d) {
            for (int k = 0; k < 3; ++k) {
                const PureState phi = random_pure_state(d, rng);
                gaps.push_back(std::abs(mio_dilution(phi, 0.0, o).cost_bits_continuous - oracle::analytic_mio_eps0(phi)));
            }
        }
        ck.batch("oracle: MIO at eps=0 vs analytic", gaps, tol(1e-6));
    });
    guarded("oracle: DIO at eps=0 vs support size", [&] {
        std::vector<double> gaps;
        EngineOptions o = eo;
        o.with_dual = false;
        for (std::size_t d = 2; d <= 8; ++d) {
            const PureState phi = random_pure_state(d, rng);
            gaps.push_back(std::abs(dio_dilution(phi, 0.0, o).cost_bits_continuous - oracle::analytic_dio_eps0(phi)));
        }
        Vector partial = Vector::Zero(3);
        partial(0) = partial(1) = std::sqrt(0.5);
        const PureState phi(partial);
        gaps.push_back(std::abs(dio_dilution(phi, 0.0, o).cost_bits_continuous - oracle::analytic_dio_eps0(phi)));
        ck.batch("oracle: DIO at eps=0 vs support size", gaps, tol(2e-6));
    });
    guarded("oracle: d=2 grid search vs MIO program", [&] {
        std::vector<double> gaps;
        EngineOptions o = eo;
        o.with_dual = false;
        for (int k = 0; k < 2; ++k) {
            const PureState phi = random_pure_state(2, rng);
            const double e = eps_dist(rng);
            gaps.push_back(std::abs(oracle::grid_mio_d2(phi, e, 100) - mio_dilution(phi, e, o).cost_bits_continuous));
        }
        ck.batch("oracle: d=2 grid search vs MIO program", gaps, tol(1e-3));
    });
    guarded("channel: closed-form twirl vs permutation sum", [&] {
        std::vector<double> gaps;
        for (std::size_t m = 1; m <= 4; ++m) {
            for (int k = 0; k < 3; ++k) {
                const HermitianMatrix x = random_hermitian(m, rng);
                const HermitianMatrix t = opts.twirl_override ? opts.twirl_override(x) : twirl(x);
                gaps.push_back((t - oracle::permutation_twirl_reference(x)).max_abs());
            }
        }
        ck.batch("channel: closed-form twirl vs permutation sum", gaps, 1e-12);
    });
    guarded("channel: Choi/superoperator equivalences", [&] {
        const EquivalenceSummary s = choi_equivalence_suite(rng, 50, 4);
        int mism = 0;
        for (const auto& t : s.tallies) mism += t.mismatches;
        ck.add("channel: Choi/superoperator equivalences", s.pass(),
               std::to_string(s.trials) + " random maps, " + std::to_string(mism) + " mismatches");
    });

    guarded("engine: duality, monotones, sandwich", [&] {
        std::vector<double> strong;
        std::vector<double> weak;
        std::vector<double> cmax;
        std::vector<double> cmaxd;
        std::vector<double> order;
        int sandwich_fail = 0;
        int cases = 0;
        for (std::size_t d : {2, 3, 4, 6}) {
            const PureState phi = random_pure_state(d, rng);
            const double e = eps_dist(rng);
            const DilutionResult mio = mio_dilution(phi, e, eo);
            EngineOptions o = eo;
            o.with_dual = false;
            const DilutionResult dio = dio_dilution(phi, e, o);
            if (!mio.ok() || !dio.ok() || !mio.dual || mio.dual->status != sdp::Status::optimal) {
                strong.push_back(kNaN);
                continue;
            }
            const double dual_bits = std::log2(mio.dual->value);
            strong.push_back(std::abs(dual_bits - mio.cost_bits_continuous));
            weak.push_back(dual_bits - dio.cost_bits_continuous);
            order.push_back(mio.cost_bits_continuous - dio.cost_bits_continuous);
            cmax.push_back(std::abs(c_max_eps(phi, e, o) - mio.cost_bits_continuous));
            cmaxd.push_back(std::abs(c_max_delta_eps(phi, e, o) - dio.cost_bits_continuous));
            if (!sandwich_bounds_check(phi, e, o).holds) ++sandwich_fail;
            ++cases;
        }
        ck.batch("duality: MIO strong duality", strong, tol(1e-6));
        ck.batch("duality: DIO weak duality (dual - dio)", weak, tol(1e-6));
        ck.batch("engine: MIO cost <= DIO cost", order, tol(1e-6));
        ck.batch("monotones: c_max_eps = MIO cost", cmax, tol(1e-6));
        ck.batch("monotones: c_max_delta_eps = DIO cost", cmaxd, tol(2e-6));
        ck.add("bounds: integer cost sandwich", sandwich_fail == 0 && cases > 0,
               std::to_string(cases) + " cases, " + std::to_string(sandwich_fail) + " failing");
    });

    guarded("channel: dilution channel round trip", [&] {
        int bad = 0;
        int cases = 0;
        double worst = -1.0;
        EngineOptions o = eo;
        o.with_dual = false;
        for (std::size_t d : {3, 5}) {
            const PureState phi = random_pure_state(d, rng);
            const double e = eps_dist(rng);
            for (const DilutionResult& r : {mio_dilution(phi, e, o), dio_dilution(phi, e, o)}) {
                ++cases;
                const ChannelRealization ch = realize_channel(r, o);
                const ChannelVerdict v = verdict(ch.channel, tol(1e-7));
                const PureState psi = maximally_coherent(ch.m);
                const double f = fidelity_pure(phi, apply(ch.channel, HermitianMatrix::projector(psi)));
                const bool member = r.operation_class == OperationClass::MIO ? v.is_mio : v.is_dio;
                worst = std::max(worst, (1.0 - e) - f);
                if (!(v.is_cp && v.is_tp && member && f >= 1.0 - e - tol(1e-7))) ++bad;
            }
        }
        ck.add("channel: dilution channel round trip", bad == 0,
               std::to_string(cases) + " channels, worst fidelity slack " + fmt(worst, 3));
    });
    return ck.lines;
}

int print_self_test(std::ostream& out, const std::vector<SelfTestLine>& lines) {
    bool all = !lines.empty();
    for (const auto& l : lines) {
        out << (l.pass ? "PASS " : "FAIL ") << l.name << ": " << l.detail << '\n';
        all = all && l.pass;
    }
    out << (all ? "selftest: all checks passed" : "selftest: FAILED") << '\n';
    return all ? 0 : 1;
}

}  // namespace cohdil
