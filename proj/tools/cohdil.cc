// Command-line front end: single instances, sweeps, self test and problem/channel dumps.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cohdil/channel.h"
#include "cohdil/dilution.h"
#include "cohdil/experiment.h"
#include "cohdil/sdp.h"

namespace {

using namespace cohdil;

constexpr int kExitOk = 0;
constexpr int kExitSolverFailure = 1;
constexpr int kExitBadConfig = 2;

struct Common {
    std::size_t dim = 8;
    double alpha = 0.5;
    double epsilon = 0.01;
    double tol_feas = 1e-8;
    double tol_gap = 1e-8;
    std::string out;

    EngineOptions engine() const {
        EngineOptions o;
        o.solver.feas_tol = tol_feas;
        o.solver.gap_tol = tol_gap;
        return o;
    }
};

void add_instance_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--dim", c.dim, "Dimension d of the target")->capture_default_str();
    cmd->add_option("--alpha", c.alpha, "Superposition weight of the test state, in [0, 1]")->capture_default_str();
    cmd->add_option("--epsilon", c.epsilon, "Fidelity tolerance, in [0, 1)")->capture_default_str();
}

void add_tolerance_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--tol-feas", c.tol_feas, "Solver feasibility tolerance")->capture_default_str();
    cmd->add_option("--tol-gap", c.tol_gap, "Solver duality-gap tolerance")->capture_default_str();
}

void check_instance(const Common& c) {
    if (c.dim < 2) throw ConfigError("--dim must be at least 2");
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0)) throw ConfigError("--alpha must lie in [0, 1]");
    if (!(c.epsilon >= 0.0 && c.epsilon < 1.0)) throw ConfigError("--epsilon must lie in [0, 1)");
    if (!(c.tol_feas > 0.0) || !(c.tol_gap > 0.0)) throw ConfigError("tolerances must be positive");
}

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ConfigError("cannot open " + path + " for writing");
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void print_result(std::ostream& out, const std::string& prefix, const DilutionResult& r) {
    out << prefix << ".status=" << sdp::to_string(r.status) << '\n';
    if (r.ok()) {
        out << prefix << ".value=" << r.value << '\n';
        out << prefix << ".cost_bits=" << r.cost_bits_continuous << '\n';
        out << prefix << ".cost_bits_integer=" << r.cost_bits_integer << '\n';
    }
    out << prefix << ".solves=" << r.solves << '\n';
    for (const auto& w : r.warnings) out << prefix << ".warning=" << w << '\n';
}

int run_dilute(const Common& c, const std::vector<std::string>& mode_names) {
    check_instance(c);
    std::vector<Mode> modes;
    for (const auto& n : mode_names) modes.push_back(parse_mode(n));
    if (modes.empty()) modes = {Mode::mio, Mode::dio, Mode::dual, Mode::cmax, Mode::cmaxd};
    const PureState phi = make_test_state(c.dim, c.alpha);
    EngineOptions o = c.engine();
    o.with_dual = false;
    Output sink(c.out);
    std::ostream& out = sink.stream();
    out << std::setprecision(12);
    out << "dim=" << c.dim << "\nalpha=" << c.alpha << "\nepsilon=" << c.epsilon << '\n';
    int code = kExitOk;
    for (Mode m : modes) {
        try {
            switch (m) {
                case Mode::mio: {
                    const DilutionResult r = mio_dilution(phi, c.epsilon, o);
                    print_result(out, "mio", r);
                    if (!r.ok()) code = kExitSolverFailure;
                    break;
                }
                case Mode::dio: {
                    const DilutionResult r = dio_dilution(phi, c.epsilon, o);
                    print_result(out, "dio", r);
                    if (!r.ok()) code = kExitSolverFailure;
                    break;
                }
                case Mode::dual: {
                    const DualCertificate d = dual_program(phi, c.epsilon, o);
                    out << "dual.status=" << sdp::to_string(d.status) << '\n';
                    if (d.status == sdp::Status::optimal) {
                        out << "dual.a=" << d.a << "\ndual.b=" << d.b << "\ndual.value=" << d.value
                            << "\ndual.bits=" << std::log2(d.value) << "\ndual.attained=" << d.attained << '\n';
                    } else {
                        code = kExitSolverFailure;
                    }
                    break;
                }
                case Mode::cmax: out << "cmax.bits=" << c_max_eps(phi, c.epsilon, o) << '\n'; break;
                case Mode::cmaxd: out << "cmaxd.bits=" << c_max_delta_eps(phi, c.epsilon, o) << '\n'; break;
            }
        } catch (const SolverError& e) {
            out << to_string(m) << ".status=" << sdp::to_string(e.status()) << '\n';
            code = kExitSolverFailure;
        }
    }
    return code;
}

int run_sweep_cmd(const Common& c, std::size_t points, const std::vector<double>& alphas,
                  const std::vector<double>& eps, const std::vector<std::string>& mode_names, unsigned jobs,
                  const std::string& plot) {
    SweepConfig cfg;
    cfg.d = c.dim;
    cfg.alphas = alphas.empty() ? alpha_grid(points) : alphas;
    if (!eps.empty()) cfg.epsilons = eps;
    if (!mode_names.empty()) {
        cfg.modes.clear();
        for (const auto& n : mode_names) cfg.modes.insert(parse_mode(n));
    }
    if (points == 0 && alphas.empty()) throw ConfigError("--points must be positive");
    cfg.options = c.engine();
    cfg.jobs = jobs;
    validate(cfg);
    Output sink(c.out);
    const std::vector<SweepRow> rows = run_sweep(cfg);
    write_csv(sink.stream(), rows);
    if (!plot.empty()) emit_plot(rows, plot);
    for (const auto& r : rows) {
        for (const auto& w : r.warnings) std::cerr << "alpha=" << r.alpha << " eps=" << r.epsilon << ": " << w << '\n';
    }
    return sweep_exit_code(rows);
}

int run_selftest(const Common& c, bool broken_twirl) {
    if (!(c.tol_feas > 0.0) || !(c.tol_gap > 0.0)) throw ConfigError("tolerances must be positive");
    SelfTestOptions so;
    so.options = c.engine();
    if (broken_twirl) {
        // Negative control: drops the (I - Psi)/(m - 1) component.
        so.twirl_override = [](const HermitianMatrix& x) {
            const HermitianMatrix psi = HermitianMatrix::projector(maximally_coherent(x.dim()));
            return psi * inner(psi, x);
        };
    }
    Output sink(c.out);
    return print_self_test(sink.stream(), self_test(so));
}

int run_dump_channel(const Common& c, const std::string& mode) {
    check_instance(c);
    const PureState phi = make_test_state(c.dim, c.alpha);
    EngineOptions o = c.engine();
    o.with_dual = false;
    const Mode m = parse_mode(mode);
    if (m != Mode::mio && m != Mode::dio) throw ConfigError("dump-channel supports --mode mio or dio");
    const DilutionResult r = m == Mode::mio ? mio_dilution(phi, c.epsilon, o) : dio_dilution(phi, c.epsilon, o);
    if (!r.ok()) {
        std::cerr << "solver status " << sdp::to_string(r.status) << '\n';
        return kExitSolverFailure;
    }
    const ChannelRealization ch = realize_channel(r, o);
    Output sink(c.out);
    write_choi(sink.stream(), ch.channel);
    return kExitOk;
}

int run_dump_sdp(const Common& c, const std::string& mode, double m_value) {
    check_instance(c);
    const PureState phi = make_test_state(c.dim, c.alpha);
    const Mode m = parse_mode(mode);
    Output sink(c.out);
    switch (m) {
        case Mode::mio:
        case Mode::cmax: sdp::dump(sink.stream(), mio_problem(phi, c.epsilon)); break;
        case Mode::dio:
        case Mode::cmaxd: {
            const double mm = m_value > 0.0 ? m_value : static_cast<double>(c.dim);
            if (mm < 1.0) throw ConfigError("--m must be at least 1");
            sdp::dump(sink.stream(), dio_margin_problem(phi, c.epsilon, mm));
            break;
        }
        case Mode::dual: sdp::dump(sink.stream(), dual_problem(phi, c.epsilon)); break;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-shot coherence dilution of pure states under MIO and DIO"};
    app.require_subcommand(1);

    Common c;
    std::vector<std::string> modes;
    std::string single_mode = "mio";

    auto* dilute = app.add_subcommand("dilute", "Solve a single test-state instance");
    add_instance_flags(dilute, c);
    add_tolerance_flags(dilute, c);
    dilute->add_option("--mode", modes, "Programs to run: mio, dio, dual, cmax, cmaxd (default: all)");
    dilute->add_option("--out", c.out, "Output file (default: stdout)");

    std::size_t points = 33;
    std::vector<double> alphas;
    std::vector<double> eps;
    unsigned jobs = 0;
    std::string plot;
    auto* sweep = app.add_subcommand("sweep", "Sweep alpha and epsilon, write CSV");
    sweep->add_option("--dim", c.dim, "Dimension d")->capture_default_str();
    sweep->add_option("--points", points, "Number of evenly spaced alpha values")->capture_default_str();
    sweep->add_option("--alpha", alphas, "Explicit alpha values (overrides --points)");
    sweep->add_option("--epsilon", eps, "Epsilon values (default: 0.1 0.01 0.001)");
    sweep->add_option("--mode", modes, "Programs to run (default: mio dio dual)");
    sweep->add_option("--jobs", jobs, "Worker threads (default: hardware concurrency)");
    sweep->add_option("--out", c.out, "CSV output file (default: stdout)");
    sweep->add_option("--plot", plot, "SVG output file");
    add_tolerance_flags(sweep, c);

    bool broken_twirl = false;
    auto* selftest = app.add_subcommand("selftest", "Run the built-in consistency checks");
    add_tolerance_flags(selftest, c);
    selftest->add_option("--out", c.out, "Report file (default: stdout)");
    selftest->add_flag("--inject-broken-twirl", broken_twirl, "Negative control: replace the twirl with a wrong map");

    auto* dump_channel = app.add_subcommand("dump-channel", "Write the Choi matrix of the optimal dilution channel");
    add_instance_flags(dump_channel, c);
    add_tolerance_flags(dump_channel, c);
    dump_channel->add_option("--mode", single_mode, "mio or dio")->capture_default_str();
    dump_channel->add_option("--out", c.out, "Output file (default: stdout)");

    double m_value = 0.0;
    auto* dump_sdp = app.add_subcommand("dump-sdp", "Write a program instance in text form");
    add_instance_flags(dump_sdp, c);
    dump_sdp->add_option("--mode", single_mode, "mio, dio or dual")->capture_default_str();
    dump_sdp->add_option("--m", m_value, "Dimension m of the DIO feasibility problem (default: d)");
    dump_sdp->add_option("--out", c.out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    try {
        if (*dilute) return run_dilute(c, modes);
        if (*sweep) return run_sweep_cmd(c, points, alphas, eps, modes, jobs, plot);
        if (*selftest) return run_selftest(c, broken_twirl);
        if (*dump_channel) return run_dump_channel(c, single_mode);
        if (*dump_sdp) return run_dump_sdp(c, single_mode, m_value);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolverFailure;
    }
    return kExitBadConfig;
}
