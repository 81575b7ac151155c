#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohdil/dilution.h"
#include "cohdil/hermitian.h"

namespace cohdil {

/// alpha |Psi_d> + beta |0> with beta = -alpha c + sqrt(alpha^2 (c^2 - 1) + 1), c = 1/sqrt(d).
/// Throws std::invalid_argument unless 0 <= alpha <= 1 and d >= 1.
PureState make_test_state(std::size_t d, double alpha);

enum class Mode { mio, dio, dual, cmax, cmaxd };

std::string to_string(Mode m);
/// Throws std::invalid_argument for unknown names.
Mode parse_mode(const std::string& name);

/// count evenly spaced points covering [0, 1] (count = 1 gives {0}).
std::vector<double> alpha_grid(std::size_t count);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SweepConfig {
    std::size_t d = 8;
    std::vector<double> alphas = alpha_grid(33);
    std::vector<double> epsilons = {0.1, 0.01, 0.001};
    std::set<Mode> modes = {Mode::mio, Mode::dio, Mode::dual};
    EngineOptions options;
    /// 0 selects the hardware concurrency.
    unsigned jobs = 0;
};

/// Throws ConfigError on d < 2, alphas outside [0, 1], epsilons outside [0, 1), or empty lists.
void validate(const SweepConfig& cfg);

struct SweepRow {
    double alpha = 0.0;
    double epsilon = 0.0;
    /// NaN when the mode was not requested or its solve failed.
    double c_mio_bits = 0.0;
    double c_dio_bits = 0.0;
    double dual_bits = 0.0;
    double gap_bits = 0.0;
    double cmax_bits = 0.0;
    double cmaxd_bits = 0.0;
    std::string mio_status = "skipped";
    std::string dio_status = "skipped";
    std::vector<std::string> warnings;
};

/// One row per (alpha, epsilon), ordered by (epsilon, alpha) ascending.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

/// 0 when every requested solve succeeded, 1 otherwise.
int sweep_exit_code(const std::vector<SweepRow>& rows);

/// Header alpha,epsilon,c_mio_bits,c_dio_bits,dual_bits,gap_bits,mio_status,dio_status.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// SVG with one polyline per (mode, epsilon) series for the MIO and DIO costs.
/// Throws std::invalid_argument on empty input.
std::string render_svg(const std::vector<SweepRow>& rows);
void emit_plot(const std::vector<SweepRow>& rows, const std::string& path);

struct SelfTestOptions {
    EngineOptions options;
    /// Replaces the closed-form twirl in the twirl comparison (negative-control hook).
    std::function<HermitianMatrix(const HermitianMatrix&)> twirl_override;
    unsigned long long seed = 20240601;
};

struct SelfTestLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Oracle, Choi-equivalence, duality, monotone-equality and sandwich checks at small scale.
std::vector<SelfTestLine> self_test(const SelfTestOptions& opts = {});
/// Prints "PASS name: detail" / "FAIL name: detail" lines; returns 0 iff all pass.
int print_self_test(std::ostream& out, const std::vector<SelfTestLine>& lines);

}  // namespace cohdil
