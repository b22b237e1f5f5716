#ifndef IFRONT_CLI_HPP
#define IFRONT_CLI_HPP

#include <stdexcept>
#include <string>

namespace ifront::cli {

/// Usage-level failure (unknown flag, missing required option, bad value).
/// Maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// --help was requested; text holds the message to print.
struct HelpRequested {
    std::string text;
};

struct RunPlan {
    enum class Cmd { Rates, Front, Scan, Asym, Effdiff, Pde };
    enum class Format { Csv, Json };

    Cmd cmd = Cmd::Rates;
    double d = 0.0, r = 0.0, c = 0.0;
    double y_max = 0.0; // 0 -> default_y_max(c)
    double alpha_tol = 1e-8;

    // scan
    double cmin = 0.0, cmax = 0.0;
    int n = 0;

    // pde
    double L = 100.0;
    int nx = 2001;
    double tend = 60.0;
    double out_dt = 0.5;
    double x0 = 0.0;
    int frames_every = 0;

    bool compare = false; // asym
    std::string out;      // data path; empty -> stdout
    std::string diag;     // diagnostics path; empty -> stdout (front) / derived (pde)
    Format format = Format::Csv;
};

/// Parse argv (and an optional --config file; flags override config values,
/// config values override defaults). Throws UsageError on bad input and
/// HelpRequested for --help.
RunPlan parse(int argc, const char* const* argv);

/// Run the plan. Returns 0 on success, 1 on numerical failure (the failing
/// stage is named on stderr).
int execute(const RunPlan& plan);

/// parse + execute with the documented exit codes (0 ok, 1 numerical, 2 usage).
int main_cli(int argc, const char* const* argv);

} // namespace ifront::cli

#endif
