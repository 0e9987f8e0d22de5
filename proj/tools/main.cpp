// Command-line front end: mana evaluation of a state file, single harvest
// runs, the sweep table, the gap-time optimizer, and the verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 parse error,
// 3 domain-invariant violation, 4 I/O error.

#include <CLI11.hpp>

#include "manasim/harvest.hpp"
#include "manasim/io.hpp"
#include "manasim/phase_space.hpp"
#include "manasim/verify.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitVerifyFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
    double lambda = 0.1;
    double omega = 1.0;
    double sigma_t = 1.0;
    double omega_sigma = 1.0;
    bool omega_sigma_set = false;
    std::string method = "closed";
    int eps_levels = 7;
    double tol = 1e-10;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--lambda", flags.lambda, "Coupling strength")->capture_default_str();
    cmd->add_option("--omega", flags.omega, "Energy gap (both gaps equal)")->capture_default_str();
    cmd->add_option("--sigma-t", flags.sigma_t, "Gaussian switching scale")->capture_default_str();
    cmd->add_option("--omega-sigma", flags.omega_sigma,
                    "Dimensionless product omega * sigma_t; overrides --omega/--sigma-t")
        ->each([&flags](const std::string&) { flags.omega_sigma_set = true; });
    cmd->add_option("--method", flags.method, "closed or quadrature")
        ->check(CLI::IsMember({"closed", "quadrature"}))
        ->capture_default_str();
    cmd->add_option("--eps-levels", flags.eps_levels, "Number of dyadic regulator levels")
        ->check(CLI::Range(3, 16))
        ->capture_default_str();
    cmd->add_option("--tol", flags.tol, "Quadrature absolute tolerance")->capture_default_str();
}

manasim::harvest::HarvestParams to_params(const CommonFlags& flags) {
    manasim::harvest::HarvestParams params;
    if (flags.omega_sigma_set) {
        params = manasim::harvest::HarvestParams::from_omega_sigma(flags.omega_sigma, flags.lambda);
    } else {
        params.lambda = flags.lambda;
        params.omega1 = flags.omega;
        params.omega2 = flags.omega;
        params.sigma_t = flags.sigma_t;
    }
    params.quad.target_abs_tol = flags.tol;
    params.eps = manasim::quadrature::EpsilonSchedule::dyadic(params.sigma_t, 4,
                                                              4 + flags.eps_levels - 1);
    return params;
}

manasim::harvest::Method to_method(const std::string& name) {
    return name == "quadrature" ? manasim::harvest::Method::quadrature
                                : manasim::harvest::Method::closed;
}

int emit(const std::string& output_path, const std::string& content) {
    if (output_path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output path " << output_path << "\n";
        return kExitIo;
    }
    out << content;
    out.flush();
    if (!out) {
        std::cerr << "error: failed writing " << output_path << "\n";
        return kExitIo;
    }
    return 0;
}

int run_mana(const std::string& state_file) {
    const auto rho = manasim::io::load_density_matrix_file(state_file);
    if (rho.min_eigenvalue() < 0.0) {
        std::cerr << "note: smallest eigenvalue " << rho.min_eigenvalue()
                  << " accepted within the positivity floor\n";
    }
    std::printf("%.12f\n", manasim::phase_space::mana(rho));
    return 0;
}

int run_harvest(const CommonFlags& flags, const std::string& output_path) {
    const auto params = to_params(flags);
    const auto result = manasim::harvest::run_pipeline(params, to_method(flags.method));
    if (result.diagnostics.perturbative_warning) {
        std::cerr << "warning: lambda^2 F_q = " << result.q
                  << " is large; second-order truncation is unreliable\n";
    }
    return emit(output_path, manasim::io::harvest_result_to_json(result) + "\n");
}

int run_sweep(const CommonFlags& flags, double x_min, double x_max, int steps,
              const std::string& output_path) {
    const auto rows = manasim::harvest::sweep(x_min, x_max, steps, flags.lambda,
                                              to_method(flags.method));
    std::ostringstream csv;
    manasim::io::write_sweep_csv(csv, rows);
    return emit(output_path, csv.str());
}

int run_optimize(const CommonFlags& flags) {
    const auto result = manasim::harvest::optimize(flags.lambda);
    std::printf("x_star %.9f\n", result.x_star);
    std::printf("mana_star %.12e\n", result.mana_star);
    std::printf("mana_star_per_lambda2 %.12e\n",
                result.mana_star / (flags.lambda * flags.lambda));
    return 0;
}

int run_verify() {
    const auto results = manasim::verify::run_all();
    std::string first_failure;
    for (const auto& res : results) {
        std::printf("[%s] %s — %s (%.2fs)\n", res.passed ? "PASS" : "FAIL", res.name.c_str(),
                    res.detail.c_str(), res.seconds);
        if (!res.passed && first_failure.empty()) first_failure = res.name;
    }
    if (!first_failure.empty()) {
        std::printf("verification failed at: %s\n", first_failure.c_str());
        return kExitVerifyFailure;
    }
    std::printf("all %zu criteria passed\n", results.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-Wigner mana toolkit and vacuum mana-harvesting simulator"};
    app.require_subcommand(1);

    std::string state_file;
    auto* mana_cmd = app.add_subcommand("mana", "Mana of a density-matrix JSON file");
    mana_cmd->add_option("state_file", state_file, "Density-matrix JSON file")->required();

    CommonFlags harvest_flags;
    std::string harvest_output;
    auto* harvest_cmd = app.add_subcommand("harvest", "Single harvesting run (JSON result)");
    add_common_flags(harvest_cmd, harvest_flags);
    harvest_cmd->add_option("--output", harvest_output, "Write JSON here instead of stdout");

    CommonFlags sweep_flags;
    std::string sweep_output;
    double sweep_min = 0.0, sweep_max = 5.0;
    int sweep_steps = 101;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep omega*sigma_t and emit the CSV table");
    add_common_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--min", sweep_min, "Lower end of omega*sigma_t")->capture_default_str();
    sweep_cmd->add_option("--max", sweep_max, "Upper end of omega*sigma_t")->capture_default_str();
    sweep_cmd->add_option("--steps", sweep_steps, "Number of grid points")->capture_default_str();
    sweep_cmd->add_option("--output", sweep_output, "Write CSV here instead of stdout");

    CommonFlags optimize_flags;
    auto* optimize_cmd = app.add_subcommand("optimize", "Maximize harvested mana over omega*sigma_t");
    add_common_flags(optimize_cmd, optimize_flags);

    auto* verify_cmd = app.add_subcommand("verify", "Run the verification suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (mana_cmd->parsed()) return run_mana(state_file);
        if (harvest_cmd->parsed()) return run_harvest(harvest_flags, harvest_output);
        if (sweep_cmd->parsed())
            return run_sweep(sweep_flags, sweep_min, sweep_max, sweep_steps, sweep_output);
        if (optimize_cmd->parsed()) return run_optimize(optimize_flags);
        if (verify_cmd->parsed()) return run_verify();
    } catch (const manasim::io::ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitParse;
    } catch (const std::ios_base::failure& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInvariant;
    } catch (const std::domain_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInvariant;
    }
    return 0;
}
