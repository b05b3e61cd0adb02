// vlc: scenario runner, property sweeps, fringe tables and the invariant audit.
//
// Exit codes: 0 all residuals within tolerance, 1 residual violation,
// 2 parse or validation error, 3 capacity exceeded, 4 physics-domain error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vlc/audit.hpp"
#include "vlc/fringe.hpp"
#include "vlc/scenario.hpp"

namespace {

enum ExitCode { kPass = 0, kResidual = 1, kInput = 2, kCapacity = 3, kDomain = 4 };

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw vlc::ConfigError(path, "cannot open file");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

vlc::ScenarioConfig load(const std::string& path) {
    try {
        return vlc::parse_scenario(read_file(path));
    } catch (const vlc::ConfigError& e) {
        if (e.where() == path) throw;
        throw vlc::ConfigError(path, e.what());
    }
}

int run_command(const std::string& path, std::optional<int> kappa) {
    const auto result = vlc::run_scenario(load(path), kappa);
    std::cout << result.report.dump(2) << "\n";
    return result.passed ? kPass : kResidual;
}

struct SweepOptions {
    std::uint64_t seed = 0;
    std::size_t count = 0;
    int slits = 2;
    int nmax = 2;
    std::vector<int> orders{1};
    std::optional<int> kappa;
    bool single_mode = false;
};

int sweep_command(const SweepOptions& o) {
    if (o.single_mode && o.slits != 2) throw vlc::ValidationError("--single-mode needs --slits 2");
    for (int n : o.orders) {
        if (n < 1 || n > o.nmax) throw vlc::ValidationError("orders must lie in 1..nmax");
    }
    const int kappa = o.kappa.value_or(o.single_mode ? 2 : 2 * o.slits);
    if (kappa < 2 || kappa > 2 * o.slits) throw vlc::ValidationError("--kappa must lie in 2..2L");

    std::cout << "sample,L,mean_photons,n,kappa,F,S,D,V,g,residual_FS,residual_duality,residual_triality\n";
    double max_fs = 0.0, max_duality = 0.0, max_triality = 0.0;
    for (std::size_t i = 0; i < o.count; ++i) {
        const std::uint64_t s = vlc::derive_seed(o.seed, i);
        const auto state = o.single_mode ? vlc::sample_single_mode_state(s, o.nmax)
                                         : vlc::sample_state(s, 2 * static_cast<std::size_t>(o.slits), o.nmax);
        const auto geometry = vlc::random_geometry(vlc::derive_seed(s, 1), o.slits);
        std::optional<vlc::ComplementarityReport> two_slit;
        if (o.slits == 2) {
            two_slit = vlc::triality_report(state, geometry);
            if (two_slit->residual_duality) max_duality = std::max(max_duality, std::abs(*two_slit->residual_duality));
            if (two_slit->residual_triality) max_triality = std::max(max_triality, std::abs(*two_slit->residual_triality));
        }
        for (int n : o.orders) {
            const auto r = vlc::order_n_complementarity(state, geometry, n, kappa);
            max_fs = std::max(max_fs, std::abs(r.residual_FS));
            std::cout << i << ',' << o.slits << ',' << fmt(r.mean_photons) << ',' << n << ',' << kappa << ','
                      << fmt(r.F) << ',' << fmt(r.S) << ',';
            if (two_slit) {
                std::cout << fmt(two_slit->D) << ',' << fmt(two_slit->V) << ',' << fmt(two_slit->g) << ',';
            } else {
                std::cout << ",,,";
            }
            std::cout << fmt(r.residual_FS) << ',';
            if (two_slit) std::cout << fmt(two_slit->residual_duality) << ',' << fmt(two_slit->residual_triality);
            else std::cout << ',';
            std::cout << '\n';
        }
    }
    std::cout << "max,,,,,,,,,," << fmt(max_fs) << ',' << fmt(max_duality) << ',' << fmt(max_triality) << '\n';
    const bool ok = max_fs <= vlc::kResidualTolerance && max_duality <= vlc::kResidualTolerance &&
                    max_triality <= vlc::kResidualTolerance;
    return ok ? kPass : kResidual;
}

int fringe_command(const std::string& path, int samples) {
    const auto config = load(path);
    const auto curve = vlc::fringe_curve(vlc::build_state(config.state, config.slits),
                                         vlc::build_geometry(config.geometry, config.slits), samples);
    std::cout << "delta,S0,S1,S2,S3\n";
    for (const auto& s : curve.samples) {
        std::cout << fmt(s.delta) << ',' << fmt(s.stokes[0]) << ',' << fmt(s.stokes[1]) << ',' << fmt(s.stokes[2])
                  << ',' << fmt(s.stokes[3]) << '\n';
    }
    std::cout << "visibility," << fmt(curve.visibility[0]) << ',' << fmt(curve.visibility[1]) << ','
              << fmt(curve.visibility[2]) << ',' << fmt(curve.visibility[3]) << '\n';
    return kPass;
}

void print_audit_line(bool passed, const std::string& name, double deviation, double tolerance, std::size_t samples) {
    std::cout << (passed ? "PASS " : "FAIL ") << name << " max_deviation=" << fmt(deviation)
              << " tolerance=" << tolerance << " samples=" << samples << '\n';
}

int audit_command(std::uint64_t seed, std::size_t count, const std::vector<std::string>& configs) {
    bool all = true;
    for (const auto& r : vlc::run_audit(seed, count)) {
        print_audit_line(r.passed, r.name, r.max_deviation, r.tolerance, r.samples);
        all = all && r.passed;
    }
    int worst_error = kPass;
    for (const auto& path : configs) {
        try {
            const auto result = vlc::run_scenario(load(path));
            double deviation = 0.0;
            for (const auto& o : result.report.at("orders")) deviation = std::max(deviation, std::abs(o.at("residual_FS").get<double>()));
            if (result.report.contains("double_slit")) {
                for (const char* key : {"residual_FS", "residual_duality", "residual_triality"}) {
                    const auto& v = result.report.at("double_slit").at(key);
                    if (v.is_number()) deviation = std::max(deviation, std::abs(v.get<double>()));
                }
            }
            print_audit_line(result.passed, "scenario:" + path, deviation, vlc::kResidualTolerance, 1);
            all = all && result.passed;
        } catch (const vlc::CapacityError& e) {
            std::cout << "FAIL scenario:" << path << " capacity: " << e.what() << '\n';
            worst_error = std::max(worst_error, static_cast<int>(kCapacity));
        } catch (const vlc::DomainError& e) {
            std::cout << "FAIL scenario:" << path << " domain: " << e.what() << '\n';
            worst_error = std::max(worst_error, static_cast<int>(kDomain));
        } catch (const vlc::Error& e) {
            std::cout << "FAIL scenario:" << path << " invalid: " << e.what() << '\n';
            worst_error = std::max(worst_error, static_cast<int>(kInput));
        }
    }
    if (worst_error != kPass) return worst_error;
    return all ? kPass : kResidual;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Complementarity engine for quantized vector light in L-slit interference"};
    app.require_subcommand(1);
    app.set_version_flag("--version", vlc::kEngineVersion);

    std::string config_path;
    std::optional<int> kappa;
    auto* run = app.add_subcommand("run", "Evaluate a scenario file and print the JSON report");
    run->add_option("config", config_path, "Scenario file")->required();
    run->add_option("--kappa", kappa, "Mode count used in the purity normalizations (2..2L)");

    SweepOptions sweep_options;
    auto* sweep = app.add_subcommand("sweep", "Random-state property sweep as CSV");
    sweep->add_option("--seed", sweep_options.seed, "Sweep seed")->required();
    sweep->add_option("--count", sweep_options.count, "Number of random samples")->required();
    sweep->add_option("--slits", sweep_options.slits, "Slit count L")->required()->check(CLI::Range(1, 8));
    sweep->add_option("--nmax", sweep_options.nmax, "Largest photon number")->required()->check(CLI::Range(1, 8));
    sweep->add_option("--orders", sweep_options.orders, "Correlation orders, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(1, 8));
    sweep->add_option("--kappa", sweep_options.kappa, "Mode count used in the purity normalizations (2..2L)");
    sweep->add_flag("--single-mode", sweep_options.single_mode, "One populated mode per slit (L = 2)");

    int samples = 64;
    auto* fringe = app.add_subcommand("fringe", "Stokes parameters of the superposed two-slit field as CSV");
    fringe->add_option("config", config_path, "Scenario file")->required();
    fringe->add_option("--samples", samples, "Phase samples over [0, 2 pi)")->check(CLI::Range(1, 1 << 20));

    std::uint64_t audit_seed = 0;
    std::size_t audit_count = 50;
    std::vector<std::string> audit_configs;
    auto* audit = app.add_subcommand("audit", "Run the invariant suite and any scenario files");
    audit->add_option("--seed", audit_seed, "Audit seed");
    audit->add_option("--count", audit_count, "Random samples per invariant");
    audit->add_option("configs", audit_configs, "Scenario files to check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInput;
    }

    try {
        if (*run) return run_command(config_path, kappa);
        if (*sweep) return sweep_command(sweep_options);
        if (*fringe) return fringe_command(config_path, samples);
        if (*audit) return audit_command(audit_seed, audit_count, audit_configs);
    } catch (const vlc::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kCapacity;
    } catch (const vlc::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const vlc::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}
