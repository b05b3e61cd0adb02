// Acceptance suite: one PASS/FAIL line per criterion.
// usage: vlc_acceptance <path-to-vlc-cli> <source-dir>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "vlc/complementarity.hpp"
#include "vlc/fringe.hpp"

using namespace vlc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double relative(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    const double diff = std::abs(a - b);
    return diff <= 1e-15 ? 0.0 : diff / scale;
}

std::string g_cli;
fs::path g_root;

struct Command {
    int status = -1;
    std::string output;
};

Command shell(const std::string& command) {
    Command out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.output.append(buf.data(), n);
    const int raw = pclose(pipe);
    out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

// 1
Outcome bridge_identity() {
    double worst = 0.0;
    std::size_t compared = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const std::size_t modes = i % 2 == 0 ? 2 : 4;
        const auto state = fixtures::sample_state(1000 + i, modes, 3);
        for (int n = 1; n <= 2; ++n) {
            if (!(state.factorial_moment(n) > 0.0)) continue;
            worst = std::max(worst, max_abs_difference(reduced_density_matrix(state, n).matrix,
                                                       reduced_density_matrix_oracle(state, n).matrix));
            ++compared;
        }
    }
    return {worst < 1e-11, "200 states, " + std::to_string(compared) + " matrices, max |diff| " + sci(worst)};
}

// 2
Outcome purity_equality() {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const int slits = 1 + static_cast<int>(i % 3);
        const auto state = fixtures::sample_state(2000 + i, 2 * static_cast<std::size_t>(slits), slits == 3 ? 2 : 3);
        const auto geometry = random_geometry(2500 + i, slits);
        for (int n = 1; n <= 2; ++n) {
            if (!(state.factorial_moment(n) > 0.0)) continue;
            const ComplexMatrix G = field_density_matrix(state, geometry, n).matrix;
            const ComplexMatrix rho = reduced_density_matrix(state, n).matrix;
            const ComplexMatrix Gt = G / G.trace();
            const ComplexMatrix rt = rho / rho.trace();
            worst = std::max(worst, std::abs(Gt.squaredNorm() - (rt * rt).trace().real()));
        }
    }
    return {worst < 1e-11, "200 states, max |diff| " + sci(worst)};
}

// 3
Outcome first_order_complementarity() {
    double worst = 0.0;
    std::size_t checks = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const int slits = 1 + static_cast<int>(i % 3);
        const auto state = fixtures::sample_state(3000 + i, 2 * static_cast<std::size_t>(slits), slits == 3 ? 2 : 3);
        if (!(state.factorial_moment(1) > 0.0)) continue;
        const auto geometry = random_geometry(3500 + i, slits);
        for (int kappa = 2; kappa <= 2 * slits; ++kappa) {
            worst = std::max(worst, std::abs(order_n_complementarity(state, geometry, 1, kappa).residual_FS));
            ++checks;
        }
    }
    return {worst < 1e-10, "500 states, " + std::to_string(checks) + " (state, kappa) pairs, max |residual| " + sci(worst)};
}

// 4
Outcome duality_equality() {
    double worst = 0.0;
    bool applicable = true;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto state = fixtures::sample_double_slit_state(4000 + i, 3);
        const auto r = triality_report(state, random_geometry(4500 + i, 2), 2);
        applicable = applicable && r.residual_duality.has_value();
        const double d = *r.D, v = *r.V;
        worst = std::max(worst, std::abs(r.F - d * d - v * v));
    }
    return {applicable && worst < 1e-10, "200 states, max |F - D^2 - V^2| " + sci(worst)};
}

// 5
Outcome triality_identity() {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto state = fixtures::sample_double_slit_state(5000 + i, 3);
        const auto r = triality_report(state, random_geometry(5500 + i, 2), 2);
        const double d = *r.D, v = *r.V;
        worst = std::max(worst, std::abs(d * d + v * v + r.S - 1.0));
    }

    auto photon = [](std::size_t mode) {
        std::vector<int> c(4, 0);
        c[mode] = 1;
        return OccupationVector(c);
    };
    double worst_limit = 0.0;
    std::size_t triggered = 0, constructed = 0;
    auto limit = [&](const MultiphotonState& state, const FieldGeometry& g, int which) {
        ++constructed;
        const auto r = triality_report(state, g, 2);
        const double d = *r.D, v = *r.V;
        const double n1 = r.slit_photons[0], n2 = r.slit_photons[1];
        bool trigger = false;
        double residual = 0.0;
        if (which == 0) {
            trigger = r.g && std::abs(*r.g - 1.0) <= 1e-8;
            residual = d * d + v * v - 1.0;
        } else if (which == 1) {
            trigger = r.g && std::abs(*r.g) <= 1e-8;
            residual = d * d + r.S - 1.0;
        } else {
            trigger = std::abs(n1 - n2) <= 1e-8 * (n1 + n2);
            residual = v * v + r.S - 1.0;
        }
        if (!trigger) return;
        ++triggered;
        worst_limit = std::max(worst_limit, std::abs(residual));
    };
    for (std::uint64_t i = 0; i < 50; ++i) {
        std::mt19937_64 rng(5900 + i);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const auto g = random_geometry(5950 + i, 2);
        const std::size_t x = i % 2, y = 2 + (i / 2) % 2;
        const double theta = 0.05 + 1.4 * unit(rng), phi = 6.28 * unit(rng);
        limit(pure_state(4, 1, {{photon(x), std::cos(theta)}, {photon(y), std::polar(std::sin(theta), phi)}}), g, 0);
        const double w = 0.05 + 0.9 * unit(rng);
        limit(mix({{w, fixtures::single_photon(4, x)}, {1.0 - w, fixtures::single_photon(4, y)}}), g, 1);
        const double c = 0.05 + 0.9 * unit(rng);
        const auto even = pure_state(4, 1, {{photon(x), std::sqrt(0.5)}, {photon(y), std::polar(std::sqrt(0.5), phi)}});
        const auto flat = mix({{0.5, fixtures::single_photon(4, x)}, {0.5, fixtures::single_photon(4, y)}});
        limit(mix({{c, even}, {1.0 - c, flat}}), g, 2);
    }
    const bool ok = worst < 1e-10 && worst_limit <= 1e-8 && triggered == constructed;
    return {ok, "200 states, max |residual| " + sci(worst) + "; limiting dualities " + std::to_string(triggered) + "/" +
                    std::to_string(constructed) + " triggered, max |residual| " + sci(worst_limit)};
}

// 6
Outcome higher_order_complementarity() {
    const auto start = std::chrono::steady_clock::now();
    std::array<double, 3> worst{};
    std::array<std::size_t, 3> counts{};
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto state = fixtures::sample_state(6000 + i, 4, 3);
        const auto geometry = random_geometry(6500 + i, 2);
        for (int n = 1; n <= 3; ++n) {
            if (!(state.factorial_moment(n) > 0.0)) continue;
            for (int kappa = 2; kappa <= 4; ++kappa) {
                const auto r = order_n_complementarity(state, geometry, n, kappa);
                worst[n - 1] = std::max(worst[n - 1], std::abs(r.residual_FS));
                ++counts[n - 1];
            }
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = worst[0] < 1e-10 && worst[1] < 1e-10 && worst[2] < 1e-10 && counts[2] > 0;
    return {ok, "max |residual| n=1 " + sci(worst[0]) + " (" + std::to_string(counts[0]) + "), n=2 " + sci(worst[1]) +
                    " (" + std::to_string(counts[1]) + "), n=3 " + sci(worst[2]) + " (" + std::to_string(counts[2]) +
                    "), " + sci(seconds) + " s"};
}

// 7
Outcome worked_examples() {
    std::vector<std::string> failures;
    const Complex c1(0.3, 0.4), c2(-0.5, 0.1), c3(0.2, -0.35);
    const double norm = std::sqrt(std::norm(c1) + std::norm(c2) + std::norm(c3));
    const Complex a = c1 / norm, b = c2 / norm, c = c3 / norm;
    // <a_j^dag a_i> for |Psi> = C1|20> + C2|02> + C3|11>, worked by hand.
    Eigen::Matrix2cd expected;
    expected(0, 0) = 2.0 * std::norm(a) + std::norm(c);
    expected(1, 1) = 2.0 * std::norm(b) + std::norm(c);
    expected(0, 1) = std::sqrt(2.0) * (a * std::conj(c) + c * std::conj(b));
    expected(1, 0) = std::conj(expected(0, 1));
    // Particle picture: psi(xx) = C1, psi(yy) = C2, psi(xy) = psi(yx) = C3/sqrt2; rho(i1 i2, j1 j2) = 2 psi psi*.
    std::array<std::array<Complex, 2>, 2> psi{{{a, c / std::sqrt(2.0)}, {c / std::sqrt(2.0), b}}};
    Eigen::Matrix2cd traced = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) traced(i, j) += 2.0 * psi[i][k] * std::conj(psi[j][k]);
        }
    }
    const auto state = two_photon_example(c1, c2, c3);
    const double second = max_abs_difference(reduced_density_matrix(state, 1).matrix, expected);
    const double first = max_abs_difference(reduced_density_matrix_oracle(state, 1).matrix, expected);
    const double hand = max_abs_difference(traced, expected);
    if (second > 1e-12 || first > 1e-12 || hand > 1e-12) failures.push_back("two-photon reduced matrix");

    const double s = 1.0 / std::sqrt(3.0);
    const double f = field_purity(field_density_matrix(two_photon_example(s, s, s), FieldGeometry::standard(1), 1), 2);
    if (std::abs(f - 8.0 / 9.0) > 1e-12) failures.push_back("equal-amplitude F = 8/9");

    const auto orthogonal = fixtures::even_superposition(4, 0, 3, Complex(0, 1));
    const auto g = random_geometry(7, 2);
    const double v = total_visibility(orthogonal, g).value;
    const auto curve = fringe_curve(orthogonal, FieldGeometry::standard(2), 64);
    if (std::abs(v - 1.0) > 1e-12) failures.push_back("orthogonal superposition V = 1");
    if (std::abs(curve.visibility[0]) > 1e-12) failures.push_back("orthogonal superposition S0 visibility 0");
    const double polar = std::max({curve.visibility[1], curve.visibility[2], curve.visibility[3]});
    if (std::abs(polar - 1.0) > 1e-12) failures.push_back("orthogonal superposition polarization fringes");

    const double d = distinguishability(fixtures::single_photon(4, 1));
    if (d != 1.0) failures.push_back("one-slit D = 1");

    std::string detail = "reduced matrix |diff| second " + sci(second) + ", first " + sci(first) + ", V " + sci(v) +
                         ", S0 vis " + sci(curve.visibility[0]) + ", D " + sci(d);
    for (const auto& f_name : failures) detail += "; failed: " + f_name;
    return {failures.empty(), detail};
}

// 8
Outcome gauge_invariance() {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto state = fixtures::sample_double_slit_state(8000 + i, 3);
        const auto geometry = random_geometry(8100 + i, 2);
        std::mt19937_64 rng(8200 + i);
        const double scale = std::sqrt(0.1 + 9.9 * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
        const auto moved = redraw_phases(geometry, 8300 + i).with_amplitude(geometry.amplitude() * scale);
        const auto a = triality_report(state, geometry, 2);
        const auto b = triality_report(state, moved, 2);
        worst = std::max({worst, relative(*a.D, *b.D), relative(*a.V, *b.V)});
        if (a.g.has_value() != b.g.has_value()) worst = 1.0;
        if (a.g && b.g) worst = std::max(worst, relative(*a.g, *b.g));
        for (int n = 1; n <= 3; ++n) {
            if (!(state.factorial_moment(n) > 0.0)) continue;
            const auto x = order_n_complementarity(state, geometry, n, 2);
            const auto y = order_n_complementarity(state, moved, n, 2);
            worst = std::max({worst, relative(x.F, y.F), relative(x.S, y.S)});
        }
    }
    return {worst <= 1e-12, "50 trials, max relative change " + sci(worst)};
}

// 9
Outcome cli_contract() {
    std::vector<std::string> failures;
    std::string corpus;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(g_root / "corpus")) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) corpus += " " + quote(f);
    const Command audit = shell(quote(g_cli) + " audit --seed 1 --count 50" + corpus + " 2>&1");
    if (audit.status != 0 || files.empty()) failures.push_back("audit exit " + std::to_string(audit.status));

    const std::string sweep = quote(g_cli) + " sweep --seed 7 --count 100 --slits 2 --nmax 2 --orders 1";
    const Command first = shell(sweep);
    const Command second = shell(sweep);
    if (first.status != 0 || first.output.empty() || first.output != second.output) {
        failures.push_back("sweep not byte-deterministic");
    }
    const Command empty = shell(quote(g_cli) + " sweep --seed 7 --count 0 --slits 2 --nmax 2 --orders 1");
    if (empty.status != 0 || empty.output.find("max,,,,,,,,,,0,0,0\n") == std::string::npos) {
        failures.push_back("empty sweep summary");
    }

    const std::vector<std::pair<std::string, std::string>> malformed{
        {"missing_slits.json", "/slits: missing required field 'slits'"},
        {"syntax_error.json", "line 4, column"},
        {"bad_occupation.json", "/state/amplitudes/0/occupation"},
        {"unknown_kind.json", "/state/kind"},
        {"wrong_version.json", "/format"},
        {"unknown_field.json", "/slit: unknown field"}};
    std::size_t rejected = 0;
    for (const auto& [name, message] : malformed) {
        const Command c = shell(quote(g_cli) + " run " + quote(g_root / "tests/data/malformed" / name) + " 2>&1");
        if (c.status == 2 && c.output.find(message) != std::string::npos) {
            ++rejected;
        } else {
            failures.push_back(name + " exit " + std::to_string(c.status));
        }
    }
    std::string detail = "audit exit " + std::to_string(audit.status) + " on " + std::to_string(files.size()) +
                         " scenarios, sweep deterministic " + (first.output == second.output ? "yes" : "no") +
                         ", malformed rejected " + std::to_string(rejected) + "/" + std::to_string(malformed.size());
    for (const auto& f : failures) detail += "; failed: " + f;
    return {failures.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: vlc_acceptance <vlc-cli> <source-dir>\n";
        return 2;
    }
    g_cli = argv[1];
    g_root = argv[2];

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"bridge identity, second- vs first-quantized reduction", bridge_identity},
        {"purity equality of field and particle matrices", purity_equality},
        {"first-order field-particle complementarity", first_order_complementarity},
        {"duality equality F = D^2 + V^2", duality_equality},
        {"triality identity and limiting dualities", triality_identity},
        {"higher-order complementarity n = 1, 2, 3", higher_order_complementarity},
        {"regression examples", worked_examples},
        {"gauge invariance", gauge_invariance},
        {"CLI contract", cli_contract}};

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.passed) ++failed;
        std::cout << (outcome.passed ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ["
                  << outcome.detail << "]" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
