#pragma once

// Scenario configuration files and report documents.
//
// Both are JSON with a "format" header carrying the schema version. The
// scenario reader is strict: unknown keys, wrong types and out-of-range values
// are all rejected with the JSON pointer of the offending field. Schemas live
// in schema/ at the repository root.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "vlc/complementarity.hpp"

namespace vlc {

inline constexpr const char* kScenarioFormat = "vlc-scenario/1";
inline constexpr const char* kReportFormat = "vlc-report/1";
inline constexpr const char* kEngineVersion = "1.0.0";

/// Malformed scenario text. `where` is a JSON pointer or "line L, column C".
class ConfigError : public Error {
public:
    ConfigError(std::string where, const std::string& message)
        : Error(where + ": " + message), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

struct AmplitudeEntry {
    std::vector<int> occupation;
    Complex amplitude;
    friend bool operator==(const AmplitudeEntry&, const AmplitudeEntry&) = default;
};

struct PureSpec {
    int photons = 0;
    std::vector<AmplitudeEntry> amplitudes;
    friend bool operator==(const PureSpec&, const PureSpec&) = default;
};

struct TwoPhotonSpec {
    Complex c1, c2, c3;
    std::vector<std::size_t> modes{0, 1};
    friend bool operator==(const TwoPhotonSpec&, const TwoPhotonSpec&) = default;
};

struct RandomSpec {
    std::uint64_t seed = 0;
    std::vector<int> photons;
    std::vector<double> weights;
    int rank = 1;
    std::vector<std::size_t> modes;  // empty: all 2L modes
    friend bool operator==(const RandomSpec&, const RandomSpec&) = default;
};

struct MixComponent;

struct MixSpec {
    std::vector<MixComponent> components;
    friend bool operator==(const MixSpec&, const MixSpec&);
};

struct StateSpec {
    std::variant<PureSpec, MixSpec, TwoPhotonSpec, RandomSpec> value;
    friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

struct MixComponent {
    double weight = 0.0;
    StateSpec state;
    friend bool operator==(const MixComponent&, const MixComponent&) = default;
};

inline bool operator==(const MixSpec& a, const MixSpec& b) { return a.components == b.components; }

struct GeometrySpec {
    std::optional<Complex> amplitude;
    std::optional<std::array<double, 3>> wave_vector;
    std::optional<double> angular_frequency;
    std::optional<std::vector<std::array<double, 3>>> positions;
    std::optional<std::vector<double>> times;
    std::optional<std::vector<std::array<std::array<Complex, 3>, 2>>> polarizations;
    friend bool operator==(const GeometrySpec&, const GeometrySpec&) = default;
};

struct ScenarioConfig {
    int slits = 1;
    StateSpec state;
    std::optional<GeometrySpec> geometry;
    std::vector<int> orders{1};
    std::optional<int> kappa;
    std::string output = "json";
    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

namespace detail {

using nlohmann::json;

class Reader {
public:
    static void require_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
        if (!j.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
        for (const auto& [key, value] : j.items()) {
            bool known = false;
            for (const char* a : allowed) known = known || key == a;
            if (!known) throw ConfigError(path + "/" + key, "unknown field");
        }
    }

    static const json& field(const json& j, const std::string& path, const char* key) {
        if (!j.contains(key)) throw ConfigError(path + "/" + key, "missing required field '" + std::string(key) + "'");
        return j.at(key);
    }

    static std::int64_t integer(const json& j, const std::string& path, std::int64_t lo, std::int64_t hi) {
        if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
        const auto v = j.get<std::int64_t>();
        if (v < lo || v > hi) {
            throw ConfigError(path, "value " + std::to_string(v) + " outside " + std::to_string(lo) + ".." +
                                        std::to_string(hi));
        }
        return v;
    }

    static std::uint64_t unsigned_integer(const json& j, const std::string& path) {
        if (!j.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
        return j.get<std::uint64_t>();
    }

    static double number(const json& j, const std::string& path) {
        if (!j.is_number()) throw ConfigError(path, "expected a number");
        const double v = j.get<double>();
        if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
        return v;
    }

    /// A complex number: either a real number or [re, im].
    static Complex complex(const json& j, const std::string& path) {
        if (j.is_number()) return number(j, path);
        if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected a number or [re, im]");
        return {number(j[0], path + "/0"), number(j[1], path + "/1")};
    }

    static const json& array(const json& j, const std::string& path) {
        if (!j.is_array()) throw ConfigError(path, "expected an array");
        return j;
    }

    static std::array<double, 3> vector3(const json& j, const std::string& path) {
        if (!j.is_array() || j.size() != 3) throw ConfigError(path, "expected an array of 3 numbers");
        return {number(j[0], path + "/0"), number(j[1], path + "/1"), number(j[2], path + "/2")};
    }

    static std::vector<std::size_t> modes(const json& j, const std::string& path, int slits) {
        std::vector<std::size_t> out;
        const auto& a = array(j, path);
        for (std::size_t i = 0; i < a.size(); ++i) {
            out.push_back(static_cast<std::size_t>(integer(a[i], path + "/" + std::to_string(i), 0, 2 * slits - 1)));
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (std::size_t k = 0; k < i; ++k) {
                if (out[i] == out[k]) throw ConfigError(path + "/" + std::to_string(i), "duplicate mode");
            }
        }
        return out;
    }

    static StateSpec state(const json& j, const std::string& path, int slits) {
        if (!j.is_object()) throw ConfigError(path, "expected an object");
        const json& kind_json = field(j, path, "kind");
        if (!kind_json.is_string()) throw ConfigError(path + "/kind", "expected a string");
        const std::string kind = kind_json.get<std::string>();
        const auto modes_count = 2 * slits;
        if (kind == "pure") {
            require_object(j, path, {"kind", "photons", "amplitudes"});
            PureSpec spec;
            spec.photons = static_cast<int>(integer(field(j, path, "photons"), path + "/photons", 0, 64));
            const auto& amps = array(field(j, path, "amplitudes"), path + "/amplitudes");
            if (amps.empty()) throw ConfigError(path + "/amplitudes", "needs at least one entry");
            for (std::size_t i = 0; i < amps.size(); ++i) {
                const std::string p = path + "/amplitudes/" + std::to_string(i);
                require_object(amps[i], p, {"occupation", "amplitude"});
                AmplitudeEntry entry;
                const auto& occ = array(field(amps[i], p, "occupation"), p + "/occupation");
                if (occ.size() != static_cast<std::size_t>(modes_count)) {
                    throw ConfigError(p + "/occupation", "expected " + std::to_string(modes_count) +
                                                             " counts (two modes per slit)");
                }
                int total = 0;
                for (std::size_t k = 0; k < occ.size(); ++k) {
                    entry.occupation.push_back(
                        static_cast<int>(integer(occ[k], p + "/occupation/" + std::to_string(k), 0, 64)));
                    total += entry.occupation.back();
                }
                if (total != spec.photons) {
                    throw ConfigError(p + "/occupation", "counts sum to " + std::to_string(total) + ", expected " +
                                                             std::to_string(spec.photons));
                }
                entry.amplitude = complex(field(amps[i], p, "amplitude"), p + "/amplitude");
                spec.amplitudes.push_back(std::move(entry));
            }
            return {spec};
        }
        if (kind == "mix") {
            require_object(j, path, {"kind", "components"});
            MixSpec spec;
            const auto& parts = array(field(j, path, "components"), path + "/components");
            if (parts.empty()) throw ConfigError(path + "/components", "needs at least one component");
            double total = 0.0;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                const std::string p = path + "/components/" + std::to_string(i);
                require_object(parts[i], p, {"weight", "state"});
                MixComponent c;
                c.weight = number(field(parts[i], p, "weight"), p + "/weight");
                if (c.weight < 0.0) throw ConfigError(p + "/weight", "weight must be non-negative");
                total += c.weight;
                c.state = state(field(parts[i], p, "state"), p + "/state", slits);
                spec.components.push_back(std::move(c));
            }
            if (!(total > 0.0)) throw ConfigError(path + "/components", "weights are all zero");
            return {spec};
        }
        if (kind == "two_photon_example") {
            require_object(j, path, {"kind", "c1", "c2", "c3", "modes"});
            TwoPhotonSpec spec;
            spec.c1 = complex(field(j, path, "c1"), path + "/c1");
            spec.c2 = complex(field(j, path, "c2"), path + "/c2");
            spec.c3 = complex(field(j, path, "c3"), path + "/c3");
            if (j.contains("modes")) {
                spec.modes = modes(j.at("modes"), path + "/modes", slits);
                if (spec.modes.size() != 2) throw ConfigError(path + "/modes", "expected two modes [x, y]");
            }
            return {spec};
        }
        if (kind == "random") {
            require_object(j, path, {"kind", "seed", "photons", "weights", "rank", "modes"});
            RandomSpec spec;
            spec.seed = unsigned_integer(field(j, path, "seed"), path + "/seed");
            const auto& ph = array(field(j, path, "photons"), path + "/photons");
            if (ph.empty()) throw ConfigError(path + "/photons", "needs at least one photon number");
            for (std::size_t i = 0; i < ph.size(); ++i) {
                spec.photons.push_back(static_cast<int>(integer(ph[i], path + "/photons/" + std::to_string(i), 0, 64)));
            }
            if (j.contains("weights")) {
                const auto& w = array(j.at("weights"), path + "/weights");
                if (w.size() != spec.photons.size()) {
                    throw ConfigError(path + "/weights", "expected one weight per photon number");
                }
                for (std::size_t i = 0; i < w.size(); ++i) {
                    spec.weights.push_back(number(w[i], path + "/weights/" + std::to_string(i)));
                    if (spec.weights.back() < 0.0) {
                        throw ConfigError(path + "/weights/" + std::to_string(i), "weight must be non-negative");
                    }
                }
            }
            if (j.contains("rank")) spec.rank = static_cast<int>(integer(j.at("rank"), path + "/rank", 1, 64));
            if (j.contains("modes")) {
                spec.modes = modes(j.at("modes"), path + "/modes", slits);
                if (spec.modes.empty()) throw ConfigError(path + "/modes", "needs at least one mode");
            }
            return {spec};
        }
        throw ConfigError(path + "/kind", "unknown state kind '" + kind +
                                              "' (expected pure, mix, two_photon_example or random)");
    }

    static GeometrySpec geometry(const json& j, const std::string& path, int slits) {
        require_object(j, path,
                       {"amplitude", "wave_vector", "angular_frequency", "positions", "times", "polarizations"});
        GeometrySpec g;
        const auto n = static_cast<std::size_t>(slits);
        if (j.contains("amplitude")) g.amplitude = complex(j.at("amplitude"), path + "/amplitude");
        if (j.contains("wave_vector")) g.wave_vector = vector3(j.at("wave_vector"), path + "/wave_vector");
        if (j.contains("angular_frequency")) {
            g.angular_frequency = number(j.at("angular_frequency"), path + "/angular_frequency");
        }
        if (j.contains("positions")) {
            const auto& a = array(j.at("positions"), path + "/positions");
            if (a.size() != n) throw ConfigError(path + "/positions", "expected one position per slit");
            g.positions.emplace();
            for (std::size_t i = 0; i < n; ++i) g.positions->push_back(vector3(a[i], path + "/positions/" + std::to_string(i)));
        }
        if (j.contains("times")) {
            const auto& a = array(j.at("times"), path + "/times");
            if (a.size() != n) throw ConfigError(path + "/times", "expected one time per slit");
            g.times.emplace();
            for (std::size_t i = 0; i < n; ++i) g.times->push_back(number(a[i], path + "/times/" + std::to_string(i)));
        }
        if (j.contains("polarizations")) {
            const auto& a = array(j.at("polarizations"), path + "/polarizations");
            if (a.size() != n) throw ConfigError(path + "/polarizations", "expected one polarization pair per slit");
            g.polarizations.emplace();
            for (std::size_t m = 0; m < n; ++m) {
                const std::string pm = path + "/polarizations/" + std::to_string(m);
                if (!a[m].is_array() || a[m].size() != 2) throw ConfigError(pm, "expected two polarization vectors");
                std::array<std::array<Complex, 3>, 2> pair{};
                for (std::size_t s = 0; s < 2; ++s) {
                    const std::string ps = pm + "/" + std::to_string(s);
                    if (!a[m][s].is_array() || a[m][s].size() != 3) throw ConfigError(ps, "expected 3 components");
                    for (std::size_t c = 0; c < 3; ++c) pair[s][c] = complex(a[m][s][c], ps + "/" + std::to_string(c));
                }
                g.polarizations->push_back(pair);
            }
        }
        return g;
    }
};

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

inline json complex_json(Complex c) {
    if (c.imag() == 0.0) return c.real();
    return json::array({c.real(), c.imag()});
}

inline json state_json(const StateSpec& spec) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            json out;
            if constexpr (std::is_same_v<T, PureSpec>) {
                out["kind"] = "pure";
                out["photons"] = s.photons;
                out["amplitudes"] = json::array();
                for (const auto& a : s.amplitudes) {
                    out["amplitudes"].push_back({{"occupation", a.occupation}, {"amplitude", complex_json(a.amplitude)}});
                }
            } else if constexpr (std::is_same_v<T, MixSpec>) {
                out["kind"] = "mix";
                out["components"] = json::array();
                for (const auto& c : s.components) {
                    out["components"].push_back({{"weight", c.weight}, {"state", state_json(c.state)}});
                }
            } else if constexpr (std::is_same_v<T, TwoPhotonSpec>) {
                out["kind"] = "two_photon_example";
                out["c1"] = complex_json(s.c1);
                out["c2"] = complex_json(s.c2);
                out["c3"] = complex_json(s.c3);
                out["modes"] = s.modes;
            } else {
                out["kind"] = "random";
                out["seed"] = s.seed;
                out["photons"] = s.photons;
                if (!s.weights.empty()) out["weights"] = s.weights;
                out["rank"] = s.rank;
                if (!s.modes.empty()) out["modes"] = s.modes;
            }
            return out;
        },
        spec.value);
}

}  // namespace detail

/// Parses and validates scenario text. Throws ConfigError.
inline ScenarioConfig parse_scenario(const std::string& text) {
    using detail::Reader;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1), "syntax error: " + std::string(e.what()));
    }
    Reader::require_object(j, "", {"format", "slits", "state", "geometry", "orders", "kappa", "output"});
    const auto& format = Reader::field(j, "", "format");
    if (!format.is_string() || format.get<std::string>() != kScenarioFormat) {
        throw ConfigError("/format", std::string("expected \"") + kScenarioFormat + "\"");
    }
    ScenarioConfig config;
    config.slits = static_cast<int>(Reader::integer(Reader::field(j, "", "slits"), "/slits", 1, 16));
    config.state = Reader::state(Reader::field(j, "", "state"), "/state", config.slits);
    if (j.contains("geometry")) config.geometry = Reader::geometry(j.at("geometry"), "/geometry", config.slits);
    if (j.contains("orders")) {
        const auto& o = Reader::array(j.at("orders"), "/orders");
        if (o.empty()) throw ConfigError("/orders", "needs at least one order");
        config.orders.clear();
        for (std::size_t i = 0; i < o.size(); ++i) {
            config.orders.push_back(static_cast<int>(Reader::integer(o[i], "/orders/" + std::to_string(i), 1, 8)));
        }
    }
    if (j.contains("kappa")) config.kappa = static_cast<int>(Reader::integer(j.at("kappa"), "/kappa", 2, 2 * config.slits));
    if (j.contains("output")) {
        const auto& out = j.at("output");
        if (!out.is_string() || out.get<std::string>() != "json") throw ConfigError("/output", "supported formats: \"json\"");
        config.output = out.get<std::string>();
    }
    return config;
}

inline nlohmann::json scenario_json(const ScenarioConfig& config) {
    nlohmann::json j;
    j["format"] = kScenarioFormat;
    j["slits"] = config.slits;
    j["state"] = detail::state_json(config.state);
    if (config.geometry) {
        const auto& g = *config.geometry;
        nlohmann::json gj = nlohmann::json::object();
        if (g.amplitude) gj["amplitude"] = detail::complex_json(*g.amplitude);
        if (g.wave_vector) gj["wave_vector"] = *g.wave_vector;
        if (g.angular_frequency) gj["angular_frequency"] = *g.angular_frequency;
        if (g.positions) gj["positions"] = *g.positions;
        if (g.times) gj["times"] = *g.times;
        if (g.polarizations) {
            gj["polarizations"] = nlohmann::json::array();
            for (const auto& pair : *g.polarizations) {
                nlohmann::json pj = nlohmann::json::array();
                for (const auto& e : pair) {
                    pj.push_back({detail::complex_json(e[0]), detail::complex_json(e[1]), detail::complex_json(e[2])});
                }
                gj["polarizations"].push_back(pj);
            }
        }
        j["geometry"] = gj;
    }
    j["orders"] = config.orders;
    if (config.kappa) j["kappa"] = *config.kappa;
    j["output"] = config.output;
    return j;
}

inline std::string serialize_scenario(const ScenarioConfig& config) { return scenario_json(config).dump(2) + "\n"; }

/// Builds the multiphoton state over 2L modes.
inline MultiphotonState build_state(const StateSpec& spec, int slits) {
    const auto modes = 2 * static_cast<std::size_t>(slits);
    return std::visit(
        [&](const auto& s) -> MultiphotonState {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PureSpec>) {
                std::vector<std::pair<OccupationVector, Complex>> amps;
                for (const auto& a : s.amplitudes) amps.emplace_back(OccupationVector(a.occupation), a.amplitude);
                return pure_state(modes, s.photons, amps);
            } else if constexpr (std::is_same_v<T, MixSpec>) {
                std::vector<std::pair<double, MultiphotonState>> parts;
                for (const auto& c : s.components) parts.emplace_back(c.weight, build_state(c.state, slits));
                return mix(parts);
            } else if constexpr (std::is_same_v<T, TwoPhotonSpec>) {
                return two_photon_example(s.c1, s.c2, s.c3, modes, s.modes[0], s.modes[1]);
            } else {
                const RandomStateSpec random{s.photons, s.weights, s.rank};
                if (s.modes.empty()) return random_state(s.seed, modes, random);
                return embed(random_state(s.seed, s.modes.size(), random), modes, s.modes);
            }
        },
        spec.value);
}

/// Standard geometry with any overrides applied; validated. Polarizations
/// default to the transverse basis of k.
inline FieldGeometry build_geometry(const std::optional<GeometrySpec>& spec, int slits) {
    const FieldGeometry base = FieldGeometry::standard(slits);
    if (!spec) return base;
    const auto n = static_cast<std::size_t>(slits);
    Complex amplitude = spec->amplitude.value_or(base.amplitude());
    Vector3 k = base.wave_vector();
    if (spec->wave_vector) k = Vector3((*spec->wave_vector)[0], (*spec->wave_vector)[1], (*spec->wave_vector)[2]);
    std::vector<Vector3> positions = base.positions();
    if (spec->positions) {
        for (std::size_t m = 0; m < n; ++m) positions[m] = Vector3((*spec->positions)[m][0], (*spec->positions)[m][1], (*spec->positions)[m][2]);
    }
    std::vector<double> times = spec->times.value_or(base.times());
    const auto [u, v] = transverse_basis(k);
    std::vector<PolarizationPair> polarizations(n, PolarizationPair{u.cast<Complex>(), v.cast<Complex>()});
    if (spec->polarizations) {
        for (std::size_t m = 0; m < n; ++m) {
            for (std::size_t s = 0; s < 2; ++s) {
                const auto& e = (*spec->polarizations)[m][s];
                polarizations[m][s] = ComplexVector3(e[0], e[1], e[2]);
            }
        }
    }
    return FieldGeometry(slits, amplitude, k, spec->angular_frequency.value_or(base.angular_frequency()),
                         std::move(positions), std::move(times), std::move(polarizations));
}

namespace detail {

inline nlohmann::json spectrum_summary(const ComplexMatrix& m) {
    const double trace = m.trace().real();
    const Eigen::VectorXd eig = hermitian_eigenvalues(m / trace);
    std::vector<double> values(eig.data(), eig.data() + eig.size());
    std::sort(values.rbegin(), values.rend());
    return {{"dimension", m.rows()}, {"trace", trace}, {"purity", normalized_purity(m)}, {"eigenvalues", values}};
}

inline nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

struct ScenarioResult {
    nlohmann::json report;
    bool passed = false;
};

/// Evaluates a scenario. Throws ValidationError, CapacityError or DomainError from the engine.
inline ScenarioResult run_scenario(const ScenarioConfig& config, std::optional<int> kappa_override = std::nullopt) {
    const MultiphotonState state = build_state(config.state, config.slits);
    const FieldGeometry geometry = build_geometry(config.geometry, config.slits);
    const int kappa = kappa_override.value_or(config.kappa.value_or(2 * config.slits));
    if (kappa < 2 || kappa > 2 * config.slits) {
        throw ValidationError("kappa must lie in 2.." + std::to_string(2 * config.slits));
    }

    nlohmann::json report;
    report["format"] = kReportFormat;
    report["engine_version"] = kEngineVersion;
    report["scenario"] = scenario_json(config);
    nlohmann::json distribution = nlohmann::json::array();
    for (const auto& [photons, block] : state.blocks()) {
        distribution.push_back({{"photons", photons}, {"probability", block.probability}});
    }
    report["state"] = {{"modes", state.modes()},
                       {"mean_photon_number", state.mean_photon_number()},
                       {"slit_photon_numbers", slit_photon_numbers(state)},
                       {"photon_distribution", distribution},
                       {"active_modes", active_mode_count(state)},
                       {"single_mode_per_slit", single_mode_per_slit(state)}};

    bool passed = true;
    std::vector<std::string> warnings;
    report["orders"] = nlohmann::json::array();
    for (int order : config.orders) {
        if (!(state.factorial_moment(order) > 0.0)) {
            throw DomainError("order " + std::to_string(order) + " correlations vanish: fewer than " +
                              std::to_string(order) + " photons in every block");
        }
        const ComplementarityReport r = order_n_complementarity(state, geometry, order, kappa);
        const FieldDensityMatrix field = field_density_matrix(state, geometry, order);
        const ReducedDensityMatrix reduced = reduced_density_matrix(state, order);
        passed = passed && r.identities_hold();
        for (const auto& w : r.warnings) warnings.push_back("order " + std::to_string(order) + ": " + w);
        report["orders"].push_back({{"order", order},
                                    {"kappa", kappa},
                                    {"F", r.F},
                                    {"S", r.S},
                                    {"residual_FS", r.residual_FS},
                                    {"bounds_ok", r.bounds_ok},
                                    {"field_density", detail::spectrum_summary(field.matrix)},
                                    {"reduced_density", detail::spectrum_summary(reduced.matrix)}});
    }

    if (config.slits == 2) {
        const ComplementarityReport t = triality_report(state, geometry);
        passed = passed && t.identities_hold();
        nlohmann::json regimes = nlohmann::json::array();
        for (const auto& r : t.regimes) regimes.push_back({{"name", to_string(r.regime)}, {"residual", r.residual}});
        report["double_slit"] = {{"kappa", t.kappa},
                                 {"F", t.F},
                                 {"S", t.S},
                                 {"D", detail::optional_number(t.D)},
                                 {"V", detail::optional_number(t.V)},
                                 {"g", detail::optional_number(t.g)},
                                 {"residual_FS", t.residual_FS},
                                 {"residual_duality", detail::optional_number(t.residual_duality)},
                                 {"residual_triality", detail::optional_number(t.residual_triality)},
                                 {"regimes", regimes},
                                 {"bounds_ok", t.bounds_ok}};
        for (const auto& w : t.warnings) warnings.push_back("double slit: " + w);
    }
    report["tolerances"] = {{"residual", kResidualTolerance}, {"regime", kRegimeTolerance}};
    report["warnings"] = warnings;
    report["status"] = passed ? "pass" : "fail";
    return {report, passed};
}

}  // namespace vlc
