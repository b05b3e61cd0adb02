#pragma once

// Degree of field purity F^(n), particle linear entropy S^(n), the double-slit
// distinguishability D and total visibility V, and reports that check
//
//   F^(n) + S^(n) = 1,   F^(1) = D^2 + V^2,   D^2 + V^2 + S^(1) = 1.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "vlc/field.hpp"

namespace vlc {

inline constexpr double kResidualTolerance = 1e-10;
inline constexpr double kRegimeTolerance = 1e-8;
inline constexpr double kBoundSlack = 1e-10;
inline constexpr double kActiveModeThreshold = 1e-12;

namespace detail {

inline double purity_prefactor(int kappa, int order) {
    if (kappa < 2) throw ValidationError("mode dimension kappa must be at least 2, got " + std::to_string(kappa));
    return std::pow(static_cast<double>(kappa), order);
}

}  // namespace detail

/// F^(n) = K^n/(K^n - 1) (||calG / tr calG||_F^2 - 1/K^n).
inline double field_purity(const FieldDensityMatrix& field, int kappa) {
    const double dim = detail::purity_prefactor(kappa, field.order);
    const double trace = field.matrix.trace().real();
    if (!(trace > 0.0)) throw DomainError("field purity undefined for vacuum");
    return dim / (dim - 1.0) * (normalized_purity(field.matrix) - 1.0 / dim);
}

/// S^(n) = K^n/(K^n - 1) (1 - tr[(varrho / tr varrho)^2]).
inline double particle_entropy(const ReducedDensityMatrix& reduced, int kappa) {
    const double dim = detail::purity_prefactor(kappa, reduced.order);
    const double trace = reduced.matrix.trace().real();
    if (!(trace > 0.0)) throw DomainError("particle entropy undefined for vacuum");
    return dim / (dim - 1.0) * (1.0 - normalized_purity(reduced.matrix));
}

/// Mean photon number per slit, N_m = sum_s W(ms; ms).
inline std::vector<double> slit_photon_numbers(const MultiphotonState& state) {
    if (state.modes() % 2 != 0) throw ValidationError("slit photon numbers need two modes per slit");
    const ReducedDensityMatrix one = reduced_density_matrix(state, 1);
    std::vector<double> out(state.modes() / 2, 0.0);
    for (std::size_t k = 0; k < state.modes(); ++k) {
        out[k / 2] += one.matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
    }
    return out;
}

/// Modes whose row of varrho^(1) has norm above 1e-12 * mean photon number.
inline int active_mode_count(const MultiphotonState& state) {
    const ReducedDensityMatrix one = reduced_density_matrix(state, 1);
    const double mean = state.mean_photon_number();
    int active = 0;
    for (Eigen::Index k = 0; k < one.matrix.rows(); ++k) {
        if (one.matrix.row(k).norm() > kActiveModeThreshold * mean) ++active;
    }
    return active;
}

/// True when each slit's 2x2 polarization block of varrho^(1) has rank at most one,
/// i.e. the light occupies a single mode per slit.
inline bool single_mode_per_slit(const MultiphotonState& state) {
    if (state.modes() % 2 != 0) return false;
    const ReducedDensityMatrix one = reduced_density_matrix(state, 1);
    const double mean = state.mean_photon_number();
    for (Eigen::Index m = 0; m < one.matrix.rows() / 2; ++m) {
        const ComplexMatrix block = one.matrix.block(2 * m, 2 * m, 2, 2);
        if (min_eigenvalue(block) > kActiveModeThreshold * std::max(mean, 1.0)) return false;
    }
    return true;
}

/// D = |N_1 - N_2| / (N_1 + N_2) for two slits.
inline double distinguishability(const MultiphotonState& state) {
    if (state.modes() != 4) throw ValidationError("distinguishability is defined for two slits (4 modes)");
    const auto n = slit_photon_numbers(state);
    const double total = n[0] + n[1];
    if (!(total > 0.0)) throw DomainError("distinguishability undefined for vacuum");
    return std::abs(n[0] - n[1]) / total;
}

struct Visibility {
    double value = 0.0;
    std::optional<double> coherence;  // g^(1), absent when one slit is dark
    bool dark_slit = false;           // exactly one slit dark; value set to 0 by convention
};

/// V = 2 sqrt(N_1 N_2)/(N_1 + N_2) g^(1)(x_1, x_2). Independent of the observation point.
inline Visibility total_visibility(const MultiphotonState& state, const FieldGeometry& geometry) {
    if (geometry.slits() != 2) throw ValidationError("total visibility is defined for two slits");
    detail::require_matching(state, geometry);
    const auto n = slit_photon_numbers(state);
    const double total = n[0] + n[1];
    if (!(total > 0.0)) throw DomainError("total visibility undefined: both slits dark");
    const double threshold = kDarkSlitThreshold;
    const bool dark_1 = !(n[0] > threshold);
    const bool dark_2 = !(n[1] > threshold);
    if (dark_1 || dark_2) return Visibility{0.0, std::nullopt, true};
    const double g = degree_of_coherence(state, geometry, 1, 2);
    return Visibility{2.0 * std::sqrt(n[0] * n[1]) / total * g, g, false};
}

enum class LimitingDuality {
    coherent_field,       // g = 1:   D^2 + V^2 = 1
    incoherent_field,     // g = 0:   D^2 + S = 1
    balanced_intensities  // N_1 = N_2: V^2 + S = 1
};

inline const char* to_string(LimitingDuality regime) {
    switch (regime) {
        case LimitingDuality::coherent_field: return "coherent_field";
        case LimitingDuality::incoherent_field: return "incoherent_field";
        case LimitingDuality::balanced_intensities: return "balanced_intensities";
    }
    return "unknown";
}

struct RegimeCheck {
    LimitingDuality regime;
    double residual = 0.0;
};

struct ComplementarityReport {
    int slits = 1;
    int order = 1;
    int kappa = 2;
    double F = 0.0;
    double S = 0.0;
    double residual_FS = 0.0;
    std::optional<double> D;
    std::optional<double> V;
    std::optional<double> g;
    std::optional<double> residual_duality;   // F - D^2 - V^2
    std::optional<double> residual_triality;  // D^2 + V^2 + S - 1
    std::vector<RegimeCheck> regimes;
    double mean_photons = 0.0;
    std::vector<double> slit_photons;
    bool bounds_ok = true;  // every scalar within [0, 1] up to 1e-10
    std::vector<std::string> warnings;

    /// All residuals within tolerance.
    bool identities_hold() const {
        if (!(std::abs(residual_FS) <= kResidualTolerance)) return false;
        if (residual_duality && !(std::abs(*residual_duality) <= kResidualTolerance)) return false;
        if (residual_triality && !(std::abs(*residual_triality) <= kResidualTolerance)) return false;
        for (const auto& r : regimes) {
            if (!(std::abs(r.residual) <= kRegimeTolerance)) return false;
        }
        return true;
    }
};

enum class ReductionRoute { second_quantized, first_quantized };

namespace detail {

inline bool in_unit_interval(double x) { return x >= -kBoundSlack && x <= 1.0 + kBoundSlack; }

inline void check_bounds(ComplementarityReport& report) {
    std::vector<double> values{report.F, report.S};
    for (const auto& v : {report.D, report.V, report.g}) {
        if (v) values.push_back(*v);
    }
    report.bounds_ok = true;
    for (double v : values) report.bounds_ok = report.bounds_ok && in_unit_interval(v);
    if (!report.bounds_ok) report.warnings.emplace_back("scalar outside [0, 1]; kappa may undercount the active modes");
}

}  // namespace detail

/// F^(n) from calG^(n) and S^(n) from varrho^(n) with the same kappa.
inline ComplementarityReport order_n_complementarity(const MultiphotonState& state, const FieldGeometry& geometry,
                                                     int order, int kappa,
                                                     ReductionRoute route = ReductionRoute::second_quantized) {
    detail::require_matching(state, geometry);
    ComplementarityReport report;
    report.slits = geometry.slits();
    report.order = order;
    report.kappa = kappa;
    report.mean_photons = state.mean_photon_number();
    report.slit_photons = slit_photon_numbers(state);
    const FieldDensityMatrix field = field_density_matrix(state, geometry, order);
    const ReducedDensityMatrix reduced = route == ReductionRoute::second_quantized
                                             ? reduced_density_matrix(state, order)
                                             : reduced_density_matrix_oracle(state, order);
    report.F = field_purity(field, kappa);
    report.S = particle_entropy(reduced, kappa);
    report.residual_FS = report.F + report.S - 1.0;
    detail::check_bounds(report);
    return report;
}

/// Double-slit report: F^(1), S^(1), D, V, g and, when the light occupies one
/// mode per slit with kappa = 2, the duality and triality residuals plus the
/// limiting dualities whose trigger holds within 1e-8.
inline ComplementarityReport triality_report(const MultiphotonState& state, const FieldGeometry& geometry,
                                             std::optional<int> kappa = std::nullopt) {
    if (geometry.slits() != 2) throw ValidationError("triality report needs exactly two slits");
    detail::require_matching(state, geometry);
    const bool single_mode = single_mode_per_slit(state);
    const int k = kappa.value_or(single_mode ? 2 : 4);
    ComplementarityReport report = order_n_complementarity(state, geometry, 1, k);

    const double d = distinguishability(state);
    const Visibility v = total_visibility(state, geometry);
    report.D = d;
    report.V = v.value;
    report.g = v.coherence;
    if (v.dark_slit) report.warnings.emplace_back("one slit dark: V = 0 and g undefined");

    if (!single_mode) {
        report.warnings.emplace_back("more than one mode per slit: duality and triality not applicable");
    } else if (k != 2) {
        report.warnings.emplace_back("duality and triality need kappa = 2");
    } else {
        report.residual_duality = report.F - d * d - v.value * v.value;
        report.residual_triality = d * d + v.value * v.value + report.S - 1.0;
        if (v.coherence && std::abs(*v.coherence - 1.0) <= kRegimeTolerance) {
            report.regimes.push_back({LimitingDuality::coherent_field, d * d + v.value * v.value - 1.0});
        }
        if (v.coherence && std::abs(*v.coherence) <= kRegimeTolerance) {
            report.regimes.push_back({LimitingDuality::incoherent_field, d * d + report.S - 1.0});
        }
        if (d <= kRegimeTolerance) {
            report.regimes.push_back({LimitingDuality::balanced_intensities, v.value * v.value + report.S - 1.0});
        }
    }
    detail::check_bounds(report);
    return report;
}

}  // namespace vlc
