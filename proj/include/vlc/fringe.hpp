#pragma once

// Stokes-parameter fringes of the superposed two-slit field. The two slit
// fields are added with equal geometric weight and relative phase
// delta = phi_1 - phi_2, so the polarization matrix at the screen is
//
//   J(delta) = G11 + G22 + exp(-i delta) G12 + exp(i delta) G21,
//
// with Gmm' the phase-free first-order coherence tensors. J is projected on
// the transverse basis (u, v) of k and
//   S0 = Juu + Jvv, S1 = Juu - Jvv, S2 = 2 Re Juv, S3 = 2 Im Juv,
// where Juv = <E_u^(-) E_v^(+)>.

#include <array>
#include <numbers>
#include <vector>

#include "vlc/field.hpp"

namespace vlc {

struct FringeSample {
    double delta = 0.0;
    std::array<double, 4> stokes{};
};

struct FringeCurve {
    std::vector<FringeSample> samples;
    /// Peak-to-trough of each S_j over delta, divided by max S0 + min S0.
    /// Evaluated in closed form, not from the samples.
    std::array<double, 4> visibility{};
};

namespace detail {

inline std::array<Complex, 4> stokes_components(const Eigen::Matrix2cd& j) {
    return {j(0, 0) + j(1, 1), j(0, 0) - j(1, 1), j(0, 1) + j(1, 0), Complex(0, -1) * (j(0, 1) - j(1, 0))};
}

}  // namespace detail

inline FringeCurve fringe_curve(const MultiphotonState& state, const FieldGeometry& geometry, int samples) {
    if (geometry.slits() != 2) throw ValidationError("fringe curve needs exactly two slits");
    if (samples < 1) throw ValidationError("fringe curve needs at least one phase sample");
    detail::require_matching(state, geometry);

    // Phase-free coherence tensors.
    const FieldGeometry flat = geometry.with_phases({Vector3::Zero(), Vector3::Zero()}, {0.0, 0.0}, 0.0);
    const auto table = detail::cross_spectral_table(state, 1);
    const std::array<int, 2> s11{1, 1}, s22{2, 2}, s12{1, 2};
    const auto [u, v] = transverse_basis(geometry.wave_vector());
    Eigen::Matrix<Complex, 3, 2> basis;
    basis.col(0) = u.cast<Complex>();
    basis.col(1) = v.cast<Complex>();
    const Eigen::Matrix2cd j0 =
        basis.transpose() *
        (detail::coherence_tensor(table, flat, s11) + detail::coherence_tensor(table, flat, s22)) * basis;
    const Eigen::Matrix2cd j12 = basis.transpose() * detail::coherence_tensor(table, flat, s12) * basis;

    FringeCurve curve;
    const double mean_intensity = j0.trace().real();
    if (!(mean_intensity > kDarkSlitThreshold * geometry.intensity_scale())) {
        throw DomainError("fringe curve undefined for vacuum");
    }
    const auto modulation = detail::stokes_components(j12);
    for (std::size_t k = 0; k < 4; ++k) curve.visibility[k] = 2.0 * std::abs(modulation[k]) / mean_intensity;

    for (int i = 0; i < samples; ++i) {
        const double delta = 2 * std::numbers::pi * i / samples;
        const Complex z = std::polar(1.0, -delta);
        const Eigen::Matrix2cd j = j0 + z * j12 + std::conj(z) * j12.adjoint();
        const auto stokes = detail::stokes_components(j);
        FringeSample sample{delta, {}};
        for (std::size_t k = 0; k < 4; ++k) sample.stokes[k] = stokes[k].real();
        curve.samples.push_back(sample);
    }
    return curve;
}

}  // namespace vlc
