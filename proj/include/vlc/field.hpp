#pragma once

// Field-side objects for L-slit interference. Each slit m carries the
// single-frequency field
//
//   E+(x_m) = E0 * sum_s a_{ms} e_{ms} exp(i (k . r_m - w t_m)),
//
// from which the coherence tensors G^(n) and the field density matrices
// calG^(n) are assembled out of W^(n).

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "vlc/correlations.hpp"

namespace vlc {

using Vector3 = Eigen::Vector3d;
using ComplexVector3 = Eigen::Vector3cd;
using PolarizationPair = std::array<ComplexVector3, 2>;

inline constexpr double kGeometryTolerance = 1e-12;
inline constexpr double kDarkSlitThreshold = 1e-12;

class FieldGeometry {
public:
    FieldGeometry(int slits, Complex amplitude, Vector3 wave_vector, double angular_frequency,
                  std::vector<Vector3> positions, std::vector<double> times,
                  std::vector<PolarizationPair> polarizations)
        : slits_(slits),
          amplitude_(amplitude),
          wave_vector_(std::move(wave_vector)),
          angular_frequency_(angular_frequency),
          positions_(std::move(positions)),
          times_(std::move(times)),
          polarizations_(std::move(polarizations)) {
        validate();
    }

    /// r_m = 0, t_m = 0, E0 = 1, k = 2 pi z, e_m1 = x, e_m2 = y.
    static FieldGeometry standard(int slits) {
        if (slits < 1) throw ValidationError("slit count must be at least 1");
        const auto n = static_cast<std::size_t>(slits);
        const PolarizationPair xy{ComplexVector3(1, 0, 0), ComplexVector3(0, 1, 0)};
        return FieldGeometry(slits, 1.0, Vector3(0, 0, 2 * std::numbers::pi), 2 * std::numbers::pi,
                             std::vector<Vector3>(n, Vector3::Zero()), std::vector<double>(n, 0.0),
                             std::vector<PolarizationPair>(n, xy));
    }

    int slits() const noexcept { return slits_; }
    std::size_t mode_count() const noexcept { return 2 * static_cast<std::size_t>(slits_); }
    Complex amplitude() const noexcept { return amplitude_; }
    double intensity_scale() const noexcept { return std::norm(amplitude_); }
    const Vector3& wave_vector() const noexcept { return wave_vector_; }
    double angular_frequency() const noexcept { return angular_frequency_; }
    const std::vector<Vector3>& positions() const noexcept { return positions_; }
    const std::vector<double>& times() const noexcept { return times_; }
    const std::vector<PolarizationPair>& polarizations() const noexcept { return polarizations_; }

    /// k . r_m - w t_m for slit m in 1..L.
    double phase(int slit) const {
        const auto m = slot(slit);
        return wave_vector_.dot(positions_[m]) - angular_frequency_ * times_[m];
    }

    /// e_{ms} for slit m in 1..L, polarization s in 1..2.
    const ComplexVector3& polarization(int slit, int s) const {
        if (s < 1 || s > 2) throw ValidationError("polarization index outside 1..2");
        return polarizations_[slot(slit)][static_cast<std::size_t>(s - 1)];
    }

    FieldGeometry with_amplitude(Complex amplitude) const {
        FieldGeometry copy = *this;
        copy.amplitude_ = amplitude;
        return copy;
    }

    /// Same polarization bases and wave vector; new positions, times, frequency.
    FieldGeometry with_phases(std::vector<Vector3> positions, std::vector<double> times,
                              double angular_frequency) const {
        return FieldGeometry(slits_, amplitude_, wave_vector_, angular_frequency, std::move(positions),
                             std::move(times), polarizations_);
    }

private:
    std::size_t slot(int slit) const {
        if (slit < 1 || slit > slits_) {
            throw ValidationError("slit " + std::to_string(slit) + " outside 1.." + std::to_string(slits_));
        }
        return static_cast<std::size_t>(slit - 1);
    }

    void validate() const {
        if (slits_ < 1) throw ValidationError("slit count must be at least 1");
        const auto n = static_cast<std::size_t>(slits_);
        if (positions_.size() != n) throw ValidationError("geometry needs one position per slit");
        if (times_.size() != n) throw ValidationError("geometry needs one time per slit");
        if (polarizations_.size() != n) throw ValidationError("geometry needs one polarization pair per slit");
        if (!(std::abs(amplitude_) > 0.0)) throw ValidationError("field amplitude E0 must be nonzero");
        const ComplexVector3 k = wave_vector_.cast<Complex>();
        for (std::size_t m = 0; m < n; ++m) {
            const std::string where = "slit " + std::to_string(m + 1);
            for (std::size_t s = 0; s < 2; ++s) {
                // k . e, no conjugation
                if (std::abs((k.transpose() * polarizations_[m][s])(0)) > kGeometryTolerance * (1.0 + wave_vector_.norm())) {
                    throw ValidationError(where + ": polarization vector not transverse to k");
                }
                for (std::size_t t = 0; t < 2; ++t) {
                    const Complex overlap = polarizations_[m][s].dot(polarizations_[m][t]);
                    const double expected = s == t ? 1.0 : 0.0;
                    if (std::abs(overlap - expected) > kGeometryTolerance) {
                        throw ValidationError(where + ": polarization vectors not orthonormal");
                    }
                }
            }
        }
    }

    int slits_;
    Complex amplitude_;
    Vector3 wave_vector_;
    double angular_frequency_;
    std::vector<Vector3> positions_;
    std::vector<double> times_;
    std::vector<PolarizationPair> polarizations_;
};

/// Two real unit vectors (u, v) spanning the plane orthogonal to k, with u x v = k/|k|.
/// For k along z this is (x, y).
inline std::array<Vector3, 2> transverse_basis(const Vector3& k) {
    const Vector3 direction = k.normalized();
    const Vector3 helper = std::abs(direction.x()) < 0.9 ? Vector3::UnitX() : Vector3::UnitY();
    const Vector3 u = (helper - helper.dot(direction) * direction).normalized();
    return {u, direction.cross(u)};
}

namespace detail {

inline Vector3 uniform_position(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coordinate(-5.0, 5.0);
    Vector3 r;
    for (auto& x : r) x = coordinate(rng);
    return r;
}

}  // namespace detail

/// Random geometry: random propagation direction, random complex orthonormal
/// transverse polarization pairs, positions in [-5, 5]^3, times in [0, 10],
/// w in [0.1, 10], |E0|^2 in [0.1, 10] with random phase.
inline FieldGeometry random_geometry(std::uint64_t seed, int slits) {
    if (slits < 1) throw ValidationError("slit count must be at least 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector3 direction;
    for (auto& x : direction) x = gauss(rng);
    direction.normalize();
    const double wavenumber = 2 * std::numbers::pi * (0.5 + 1.5 * unit(rng));
    const Vector3 k = wavenumber * direction;
    const auto [u, v] = transverse_basis(k);
    std::vector<Vector3> positions;
    std::vector<double> times;
    std::vector<PolarizationPair> polarizations;
    for (int m = 0; m < slits; ++m) {
        positions.push_back(detail::uniform_position(rng));
        times.push_back(10 * unit(rng));
        // Random 2x2 unitary from a QR decomposition of a Gaussian matrix.
        Eigen::Matrix2cd g;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                g(i, j) = Complex(re, im);
            }
        }
        const Eigen::Matrix2cd q = Eigen::HouseholderQR<Eigen::Matrix2cd>(g).householderQ();
        const ComplexVector3 e1 = q(0, 0) * u.cast<Complex>() + q(1, 0) * v.cast<Complex>();
        const ComplexVector3 e2 = q(0, 1) * u.cast<Complex>() + q(1, 1) * v.cast<Complex>();
        polarizations.push_back({e1, e2});
    }
    const double omega = 0.1 + 9.9 * unit(rng);
    const double intensity = 0.1 + 9.9 * unit(rng);
    const double theta = 2 * std::numbers::pi * unit(rng);
    return FieldGeometry(slits, std::polar(std::sqrt(intensity), theta), k, omega, std::move(positions),
                         std::move(times), std::move(polarizations));
}

/// New positions, times and frequency drawn as in random_geometry; everything else kept.
inline FieldGeometry redraw_phases(const FieldGeometry& geometry, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Vector3> positions;
    std::vector<double> times;
    for (int m = 0; m < geometry.slits(); ++m) {
        positions.push_back(detail::uniform_position(rng));
        times.push_back(10 * unit(rng));
    }
    return geometry.with_phases(std::move(positions), std::move(times), 0.1 + 9.9 * unit(rng));
}

/// calG^(n) in the mode-component representation, dimension (2L)^n.
struct FieldDensityMatrix {
    int order = 1;
    int slits = 1;
    ComplexMatrix matrix;
    double trace_value = 0.0;  // I0^n times the n-th factorial moment

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

namespace detail {

inline void require_matching(const MultiphotonState& state, const FieldGeometry& geometry) {
    if (state.modes() != geometry.mode_count()) {
        throw ValidationError("state has " + std::to_string(state.modes()) + " modes but geometry has " +
                              std::to_string(geometry.slits()) + " slits (" +
                              std::to_string(geometry.mode_count()) + " modes)");
    }
}

inline int slit_of(std::size_t flat_mode) { return static_cast<int>(flat_mode / 2) + 1; }
inline int polarization_of(std::size_t flat_mode) { return static_cast<int>(flat_mode % 2) + 1; }

/// G^(n) for one slit tuple from a precomputed W table.
inline ComplexMatrix coherence_tensor(const CrossSpectralTable& table, const FieldGeometry& geometry,
                                      std::span<const int> slits) {
    const int order = table.order;
    const auto n = static_cast<std::size_t>(order);
    const std::size_t side = int_pow(3, n);
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(side), static_cast<Eigen::Index>(side));
    const LabelTuples tuples(table.modes, order);
    const LabelTuples cartesian(3, order);
    const double scale = std::pow(geometry.intensity_scale(), order);

    Complex phase = 1.0;
    for (std::size_t mu = 0; mu < n; ++mu) phase *= std::polar(1.0, -geometry.phase(slits[mu]));
    for (std::size_t nu = n; nu < 2 * n; ++nu) phase *= std::polar(1.0, geometry.phase(slits[nu]));

    // Polarization choices s_1..s_2n enumerated as a 2n-digit binary number.
    const std::size_t choices = std::size_t{1} << (2 * n);
    std::vector<std::size_t> creation(n), annihilation(n);
    for (std::size_t bits = 0; bits < choices; ++bits) {
        for (std::size_t a = 0; a < 2 * n; ++a) {
            const std::size_t s = (bits >> (2 * n - 1 - a)) & 1u;
            const std::size_t flat = 2 * static_cast<std::size_t>(slits[a] - 1) + s;
            if (a < n) {
                creation[a] = flat;
            } else {
                annihilation[a - n] = flat;
            }
        }
        const Complex w = table(tuples.flat(annihilation), tuples.flat(creation));
        if (w == Complex(0.0)) continue;
        for (std::size_t row = 0; row < side; ++row) {
            const auto rc = cartesian.labels(row);
            Complex left = 1.0;
            for (std::size_t mu = 0; mu < n; ++mu) {
                left *= std::conj(geometry.polarization(slits[mu], polarization_of(creation[mu]))(
                    static_cast<Eigen::Index>(rc[mu])));
            }
            for (std::size_t col = 0; col < side; ++col) {
                const auto cc = cartesian.labels(col);
                Complex right = 1.0;
                for (std::size_t nu = 0; nu < n; ++nu) {
                    right *= geometry.polarization(slits[n + nu], polarization_of(annihilation[nu]))(
                        static_cast<Eigen::Index>(cc[nu]));
                }
                out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += w * left * right;
            }
        }
    }
    return scale * phase * out;
}

}  // namespace detail

/// G^(n)(x_{m_1}, .., x_{m_2n}) as a 3^n x 3^n matrix of Cartesian components.
/// Rows index the n conjugated (creation) arguments, columns the n annihilation ones.
inline ComplexMatrix correlation_matrix_Gn(const MultiphotonState& state, const FieldGeometry& geometry,
                                           std::span<const int> slits) {
    detail::require_matching(state, geometry);
    if (slits.empty() || slits.size() % 2 != 0) {
        throw ValidationError("coherence tensor needs 2n slit arguments, n >= 1");
    }
    for (int m : slits) {
        if (m < 1 || m > geometry.slits()) {
            throw ValidationError("slit " + std::to_string(m) + " outside 1.." + std::to_string(geometry.slits()));
        }
    }
    const auto table = detail::cross_spectral_table(state, static_cast<int>(slits.size() / 2));
    return detail::coherence_tensor(table, geometry, slits);
}

/// calG^(n): element ((k_1..k_n), (k_{n+1}..k_2n)) = I0^n W(k_1..k_n; k_{n+1}..k_2n)
/// times exp(-i phi) per creation slit and exp(+i phi) per annihilation slit.
inline FieldDensityMatrix field_density_matrix(const MultiphotonState& state, const FieldGeometry& geometry,
                                               int order) {
    detail::require_matching(state, geometry);
    const auto table = detail::cross_spectral_table(state, order);
    const LabelTuples tuples(state.modes(), order);
    const std::size_t count = tuples.count();
    std::vector<Complex> ket_phase(count);
    for (std::size_t t = 0; t < count; ++t) {
        Complex p = 1.0;
        for (std::size_t label : tuples.labels(t)) p *= std::polar(1.0, geometry.phase(detail::slit_of(label)));
        ket_phase[t] = p;
    }
    const double scale = std::pow(geometry.intensity_scale(), order);
    FieldDensityMatrix out{order, geometry.slits(),
                           ComplexMatrix(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count)),
                           scale * state.factorial_moment(order)};
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            // W(a; b) with a the creation tuple, b the annihilation tuple.
            out.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                scale * table(b, a) * std::conj(ket_phase[a]) * ket_phase[b];
        }
    }
    return out;
}

/// calG^(n) in Cartesian components, dimension (3L)^n, assembled from the
/// G^(n) blocks of every slit tuple.
inline ComplexMatrix cartesian_field_density_matrix(const MultiphotonState& state, const FieldGeometry& geometry,
                                                    int order) {
    detail::require_matching(state, geometry);
    const auto table = detail::cross_spectral_table(state, order);
    const auto slits = static_cast<std::size_t>(geometry.slits());
    const auto n = static_cast<std::size_t>(order);
    const LabelTuples slit_tuples(slits, order);
    const LabelTuples cartesian(3, order);
    const std::size_t side = int_pow(3 * slits, n);
    require_capacity(saturating_square(side), "Cartesian field density matrix");
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(side), static_cast<Eigen::Index>(side));
    const LabelTuples combined(3 * slits, order);
    std::vector<int> arguments(2 * n);
    for (std::size_t left = 0; left < slit_tuples.count(); ++left) {
        for (std::size_t right = 0; right < slit_tuples.count(); ++right) {
            const auto ls = slit_tuples.labels(left);
            const auto rs = slit_tuples.labels(right);
            for (std::size_t a = 0; a < n; ++a) {
                arguments[a] = static_cast<int>(ls[a]) + 1;
                arguments[n + a] = static_cast<int>(rs[a]) + 1;
            }
            const ComplexMatrix block = detail::coherence_tensor(table, geometry, arguments);
            for (std::size_t r = 0; r < cartesian.count(); ++r) {
                const auto rc = cartesian.labels(r);
                std::vector<std::size_t> row_labels(n);
                for (std::size_t a = 0; a < n; ++a) row_labels[a] = 3 * ls[a] + rc[a];
                for (std::size_t c = 0; c < cartesian.count(); ++c) {
                    const auto cc = cartesian.labels(c);
                    std::vector<std::size_t> col_labels(n);
                    for (std::size_t a = 0; a < n; ++a) col_labels[a] = 3 * rs[a] + cc[a];
                    out(static_cast<Eigen::Index>(combined.flat(row_labels)),
                        static_cast<Eigen::Index>(combined.flat(col_labels))) =
                        block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                }
            }
        }
    }
    return out;
}

/// g^(1)(x_m, x_m') = ||G(x_m, x_m')||_F / sqrt(tr G(x_m, x_m) tr G(x_m', x_m')).
inline double degree_of_coherence(const MultiphotonState& state, const FieldGeometry& geometry, int slit_a,
                                  int slit_b) {
    detail::require_matching(state, geometry);
    const auto table = detail::cross_spectral_table(state, 1);
    const std::array<int, 2> aa{slit_a, slit_a};
    const std::array<int, 2> bb{slit_b, slit_b};
    const std::array<int, 2> ab{slit_a, slit_b};
    for (int m : ab) {
        if (m < 1 || m > geometry.slits()) {
            throw ValidationError("slit " + std::to_string(m) + " outside 1.." + std::to_string(geometry.slits()));
        }
    }
    const double intensity_a = detail::coherence_tensor(table, geometry, aa).trace().real();
    const double intensity_b = detail::coherence_tensor(table, geometry, bb).trace().real();
    const double threshold = kDarkSlitThreshold * geometry.intensity_scale();
    if (!(intensity_a > threshold) || !(intensity_b > threshold)) {
        throw DomainError("degree of coherence undefined for dark slit");
    }
    const double cross = detail::coherence_tensor(table, geometry, ab).norm();
    return cross / std::sqrt(intensity_a * intensity_b);
}

}  // namespace vlc
