#pragma once

// Seeded invariant suite. Each check draws its own random states from the
// audit seed and reports the largest deviation it saw.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "vlc/complementarity.hpp"

namespace vlc {

struct AuditResult {
    std::string name;
    bool passed = true;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::size_t samples = 0;
};

/// splitmix64 of (seed, index); decorrelates per-sample seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Random state over `modes` modes with photon support in 1..max_photons (always
/// containing max_photons); odd seeds give rank-3 blocks.
inline MultiphotonState sample_state(std::uint64_t seed, std::size_t modes, int max_photons) {
    std::vector<int> support;
    for (int n = 1; n <= max_photons; ++n) {
        if (((seed >> n) & 1u) != 0 || n == max_photons) support.push_back(n);
    }
    return random_state(seed, modes, {support, {}, seed % 2 == 0 ? 1 : kDefaultMixtureRank});
}

/// Two-slit state with one populated polarization mode per slit.
inline MultiphotonState sample_single_mode_state(std::uint64_t seed, int max_photons) {
    const std::size_t s1 = (seed >> 5) & 1u;
    const std::size_t s2 = (seed >> 6) & 1u;
    return embed(sample_state(seed, 2, max_photons), 4, {s1, 2 + s2});
}

namespace detail {

class AuditAccumulator {
public:
    AuditAccumulator(std::string name, double tolerance) { result_ = {std::move(name), true, 0.0, tolerance, 0}; }

    void record(double deviation) {
        ++result_.samples;
        if (!(deviation <= result_.tolerance)) result_.passed = false;
        if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
        result_.max_deviation = std::max(result_.max_deviation, deviation);
    }

    AuditResult result() const { return result_; }

private:
    AuditResult result_;
};

inline ComplexVector amplitudes_or_zero(const PureBlock& block, std::size_t dimension) {
    if (block.is_null()) return ComplexVector::Zero(static_cast<Eigen::Index>(dimension));
    return block.amplitudes;
}

inline PureBlock random_block(std::uint64_t seed, std::size_t modes, int photons) {
    std::mt19937_64 rng(seed);
    return PureBlock{modes, photons, random_unit_vector(rng, fock_dimension(modes, photons))};
}

inline double relative(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(a)); }

inline double outside_unit_interval(double x) { return std::max({0.0, -x, x - 1.0}); }

}  // namespace detail

/// Runs every invariant on `count` seeded samples each.
inline std::vector<AuditResult> run_audit(std::uint64_t seed, std::size_t count) {
    using detail::AuditAccumulator;
    std::vector<AuditResult> results;
    auto draw = [&](std::size_t check, std::size_t i) { return derive_seed(seed, check * 1000003ULL + i); };

    {
        AuditAccumulator commutator("ladder_commutator", 1e-12);
        AuditAccumulator number("number_operator", 1e-12);
        AuditAccumulator adjoint("ladder_adjoint", 1e-12);
        AuditAccumulator symmetric("first_quantized_round_trip", 1e-12);
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t s = draw(0, i);
            const std::size_t modes = (s & 1u) ? 4 : 2;
            const int photons = 1 + static_cast<int>((s >> 1) % 3);
            const PureBlock v = detail::random_block(s, modes, photons);
            const auto dim = static_cast<std::size_t>(v.amplitudes.size());
            const PureBlock w = detail::random_block(s + 1, modes, photons - 1);
            double dev_c = 0.0, dev_a = 0.0;
            ComplexVector total = ComplexVector::Zero(v.amplitudes.size());
            for (std::size_t k = 0; k < modes; ++k) {
                const PureBlock lowered = apply_annihilation(v, k);
                total += detail::amplitudes_or_zero(apply_creation(lowered, k), dim);
                for (std::size_t l = 0; l < modes; ++l) {
                    const ComplexVector lhs = detail::amplitudes_or_zero(apply_annihilation(apply_creation(v, l), k), dim) -
                                              detail::amplitudes_or_zero(apply_creation(lowered, l), dim);
                    const ComplexVector rhs = k == l ? v.amplitudes : ComplexVector::Zero(v.amplitudes.size());
                    dev_c = std::max(dev_c, (lhs - rhs).cwiseAbs().maxCoeff());
                }
                const ComplexVector av = detail::amplitudes_or_zero(lowered, static_cast<std::size_t>(w.amplitudes.size()));
                const ComplexVector cw = detail::amplitudes_or_zero(apply_creation(w, k), dim);
                dev_a = std::max(dev_a, std::abs(w.amplitudes.dot(av) - cw.dot(v.amplitudes)));
            }
            commutator.record(dev_c);
            adjoint.record(dev_a);
            number.record((total - static_cast<double>(photons) * v.amplitudes).cwiseAbs().maxCoeff());

            const FirstQuantizedTensor tensor = to_first_quantized(v);
            double dev_s = (from_first_quantized(tensor).amplitudes - v.amplitudes).cwiseAbs().maxCoeff();
            if (photons >= 2) {
                for (Eigen::Index flat = 0; flat < tensor.amplitudes.size(); ++flat) {
                    auto labels = tensor.labels(static_cast<std::size_t>(flat));
                    std::swap(labels[0], labels[1]);
                    dev_s = std::max(dev_s, std::abs(tensor(labels) - tensor.amplitudes(flat)));
                }
            }
            symmetric.record(dev_s);
        }
        results.push_back(commutator.result());
        results.push_back(number.result());
        results.push_back(adjoint.result());
        results.push_back(symmetric.result());
    }

    {
        AuditAccumulator bridge("bridge_identity", 1e-11);
        AuditAccumulator psd("reduced_hermitian_psd", 1e-10);
        AuditAccumulator trace("reduced_trace_factorial_moment", 1e-10);
        AuditAccumulator exchange("exchange_symmetry", 1e-12);
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t s = draw(1, i);
            const std::size_t modes = (s & 1u) ? 4 : 2;
            const MultiphotonState state = sample_state(s, modes, 3);
            for (int order = 1; order <= 2; ++order) {
                const double moment = state.factorial_moment(order);
                if (!(moment > 0.0)) continue;
                const ReducedDensityMatrix second = reduced_density_matrix(state, order);
                const ReducedDensityMatrix first = reduced_density_matrix_oracle(state, order);
                bridge.record(max_abs_difference(second.matrix, first.matrix));
                const double scale = std::max(1.0, moment);
                psd.record(std::max(hermiticity_error(second.matrix), -std::min(0.0, min_eigenvalue(second.matrix))) / scale);
                trace.record(std::abs(second.matrix.trace().real() - moment) / scale);
                if (order == 2) {
                    const LabelTuples tuples(modes, 2);
                    double dev = 0.0;
                    for (std::size_t r = 0; r < tuples.count(); ++r) {
                        auto swapped = tuples.labels(r);
                        std::swap(swapped[0], swapped[1]);
                        const auto rs = static_cast<Eigen::Index>(tuples.flat(swapped));
                        dev = std::max(dev, (second.matrix.row(static_cast<Eigen::Index>(r)) - second.matrix.row(rs))
                                                .cwiseAbs()
                                                .maxCoeff());
                    }
                    exchange.record(dev / scale);
                }
            }
        }
        results.push_back(bridge.result());
        results.push_back(psd.result());
        results.push_back(trace.result());
        results.push_back(exchange.result());
    }

    {
        AuditAccumulator purity("purity_equality", 1e-11);
        AuditAccumulator fs("field_particle_complementarity", kResidualTolerance);
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t s = draw(2, i);
            const int slits = 1 + static_cast<int>(s % 3);
            const int max_photons = slits == 3 ? 2 : 3;
            const MultiphotonState state = sample_state(s, 2 * static_cast<std::size_t>(slits), max_photons);
            const FieldGeometry geometry = random_geometry(s + 1, slits);
            for (int order = 1; order <= max_photons; ++order) {
                if (!(state.factorial_moment(order) > 0.0)) continue;
                if (order <= 2) {
                    purity.record(std::abs(normalized_purity(field_density_matrix(state, geometry, order).matrix) -
                                           normalized_purity(reduced_density_matrix(state, order).matrix)));
                }
                for (int kappa = 2; kappa <= 2 * slits; ++kappa) {
                    fs.record(std::abs(order_n_complementarity(state, geometry, order, kappa).residual_FS));
                }
            }
        }
        results.push_back(purity.result());
        results.push_back(fs.result());
    }

    {
        AuditAccumulator duality("duality_equality", kResidualTolerance);
        AuditAccumulator triality("triality_identity", kResidualTolerance);
        AuditAccumulator bounds("unit_interval_bounds", kBoundSlack);
        AuditAccumulator gauge("gauge_invariance", 1e-12);
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t s = draw(3, i);
            const MultiphotonState state = sample_single_mode_state(s, 3);
            const FieldGeometry geometry = random_geometry(s + 1, 2);
            const ComplementarityReport r = triality_report(state, geometry);
            duality.record(r.residual_duality ? std::abs(*r.residual_duality) : 1.0);
            triality.record(r.residual_triality ? std::abs(*r.residual_triality) : 1.0);
            double outside = 0.0;
            for (double v : {r.F, r.S, r.D.value_or(0.0), r.V.value_or(0.0), r.g.value_or(0.0)}) {
                outside = std::max(outside, detail::outside_unit_interval(v));
            }
            bounds.record(outside);

            const FieldGeometry moved = redraw_phases(geometry, s + 2).with_amplitude(geometry.amplitude() * 2.5);
            const ComplementarityReport m = triality_report(state, moved);
            double dev = std::max({detail::relative(r.F, m.F), detail::relative(r.S, m.S),
                                   detail::relative(*r.D, *m.D), detail::relative(*r.V, *m.V)});
            if (r.g && m.g) dev = std::max(dev, detail::relative(*r.g, *m.g));
            const int order = 1 + static_cast<int>(s % 3);
            if (state.factorial_moment(order) > 0.0) {
                const auto a = order_n_complementarity(state, geometry, order, 4);
                const auto b = order_n_complementarity(state, moved, order, 4);
                dev = std::max({dev, detail::relative(a.F, b.F), detail::relative(a.S, b.S)});
            }
            gauge.record(dev);
        }
        results.push_back(duality.result());
        results.push_back(triality.result());
        results.push_back(bounds.result());
        results.push_back(gauge.result());
    }

    {
        AuditAccumulator limits("limiting_dualities", kRegimeTolerance);
        auto expect = [&](const MultiphotonState& state, const FieldGeometry& g, LimitingDuality regime) {
            const ComplementarityReport r = triality_report(state, g);
            double dev = 1.0;
            for (const auto& check : r.regimes) {
                if (check.regime == regime) dev = std::abs(check.residual);
            }
            limits.record(dev);
        };
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t s = draw(4, i);
            std::mt19937_64 rng(s);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const FieldGeometry geometry = random_geometry(s + 1, 2);
            const std::size_t x = (s >> 1) & 1u;
            const std::size_t y = 2 + ((s >> 2) & 1u);
            auto photon = [](std::size_t mode) {
                std::vector<int> c(4, 0);
                c[mode] = 1;
                return OccupationVector(c);
            };
            const double theta = unit(rng) * std::numbers::pi / 2.0;
            const double phi = unit(rng) * 2.0 * std::numbers::pi;
            const MultiphotonState pure = pure_state(
                4, 1, {{photon(x), std::cos(theta)}, {photon(y), std::sin(theta) * std::polar(1.0, phi)}});
            expect(pure, geometry, LimitingDuality::coherent_field);

            const double w = 0.05 + 0.9 * unit(rng);
            const MultiphotonState incoherent = mix({{w, pure_state(4, 1, {{photon(x), 1.0}})},
                                                     {1.0 - w, pure_state(4, 1, {{photon(y), 1.0}})}});
            expect(incoherent, geometry, LimitingDuality::incoherent_field);

            const double c = 0.05 + 0.9 * unit(rng);
            const MultiphotonState even = pure_state(
                4, 1, {{photon(x), 1.0 / std::sqrt(2.0)}, {photon(y), std::polar(1.0 / std::sqrt(2.0), phi)}});
            const MultiphotonState flat = mix({{0.5, pure_state(4, 1, {{photon(x), 1.0}})},
                                               {0.5, pure_state(4, 1, {{photon(y), 1.0}})}});
            expect(mix({{c, even}, {1.0 - c, flat}}), geometry, LimitingDuality::balanced_intensities);
        }
        results.push_back(limits.result());
    }
    return results;
}

}  // namespace vlc
