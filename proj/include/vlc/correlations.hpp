#pragma once

// Normally ordered cross-spectral densities
//
//   W(j_1..j_n; i_1..i_n) = tr[rho a†_{j_1} .. a†_{j_n} a_{i_1} .. a_{i_n}]
//
// and the reduced n-photon density matrix varrho^(n)_{i,j} = W(j; i), computed
// two ways:
//   * second-quantized: annihilation strings applied to Fock basis vectors,
//     weighted by p_N per block;
//   * first-quantized oracle: each block expanded into symmetric tensors,
//     rescaled by N!, partially traced over the last N - n photons and divided
//     by (N - n)!.
//
// Matrix layout: row-major over photon-index tuples, photon 1 most significant,
// with flat mode indices 0..K-1. Rows carry the annihilation labels, columns
// the creation labels. Block contributions are accumulated in ascending N and
// basis order, so results are bit-reproducible.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vlc/fock.hpp"
#include "vlc/linalg.hpp"
#include "vlc/states.hpp"

namespace vlc {

struct ReducedDensityMatrix {
    int order = 1;
    std::size_t modes = 1;
    ComplexMatrix matrix;
    double trace_value = 0.0;  // sum_N p_N N!/(N-n)!

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

/// Index helpers for length-n tuples of mode labels.
class LabelTuples {
public:
    LabelTuples(std::size_t modes, int order) : modes_(modes), order_(order) {
        if (order < 1) throw ValidationError("correlation order must be at least 1");
        count_ = int_pow(modes, static_cast<std::size_t>(order));
    }

    std::size_t count() const noexcept { return count_; }
    std::size_t modes() const noexcept { return modes_; }
    int order() const noexcept { return order_; }

    std::vector<std::size_t> labels(std::size_t flat) const {
        std::vector<std::size_t> out(static_cast<std::size_t>(order_));
        for (std::size_t a = out.size(); a-- > 0;) {
            out[a] = flat % modes_;
            flat /= modes_;
        }
        return out;
    }

    std::size_t flat(std::span<const std::size_t> labels) const {
        std::size_t index = 0;
        for (std::size_t label : labels) index = index * modes_ + label;
        return index;
    }

private:
    std::size_t modes_;
    int order_;
    std::size_t count_;
};

namespace detail {

/// W^(n) tabulated per label multiset. Entry (a, b) is the expectation of
/// creation multiset b and annihilation multiset a, i.e. varrho^(n) between
/// any tuples with those occupations.
struct CrossSpectralTable {
    std::size_t modes = 1;
    int order = 1;
    std::vector<OccupationVector> multisets;
    std::vector<std::size_t> tuple_multiset;  // flat tuple -> multiset index
    ComplexMatrix values;

    Complex operator()(std::size_t annihilation_tuple, std::size_t creation_tuple) const {
        return values(static_cast<Eigen::Index>(tuple_multiset[annihilation_tuple]),
                      static_cast<Eigen::Index>(tuple_multiset[creation_tuple]));
    }
};

inline void validate_labels(std::span<const std::size_t> labels, std::size_t modes) {
    for (std::size_t label : labels) {
        if (label >= modes) {
            throw ValidationError("mode label " + std::to_string(label) + " outside 0.." +
                                  std::to_string(modes - 1));
        }
    }
}

/// Contribution of one density block: sum over (N-n)-photon states u of
/// c(u+a) c(u+b) rho[u+a, u+b].
inline void accumulate_block(const FockBasis& basis, const ComplexMatrix& density, double weight,
                             const std::vector<OccupationVector>& multisets, ComplexMatrix& values) {
    const int order = multisets.front().total();
    const FockBasis lower_basis(basis.modes(), basis.photons() - order);
    const std::size_t m = multisets.size();
    const std::size_t d = lower_basis.size();
    // source[a * d + u]: index of the N-photon state that lowers to u under multiset a.
    std::vector<Eigen::Index> source(m * d, -1);
    std::vector<double> coefficient(m * d, 0.0);
    for (std::size_t v = 0; v < basis.size(); ++v) {
        for (std::size_t a = 0; a < m; ++a) {
            auto lowered = lower(basis[v], multisets[a]);
            if (!lowered) continue;
            const std::size_t u = lower_basis.rank(lowered->first);
            source[a * d + u] = static_cast<Eigen::Index>(v);
            coefficient[a * d + u] = lowered->second;
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            Complex sum = 0.0;
            for (std::size_t u = 0; u < d; ++u) {
                const Eigen::Index row = source[a * d + u];
                const Eigen::Index col = source[b * d + u];
                sum += coefficient[a * d + u] * coefficient[b * d + u] * density(row, col);
            }
            values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += weight * sum;
        }
    }
}

inline CrossSpectralTable cross_spectral_table(const MultiphotonState& state, int order) {
    const LabelTuples tuples(state.modes(), order);
    require_capacity(saturating_square(tuples.count()),
                     "reduced " + std::to_string(order) + "-photon matrix over " +
                         std::to_string(state.modes()) + " modes");
    CrossSpectralTable table;
    table.modes = state.modes();
    table.order = order;
    const FockBasis multiset_basis(state.modes(), order);
    table.multisets.assign(multiset_basis.begin(), multiset_basis.end());
    table.tuple_multiset.resize(tuples.count());
    for (std::size_t t = 0; t < tuples.count(); ++t) {
        const auto labels = tuples.labels(t);
        table.tuple_multiset[t] = multiset_basis.rank(OccupationVector::from_labels(labels, state.modes()));
    }
    const auto m = static_cast<Eigen::Index>(table.multisets.size());
    table.values = ComplexMatrix::Zero(m, m);
    for (const auto& [photons, block] : state.blocks()) {
        if (photons < order) continue;
        const FockBasis basis(state.modes(), photons);
        accumulate_block(basis, block.density, block.probability, table.multisets, table.values);
    }
    return table;
}

}  // namespace detail

/// W^(n)(creation; annihilation) for one label string. Blocks with N < n contribute zero.
inline Complex cross_spectral_density(const MultiphotonState& state,
                                      std::span<const std::size_t> creation_labels,
                                      std::span<const std::size_t> annihilation_labels) {
    if (creation_labels.size() != annihilation_labels.size() || creation_labels.empty()) {
        throw ValidationError("cross-spectral density needs n creation and n annihilation labels, n >= 1");
    }
    detail::validate_labels(creation_labels, state.modes());
    detail::validate_labels(annihilation_labels, state.modes());
    const int order = static_cast<int>(creation_labels.size());
    const std::vector<OccupationVector> multisets{
        OccupationVector::from_labels(annihilation_labels, state.modes()),
        OccupationVector::from_labels(creation_labels, state.modes())};
    ComplexMatrix values = ComplexMatrix::Zero(2, 2);
    for (const auto& [photons, block] : state.blocks()) {
        if (photons < order) continue;
        const FockBasis basis(state.modes(), photons);
        detail::accumulate_block(basis, block.density, block.probability, multisets, values);
    }
    return values(0, 1);
}

inline Complex cross_spectral_density(const MultiphotonState& state, std::span<const ModeLabel> creation,
                                      std::span<const ModeLabel> annihilation) {
    std::vector<std::size_t> c;
    std::vector<std::size_t> a;
    for (const auto& label : creation) {
        if (label.mode_count() != state.modes()) throw ValidationError("mode label does not match state");
        c.push_back(label.flat_index());
    }
    for (const auto& label : annihilation) {
        if (label.mode_count() != state.modes()) throw ValidationError("mode label does not match state");
        a.push_back(label.flat_index());
    }
    return cross_spectral_density(state, c, a);
}

/// Second-quantized reduced n-photon matrix, element (i, j) = W(j; i).
inline ReducedDensityMatrix reduced_density_matrix(const MultiphotonState& state, int order) {
    const detail::CrossSpectralTable table = detail::cross_spectral_table(state, order);
    const std::size_t count = table.tuple_multiset.size();
    ReducedDensityMatrix out{order, state.modes(),
                             ComplexMatrix(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count)),
                             state.factorial_moment(order)};
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            out.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = table(i, j);
        }
    }
    return out;
}

/// First-quantized partial-trace route. Scales as K^N per block; oracle use only.
inline ReducedDensityMatrix reduced_density_matrix_oracle(const MultiphotonState& state, int order) {
    const LabelTuples tuples(state.modes(), order);
    require_capacity(saturating_square(tuples.count()), "oracle reduced matrix");
    const auto count = static_cast<Eigen::Index>(tuples.count());
    ReducedDensityMatrix out{order, state.modes(), ComplexMatrix::Zero(count, count),
                             state.factorial_moment(order)};
    const std::size_t modes = state.modes();
    for (const auto& [photons, block] : state.blocks()) {
        if (photons < order) continue;
        const std::size_t full = int_pow(modes, static_cast<std::size_t>(photons));
        require_capacity(saturating_square(full), "first-quantized matrix for N=" + std::to_string(photons));
        const auto f = static_cast<Eigen::Index>(full);

        // rho^(N)_{i_1..i_N, j_1..j_N} = N! <i_1..i_N| rho^(N) |j_1..j_N>
        ComplexMatrix rescaled = ComplexMatrix::Zero(f, f);
        for (const auto& [weight, pure] : pure_components(modes, photons, block.density)) {
            const FirstQuantizedTensor psi = to_first_quantized(pure);
            rescaled += weight * psi.amplitudes * psi.amplitudes.adjoint();
        }
        rescaled *= factorial(photons);

        const std::size_t traced = int_pow(modes, static_cast<std::size_t>(photons - order));
        const double prefactor = block.probability / factorial(photons - order);
        for (Eigen::Index i = 0; i < count; ++i) {
            for (Eigen::Index j = 0; j < count; ++j) {
                Complex sum = 0.0;
                for (std::size_t l = 0; l < traced; ++l) {
                    const auto row = static_cast<Eigen::Index>(static_cast<std::size_t>(i) * traced + l);
                    const auto col = static_cast<Eigen::Index>(static_cast<std::size_t>(j) * traced + l);
                    sum += rescaled(row, col);
                }
                out.matrix(i, j) += prefactor * sum;
            }
        }
    }
    return out;
}

/// Rescaled first-quantized matrix rho^(N) of a pure N-photon block:
/// N! <i_1..i_N|psi><psi|j_1..j_N>.
inline ComplexMatrix rescaled_first_quantized_matrix(const PureBlock& block) {
    const FirstQuantizedTensor psi = to_first_quantized(block);
    require_capacity(saturating_square(static_cast<std::size_t>(psi.amplitudes.size())),
                     "first-quantized matrix");
    return factorial(block.photons) * psi.amplitudes * psi.amplitudes.adjoint();
}

}  // namespace vlc
