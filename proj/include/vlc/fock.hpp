#pragma once

// Occupation-number bases and ladder operators over K bosonic modes at fixed
// total photon number.

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vlc/errors.hpp"

namespace vlc {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Saturating binomial coefficient; returns SIZE_MAX on overflow.
inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::size_t factor = n - k + i;
        // result * factor / i is always integral when done in this order.
        const std::size_t g = std::gcd(result, i);
        const std::size_t reduced_result = result / g;
        const std::size_t reduced_factor = factor / (i / g);
        if (reduced_factor != 0 &&
            reduced_result > std::numeric_limits<std::size_t>::max() / reduced_factor) {
            return std::numeric_limits<std::size_t>::max();
        }
        result = reduced_result * reduced_factor;
    }
    return result;
}

/// Saturating integer power.
inline std::size_t int_pow(std::size_t base, std::size_t exponent) {
    std::size_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > std::numeric_limits<std::size_t>::max() / base) {
            return std::numeric_limits<std::size_t>::max();
        }
        result *= base;
    }
    return result;
}

inline std::size_t saturating_square(std::size_t n) {
    if (n != 0 && n > std::numeric_limits<std::size_t>::max() / n) {
        return std::numeric_limits<std::size_t>::max();
    }
    return n * n;
}

inline double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

/// Number of Fock states with N photons in K modes, C(N+K-1, K-1).
inline std::size_t fock_dimension(std::size_t modes, int photons) {
    if (modes == 0 || photons < 0) return 0;
    return binomial(static_cast<std::size_t>(photons) + modes - 1, modes - 1);
}

/// One slit mode: slit m in 1..L, polarization s in 1..2. flat_index = 2(m-1) + (s-1).
class ModeLabel {
public:
    ModeLabel(int slit, int polarization, int slit_count) {
        if (slit_count < 1) throw ValidationError("slit count must be at least 1");
        if (slit < 1 || slit > slit_count) {
            throw ValidationError("slit " + std::to_string(slit) + " outside 1.." +
                                  std::to_string(slit_count));
        }
        if (polarization < 1 || polarization > 2) {
            throw ValidationError("polarization " + std::to_string(polarization) +
                                  " outside 1..2");
        }
        slit_ = slit;
        polarization_ = polarization;
        slit_count_ = slit_count;
    }

    static ModeLabel from_flat(std::size_t flat_index, int slit_count) {
        if (slit_count < 1 || flat_index >= 2 * static_cast<std::size_t>(slit_count)) {
            throw ValidationError("flat mode index " + std::to_string(flat_index) +
                                  " outside 0.." + std::to_string(2 * slit_count - 1));
        }
        return ModeLabel(static_cast<int>(flat_index / 2) + 1,
                         static_cast<int>(flat_index % 2) + 1, slit_count);
    }

    int slit() const noexcept { return slit_; }
    int polarization() const noexcept { return polarization_; }
    int slit_count() const noexcept { return slit_count_; }
    std::size_t mode_count() const noexcept { return 2 * static_cast<std::size_t>(slit_count_); }
    std::size_t flat_index() const noexcept {
        return 2 * static_cast<std::size_t>(slit_ - 1) + static_cast<std::size_t>(polarization_ - 1);
    }

    friend bool operator==(const ModeLabel&, const ModeLabel&) = default;

private:
    int slit_ = 1;
    int polarization_ = 1;
    int slit_count_ = 1;
};

/// Photons per mode. The total is cached at construction.
class OccupationVector {
public:
    OccupationVector() = default;

    explicit OccupationVector(std::vector<int> counts) : counts_(std::move(counts)) {
        for (int c : counts_) {
            if (c < 0) throw ValidationError("occupation counts must be non-negative");
            total_ += c;
        }
    }

    const std::vector<int>& counts() const noexcept { return counts_; }
    int operator[](std::size_t mode) const { return counts_[mode]; }
    std::size_t mode_count() const noexcept { return counts_.size(); }
    int total() const noexcept { return total_; }

    /// Product of count factorials, prod_k v_k!.
    double factorial_product() const {
        double p = 1.0;
        for (int c : counts_) p *= factorial(c);
        return p;
    }

    /// Occupation of a sequence of mode labels (a multiset).
    static OccupationVector from_labels(std::span<const std::size_t> labels, std::size_t modes) {
        std::vector<int> counts(modes, 0);
        for (std::size_t label : labels) {
            if (label >= modes) throw ValidationError("mode label out of range");
            ++counts[label];
        }
        return OccupationVector(std::move(counts));
    }

    friend bool operator==(const OccupationVector& a, const OccupationVector& b) {
        return a.counts_ == b.counts_;
    }
    friend auto operator<=>(const OccupationVector& a, const OccupationVector& b) {
        return a.counts_ <=> b.counts_;
    }

private:
    std::vector<int> counts_;
    int total_ = 0;
};

/// All occupation vectors with fixed (K, N), lexicographically sorted.
class FockBasis {
public:
    FockBasis(std::size_t modes, int photons) : modes_(modes), photons_(photons) {
        if (modes == 0) throw ValidationError("mode count must be at least 1");
        if (photons < 0) throw ValidationError("photon count must be non-negative");
        const std::size_t dim = fock_dimension(modes, photons);
        require_capacity(dim, "Fock basis of dimension C(" + std::to_string(photons + modes - 1) +
                                  ", " + std::to_string(modes - 1) + ")");
        states_.reserve(dim);
        std::vector<int> counts(modes, 0);
        fill(counts, 0, photons);
    }

    std::size_t modes() const noexcept { return modes_; }
    int photons() const noexcept { return photons_; }
    std::size_t size() const noexcept { return states_.size(); }

    const OccupationVector& unrank(std::size_t index) const { return states_.at(index); }
    const OccupationVector& operator[](std::size_t index) const { return states_[index]; }

    std::optional<std::size_t> find(const OccupationVector& v) const {
        if (v.mode_count() != modes_ || v.total() != photons_) return std::nullopt;
        auto it = std::lower_bound(states_.begin(), states_.end(), v);
        if (it == states_.end() || !(*it == v)) return std::nullopt;
        return static_cast<std::size_t>(it - states_.begin());
    }

    std::size_t rank(const OccupationVector& v) const {
        if (auto index = find(v)) return *index;
        throw ValidationError("occupation vector does not belong to this basis");
    }

    auto begin() const { return states_.begin(); }
    auto end() const { return states_.end(); }

private:
    void fill(std::vector<int>& counts, std::size_t mode, int remaining) {
        if (mode + 1 == modes_) {
            counts[mode] = remaining;
            states_.emplace_back(counts);
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[mode] = c;
            fill(counts, mode + 1, remaining - c);
        }
        counts[mode] = 0;
    }

    std::size_t modes_;
    int photons_;
    std::vector<OccupationVector> states_;
};

inline std::vector<OccupationVector> enumerate_basis(std::size_t modes, int photons) {
    FockBasis basis(modes, photons);
    return {basis.begin(), basis.end()};
}

/// A pure N-photon vector in the Fock basis of (K, N).
///
/// A block with no amplitudes is the null vector: the result of annihilating
/// the vacuum. Ladder operators map null to null.
struct PureBlock {
    std::size_t modes = 1;
    int photons = 0;
    ComplexVector amplitudes;

    bool is_null() const noexcept { return amplitudes.size() == 0; }

    static PureBlock null(std::size_t modes) { return PureBlock{modes, 0, ComplexVector()}; }

    static PureBlock basis_state(const OccupationVector& v) {
        FockBasis basis(v.mode_count(), v.total());
        PureBlock block{v.mode_count(), v.total(), ComplexVector::Zero(static_cast<Eigen::Index>(basis.size()))};
        block.amplitudes(static_cast<Eigen::Index>(basis.rank(v))) = 1.0;
        return block;
    }
};

/// a_mode applied to `block`. Amplitude of v moves to v - e_mode with factor sqrt(v_mode).
inline PureBlock apply_annihilation(const PureBlock& block, std::size_t mode) {
    if (mode >= block.modes) throw ValidationError("annihilation mode out of range");
    if (block.is_null() || block.photons == 0) return PureBlock::null(block.modes);
    const FockBasis source(block.modes, block.photons);
    const FockBasis target(block.modes, block.photons - 1);
    if (static_cast<std::size_t>(block.amplitudes.size()) != source.size()) {
        throw ValidationError("amplitude vector does not match Fock basis dimension");
    }
    PureBlock out{block.modes, block.photons - 1,
                  ComplexVector::Zero(static_cast<Eigen::Index>(target.size()))};
    for (std::size_t i = 0; i < source.size(); ++i) {
        const int c = source[i][mode];
        if (c == 0) continue;
        std::vector<int> lowered = source[i].counts();
        --lowered[mode];
        const std::size_t j = target.rank(OccupationVector(std::move(lowered)));
        out.amplitudes(static_cast<Eigen::Index>(j)) +=
            std::sqrt(static_cast<double>(c)) * block.amplitudes(static_cast<Eigen::Index>(i));
    }
    return out;
}

inline PureBlock apply_annihilation(const PureBlock& block, const ModeLabel& mode) {
    if (mode.mode_count() != block.modes) throw ValidationError("mode label does not match block");
    return apply_annihilation(block, mode.flat_index());
}

/// a†_mode applied to `block`. Amplitude of v moves to v + e_mode with factor sqrt(v_mode + 1).
inline PureBlock apply_creation(const PureBlock& block, std::size_t mode) {
    if (mode >= block.modes) throw ValidationError("creation mode out of range");
    if (block.is_null()) return PureBlock::null(block.modes);
    const FockBasis source(block.modes, block.photons);
    const FockBasis target(block.modes, block.photons + 1);
    require_capacity(saturating_square(target.size()), "density block after creation");
    if (static_cast<std::size_t>(block.amplitudes.size()) != source.size()) {
        throw ValidationError("amplitude vector does not match Fock basis dimension");
    }
    PureBlock out{block.modes, block.photons + 1,
                  ComplexVector::Zero(static_cast<Eigen::Index>(target.size()))};
    for (std::size_t i = 0; i < source.size(); ++i) {
        std::vector<int> raised = source[i].counts();
        const int c = raised[mode]++;
        const std::size_t j = target.rank(OccupationVector(std::move(raised)));
        out.amplitudes(static_cast<Eigen::Index>(j)) +=
            std::sqrt(static_cast<double>(c + 1)) * block.amplitudes(static_cast<Eigen::Index>(i));
    }
    return out;
}

inline PureBlock apply_creation(const PureBlock& block, const ModeLabel& mode) {
    if (mode.mode_count() != block.modes) throw ValidationError("mode label does not match block");
    return apply_creation(block, mode.flat_index());
}

/// Removes the multiset `lowered` from v: the action of the annihilation string
/// prod_k a_k^{e_k} on |v>. Returns the target occupation and the coefficient
/// prod_k sqrt(v_k! / (v_k - e_k)!), or nothing when some count would go negative.
inline std::optional<std::pair<OccupationVector, double>> lower(const OccupationVector& v,
                                                                const OccupationVector& lowered) {
    std::vector<int> counts = v.counts();
    double coefficient = 1.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        for (int step = 0; step < lowered[k]; ++step) {
            if (counts[k] == 0) return std::nullopt;
            coefficient *= std::sqrt(static_cast<double>(counts[k]));
            --counts[k];
        }
    }
    return std::make_pair(OccupationVector(std::move(counts)), coefficient);
}

/// Rescales to unit norm, then zeroes amplitudes below `tolerance` and rescales again.
/// Throws DomainError for a vector whose norm is below 1e-12.
inline ComplexVector normalize_amplitudes(ComplexVector amplitudes, double tolerance = 1e-14) {
    const double norm = amplitudes.norm();
    if (!(norm > 1e-12)) throw DomainError("null state: amplitudes cannot be normalized");
    amplitudes /= norm;
    for (auto& a : amplitudes) {
        if (std::abs(a) < tolerance) a = 0.0;
    }
    return amplitudes / amplitudes.norm();
}

}  // namespace vlc
