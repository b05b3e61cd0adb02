#pragma once

// Block-diagonal multiphoton states rho = sum_N p_N rho^(N), their constructors,
// and the symmetrized first-quantized expansion of pure blocks.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "vlc/fock.hpp"

namespace vlc {

inline constexpr double kProbabilityTolerance = 1e-12;
inline constexpr double kBlockTolerance = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kPureComponentCutoff = 1e-12;
inline constexpr int kDefaultMixtureRank = 3;

/// One fixed-photon-number component of a state.
struct PhotonBlock {
    double probability = 0.0;
    ComplexMatrix density;  // unit trace, Hermitian, PSD, over FockBasis(K, N)
};

class MultiphotonState {
public:
    /// Validates and stores the blocks. Blocks with zero probability are dropped.
    MultiphotonState(std::size_t modes, std::map<int, PhotonBlock> blocks) : modes_(modes) {
        if (modes == 0) throw ValidationError("state needs at least one mode");
        if (blocks.empty()) throw ValidationError("state needs at least one photon-number block");
        double total = 0.0;
        for (auto& [photons, block] : blocks) {
            if (photons < 0) throw ValidationError("negative photon number in state block");
            if (!(block.probability >= 0.0)) {
                throw ValidationError("block probability for N=" + std::to_string(photons) +
                                      " is negative");
            }
            total += block.probability;
        }
        if (std::abs(total - 1.0) > kProbabilityTolerance) {
            throw ValidationError("block probabilities sum to " + std::to_string(total) +
                                  ", expected 1");
        }
        for (auto& [photons, block] : blocks) {
            if (block.probability == 0.0) continue;
            validate_block(photons, block.density);
            blocks_.emplace(photons, std::move(block));
        }
    }

    std::size_t modes() const noexcept { return modes_; }
    const std::map<int, PhotonBlock>& blocks() const noexcept { return blocks_; }

    double probability(int photons) const {
        auto it = blocks_.find(photons);
        return it == blocks_.end() ? 0.0 : it->second.probability;
    }

    int max_photons() const noexcept { return blocks_.rbegin()->first; }

    double mean_photon_number() const {
        double mean = 0.0;
        for (const auto& [photons, block] : blocks_) mean += block.probability * photons;
        return mean;
    }

    /// sum_N p_N N!/(N-n)!, the trace of the reduced n-photon matrix.
    double factorial_moment(int order) const {
        double moment = 0.0;
        for (const auto& [photons, block] : blocks_) {
            if (photons < order) continue;
            moment += block.probability * factorial(photons) / factorial(photons - order);
        }
        return moment;
    }

    bool is_vacuum() const { return max_photons() == 0; }

private:
    void validate_block(int photons, const ComplexMatrix& density) const {
        const std::size_t dim = fock_dimension(modes_, photons);
        require_capacity(saturating_square(dim), "density block for N=" + std::to_string(photons));
        const auto d = static_cast<Eigen::Index>(dim);
        const std::string where = "block N=" + std::to_string(photons);
        if (density.rows() != d || density.cols() != d) {
            throw ValidationError(where + " has shape " + std::to_string(density.rows()) + "x" +
                                  std::to_string(density.cols()) + ", expected " +
                                  std::to_string(dim) + "x" + std::to_string(dim));
        }
        if ((density - density.adjoint()).cwiseAbs().maxCoeff() > kBlockTolerance) {
            throw ValidationError(where + " is not Hermitian");
        }
        if (std::abs(density.trace() - Complex(1.0)) > kBlockTolerance) {
            throw ValidationError(where + " does not have unit trace");
        }
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(density, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
            throw ValidationError(where + " is not positive semidefinite");
        }
    }

    std::size_t modes_;
    std::map<int, PhotonBlock> blocks_;
};

/// Pure state with one block, from a normalizable Fock amplitude vector.
inline MultiphotonState pure_state(const PureBlock& block) {
    if (block.is_null()) throw DomainError("null state: cannot build a state from the null vector");
    const FockBasis basis(block.modes, block.photons);
    require_capacity(saturating_square(basis.size()), "density block for N=" + std::to_string(block.photons));
    if (static_cast<std::size_t>(block.amplitudes.size()) != basis.size()) {
        throw ValidationError("amplitude vector does not match Fock basis dimension");
    }
    const ComplexVector psi = normalize_amplitudes(block.amplitudes);
    std::map<int, PhotonBlock> blocks;
    blocks.emplace(block.photons, PhotonBlock{1.0, psi * psi.adjoint()});
    return MultiphotonState(block.modes, std::move(blocks));
}

/// Pure state from amplitudes keyed by occupation vector; every key must have N photons.
inline MultiphotonState pure_state(std::size_t modes, int photons,
                                   const std::vector<std::pair<OccupationVector, Complex>>& amplitudes) {
    const FockBasis basis(modes, photons);
    PureBlock block{modes, photons, ComplexVector::Zero(static_cast<Eigen::Index>(basis.size()))};
    std::vector<bool> seen(basis.size(), false);
    for (const auto& [occupation, amplitude] : amplitudes) {
        if (occupation.mode_count() != modes) {
            throw ValidationError("occupation vector has " + std::to_string(occupation.mode_count()) +
                                  " modes, expected " + std::to_string(modes));
        }
        if (occupation.total() != photons) {
            throw ValidationError("occupation vector holds " + std::to_string(occupation.total()) +
                                  " photons, expected " + std::to_string(photons));
        }
        const std::size_t index = basis.rank(occupation);
        if (seen[index]) throw ValidationError("duplicate occupation vector in amplitudes");
        seen[index] = true;
        block.amplitudes(static_cast<Eigen::Index>(index)) = amplitude;
    }
    return pure_state(block);
}

/// Convex combination sum_i w_i rho_i with weights renormalized to unit sum.
inline MultiphotonState mix(const std::vector<std::pair<double, MultiphotonState>>& components) {
    if (components.empty()) throw ValidationError("mix needs at least one component");
    const std::size_t modes = components.front().second.modes();
    double total = 0.0;
    for (const auto& [weight, state] : components) {
        if (!(weight >= 0.0)) throw ValidationError("mix weights must be non-negative");
        if (state.modes() != modes) throw ValidationError("mix components have different mode counts");
        total += weight;
    }
    if (!(total > 0.0)) throw ValidationError("mix weights are all zero");

    std::map<int, PhotonBlock> blocks;
    for (const auto& [weight, state] : components) {
        const double w = weight / total;
        if (w == 0.0) continue;
        for (const auto& [photons, block] : state.blocks()) {
            auto [it, inserted] = blocks.try_emplace(photons);
            const double q = w * block.probability;
            if (inserted) {
                it->second.density = q * block.density;
            } else {
                it->second.density += q * block.density;
            }
            it->second.probability += q;
        }
    }
    double sum = 0.0;
    for (auto& [photons, block] : blocks) {
        block.density /= block.probability;
        sum += block.probability;
    }
    for (auto& [photons, block] : blocks) block.probability /= sum;
    return MultiphotonState(modes, std::move(blocks));
}

/// Maps a state on k modes into a larger K-mode space; mode i goes to target_modes[i].
inline MultiphotonState embed(const MultiphotonState& state, std::size_t modes,
                              const std::vector<std::size_t>& target_modes) {
    if (target_modes.size() != state.modes()) {
        throw ValidationError("embedding needs one target mode per source mode");
    }
    std::vector<bool> used(modes, false);
    for (std::size_t target : target_modes) {
        if (target >= modes || used[target]) throw ValidationError("embedding targets must be distinct and in range");
        used[target] = true;
    }
    std::map<int, PhotonBlock> blocks;
    for (const auto& [photons, block] : state.blocks()) {
        const FockBasis small(state.modes(), photons);
        const FockBasis large(modes, photons);
        require_capacity(saturating_square(large.size()), "embedded density block");
        std::vector<Eigen::Index> index(small.size());
        for (std::size_t i = 0; i < small.size(); ++i) {
            std::vector<int> counts(modes, 0);
            for (std::size_t k = 0; k < state.modes(); ++k) counts[target_modes[k]] = small[i][k];
            index[i] = static_cast<Eigen::Index>(large.rank(OccupationVector(std::move(counts))));
        }
        const auto d = static_cast<Eigen::Index>(large.size());
        ComplexMatrix density = ComplexMatrix::Zero(d, d);
        for (std::size_t i = 0; i < small.size(); ++i) {
            for (std::size_t j = 0; j < small.size(); ++j) {
                density(index[i], index[j]) =
                    block.density(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
        blocks.emplace(photons, PhotonBlock{block.probability, std::move(density)});
    }
    return MultiphotonState(modes, std::move(blocks));
}

/// C1|2,0> + C2|0,2> + C3|1,1> on modes (x, y) of a K-mode space; normalized.
inline MultiphotonState two_photon_example(Complex c1, Complex c2, Complex c3, std::size_t modes = 2,
                                           std::size_t mode_x = 0, std::size_t mode_y = 1) {
    const MultiphotonState two_mode = pure_state(
        2, 2,
        {{OccupationVector({2, 0}), c1}, {OccupationVector({0, 2}), c2}, {OccupationVector({1, 1}), c3}});
    if (modes == 2 && mode_x == 0 && mode_y == 1) return two_mode;
    return embed(two_mode, modes, {mode_x, mode_y});
}

/// Spectral decomposition of a density block into weighted pure components.
/// Eigenvalues below 1e-12 are dropped.
inline std::vector<std::pair<double, PureBlock>> pure_components(std::size_t modes, int photons,
                                                                 const ComplexMatrix& density) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(density);
    std::vector<std::pair<double, PureBlock>> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double weight = solver.eigenvalues()(i);
        if (weight < kPureComponentCutoff) continue;
        out.emplace_back(weight, PureBlock{modes, photons, solver.eigenvectors().col(i)});
    }
    return out;
}

/// Amplitudes psi(i_1, ..., i_N) of a symmetric N-photon tensor over K modes.
/// Flat index is row-major: photon 1 is the most significant digit.
struct FirstQuantizedTensor {
    int photons = 0;
    std::size_t modes = 1;
    ComplexVector amplitudes;

    std::size_t flat_index(std::span<const std::size_t> labels) const {
        std::size_t index = 0;
        for (std::size_t label : labels) index = index * modes + label;
        return index;
    }

    std::vector<std::size_t> labels(std::size_t flat) const {
        std::vector<std::size_t> out(static_cast<std::size_t>(photons));
        for (std::size_t a = out.size(); a-- > 0;) {
            out[a] = flat % modes;
            flat /= modes;
        }
        return out;
    }

    Complex operator()(std::span<const std::size_t> labels) const {
        return amplitudes(static_cast<Eigen::Index>(flat_index(labels)));
    }
};

/// Symmetrized expansion: psi(i_1..i_N) = c_v * sqrt(prod_k v_k! / N!), v the occupation of the sequence.
inline FirstQuantizedTensor to_first_quantized(const PureBlock& block) {
    if (block.is_null()) throw DomainError("null state has no first-quantized expansion");
    const FockBasis basis(block.modes, block.photons);
    if (static_cast<std::size_t>(block.amplitudes.size()) != basis.size()) {
        throw ValidationError("amplitude vector does not match Fock basis dimension");
    }
    const std::size_t size = int_pow(block.modes, static_cast<std::size_t>(block.photons));
    require_capacity(size, "first-quantized tensor");
    FirstQuantizedTensor tensor{block.photons, block.modes,
                                ComplexVector::Zero(static_cast<Eigen::Index>(size))};
    const double n_factorial = factorial(block.photons);
    for (std::size_t flat = 0; flat < size; ++flat) {
        const auto labels = tensor.labels(flat);
        const OccupationVector v = OccupationVector::from_labels(labels, block.modes);
        const Complex c = block.amplitudes(static_cast<Eigen::Index>(basis.rank(v)));
        tensor.amplitudes(static_cast<Eigen::Index>(flat)) = c * std::sqrt(v.factorial_product() / n_factorial);
    }
    return tensor;
}

/// The N-photon block of `state` as a first-quantized tensor; the block must be pure.
inline FirstQuantizedTensor to_first_quantized(const MultiphotonState& state, int photons) {
    auto it = state.blocks().find(photons);
    if (it == state.blocks().end()) throw ValidationError("state has no block with N=" + std::to_string(photons));
    auto components = pure_components(state.modes(), photons, it->second.density);
    if (components.size() != 1 || std::abs(components.front().first - 1.0) > kBlockTolerance) {
        throw DomainError("first-quantized expansion requires pure block");
    }
    return to_first_quantized(components.front().second);
}

/// Inverse of to_first_quantized: c_v = sqrt(prod v_k!/N!) * sum over sequences with occupation v.
inline PureBlock from_first_quantized(const FirstQuantizedTensor& tensor) {
    const FockBasis basis(tensor.modes, tensor.photons);
    PureBlock block{tensor.modes, tensor.photons, ComplexVector::Zero(static_cast<Eigen::Index>(basis.size()))};
    const double n_factorial = factorial(tensor.photons);
    for (Eigen::Index flat = 0; flat < tensor.amplitudes.size(); ++flat) {
        const auto labels = tensor.labels(static_cast<std::size_t>(flat));
        const OccupationVector v = OccupationVector::from_labels(labels, tensor.modes);
        block.amplitudes(static_cast<Eigen::Index>(basis.rank(v))) +=
            tensor.amplitudes(flat) * std::sqrt(v.factorial_product() / n_factorial);
    }
    return block;
}

struct RandomStateSpec {
    std::vector<int> photon_numbers;  // support of p_N
    std::vector<double> weights;      // p_N; empty draws uniformly on the simplex
    int mixture_rank = 1;             // pure components per block; 1 gives pure blocks
};

namespace detail {

inline ComplexVector random_unit_vector(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (auto& x : v) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        x = Complex(re, im);
    }
    return v / v.norm();
}

inline std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t size) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(size);
    double total = 0.0;
    for (auto& x : w) {
        x = expo(rng);
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

}  // namespace detail

/// Seeded random state. Pure components are Haar-uniform on each block's unit sphere;
/// block probabilities and component weights are uniform on the simplex unless given.
inline MultiphotonState random_state(std::uint64_t seed, std::size_t modes, const RandomStateSpec& spec) {
    if (spec.photon_numbers.empty()) throw ValidationError("random state needs a photon-number support");
    if (spec.mixture_rank < 1) throw ValidationError("mixture rank must be at least 1");
    if (!spec.weights.empty() && spec.weights.size() != spec.photon_numbers.size()) {
        throw ValidationError("random state weights must match the photon-number support");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> probabilities = spec.weights;
    if (probabilities.empty()) {
        probabilities = detail::random_simplex(rng, spec.photon_numbers.size());
    } else {
        double total = 0.0;
        for (double w : probabilities) {
            if (!(w >= 0.0)) throw ValidationError("random state weights must be non-negative");
            total += w;
        }
        if (!(total > 0.0)) throw ValidationError("random state weights are all zero");
        for (double& w : probabilities) w /= total;
    }

    std::map<int, PhotonBlock> blocks;
    for (std::size_t b = 0; b < spec.photon_numbers.size(); ++b) {
        const int photons = spec.photon_numbers[b];
        const std::size_t dim = FockBasis(modes, photons).size();
        require_capacity(saturating_square(dim), "random density block for N=" + std::to_string(photons));
        const auto d = static_cast<Eigen::Index>(dim);
        ComplexMatrix density = ComplexMatrix::Zero(d, d);
        const auto rank = static_cast<std::size_t>(spec.mixture_rank);
        const std::vector<double> mixture =
            rank == 1 ? std::vector<double>{1.0} : detail::random_simplex(rng, rank);
        for (double w : mixture) {
            const ComplexVector psi = detail::random_unit_vector(rng, dim);
            density += w * psi * psi.adjoint();
        }
        density = 0.5 * (density + density.adjoint()).eval();
        density /= density.trace().real();
        auto [it, inserted] = blocks.try_emplace(photons, PhotonBlock{0.0, ComplexMatrix::Zero(d, d)});
        if (!inserted) throw ValidationError("duplicate photon number in random state support");
        it->second = PhotonBlock{probabilities[b], std::move(density)};
    }
    // Re-normalize probabilities to absorb round-off from the simplex draw.
    double total = 0.0;
    for (const auto& [photons, block] : blocks) total += block.probability;
    for (auto& [photons, block] : blocks) block.probability /= total;
    return MultiphotonState(modes, std::move(blocks));
}

}  // namespace vlc
