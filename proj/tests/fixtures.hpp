#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "vlc/states.hpp"

namespace vlc::fixtures {

inline MultiphotonState single_photon(std::size_t modes, std::size_t mode) {
    std::vector<int> counts(modes, 0);
    counts[mode] = 1;
    return pure_state(modes, 1, {{OccupationVector(counts), 1.0}});
}

/// (|mode_a> + phase |mode_b>)/sqrt(2) for one photon.
inline MultiphotonState even_superposition(std::size_t modes, std::size_t mode_a, std::size_t mode_b,
                                           Complex phase = 1.0) {
    std::vector<int> a(modes, 0), b(modes, 0);
    a[mode_a] = 1;
    b[mode_b] = 1;
    return pure_state(modes, 1, {{OccupationVector(a), 1.0}, {OccupationVector(b), phase}});
}

/// Random state on K modes; support subset of {0..max_photons} containing max_photons,
/// pure blocks for even seeds and rank-3 mixtures for odd seeds.
inline MultiphotonState sample_state(std::uint64_t seed, std::size_t modes, int max_photons) {
    std::vector<int> support;
    for (int n = 1; n <= max_photons; ++n) {
        if (((seed >> n) & 1u) != 0 || n == max_photons) support.push_back(n);
    }
    if (seed % 5 == 0) support.insert(support.begin(), 0);
    return random_state(seed, modes, {support, {}, seed % 2 == 0 ? 1 : kDefaultMixtureRank});
}

/// Random two-slit state with one active mode per slit: slit m uses polarization choice[m].
inline MultiphotonState sample_double_slit_state(std::uint64_t seed, int max_photons) {
    const MultiphotonState two_mode = sample_state(seed, 2, max_photons);
    const std::size_t s1 = (seed >> 3) & 1u;
    const std::size_t s2 = (seed >> 4) & 1u;
    return embed(two_mode, 4, {s1, 2 + s2});
}

}  // namespace vlc::fixtures
