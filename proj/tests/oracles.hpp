#pragma once

// Test-only reference implementations. Nothing here calls into the lowering
// tables or the recursive basis generator of the library.

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "vlc/states.hpp"

namespace vlc::oracle {

/// Every vector in [0..N]^K with sum N, sorted.
inline std::vector<std::vector<int>> brute_force_basis(std::size_t modes, int photons) {
    std::vector<std::vector<int>> out;
    std::vector<int> counts(modes, 0);
    const std::size_t base = static_cast<std::size_t>(photons) + 1;
    std::size_t total = 1;
    for (std::size_t k = 0; k < modes; ++k) total *= base;
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        int sum = 0;
        for (std::size_t k = modes; k-- > 0;) {
            counts[k] = static_cast<int>(c % base);
            c /= base;
            sum += counts[k];
        }
        if (sum == photons) out.push_back(counts);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Dense matrix of a_mode from the N-photon to the (N-1)-photon space.
inline Eigen::MatrixXcd annihilation_matrix(std::size_t modes, int photons, std::size_t mode) {
    const auto from = brute_force_basis(modes, photons);
    const auto to = brute_force_basis(modes, photons - 1);
    std::map<std::vector<int>, Eigen::Index> index;
    for (std::size_t i = 0; i < to.size(); ++i) index[to[i]] = static_cast<Eigen::Index>(i);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(to.size()),
                                                static_cast<Eigen::Index>(from.size()));
    for (std::size_t j = 0; j < from.size(); ++j) {
        std::vector<int> v = from[j];
        if (v[mode] == 0) continue;
        const double c = std::sqrt(static_cast<double>(v[mode]));
        --v[mode];
        a(index.at(v), static_cast<Eigen::Index>(j)) = c;
    }
    return a;
}

/// Product a_{l_1} a_{l_2} ... a_{l_n} acting on the N-photon space.
inline Eigen::MatrixXcd annihilation_string(std::size_t modes, int photons, const std::vector<std::size_t>& labels) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(
        static_cast<Eigen::Index>(brute_force_basis(modes, photons).size()),
        static_cast<Eigen::Index>(brute_force_basis(modes, photons).size()));
    int current = photons;
    // Rightmost operator acts first.
    for (std::size_t a = labels.size(); a-- > 0;) {
        out = annihilation_matrix(modes, current, labels[a]) * out;
        --current;
    }
    return out;
}

/// tr[rho a†_{c_1}..a†_{c_n} a_{i_1}..a_{i_n}] with explicit operator matrices.
inline std::complex<double> cross_spectral_density(const MultiphotonState& state,
                                                   const std::vector<std::size_t>& creation,
                                                   const std::vector<std::size_t>& annihilation) {
    std::complex<double> sum = 0.0;
    const int order = static_cast<int>(creation.size());
    for (const auto& [photons, block] : state.blocks()) {
        if (photons < order) continue;
        const Eigen::MatrixXcd a_i = annihilation_string(state.modes(), photons, annihilation);
        // (a†_{c_1}..a†_{c_n}) = (a_{c_n}..a_{c_1})†; the a's commute so the order is immaterial.
        const Eigen::MatrixXcd a_c = annihilation_string(state.modes(), photons, creation);
        sum += block.probability * (block.density * a_c.adjoint() * a_i).trace();
    }
    return sum;
}

/// Reduced n-photon matrix assembled element by element from the operator oracle.
inline Eigen::MatrixXcd reduced_density_matrix(const MultiphotonState& state, int order) {
    const std::size_t modes = state.modes();
    std::size_t count = 1;
    for (int a = 0; a < order; ++a) count *= modes;
    auto labels = [&](std::size_t flat) {
        std::vector<std::size_t> out(static_cast<std::size_t>(order));
        for (std::size_t a = out.size(); a-- > 0;) {
            out[a] = flat % modes;
            flat /= modes;
        }
        return out;
    };
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                cross_spectral_density(state, labels(j), labels(i));
        }
    }
    return out;
}

}  // namespace vlc::oracle
