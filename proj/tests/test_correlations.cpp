#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "vlc/correlations.hpp"

using namespace vlc;

namespace {

const std::vector<std::size_t> x{0}, y{1};

using fixtures::sample_state;
using fixtures::single_photon;

}  // namespace

TEST(CrossSpectralDensity, SinglePhoton) {
    const auto s = single_photon(4, 2);
    const std::vector<std::size_t> k{2}, other{3};
    EXPECT_NEAR(std::abs(cross_spectral_density(s, k, k) - 1.0), 0.0, 1e-15);
    EXPECT_EQ(cross_spectral_density(s, k, other), Complex(0.0));
    EXPECT_EQ(cross_spectral_density(s, other, other), Complex(0.0));
}

TEST(CrossSpectralDensity, TwoPhotonIntensity) {
    const Complex c1(0.3, 0.4), c2(-0.5, 0.1), c3(0.2, -0.6);
    const auto s = two_photon_example(c1, c2, c3);
    const double norm = std::norm(c1) + std::norm(c2) + std::norm(c3);
    EXPECT_NEAR(cross_spectral_density(s, x, x).real(), (2 * std::norm(c1) + std::norm(c3)) / norm, 1e-14);
}

TEST(CrossSpectralDensity, PairCoincidence) {
    const auto s = two_photon_example(0.0, 0.0, 1.0);
    const std::vector<std::size_t> xy{0, 1};
    EXPECT_NEAR(std::abs(cross_spectral_density(s, xy, xy) - 1.0), 0.0, 1e-15);
}

TEST(CrossSpectralDensity, ValidatesLabels) {
    const auto s = single_photon(2, 0);
    const std::vector<std::size_t> bad{2};
    EXPECT_THROW(cross_spectral_density(s, bad, x), ValidationError);
    const std::vector<std::size_t> two{0, 1};
    EXPECT_THROW(cross_spectral_density(s, two, x), ValidationError);
}

TEST(CrossSpectralDensity, MatchesOperatorMatrices) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = sample_state(seed, 3, 3);
        for (int order = 1; order <= 2; ++order) {
            const ComplexMatrix expected = oracle::reduced_density_matrix(s, order);
            const ComplexMatrix actual = reduced_density_matrix(s, order).matrix;
            EXPECT_LT(max_abs_difference(actual, expected), 1e-12) << "seed " << seed << " n " << order;
        }
    }
}

TEST(CrossSpectralDensity, HermitianPairing) {
    const auto s = sample_state(17, 4, 3);
    const std::vector<std::size_t> a{0, 3}, b{2, 1};
    EXPECT_LT(std::abs(cross_spectral_density(s, a, b) - std::conj(cross_spectral_density(s, b, a))), 1e-14);
}

TEST(ReducedDensityMatrix, TwoPhotonOnePhotonMatrix) {
    const Complex c1(0.3, 0.4), c2(-0.5, 0.1), c3(0.2, -0.6);
    const double norm = std::sqrt(std::norm(c1) + std::norm(c2) + std::norm(c3));
    const Complex a = c1 / norm, b = c2 / norm, c = c3 / norm;
    const auto s = two_photon_example(c1, c2, c3);

    ComplexMatrix expected(2, 2);
    expected(0, 0) = 2 * std::norm(a) + std::norm(c);
    expected(1, 1) = 2 * std::norm(b) + std::norm(c);
    expected(0, 1) = std::sqrt(2.0) * (a * std::conj(c) + c * std::conj(b));
    expected(1, 0) = std::conj(expected(0, 1));

    const auto second = reduced_density_matrix(s, 1);
    const auto first = reduced_density_matrix_oracle(s, 1);
    EXPECT_LT(max_abs_difference(second.matrix, expected), 1e-14);
    EXPECT_LT(max_abs_difference(first.matrix, expected), 1e-14);
    EXPECT_NEAR(second.matrix.trace().real(), 2.0, 1e-14);
    EXPECT_DOUBLE_EQ(second.trace_value, 2.0);
}

TEST(ReducedDensityMatrix, PartialTraceOfRescaledTwoPhotonMatrix) {
    // sum_k rho^(2)_{i k, j k} = <a†_j a_i>, the one-photon reduction of the pair matrix.
    const auto s = two_photon_example(Complex(0.1, 0.7), 0.4, Complex(0.0, -0.5));
    const auto block = pure_components(2, 2, s.blocks().at(2).density).front().second;
    const ComplexMatrix rho2 = rescaled_first_quantized_matrix(block);
    const ComplexMatrix one = reduced_density_matrix(s, 1).matrix;
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            const Complex traced = rho2(2 * i + 0, 2 * j + 0) + rho2(2 * i + 1, 2 * j + 1);
            EXPECT_LT(std::abs(traced - one(i, j)), 1e-14);
        }
    }
    // rho^(2)_{i1 i2, j1 j2} = <a†_j1 a†_j2 a_i1 a_i2>
    const ComplexMatrix two = reduced_density_matrix(s, 2).matrix;
    EXPECT_LT(max_abs_difference(rho2, two), 1e-14);
}

TEST(ReducedDensityMatrix, TwoPhotonPairMatrixIsPure) {
    const double c = 1.0 / std::sqrt(3.0);
    const auto s = two_photon_example(c, c, c);
    const auto two = reduced_density_matrix(s, 2);
    ComplexVector v(4);
    v << std::sqrt(2.0) * c, c, c, std::sqrt(2.0) * c;
    EXPECT_LT(max_abs_difference(two.matrix, v * v.adjoint()), 1e-14);
}

TEST(ReducedDensityMatrix, VanishingCases) {
    const auto vacuum = pure_state(4, 0, {{OccupationVector({0, 0, 0, 0}), 1.0}});
    EXPECT_EQ(reduced_density_matrix(vacuum, 1).matrix.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(reduced_density_matrix(vacuum, 2).matrix.cwiseAbs().maxCoeff(), 0.0);
    const auto one = single_photon(4, 1);
    EXPECT_EQ(reduced_density_matrix(one, 2).matrix.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(reduced_density_matrix_oracle(one, 2).matrix.cwiseAbs().maxCoeff(), 0.0);
}

TEST(ReducedDensityMatrix, PairStateRoutesAgree) {
    const auto s = two_photon_example(0.0, 0.0, 1.0);
    EXPECT_LT(max_abs_difference(reduced_density_matrix(s, 2).matrix, reduced_density_matrix_oracle(s, 2).matrix),
              1e-12);
}

TEST(ReducedDensityMatrix, RoutesAgreeOnRandomMixedStates) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto s = sample_state(seed, 4, 3);
        for (int order = 1; order <= 2; ++order) {
            const auto second = reduced_density_matrix(s, order);
            const auto first = reduced_density_matrix_oracle(s, order);
            EXPECT_LT(max_abs_difference(second.matrix, first.matrix), 1e-11) << "seed " << seed;
        }
    }
}

TEST(ReducedDensityMatrix, Invariants) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto s = sample_state(seed, 4, 3);
        for (int order = 1; order <= 3; ++order) {
            const auto r = reduced_density_matrix(s, order);
            EXPECT_LT(hermiticity_error(r.matrix), 1e-12);
            EXPECT_GE(min_eigenvalue(r.matrix), -1e-10);
            EXPECT_NEAR(r.matrix.trace().real(), s.factorial_moment(order), 1e-12 * std::max(1.0, r.trace_value));
            if (order == 1) EXPECT_NEAR(r.matrix.trace().real(), s.mean_photon_number(), 1e-12);

            // Exchange symmetry: permute photon slots identically on both sides.
            const LabelTuples tuples(4, order);
            std::vector<std::size_t> perm(static_cast<std::size_t>(order));
            std::iota(perm.begin(), perm.end(), 0);
            do {
                double deviation = 0.0;
                for (std::size_t i = 0; i < tuples.count(); ++i) {
                    for (std::size_t j = 0; j < tuples.count(); ++j) {
                        auto li = tuples.labels(i), lj = tuples.labels(j);
                        std::vector<std::size_t> pi(li.size()), pj(lj.size());
                        for (std::size_t a = 0; a < perm.size(); ++a) {
                            pi[a] = li[perm[a]];
                            pj[a] = lj[perm[a]];
                        }
                        deviation = std::max(
                            deviation,
                            std::abs(r.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                                     r.matrix(static_cast<Eigen::Index>(tuples.flat(pi)),
                                              static_cast<Eigen::Index>(tuples.flat(pj)))));
                    }
                }
                EXPECT_LT(deviation, 1e-12);
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
    }
}

TEST(ReducedDensityMatrix, CapacityError) {
    const auto s = single_photon(8, 0);
    const ScopedSizeCap cap(1000);
    EXPECT_THROW(reduced_density_matrix(s, 2), CapacityError);  // 64^2 elements
    EXPECT_THROW(reduced_density_matrix_oracle(s, 2), CapacityError);
}
