#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gmin/symmetry_blocks.hpp"

using namespace gmin;

namespace {

void expect_same_spectrum(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << i;
}

double hermitian_defect(const CMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Character, Values) {
    const auto g4 = GroupSpec::add_mod_n(2);
    for (GroupIndex x = 0; x < 4; ++x) EXPECT_NEAR(std::abs(character(g4, 0, x) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(character(g4, 1, 1) - std::complex<double>(0, 1)), 0.0, 1e-15);
    for (int n = 1; n <= 4; ++n) {
        const auto g = GroupSpec::add_mod_n(n);
        for (std::uint64_t a = 0; a < g.order; ++a)
            for (GroupIndex x1 = 0; x1 < g.order; ++x1)
                for (GroupIndex x2 = 0; x2 < g.order; ++x2)
                    EXPECT_NEAR(std::abs(character(g, a, x1) * character(g, a, x2) -
                                         character(g, a, (x1 + x2) % g.order)),
                                0.0, 1e-12);
    }
}

TEST(Character, NonCyclicRejected) {
    const auto g = GroupSpec::two_generator(3, {1, 0, 3, 2, 5, 4, 7, 6}, {2, 3, 0, 1, 6, 7, 4, 5});
    ASSERT_FALSE(g.is_cyclic());
    EXPECT_THROW(character(g, 0, 0), ContractError);
}

TEST(Blocks, CycleAdjacencyIsOneByOne) {
    for (int n = 3; n <= 8; ++n) {
        const std::uint64_t N = std::uint64_t{1} << n;
        const ProblemInstance inst{GroupSpec::add_mod_n(n)};
        const CMatrix h = cycle_adjacency(N);
        std::vector<double> values;
        for (std::uint64_t a = 0; a < N; ++a) {
            const auto b = build_block(h, inst, a);
            ASSERT_EQ(b.matrix.rows(), 1);
            EXPECT_NEAR(b.norms[0], 1.0 / std::sqrt(double(N)), 1e-15);
            EXPECT_NEAR(b.matrix(0, 0).imag(), 0.0, 1e-10);
            // Circulant eigenvalue 2 cos(2 pi a / N).
            EXPECT_NEAR(b.matrix(0, 0).real(), 2 * std::cos(2 * std::numbers::pi * a / N), 1e-10);
            values.push_back(b.matrix(0, 0).real());
        }
        EXPECT_NEAR(build_block(h, inst, 0).matrix(0, 0).real(), 2.0, 1e-12);
        std::sort(values.begin(), values.end());
        expect_same_spectrum(values, dense_spectrum(h), 1e-10);
        expect_same_spectrum(block_spectrum_union(h, inst), dense_spectrum(h), 1e-10);
    }
}

TEST(Blocks, SpinChainsPreserveSpectrum) {
    for (int sites = 4; sites <= 8; ++sites)
        for (const char* name : {"xy", "heisenberg"}) {
            const ProblemInstance inst{GroupSpec::spin_translation(sites)};
            const CMatrix h = test_hamiltonian(name, sites);
            EXPECT_LT(hermitian_defect(h), 1e-14);
            expect_same_spectrum(block_spectrum_union(h, inst), dense_spectrum(h), 1e-8);
            for (std::uint64_t a = 0; a < inst.group.order; ++a)
                EXPECT_LT(hermitian_defect(build_block(h, inst, a).matrix), 1e-10) << name << " a=" << a;
        }
}

TEST(Blocks, OrbitSumMatchesProjectedConstruction) {
    for (int sites = 4; sites <= 6; ++sites) {
        const ProblemInstance inst{GroupSpec::spin_translation(sites)};
        const CMatrix h = heisenberg_chain(sites);
        for (std::uint64_t a = 0; a < inst.group.order; ++a) {
            const auto fast = build_block(h, inst, a);
            const auto slow = build_block_projected(h, inst, a);
            ASSERT_EQ(fast.representatives, slow.representatives) << "a=" << a;
            for (std::size_t i = 0; i < fast.norms.size(); ++i) EXPECT_NEAR(fast.norms[i], slow.norms[i], 1e-12);
            EXPECT_LT((fast.matrix - slow.matrix).cwiseAbs().maxCoeff(), 1e-10);
        }
    }
}

TEST(Blocks, NonFreeOrbitsDropZeroNormStates) {
    // 4 sites: 0000 has stabilizer 4 and survives only in alpha = 0;
    // 0101 has stabilizer 2 and survives in alpha = 0 and 2.
    const ProblemInstance inst{GroupSpec::spin_translation(4)};
    const CMatrix h = xy_chain(4);
    auto has = [](const SymmetryBlock& b, Label v) {
        return std::find(b.representatives.begin(), b.representatives.end(), v) != b.representatives.end();
    };
    EXPECT_TRUE(has(build_block(h, inst, 0), 0));
    EXPECT_FALSE(has(build_block(h, inst, 1), 0));
    EXPECT_TRUE(has(build_block(h, inst, 2), 5));
    EXPECT_FALSE(has(build_block(h, inst, 3), 5));
    std::size_t total = 0;
    for (std::uint64_t a = 0; a < 4; ++a) total += build_block(h, inst, a).representatives.size();
    EXPECT_EQ(total, 16u);
}

TEST(Blocks, RelabelingOnlyChangesPhases) {
    // Conjugating with a diagonal phase keeps the spectrum of every block.
    const ProblemInstance inst{GroupSpec::add_mod_n(4)};
    const CMatrix h = cycle_adjacency(16);
    const CMatrix p = build_block_projected(h, inst, 3).matrix;
    EXPECT_NEAR(p(0, 0).real(), build_block(h, inst, 3).matrix(0, 0).real(), 1e-12);
    // Build from the non-minimal label 5 as the orbit seed.
    Eigen::VectorXcd vec = Eigen::VectorXcd::Zero(16);
    for (GroupIndex x = 0; x < 16; ++x) vec[(x + 5) % 16] += std::conj(character(inst.group, 3, x));
    vec.normalize();
    const std::complex<double> e = vec.adjoint() * h * vec;
    EXPECT_NEAR(e.real(), p(0, 0).real(), 1e-10);
}

TEST(Blocks, AsymmetricMatrixRejected) {
    const ProblemInstance inst{GroupSpec::add_mod_n(3)};
    CMatrix h = cycle_adjacency(8);
    h(0, 0) = 1.0;
    try {
        build_block(h, inst, 0);
        FAIL() << "expected SymmetryError";
    } catch (const SymmetryError& e) {
        EXPECT_NE(std::string(e.what()).find("generator index 1"), std::string::npos);
    }
    EXPECT_THROW(build_block(cycle_adjacency(16), inst, 0), ContractError);
    EXPECT_THROW(test_hamiltonian("ising", 4), ContractError);
}
