#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gmin/groups.hpp"

namespace gmin {

using CMatrix = Eigen::MatrixXcd;

/// Raised when a matrix does not commute with the group action.
class SymmetryError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// exp(2 pi i alpha x / |G|); cyclic groups only.
std::complex<double> character(const GroupSpec& group, std::uint64_t alpha, GroupIndex x);

struct SymmetryBlock {
    std::uint64_t alpha = 0;
    std::vector<Label> representatives;  ///< orbit minima whose projected state survives
    CMatrix matrix;
    std::vector<double> norms;  ///< 1 / |sum_x chi*(x) g(x)|v>|, per representative
};

/// Throws SymmetryError naming the generator that fails [H, g] = 0.
void check_symmetry(const CMatrix& h, const ProblemInstance& instance, double tol = 1e-10);

/// Block of H in the symmetry-adapted basis of representation alpha:
/// <v~|H|u~> = sqrt(s_v / s_u) sum_{v' in orbit(v~)} chi(g_v') <v'|H|u~>,
/// with s the stabilizer size and g_v' the smallest index taking v~ to v'.
/// Representatives whose projected state vanishes are dropped.
SymmetryBlock build_block(const CMatrix& h, const ProblemInstance& instance, std::uint64_t alpha);

/// Same block from explicit projected vectors, P^dagger H P. Used as a cross-check.
SymmetryBlock build_block_projected(const CMatrix& h, const ProblemInstance& instance,
                                    std::uint64_t alpha);

/// Sorted eigenvalues of a Hermitian matrix.
std::vector<double> dense_spectrum(const CMatrix& h);

/// Sorted union of the spectra of all blocks.
std::vector<double> block_spectrum_union(const CMatrix& h, const ProblemInstance& instance);

/// Adjacency matrix of the N-cycle (v ~ v +- 1 mod N).
CMatrix cycle_adjacency(std::uint64_t n);

/// Periodic XY chain sum_i (X_i X_{i+1} + Y_i Y_{i+1}) with bit i = site i.
CMatrix xy_chain(int sites);

/// Periodic Heisenberg chain sum_i (X X + Y Y + Z Z).
CMatrix heisenberg_chain(int sites);

/// Named builder: "cycle" (size n, N = 2^n), "xy" or "heisenberg" (n sites).
CMatrix test_hamiltonian(const std::string& name, int n);

}  // namespace gmin
