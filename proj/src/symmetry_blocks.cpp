#include "gmin/symmetry_blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gmin {

namespace {

void require_cyclic(const GroupSpec& group) {
    if (!group.is_cyclic())
        throw ContractError("characters are only available for cyclic groups, got " + to_string(group.kind));
}

void require_shape(const CMatrix& h, const ProblemInstance& instance) {
    const auto dim = static_cast<Eigen::Index>(instance.position_count());
    if (h.rows() != dim || h.cols() != dim)
        throw ContractError("matrix is " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                            ", position space has dimension " + std::to_string(dim));
}

// Orbit of v with the smallest index reaching each element and the stabilizer size.
struct OrbitMap {
    std::vector<std::pair<Label, GroupIndex>> elements;
    std::uint64_t stabilizer = 0;
};

OrbitMap orbit_map(const GroupSpec& group, Label v) {
    OrbitMap m;
    std::vector<Label> seen;
    for (GroupIndex x = 0; x < group.order; ++x) {
        const Label u = group_apply(group, x, v);
        if (u == v) ++m.stabilizer;
        if (std::find(seen.begin(), seen.end(), u) == seen.end()) {
            seen.push_back(u);
            m.elements.emplace_back(u, x);
        }
    }
    return m;
}

// sum_x chi*(x) g(x)|v>, unnormalized.
Eigen::VectorXcd projected_vector(const GroupSpec& group, std::uint64_t alpha, Label v) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(group.position_count()));
    for (GroupIndex x = 0; x < group.order; ++x)
        out[static_cast<Eigen::Index>(group_apply(group, x, v))] += std::conj(character(group, alpha, x));
    return out;
}

constexpr double kZeroNorm = 1e-9;

}  // namespace

std::complex<double> character(const GroupSpec& group, std::uint64_t alpha, GroupIndex x) {
    require_cyclic(group);
    const double order = static_cast<double>(group.order);
    const double phase = 2.0 * std::numbers::pi * static_cast<double>((alpha % group.order) * (x % group.order) % group.order) / order;
    return std::polar(1.0, phase);
}

void check_symmetry(const CMatrix& h, const ProblemInstance& instance, double tol) {
    require_shape(h, instance);
    const auto& group = instance.group;
    // For the cyclic built-ins index 1 generates; the two-generator group
    // is checked on both generators.
    std::vector<GroupIndex> generators{1};
    if (group.kind == GroupKind::TwoGeneratorComposite)
        generators = {GroupIndex{1}, GroupIndex{1} << group.sub_bits1};
    const Label dim = instance.position_count();
    for (GroupIndex g : generators) {
        std::vector<Label> image(dim);
        for (Label v = 0; v < dim; ++v) image[v] = group_apply(group, g, v);
        for (Label v = 0; v < dim; ++v)
            for (Label u = 0; u < dim; ++u) {
                const auto a = h(static_cast<Eigen::Index>(image[v]), static_cast<Eigen::Index>(image[u]));
                const auto b = h(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u));
                if (std::abs(a - b) > tol)
                    throw SymmetryError("matrix does not commute with group generator index " +
                                        std::to_string(g) + " (entry " + std::to_string(v) + "," +
                                        std::to_string(u) + ")");
            }
    }
}

SymmetryBlock build_block(const CMatrix& h, const ProblemInstance& instance, std::uint64_t alpha) {
    require_shape(h, instance);
    const auto& group = instance.group;
    require_cyclic(group);
    if (alpha >= group.order) throw ContractError("alpha must lie in [0, |G|)");
    check_symmetry(h, instance);

    SymmetryBlock block;
    block.alpha = alpha;
    std::vector<OrbitMap> orbits;
    const Label dim = instance.position_count();
    for (Label v = 0; v < dim; ++v) {
        if (orbit_on_the_fly(instance, v).v_rep != v) continue;
        OrbitMap m = orbit_map(group, v);
        // The projected state survives iff the stabilizer size divides alpha.
        if (alpha % m.stabilizer != 0) continue;
        block.representatives.push_back(v);
        block.norms.push_back(1.0 / std::sqrt(static_cast<double>(m.stabilizer * group.order)));
        orbits.push_back(std::move(m));
    }
    const auto k = static_cast<Eigen::Index>(block.representatives.size());
    block.matrix = CMatrix::Zero(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            std::complex<double> sum = 0.0;
            const auto u = static_cast<Eigen::Index>(block.representatives[static_cast<std::size_t>(j)]);
            for (const auto& [vp, x] : orbits[static_cast<std::size_t>(i)].elements)
                sum += character(group, alpha, x) * h(static_cast<Eigen::Index>(vp), u);
            const double scale = std::sqrt(static_cast<double>(orbits[static_cast<std::size_t>(i)].stabilizer) /
                                           static_cast<double>(orbits[static_cast<std::size_t>(j)].stabilizer));
            block.matrix(i, j) = scale * sum;
        }
    return block;
}

SymmetryBlock build_block_projected(const CMatrix& h, const ProblemInstance& instance, std::uint64_t alpha) {
    require_shape(h, instance);
    const auto& group = instance.group;
    require_cyclic(group);
    if (alpha >= group.order) throw ContractError("alpha must lie in [0, |G|)");

    SymmetryBlock block;
    block.alpha = alpha;
    std::vector<Eigen::VectorXcd> columns;
    const Label dim = instance.position_count();
    for (Label v = 0; v < dim; ++v) {
        if (orbit_on_the_fly(instance, v).v_rep != v) continue;
        Eigen::VectorXcd vec = projected_vector(group, alpha, v);
        const double norm = vec.norm();
        if (norm < kZeroNorm) continue;
        block.representatives.push_back(v);
        block.norms.push_back(1.0 / norm);
        columns.push_back(vec / norm);
    }
    CMatrix p(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) p.col(static_cast<Eigen::Index>(c)) = columns[c];
    block.matrix = p.adjoint() * h * p;
    return block;
}

std::vector<double> dense_spectrum(const CMatrix& h) {
    if (h.rows() == 0) return {};
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> block_spectrum_union(const CMatrix& h, const ProblemInstance& instance) {
    std::vector<double> out;
    for (std::uint64_t alpha = 0; alpha < instance.group.order; ++alpha) {
        const auto part = dense_spectrum(build_block(h, instance, alpha).matrix);
        out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

CMatrix cycle_adjacency(std::uint64_t n) {
    if (n < 3) throw ContractError("cycle needs at least 3 vertices");
    const auto dim = static_cast<Eigen::Index>(n);
    CMatrix h = CMatrix::Zero(dim, dim);
    for (Eigen::Index v = 0; v < dim; ++v) {
        h(v, (v + 1) % dim) = 1.0;
        h((v + 1) % dim, v) = 1.0;
    }
    return h;
}

namespace {

CMatrix chain(int sites, bool with_zz) {
    if (sites < 2 || sites > 14) throw ContractError("chain needs 2..14 sites");
    const Label dim = Label{1} << sites;
    CMatrix h = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const int bonds = sites == 2 ? 1 : sites;
    for (Label v = 0; v < dim; ++v)
        for (int i = 0; i < bonds; ++i) {
            const int j = (i + 1) % sites;
            const bool bi = (v >> i) & 1U;
            const bool bj = (v >> j) & 1U;
            if (with_zz) h(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) += bi == bj ? 1.0 : -1.0;
            // XX + YY = 2 (s+ s- + s- s+) flips an antiparallel pair.
            if (bi != bj) {
                const Label u = v ^ (Label{1} << i) ^ (Label{1} << j);
                h(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) += 2.0;
            }
        }
    return h;
}

}  // namespace

CMatrix xy_chain(int sites) { return chain(sites, false); }
CMatrix heisenberg_chain(int sites) { return chain(sites, true); }

CMatrix test_hamiltonian(const std::string& name, int n) {
    if (name == "cycle") return cycle_adjacency(std::uint64_t{1} << n);
    if (name == "xy") return xy_chain(n);
    if (name == "heisenberg") return heisenberg_chain(n);
    throw ContractError("unknown hamiltonian '" + name + "' (expected cycle, xy or heisenberg)");
}

}  // namespace gmin
