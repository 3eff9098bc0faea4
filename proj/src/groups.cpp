#include "gmin/groups.hpp"

#include <algorithm>
#include <numeric>

namespace gmin {

namespace {

int ceil_log2(std::uint64_t x) {
    int bits = 0;
    while ((std::uint64_t{1} << bits) < x) ++bits;
    return bits;
}

bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

void require_positions(int n) {
    if (n < 1 || n > 30) throw ContractError("position bits must be in [1, 30]");
}

void require_perm(const Permutation& p, int n, const char* what) {
    if (p.size() != (std::uint64_t{1} << n) || !is_permutation(p))
        throw ContractError(std::string(what) + " is not a permutation of [0, 2^n)");
}

}  // namespace

std::string to_string(GroupKind kind) {
    switch (kind) {
        case GroupKind::AddModN: return "add";
        case GroupKind::SpinTranslation: return "spin";
        case GroupKind::SingleCycleAbelian: return "cycle";
        case GroupKind::TwoGeneratorComposite: return "two-generator";
    }
    return "?";
}

GroupKind group_kind_from_string(const std::string& name) {
    if (name == "add") return GroupKind::AddModN;
    if (name == "spin") return GroupKind::SpinTranslation;
    if (name == "cycle") return GroupKind::SingleCycleAbelian;
    if (name == "two-generator") return GroupKind::TwoGeneratorComposite;
    throw ContractError("unknown group kind '" + name + "'");
}

GroupSpec GroupSpec::add_mod_n(int n) {
    require_positions(n);
    GroupSpec s;
    s.kind = GroupKind::AddModN;
    s.position_bits = n;
    s.group_bits = n;
    s.order = std::uint64_t{1} << n;
    return s;
}

GroupSpec GroupSpec::spin_translation(int sites) {
    require_positions(sites);
    if (sites < 2) throw ContractError("spin translation needs at least 2 sites");
    GroupSpec s;
    s.kind = GroupKind::SpinTranslation;
    s.position_bits = sites;
    s.group_bits = ceil_log2(static_cast<std::uint64_t>(sites));
    s.order = static_cast<std::uint64_t>(sites);
    return s;
}

GroupSpec GroupSpec::single_cycle(int n, Permutation generator) {
    require_positions(n);
    require_perm(generator, n, "generator");
    const auto order = permutation_order(generator);
    if (!is_power_of_two(order))
        throw ContractError("single-cycle generator order must be a power of two");
    GroupSpec s;
    s.kind = GroupKind::SingleCycleAbelian;
    s.position_bits = n;
    s.group_bits = ceil_log2(order);
    s.order = order;
    s.generator = std::move(generator);
    return s;
}

GroupSpec GroupSpec::two_generator(int n, Permutation g1, Permutation g2) {
    require_positions(n);
    require_perm(g1, n, "g1");
    require_perm(g2, n, "g2");
    const auto o1 = permutation_order(g1);
    const auto o2 = permutation_order(g2);
    if (!is_power_of_two(o1) || !is_power_of_two(o2))
        throw ContractError("generator orders must be powers of two");
    GroupSpec s;
    s.kind = GroupKind::TwoGeneratorComposite;
    s.position_bits = n;
    s.sub_bits1 = ceil_log2(o1);
    s.sub_bits2 = ceil_log2(o2);
    s.group_bits = s.sub_bits1 + s.sub_bits2 + 1;
    s.generator = std::move(g1);
    s.generator2 = std::move(g2);
    // Distinct group elements, counted by brute force over the index space.
    std::vector<Permutation> seen;
    for (GroupIndex x = 0; x < s.index_count(); ++x) {
        Permutation img(s.position_count());
        for (Label v = 0; v < img.size(); ++v) img[v] = group_apply(s, x, v);
        if (std::find(seen.begin(), seen.end(), img) == seen.end()) seen.push_back(std::move(img));
    }
    s.order = seen.size();
    return s;
}

bool GroupSpec::is_cyclic() const {
    return kind == GroupKind::AddModN || kind == GroupKind::SpinTranslation ||
           kind == GroupKind::SingleCycleAbelian;
}

bool is_permutation(const Permutation& perm) {
    std::vector<bool> hit(perm.size(), false);
    for (Label y : perm) {
        if (y >= perm.size() || hit[y]) return false;
        hit[y] = true;
    }
    return true;
}

std::uint64_t permutation_order(const Permutation& perm) {
    std::vector<bool> done(perm.size(), false);
    std::uint64_t order = 1;
    for (Label s = 0; s < perm.size(); ++s) {
        if (done[s]) continue;
        std::uint64_t len = 0;
        for (Label v = s; !done[v]; v = perm[v]) {
            done[v] = true;
            ++len;
        }
        order = std::lcm(order, len);
    }
    return order;
}

Permutation permutation_power(const Permutation& perm, std::uint64_t k) {
    Permutation out(perm.size());
    std::iota(out.begin(), out.end(), Label{0});
    Permutation base = perm;
    while (k > 0) {
        if (k & 1) {
            for (auto& y : out) y = base[y];
        }
        Permutation sq(base.size());
        for (Label v = 0; v < base.size(); ++v) sq[v] = base[base[v]];
        base = std::move(sq);
        k >>= 1;
    }
    return out;
}

Label rotate_toward_lsb(Label v, unsigned shift, int bits) {
    const Label mask = (Label{1} << bits) - 1;
    shift %= static_cast<unsigned>(bits);
    if (shift == 0) return v & mask;
    return ((v >> shift) | (v << (bits - shift))) & mask;
}

Label group_apply(const GroupSpec& spec, GroupIndex x, Label v) {
    if (x >= spec.index_count()) throw ContractError("group index out of range");
    if (v >= spec.position_count()) throw ContractError("position label out of range");
    switch (spec.kind) {
        case GroupKind::AddModN:
            return (x + v) & (spec.position_count() - 1);
        case GroupKind::SpinTranslation:
            return rotate_toward_lsb(v, static_cast<unsigned>(x % spec.order), spec.position_bits);
        case GroupKind::SingleCycleAbelian: {
            Label out = v;
            for (GroupIndex k = 0; k < x; ++k) out = spec.generator[out];
            return out;
        }
        case GroupKind::TwoGeneratorComposite: {
            const GroupIndex x1 = x & ((GroupIndex{1} << spec.sub_bits1) - 1);
            const GroupIndex x2 = (x >> spec.sub_bits1) & ((GroupIndex{1} << spec.sub_bits2) - 1);
            const bool order_bit = (x >> (spec.sub_bits1 + spec.sub_bits2)) & 1;
            auto pow1 = [&](Label u) {
                for (GroupIndex k = 0; k < x1; ++k) u = spec.generator[u];
                return u;
            };
            auto pow2 = [&](Label u) {
                for (GroupIndex k = 0; k < x2; ++k) u = spec.generator2[u];
                return u;
            };
            // order 0: g1 powers act first (g2^x2 g1^x1); order 1: g1^x1 g2^x2.
            return order_bit ? pow1(pow2(v)) : pow2(pow1(v));
        }
    }
    throw ContractError("unsupported group kind");
}

GroupIndex compose_index(const GroupSpec& spec, GroupIndex x1, GroupIndex x2) {
    if (!spec.is_cyclic()) throw ContractError("index composition needs a cyclic group");
    if (x1 >= spec.index_count() || x2 >= spec.index_count())
        throw ContractError("group index out of range");
    return (x1 + x2) % spec.order;
}

OrbitResult orbit_on_the_fly(const ProblemInstance& instance, Label v) {
    const auto& g = instance.group;
    if (v >= g.position_count()) throw ContractError("position label out of range");
    OrbitResult best{v, 0, 0};
    bool first = true;
    std::vector<Label> images;
    images.reserve(g.index_count());
    for (GroupIndex x = 0; x < g.index_count(); ++x) {
        const Label u = group_apply(g, x, v);
        images.push_back(u);
        if (first || u < best.v_rep) {
            best.v_rep = u;
            best.x_rep = x;
            first = false;
        }
    }
    std::sort(images.begin(), images.end());
    best.orbit_size = static_cast<std::uint64_t>(
        std::unique(images.begin(), images.end()) - images.begin());
    return best;
}

std::vector<Label> orbit_of(const ProblemInstance& instance, Label v) {
    std::vector<Label> images;
    for (GroupIndex x = 0; x < instance.group.index_count(); ++x)
        images.push_back(group_apply(instance.group, x, v));
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    return images;
}

LookupTable LookupTable::build(const ProblemInstance& instance, std::uint64_t capacity) {
    const auto count = instance.position_count();
    if (count > capacity)
        throw CapacityError("lookup table needs " + std::to_string(count) +
                            " entries, capacity is " + std::to_string(capacity));
    LookupTable table;
    table.entries_.reserve(count);
    for (Label v = 0; v < count; ++v) table.entries_.push_back(orbit_on_the_fly(instance, v));
    return table;
}

std::vector<Label> LookupTable::representatives() const {
    std::vector<Label> reps;
    for (Label v = 0; v < entries_.size(); ++v)
        if (entries_[v].v_rep == v) reps.push_back(v);
    return reps;
}

}  // namespace gmin
