#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gmin/groups.hpp"

using namespace gmin;

namespace {

// Independent rotation: bit j of the result is bit (j + s) mod n of v.
Label rotate_ref(Label v, unsigned s, int n) {
    Label out = 0;
    for (int j = 0; j < n; ++j)
        if ((v >> ((j + s) % n)) & 1) out |= Label{1} << j;
    return out;
}

Permutation cycle_perm(int n) {
    // v -> 5v + 1 mod 2^n is a full 2^n-cycle (Hull-Dobell).
    Permutation p(std::size_t{1} << n);
    for (Label v = 0; v < p.size(); ++v) p[v] = (5 * v + 1) % p.size();
    return p;
}

}  // namespace

TEST(GroupApply, AddModN) {
    auto g = GroupSpec::add_mod_n(4);
    EXPECT_EQ(group_apply(g, 3, 5), 8u);
    EXPECT_EQ(group_apply(g, 15, 1), 0u);
    EXPECT_THROW(group_apply(g, 16, 1), ContractError);
    EXPECT_THROW(group_apply(g, 1, 16), ContractError);
}

TEST(GroupApply, SpinTranslationDirection) {
    auto g = GroupSpec::spin_translation(4);
    EXPECT_EQ(g.group_bits, 2);
    EXPECT_EQ(group_apply(g, 1, 0b0110), 0b0011u);
    for (Label v = 0; v < 16; ++v)
        for (GroupIndex x = 0; x < 4; ++x)
            EXPECT_EQ(group_apply(g, x, v), rotate_ref(v, static_cast<unsigned>(x), 4));
}

TEST(GroupApply, SpinOrbitOfSix) {
    ProblemInstance inst{GroupSpec::spin_translation(4)};
    auto orbit = orbit_of(inst, 6);
    EXPECT_EQ(orbit, (std::vector<Label>{3, 6, 9, 12}));
    auto r = orbit_on_the_fly(inst, 6);
    EXPECT_EQ(r.v_rep, 3u);
    EXPECT_EQ(group_apply(inst.group, r.x_rep, 6), 3u);
    EXPECT_EQ(r.x_rep, 1u);
}

TEST(OrbitOnTheFly, AddModN) {
    ProblemInstance inst{GroupSpec::add_mod_n(4)};
    EXPECT_EQ(orbit_on_the_fly(inst, 5), (OrbitResult{0, 11, 16}));
    EXPECT_EQ(orbit_on_the_fly(inst, 0), (OrbitResult{0, 0, 16}));
}

TEST(Lookup, AddModNSingleOrbit) {
    ProblemInstance inst{GroupSpec::add_mod_n(3)};
    auto t = build_lookup(inst);
    ASSERT_EQ(t.size(), 8u);
    for (Label v = 0; v < 8; ++v) EXPECT_EQ(t[v].v_rep, 0u);
    EXPECT_EQ(t.representatives(), std::vector<Label>{0});
}

TEST(Lookup, SpinTranslationRepresentatives) {
    ProblemInstance inst{GroupSpec::spin_translation(4)};
    auto t = build_lookup(inst);
    EXPECT_EQ(t.size(), 16u);
    // Necklaces of length 4: minimal rotations.
    std::set<Label> reps;
    for (Label v = 0; v < 16; ++v) {
        Label best = v;
        for (unsigned s = 0; s < 4; ++s) best = std::min(best, rotate_ref(v, s, 4));
        reps.insert(best);
    }
    EXPECT_EQ(reps, (std::set<Label>{0, 1, 3, 5, 7, 15}));
    auto got = t.representatives();
    EXPECT_EQ(std::set<Label>(got.begin(), got.end()), reps);
}

TEST(Lookup, CapacityGuard) {
    ProblemInstance inst{GroupSpec::add_mod_n(6)};
    EXPECT_THROW(LookupTable::build(inst, 32), CapacityError);
}

TEST(Orbits, PartitionAndMinimality) {
    std::vector<GroupSpec> specs = {GroupSpec::add_mod_n(5), GroupSpec::spin_translation(5),
                                    GroupSpec::spin_translation(8),
                                    GroupSpec::single_cycle(4, cycle_perm(4))};
    for (const auto& spec : specs) {
        ProblemInstance inst{spec};
        auto table = build_lookup(inst);
        const Label nv = spec.position_count();
        // Reference orbits by closure under all group elements.
        std::map<Label, Label> class_min;
        for (Label v = 0; v < nv; ++v) {
            Label m = v;
            for (GroupIndex x = 0; x < spec.index_count(); ++x) m = std::min(m, group_apply(spec, x, v));
            class_min[v] = m;
        }
        for (Label v = 0; v < nv; ++v) {
            const auto& r = table[v];
            EXPECT_EQ(r, orbit_on_the_fly(inst, v));
            EXPECT_EQ(r.v_rep, class_min[v]);
            EXPECT_EQ(group_apply(spec, r.x_rep, v), r.v_rep);
            for (GroupIndex x = 0; x < r.x_rep; ++x) EXPECT_NE(group_apply(spec, x, v), r.v_rep);
            EXPECT_EQ(r.orbit_size, orbit_of(inst, v).size());
        }
    }
}

TEST(Orbits, ExhaustiveAtTwelveBits) {
    ProblemInstance inst{GroupSpec::spin_translation(12)};
    auto table = build_lookup(inst);
    for (Label v = 0; v < 4096; ++v) {
        Label m = v;
        for (unsigned s = 0; s < 12; ++s) m = std::min(m, rotate_ref(v, s, 12));
        ASSERT_EQ(table[v].v_rep, m);
    }
}

TEST(Action, CompositionIndex) {
    for (const auto& spec : {GroupSpec::add_mod_n(4), GroupSpec::spin_translation(4),
                             GroupSpec::single_cycle(3, cycle_perm(3))}) {
        for (GroupIndex x1 = 0; x1 < spec.order; ++x1)
            for (GroupIndex x2 = 0; x2 < spec.order; ++x2)
                for (Label v = 0; v < spec.position_count(); ++v)
                    EXPECT_EQ(group_apply(spec, x2, group_apply(spec, x1, v)),
                              group_apply(spec, compose_index(spec, x1, x2), v));
    }
}

TEST(Action, EveryIndexIsABijection) {
    Permutation swap01(8);
    for (Label v = 0; v < 8; ++v) swap01[v] = (v & ~Label{3}) | ((v & 1) << 1) | ((v >> 1) & 1);
    auto two = GroupSpec::two_generator(3, cycle_perm(3), swap01);
    for (const auto& spec : {GroupSpec::add_mod_n(3), GroupSpec::spin_translation(3), two}) {
        for (GroupIndex x = 0; x < spec.index_count(); ++x) {
            Permutation img(spec.position_count());
            for (Label v = 0; v < img.size(); ++v) img[v] = group_apply(spec, x, v);
            EXPECT_TRUE(is_permutation(img));
        }
    }
}

TEST(Action, TwoGeneratorOrderBit) {
    Permutation swap01(8);
    for (Label v = 0; v < 8; ++v) swap01[v] = (v & ~Label{3}) | ((v & 1) << 1) | ((v >> 1) & 1);
    auto g1 = cycle_perm(3);
    auto spec = GroupSpec::two_generator(3, g1, swap01);
    EXPECT_EQ(spec.sub_bits1, 3);
    EXPECT_EQ(spec.sub_bits2, 1);
    const GroupIndex order_bit = GroupIndex{1} << 4;
    const GroupIndex x = 1 | (GroupIndex{1} << 3);  // x1 = 1, x2 = 1
    for (Label v = 0; v < 8; ++v) {
        EXPECT_EQ(group_apply(spec, x, v), swap01[g1[v]]);
        EXPECT_EQ(group_apply(spec, x | order_bit, v), g1[swap01[v]]);
    }
    // The two orders disagree somewhere, so the group is non-abelian.
    EXPECT_GT(spec.order, 8u);
}

TEST(Permutations, OrderAndPower) {
    auto p = cycle_perm(4);
    EXPECT_EQ(permutation_order(p), 16u);
    auto q = permutation_power(p, 16);
    for (Label v = 0; v < 16; ++v) EXPECT_EQ(q[v], v);
    EXPECT_THROW(GroupSpec::single_cycle(2, Permutation{1, 2, 0, 3}), ContractError);
}
