#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmin {

using Label = std::uint64_t;
using GroupIndex = std::uint64_t;

/// Raised when an argument falls outside an operation's documented domain.
class ContractError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A permutation of [0, 2^n) given as an image table.
using Permutation = std::vector<Label>;

enum class GroupKind {
    AddModN,                ///< x·v = (x + v) mod 2^n, |G| = 2^n
    SpinTranslation,        ///< cyclic rotation of an n-bit string, |G| = n
    SingleCycleAbelian,     ///< powers of one generator permutation
    TwoGeneratorComposite,  ///< g1^x1 g2^x2 or g2^x2 g1^x1 chosen by an order bit
};

std::string to_string(GroupKind kind);
GroupKind group_kind_from_string(const std::string& name);

/// Describes a group together with its index map x -> g(x).
///
/// The index space is [0, index_count()). For every built-in except
/// SpinTranslation with a non power-of-two site count the index map is a
/// bijection onto the group. TwoGeneratorComposite carries redundant indices
/// (x2 = 0 makes the order bit irrelevant); they are kept, not compressed.
struct GroupSpec {
    GroupKind kind = GroupKind::AddModN;
    int position_bits = 0;  ///< n, |V| = 2^n
    int group_bits = 0;     ///< m, qubits of the group register
    std::uint64_t order = 0;  ///< |G|
    Permutation generator;    ///< SingleCycleAbelian generator, or g1
    Permutation generator2;   ///< g2 of TwoGeneratorComposite
    int sub_bits1 = 0;        ///< x1 width of TwoGeneratorComposite
    int sub_bits2 = 0;        ///< x2 width of TwoGeneratorComposite

    static GroupSpec add_mod_n(int n);
    static GroupSpec spin_translation(int sites);
    static GroupSpec single_cycle(int n, Permutation generator);
    static GroupSpec two_generator(int n, Permutation g1, Permutation g2);

    std::uint64_t index_count() const { return std::uint64_t{1} << group_bits; }
    std::uint64_t position_count() const { return std::uint64_t{1} << position_bits; }
    bool is_cyclic() const;
};

/// Order of a permutation (lcm of its cycle lengths).
std::uint64_t permutation_order(const Permutation& perm);
Permutation permutation_power(const Permutation& perm, std::uint64_t k);
bool is_permutation(const Permutation& perm);

/// Cyclic rotation of an n-bit string by `shift` sites toward the
/// less-significant end.
Label rotate_toward_lsb(Label v, unsigned shift, int bits);

/// g(x)·v.
Label group_apply(const GroupSpec& spec, GroupIndex x, Label v);

/// Group-index composition for the abelian built-ins: g(compose(x1, x2)) = g(x1) g(x2).
GroupIndex compose_index(const GroupSpec& spec, GroupIndex x1, GroupIndex x2);

struct ProblemInstance {
    GroupSpec group;

    int position_bits() const { return group.position_bits; }
    std::uint64_t position_count() const { return group.position_count(); }
};

struct OrbitResult {
    Label v_rep = 0;
    GroupIndex x_rep = 0;
    std::uint64_t orbit_size = 0;

    bool operator==(const OrbitResult&) const = default;
};

/// Exact minimum of the orbit of v, with the smallest connecting index.
OrbitResult orbit_on_the_fly(const ProblemInstance& instance, Label v);

/// Every element of the orbit of v, sorted ascending.
std::vector<Label> orbit_of(const ProblemInstance& instance, Label v);

class LookupTable {
  public:
    static constexpr std::uint64_t kDefaultCapacity = std::uint64_t{1} << 24;

    /// Materializes orbit_on_the_fly for every label. Throws
    /// CapacityError when |V| exceeds `capacity` entries.
    static LookupTable build(const ProblemInstance& instance,
                             std::uint64_t capacity = kDefaultCapacity);

    const OrbitResult& operator[](Label v) const { return entries_.at(v); }
    std::size_t size() const { return entries_.size(); }
    std::size_t memory_entries() const { return entries_.size(); }
    std::vector<Label> representatives() const;

  private:
    std::vector<OrbitResult> entries_;
};

class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

inline LookupTable build_lookup(const ProblemInstance& instance,
                                std::uint64_t capacity = LookupTable::kDefaultCapacity) {
    return LookupTable::build(instance, capacity);
}

}  // namespace gmin
