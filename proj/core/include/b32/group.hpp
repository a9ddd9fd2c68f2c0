#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "b32/gf2.hpp"

namespace b32 {

// Element representation.  Permutations act on points 0..degree-1 and are
// stored as image arrays; GF(2) matrices (dimension <= 16) are stored as
// bit-packed rows.  Either way an element is a fixed-length uint16 block,
// which keeps enumeration, hashing and the canonical sort uniform.
enum class Rep { Perm, Gf2Matrix };

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
    static constexpr std::size_t kDefaultCap = 200000;

    // Enumerates the closure of the generators.  Throws budget_error past
    // the cap and config_error on inconsistent generators.
    static GroupPtr closure(Rep rep, int degree, const std::vector<std::vector<std::uint16_t>>& gens,
                            std::size_t cap = kDefaultCap, const std::string& id = "");

    static GroupPtr from_perms(const std::vector<std::vector<std::uint16_t>>& gens,
                               std::size_t cap = kDefaultCap, const std::string& id = "");
    static GroupPtr from_gf2(const std::vector<Gf2Mat>& gens, std::size_t cap = kDefaultCap,
                             const std::string& id = "");

    Rep rep() const { return rep_; }
    int degree() const { return degree_; }
    std::size_t order() const { return count_; }
    const std::string& id() const { return id_; }

    std::size_t esize() const { return esize_; }
    const std::uint16_t* elt(std::size_t i) const { return data_.data() + i * esize_; }
    std::size_t identity_index() const { return id_index_; }
    const std::vector<std::size_t>& generator_indices() const { return gen_idx_; }

    std::size_t index_of(const std::uint16_t* e) const;  // throws if absent
    std::optional<std::size_t> find(const std::uint16_t* e) const;

    std::size_t mul(std::size_t i, std::size_t j) const;
    std::size_t inv(std::size_t i) const;
    std::size_t pow(std::size_t i, long e) const;
    long element_order(std::size_t i) const;
    std::size_t conj(std::size_t g, std::size_t x) const;  // g x g^-1

    bool is_abelian() const;
    long exponent() const;
    std::vector<std::size_t> center() const;
    std::vector<std::size_t> derived_subgroup() const;

    // subgroup closure inside this group, as sorted element indices
    std::vector<std::size_t> subgroup_closure(std::vector<std::size_t> seed) const;
    bool is_normal(const std::vector<std::size_t>& sorted_subgroup) const;

    // matrix groups: the permutation action on nonzero vectors
    GroupPtr as_permutation(const std::string& id = "") const;

    // raw bytes of element i (for hashing/serialisation)
    std::vector<std::uint16_t> element_vec(std::size_t i) const;

private:
    friend class GroupBuilder;
    FiniteGroup() = default;

    void mul_raw(const std::uint16_t* a, const std::uint16_t* b, std::uint16_t* out) const;
    void inv_raw(const std::uint16_t* a, std::uint16_t* out) const;

    Rep rep_ = Rep::Perm;
    int degree_ = 0;
    std::size_t esize_ = 0;
    std::size_t count_ = 0;
    std::string id_;
    std::vector<std::uint16_t> data_;       // count * esize, sorted lexicographically
    std::vector<std::uint32_t> hash_slots_;  // open addressing -> index+1
    std::size_t id_index_ = 0;
    std::vector<std::size_t> gen_idx_;
    std::vector<std::size_t> inv_idx_;  // cached inverse per element
};

struct ConjugacyData {
    std::vector<std::size_t> rep;          // representative element index (minimal in class)
    std::vector<std::int64_t> size;
    std::vector<long> order;               // element order per class
    std::vector<int> inverse_class;
    std::vector<std::vector<int>> power_class;  // [c][t] = class of rep^t, t in [0, order)
    std::vector<int> class_of;             // element index -> class
    std::vector<std::int64_t> centralizer_order;

    int identity_class() const;
    int num_classes() const { return (int)rep.size(); }
    // class of the 2^j-th power, any j >= 0
    int power_map(int c, std::int64_t t) const;
};

ConjugacyData conjugacy_data(const FiniteGroup& g);

// --- composition ------------------------------------------------------

GroupPtr compose_direct(const GroupPtr& a, const GroupPtr& b, const std::string& id = "");

// N |x H: `action` gives, per H-generator, a permutation of N's points
// normalizing N.  Validated: result order must be |N|*|H|.
GroupPtr compose_semidirect(const GroupPtr& n, const GroupPtr& h,
                            const std::vector<std::vector<std::uint16_t>>& action,
                            const std::string& id = "");

// central product over an identified central subgroup: pairs (a_i, b_i)
// generate isomorphic central subgroups of A and B; result is
// (A x B)/<(a_i, b_i^-1)>.
GroupPtr compose_central(const GroupPtr& a, const GroupPtr& b,
                         const std::vector<std::pair<std::size_t, std::size_t>>& ident,
                         const std::string& id = "");

struct QuotientResult {
    GroupPtr group;
    std::vector<std::uint32_t> projection;  // element index -> coset point
};

// G/N as a permutation group on the cosets; N given by generating element
// indices, checked normal.
QuotientResult quotient_group(const GroupPtr& g, const std::vector<std::size_t>& n_gens,
                              const std::string& id = "");

// affine group V |x E for E <= GL_d(2): permutations of the 2^d vectors
GroupPtr affine_group(const std::vector<Gf2Mat>& e_gens, int d, const std::string& id = "");

// --- isomorphism helpers ----------------------------------------------

struct IsoFingerprint {
    std::uint64_t order = 0;
    bool abelian = false;
    long exponent = 0;
    std::vector<std::pair<long, std::int64_t>> order_census;  // element order -> count
    std::vector<std::uint64_t> derived_series;                // orders, strictly descending
    std::uint64_t center_order = 0;

    bool operator==(const IsoFingerprint& o) const = default;
    std::string str() const;
};

IsoFingerprint iso_fingerprint(const FiniteGroup& g);

// exact isomorphism test by generator-image backtracking; |G| = |H| <= cap
bool iso_test_small(const FiniteGroup& g, const FiniteGroup& h, std::size_t cap = 1000);

}  // namespace b32
