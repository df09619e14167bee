#pragma once

#include <memory>
#include <string>
#include <vector>

#include "biinterp/errors.hpp"

#include <json.hpp>

namespace biinterp {

/// Default size cap for constructed groups (|S7|).
inline constexpr int kDefaultMaxOrder = 5040;

/// A finite group as a validated Cayley table. Element ids are dense
/// integers 0..order-1, the identity is pinned at id 0, and table(i,j)
/// is the product i*j. Immutable after construction.
class GroupTable {
public:
    /// Validates all group axioms. Throws NotLatinSquare, NoIdentityAtZero
    /// or NotAssociative naming the first offending cell or triple.
    static GroupTable validate(const std::vector<std::vector<int>>& raw,
                               std::vector<std::string> names = {});

    int order() const { return order_; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
    int inv(int a) const { return inverse_[a]; }

    bool has_names() const { return !names_.empty(); }
    const std::vector<std::string>& names() const { return names_; }
    std::string name_of(int a) const;

    /// Order of an element (smallest n >= 1 with a^n = identity).
    int element_order(int a) const;

    bool same_table(const GroupTable& other) const {
        return order_ == other.order_ && table_ == other.table_;
    }

private:
    GroupTable() = default;
    int order_ = 0;
    std::vector<int> table_;    // row-major
    std::vector<int> inverse_;
    std::vector<std::string> names_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

GroupPtr validate_group(const std::vector<std::vector<int>>& raw,
                        std::vector<std::string> names = {});

using Perm = std::vector<int>;

/// Closure of a set of permutations on 0..degree-1 under composition.
/// Id 0 is the identity; remaining ids are assigned level by level in
/// breadth-first order, ties within a level broken by lexicographic
/// comparison of the permutation arrays, so the result is fully
/// deterministic (independent even of generator order).
GroupPtr close_permutations(int degree, const std::vector<Perm>& generators,
                            int max_order = kDefaultMaxOrder);

/// A subgroup given by its sorted member set.
struct Subgroup {
    GroupPtr parent;
    std::vector<int> members;  // sorted, contains 0

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int g) const;
    /// Index of g in the member list (its id in the subgroup-view table), -1 if absent.
    int local(int g) const;
};

/// Smallest subgroup of G containing gens.
Subgroup subgroup_closure(const GroupPtr& G, const std::vector<int>& gens);

/// Wraps a member set as a Subgroup, checking closure under product and inverse.
Subgroup make_subgroup(const GroupPtr& G, std::vector<int> members);

bool is_normal(const Subgroup& S);

/// Right cosets Hg. Cosets are ordered by their minimum element, so
/// coset 0 is H itself.
struct CosetDecomposition {
    Subgroup subgroup;
    std::vector<std::vector<int>> cosets;  // each sorted
    std::vector<int> coset_of;             // element id -> coset index
    int index() const { return static_cast<int>(cosets.size()); }
};

CosetDecomposition coset_decomposition(const Subgroup& H);

/// One representative per coset: the minimum element id, so the first
/// representative is the identity. Ordered like the decomposition.
std::vector<int> canonical_transversal(const CosetDecomposition& dec);

// Standard constructors for the test corpus. Element orderings are fixed:
// cyclic: powers of the generator; dihedral(n): n rotations then n
// reflections s*r^k; symmetric: permutations in lexicographic order;
// product: lexicographic pairs (a,b) -> a*|B|+b.
GroupPtr cyclic(int n, int max_order = kDefaultMaxOrder);
GroupPtr dihedral(int n, int max_order = kDefaultMaxOrder);
GroupPtr symmetric(int n);  // n <= 5
GroupPtr quaternion8();
GroupPtr direct_product(const GroupPtr& A, const GroupPtr& B, int max_order = kDefaultMaxOrder);

/// Re-indexed standalone copy of a subgroup: member k of S becomes element
/// k of the result. The identity stays at 0 because ids are sorted.
GroupPtr subgroup_table(const Subgroup& S);

/// Group file format:
///   {"format":"cayley","order":n,"table":[[...]],"names":[...]}
///   {"format":"perm","degree":d,"generators":[[...],...]}
GroupPtr group_from_json(const nlohmann::json& j, int max_order = kDefaultMaxOrder);
nlohmann::ordered_json group_to_json(const GroupTable& G);

}  // namespace biinterp
