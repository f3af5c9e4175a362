// Copyright 2026 The qrf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QRF_GROUP_H
#define QRF_GROUP_H

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrf/report.h"

namespace qrf {

/// An element of a finite group, identified by its row in the Cayley table.
struct GroupElement {
    std::uint32_t index = 0;

    friend auto operator<=>(const GroupElement &, const GroupElement &) = default;
};

enum class DecompositionMode { semidirect, direct, transversal_only };

std::string_view mode_name(DecompositionMode mode);

/// Factorization g = n * p of a group along a normal subgroup N and a transversal
/// containing the identity. In semidirect/direct mode the transversal is a subgroup P.
struct SubgroupDecomposition {
    std::vector<GroupElement> n_subgroup;
    std::vector<GroupElement> transversal;
    DecompositionMode mode = DecompositionMode::transversal_only;
    /// factor_table[g] = (n, p) with n * p = g.
    std::vector<std::pair<GroupElement, GroupElement>> factor_table;
    std::vector<bool> in_n;
    std::vector<bool> in_transversal;

    bool contains(GroupElement g) const {
        return in_n.at(g.index);
    }
    GroupElement n_part(GroupElement g) const {
        return factor_table.at(g.index).first;
    }
    GroupElement p_part(GroupElement g) const {
        return factor_table.at(g.index).second;
    }
};

/// Raw multiplication table, used to check axioms before a FiniteGroup exists.
struct CayleyTable {
    std::size_t order = 0;
    std::vector<std::uint32_t> entries;  // row-major, entries[a * order + b] = a * b

    std::uint32_t at(std::size_t a, std::size_t b) const {
        return entries[a * order + b];
    }
};

/// Largest group order accepted by the constructors.
inline constexpr std::size_t kMaxGroupOrder = 4096;

/// An immutable finite group given by its Cayley table.
class FiniteGroup {
   public:
    /// Validates the table against the group axioms; throws std::invalid_argument otherwise.
    static FiniteGroup from_table(CayleyTable table, std::vector<std::string> labels, std::string spec);

    std::size_t order() const {
        return table_.order;
    }
    GroupElement identity() const {
        return identity_;
    }
    GroupElement compose(GroupElement a, GroupElement b) const;
    GroupElement inverse(GroupElement a) const;
    GroupElement element(std::size_t index) const;
    const std::string &label(GroupElement a) const;
    std::optional<GroupElement> find_label(std::string_view label) const;
    const std::vector<std::string> &labels() const {
        return labels_;
    }
    const CayleyTable &table() const {
        return table_;
    }
    const std::string &spec() const {
        return spec_;
    }

    const SubgroupDecomposition *decomposition() const {
        return decomposition_ ? &*decomposition_ : nullptr;
    }
    /// Requires a decomposition; throws InapplicableError otherwise.
    const SubgroupDecomposition &require_decomposition() const;

    /// Returns a copy carrying the decomposition along `normal` with the given transversal.
    /// Throws std::invalid_argument if `normal` is not a normal subgroup or the transversal
    /// is not one representative per coset containing the identity.
    FiniteGroup with_decomposition(
        const std::vector<GroupElement> &normal, const std::vector<GroupElement> &transversal) const;
    /// Same, choosing the smallest index of every coset as its representative.
    FiniteGroup with_decomposition(const std::vector<GroupElement> &normal) const;

    bool operator==(const FiniteGroup &other) const;

   private:
    FiniteGroup() = default;

    CayleyTable table_;
    GroupElement identity_;
    std::vector<std::uint32_t> inverse_;
    std::vector<std::string> labels_;
    std::string spec_;
    std::optional<SubgroupDecomposition> decomposition_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Builds a group from a spec string:
///   Z:n               cyclic group, elements by residue
///   Z:m,cells=L       cyclic group with N = multiples of L and transversal {0..L-1}
///   D:n               dihedral group of order 2n, elements r^a s^b at index 2a+b, N = <r>, P = <s>
///   S:n               symmetric group (n <= 5), permutations in lexicographic order
///   prod:AxB          direct product, (a, b) at index a*|B| + b; sub-specs may be parenthesized
///   semidirect:<file> N x| P from two embedded specs and an action table
///   cayley:<file>     explicit Cayley table file
/// Relative file paths inside `spec` are resolved against `base_dir` when not found as given.
GroupPtr build_group(std::string_view spec, const std::string &base_dir = {});

GroupElement compose(const FiniteGroup &group, GroupElement a, GroupElement b);
GroupElement inverse(const FiniteGroup &group, GroupElement a);
std::pair<GroupElement, GroupElement> factorize(const SubgroupDecomposition &decomposition, GroupElement g);

/// Checks Latin-square, identity, inverse and associativity laws. Associativity is
/// exhaustive up to order 64 and sampled (fixed seed) above.
VerificationReport verify_group_axioms(const CayleyTable &table);
VerificationReport verify_group_axioms(const FiniteGroup &group);

/// Parses the Cayley-table file format (`order N`, N rows, optional `labels`, `normal`,
/// `transversal` lines). Throws ParseError with line/column on malformed input.
GroupPtr parse_cayley_text(std::string_view text, std::string spec);
/// Parses the semidirect file format (`normal <spec>`, `complement <spec>`, `action`
/// followed by |P| rows of |N| indices).
GroupPtr parse_semidirect_text(std::string_view text, std::string spec, const std::string &base_dir = {});

}  // namespace qrf

#endif
