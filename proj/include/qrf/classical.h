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

#ifndef QRF_CLASSICAL_H
#define QRF_CLASSICAL_H

#include <concepts>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qrf/errors.h"
#include "qrf/group.h"
#include "qrf/report.h"
#include "qrf/translation_line.h"

namespace qrf {

enum class SystemKind { G, N };

std::string_view kind_name(SystemKind kind);
SystemKind parse_kind(std::string_view text);

/// Configurations of every system relative to `frame` (nullopt = external observer).
///
/// An N-system stores a coordinate in N; the element it stands for is coordinate * offset.
/// The offset is the inverse transversal part of the frame, so it is e whenever the frame is
/// external or itself an N-system, and it lets N-systems stay inside N when the frame is a
/// G-system sitting off the lattice.
template <class E>
struct BasicClassicalState {
    std::optional<std::size_t> frame;
    std::vector<SystemKind> kinds;
    std::vector<E> configs;
    E offset{};

    std::size_t size() const {
        return configs.size();
    }
    bool operator==(const BasicClassicalState &) const = default;
};

using ClassicalState = BasicClassicalState<GroupElement>;
using LineState = BasicClassicalState<Rational>;

template <class S>
concept FrameSpace = requires(const S &s, const typename S::Element &a) {
    { s.identity() } -> std::convertible_to<typename S::Element>;
    { s.compose(a, a) } -> std::convertible_to<typename S::Element>;
    { s.inverse(a) } -> std::convertible_to<typename S::Element>;
    { s.has_decomposition() } -> std::convertible_to<bool>;
    { s.n_part(a) } -> std::convertible_to<typename S::Element>;
    { s.p_part(a) } -> std::convertible_to<typename S::Element>;
    { s.in_n(a) } -> std::convertible_to<bool>;
    { s.format(a) } -> std::convertible_to<std::string>;
};

/// FrameSpace view of a FiniteGroup. Decomposition queries throw InapplicableError when the
/// group carries none.
class GroupSpace {
   public:
    using Element = GroupElement;

    explicit GroupSpace(const FiniteGroup &group) : group_(&group) {
    }

    const FiniteGroup &group() const {
        return *group_;
    }
    GroupElement identity() const {
        return group_->identity();
    }
    GroupElement compose(GroupElement a, GroupElement b) const {
        return group_->compose(a, b);
    }
    GroupElement inverse(GroupElement a) const {
        return group_->inverse(a);
    }
    bool has_decomposition() const {
        return group_->decomposition() != nullptr;
    }
    GroupElement n_part(GroupElement a) const {
        return group_->require_decomposition().n_part(a);
    }
    GroupElement p_part(GroupElement a) const {
        return group_->require_decomposition().p_part(a);
    }
    bool in_n(GroupElement a) const {
        return group_->require_decomposition().contains(a);
    }
    std::string format(GroupElement a) const {
        return group_->label(a);
    }

   private:
    const FiniteGroup *group_;
};

namespace detail {

template <FrameSpace S>
void check_slot(const BasicClassicalState<typename S::Element> &s, std::size_t i) {
    if (i >= s.size()) {
        throw std::out_of_range("system index " + std::to_string(i) + " out of range for " + std::to_string(s.size()) +
                                " systems");
    }
}

template <FrameSpace S>
void check_shape(const S &space, const BasicClassicalState<typename S::Element> &s) {
    if (s.kinds.size() != s.configs.size()) {
        throw std::invalid_argument("kinds and configs differ in length");
    }
    for (std::size_t k = 0; k < s.size(); k++) {
        if (s.kinds[k] == SystemKind::N && !space.in_n(s.configs[k])) {
            throw std::invalid_argument("N-system " + std::to_string(k) + " holds " + space.format(s.configs[k]) +
                                        ", which lies outside N");
        }
    }
}

template <FrameSpace S>
bool has_n_slots(const BasicClassicalState<typename S::Element> &s) {
    for (auto k : s.kinds) {
        if (k == SystemKind::N) {
            return true;
        }
    }
    return false;
}

}  // namespace detail

/// R^i: describe an externally given configuration relative to system i.
template <FrameSpace S>
BasicClassicalState<typename S::Element> relative_state(
    const S &space, const BasicClassicalState<typename S::Element> &s, std::size_t i) {
    detail::check_slot<S>(s, i);
    if (s.frame) {
        throw std::invalid_argument("relative_state expects an external-frame state");
    }
    detail::check_shape(space, s);
    using E = typename S::Element;
    const E gi_inv = space.inverse(s.configs[i]);
    E p_i = space.identity();
    if (s.kinds[i] == SystemKind::G && detail::has_n_slots<S>(s)) {
        p_i = space.p_part(s.configs[i]);
    }
    BasicClassicalState<E> out{i, s.kinds, {}, space.inverse(p_i)};
    for (std::size_t j = 0; j < s.size(); j++) {
        E rel = space.compose(s.configs[j], gi_inv);
        if (s.kinds[j] == SystemKind::N) {
            rel = space.compose(rel, p_i);
        }
        out.configs.push_back(j == i ? space.identity() : rel);
    }
    return out;
}

/// Lambda^{i->j}: right regular action by the inverse of system j's configuration.
template <FrameSpace S>
BasicClassicalState<typename S::Element> change_frame_classical(
    const S &space, const BasicClassicalState<typename S::Element> &s, std::size_t j) {
    detail::check_slot<S>(s, j);
    if (!s.frame) {
        throw std::invalid_argument("change_frame_classical needs a frame; apply relative_state first");
    }
    using E = typename S::Element;
    const bool n_slots = detail::has_n_slots<S>(s);
    const E g = s.kinds[j] == SystemKind::N ? space.compose(s.configs[j], s.offset) : s.configs[j];
    const E g_inv = space.inverse(g);
    E offset = space.identity();
    if (n_slots) {
        offset = space.inverse(space.p_part(space.compose(g, space.inverse(s.offset))));
    }
    const E offset_inv = space.inverse(offset);
    BasicClassicalState<E> out{j, s.kinds, {}, offset};
    for (std::size_t k = 0; k < s.size(); k++) {
        if (k == j) {
            out.configs.push_back(space.identity());
        } else if (s.kinds[k] == SystemKind::G) {
            out.configs.push_back(space.compose(s.configs[k], g_inv));
        } else {
            E coord = space.compose(space.compose(space.compose(s.configs[k], s.offset), g_inv), offset_inv);
            if (!space.in_n(coord)) {
                throw std::logic_error("N-system coordinate left N during a frame change");
            }
            out.configs.push_back(coord);
        }
    }
    return out;
}

/// T: every G-system entry replaced by its n-part. The truncated description lives in N,
/// so the frame offset is dropped.
template <FrameSpace S>
BasicClassicalState<typename S::Element> truncate_classical(
    const S &space, const BasicClassicalState<typename S::Element> &s) {
    if (!space.has_decomposition()) {
        throw InapplicableError("truncation needs a normal-subgroup decomposition");
    }
    auto out = s;
    for (std::size_t k = 0; k < s.size(); k++) {
        if (s.kinds[k] == SystemKind::G) {
            out.configs[k] = space.n_part(s.configs[k]);
        }
    }
    out.offset = space.identity();
    return out;
}

/// Gamma_R(n_j) o T: truncate, then shift into the frame of N-system j.
template <FrameSpace S>
BasicClassicalState<typename S::Element> irreversible_change_classical(
    const S &space, const BasicClassicalState<typename S::Element> &s, std::size_t j) {
    detail::check_slot<S>(s, j);
    if (!s.frame) {
        throw std::invalid_argument("irreversible_change_classical needs a frame");
    }
    if (s.kinds[j] != SystemKind::N) {
        throw InapplicableError("irreversible change targets N-systems only; system " + std::to_string(j) +
                                " is a G-system");
    }
    auto t = truncate_classical(space, s);
    const auto shift = space.inverse(t.configs[j]);
    for (std::size_t k = 0; k < t.size(); k++) {
        t.configs[k] = k == j ? space.identity() : space.compose(t.configs[k], shift);
    }
    t.frame = j;
    return t;
}

template <class E>
struct BasicDiscrepancy {
    /// Lambda_N(T(R_G^0 s)).
    BasicClassicalState<E> truncate_after;
    /// Lambda_N(R_N^0(T s)).
    BasicClassicalState<E> truncate_before;
    std::vector<bool> slot_agrees;
    /// Checks only the N-system slots; G-system disagreement is reported in slot_agrees.
    VerificationReport report;
};

template <FrameSpace S>
BasicDiscrepancy<typename S::Element> discrepancy_check(
    const S &space, const BasicClassicalState<typename S::Element> &s, std::size_t i) {
    detail::check_slot<S>(s, i);
    if (s.frame) {
        throw std::invalid_argument("discrepancy_check expects an external-frame state");
    }
    BasicDiscrepancy<typename S::Element> d;
    d.truncate_after = irreversible_change_classical(space, relative_state(space, s, 0), i);
    d.truncate_before = irreversible_change_classical(space, relative_state(space, truncate_classical(space, s), 0), i);
    d.report.subject = "truncation order, frame 0 -> " + std::to_string(i);
    for (std::size_t k = 0; k < s.size(); k++) {
        const bool same = d.truncate_after.configs[k] == d.truncate_before.configs[k];
        d.slot_agrees.push_back(same);
        if (s.kinds[k] == SystemKind::N) {
            d.report.require_at_most("n_slot_" + std::to_string(k), same ? 0 : 1, 0,
                                     same ? "" : space.format(d.truncate_after.configs[k]) + " vs " +
                                                     space.format(d.truncate_before.configs[k]));
        }
    }
    return d;
}

ClassicalState relative_state(const FiniteGroup &group, const ClassicalState &s, std::size_t i);
ClassicalState change_frame_classical(const FiniteGroup &group, const ClassicalState &s, std::size_t j);
ClassicalState truncate_classical(const FiniteGroup &group, const ClassicalState &s);
ClassicalState irreversible_change_classical(const FiniteGroup &group, const ClassicalState &s, std::size_t j);
BasicDiscrepancy<GroupElement> discrepancy_check(const FiniteGroup &group, const ClassicalState &s, std::size_t i);

struct ProbabilisticClassicalState {
    std::size_t frame = 0;
    std::vector<std::map<GroupElement, Rational>> measures;
    /// Sorted support of every measure: the complete invariant of the averaged description.
    std::vector<std::vector<GroupElement>> orbits;
};

/// What frame 0 can say about target's description when target's own orientation (its P part)
/// is unknown: every system becomes the uniform mixture over p (n_k n_t^-1) p^-1, p in P.
ProbabilisticClassicalState infer_average_state(const FiniteGroup &group, const ClassicalState &s, std::size_t target);

ClassicalState make_classical_state(const FiniteGroup &group, std::optional<std::size_t> frame,
                                    std::vector<SystemKind> kinds, std::vector<GroupElement> configs);

nlohmann::json to_json(const FiniteGroup &group, const ClassicalState &s);
nlohmann::json to_json(const FiniteGroup &group, const ProbabilisticClassicalState &s);

}  // namespace qrf

#endif
