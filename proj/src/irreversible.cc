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

#include "qrf/irreversible.h"

#include <stdexcept>

#include "qrf/errors.h"
#include "qrf/reversible.h"

namespace qrf {

Eigen::MatrixXcd TruncationMap::matrix() const {
    const auto n = static_cast<Eigen::Index>(image.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index g = 0; g < n; g++) {
        m(image[static_cast<std::size_t>(g)], g) = 1.0;
    }
    return m;
}

TruncationMap truncation_map(GroupPtr group) {
    const auto &d = group->require_decomposition();
    TruncationMap t{group, {}};
    for (std::size_t g = 0; g < group->order(); g++) {
        t.image.push_back(d.n_part(group->element(g)).index);
    }
    return t;
}

QuantumState truncate_state(const QuantumState &psi, const std::vector<std::size_t> &slots) {
    std::vector<const SubgroupDecomposition *> decomposition(psi.size(), nullptr);
    for (auto k : slots) {
        if (k >= psi.size()) {
            throw std::out_of_range("slot " + std::to_string(k) + " out of range");
        }
        const auto &m = psi.models[k];
        if (!m.is_regular()) {
            throw InapplicableError("slot " + std::to_string(k) + " is encoded; truncation acts on regular systems");
        }
        if (m.group().decomposition() == nullptr) {
            throw InapplicableError("slot " + std::to_string(k) + " has no normal-subgroup decomposition");
        }
        decomposition[k] = m.group().decomposition();
    }
    QuantumState out;
    out.frame = psi.frame;
    out.models = psi.models;
    out.norm_factor = psi.norm_factor;
    for (const auto &[labels, amp] : psi.terms) {
        Labels l = labels;
        for (std::size_t k = 0; k < l.size(); k++) {
            if (decomposition[k] != nullptr) {
                l[k] = decomposition[k]->n_part(GroupElement{l[k]}).index;
            }
        }
        out.terms[l] += amp;
    }
    prune(out);
    return out;
}

QuantumState change_frame_irreversible(const QuantumState &psi, std::size_t target) {
    if (target >= psi.size()) {
        throw std::out_of_range("target index out of range");
    }
    if (!psi.models[target].is_regular() || psi.models[target].subsystem() != SystemKind::N) {
        throw InapplicableError("irreversible change targets N-systems only; system " + std::to_string(target) +
                                " is not one");
    }
    std::vector<std::size_t> slots;
    for (std::size_t k = 0; k < psi.size(); k++) {
        if (!psi.models[k].is_regular()) {
            throw InapplicableError("irreversible change needs regular systems; system " + std::to_string(k) +
                                    " is encoded");
        }
        slots.push_back(k);
    }
    check_frame_slot(psi);
    auto truncated = truncate_state(psi, slots);
    for (auto &m : truncated.models) {
        m = m.with_subsystem(SystemKind::N);
    }
    auto renormalized = normalized(truncated);
    auto out = change_frame_quantum(renormalized, target);
    out.norm_factor = renormalized.norm_factor;
    return out;
}

}  // namespace qrf
