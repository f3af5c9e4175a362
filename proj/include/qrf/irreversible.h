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

#ifndef QRF_IRREVERSIBLE_H
#define QRF_IRREVERSIBLE_H

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qrf/hilbert.h"

namespace qrf {

/// T = sum_{n, p} |n><np| for the decomposition attached to a group.
struct TruncationMap {
    GroupPtr group;
    /// image[g] = n-part of g.
    std::vector<std::uint32_t> image;

    /// |G| x |G| matrix of T acting on parent-group labels (not unitary).
    Eigen::MatrixXcd matrix() const;
};

TruncationMap truncation_map(GroupPtr group);

/// Replaces the label of every listed slot by its n-part; colliding amplitudes add. The
/// result is not renormalized, so norm() reports the post-truncation norm.
QuantumState truncate_state(const QuantumState &psi, const std::vector<std::size_t> &slots);

/// V^{frame -> target} = U_N^{frame -> target} o T on every regular slot. T is the identity on
/// N, so truncating N-systems is harmless and covers targets held in superposition across
/// a cell. The result is renormalized and norm_factor records the norm after T. All slots
/// come out tagged as N-systems.
QuantumState change_frame_irreversible(const QuantumState &psi, std::size_t target);

}  // namespace qrf

#endif
