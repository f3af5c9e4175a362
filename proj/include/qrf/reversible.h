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

#ifndef QRF_REVERSIBLE_H
#define QRF_REVERSIBLE_H

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qrf/hilbert.h"
#include "qrf/report.h"

namespace qrf {

enum class Side { left, right };

struct RegularActionMap {
    GroupPtr group;
    Side side = Side::right;
    GroupElement element;
    /// permutation[h] = g h (left) or h g^-1 (right).
    std::vector<std::uint32_t> permutation;

    Eigen::MatrixXcd matrix() const;
};

RegularActionMap regular_action(GroupPtr group, Side side, GroupElement g);

/// U^{frame -> target} on a state whose systems are all regular over one group.
QuantumState change_frame_quantum(const QuantumState &psi, std::size_t target);
/// Same, with encoded systems transformed by vR(g) on their C^d component.
QuantumState change_frame_mixed(const QuantumState &psi, std::size_t target);

struct DenseOperator {
    std::vector<SystemModel> models;
    Eigen::MatrixXcd matrix;
};

/// Explicit matrix of U^{source -> target} over the full product space, assembled column by
/// column from per-slot local matrices followed by the SWAP permutation.
DenseOperator build_dense_operator(const std::vector<SystemModel> &models, std::size_t source, std::size_t target);

struct ObservableMatrix {
    std::vector<SystemModel> models;
    Eigen::MatrixXcd matrix;
};

/// Z^target = U Z^source U^dagger.
ObservableMatrix transform_observable(const ObservableMatrix &z, std::size_t source, std::size_t target);

struct LemmaOptions {
    double tolerance = 1e-10;
    /// Use the serial reference kernels instead of the OpenMP ones.
    bool serial = false;
};

/// Unitarity, adjoint-inverse and transitivity of U^{i->j} over n regular copies of the group.
VerificationReport verify_lemmas(const GroupPtr &group, std::size_t systems, const LemmaOptions &options = {});

/// U^{A->B} against P_AB C on three Z_d systems, where C shifts C by -x_B and P_AB maps
/// |a, x, y> to |-x, a, y>.
VerificationReport translation_equivalence_check(std::size_t d, double tolerance = 1e-12);

}  // namespace qrf

#endif
