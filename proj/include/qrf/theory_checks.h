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

#ifndef QRF_THEORY_CHECKS_H
#define QRF_THEORY_CHECKS_H

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "qrf/hilbert.h"
#include "qrf/report.h"

namespace qrf {

struct ProbeReport {
    std::string encoding;
    /// gram(g, h) = <psi(g)|psi(h)>.
    Eigen::MatrixXcd gram;
    /// residual[d] = |<psi(e)|psi(d)> - conj(<psi(e)|psi(d)>)^2|, zero at d = e.
    std::vector<double> residual;
    double gram_deviation = 0;
    /// max |gram(g, h) - gram(e, g^-1 h)|; nonzero flags an encoding defect.
    double equivariance_deviation = 0;
    bool passed = false;
    /// First d != e violating the inner-product condition (or failing orthonormality).
    std::optional<GroupElement> witness;
};

/// Unitarity of the change of frame forces every psi(d), d != e, to be orthogonal to psi(e).
/// Passes iff the gram matrix is the identity to `tolerance`.
ProbeReport consistency_probe(const SystemModel &model, double tolerance = 1e-10);

struct LinearityResult {
    std::size_t m = 0;
    /// max_i |M x_i - y_i| for the least-squares linear M over all m^3 encoded triples.
    double max_deviation = 0;
    VerificationReport report;
};

/// Tries to realize psi(c) psi(a) psi(b) -> psi(-t_a) psi(t_c) psi(t_b - t_a) on three
/// half-angle qubits as a linear map. Angles are taken in (-pi, pi] and combined without
/// wrapping, so signs of the encoding are part of the target.
LinearityResult linearity_counterexample(std::size_t m);

/// The three-qubit target vector for encoded labels (c, a, b).
Eigen::VectorXd linearity_target(std::size_t m, std::size_t c, std::size_t a, std::size_t b);
Eigen::VectorXd linearity_input(std::size_t m, std::size_t c, std::size_t a, std::size_t b);

nlohmann::json to_json(const ProbeReport &probe);

}  // namespace qrf

#endif
