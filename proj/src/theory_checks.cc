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

#include "qrf/theory_checks.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrf {

ProbeReport consistency_probe(const SystemModel &model, double tolerance) {
    const auto &group = model.group();
    const auto n = static_cast<Eigen::Index>(group.order());
    ProbeReport probe;
    probe.encoding = model.encoding();
    if (model.is_regular()) {
        probe.gram = Eigen::MatrixXcd::Identity(n, n);
    } else {
        probe.gram.resize(n, n);
        for (Eigen::Index g = 0; g < n; g++) {
            for (Eigen::Index h = 0; h < n; h++) {
                probe.gram(g, h) = model.injection(group.element(static_cast<std::size_t>(g)))
                                       .dot(model.injection(group.element(static_cast<std::size_t>(h))));
            }
        }
    }
    const auto e = static_cast<Eigen::Index>(group.identity().index);
    probe.residual.assign(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index d = 0; d < n; d++) {
        if (d == e) {
            continue;
        }
        const Complex z = probe.gram(e, d);
        probe.residual[static_cast<std::size_t>(d)] = std::abs(z - std::conj(z) * std::conj(z));
        if (!probe.witness && probe.residual[static_cast<std::size_t>(d)] > tolerance) {
            probe.witness = group.element(static_cast<std::size_t>(d));
        }
    }
    probe.gram_deviation = (probe.gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    for (Eigen::Index g = 0; g < n; g++) {
        const auto g_inv = group.inverse(group.element(static_cast<std::size_t>(g)));
        for (Eigen::Index h = 0; h < n; h++) {
            const auto gh = group.compose(g_inv, group.element(static_cast<std::size_t>(h)));
            probe.equivariance_deviation =
                std::max(probe.equivariance_deviation, std::abs(probe.gram(g, h) - probe.gram(e, gh.index)));
        }
    }
    probe.passed = probe.gram_deviation <= tolerance;
    if (!probe.passed && !probe.witness) {
        for (Eigen::Index d = 0; d < n && !probe.witness; d++) {
            for (Eigen::Index h = 0; h < n; h++) {
                const Complex expected = d == h ? 1.0 : 0.0;
                if (std::abs(probe.gram(d, h) - expected) > tolerance) {
                    probe.witness = group.element(static_cast<std::size_t>(d == e ? h : d));
                    break;
                }
            }
        }
    }
    return probe;
}

namespace {

double half_angle_theta(std::size_t m, std::size_t k) {
    double theta = 2.0 * std::numbers::pi * static_cast<double>(k % m) / static_cast<double>(m);
    if (theta > std::numbers::pi + 1e-12) {
        theta -= 2.0 * std::numbers::pi;
    }
    return theta;
}

Eigen::Vector2d psi(double angle) {
    return {std::cos(angle / 2), std::sin(angle / 2)};
}

Eigen::VectorXd kron3(const Eigen::Vector2d &x, const Eigen::Vector2d &y, const Eigen::Vector2d &z) {
    Eigen::VectorXd v(8);
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            for (int k = 0; k < 2; k++) {
                v(4 * i + 2 * j + k) = x(i) * y(j) * z(k);
            }
        }
    }
    return v;
}

}  // namespace

Eigen::VectorXd linearity_input(std::size_t m, std::size_t c, std::size_t a, std::size_t b) {
    return kron3(psi(half_angle_theta(m, c)), psi(half_angle_theta(m, a)), psi(half_angle_theta(m, b)));
}

Eigen::VectorXd linearity_target(std::size_t m, std::size_t c, std::size_t a, std::size_t b) {
    const double tc = half_angle_theta(m, c), ta = half_angle_theta(m, a), tb = half_angle_theta(m, b);
    return kron3(psi(-ta), psi(tc), psi(tb - ta));
}

LinearityResult linearity_counterexample(std::size_t m) {
    if (m < 2) {
        throw std::invalid_argument("linearity_counterexample needs m >= 2");
    }
    const auto count = static_cast<Eigen::Index>(m * m * m);
    Eigen::MatrixXd x(count, 8), y(count, 8);
    Eigen::Index row = 0;
    for (std::size_t c = 0; c < m; c++) {
        for (std::size_t a = 0; a < m; a++) {
            for (std::size_t b = 0; b < m; b++, row++) {
                x.row(row) = linearity_input(m, c, a, b).transpose();
                y.row(row) = linearity_target(m, c, a, b).transpose();
            }
        }
    }
    // Rows of X M^T = Y; solve all eight output columns at once.
    const Eigen::MatrixXd mt = x.completeOrthogonalDecomposition().solve(y);
    const Eigen::MatrixXd err = x * mt - y;
    LinearityResult result;
    result.m = m;
    result.max_deviation = err.rowwise().norm().maxCoeff();
    result.report.subject = "linear fit of the half-angle frame change, m = " + std::to_string(m);
    if (m == 2) {
        result.report.require_at_most("linear_map_exists", result.max_deviation, 1e-10);
    } else {
        result.report.require_above("no_linear_map", result.max_deviation, 0.1);
    }
    return result;
}

nlohmann::json to_json(const ProbeReport &probe) {
    nlohmann::json j;
    j["encoding"] = probe.encoding;
    j["verdict"] = probe.passed ? "orthonormal-pass" : "fail";
    j["witness"] = probe.witness ? nlohmann::json(probe.witness->index) : nlohmann::json(nullptr);
    j["gram_deviation"] = round_significant(probe.gram_deviation, 3);
    j["equivariance_deviation"] = round_significant(probe.equivariance_deviation, 3);
    j["residuals"] = nlohmann::json::array();
    for (double r : probe.residual) {
        j["residuals"].push_back(round_significant(r, 3));
    }
    j["gram"] = nlohmann::json::array();
    for (Eigen::Index g = 0; g < probe.gram.rows(); g++) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index h = 0; h < probe.gram.cols(); h++) {
            row.push_back({round_significant(probe.gram(g, h).real(), 6), round_significant(probe.gram(g, h).imag(), 6)});
        }
        j["gram"].push_back(row);
    }
    return j;
}

}  // namespace qrf
