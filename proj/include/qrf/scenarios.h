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

#ifndef QRF_SCENARIOS_H
#define QRF_SCENARIOS_H

#include <array>
#include <string>

#include "json.hpp"
#include "qrf/hilbert.h"
#include "qrf/report.h"

namespace qrf {

struct WignerBranch {
    double probability = 0;
    QuantumState state;
};

struct WignerVerdict {
    /// Euclidean distance from the inferred state to each branch (no phase quotient).
    std::array<double, 2> branch_distance{};
    /// Every term of the inferred state has S = up.
    bool inferred_s_fixed = false;
    /// Each branch has S in a single basis state.
    bool branches_s_definite = false;
    /// Schmidt rank of the inferred state across {W} | rest. With the extra reference system
    /// F and S are fixed at up, so this is the W-R entanglement.
    std::size_t w_rank = 0;
    /// True when the inferred state coincides with one of the branches.
    bool inference_matches_projection = false;
};

struct WignerResult {
    bool with_reference = false;
    std::size_t s_slot = 0;
    std::size_t f_slot = 0;
    QuantumState initial;
    QuantumState post_measurement;
    QuantumState inferred_by_friend;
    std::array<WignerBranch, 2> projection_branches;
    WignerVerdict verdict;
};

/// Z_2 systems (W, F, S) or (W, R, F, S) relative to W. The friend measures S by the
/// controlled flip |up up> -> |up up>, |up down> -> |down down> on F, S; the inferred state
/// is U^{W -> F} of the post-measurement state.
WignerResult run_wigner(Complex alpha, Complex beta, bool with_reference);

nlohmann::json to_json(const WignerResult &result);

struct ScenarioOptions {
    /// Permit truncate and irreversible_change steps.
    bool allow_truncation = true;
    /// Tolerance applied to the dense-oracle residuals.
    double tolerance = 1e-10;
};

struct ScenarioResult {
    nlohmann::json report;
    QuantumState output;
    VerificationReport checks;
};

ScenarioResult run_scenario_json(const nlohmann::json &scenario, const std::string &base_dir,
                                 const ScenarioOptions &options = {});
ScenarioResult run_scenario(const std::string &path, const ScenarioOptions &options = {});

}  // namespace qrf

#endif
