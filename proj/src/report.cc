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

#include "qrf/report.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qrf {

CheckResult &VerificationReport::require_at_most(
    std::string name, double residual, double tolerance, std::string detail) {
    const bool ok = !std::isnan(residual) && residual <= tolerance;
    checks.push_back({std::move(name), residual, tolerance, ok, std::move(detail)});
    return checks.back();
}

CheckResult &VerificationReport::require_above(std::string name, double value, double threshold, std::string detail) {
    const bool ok = !std::isnan(value) && value > threshold;
    checks.push_back({std::move(name), value, threshold, ok, std::move(detail)});
    return checks.back();
}

void VerificationReport::append(const VerificationReport &other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool VerificationReport::passed() const {
    for (const auto &c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

const CheckResult *VerificationReport::find(const std::string &name) const {
    for (const auto &c : checks) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) {
        return value;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return std::strtod(buf, nullptr);
}

nlohmann::json to_json(const VerificationReport &report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : report.checks) {
        nlohmann::json entry = {
            {"name", c.name},
            {"residual", round_significant(c.residual, 3)},
            {"tolerance", round_significant(c.tolerance, 3)},
            {"passed", c.passed},
        };
        if (!c.detail.empty()) {
            entry["detail"] = c.detail;
        }
        checks.push_back(std::move(entry));
    }
    return {{"subject", report.subject}, {"passed", report.passed()}, {"checks", std::move(checks)}};
}

}  // namespace qrf
