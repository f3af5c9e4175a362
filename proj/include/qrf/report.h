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

#ifndef QRF_REPORT_H
#define QRF_REPORT_H

#include <string>
#include <vector>

#include "json.hpp"

namespace qrf {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

/// Structured pass/fail record of a verification run.
struct VerificationReport {
    std::string subject;
    std::vector<CheckResult> checks;

    /// Passes when residual <= tolerance.
    CheckResult &require_at_most(std::string name, double residual, double tolerance, std::string detail = {});
    /// Passes when value > threshold.
    CheckResult &require_above(std::string name, double value, double threshold, std::string detail = {});
    void append(const VerificationReport &other);

    bool passed() const;
    const CheckResult *find(const std::string &name) const;
};

/// Rounds to the given number of significant digits (round-trip through "%.*g").
double round_significant(double value, int digits);

/// Residuals are written with 3 significant digits.
nlohmann::json to_json(const VerificationReport &report);

}  // namespace qrf

#endif
