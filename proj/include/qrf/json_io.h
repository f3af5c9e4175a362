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

#ifndef QRF_JSON_IO_H
#define QRF_JSON_IO_H

#include <string>
#include <string_view>

#include "json.hpp"
#include "qrf/hilbert.h"
#include "qrf/reversible.h"

namespace qrf {

/// Parses JSON text; syntax errors become ParseError with 1-based line and column.
nlohmann::json parse_json_text(std::string_view text);
std::string read_text_file(const std::string &path);

nlohmann::json model_to_json(const SystemModel &model);
/// `{"kind": "regular", "group": spec?, "subsystem": "G"|"N"}` or
/// `{"kind": "encoded", "encoding": "half-angle:m"}`. A missing group falls back to `group`.
SystemModel model_from_json(const nlohmann::json &j, const GroupPtr &group, const std::string &base_dir = {});

/// Accepts an integer index or an element label of a regular slot.
std::uint32_t label_from_json(const nlohmann::json &j, const SystemModel &model);
Complex amplitude_from_json(const nlohmann::json &j);

nlohmann::json state_to_json(const QuantumState &psi);
nlohmann::json observable_to_json(const ObservableMatrix &z);

}  // namespace qrf

#endif
