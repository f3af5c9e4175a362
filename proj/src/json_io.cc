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

#include "qrf/json_io.h"

#include <fstream>
#include <sstream>

#include "qrf/errors.h"

namespace qrf {

nlohmann::json parse_json_text(std::string_view text) {
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &ex) {
        const std::size_t offset = std::min<std::size_t>(ex.byte == 0 ? 0 : ex.byte - 1, text.size());
        std::size_t line = 1, column = 1;
        for (std::size_t k = 0; k < offset; k++) {
            if (text[k] == '\n') {
                line++;
                column = 1;
            } else {
                column++;
            }
        }
        std::string message = ex.what();
        auto colon = message.find("; ");
        throw ParseError("invalid JSON" + (colon == std::string::npos ? "" : ": " + message.substr(colon + 2)), line,
                         column);
    }
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json model_to_json(const SystemModel &model) {
    if (model.is_regular()) {
        return {{"kind", "regular"}, {"group", model.group().spec()}, {"subsystem", std::string(kind_name(model.subsystem()))}};
    }
    return {{"kind", "encoded"}, {"encoding", model.encoding()}};
}

SystemModel model_from_json(const nlohmann::json &j, const GroupPtr &group, const std::string &base_dir) {
    if (!j.is_object()) {
        throw ParseError("system model must be a JSON object");
    }
    const std::string kind = j.value("kind", "regular");
    if (kind == "regular") {
        GroupPtr g = group;
        if (j.contains("group")) {
            const auto spec = j.at("group").get<std::string>();
            g = group && spec == group->spec() ? group : build_group(spec, base_dir);
        }
        if (!g) {
            throw ParseError("regular system needs a group");
        }
        return SystemModel::regular(g, parse_kind(j.value("subsystem", "G")));
    }
    if (kind == "encoded") {
        const auto encoding = j.at("encoding").get<std::string>();
        const std::string prefix = "half-angle:";
        if (encoding.rfind(prefix, 0) != 0) {
            throw ParseError("unknown encoding '" + encoding + "' (supported: half-angle:m)");
        }
        std::size_t m = 0;
        try {
            m = std::stoul(encoding.substr(prefix.size()));
        } catch (const std::exception &) {
            throw ParseError("malformed encoding '" + encoding + "'");
        }
        return SystemModel::half_angle(m);
    }
    throw ParseError("unknown system kind '" + kind + "'");
}

std::uint32_t label_from_json(const nlohmann::json &j, const SystemModel &model) {
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        auto v = j.get<std::uint64_t>();
        if (v >= model.dimension()) {
            throw std::out_of_range("label " + std::to_string(v) + " out of range for dimension " +
                                    std::to_string(model.dimension()));
        }
        return static_cast<std::uint32_t>(v);
    }
    if (j.is_string() && model.is_regular()) {
        auto g = model.group().find_label(j.get<std::string>());
        if (!g) {
            throw std::invalid_argument("unknown element label '" + j.get<std::string>() + "' in " +
                                        model.group().spec());
        }
        return g->index;
    }
    throw std::invalid_argument("labels must be non-negative integers or element names");
}

Complex amplitude_from_json(const nlohmann::json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw std::invalid_argument("amplitude must be a number or [re, im]");
}

nlohmann::json state_to_json(const QuantumState &psi) {
    nlohmann::json j;
    j["frame"] = psi.frame;
    j["models"] = nlohmann::json::array();
    for (auto &m : psi.models) {
        j["models"].push_back(model_to_json(m));
    }
    j["terms"] = nlohmann::json::array();
    for (auto &[labels, amp] : psi.terms) {
        j["terms"].push_back({{"labels", labels},
                              {"amp", {round_significant(amp.real(), 12), round_significant(amp.imag(), 12)}}});
    }
    j["norm_factor"] = round_significant(psi.norm_factor, 12);
    return j;
}

nlohmann::json observable_to_json(const ObservableMatrix &z) {
    nlohmann::json entries = nlohmann::json::array();
    for (Eigen::Index c = 0; c < z.matrix.cols(); c++) {
        for (Eigen::Index r = 0; r < z.matrix.rows(); r++) {
            const Complex v = z.matrix(r, c);
            if (std::abs(v) >= kDropTolerance) {
                entries.push_back({{"row", unflatten(z.models, static_cast<std::size_t>(r))},
                                   {"col", unflatten(z.models, static_cast<std::size_t>(c))},
                                   {"value", {round_significant(v.real(), 12), round_significant(v.imag(), 12)}}});
            }
        }
    }
    return {{"dimension", z.matrix.rows()}, {"nonzero", entries}};
}

}  // namespace qrf
