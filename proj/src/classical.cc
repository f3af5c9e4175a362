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

#include "qrf/classical.h"

#include <algorithm>
#include <set>

namespace qrf {

std::string_view kind_name(SystemKind kind) {
    return kind == SystemKind::G ? "G" : "N";
}

SystemKind parse_kind(std::string_view text) {
    if (text == "G") {
        return SystemKind::G;
    }
    if (text == "N") {
        return SystemKind::N;
    }
    throw std::invalid_argument("system kind must be \"G\" or \"N\", got \"" + std::string(text) + "\"");
}

ClassicalState relative_state(const FiniteGroup &group, const ClassicalState &s, std::size_t i) {
    return relative_state(GroupSpace(group), s, i);
}

ClassicalState change_frame_classical(const FiniteGroup &group, const ClassicalState &s, std::size_t j) {
    return change_frame_classical(GroupSpace(group), s, j);
}

ClassicalState truncate_classical(const FiniteGroup &group, const ClassicalState &s) {
    return truncate_classical(GroupSpace(group), s);
}

ClassicalState irreversible_change_classical(const FiniteGroup &group, const ClassicalState &s, std::size_t j) {
    return irreversible_change_classical(GroupSpace(group), s, j);
}

BasicDiscrepancy<GroupElement> discrepancy_check(const FiniteGroup &group, const ClassicalState &s, std::size_t i) {
    return discrepancy_check(GroupSpace(group), s, i);
}

ClassicalState make_classical_state(const FiniteGroup &group, std::optional<std::size_t> frame,
                                    std::vector<SystemKind> kinds, std::vector<GroupElement> configs) {
    if (kinds.empty()) {
        kinds.assign(configs.size(), SystemKind::G);
    }
    if (kinds.size() != configs.size()) {
        throw std::invalid_argument("kinds and configs differ in length");
    }
    for (auto g : configs) {
        group.element(g.index);
    }
    ClassicalState s{frame, std::move(kinds), std::move(configs), group.identity()};
    if (frame) {
        if (*frame >= s.size()) {
            throw std::out_of_range("frame index out of range");
        }
        if (s.configs[*frame] != group.identity()) {
            throw std::invalid_argument("the frame system must hold the identity");
        }
    }
    bool any_n = std::find(s.kinds.begin(), s.kinds.end(), SystemKind::N) != s.kinds.end();
    if (any_n) {
        const auto &d = group.require_decomposition();
        for (std::size_t k = 0; k < s.size(); k++) {
            if (s.kinds[k] == SystemKind::N && !d.contains(s.configs[k])) {
                throw std::invalid_argument("N-system " + std::to_string(k) + " holds " + group.label(s.configs[k]) +
                                            ", which lies outside N");
            }
        }
    }
    return s;
}

ProbabilisticClassicalState infer_average_state(const FiniteGroup &group, const ClassicalState &s, std::size_t target) {
    if (target >= s.size()) {
        throw std::out_of_range("target index out of range");
    }
    if (!s.frame) {
        throw std::invalid_argument("infer_average_state needs a frame-relative state");
    }
    const auto &d = group.require_decomposition();
    if (d.mode == DecompositionMode::transversal_only) {
        throw InapplicableError("averaging needs a complement subgroup P; the decomposition is transversal-only");
    }
    for (std::size_t k = 0; k < s.size(); k++) {
        if (s.kinds[k] != SystemKind::N) {
            throw InapplicableError("averaging is defined for N-systems (configuration space G/P) only");
        }
    }
    ProbabilisticClassicalState out;
    out.frame = target;
    const Rational weight(1, static_cast<std::int64_t>(d.transversal.size()));
    const auto n_t_inv = group.inverse(s.configs[target]);
    for (std::size_t k = 0; k < s.size(); k++) {
        std::map<GroupElement, Rational> measure;
        if (target == *s.frame) {
            measure[s.configs[k]] = Rational(1);
        } else {
            const auto rel = group.compose(s.configs[k], n_t_inv);
            for (auto p : d.transversal) {
                measure[group.compose(group.compose(p, rel), group.inverse(p))] += weight;
            }
        }
        std::vector<GroupElement> orbit;
        for (auto &[g, w] : measure) {
            orbit.push_back(g);
        }
        out.measures.push_back(std::move(measure));
        out.orbits.push_back(std::move(orbit));
    }
    return out;
}

nlohmann::json to_json(const FiniteGroup &group, const ClassicalState &s) {
    nlohmann::json j;
    j["frame"] = s.frame ? nlohmann::json(*s.frame) : nlohmann::json("external");
    j["kinds"] = nlohmann::json::array();
    for (auto k : s.kinds) {
        j["kinds"].push_back(std::string(kind_name(k)));
    }
    j["configs"] = nlohmann::json::array();
    for (auto g : s.configs) {
        j["configs"].push_back(g.index);
    }
    if (s.offset != group.identity()) {
        j["offset"] = s.offset.index;
    }
    return j;
}

nlohmann::json to_json(const FiniteGroup &, const ProbabilisticClassicalState &s) {
    nlohmann::json j;
    j["frame"] = s.frame;
    j["measures"] = nlohmann::json::array();
    for (std::size_t k = 0; k < s.measures.size(); k++) {
        nlohmann::json m = nlohmann::json::array();
        for (auto &[g, w] : s.measures[k]) {
            m.push_back({{"config", g.index}, {"weight", format_rational(w)}});
        }
        j["measures"].push_back(m);
    }
    j["orbits"] = nlohmann::json::array();
    for (auto &orbit : s.orbits) {
        nlohmann::json o = nlohmann::json::array();
        for (auto g : orbit) {
            o.push_back(g.index);
        }
        j["orbits"].push_back(o);
    }
    return j;
}

}  // namespace qrf
