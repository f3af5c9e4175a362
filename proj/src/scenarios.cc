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

#include "qrf/scenarios.h"

#include <filesystem>
#include <stdexcept>

#include "qrf/errors.h"
#include "qrf/irreversible.h"
#include "qrf/json_io.h"
#include "qrf/reversible.h"

namespace qrf {

WignerResult run_wigner(Complex alpha, Complex beta, bool with_reference) {
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > kUnitTolerance) {
        throw std::invalid_argument("|alpha|^2 + |beta|^2 must equal 1");
    }
    auto z2 = build_group("Z:2");
    WignerResult r;
    r.with_reference = with_reference;
    const std::size_t n = with_reference ? 4 : 3;
    r.f_slot = n - 2;
    r.s_slot = n - 1;
    std::vector<SystemModel> models(n, SystemModel::regular(z2));
    Labels up(n, 0), down(n, 0);
    down[r.s_slot] = 1;
    r.initial = superpose({alpha, beta}, {basis_state(models, 0, up), basis_state(models, 0, down)});

    r.post_measurement = QuantumState{0, models, {}, 1.0};
    for (const auto &[labels, amp] : r.initial.terms) {
        Labels l = labels;
        l[r.f_slot] = z2->compose(GroupElement{l[r.f_slot]}, GroupElement{l[r.s_slot]}).index;
        r.post_measurement.terms[l] += amp;
    }
    r.inferred_by_friend = change_frame_quantum(r.post_measurement, r.f_slot);

    const auto friend_view = change_frame_quantum(r.initial, r.f_slot);
    const std::array<double, 2> probability{std::norm(alpha), std::norm(beta)};
    for (std::uint32_t outcome = 0; outcome < 2; outcome++) {
        QuantumState branch{r.f_slot, models, {}, 1.0};
        for (const auto &[labels, amp] : friend_view.terms) {
            if (labels[r.s_slot] == outcome) {
                branch.terms[labels] = amp;
            }
        }
        auto &b = r.projection_branches[outcome];
        b.probability = probability[outcome];
        b.state = branch.terms.empty() ? branch : normalized(branch);
        b.state.norm_factor = 1.0;
    }

    auto &v = r.verdict;
    v.inferred_s_fixed = true;
    for (const auto &[labels, amp] : r.inferred_by_friend.terms) {
        v.inferred_s_fixed = v.inferred_s_fixed && labels[r.s_slot] == 0;
    }
    v.branches_s_definite = true;
    for (std::size_t k = 0; k < 2; k++) {
        const auto &b = r.projection_branches[k].state;
        for (const auto &[labels, amp] : b.terms) {
            v.branches_s_definite = v.branches_s_definite && labels[r.s_slot] == k;
        }
        v.branch_distance[k] = b.terms.empty() ? 1.0 : state_distance(r.inferred_by_friend, b);
        v.inference_matches_projection =
            v.inference_matches_projection || (!b.terms.empty() && v.branch_distance[k] <= kUnitTolerance);
    }
    v.w_rank = schmidt_rank(r.inferred_by_friend, {0});
    return r;
}

nlohmann::json to_json(const WignerResult &r) {
    nlohmann::json j;
    j["with_reference"] = r.with_reference;
    j["systems"] = r.with_reference ? nlohmann::json({"W", "R", "F", "S"}) : nlohmann::json({"W", "F", "S"});
    j["initial"] = state_to_json(r.initial);
    j["post_measurement"] = state_to_json(r.post_measurement);
    j["inferred_by_friend"] = state_to_json(r.inferred_by_friend);
    j["projection_branches"] = nlohmann::json::array();
    for (const auto &b : r.projection_branches) {
        j["projection_branches"].push_back(
            {{"probability", round_significant(b.probability, 12)}, {"state", state_to_json(b.state)}});
    }
    const auto &v = r.verdict;
    j["verdict"] = {{"branch_distance", {round_significant(v.branch_distance[0], 12), round_significant(v.branch_distance[1], 12)}},
                    {"inferred_s_fixed", v.inferred_s_fixed},
                    {"branches_s_definite", v.branches_s_definite},
                    {"w_schmidt_rank", v.w_rank},
                    {"inference_matches_projection", v.inference_matches_projection}};
    return j;
}

namespace {

struct ScenarioContext {
    std::vector<std::string> names;
};

std::size_t resolve_system(const nlohmann::json &j, const ScenarioContext &ctx, const char *field) {
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < 0 || static_cast<std::size_t>(v) >= ctx.names.size()) {
            throw std::out_of_range(std::string(field) + " index " + std::to_string(v) + " out of range");
        }
        return static_cast<std::size_t>(v);
    }
    if (j.is_string()) {
        for (std::size_t k = 0; k < ctx.names.size(); k++) {
            if (ctx.names[k] == j.get<std::string>()) {
                return k;
            }
        }
        throw std::invalid_argument(std::string(field) + " names unknown system '" + j.get<std::string>() + "'");
    }
    throw ParseError(std::string(field) + " must be a system index or name");
}

std::vector<std::size_t> resolve_systems(const nlohmann::json &j, const ScenarioContext &ctx, const char *field) {
    if (!j.is_array()) {
        throw ParseError(std::string(field) + " must be an array");
    }
    std::vector<std::size_t> out;
    for (const auto &x : j) {
        out.push_back(resolve_system(x, ctx, field));
    }
    return out;
}

const nlohmann::json &require_field(const nlohmann::json &j, const char *field, const char *where) {
    if (!j.is_object() || !j.contains(field)) {
        throw ParseError(std::string(where) + " is missing field '" + field + "'");
    }
    return j.at(field);
}

ObservableMatrix observable_from_json(const nlohmann::json &step, const QuantumState &psi, const ScenarioContext &ctx) {
    const auto dim = static_cast<Eigen::Index>(product_dimension(psi.models));
    ObservableMatrix z{psi.models, Eigen::MatrixXcd::Zero(dim, dim)};
    if (step.contains("projector")) {
        const auto &p = step.at("projector");
        const auto slot = resolve_system(require_field(p, "slot", "projector"), ctx, "projector.slot");
        const auto label = label_from_json(require_field(p, "label", "projector"), psi.models[slot]);
        for (Eigen::Index k = 0; k < dim; k++) {
            if (unflatten(psi.models, static_cast<std::size_t>(k))[slot] == label) {
                z.matrix(k, k) = 1.0;
            }
        }
        return z;
    }
    if (step.contains("matrix")) {
        const auto &m = step.at("matrix");
        if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != dim) {
            throw ParseError("observable matrix must have " + std::to_string(dim) + " rows");
        }
        for (Eigen::Index r = 0; r < dim; r++) {
            const auto &row = m[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
                throw ParseError("observable matrix must be square");
            }
            for (Eigen::Index c = 0; c < dim; c++) {
                z.matrix(r, c) = amplitude_from_json(row[static_cast<std::size_t>(c)]);
            }
        }
        return z;
    }
    throw ParseError("transform_observable needs a 'projector' or 'matrix'");
}

Complex expectation(const ObservableMatrix &z, const QuantumState &psi) {
    const Eigen::VectorXcd v = to_dense(psi);
    return v.dot(z.matrix * v);
}

std::optional<double> oracle_residual(const QuantumState &before, const QuantumState &after, std::size_t target) {
    std::size_t dim = 1;
    for (auto &m : before.models) {
        dim *= m.dimension();
        if (dim > kMaxDenseDimension) {
            return std::nullopt;
        }
    }
    const auto u = build_dense_operator(before.models, before.frame, target);
    const Eigen::VectorXcd expected = u.matrix * to_dense(before);
    return (expected - to_dense(after)).cwiseAbs().maxCoeff();
}

}  // namespace

ScenarioResult run_scenario_json(const nlohmann::json &scenario, const std::string &base_dir,
                                 const ScenarioOptions &options) {
    if (!scenario.is_object()) {
        throw ParseError("scenario must be a JSON object");
    }
    const auto &schema = require_field(scenario, "schema", "scenario");
    if (!schema.is_number_integer() || schema.get<int>() != 1) {
        throw ParseError("unsupported scenario schema (expected 1)");
    }
    GroupPtr group;
    if (scenario.contains("group")) {
        group = build_group(scenario.at("group").get<std::string>(), base_dir);
    }
    ScenarioContext ctx;
    std::vector<SystemModel> models;
    const auto &systems = require_field(scenario, "systems", "scenario");
    if (systems.is_number_unsigned()) {
        if (!group) {
            throw ParseError("a system count needs a scenario-level group");
        }
        for (std::size_t k = 0; k < systems.get<std::size_t>(); k++) {
            models.push_back(SystemModel::regular(group));
            ctx.names.push_back(std::to_string(k));
        }
    } else if (systems.is_array()) {
        for (std::size_t k = 0; k < systems.size(); k++) {
            models.push_back(model_from_json(systems[k], group, base_dir));
            ctx.names.push_back(systems[k].value("name", std::to_string(k)));
        }
    } else {
        throw ParseError("'systems' must be a count or an array of system objects");
    }
    if (models.empty()) {
        throw ParseError("scenario needs at least one system");
    }

    const auto &state = require_field(scenario, "state", "scenario");
    QuantumState psi;
    psi.frame = resolve_system(require_field(state, "frame", "state"), ctx, "state.frame");
    psi.models = models;
    const auto &terms = require_field(state, "terms", "state");
    if (!terms.is_array() || terms.empty()) {
        throw ParseError("state.terms must be a non-empty array");
    }
    for (const auto &t : terms) {
        const auto &labels_json = require_field(t, "labels", "term");
        if (!labels_json.is_array() || labels_json.size() != models.size()) {
            throw ParseError("every term needs " + std::to_string(models.size()) + " labels");
        }
        Labels labels;
        for (std::size_t k = 0; k < models.size(); k++) {
            labels.push_back(label_from_json(labels_json[k], models[k]));
        }
        psi.terms[labels] += t.contains("amp") ? amplitude_from_json(t.at("amp")) : Complex(1.0);
    }
    prune(psi);
    check_frame_slot(psi);
    if (state.value("normalize", false)) {
        psi = normalized(psi);
        psi.norm_factor = 1.0;
    } else if (!psi.is_normalized()) {
        throw std::invalid_argument("initial state is not normalized; set \"normalize\": true");
    }

    ScenarioResult result;
    result.checks.subject = "scenario";
    nlohmann::json steps = nlohmann::json::array();
    const auto &pipeline = scenario.contains("pipeline") ? scenario.at("pipeline") : nlohmann::json::array();
    if (!pipeline.is_array()) {
        throw ParseError("'pipeline' must be an array");
    }
    for (std::size_t s = 0; s < pipeline.size(); s++) {
        const auto &step = pipeline[s];
        const auto op = require_field(step, "op", "pipeline step").get<std::string>();
        const std::string tag = "step " + std::to_string(s) + " (" + op + ")";
        nlohmann::json out{{"op", op}};
        if (op == "change_frame") {
            const auto target = resolve_system(require_field(step, "target", "change_frame"), ctx, "target");
            auto next = change_frame_mixed(psi, target);
            if (auto r = oracle_residual(psi, next, target)) {
                result.checks.require_at_most(tag + " oracle", *r, options.tolerance);
                out["oracle_residual"] = round_significant(*r, 3);
            } else {
                out["oracle_residual"] = nullptr;
            }
            psi = std::move(next);
            out["state"] = state_to_json(psi);
        } else if (op == "truncate" || op == "irreversible_change") {
            if (!options.allow_truncation) {
                throw InapplicableError(tag + ": truncation steps are not allowed here; use the truncate command");
            }
            if (op == "truncate") {
                auto slots = resolve_systems(require_field(step, "slots", "truncate"), ctx, "slots");
                auto truncated = truncate_state(psi, slots);
                out["norm"] = round_significant(truncated.norm(), 12);
                psi = normalized(truncated);
            } else {
                const auto target = resolve_system(require_field(step, "target", "irreversible_change"), ctx, "target");
                auto next = change_frame_irreversible(psi, target);
                auto truncated_models = next.models;
                QuantumState pre = normalized(truncate_state(psi, [&] {
                    std::vector<std::size_t> all(psi.size());
                    for (std::size_t k = 0; k < all.size(); k++) {
                        all[k] = k;
                    }
                    return all;
                }()));
                pre.models = truncated_models;
                if (auto r = oracle_residual(pre, next, target)) {
                    result.checks.require_at_most(tag + " oracle", *r, options.tolerance);
                    out["oracle_residual"] = round_significant(*r, 3);
                } else {
                    out["oracle_residual"] = nullptr;
                }
                psi = std::move(next);
            }
            out["norm_factor"] = round_significant(psi.norm_factor, 12);
            out["state"] = state_to_json(psi);
        } else if (op == "schmidt_rank") {
            auto left = resolve_systems(require_field(step, "left", "schmidt_rank"), ctx, "left");
            out["left"] = left;
            out["rank"] = schmidt_rank(psi, left, step.value("tolerance", kUnitTolerance));
        } else if (op == "transform_observable") {
            const auto target = resolve_system(require_field(step, "target", "transform_observable"), ctx, "target");
            auto z = observable_from_json(step, psi, ctx);
            auto zt = transform_observable(z, psi.frame, target);
            auto moved = change_frame_mixed(psi, target);
            const Complex before = expectation(z, psi), after = expectation(zt, moved);
            const double r = std::abs(before - after);
            result.checks.require_at_most(tag + " expectation", r, 1e-9);
            out["observable"] = observable_to_json(zt);
            out["expectation"] = {round_significant(before.real(), 12), round_significant(before.imag(), 12)};
            out["expectation_residual"] = round_significant(r, 3);
        } else {
            throw ParseError("unknown pipeline op '" + op + "'");
        }
        steps.push_back(std::move(out));
    }
    result.output = psi;
    result.report = {{"schema", 1},
                     {"input", scenario},
                     {"steps", steps},
                     {"output", state_to_json(psi)},
                     {"norm_factor", round_significant(psi.norm_factor, 12)},
                     {"checks", to_json(result.checks)},
                     {"passed", result.checks.passed()}};
    return result;
}

ScenarioResult run_scenario(const std::string &path, const ScenarioOptions &options) {
    const auto text = read_text_file(path);
    const auto j = parse_json_text(text);
    return run_scenario_json(j, std::filesystem::path(path).parent_path().string(), options);
}

}  // namespace qrf
