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

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrf/errors.h"
#include "qrf/group.h"
#include "qrf/json_io.h"
#include "qrf/reversible.h"
#include "qrf/scenarios.h"
#include "qrf/theory_checks.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct GlobalOptions {
    std::string out;
    double tolerance = 1e-10;
    bool pretty = false;
    bool compact = false;
};

void emit(const nlohmann::json &j, const GlobalOptions &g) {
    const std::string text = g.pretty ? j.dump(2) : j.dump();
    if (g.out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) {
        throw qrf::ParseError("cannot write '" + g.out + "'");
    }
    f << text << "\n";
}

std::complex<double> parse_complex(const std::string &text) {
    std::stringstream ss(text);
    std::string re, im;
    std::getline(ss, re, ',');
    std::getline(ss, im);
    try {
        std::size_t used = 0;
        double r = std::stod(re, &used);
        if (used != re.size()) {
            throw std::invalid_argument(text);
        }
        double i = 0;
        if (!im.empty()) {
            i = std::stod(im, &used);
            if (used != im.size()) {
                throw std::invalid_argument(text);
            }
        }
        return {r, i};
    } catch (const std::exception &) {
        throw std::invalid_argument("expected a complex number as 're,im', got '" + text + "'");
    }
}

nlohmann::json group_json(const qrf::FiniteGroup &g) {
    nlohmann::json j{{"spec", g.spec()}, {"order", g.order()}, {"identity", g.identity().index}, {"labels", g.labels()}};
    if (const auto *d = g.decomposition()) {
        nlohmann::json n = nlohmann::json::array(), t = nlohmann::json::array();
        for (auto x : d->n_subgroup) {
            n.push_back(x.index);
        }
        for (auto x : d->transversal) {
            t.push_back(x.index);
        }
        j["decomposition"] = {{"mode", std::string(qrf::mode_name(d->mode))}, {"n_subgroup", n}, {"transversal", t}};
    }
    return j;
}

qrf::SystemModel encoding_model(const std::string &spec) {
    const std::string regular = "regular:", half = "half-angle:";
    if (spec.rfind(regular, 0) == 0) {
        return qrf::SystemModel::regular(qrf::build_group(spec.substr(regular.size())));
    }
    if (spec.rfind(half, 0) == 0) {
        return qrf::SystemModel::half_angle(std::stoul(spec.substr(half.size())));
    }
    throw std::invalid_argument("encoding must be regular:<group spec> or half-angle:<m>");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Relational classical and quantum reference frames over finite groups"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOptions g;
    app.add_option("--out", g.out, "Write the report to this path instead of stdout");
    app.add_option("--tolerance", g.tolerance, "Residual tolerance for verification checks")->check(CLI::PositiveNumber);
    auto *json_flag = app.add_flag("--json", g.compact, "Compact JSON output (default)");
    auto *pretty_flag = app.add_flag("--pretty", g.pretty, "Indented JSON output");
    json_flag->excludes(pretty_flag);

    std::string group_spec;
    bool verify_axioms = false;
    auto *group_cmd = app.add_subcommand("group", "Build a group and describe it");
    group_cmd->add_option("spec", group_spec, "Group spec: Z:n[,cells=L], D:n, S:n, prod:AxB, semidirect:<file>, cayley:<file>")
        ->required();
    group_cmd->add_flag("--verify", verify_axioms, "Run the group-axiom checks");

    std::size_t systems = 0;
    bool serial = false;
    auto *verify_cmd = app.add_subcommand("verify", "Unitarity, adjoint-inverse and transitivity of U^{i->j}");
    verify_cmd->add_option("--group", group_spec, "Group spec")->required();
    verify_cmd->add_option("--systems", systems, "Number of regular systems")->required()->check(CLI::Range(2, 12));
    verify_cmd->add_flag("--serial", serial, "Use the single-threaded reference kernels");

    std::string encoding;
    auto *probe_cmd = app.add_subcommand("probe", "Inner-product probe of an encoding");
    probe_cmd->add_option("--encoding", encoding, "regular:<group spec> or half-angle:<m>")->required();

    std::string scenario_path;
    auto *transform_cmd = app.add_subcommand("transform", "Run a reversible scenario file");
    transform_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    auto *truncate_cmd = app.add_subcommand("truncate", "Run a scenario file that may truncate");
    truncate_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();

    std::string alpha = "1,0", beta = "0,0";
    bool with_reference = false;
    auto *wigner_cmd = app.add_subcommand("wigner", "Wigner's friend from the friend's frame");
    wigner_cmd->add_option("--alpha", alpha, "Amplitude of S = up, as re,im")->required();
    wigner_cmd->add_option("--beta", beta, "Amplitude of S = down, as re,im")->required();
    wigner_cmd->add_flag("--with-reference", with_reference, "Add a reference system R next to the friend");

    std::size_t d = 0;
    auto *equivalence_cmd = app.add_subcommand("equivalence", "Translation form against the parity-swap form");
    equivalence_cmd->add_option("--d", d, "Cyclic group order")->required()->check(CLI::Range(2, 16));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*group_cmd) {
            auto group = qrf::build_group(group_spec);
            auto j = group_json(*group);
            bool ok = true;
            if (verify_axioms) {
                auto report = qrf::verify_group_axioms(*group);
                j["axioms"] = qrf::to_json(report);
                ok = report.passed();
            }
            emit(j, g);
            return ok ? kExitOk : kExitVerification;
        }
        if (*verify_cmd) {
            auto report = qrf::verify_lemmas(qrf::build_group(group_spec), systems, {g.tolerance, serial});
            emit(qrf::to_json(report), g);
            return report.passed() ? kExitOk : kExitVerification;
        }
        if (*probe_cmd) {
            auto probe = qrf::consistency_probe(encoding_model(encoding), g.tolerance);
            emit(qrf::to_json(probe), g);
            return probe.passed ? kExitOk : kExitVerification;
        }
        if (*transform_cmd || *truncate_cmd) {
            qrf::ScenarioOptions options;
            options.allow_truncation = static_cast<bool>(*truncate_cmd);
            options.tolerance = g.tolerance;
            auto result = qrf::run_scenario(scenario_path, options);
            emit(result.report, g);
            return result.checks.passed() ? kExitOk : kExitVerification;
        }
        if (*wigner_cmd) {
            auto result = qrf::run_wigner(parse_complex(alpha), parse_complex(beta), with_reference);
            emit(qrf::to_json(result), g);
            return result.verdict.inferred_s_fixed && result.verdict.branches_s_definite ? kExitOk : kExitVerification;
        }
        if (*equivalence_cmd) {
            auto report = qrf::translation_equivalence_check(
                d, app.get_option("--tolerance")->count() > 0 ? g.tolerance : 1e-12);
            emit(qrf::to_json(report), g);
            return report.passed() ? kExitOk : kExitVerification;
        }
    } catch (const qrf::ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
