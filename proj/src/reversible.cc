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

#include "qrf/reversible.h"

#include <numbers>
#include <stdexcept>

#include "qrf/errors.h"
#include "qrf/kernels.h"

namespace qrf {

Eigen::MatrixXcd RegularActionMap::matrix() const {
    const auto n = static_cast<Eigen::Index>(permutation.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index h = 0; h < n; h++) {
        m(permutation[static_cast<std::size_t>(h)], h) = 1.0;
    }
    return m;
}

RegularActionMap regular_action(GroupPtr group, Side side, GroupElement g) {
    group->element(g.index);
    RegularActionMap map{group, side, g, {}};
    const auto g_inv = group->inverse(g);
    for (std::size_t h = 0; h < group->order(); h++) {
        auto he = group->element(h);
        map.permutation.push_back(side == Side::left ? group->compose(g, he).index : group->compose(he, g_inv).index);
    }
    return map;
}

namespace {

void check_change(const std::vector<SystemModel> &models, std::size_t source, std::size_t target) {
    if (source >= models.size() || target >= models.size()) {
        throw std::out_of_range("frame index out of range for " + std::to_string(models.size()) + " systems");
    }
    const auto &s = models[source];
    const auto &t = models[target];
    if (!t.is_regular()) {
        throw InapplicableError("system " + std::to_string(target) +
                                " is encoded; only regular systems can serve as the new frame");
    }
    if (!s.is_regular()) {
        throw InapplicableError("source frame " + std::to_string(source) + " is not a regular system");
    }
    if (!(s.group() == t.group())) {
        throw InapplicableError("SWAP needs source and target to be regular over the same group");
    }
    for (std::size_t k = 0; k < models.size(); k++) {
        if (!(models[k].group() == t.group())) {
            throw InapplicableError("system " + std::to_string(k) + " is not over the frame group " +
                                    t.group().spec());
        }
    }
}

QuantumState change_frame_impl(const QuantumState &psi, std::size_t target) {
    check_change(psi.models, psi.frame, target);
    check_frame_slot(psi);
    const std::size_t source = psi.frame;
    if (source == target) {
        return psi;
    }
    const auto &group = psi.models[target].group();
    QuantumState out;
    out.frame = target;
    out.models = psi.models;
    out.norm_factor = psi.norm_factor;
    std::vector<std::pair<Labels, Complex>> partial, next;
    for (const auto &[labels, amp] : psi.terms) {
        const auto g = GroupElement{labels[target]};
        const auto g_inv = group.inverse(g);
        Labels base = labels;
        base[source] = g_inv.index;
        base[target] = labels[source];
        partial.assign(1, {base, amp});
        for (std::size_t k = 0; k < labels.size(); k++) {
            if (k == source || k == target) {
                continue;
            }
            const auto &m = psi.models[k];
            if (m.is_regular()) {
                for (auto &[l, a] : partial) {
                    l[k] = group.compose(GroupElement{labels[k]}, g_inv).index;
                }
                continue;
            }
            const auto column = m.v_right(g).col(labels[k]);
            next.clear();
            for (auto &[l, a] : partial) {
                for (Eigen::Index r = 0; r < column.size(); r++) {
                    if (std::abs(column(r)) < kDropTolerance) {
                        continue;
                    }
                    Labels l2 = l;
                    l2[k] = static_cast<std::uint32_t>(r);
                    next.emplace_back(std::move(l2), a * column(r));
                }
            }
            std::swap(partial, next);
        }
        for (auto &[l, a] : partial) {
            out.terms[l] += a;
        }
    }
    prune(out);
    return out;
}

}  // namespace

QuantumState change_frame_quantum(const QuantumState &psi, std::size_t target) {
    for (std::size_t k = 0; k < psi.size(); k++) {
        if (!psi.models[k].is_regular()) {
            throw InapplicableError("change_frame_quantum needs regular systems only; system " + std::to_string(k) +
                                    " is encoded (use change_frame_mixed)");
        }
    }
    return change_frame_impl(psi, target);
}

QuantumState change_frame_mixed(const QuantumState &psi, std::size_t target) {
    return change_frame_impl(psi, target);
}

DenseOperator build_dense_operator(const std::vector<SystemModel> &models, std::size_t source, std::size_t target) {
    const std::size_t dim = product_dimension(models);
    check_change(models, source, target);
    DenseOperator op{models, {}};
    if (source == target) {
        op.matrix = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        return op;
    }
    const auto group = models[target].group_ptr();
    const std::size_t order = group->order();
    const std::size_t n = models.size();

    // local[k][g] is the matrix acting on slot k in the branch where the target holds g.
    Eigen::MatrixXcd target_map = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(order), static_cast<Eigen::Index>(order));
    for (std::size_t g = 0; g < order; g++) {
        target_map(group->inverse(group->element(g)).index, static_cast<Eigen::Index>(g)) = 1.0;
    }
    std::vector<std::vector<Eigen::MatrixXcd>> local(n);
    for (std::size_t k = 0; k < n; k++) {
        if (k == source || k == target) {
            continue;
        }
        for (std::size_t g = 0; g < order; g++) {
            local[k].push_back(models[k].is_regular()
                                   ? regular_action(group, Side::right, group->element(g)).matrix()
                                   : models[k].v_right(group->element(g)));
        }
    }

    op.matrix = kernels::assemble_columns(dim, dim, [&](std::size_t col, kernels::SparseColumn &entries) {
        const Labels in = unflatten(models, col);
        const std::size_t g = in[target];
        std::vector<std::pair<Labels, Complex>> partial{{Labels(n, 0), Complex(1.0)}}, next;
        for (std::size_t k = 0; k < n; k++) {
            Eigen::VectorXcd column;
            if (k == source) {
                column = Eigen::VectorXcd::Unit(static_cast<Eigen::Index>(models[k].dimension()), in[k]);
            } else if (k == target) {
                column = target_map.col(in[k]);
            } else {
                column = local[k][g].col(in[k]);
            }
            next.clear();
            for (auto &[l, a] : partial) {
                for (Eigen::Index r = 0; r < column.size(); r++) {
                    if (column(r) != Complex{}) {
                        Labels l2 = l;
                        l2[k] = static_cast<std::uint32_t>(r);
                        next.emplace_back(std::move(l2), a * column(r));
                    }
                }
            }
            std::swap(partial, next);
        }
        for (auto &[l, a] : partial) {
            std::swap(l[source], l[target]);
            entries.emplace_back(flat_index(models, l), a);
        }
    });
    return op;
}

ObservableMatrix transform_observable(const ObservableMatrix &z, std::size_t source, std::size_t target) {
    const auto dim = static_cast<Eigen::Index>(product_dimension(z.models));
    if (z.matrix.rows() != dim || z.matrix.cols() != dim) {
        throw std::invalid_argument("observable matrix does not match the product dimension");
    }
    if ((z.matrix - z.matrix.adjoint()).cwiseAbs().maxCoeff() > kUnitTolerance) {
        throw std::invalid_argument("observable is not Hermitian");
    }
    const auto u = build_dense_operator(z.models, source, target).matrix;
    Eigen::MatrixXcd ud = u.adjoint();
    return ObservableMatrix{z.models, kernels::multiply(kernels::multiply(u, z.matrix), ud)};
}

namespace {

struct KernelSet {
    kernels::Matrix (*multiply)(const kernels::Matrix &, const kernels::Matrix &);
    double (*max_abs_diff)(const kernels::Matrix &, const kernels::Matrix &);
    double (*max_adjoint_diff)(const kernels::Matrix &, const kernels::Matrix &);
    double (*unitarity_residual)(const kernels::Matrix &);
};

KernelSet kernel_set(bool serial) {
    if (serial) {
        return {kernels::serial::multiply, kernels::serial::max_abs_diff, kernels::serial::max_adjoint_diff,
                kernels::serial::unitarity_residual};
    }
    return {kernels::multiply, kernels::max_abs_diff, kernels::max_adjoint_diff, kernels::unitarity_residual};
}

std::string pair_name(std::size_t a, std::size_t b) {
    return std::to_string(a) + "->" + std::to_string(b);
}

}  // namespace

VerificationReport verify_lemmas(const GroupPtr &group, std::size_t systems, const LemmaOptions &options) {
    if (systems < 2) {
        throw std::invalid_argument("verify_lemmas needs at least two systems");
    }
    std::vector<SystemModel> models(systems, SystemModel::regular(group));
    const std::size_t dim = product_dimension(models);
    const auto k = kernel_set(options.serial);

    std::vector<std::vector<Eigen::MatrixXcd>> u(systems, std::vector<Eigen::MatrixXcd>(systems));
    for (std::size_t i = 0; i < systems; i++) {
        for (std::size_t j = 0; j < systems; j++) {
            if (i != j) {
                u[i][j] = build_dense_operator(models, i, j).matrix;
            }
        }
    }
    const Eigen::MatrixXcd identity =
        Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

    double unitarity = 0, adjoint = 0, transitivity = 0;
    std::string worst_unitarity, worst_adjoint, worst_transitivity;
    for (std::size_t i = 0; i < systems; i++) {
        for (std::size_t j = 0; j < systems; j++) {
            if (i == j) {
                continue;
            }
            double r = k.unitarity_residual(u[i][j]);
            if (r > unitarity || worst_unitarity.empty()) {
                unitarity = std::max(unitarity, r);
                worst_unitarity = "worst pair " + pair_name(i, j);
            }
            r = k.max_adjoint_diff(u[i][j], u[j][i]);
            if (r > adjoint || worst_adjoint.empty()) {
                adjoint = std::max(adjoint, r);
                worst_adjoint = "worst pair " + pair_name(i, j);
            }
        }
    }
    std::size_t triples = 0;
    for (std::size_t i = 0; i < systems; i++) {
        for (std::size_t j = 0; j < systems; j++) {
            for (std::size_t l = 0; l < systems; l++) {
                if (i == j || i == l) {
                    continue;
                }
                // U^{i->j} U^{l->i} = U^{l->j}
                const auto product = k.multiply(u[i][j], u[l][i]);
                const double r = k.max_abs_diff(product, l == j ? identity : u[l][j]);
                triples++;
                if (r > transitivity || worst_transitivity.empty()) {
                    transitivity = std::max(transitivity, r);
                    worst_transitivity = "worst triple " + pair_name(l, i) + "->" + std::to_string(j);
                }
            }
        }
    }
    VerificationReport report;
    report.subject = group->spec() + ", " + std::to_string(systems) + " systems, dimension " + std::to_string(dim);
    report.require_at_most("unitarity", unitarity, options.tolerance, worst_unitarity);
    report.require_at_most("adjoint_inverse", adjoint, options.tolerance, worst_adjoint);
    report.require_at_most("transitivity", transitivity, options.tolerance,
                           worst_transitivity + ", " + std::to_string(triples) + " triples");
    return report;
}

VerificationReport translation_equivalence_check(std::size_t d, double tolerance) {
    if (d < 2 || d > 16) {
        throw std::invalid_argument("translation_equivalence_check needs 2 <= d <= 16");
    }
    auto group = build_group("Z:" + std::to_string(d));
    std::vector<SystemModel> models(3, SystemModel::regular(group));
    const auto u = build_dense_operator(models, 0, 1).matrix;

    const auto n = static_cast<Eigen::Index>(d * d * d);
    auto index = [d](std::size_t a, std::size_t x, std::size_t y) {
        return static_cast<Eigen::Index>((a * d + x) * d + y);
    };
    Eigen::MatrixXcd shift = Eigen::MatrixXcd::Zero(n, n), parity_swap = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t a = 0; a < d; a++) {
        for (std::size_t x = 0; x < d; x++) {
            for (std::size_t y = 0; y < d; y++) {
                shift(index(a, x, (y + d - x) % d), index(a, x, y)) = 1.0;
                parity_swap(index((d - x) % d, a, y), index(a, x, y)) = 1.0;
            }
        }
    }
    const Eigen::MatrixXcd s = kernels::multiply(parity_swap, shift);

    VerificationReport report;
    report.subject = "translation form vs parity-swap on Z:" + std::to_string(d);
    report.require_at_most("operator_deviation", kernels::max_abs_diff(u, s), tolerance);

    // |0>_A (sqrt(1/3)|1> + sqrt(2/3)|2>)_B |3 mod d>_C
    const std::uint32_t c = static_cast<std::uint32_t>(3 % d);
    auto psi = superpose({std::sqrt(1.0 / 3.0), std::sqrt(2.0 / 3.0)},
                         {basis_state(models, 0, {0, 1, c}), basis_state(models, 0, {0, static_cast<std::uint32_t>(2 % d), c})});
    const Eigen::VectorXcd via_s = s * to_dense(psi);
    const Eigen::VectorXcd via_sparse = to_dense(change_frame_quantum(psi, 1));
    report.require_at_most("spot_state_deviation", (via_s - via_sparse).cwiseAbs().maxCoeff(), tolerance);
    return report;
}

}  // namespace qrf
