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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qrf/classical.h"
#include "qrf/errors.h"
#include "qrf/kernels.h"
#include "test_util.h"

using namespace qrf;
using qrf::test::el;

namespace {

std::vector<SystemModel> regular_models(const GroupPtr &g, std::size_t n) {
    return std::vector<SystemModel>(n, SystemModel::regular(g));
}

// Written straight from the operator's definition on each basis column:
// target g -> g^-1, source untouched, other regular slots h -> h g^-1, encoded slots vR(g),
// then source and target exchanged.
Eigen::MatrixXcd oracle_operator(const std::vector<SystemModel> &models, std::size_t s, std::size_t t) {
    const std::size_t dim = product_dimension(models);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    const auto &g = models[t].group();
    for (std::size_t col = 0; col < dim; col++) {
        Labels in = unflatten(models, col);
        const GroupElement gt{in[t]}, gi = g.inverse(GroupElement{in[t]});
        Eigen::VectorXcd out = Eigen::VectorXcd::Ones(1);
        for (std::size_t k = 0; k < models.size(); k++) {
            // Slot k of the output carries what slot k' holds before the exchange.
            std::size_t src = k == s ? t : k == t ? s : k;
            Eigen::VectorXcd local = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(models[k].dimension()));
            if (src == t) {
                local(gi.index) = 1.0;
            } else if (src == s) {
                local(in[s]) = 1.0;
            } else if (models[src].is_regular()) {
                local(g.compose(GroupElement{in[src]}, gi).index) = 1.0;
            } else {
                local = models[src].v_right(gt).col(in[src]);
            }
            Eigen::VectorXcd next(out.size() * local.size());
            for (Eigen::Index a = 0; a < out.size(); a++) {
                next.segment(a * local.size(), local.size()) = out(a) * local;
            }
            out = next;
        }
        u.col(static_cast<Eigen::Index>(col)) = out;
    }
    return u;
}

QuantumState apply_dense(const Eigen::MatrixXcd &u, const QuantumState &psi, std::size_t frame) {
    return from_dense(psi.models, frame, u * to_dense(psi));
}

}  // namespace

TEST(reversible, regular_action_examples) {
    auto z4 = build_group("Z:4");
    auto r = regular_action(z4, Side::right, el(1));
    EXPECT_EQ(r.permutation, (std::vector<std::uint32_t>{3, 0, 1, 2}));
    auto l = regular_action(z4, Side::left, el(0));
    EXPECT_EQ(l.permutation, (std::vector<std::uint32_t>{0, 1, 2, 3}));
    auto d3 = build_group("D:3");
    auto s = *d3->find_label("s");
    auto flip = regular_action(d3, Side::right, s);
    for (std::uint32_t h = 0; h < 6; h++) {
        EXPECT_NE(flip.permutation[h], h);
        EXPECT_EQ(flip.permutation[flip.permutation[h]], h);
        EXPECT_EQ(flip.permutation[h], d3->compose(el(h), s).index);
    }
    auto lr = regular_action(d3, Side::left, *d3->find_label("r"));
    for (std::uint32_t h = 0; h < 6; h++) {
        EXPECT_EQ(lr.permutation[h], d3->compose(*d3->find_label("r"), el(h)).index);
    }
    EXPECT_EQ(kernels::unitarity_residual(flip.matrix()), 0.0);
    EXPECT_EQ(flip.matrix()(flip.permutation[2], 2), Complex(1.0));
}

TEST(reversible, example_two) {
    auto z2 = build_group("Z:2");
    auto m = regular_models(z2, 3);
    const double h = 1 / std::sqrt(2.0);
    auto psi = superpose({h, h}, {basis_state(m, 0, {0, 0, 1}), basis_state(m, 0, {0, 1, 1})});
    auto out = change_frame_quantum(psi, 1);
    EXPECT_EQ(out.frame, 1u);
    EXPECT_EQ(out.terms.size(), 2u);
    EXPECT_LE(std::abs(out.amplitude({0, 0, 1}) - h), 1e-15);
    EXPECT_LE(std::abs(out.amplitude({1, 0, 0}) - h), 1e-15);
    EXPECT_EQ(schmidt_rank(out, {0}), 2u);
    EXPECT_EQ(schmidt_rank(psi, {0}), 1u);
}

TEST(reversible, u1_grid_example) {
    auto z12 = build_group("Z:12");
    auto m = regular_models(z12, 3);
    const double a = std::sqrt(1.0 / 3.0), b = std::sqrt(2.0 / 3.0);
    auto psi = superpose({a, b}, {basis_state(m, 0, {0, 1, 3}), basis_state(m, 0, {0, 2, 3})});
    auto out = change_frame_quantum(psi, 1);
    // |-t1>_A |0>_B |t3 - t1>_C and |-t2>_A |0>_B |t3 - t2>_C
    EXPECT_LE(std::abs(out.amplitude({11, 0, 2}) - a), 1e-15);
    EXPECT_LE(std::abs(out.amplitude({10, 0, 1}) - b), 1e-15);
    EXPECT_EQ(out.terms.size(), 2u);
    EXPECT_LE(max_amplitude_diff(change_frame_quantum(out, 0), psi), 1e-15);
}

TEST(reversible, single_system_unchanged) {
    auto g = build_group("D:4");
    auto psi = basis_state(regular_models(g, 1), 0, {0});
    EXPECT_EQ(change_frame_quantum(psi, 0).terms, psi.terms);
}

TEST(reversible, encoded_qubit_example) {
    auto z4 = build_group("Z:4");
    auto q = SystemModel::half_angle(4);
    std::vector<SystemModel> m{SystemModel::regular(z4), SystemModel::regular(z4), q};
    auto in = encode_group_element(q, el(1));
    auto psi = superpose({in(0), in(1)}, {basis_state(m, 0, {0, 2, 0}), basis_state(m, 0, {0, 2, 1})});
    auto out = change_frame_mixed(psi, 1);
    const double h = 1 / std::sqrt(2.0);
    EXPECT_EQ(out.frame, 1u);
    EXPECT_LE(std::abs(out.amplitude({2, 0, 0}) - h), 1e-12);
    EXPECT_LE(std::abs(out.amplitude({2, 0, 1}) + h), 1e-12);
    EXPECT_EQ(out.terms.size(), 2u);
    EXPECT_THROW(change_frame_quantum(psi, 1), InapplicableError);
    EXPECT_THROW(change_frame_mixed(psi, 2), InapplicableError);
}

TEST(reversible, encoded_slot_with_identity_target) {
    auto z4 = build_group("Z:4");
    auto q = SystemModel::half_angle(4);
    std::vector<SystemModel> m{SystemModel::regular(z4), SystemModel::regular(z4), q};
    auto in = encode_group_element(q, el(1));
    auto psi = superpose({in(0), in(1)}, {basis_state(m, 0, {0, 0, 0}), basis_state(m, 0, {0, 0, 1})});
    auto out = change_frame_mixed(psi, 1);
    EXPECT_LE(std::abs(out.amplitude({0, 0, 0}) - in(0)), 1e-15);
    EXPECT_LE(std::abs(out.amplitude({0, 0, 1}) - in(1)), 1e-15);
}

TEST(reversible, mixed_superposition_matches_dense) {
    auto z4 = build_group("Z:4");
    auto q = SystemModel::half_angle(4);
    std::vector<SystemModel> m{SystemModel::regular(z4), SystemModel::regular(z4), q};
    auto c = encode_group_element(q, el(3));
    const double h = 1 / std::sqrt(2.0);
    auto psi = superpose({h * c(0), h * c(1), h * c(0), h * c(1)},
                         {basis_state(m, 0, {0, 1, 0}), basis_state(m, 0, {0, 1, 1}), basis_state(m, 0, {0, 2, 0}),
                          basis_state(m, 0, {0, 2, 1})});
    auto out = change_frame_mixed(psi, 1);
    auto dense = build_dense_operator(m, 0, 1);
    EXPECT_LE(max_amplitude_diff(out, apply_dense(dense.matrix, psi, 1)), 1e-12);
    EXPECT_EQ(schmidt_rank(out, {0}), 2u);
    EXPECT_LE(kernels::max_abs_diff(dense.matrix, oracle_operator(m, 0, 1)), 1e-15);
}

TEST(reversible, dense_matches_oracle) {
    for (const char *spec : {"Z:2", "Z:3", "D:3", "S:3"}) {
        auto g = build_group(spec);
        auto m = regular_models(g, 3);
        for (std::size_t s = 0; s < 3; s++) {
            for (std::size_t t = 0; t < 3; t++) {
                if (s == t) {
                    continue;
                }
                auto u = build_dense_operator(m, s, t);
                EXPECT_EQ(kernels::max_abs_diff(u.matrix, oracle_operator(m, s, t)), 0.0) << spec << " " << s << t;
            }
        }
    }
}

TEST(reversible, z2_dense_on_basis_states) {
    auto z2 = build_group("Z:2");
    auto m = regular_models(z2, 3);
    auto u = build_dense_operator(m, 0, 1);
    EXPECT_EQ(u.matrix.rows(), 8);
    for (std::uint32_t b = 0; b < 2; b++) {
        for (std::uint32_t c = 0; c < 2; c++) {
            auto psi = basis_state(m, 0, {0, b, c});
            EXPECT_EQ(max_amplitude_diff(apply_dense(u.matrix, psi, 1), change_frame_quantum(psi, 1)), 0.0);
        }
    }
}

TEST(reversible, z3_operator_is_unitary) {
    auto m = regular_models(build_group("Z:3"), 3);
    auto u = build_dense_operator(m, 0, 2);
    EXPECT_EQ(u.matrix.rows(), 27);
    Eigen::MatrixXcd gram = u.matrix.adjoint() * u.matrix;
    EXPECT_LE((gram - Eigen::MatrixXcd::Identity(27, 27)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(reversible, same_source_and_target) {
    auto m = regular_models(build_group("D:3"), 2);
    auto u = build_dense_operator(m, 1, 1);
    EXPECT_EQ(kernels::max_abs_diff(u.matrix, Eigen::MatrixXcd::Identity(36, 36)), 0.0);
    std::mt19937_64 rng(2);
    auto psi = test::random_state(m, 1, 5, rng);
    EXPECT_EQ(change_frame_quantum(psi, 1).terms, psi.terms);
}

TEST(reversible, observable_identity_and_projector) {
    auto z2 = build_group("Z:2");
    auto m = regular_models(z2, 3);
    ObservableMatrix id{m, Eigen::MatrixXcd::Identity(8, 8)};
    EXPECT_LE(kernels::max_abs_diff(transform_observable(id, 0, 1).matrix, id.matrix), 1e-15);
    // Projector on |up>_B in frame A becomes the projector on |up>_A in frame B.
    Eigen::MatrixXcd pb = Eigen::MatrixXcd::Zero(8, 8), pa = Eigen::MatrixXcd::Zero(8, 8);
    for (std::size_t k = 0; k < 8; k++) {
        auto l = unflatten(m, k);
        pb(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = l[1] == 0 ? 1.0 : 0.0;
        pa(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = l[0] == 0 ? 1.0 : 0.0;
    }
    EXPECT_LE(kernels::max_abs_diff(transform_observable({m, pb}, 0, 1).matrix, pa), 1e-15);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(8, 8);
    bad(0, 1) = 1.0;
    EXPECT_THROW(transform_observable({m, bad}, 0, 1), std::invalid_argument);
    EXPECT_THROW(transform_observable({m, Eigen::MatrixXcd::Identity(4, 4)}, 0, 1), std::invalid_argument);
}

TEST(reversible, observable_spectrum_preserved) {
    auto m = regular_models(build_group("Z:3"), 3);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; trial++) {
        ObservableMatrix z{m, test::random_hermitian(27, rng)};
        auto zi = transform_observable(z, 0, 2);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> a(z.matrix), b(zi.matrix);
        EXPECT_LE((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(reversible, lemma_suites) {
    for (auto [spec, n] : std::vector<std::pair<const char *, std::size_t>>{{"Z:2", 3}, {"Z:6", 2}, {"D:4", 2}}) {
        auto report = verify_lemmas(build_group(spec), n);
        EXPECT_TRUE(report.passed()) << spec;
        for (const char *name : {"unitarity", "adjoint_inverse", "transitivity"}) {
            ASSERT_NE(report.find(name), nullptr);
            EXPECT_LT(report.find(name)->residual, 1e-12) << spec << " " << name;
        }
    }
    EXPECT_THROW(verify_lemmas(build_group("Z:17"), 3), DimensionCapError);
    EXPECT_THROW(verify_lemmas(build_group("Z:3"), 1), std::invalid_argument);
}

TEST(reversible, classical_embedding) {
    auto g = build_group("D:4");
    auto m = regular_models(g, 3);
    for (std::uint32_t b = 0; b < 8; b++) {
        for (std::uint32_t c = 0; c < 8; c++) {
            for (std::size_t t = 0; t < 3; t++) {
                auto out = change_frame_quantum(basis_state(m, 0, {0, b, c}), t);
                auto cl = change_frame_classical(*g, make_classical_state(*g, 0, {}, {el(0), el(b), el(c)}), t);
                ASSERT_EQ(out.terms.size(), 1u);
                const auto &labels = out.terms.begin()->first;
                for (std::size_t k = 0; k < 3; k++) {
                    ASSERT_EQ(labels[k], cl.configs[k].index);
                }
                ASSERT_EQ(out.terms.begin()->second, Complex(1.0));
            }
        }
    }
}

TEST(reversible, coherence_and_frame_convention) {
    auto g = build_group("S:3");
    auto m = regular_models(g, 3);
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; trial++) {
        auto a = test::random_state(m, 0, 5, rng), b = test::random_state(m, 0, 5, rng);
        Complex x(0.6, 0.1), y(-0.2, 0.7);
        for (std::size_t t = 1; t < 3; t++) {
            auto lhs = change_frame_quantum(superpose({x, y}, {a, b}), t);
            auto rhs = superpose({x, y}, {change_frame_quantum(a, t), change_frame_quantum(b, t)});
            EXPECT_LE(max_amplitude_diff(lhs, rhs), 1e-12);
            for (auto &[labels, amp] : lhs.terms) {
                EXPECT_EQ(labels[t], g->identity().index);
            }
            EXPECT_NEAR(change_frame_quantum(a, t).norm(), 1.0, 1e-12);
        }
    }
}

TEST(reversible, expectation_invariance) {
    auto m = regular_models(build_group("Z:3"), 3);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; trial++) {
        auto psi = test::random_state(m, 0, 6, rng);
        ObservableMatrix z{m, test::random_hermitian(27, rng)};
        for (std::size_t t = 1; t < 3; t++) {
            auto zi = transform_observable(z, 0, t);
            auto psi_i = change_frame_quantum(psi, t);
            Eigen::VectorXcd v0 = to_dense(psi), vi = to_dense(psi_i);
            Complex e0 = v0.dot(z.matrix * v0), ei = vi.dot(zi.matrix * vi);
            EXPECT_LE(std::abs(e0 - ei), 1e-9);
        }
    }
}

TEST(reversible, translation_equivalence) {
    for (std::size_t d : {2u, 5u, 12u}) {
        auto report = translation_equivalence_check(d);
        EXPECT_TRUE(report.passed()) << d;
        EXPECT_LE(report.find("operator_deviation")->residual, 1e-12);
        EXPECT_LE(report.find("spot_state_deviation")->residual, 1e-12);
    }
    EXPECT_EQ(translation_equivalence_check(2).find("operator_deviation")->residual, 0.0);
    EXPECT_THROW(translation_equivalence_check(1), std::invalid_argument);
    EXPECT_THROW(translation_equivalence_check(17), std::invalid_argument);
}

TEST(reversible, rejects_mismatched_groups) {
    std::vector<SystemModel> m{SystemModel::regular(build_group("Z:2")), SystemModel::regular(build_group("Z:3"))};
    EXPECT_THROW(build_dense_operator(m, 0, 1), InapplicableError);
}
