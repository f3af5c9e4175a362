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

#include <random>

#include <gtest/gtest.h>

#include "qrf/errors.h"
#include "qrf/translation_line.h"
#include "test_util.h"

using namespace qrf;
using qrf::test::el;

namespace {

constexpr auto G = SystemKind::G;
constexpr auto N = SystemKind::N;

// r^a s^b stored as (a, b); (a, b)(c, d) = (a + (-1)^b c, b + d).
struct Dihedral {
    int n;
    std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
        int a = static_cast<int>(x / 2), b = static_cast<int>(x % 2);
        int c = static_cast<int>(y / 2), d = static_cast<int>(y % 2);
        int r = ((a + (b ? -c : c)) % n + n) % n;
        return static_cast<std::uint32_t>(2 * r + (b + d) % 2);
    }
    std::uint32_t inv(std::uint32_t x) const {
        int a = static_cast<int>(x / 2), b = static_cast<int>(x % 2);
        return b ? x : static_cast<std::uint32_t>(2 * ((n - a) % n));
    }
};

std::vector<GroupElement> els(std::initializer_list<std::uint32_t> xs) {
    std::vector<GroupElement> out;
    for (auto x : xs) {
        out.push_back(el(x));
    }
    return out;
}

std::vector<std::uint32_t> indices(const ClassicalState &s) {
    std::vector<std::uint32_t> out;
    for (auto g : s.configs) {
        out.push_back(g.index);
    }
    return out;
}

LineState line_state(std::vector<SystemKind> kinds, std::vector<Rational> xs) {
    return LineState{std::nullopt, std::move(kinds), std::move(xs), Rational(0)};
}

}  // namespace

TEST(classical, relative_state_cyclic) {
    auto z8 = build_group("Z:8");
    auto s = make_classical_state(*z8, std::nullopt, {}, els({2, 5, 7}));
    auto r = relative_state(*z8, s, 0);
    EXPECT_EQ(r.frame, 0u);
    EXPECT_EQ(indices(r), (std::vector<std::uint32_t>{0, 3, 5}));
    for (std::size_t i = 0; i < 3; i++) {
        auto ri = relative_state(*z8, s, i);
        EXPECT_EQ(ri.configs[i], z8->identity());
        for (std::size_t j = 0; j < 3; j++) {
            EXPECT_EQ(ri.configs[j].index, (s.configs[j].index + 8 - s.configs[i].index) % 8);
        }
    }
}

TEST(classical, relative_state_dihedral) {
    auto d3 = build_group("D:3");
    auto e = d3->identity(), r = *d3->find_label("r"), s = *d3->find_label("s");
    auto st = make_classical_state(*d3, std::nullopt, {}, {e, r, s});
    auto rel = relative_state(*d3, st, 1);
    Dihedral o{3};
    auto r_inv = o.inv(r.index);
    EXPECT_EQ(rel.configs[0].index, r_inv);
    EXPECT_EQ(rel.configs[1], e);
    EXPECT_EQ(rel.configs[2].index, o.mul(s.index, r_inv));
    EXPECT_EQ(d3->label(rel.configs[0]), "r2");
}

TEST(classical, change_frame_cyclic) {
    auto z8 = build_group("Z:8");
    auto s0 = make_classical_state(*z8, 0, {}, els({0, 3, 5}));
    auto s1 = change_frame_classical(*z8, s0, 1);
    EXPECT_EQ(s1.frame, 1u);
    EXPECT_EQ(indices(s1), (std::vector<std::uint32_t>{5, 0, 2}));
    EXPECT_EQ(change_frame_classical(*z8, s0, 0), s0);
    EXPECT_EQ(change_frame_classical(*z8, s1, 0), s0);
}

TEST(classical, change_frame_needs_frame) {
    auto z8 = build_group("Z:8");
    auto s = make_classical_state(*z8, std::nullopt, {}, els({1, 2}));
    EXPECT_THROW(change_frame_classical(*z8, s, 1), std::invalid_argument);
    auto f = make_classical_state(*z8, 0, {}, els({0, 2}));
    EXPECT_THROW(relative_state(*z8, f, 0), std::invalid_argument);
    EXPECT_THROW(change_frame_classical(*z8, f, 2), std::out_of_range);
    EXPECT_THROW(make_classical_state(*z8, 0, {}, els({1, 2})), std::invalid_argument);
}

TEST(classical, dihedral_exhaustive_group_law) {
    auto d4 = build_group("D:4");
    Dihedral o{4};
    std::size_t states = 0;
    for (std::uint32_t a = 0; a < 8; a++) {
        for (std::uint32_t b = 0; b < 8; b++) {
            for (std::uint32_t c = 0; c < 8; c++) {
                auto ext = make_classical_state(*d4, std::nullopt, {}, els({a, b, c}));
                for (std::size_t i = 0; i < 3; i++) {
                    auto si = relative_state(*d4, ext, i);
                    for (std::size_t k = 0; k < 3; k++) {
                        ASSERT_EQ(si.configs[k].index, o.mul(ext.configs[k].index, o.inv(ext.configs[i].index)));
                    }
                    for (std::size_t j = 0; j < 3; j++) {
                        auto sj = change_frame_classical(*d4, si, j);
                        ASSERT_EQ(sj, relative_state(*d4, ext, j));
                        ASSERT_EQ(change_frame_classical(*d4, sj, i), si);
                        for (std::size_t k = 0; k < 3; k++) {
                            ASSERT_EQ(change_frame_classical(*d4, sj, k), change_frame_classical(*d4, si, k));
                        }
                    }
                }
                states++;
            }
        }
    }
    EXPECT_EQ(states, 512u);
}

TEST(classical, truncate_cells) {
    auto g = build_group("Z:12,cells=3");
    auto s = make_classical_state(*g, std::nullopt, {}, els({7, 3, 5}));
    EXPECT_EQ(indices(truncate_classical(*g, s)), (std::vector<std::uint32_t>{6, 3, 3}));
    auto inn = make_classical_state(*g, std::nullopt, {}, els({0, 9, 3}));
    EXPECT_EQ(truncate_classical(*g, inn), inn);
    for (std::uint32_t x = 0; x < 12; x++) {
        auto t = truncate_classical(*g, make_classical_state(*g, std::nullopt, {}, els({x})));
        EXPECT_EQ(t.configs[0].index, 3 * (x / 3));
    }
    auto plain = build_group("Z:12");
    EXPECT_THROW(truncate_classical(*plain, s), InapplicableError);
}

TEST(classical, truncate_line) {
    TranslationLine line(Rational(1));
    auto s = line_state({G, G, N, N}, {Rational(7, 2), Rational(-1, 3), Rational(2), Rational(-4)});
    auto t = truncate_classical(line, s);
    EXPECT_EQ(t.configs, (std::vector<Rational>{Rational(3), Rational(-1), Rational(2), Rational(-4)}));
    EXPECT_EQ(floor_div(Rational(-1, 3), Rational(1)), -1);
    EXPECT_EQ(floor_div(Rational(-3), Rational(3, 2)), -2);
}

TEST(classical, irreversible_change_cells) {
    auto g = build_group("Z:12,cells=3");
    auto s0 = make_classical_state(*g, 0, {G, G, N}, els({0, 7, 6}));
    auto s2 = irreversible_change_classical(*g, s0, 2);
    EXPECT_EQ(s2.frame, 2u);
    EXPECT_EQ(indices(s2), (std::vector<std::uint32_t>{6, 0, 0}));
    for (auto x : s2.configs) {
        EXPECT_EQ(x.index % 3, 0u);
    }
    auto all_n = make_classical_state(*g, 0, {N, N, N}, els({0, 9, 6}));
    EXPECT_EQ(irreversible_change_classical(*g, all_n, 1), change_frame_classical(*g, all_n, 1));
    EXPECT_THROW(irreversible_change_classical(*g, s0, 1), InapplicableError);
}

TEST(classical, line_discrepancy_off_by_one_cell) {
    for (Rational L : {Rational(1), Rational(3, 2)}) {
        TranslationLine line(L);
        const std::int64_t n0 = 2, n1 = 5, n2 = -1, n3 = 4;
        const Rational x0(3, 5), x1(1, 5);  // x1 - x0 < 0
        auto s = line_state({G, G, N, N}, {n0 * L + x0 * L, n1 * L + x1 * L, n2 * L, n3 * L});
        auto d = discrepancy_check(line, s, 2);
        std::vector<Rational> expected_before{(n0 - n2) * L, (n1 - n2) * L, Rational(0), (n3 - n2) * L};
        std::vector<Rational> expected_after{(n0 - n2) * L, (n1 - n2 - 1) * L, Rational(0), (n3 - n2) * L};
        EXPECT_EQ(d.truncate_before.configs, expected_before);
        EXPECT_EQ(d.truncate_after.configs, expected_after);
        EXPECT_EQ(d.slot_agrees, (std::vector<bool>{true, false, true, true}));
        EXPECT_EQ(d.truncate_before.configs[1] - d.truncate_after.configs[1], L);
        EXPECT_TRUE(d.report.passed());
        EXPECT_EQ(d.report.checks.size(), 2u);
    }
}

TEST(classical, line_no_discrepancy_when_ordered) {
    TranslationLine line(Rational(1));
    auto s = line_state({G, G, N, N}, {Rational(2) + Rational(1, 5), Rational(5) + Rational(3, 5), Rational(-1),
                                       Rational(4)});
    auto d = discrepancy_check(line, s, 2);
    EXPECT_EQ(d.slot_agrees, (std::vector<bool>{true, true, true, true}));
}

TEST(classical, direct_product_orders_agree) {
    auto g = build_group("prod:Z:3xZ:5");
    const auto &dec = g->require_decomposition();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint32_t> pick(0, 14), pick_n(0, 2);
    for (int trial = 0; trial < 500; trial++) {
        std::vector<GroupElement> configs{el(pick(rng)), el(pick(rng)), dec.n_subgroup[pick_n(rng)],
                                          dec.n_subgroup[pick_n(rng)]};
        auto s = make_classical_state(*g, std::nullopt, {G, G, N, N}, configs);
        for (std::size_t i : {2u, 3u}) {
            auto d = discrepancy_check(*g, s, i);
            for (bool ok : d.slot_agrees) {
                ASSERT_TRUE(ok);
            }
            ASSERT_TRUE(d.report.passed());
        }
    }
}

TEST(classical, dihedral_orders_disagree_on_g_slots_only) {
    auto d4 = build_group("D:4");
    const auto &dec = d4->require_decomposition();
    bool some_g_differs = false;
    std::size_t cases = 0;
    for (std::uint32_t a = 0; a < 8; a++) {
        for (std::uint32_t b = 0; b < 8; b++) {
            for (auto n : dec.n_subgroup) {
                auto s = make_classical_state(*d4, std::nullopt, {G, G, N}, {el(a), el(b), n});
                auto d = discrepancy_check(*d4, s, 2);
                ASSERT_TRUE(d.report.passed());
                ASSERT_TRUE(d.slot_agrees[2]);
                some_g_differs = some_g_differs || !d.slot_agrees[0] || !d.slot_agrees[1];
                cases++;
            }
        }
    }
    EXPECT_EQ(cases, 256u);
    EXPECT_TRUE(some_g_differs);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint32_t> pick(0, 7), pick_n(0, 3);
    for (int trial = 0; trial < 1000; trial++) {
        auto s = make_classical_state(*d4, std::nullopt, {G, N, G, N},
                                      {el(pick(rng)), dec.n_subgroup[pick_n(rng)], el(pick(rng)),
                                       dec.n_subgroup[pick_n(rng)]});
        ASSERT_TRUE(discrepancy_check(*d4, s, 1).report.passed());
        ASSERT_TRUE(discrepancy_check(*d4, s, 3).report.passed());
    }
}

TEST(classical, averaging_dihedral_positions) {
    auto d4 = build_group("D:4");
    auto r = [&](std::uint32_t k) { return el(2 * k); };  // r^k
    auto s0 = make_classical_state(*d4, 0, {N, N, N}, {r(0), r(1), r(2)});
    auto av = infer_average_state(*d4, s0, 1);
    EXPECT_EQ(av.frame, 1u);
    const Rational half(1, 2);
    std::map<GroupElement, Rational> mixed{{r(1), half}, {r(3), half}};
    EXPECT_EQ(av.measures[0], mixed);
    EXPECT_EQ(av.measures[2], mixed);
    EXPECT_EQ(av.measures[1], (std::map<GroupElement, Rational>{{r(0), Rational(1)}}));
    EXPECT_EQ(av.orbits[0], (std::vector<GroupElement>{r(1), r(3)}));
    for (const auto &m : av.measures) {
        Rational total(0);
        for (auto &[g, w] : m) {
            EXPECT_GT(w, Rational(0));
            total += w;
        }
        EXPECT_EQ(total, Rational(1));
    }
}

TEST(classical, averaging_identity_and_trivial_complement) {
    auto d4 = build_group("D:4");
    auto s0 = make_classical_state(*d4, 0, {N, N, N}, els({0, 2, 4}));
    auto self = infer_average_state(*d4, s0, 0);
    for (std::size_t k = 0; k < 3; k++) {
        EXPECT_EQ(self.measures[k], (std::map<GroupElement, Rational>{{s0.configs[k], Rational(1)}}));
    }
    auto g = build_group("prod:Z:4xZ:1");
    auto t0 = make_classical_state(*g, 0, {N, N, N}, els({0, 1, 3}));
    auto av = infer_average_state(*g, t0, 2);
    auto changed = change_frame_classical(*g, t0, 2);
    for (std::size_t k = 0; k < 3; k++) {
        EXPECT_EQ(av.measures[k], (std::map<GroupElement, Rational>{{changed.configs[k], Rational(1)}}));
    }
}

TEST(classical, averaging_errors) {
    auto cells = build_group("Z:12,cells=3");
    auto s = make_classical_state(*cells, 0, {N, N}, els({0, 3}));
    EXPECT_THROW(infer_average_state(*cells, s, 1), InapplicableError);
    auto d4 = build_group("D:4");
    auto g = make_classical_state(*d4, 0, {G, N}, els({0, 2}));
    EXPECT_THROW(infer_average_state(*d4, g, 1), InapplicableError);
    EXPECT_THROW(make_classical_state(*d4, 0, {N, N}, els({0, 1})), std::invalid_argument);
}

TEST(classical, json_shape) {
    auto z8 = build_group("Z:8");
    auto j = to_json(*z8, make_classical_state(*z8, std::nullopt, {}, els({1, 2})));
    EXPECT_EQ(j["frame"], "external");
    EXPECT_EQ(j["kinds"], nlohmann::json({"G", "G"}));
    EXPECT_EQ(j["configs"], nlohmann::json({1, 2}));
    EXPECT_EQ(parse_kind("N"), SystemKind::N);
    EXPECT_THROW(parse_kind("Q"), std::invalid_argument);
}
