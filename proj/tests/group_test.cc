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

#include "qrf/group.h"

#include <algorithm>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "qrf/errors.h"
#include "test_util.h"

using namespace qrf;
using qrf::test::el;

namespace {

// r^a s^b acting on Z_n as x -> a + (-1)^b x; composition of maps is the group law.
struct AffineMap {
    int a;
    int b;
    int n;
    int operator()(int x) const {
        return ((a + (b ? -x : x)) % n + n) % n;
    }
};

AffineMap dihedral_map(std::uint32_t index, int n) {
    return {static_cast<int>(index / 2), static_cast<int>(index % 2), n};
}

std::vector<GroupPtr> sample_groups() {
    return {build_group("Z:1"), build_group("Z:2"),      build_group("Z:7"),      build_group("Z:12,cells=3"),
            build_group("D:3"), build_group("D:4"),      build_group("D:6"),      build_group("S:3"),
            build_group("S:4"), build_group("prod:Z:2xZ:3"), build_group("prod:(D:3)xZ:2")};
}

}  // namespace

TEST(group, z2_arithmetic) {
    auto g = build_group("Z:2");
    EXPECT_EQ(g->order(), 2u);
    EXPECT_EQ(g->identity(), el(0));
    EXPECT_EQ(compose(*g, el(1), el(1)), el(0));
}

TEST(group, cyclic_compose_and_inverse) {
    auto z4 = build_group("Z:4");
    EXPECT_EQ(compose(*z4, el(1), el(3)), el(0));
    auto z8 = build_group("Z:8");
    EXPECT_EQ(inverse(*z8, el(3)), el(5));
    EXPECT_EQ(inverse(*z8, z8->identity()), z8->identity());
    for (std::uint32_t a = 0; a < 8; a++) {
        for (std::uint32_t b = 0; b < 8; b++) {
            EXPECT_EQ(compose(*z8, el(a), el(b)).index, (a + b) % 8);
        }
    }
}

TEST(group, dihedral_matches_affine_maps) {
    for (int n : {3, 4, 5, 6}) {
        auto g = build_group("D:" + std::to_string(n));
        ASSERT_EQ(g->order(), static_cast<std::size_t>(2 * n));
        for (std::uint32_t x = 0; x < g->order(); x++) {
            for (std::uint32_t y = 0; y < g->order(); y++) {
                auto f = dihedral_map(x, n), h = dihedral_map(y, n);
                auto p = dihedral_map(compose(*g, el(x), el(y)).index, n);
                for (int t = 0; t < n; t++) {
                    ASSERT_EQ(p(t), f(h(t))) << "D" << n << " " << x << "*" << y;
                }
            }
        }
    }
}

TEST(group, dihedral_presentation) {
    auto d3 = build_group("D:3");
    auto s = *d3->find_label("s"), r = *d3->find_label("r");
    EXPECT_EQ(d3->label(compose(*d3, s, r)), "r2s");
    auto d4 = build_group("D:4");
    auto r4 = *d4->find_label("r"), s4 = *d4->find_label("s"), rs = *d4->find_label("rs");
    EXPECT_EQ(inverse(*d4, rs), rs);
    auto r4th = compose(*d4, compose(*d4, r4, r4), compose(*d4, r4, r4));
    EXPECT_EQ(r4th, d4->identity());
    EXPECT_EQ(compose(*d4, s4, s4), d4->identity());
    EXPECT_EQ(compose(*d4, compose(*d4, s4, r4), s4), inverse(*d4, r4));
}

TEST(group, d4_decomposition) {
    auto d4 = build_group("D:4");
    const auto &d = d4->require_decomposition();
    EXPECT_EQ(d.mode, DecompositionMode::semidirect);
    std::vector<std::string> n, p;
    for (auto x : d.n_subgroup) {
        n.push_back(d4->label(x));
    }
    for (auto x : d.transversal) {
        p.push_back(d4->label(x));
    }
    EXPECT_EQ(n, (std::vector<std::string>{"e", "r", "r2", "r3"}));
    EXPECT_EQ(p, (std::vector<std::string>{"e", "s"}));
    auto [np, pp] = factorize(d, *d4->find_label("r2s"));
    EXPECT_EQ(d4->label(np), "r2");
    EXPECT_EQ(d4->label(pp), "s");
    EXPECT_EQ(factorize(d, d4->identity()), std::make_pair(d4->identity(), d4->identity()));
}

TEST(group, cyclic_cells) {
    auto g = build_group("Z:12,cells=3");
    const auto &d = g->require_decomposition();
    EXPECT_EQ(d.mode, DecompositionMode::transversal_only);
    EXPECT_EQ(d.n_subgroup, (std::vector<GroupElement>{el(0), el(3), el(6), el(9)}));
    EXPECT_EQ(d.transversal, (std::vector<GroupElement>{el(0), el(1), el(2)}));
    EXPECT_EQ(factorize(d, el(7)), std::make_pair(el(6), el(1)));
    for (std::uint32_t x = 0; x < 12; x++) {
        auto [n, p] = factorize(d, el(x));
        EXPECT_EQ(n.index, 3 * (x / 3));
        EXPECT_EQ(p.index, x % 3);
    }
}

TEST(group, product_is_direct) {
    auto g = build_group("prod:Z:3xZ:5");
    EXPECT_EQ(g->order(), 15u);
    EXPECT_EQ(g->require_decomposition().mode, DecompositionMode::direct);
    auto nested = build_group("prod:(prod:Z:2xZ:2)xZ:3");
    EXPECT_EQ(nested->order(), 12u);
    EXPECT_TRUE(verify_group_axioms(*nested).passed());
}

TEST(group, symmetric_matches_permutation_composition) {
    auto s3 = build_group("S:3");
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    for (std::uint32_t a = 0; a < 6; a++) {
        for (std::uint32_t b = 0; b < 6; b++) {
            auto c = perms[compose(*s3, el(a), el(b)).index];
            for (int x = 0; x < 3; x++) {
                EXPECT_EQ(c[x], perms[a][perms[b][x]]);
            }
        }
    }
    EXPECT_EQ(build_group("S:5")->order(), 120u);
}

TEST(group, axioms_hold_for_every_builder) {
    for (const auto &g : sample_groups()) {
        const std::size_t n = g->order();
        for (std::uint32_t a = 0; a < n; a++) {
            EXPECT_EQ(compose(*g, g->identity(), el(a)), el(a));
            EXPECT_EQ(compose(*g, el(a), g->identity()), el(a));
            EXPECT_EQ(compose(*g, el(a), inverse(*g, el(a))), g->identity());
            for (std::uint32_t b = 0; b < n; b++) {
                for (std::uint32_t c = 0; c < n; c++) {
                    ASSERT_EQ(compose(*g, compose(*g, el(a), el(b)), el(c)),
                              compose(*g, el(a), compose(*g, el(b), el(c))))
                        << g->spec();
                }
            }
        }
        EXPECT_TRUE(verify_group_axioms(*g).passed()) << g->spec();
    }
}

TEST(group, factorization_is_a_bijection) {
    for (const auto &g : sample_groups()) {
        const auto *d = g->decomposition();
        if (d == nullptr) {
            continue;
        }
        std::set<std::pair<GroupElement, GroupElement>> seen;
        for (std::uint32_t x = 0; x < g->order(); x++) {
            auto [n, p] = factorize(*d, el(x));
            EXPECT_TRUE(d->contains(n));
            EXPECT_TRUE(d->in_transversal[p.index]);
            EXPECT_EQ(compose(*g, n, p), el(x));
            seen.insert({n, p});
        }
        EXPECT_EQ(seen.size(), g->order()) << g->spec();
        EXPECT_EQ(d->n_subgroup.size() * d->transversal.size(), g->order());
    }
}

TEST(group, dihedral_rotations_are_normal) {
    for (int n : {3, 4, 5, 8}) {
        auto g = build_group("D:" + std::to_string(n));
        const auto &d = g->require_decomposition();
        for (auto p : d.transversal) {
            for (auto x : d.n_subgroup) {
                EXPECT_TRUE(d.contains(compose(*g, compose(*g, p, x), inverse(*g, p))));
            }
        }
    }
}

TEST(group, verify_reports_latin_square_cell) {
    auto z6 = build_group("Z:6");
    CayleyTable t = z6->table();
    t.entries[2 * 6 + 3] = 4;  // was 5
    auto report = verify_group_axioms(t);
    EXPECT_FALSE(report.passed());
    const auto *latin = report.find("latin_square");
    ASSERT_NE(latin, nullptr);
    EXPECT_FALSE(latin->passed);
    EXPECT_NE(latin->detail.find("(2,3)"), std::string::npos) << latin->detail;
    EXPECT_TRUE(verify_group_axioms(z6->table()).passed());
}

TEST(group, verify_reports_associativity_failure) {
    // Latin square with identity 0 that is not associative (a loop of order 5).
    CayleyTable t{5, {0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0}};
    auto report = verify_group_axioms(t);
    EXPECT_TRUE(report.find("latin_square")->passed);
    EXPECT_TRUE(report.find("identity")->passed);
    const auto *assoc = report.find("associativity");
    EXPECT_FALSE(assoc->passed);
    EXPECT_EQ(assoc->residual, 36.0);
    EXPECT_NE(assoc->detail.find("(ab)c != a(bc)"), std::string::npos);
    EXPECT_THROW(FiniteGroup::from_table(t, {}, "loop"), std::invalid_argument);
}

TEST(group, large_groups_sample_associativity) {
    auto report = verify_group_axioms(*build_group("S:5"));
    EXPECT_TRUE(report.passed());
    EXPECT_NE(report.find("associativity")->detail.find("sampled"), std::string::npos);
    EXPECT_NE(verify_group_axioms(*build_group("D:4")).find("associativity")->detail.find("exhaustive"),
              std::string::npos);
}

TEST(group, malformed_specs) {
    for (const char *spec : {"Q:3", "Z:0", "Z:x", "Z:12,cells=5", "Z:12,foo=3", "S:6", "D:", "prod:Z:2", "Z"}) {
        EXPECT_THROW(build_group(spec), std::invalid_argument) << spec;
    }
    EXPECT_THROW(build_group("Z:5000"), std::invalid_argument);
}

TEST(group, index_out_of_range) {
    auto g = build_group("Z:4");
    EXPECT_THROW(compose(*g, el(4), el(0)), std::out_of_range);
    EXPECT_THROW(inverse(*g, el(9)), std::out_of_range);
}

TEST(group, cayley_file) {
    auto g = build_group("cayley:" + test::data_path("z3.cayley"));
    EXPECT_EQ(g->order(), 3u);
    EXPECT_EQ(g->label(compose(*g, *g->find_label("a"), *g->find_label("a"))), "a2");
    EXPECT_EQ(g->decomposition(), nullptr);
}

TEST(group, cayley_parse_error_has_position) {
    try {
        build_group("cayley:" + test::data_path("bad_row.cayley"));
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GE(e.column(), 1u);
    }
    try {
        parse_cayley_text("order 2\n0 1\n1 x\n", "inline");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_EQ(e.column(), 3u);
    }
    EXPECT_THROW(parse_cayley_text("order 2\n0 1\n0 1\n", "inline"), std::invalid_argument);
}

TEST(group, cayley_normal_subgroup_line) {
    auto g = build_group("cayley:" + test::data_path("s3_normal.cayley"));
    const auto &d = g->require_decomposition();
    EXPECT_EQ(d.n_subgroup.size(), 3u);
    EXPECT_EQ(d.mode, DecompositionMode::semidirect);
    // {e, (01)} is a subgroup but not normal in S3.
    EXPECT_THROW(g->with_decomposition({el(0), *g->find_label("102")}), std::invalid_argument);
    // Not closed.
    EXPECT_THROW(g->with_decomposition({el(0), *g->find_label("120")}), std::invalid_argument);
}

TEST(group, semidirect_file_builds_d3) {
    auto g = build_group("semidirect:" + test::data_path("z3_by_z2.semidirect"));
    EXPECT_EQ(g->order(), 6u);
    EXPECT_EQ(g->require_decomposition().mode, DecompositionMode::semidirect);
    bool abelian = true;
    for (std::uint32_t a = 0; a < 6; a++) {
        for (std::uint32_t b = 0; b < 6; b++) {
            abelian = abelian && compose(*g, el(a), el(b)) == compose(*g, el(b), el(a));
        }
    }
    EXPECT_FALSE(abelian);
    EXPECT_THROW(build_group("semidirect:" + test::data_path("bad_action.semidirect")), std::invalid_argument);
}

TEST(group, transversal_must_contain_identity) {
    auto g = build_group("Z:6");
    EXPECT_THROW(g->with_decomposition({el(0), el(3)}, {el(1), el(2), el(3)}), std::invalid_argument);
    auto ok = g->with_decomposition({el(0), el(3)}, {el(0), el(1), el(2)});
    EXPECT_EQ(ok.require_decomposition().mode, DecompositionMode::transversal_only);
    auto direct = g->with_decomposition({el(0), el(3)}, {el(0), el(2), el(4)});
    EXPECT_EQ(direct.require_decomposition().mode, DecompositionMode::direct);
}

TEST(group, no_decomposition_is_inapplicable) {
    EXPECT_THROW(build_group("Z:5")->require_decomposition(), InapplicableError);
}
