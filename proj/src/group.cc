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
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "qrf/errors.h"
#include "qrf/kernels.h"

namespace qrf {

ParseError::ParseError(const std::string &message, std::size_t line, std::size_t column)
    : std::runtime_error(
          line == 0 ? message
                    : message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column) {
}

std::string_view mode_name(DecompositionMode mode) {
    switch (mode) {
        case DecompositionMode::semidirect:
            return "semidirect";
        case DecompositionMode::direct:
            return "direct";
        case DecompositionMode::transversal_only:
            return "transversal-only";
    }
    return "?";
}

namespace {

std::string cell_name(std::size_t a, std::size_t b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

constexpr std::size_t kExhaustiveAssociativityOrder = 64;
constexpr std::size_t kSampledTriples = 200000;

}  // namespace

VerificationReport verify_group_axioms(const CayleyTable &table) {
    VerificationReport report;
    report.subject = "group axioms (order " + std::to_string(table.order) + ")";
    const std::size_t n = table.order;
    if (n == 0 || table.entries.size() != n * n) {
        report.require_at_most("table_shape", 1, 0, "table must hold order*order entries");
        return report;
    }
    std::size_t out_of_range = 0;
    for (auto v : table.entries) {
        out_of_range += v >= n;
    }
    report.require_at_most("entries_in_range", static_cast<double>(out_of_range), 0);
    if (out_of_range != 0) {
        return report;
    }

    // Latin square: count cells duplicated within their row or column.
    std::vector<bool> row_dup(n * n, false), col_dup(n * n, false);
    std::size_t bad_lines = 0;
    std::vector<std::size_t> seen(n);
    for (std::size_t a = 0; a < n; a++) {
        std::fill(seen.begin(), seen.end(), SIZE_MAX);
        bool bad = false;
        for (std::size_t b = 0; b < n; b++) {
            auto v = table.at(a, b);
            if (seen[v] != SIZE_MAX) {
                row_dup[a * n + b] = row_dup[a * n + seen[v]] = bad = true;
            } else {
                seen[v] = b;
            }
        }
        bad_lines += bad;
    }
    for (std::size_t b = 0; b < n; b++) {
        std::fill(seen.begin(), seen.end(), SIZE_MAX);
        bool bad = false;
        for (std::size_t a = 0; a < n; a++) {
            auto v = table.at(a, b);
            if (seen[v] != SIZE_MAX) {
                col_dup[a * n + b] = col_dup[seen[v] * n + b] = bad = true;
            } else {
                seen[v] = a;
            }
        }
        bad_lines += bad;
    }
    std::string latin_detail;
    if (bad_lines != 0) {
        // Prefer a cell that clashes along both its row and its column: for a single
        // corrupted entry that is exactly the corrupted cell.
        std::size_t pick = SIZE_MAX;
        for (std::size_t k = 0; k < n * n && pick == SIZE_MAX; k++) {
            if (row_dup[k] && col_dup[k]) {
                pick = k;
            }
        }
        for (std::size_t k = 0; k < n * n && pick == SIZE_MAX; k++) {
            if (row_dup[k] || col_dup[k]) {
                pick = k;
            }
        }
        latin_detail = "duplicate at cell " + cell_name(pick / n, pick % n);
    }
    report.require_at_most("latin_square", static_cast<double>(bad_lines), 0, latin_detail);

    std::optional<std::size_t> identity;
    for (std::size_t e = 0; e < n && !identity; e++) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; a++) {
            ok = table.at(e, a) == a && table.at(a, e) == a;
        }
        if (ok) {
            identity = e;
        }
    }
    report.require_at_most("identity", identity ? 0 : 1, 0, identity ? "" : "no two-sided identity");

    std::size_t missing_inverse = 0;
    std::string inverse_detail;
    if (identity) {
        for (std::size_t a = 0; a < n; a++) {
            bool ok = false;
            for (std::size_t b = 0; b < n && !ok; b++) {
                ok = table.at(a, b) == *identity && table.at(b, a) == *identity;
            }
            if (!ok) {
                if (missing_inverse == 0) {
                    inverse_detail = "element " + std::to_string(a) + " has no inverse";
                }
                missing_inverse++;
            }
        }
    }
    report.require_at_most("inverse", identity ? static_cast<double>(missing_inverse) : 1, 0, inverse_detail);

    std::size_t violations = 0;
    std::array<std::uint32_t, 3> first{};
    std::string mode;
    if (n <= kExhaustiveAssociativityOrder) {
        violations = kernels::associativity_violations(table, &first);
        mode = "exhaustive";
    } else {
        std::mt19937_64 rng(0x5eed'0f'a550c);
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
        for (std::size_t k = 0; k < kSampledTriples; k++) {
            std::uint32_t a = pick(rng), b = pick(rng), c = pick(rng);
            if (table.at(table.at(a, b), c) != table.at(a, table.at(b, c))) {
                if (violations == 0) {
                    first = {a, b, c};
                }
                violations++;
            }
        }
        mode = "sampled " + std::to_string(kSampledTriples) + " triples";
    }
    std::string assoc_detail = mode;
    if (violations != 0) {
        assoc_detail += "; (ab)c != a(bc) at (" + std::to_string(first[0]) + "," + std::to_string(first[1]) + "," +
                        std::to_string(first[2]) + ")";
    }
    report.require_at_most("associativity", static_cast<double>(violations), 0, assoc_detail);
    return report;
}

VerificationReport verify_group_axioms(const FiniteGroup &group) {
    auto report = verify_group_axioms(group.table());
    report.subject = group.spec();
    return report;
}

FiniteGroup FiniteGroup::from_table(CayleyTable table, std::vector<std::string> labels, std::string spec) {
    if (table.order == 0) {
        throw std::invalid_argument("group order must be positive");
    }
    if (table.order > kMaxGroupOrder) {
        throw std::invalid_argument(
            "group order " + std::to_string(table.order) + " exceeds the cap of " + std::to_string(kMaxGroupOrder));
    }
    auto report = verify_group_axioms(table);
    for (const auto &c : report.checks) {
        if (!c.passed) {
            throw std::invalid_argument("table fails group axioms: " + c.name + (c.detail.empty() ? "" : " " + c.detail));
        }
    }
    FiniteGroup g;
    g.table_ = std::move(table);
    g.spec_ = std::move(spec);
    const std::size_t n = g.table_.order;
    for (std::size_t e = 0; e < n; e++) {
        if (g.table_.at(e, e) == e) {
            g.identity_ = GroupElement{static_cast<std::uint32_t>(e)};
            break;
        }
    }
    g.inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; a++) {
        for (std::size_t b = 0; b < n; b++) {
            if (g.table_.at(a, b) == g.identity_.index) {
                g.inverse_[a] = static_cast<std::uint32_t>(b);
                break;
            }
        }
    }
    if (labels.empty()) {
        for (std::size_t a = 0; a < n; a++) {
            labels.push_back(std::to_string(a));
        }
    }
    if (labels.size() != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " labels, got " + std::to_string(labels.size()));
    }
    if (std::set<std::string>(labels.begin(), labels.end()).size() != n) {
        throw std::invalid_argument("element labels must be distinct");
    }
    g.labels_ = std::move(labels);
    return g;
}

GroupElement FiniteGroup::element(std::size_t index) const {
    if (index >= order()) {
        throw std::out_of_range("element index " + std::to_string(index) + " out of range for order " +
                                std::to_string(order()));
    }
    return GroupElement{static_cast<std::uint32_t>(index)};
}

GroupElement FiniteGroup::compose(GroupElement a, GroupElement b) const {
    element(a.index);
    element(b.index);
    return GroupElement{table_.at(a.index, b.index)};
}

GroupElement FiniteGroup::inverse(GroupElement a) const {
    element(a.index);
    return GroupElement{inverse_[a.index]};
}

const std::string &FiniteGroup::label(GroupElement a) const {
    element(a.index);
    return labels_[a.index];
}

std::optional<GroupElement> FiniteGroup::find_label(std::string_view label) const {
    for (std::size_t a = 0; a < labels_.size(); a++) {
        if (labels_[a] == label) {
            return GroupElement{static_cast<std::uint32_t>(a)};
        }
    }
    return std::nullopt;
}

const SubgroupDecomposition &FiniteGroup::require_decomposition() const {
    if (!decomposition_) {
        throw InapplicableError("group " + spec_ + " carries no normal-subgroup decomposition");
    }
    return *decomposition_;
}

bool FiniteGroup::operator==(const FiniteGroup &other) const {
    if (table_.order != other.table_.order || table_.entries != other.table_.entries) {
        return false;
    }
    if (decomposition_.has_value() != other.decomposition_.has_value()) {
        return false;
    }
    return !decomposition_ || (decomposition_->n_subgroup == other.decomposition_->n_subgroup &&
                               decomposition_->transversal == other.decomposition_->transversal);
}

FiniteGroup FiniteGroup::with_decomposition(
    const std::vector<GroupElement> &normal, const std::vector<GroupElement> &transversal) const {
    const std::size_t n = order();
    SubgroupDecomposition d;
    d.in_n.assign(n, false);
    d.in_transversal.assign(n, false);
    for (auto x : normal) {
        element(x.index);
        if (d.in_n[x.index]) {
            throw std::invalid_argument("normal subgroup lists element " + label(x) + " twice");
        }
        d.in_n[x.index] = true;
    }
    if (!d.in_n[identity_.index]) {
        throw std::invalid_argument("normal subgroup must contain the identity");
    }
    for (auto a : normal) {
        for (auto b : normal) {
            if (!d.in_n[compose(a, b).index]) {
                throw std::invalid_argument("n_subgroup is not closed under composition");
            }
        }
    }
    for (std::size_t gi = 0; gi < n; gi++) {
        auto g = element(gi);
        for (auto x : normal) {
            auto conj = compose(compose(g, x), inverse(g));
            if (!d.in_n[conj.index]) {
                throw std::invalid_argument("n_subgroup not normal: " + label(g) + " * " + label(x) + " * " +
                                            label(g) + "^-1 = " + label(conj) + " lies outside N");
            }
        }
    }
    for (auto t : transversal) {
        element(t.index);
        if (d.in_transversal[t.index]) {
            throw std::invalid_argument("transversal lists element " + label(t) + " twice");
        }
        d.in_transversal[t.index] = true;
    }
    if (!d.in_transversal[identity_.index]) {
        throw std::invalid_argument("transversal must contain the identity");
    }
    if (normal.size() * transversal.size() != n) {
        throw std::invalid_argument("transversal size " + std::to_string(transversal.size()) +
                                    " does not match the index of N");
    }
    d.factor_table.assign(n, {identity_, identity_});
    std::vector<bool> hit(n, false);
    for (auto x : normal) {
        for (auto t : transversal) {
            auto g = compose(x, t);
            if (hit[g.index]) {
                throw std::invalid_argument("transversal contains two elements of the coset of " + label(t));
            }
            hit[g.index] = true;
            d.factor_table[g.index] = {x, t};
        }
    }
    d.n_subgroup = normal;
    d.transversal = transversal;
    std::sort(d.n_subgroup.begin(), d.n_subgroup.end());
    std::sort(d.transversal.begin(), d.transversal.end());

    bool closed = true;
    for (auto a : transversal) {
        for (auto b : transversal) {
            closed = closed && d.in_transversal[compose(a, b).index];
        }
    }
    if (!closed) {
        d.mode = DecompositionMode::transversal_only;
    } else {
        bool commute = true;
        for (auto x : normal) {
            for (auto p : transversal) {
                commute = commute && compose(x, p) == compose(p, x);
            }
        }
        d.mode = commute ? DecompositionMode::direct : DecompositionMode::semidirect;
    }
    FiniteGroup out = *this;
    out.decomposition_ = std::move(d);
    return out;
}

FiniteGroup FiniteGroup::with_decomposition(const std::vector<GroupElement> &normal) const {
    std::vector<bool> covered(order(), false);
    std::vector<GroupElement> transversal;
    for (std::size_t gi = 0; gi < order(); gi++) {
        if (covered[gi]) {
            continue;
        }
        auto g = element(gi);
        transversal.push_back(g);
        for (auto x : normal) {
            covered[compose(x, g).index] = true;
        }
    }
    return with_decomposition(normal, transversal);
}

GroupElement compose(const FiniteGroup &group, GroupElement a, GroupElement b) {
    return group.compose(a, b);
}

GroupElement inverse(const FiniteGroup &group, GroupElement a) {
    return group.inverse(a);
}

std::pair<GroupElement, GroupElement> factorize(const SubgroupDecomposition &decomposition, GroupElement g) {
    if (g.index >= decomposition.factor_table.size()) {
        throw std::out_of_range("element index " + std::to_string(g.index) + " out of range");
    }
    return decomposition.factor_table[g.index];
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::size_t parse_count(std::string_view text, std::string_view what) {
    std::size_t value = 0;
    auto t = trim(text);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw std::invalid_argument("malformed group spec: expected an integer for " + std::string(what) + ", got '" +
                                    t + "'");
    }
    return value;
}

GroupPtr build_group_from(std::string_view spec, const std::filesystem::path &base);

GroupPtr cyclic(std::size_t n, std::optional<std::size_t> cells, std::string spec) {
    if (n == 0) {
        throw std::invalid_argument("malformed group spec: Z:n needs n >= 1");
    }
    if (n > kMaxGroupOrder) {
        throw std::invalid_argument("group order " + std::to_string(n) + " exceeds the cap");
    }
    CayleyTable t{n, std::vector<std::uint32_t>(n * n)};
    for (std::size_t a = 0; a < n; a++) {
        for (std::size_t b = 0; b < n; b++) {
            t.entries[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
        }
    }
    auto g = FiniteGroup::from_table(std::move(t), {}, std::move(spec));
    if (cells) {
        const std::size_t L = *cells;
        if (L == 0 || n % L != 0) {
            throw std::invalid_argument("cells=" + std::to_string(L) + " must divide the order " + std::to_string(n));
        }
        std::vector<GroupElement> normal, transversal;
        for (std::size_t k = 0; k < n; k += L) {
            normal.push_back(g.element(k));
        }
        for (std::size_t k = 0; k < L; k++) {
            transversal.push_back(g.element(k));
        }
        g = g.with_decomposition(normal, transversal);
    }
    return std::make_shared<const FiniteGroup>(std::move(g));
}

GroupPtr dihedral(std::size_t n, std::string spec) {
    if (n == 0 || 2 * n > kMaxGroupOrder) {
        throw std::invalid_argument("malformed group spec: D:n needs 1 <= n <= " + std::to_string(kMaxGroupOrder / 2));
    }
    const std::size_t order = 2 * n;
    CayleyTable t{order, std::vector<std::uint32_t>(order * order)};
    // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b + d)
    for (std::size_t x = 0; x < order; x++) {
        for (std::size_t y = 0; y < order; y++) {
            std::size_t a = x / 2, b = x % 2, c = y / 2, d = y % 2;
            std::size_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
            t.entries[x * order + y] = static_cast<std::uint32_t>(2 * rot + ((b + d) % 2));
        }
    }
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; a++) {
        std::string r = a == 0 ? "" : a == 1 ? "r" : "r" + std::to_string(a);
        labels.push_back(r.empty() ? "e" : r);
        labels.push_back(r + "s");
    }
    auto g = FiniteGroup::from_table(std::move(t), std::move(labels), std::move(spec));
    std::vector<GroupElement> normal, complement{g.element(0), g.element(1)};
    for (std::size_t a = 0; a < n; a++) {
        normal.push_back(g.element(2 * a));
    }
    return std::make_shared<const FiniteGroup>(g.with_decomposition(normal, complement));
}

GroupPtr symmetric(std::size_t n, std::string spec) {
    if (n == 0 || n > 5) {
        throw std::invalid_argument("malformed group spec: S:n needs 1 <= n <= 5");
    }
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, std::uint32_t> index;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < perms.size(); k++) {
        index[perms[k]] = static_cast<std::uint32_t>(k);
        std::string l;
        for (int v : perms[k]) {
            l += static_cast<char>('0' + v);
        }
        labels.push_back(l);
    }
    const std::size_t order = perms.size();
    CayleyTable t{order, std::vector<std::uint32_t>(order * order)};
    std::vector<int> q(n);
    // (a * b)(x) = a(b(x))
    for (std::size_t a = 0; a < order; a++) {
        for (std::size_t b = 0; b < order; b++) {
            for (std::size_t x = 0; x < n; x++) {
                q[x] = perms[a][perms[b][x]];
            }
            t.entries[a * order + b] = index.at(q);
        }
    }
    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(std::move(t), std::move(labels), std::move(spec)));
}

std::string strip_parens(std::string s) {
    s = trim(s);
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        bool wraps = true;
        for (std::size_t k = 0; k < s.size(); k++) {
            depth += s[k] == '(';
            depth -= s[k] == ')';
            if (depth == 0 && k + 1 < s.size()) {
                wraps = false;
                break;
            }
        }
        if (!wraps) {
            break;
        }
        s = trim(s.substr(1, s.size() - 2));
    }
    return s;
}

GroupPtr product(std::string_view body, std::string spec, const std::filesystem::path &base) {
    int depth = 0;
    std::size_t split = std::string_view::npos;
    for (std::size_t k = 0; k < body.size(); k++) {
        if (body[k] == '(') {
            depth++;
        } else if (body[k] == ')') {
            depth--;
        } else if (body[k] == 'x' && depth == 0) {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        throw std::invalid_argument("malformed group spec: prod: needs two factors separated by 'x'");
    }
    auto left = build_group_from(strip_parens(std::string(body.substr(0, split))), base);
    auto right = build_group_from(strip_parens(std::string(body.substr(split + 1))), base);
    const std::size_t na = left->order(), nb = right->order();
    if (na * nb > kMaxGroupOrder) {
        throw std::invalid_argument("product order " + std::to_string(na * nb) + " exceeds the cap");
    }
    const std::size_t order = na * nb;
    CayleyTable t{order, std::vector<std::uint32_t>(order * order)};
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < order; x++) {
        labels.push_back("(" + left->labels()[x / nb] + "," + right->labels()[x % nb] + ")");
        for (std::size_t y = 0; y < order; y++) {
            auto a = left->table().at(x / nb, y / nb);
            auto b = right->table().at(x % nb, y % nb);
            t.entries[x * order + y] = static_cast<std::uint32_t>(a * nb + b);
        }
    }
    auto g = FiniteGroup::from_table(std::move(t), std::move(labels), std::move(spec));
    std::vector<GroupElement> normal, complement;
    for (std::size_t a = 0; a < na; a++) {
        normal.push_back(g.element(a * nb + right->identity().index));
    }
    for (std::size_t b = 0; b < nb; b++) {
        complement.push_back(g.element(left->identity().index * nb + b));
    }
    return std::make_shared<const FiniteGroup>(g.with_decomposition(normal, complement));
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open file '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path resolve(const std::string &name, const std::filesystem::path &base) {
    std::filesystem::path p(name);
    if (p.is_relative() && !base.empty() && !std::filesystem::exists(p)) {
        return base / p;
    }
    return p;
}

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
            k++;
        }
        if (k >= line.size() || line[k] == '#') {
            break;
        }
        std::size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
            k++;
        }
        out.push_back({std::string(line.substr(start, k - start)), start + 1});
    }
    return out;
}

std::vector<std::pair<std::size_t, std::vector<Token>>> content_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<Token>>> out;
    std::size_t line_no = 0, start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        line_no++;
        auto tokens = tokenize(text.substr(start, end - start));
        if (!tokens.empty()) {
            out.emplace_back(line_no, std::move(tokens));
        }
        start = end + 1;
    }
    return out;
}

std::uint32_t parse_index(const Token &tok, std::size_t line, std::size_t bound) {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
    if (ec != std::errc() || ptr != tok.text.data() + tok.text.size()) {
        throw ParseError("expected a non-negative integer, got '" + tok.text + "'", line, tok.column);
    }
    if (v >= bound) {
        throw ParseError("index " + tok.text + " out of range (bound " + std::to_string(bound) + ")", line, tok.column);
    }
    return v;
}

GroupPtr build_group_from(std::string_view raw, const std::filesystem::path &base) {
    const std::string spec = strip_parens(std::string(raw));
    auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("malformed group spec '" + spec + "'");
    }
    const std::string kind = spec.substr(0, colon);
    const std::string body = spec.substr(colon + 1);
    if (kind == "Z") {
        auto comma = body.find(',');
        std::optional<std::size_t> cells;
        if (comma != std::string::npos) {
            auto opt = trim(body.substr(comma + 1));
            if (opt.rfind("cells=", 0) != 0) {
                throw std::invalid_argument("malformed group spec: unknown option '" + opt + "'");
            }
            cells = parse_count(opt.substr(6), "cells");
        }
        return cyclic(parse_count(body.substr(0, comma), "Z:n"), cells, spec);
    }
    if (kind == "D") {
        return dihedral(parse_count(body, "D:n"), spec);
    }
    if (kind == "S") {
        return symmetric(parse_count(body, "S:n"), spec);
    }
    if (kind == "prod") {
        return product(body, spec, base);
    }
    if (kind == "cayley") {
        auto path = resolve(trim(body), base);
        auto text = read_file(path);
        return parse_cayley_text(text, spec);
    }
    if (kind == "semidirect") {
        auto path = resolve(trim(body), base);
        auto text = read_file(path);
        // Nested file references resolve against the including file's directory.
        return parse_semidirect_text(text, spec, path.parent_path().string());
    }
    throw std::invalid_argument("malformed group spec: unknown family '" + kind + "'");
}

}  // namespace

GroupPtr build_group(std::string_view spec, const std::string &base_dir) {
    return build_group_from(spec, base_dir);
}

GroupPtr parse_cayley_text(std::string_view text, std::string spec) {
    auto lines = content_lines(text);
    if (lines.empty()) {
        throw ParseError("empty Cayley-table file", 1, 1);
    }
    auto &[first_line, head] = lines[0];
    if (head[0].text != "order" || head.size() != 2) {
        throw ParseError("expected 'order N'", first_line, head[0].column);
    }
    const std::size_t n = parse_index(head[1], first_line, kMaxGroupOrder + 1);
    if (n == 0) {
        throw ParseError("order must be positive", first_line, head[1].column);
    }
    if (lines.size() < n + 1) {
        throw ParseError("expected " + std::to_string(n) + " table rows", lines.back().first + 1, 1);
    }
    CayleyTable table{n, std::vector<std::uint32_t>(n * n)};
    for (std::size_t a = 0; a < n; a++) {
        auto &[line_no, toks] = lines[a + 1];
        if (toks.size() != n) {
            throw ParseError("expected " + std::to_string(n) + " entries in table row", line_no,
                             toks.size() > n ? toks[n].column : toks.back().column);
        }
        for (std::size_t b = 0; b < n; b++) {
            table.entries[a * n + b] = parse_index(toks[b], line_no, n);
        }
    }
    std::vector<std::string> labels;
    std::vector<Token> normal_tokens, transversal_tokens;
    std::size_t normal_line = 0, transversal_line = 0;
    for (std::size_t k = n + 1; k < lines.size(); k++) {
        auto &[line_no, toks] = lines[k];
        const auto &key = toks[0].text;
        std::vector<Token> rest(toks.begin() + 1, toks.end());
        if (key == "labels") {
            if (rest.size() != n) {
                throw ParseError("expected " + std::to_string(n) + " labels", line_no, toks[0].column);
            }
            for (auto &t : rest) {
                labels.push_back(t.text);
            }
        } else if (key == "normal") {
            normal_tokens = rest;
            normal_line = line_no;
        } else if (key == "transversal") {
            transversal_tokens = rest;
            transversal_line = line_no;
        } else {
            throw ParseError("unexpected line starting with '" + key + "'", line_no, toks[0].column);
        }
    }
    auto g = FiniteGroup::from_table(std::move(table), std::move(labels), std::move(spec));
    auto resolve_elements = [&](const std::vector<Token> &toks, std::size_t line_no) {
        std::vector<GroupElement> out;
        for (auto &t : toks) {
            if (auto byLabel = g.find_label(t.text)) {
                out.push_back(*byLabel);
            } else {
                out.push_back(g.element(parse_index(t, line_no, n)));
            }
        }
        return out;
    };
    if (!normal_tokens.empty()) {
        auto normal = resolve_elements(normal_tokens, normal_line);
        if (transversal_tokens.empty()) {
            g = g.with_decomposition(normal);
        } else {
            g = g.with_decomposition(normal, resolve_elements(transversal_tokens, transversal_line));
        }
    } else if (!transversal_tokens.empty()) {
        throw ParseError("'transversal' requires a 'normal' line", transversal_line, 1);
    }
    return std::make_shared<const FiniteGroup>(std::move(g));
}

GroupPtr parse_semidirect_text(std::string_view text, std::string spec, const std::string &base_dir) {
    auto lines = content_lines(text);
    GroupPtr normal, complement;
    std::size_t k = 0;
    for (; k < lines.size(); k++) {
        auto &[line_no, toks] = lines[k];
        const auto &key = toks[0].text;
        if (key == "action") {
            k++;
            break;
        }
        if (toks.size() != 2 || (key != "normal" && key != "complement")) {
            throw ParseError("expected 'normal <spec>', 'complement <spec>' or 'action'", line_no, toks[0].column);
        }
        try {
            (key == "normal" ? normal : complement) = build_group(toks[1].text, base_dir);
        } catch (const std::invalid_argument &ex) {
            throw ParseError(ex.what(), line_no, toks[1].column);
        }
    }
    if (!normal || !complement) {
        throw ParseError("semidirect file needs both 'normal' and 'complement' specs", lines.empty() ? 1 : lines.back().first, 1);
    }
    const std::size_t nn = normal->order(), np = complement->order();
    if (nn * np > kMaxGroupOrder) {
        throw std::invalid_argument("semidirect order exceeds the cap");
    }
    if (lines.size() - k != np) {
        throw ParseError("expected " + std::to_string(np) + " action rows", lines.empty() ? 1 : lines.back().first, 1);
    }
    // action[p][n] = phi_p(n)
    std::vector<std::vector<std::uint32_t>> action(np, std::vector<std::uint32_t>(nn));
    for (std::size_t p = 0; p < np; p++) {
        auto &[line_no, toks] = lines[k + p];
        if (toks.size() != nn) {
            throw ParseError("expected " + std::to_string(nn) + " entries in action row", line_no, toks[0].column);
        }
        std::vector<bool> seen(nn, false);
        for (std::size_t x = 0; x < nn; x++) {
            auto v = parse_index(toks[x], line_no, nn);
            if (seen[v]) {
                throw ParseError("action row is not a permutation of N", line_no, toks[x].column);
            }
            seen[v] = true;
            action[p][x] = v;
        }
    }
    const auto &nt = normal->table();
    const auto &pt = complement->table();
    for (std::size_t p = 0; p < np; p++) {
        for (std::size_t a = 0; a < nn; a++) {
            for (std::size_t b = 0; b < nn; b++) {
                if (action[p][nt.at(a, b)] != nt.at(action[p][a], action[p][b])) {
                    throw std::invalid_argument("action of complement element " + complement->labels()[p] +
                                                " is not an automorphism of N");
                }
            }
        }
        for (std::size_t q = 0; q < np; q++) {
            for (std::size_t a = 0; a < nn; a++) {
                if (action[pt.at(p, q)][a] != action[p][action[q][a]]) {
                    throw std::invalid_argument("action is not a homomorphism P -> Aut(N)");
                }
            }
        }
    }
    const std::size_t order = nn * np;
    CayleyTable t{order, std::vector<std::uint32_t>(order * order)};
    std::vector<std::string> labels;
    // (n1, p1)(n2, p2) = (n1 phi_p1(n2), p1 p2), element (n, p) at index n*|P| + p
    for (std::size_t x = 0; x < order; x++) {
        const std::size_t n1 = x / np, p1 = x % np;
        labels.push_back("(" + normal->labels()[n1] + "," + complement->labels()[p1] + ")");
        for (std::size_t y = 0; y < order; y++) {
            const std::size_t n2 = y / np, p2 = y % np;
            t.entries[x * order + y] = static_cast<std::uint32_t>(nt.at(n1, action[p1][n2]) * np + pt.at(p1, p2));
        }
    }
    auto g = FiniteGroup::from_table(std::move(t), std::move(labels), std::move(spec));
    std::vector<GroupElement> nsub, psub;
    for (std::size_t a = 0; a < nn; a++) {
        nsub.push_back(g.element(a * np + complement->identity().index));
    }
    for (std::size_t p = 0; p < np; p++) {
        psub.push_back(g.element(normal->identity().index * np + p));
    }
    return std::make_shared<const FiniteGroup>(g.with_decomposition(nsub, psub));
}

}  // namespace qrf
