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

#include "qrf/hilbert.h"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "qrf/errors.h"

namespace qrf {

SystemModel SystemModel::regular(GroupPtr group, SystemKind subsystem) {
    if (!group) {
        throw std::invalid_argument("regular model needs a group");
    }
    if (subsystem == SystemKind::N) {
        group->require_decomposition();
    }
    SystemModel m;
    m.kind_ = Kind::regular;
    m.dim_ = group->order();
    m.subsystem_ = subsystem;
    m.encoding_ = "regular:" + group->spec();
    m.group_ = std::move(group);
    return m;
}

SystemModel SystemModel::encoded(GroupPtr group, std::vector<Eigen::VectorXcd> injection,
                                 std::vector<Eigen::MatrixXcd> v_right, std::vector<Eigen::MatrixXcd> v_left,
                                 std::string encoding) {
    if (!group) {
        throw std::invalid_argument("encoded model needs a group");
    }
    const std::size_t n = group->order();
    if (injection.size() != n || v_right.size() != n || (!v_left.empty() && v_left.size() != n)) {
        throw std::invalid_argument("encoding tables must have one entry per group element");
    }
    const auto dim = static_cast<std::size_t>(injection[0].size());
    if (dim == 0) {
        throw std::invalid_argument("encoding dimension must be positive");
    }
    for (std::size_t g = 0; g < n; g++) {
        if (static_cast<std::size_t>(injection[g].size()) != dim) {
            throw std::invalid_argument("injection vectors differ in dimension");
        }
        if (std::abs(injection[g].norm() - 1.0) > kUnitTolerance) {
            throw std::invalid_argument("injection(" + std::to_string(g) + ") is not a unit vector");
        }
        for (std::size_t h = 0; h < g; h++) {
            if ((injection[g] - injection[h]).norm() <= kUnitTolerance) {
                throw std::invalid_argument("injection is not injective on elements " + std::to_string(h) + " and " +
                                            std::to_string(g));
            }
        }
        for (const auto *table : {&v_right, &v_left}) {
            if (table->empty()) {
                continue;
            }
            const auto &v = (*table)[g];
            if (static_cast<std::size_t>(v.rows()) != dim || static_cast<std::size_t>(v.cols()) != dim) {
                throw std::invalid_argument("encoding matrices must be d x d");
            }
            const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(v.rows(), v.cols());
            if ((v.adjoint() * v - id).cwiseAbs().maxCoeff() > kUnitTolerance) {
                throw std::invalid_argument("encoding matrix for element " + std::to_string(g) + " is not unitary");
            }
        }
    }
    SystemModel m;
    m.kind_ = Kind::encoded;
    m.dim_ = dim;
    m.encoding_ = std::move(encoding);
    m.injection_ = std::move(injection);
    m.v_right_ = std::move(v_right);
    m.v_left_ = std::move(v_left);
    m.sign_.assign(n * n, Complex(1.0));
    for (std::size_t g = 0; g < n; g++) {
        for (std::size_t h = 0; h < n; h++) {
            auto hg = group->compose(GroupElement{static_cast<std::uint32_t>(h)},
                                     group->inverse(GroupElement{static_cast<std::uint32_t>(g)}));
            Eigen::VectorXcd image = m.v_right_[g] * m.injection_[h];
            Complex c = m.injection_[hg.index].dot(image);
            if (std::abs(std::abs(c) - 1.0) > kUnitTolerance ||
                (image - c * m.injection_[hg.index]).norm() > kUnitTolerance) {
                throw std::invalid_argument("vR(" + std::to_string(g) + ") does not map psi(" + std::to_string(h) +
                                            ") onto a phase times psi(h g^-1)");
            }
            m.sign_[g * n + h] = c;
        }
    }
    m.group_ = std::move(group);
    return m;
}

SystemModel SystemModel::half_angle(std::size_t m) {
    if (m < 2) {
        throw std::invalid_argument("half-angle encoding needs m >= 2");
    }
    auto group = build_group("Z:" + std::to_string(m));
    std::vector<Eigen::VectorXcd> injection;
    std::vector<Eigen::MatrixXcd> v_right, v_left;
    auto rotation = [](double a) {
        Eigen::MatrixXcd r(2, 2);
        r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
        return r;
    };
    for (std::size_t k = 0; k < m; k++) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        if (theta > std::numbers::pi + 1e-12) {
            theta -= 2.0 * std::numbers::pi;
        }
        Eigen::VectorXcd psi(2);
        psi << std::cos(theta / 2), std::sin(theta / 2);
        injection.push_back(psi);
        v_right.push_back(rotation(-theta / 2));
        v_left.push_back(rotation(theta / 2));
    }
    return encoded(std::move(group), std::move(injection), std::move(v_right), std::move(v_left),
                   "half-angle:" + std::to_string(m));
}

const Eigen::VectorXcd &SystemModel::injection(GroupElement g) const {
    if (kind_ != Kind::encoded) {
        throw InapplicableError("regular systems have no injection; use the basis label directly");
    }
    return injection_.at(group_->element(g.index).index);
}

const Eigen::MatrixXcd &SystemModel::v_right(GroupElement g) const {
    if (kind_ != Kind::encoded) {
        throw InapplicableError("regular systems have no vR table");
    }
    return v_right_.at(group_->element(g.index).index);
}

const Eigen::MatrixXcd &SystemModel::v_left(GroupElement g) const {
    if (v_left_.empty()) {
        throw InapplicableError("model carries no vL table");
    }
    return v_left_.at(group_->element(g.index).index);
}

Complex SystemModel::sign(GroupElement g, GroupElement h) const {
    if (kind_ != Kind::encoded) {
        return Complex(1.0);
    }
    group_->element(g.index);
    group_->element(h.index);
    return sign_[g.index * group_->order() + h.index];
}

SystemModel SystemModel::with_subsystem(SystemKind kind) const {
    if (kind_ != Kind::regular) {
        throw InapplicableError("only regular systems carry a G/N tag");
    }
    return regular(group_, kind);
}

bool SystemModel::operator==(const SystemModel &other) const {
    if (kind_ != other.kind_ || dim_ != other.dim_ || subsystem_ != other.subsystem_ || encoding_ != other.encoding_) {
        return false;
    }
    return group_ == other.group_ || *group_ == *other.group_;
}

double QuantumState::norm() const {
    double s = 0;
    for (auto &[l, a] : terms) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

Complex QuantumState::amplitude(const Labels &labels) const {
    auto it = terms.find(labels);
    return it == terms.end() ? Complex(0.0) : it->second;
}

void check_labels(const std::vector<SystemModel> &models, const Labels &labels) {
    if (labels.size() != models.size()) {
        throw std::invalid_argument("expected " + std::to_string(models.size()) + " labels, got " +
                                    std::to_string(labels.size()));
    }
    for (std::size_t k = 0; k < labels.size(); k++) {
        if (labels[k] >= models[k].dimension()) {
            throw std::out_of_range("label " + std::to_string(labels[k]) + " out of range for slot " +
                                    std::to_string(k) + " of dimension " + std::to_string(models[k].dimension()));
        }
    }
}

void check_frame_slot(const QuantumState &psi) {
    if (psi.frame >= psi.size()) {
        throw std::out_of_range("frame index " + std::to_string(psi.frame) + " out of range");
    }
    const auto &m = psi.models[psi.frame];
    if (!m.is_regular()) {
        return;
    }
    const auto e = m.group().identity().index;
    for (auto &[labels, amp] : psi.terms) {
        if (labels[psi.frame] != e) {
            throw std::invalid_argument("frame slot " + std::to_string(psi.frame) +
                                        " must hold the identity label in every term");
        }
    }
}

QuantumState basis_state(std::vector<SystemModel> models, std::size_t frame, Labels labels) {
    if (models.empty()) {
        throw std::invalid_argument("a state needs at least one system");
    }
    check_labels(models, labels);
    QuantumState psi;
    psi.frame = frame;
    psi.models = std::move(models);
    psi.terms[std::move(labels)] = Complex(1.0);
    check_frame_slot(psi);
    return psi;
}

void require_same_space(const QuantumState &a, const QuantumState &b, const char *what) {
    if (a.frame != b.frame) {
        throw std::invalid_argument(std::string(what) + ": states are relative to different frames");
    }
    if (a.models != b.models) {
        throw std::invalid_argument(std::string(what) + ": states live on different system models");
    }
}

void prune(QuantumState &psi) {
    std::erase_if(psi.terms, [](const auto &kv) { return std::abs(kv.second) < kDropTolerance; });
}

QuantumState superpose(const std::vector<Complex> &coeffs, const std::vector<QuantumState> &states) {
    if (states.empty() || coeffs.size() != states.size()) {
        throw std::invalid_argument("superpose needs one coefficient per state");
    }
    QuantumState out;
    out.frame = states[0].frame;
    out.models = states[0].models;
    for (std::size_t k = 0; k < states.size(); k++) {
        require_same_space(states[0], states[k], "superpose");
        for (auto &[labels, amp] : states[k].terms) {
            out.terms[labels] += coeffs[k] * amp;
        }
    }
    prune(out);
    return out;
}

Complex inner_product(const QuantumState &a, const QuantumState &b) {
    require_same_space(a, b, "inner_product");
    Complex s = 0;
    const auto &small = a.terms.size() <= b.terms.size() ? a.terms : b.terms;
    const auto &large = a.terms.size() <= b.terms.size() ? b.terms : a.terms;
    for (auto &[labels, amp] : small) {
        auto it = large.find(labels);
        if (it != large.end()) {
            s += &small == &a.terms ? std::conj(amp) * it->second : std::conj(it->second) * amp;
        }
    }
    return s;
}

Eigen::VectorXcd encode_group_element(const SystemModel &model, GroupElement g) {
    return model.injection(g);
}

QuantumState normalized(const QuantumState &psi) {
    const double n = psi.norm();
    if (n < kDropTolerance) {
        throw std::domain_error("cannot normalize the zero state");
    }
    QuantumState out = psi;
    for (auto &[l, a] : out.terms) {
        a /= n;
    }
    out.norm_factor = n;
    return out;
}

std::size_t schmidt_rank(const QuantumState &psi, const std::vector<std::size_t> &left, double tol) {
    std::set<std::size_t> left_set(left.begin(), left.end());
    if (left_set.empty() || left_set.size() >= psi.size()) {
        throw std::invalid_argument("schmidt_rank needs a non-empty proper subset of the systems");
    }
    for (auto k : left_set) {
        if (k >= psi.size()) {
            throw std::out_of_range("system index " + std::to_string(k) + " out of range");
        }
    }
    std::map<Labels, Eigen::Index> rows, cols;
    std::vector<std::tuple<Labels, Labels, Complex>> entries;
    for (auto &[labels, amp] : psi.terms) {
        Labels l, r;
        for (std::size_t k = 0; k < labels.size(); k++) {
            (left_set.count(k) ? l : r).push_back(labels[k]);
        }
        rows.emplace(l, 0);
        cols.emplace(r, 0);
        entries.emplace_back(std::move(l), std::move(r), amp);
    }
    if (entries.empty()) {
        return 0;
    }
    Eigen::Index next = 0;
    for (auto &[k, v] : rows) {
        v = next++;
    }
    next = 0;
    for (auto &[k, v] : cols) {
        v = next++;
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (auto &[l, r, amp] : entries) {
        m(rows[l], cols[r]) += amp;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto &sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) < kDropTolerance) {
        return 0;
    }
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); k++) {
        rank += sv(k) > tol * sv(0);
    }
    return rank;
}

double max_amplitude_diff(const QuantumState &a, const QuantumState &b) {
    if (a.models != b.models) {
        throw std::invalid_argument("max_amplitude_diff: states live on different system models");
    }
    double d = 0;
    for (auto &[labels, amp] : a.terms) {
        d = std::max(d, std::abs(amp - b.amplitude(labels)));
    }
    for (auto &[labels, amp] : b.terms) {
        if (!a.terms.count(labels)) {
            d = std::max(d, std::abs(amp));
        }
    }
    return d;
}

double state_distance(const QuantumState &a, const QuantumState &b) {
    if (a.models != b.models) {
        throw std::invalid_argument("state_distance: states live on different system models");
    }
    double s = 0;
    for (auto &[labels, amp] : a.terms) {
        s += std::norm(amp - b.amplitude(labels));
    }
    for (auto &[labels, amp] : b.terms) {
        if (!a.terms.count(labels)) {
            s += std::norm(amp);
        }
    }
    return std::sqrt(s);
}

std::size_t product_dimension(const std::vector<SystemModel> &models) {
    std::size_t d = 1;
    for (auto &m : models) {
        d *= m.dimension();
        if (d > kMaxDenseDimension) {
            throw DimensionCapError("product dimension exceeds the dense cap of " + std::to_string(kMaxDenseDimension));
        }
    }
    return d;
}

std::size_t flat_index(const std::vector<SystemModel> &models, const Labels &labels) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < models.size(); k++) {
        idx = idx * models[k].dimension() + labels[k];
    }
    return idx;
}

Labels unflatten(const std::vector<SystemModel> &models, std::size_t index) {
    Labels labels(models.size());
    for (std::size_t k = models.size(); k-- > 0;) {
        labels[k] = static_cast<std::uint32_t>(index % models[k].dimension());
        index /= models[k].dimension();
    }
    return labels;
}

Eigen::VectorXcd to_dense(const QuantumState &psi) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(product_dimension(psi.models)));
    for (auto &[labels, amp] : psi.terms) {
        v(static_cast<Eigen::Index>(flat_index(psi.models, labels))) = amp;
    }
    return v;
}

QuantumState from_dense(std::vector<SystemModel> models, std::size_t frame, const Eigen::VectorXcd &v) {
    QuantumState psi;
    psi.frame = frame;
    psi.models = std::move(models);
    if (static_cast<std::size_t>(v.size()) != product_dimension(psi.models)) {
        throw std::invalid_argument("dense vector length does not match the product dimension");
    }
    for (Eigen::Index k = 0; k < v.size(); k++) {
        if (std::abs(v(k)) >= kDropTolerance) {
            psi.terms[unflatten(psi.models, static_cast<std::size_t>(k))] = v(k);
        }
    }
    return psi;
}

}  // namespace qrf
