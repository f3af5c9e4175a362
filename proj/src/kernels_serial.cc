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

#include <algorithm>
#include <cmath>

#include "qrf/kernels.h"

namespace qrf::kernels::serial {

namespace {

std::size_t count_nonzero(const Matrix &m) {
    std::size_t n = 0;
    for (Eigen::Index k = 0; k < m.size(); k++) {
        n += m.data()[k] != Complex{};
    }
    return n;
}

Matrix multiply_skip_right(const Matrix &a, const Matrix &b) {
    Matrix c = Matrix::Zero(a.rows(), b.cols());
    for (Eigen::Index j = 0; j < b.cols(); j++) {
        for (Eigen::Index m = 0; m < a.cols(); m++) {
            const Complex w = b(m, j);
            if (w != Complex{}) {
                c.col(j) += w * a.col(m);
            }
        }
    }
    return c;
}

}  // namespace

std::size_t associativity_violations(const CayleyTable &table, std::array<std::uint32_t, 3> *first) {
    const std::size_t n = table.order;
    std::size_t total = 0;
    for (std::size_t a = 0; a < n; a++) {
        for (std::size_t b = 0; b < n; b++) {
            for (std::size_t c = 0; c < n; c++) {
                if (table.at(table.at(a, b), c) != table.at(a, table.at(b, c))) {
                    if (total == 0 && first != nullptr) {
                        *first = {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                  static_cast<std::uint32_t>(c)};
                    }
                    total++;
                }
            }
        }
    }
    return total;
}

Matrix assemble_columns(std::size_t rows, std::size_t cols, const ColumnFn &column) {
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    SparseColumn entries;
    for (std::size_t c = 0; c < cols; c++) {
        entries.clear();
        column(c, entries);
        for (const auto &[r, v] : entries) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += v;
        }
    }
    return out;
}

Matrix multiply(const Matrix &a, const Matrix &b) {
    if (count_nonzero(b) <= count_nonzero(a)) {
        return multiply_skip_right(a, b);
    }
    Matrix bt = b.adjoint();
    Matrix at = a.adjoint();
    return multiply_skip_right(bt, at).adjoint();
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); j++) {
        for (Eigen::Index i = 0; i < a.rows(); i++) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

double max_adjoint_diff(const Matrix &a, const Matrix &b) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < b.cols(); j++) {
        for (Eigen::Index i = 0; i < b.rows(); i++) {
            worst = std::max(worst, std::abs(std::conj(a(j, i)) - b(i, j)));
        }
    }
    return worst;
}

double unitarity_residual(const Matrix &u) {
    Matrix g = multiply(u.adjoint(), u);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < g.cols(); j++) {
        for (Eigen::Index i = 0; i < g.rows(); i++) {
            const Complex expected = i == j ? Complex{1.0} : Complex{};
            worst = std::max(worst, std::abs(g(i, j) - expected));
        }
    }
    return worst;
}

}  // namespace qrf::kernels::serial
