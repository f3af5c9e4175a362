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

#include "qrf/kernels.h"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace qrf::kernels {

namespace {

std::size_t count_nonzero(const Matrix &m) {
    std::size_t n = 0;
    const Complex *p = m.data();
    const std::size_t size = static_cast<std::size_t>(m.size());
    for (std::size_t k = 0; k < size; k++) {
        n += p[k] != Complex{};
    }
    return n;
}

// c = a * b, skipping zeros of b. Columns of c are independent.
Matrix multiply_skip_right(const Matrix &a, const Matrix &b) {
    const Eigen::Index rows = a.rows();
    const Eigen::Index inner = a.cols();
    const Eigen::Index cols = b.cols();
    Matrix c = Matrix::Zero(rows, cols);
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < cols; j++) {
        for (Eigen::Index m = 0; m < inner; m++) {
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
    std::array<std::uint32_t, 3> best{UINT32_MAX, UINT32_MAX, UINT32_MAX};
    bool found = false;
#pragma omp parallel
    {
        std::array<std::uint32_t, 3> local{UINT32_MAX, UINT32_MAX, UINT32_MAX};
        bool local_found = false;
#pragma omp for schedule(static) reduction(+ : total)
        for (std::size_t a = 0; a < n; a++) {
            for (std::size_t b = 0; b < n; b++) {
                const std::uint32_t ab = table.at(a, b);
                for (std::size_t c = 0; c < n; c++) {
                    if (table.at(ab, c) != table.at(a, table.at(b, c))) {
                        total++;
                        if (!local_found) {
                            local = {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                     static_cast<std::uint32_t>(c)};
                            local_found = true;
                        }
                    }
                }
            }
        }
#pragma omp critical
        if (local_found && (!found || local < best)) {
            best = local;
            found = true;
        }
    }
    if (first != nullptr && found) {
        *first = best;
    }
    return total;
}

Matrix assemble_columns(std::size_t rows, std::size_t cols, const ColumnFn &column) {
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
#pragma omp parallel
    {
        SparseColumn entries;
#pragma omp for schedule(static)
        for (std::size_t c = 0; c < cols; c++) {
            entries.clear();
            column(c, entries);
            for (const auto &[r, v] : entries) {
                out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += v;
            }
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
    const Eigen::Index cols = a.cols();
    const Eigen::Index rows = a.rows();
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (Eigen::Index j = 0; j < cols; j++) {
        for (Eigen::Index i = 0; i < rows; i++) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

double max_adjoint_diff(const Matrix &a, const Matrix &b) {
    const Eigen::Index n = b.rows();
    const Eigen::Index m = b.cols();
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (Eigen::Index j = 0; j < m; j++) {
        for (Eigen::Index i = 0; i < n; i++) {
            worst = std::max(worst, std::abs(std::conj(a(j, i)) - b(i, j)));
        }
    }
    return worst;
}

double unitarity_residual(const Matrix &u) {
    Matrix ud = u.adjoint();
    Matrix g = multiply(ud, u);
    const Eigen::Index n = g.rows();
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
    for (Eigen::Index j = 0; j < n; j++) {
        for (Eigen::Index i = 0; i < n; i++) {
            const Complex expected = i == j ? Complex{1.0} : Complex{};
            worst = std::max(worst, std::abs(g(i, j) - expected));
        }
    }
    return worst;
}

}  // namespace qrf::kernels
