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

#ifndef QRF_KERNELS_H
#define QRF_KERNELS_H

// Data-parallel dense kernels used by operator verification. Every kernel in
// qrf::kernels has a single-threaded counterpart in qrf::kernels::serial with
// identical results; the serial versions are kept as the test reference.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qrf/group.h"

namespace qrf::kernels {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using SparseColumn = std::vector<std::pair<std::size_t, Complex>>;
/// Fills the nonzero entries of one column. Must be safe to call concurrently.
using ColumnFn = std::function<void(std::size_t column, SparseColumn &entries)>;

/// Number of triples with (ab)c != a(bc); the first in lexicographic order is written to `first`.
std::size_t associativity_violations(const CayleyTable &table, std::array<std::uint32_t, 3> *first);

/// Builds a rows x cols matrix column by column. Entries reported twice for the same row are summed.
Matrix assemble_columns(std::size_t rows, std::size_t cols, const ColumnFn &column);

/// Dense product that skips zero entries of the sparser operand. Exact same
/// summation order as the serial version.
Matrix multiply(const Matrix &a, const Matrix &b);

double max_abs_diff(const Matrix &a, const Matrix &b);
/// max_ij |conj(a(j, i)) - b(i, j)|
double max_adjoint_diff(const Matrix &a, const Matrix &b);
/// max_ij |(u^dagger u - 1)(i, j)|
double unitarity_residual(const Matrix &u);

namespace serial {

std::size_t associativity_violations(const CayleyTable &table, std::array<std::uint32_t, 3> *first);
Matrix assemble_columns(std::size_t rows, std::size_t cols, const ColumnFn &column);
Matrix multiply(const Matrix &a, const Matrix &b);
double max_abs_diff(const Matrix &a, const Matrix &b);
double max_adjoint_diff(const Matrix &a, const Matrix &b);
double unitarity_residual(const Matrix &u);

}  // namespace serial

}  // namespace qrf::kernels

#endif
