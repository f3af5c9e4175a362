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

#ifndef QRF_HILBERT_H
#define QRF_HILBERT_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qrf/classical.h"
#include "qrf/group.h"

namespace qrf {

using Complex = std::complex<double>;
using Labels = std::vector<std::uint32_t>;

inline constexpr double kDropTolerance = 1e-12;
inline constexpr double kUnitTolerance = 1e-10;
inline constexpr std::size_t kMaxDenseDimension = 4096;

/// A system either carries the regular representation (basis labels are group elements) or
/// encodes group elements as unit vectors psi(g) in C^d.
class SystemModel {
   public:
    enum class Kind { regular, encoded };

    static SystemModel regular(GroupPtr group, SystemKind subsystem = SystemKind::G);
    /// Validates unit norm, distinctness and unitarity of vR, and records the phase
    /// vR(g) psi(h) = sign(g, h) psi(h g^-1). Throws if vR is not projectively equivariant.
    static SystemModel encoded(GroupPtr group, std::vector<Eigen::VectorXcd> injection,
                               std::vector<Eigen::MatrixXcd> v_right, std::vector<Eigen::MatrixXcd> v_left,
                               std::string encoding);
    /// Z_m on C^2: psi(k) = cos(t/2)|0> + sin(t/2)|1> with t = 2 pi k / m taken in (-pi, pi].
    static SystemModel half_angle(std::size_t m);

    Kind kind() const {
        return kind_;
    }
    bool is_regular() const {
        return kind_ == Kind::regular;
    }
    const FiniteGroup &group() const {
        return *group_;
    }
    const GroupPtr &group_ptr() const {
        return group_;
    }
    std::size_t dimension() const {
        return dim_;
    }
    SystemKind subsystem() const {
        return subsystem_;
    }
    const std::string &encoding() const {
        return encoding_;
    }

    const Eigen::VectorXcd &injection(GroupElement g) const;
    const Eigen::MatrixXcd &v_right(GroupElement g) const;
    bool has_v_left() const {
        return !v_left_.empty();
    }
    const Eigen::MatrixXcd &v_left(GroupElement g) const;
    /// Phase c with vR(g) psi(h) = c psi(h g^-1).
    Complex sign(GroupElement g, GroupElement h) const;

    /// Same model with a different regular subsystem tag.
    SystemModel with_subsystem(SystemKind kind) const;

    bool operator==(const SystemModel &other) const;

   private:
    SystemModel() = default;

    Kind kind_ = Kind::regular;
    GroupPtr group_;
    std::size_t dim_ = 0;
    SystemKind subsystem_ = SystemKind::G;
    std::string encoding_;
    std::vector<Eigen::VectorXcd> injection_;
    std::vector<Eigen::MatrixXcd> v_right_;
    std::vector<Eigen::MatrixXcd> v_left_;
    std::vector<Complex> sign_;
};

/// Sparse state over a product of systems, keyed by label tuples in lexicographic order.
struct QuantumState {
    std::size_t frame = 0;
    std::vector<SystemModel> models;
    std::map<Labels, Complex> terms;
    /// Norm before the last renormalization (1 when none happened).
    double norm_factor = 1.0;

    std::size_t size() const {
        return models.size();
    }
    double norm() const;
    bool is_normalized(double tol = kUnitTolerance) const {
        return std::abs(norm() * norm() - 1.0) <= tol;
    }
    Complex amplitude(const Labels &labels) const;
};

QuantumState basis_state(std::vector<SystemModel> models, std::size_t frame, Labels labels);
QuantumState superpose(const std::vector<Complex> &coeffs, const std::vector<QuantumState> &states);
Complex inner_product(const QuantumState &a, const QuantumState &b);
Eigen::VectorXcd encode_group_element(const SystemModel &model, GroupElement g);
/// Number of singular values above tol * largest across the cut left | rest.
std::size_t schmidt_rank(const QuantumState &psi, const std::vector<std::size_t> &left, double tol = kUnitTolerance);

/// Drops amplitudes below the drop tolerance.
void prune(QuantumState &psi);
/// Returns psi / |psi| with norm_factor set to |psi|. Throws on the zero state.
QuantumState normalized(const QuantumState &psi);
/// Throws if the frame slot is regular and holds a non-identity label.
void check_frame_slot(const QuantumState &psi);
void check_labels(const std::vector<SystemModel> &models, const Labels &labels);
void require_same_space(const QuantumState &a, const QuantumState &b, const char *what);

/// Max |a_k - b_k| over the union of supports. Requires the same models (frames may differ).
double max_amplitude_diff(const QuantumState &a, const QuantumState &b);
/// Euclidean distance |a - b|, no phase quotient.
double state_distance(const QuantumState &a, const QuantumState &b);

std::size_t product_dimension(const std::vector<SystemModel> &models);
/// Row-major flattening: slot 0 is the most significant digit.
std::size_t flat_index(const std::vector<SystemModel> &models, const Labels &labels);
Labels unflatten(const std::vector<SystemModel> &models, std::size_t index);
Eigen::VectorXcd to_dense(const QuantumState &psi);
QuantumState from_dense(std::vector<SystemModel> models, std::size_t frame, const Eigen::VectorXcd &v);

}  // namespace qrf

#endif
