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

#ifndef QRF_TRANSLATION_LINE_H
#define QRF_TRANSLATION_LINE_H

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace qrf {

using Rational = boost::rational<std::int64_t>;

/// floor(x / step) for step > 0, exact.
std::int64_t floor_div(const Rational &x, const Rational &step);

std::string format_rational(const Rational &x);

/// The real line under translation, approximated by exact rationals. N is the lattice
/// L*Z and the transversal is the cell [0, L).
class TranslationLine {
   public:
    using Element = Rational;

    explicit TranslationLine(Rational cell_length);

    const Rational &cell_length() const {
        return cell_length_;
    }

    Rational identity() const {
        return Rational(0);
    }
    Rational compose(const Rational &a, const Rational &b) const {
        return a + b;
    }
    Rational inverse(const Rational &a) const {
        return -a;
    }
    bool has_decomposition() const {
        return true;
    }
    /// L * floor(x / L)
    Rational n_part(const Rational &x) const {
        return cell_length_ * floor_div(x, cell_length_);
    }
    Rational p_part(const Rational &x) const {
        return x - n_part(x);
    }
    bool in_n(const Rational &x) const {
        return (x / cell_length_).denominator() == 1;
    }
    std::string format(const Rational &x) const {
        return format_rational(x);
    }

   private:
    Rational cell_length_;
};

}  // namespace qrf

#endif
