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

#include "qrf/translation_line.h"

#include <stdexcept>

namespace qrf {

std::int64_t floor_div(const Rational &x, const Rational &step) {
    if (step <= 0) {
        throw std::invalid_argument("cell length must be positive");
    }
    const Rational q = x / step;
    std::int64_t f = q.numerator() / q.denominator();
    if (q.numerator() % q.denominator() != 0 && q.numerator() < 0) {
        f -= 1;
    }
    return f;
}

std::string format_rational(const Rational &x) {
    if (x.denominator() == 1) {
        return std::to_string(x.numerator());
    }
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

TranslationLine::TranslationLine(Rational cell_length) : cell_length_(cell_length) {
    if (cell_length_ <= 0) {
        throw std::invalid_argument("cell length must be positive");
    }
}

}  // namespace qrf
