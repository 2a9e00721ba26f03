//------------------------------------------------------------------------------
// rockrelax: Rockafellian relaxation toolkit for stochastic programs
// Copyright 2026 the rockrelax authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//------------------------------------------------------------------------------
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rockrelax {

/// Thrown when extended-real arithmetic hits an indeterminate form,
/// e.g. (+inf) + (-inf) or 0 * inf.
struct IndeterminateValue : std::runtime_error {
    explicit IndeterminateValue(const std::string& what)
        : std::runtime_error(what) {}
};

/// Extended real number: a double restricted to [-inf, +inf] with NaN
/// rejected at construction.  Addition saturates (inf + finite = inf);
/// opposite infinities and 0 * inf throw IndeterminateValue so that a
/// bug in an objective shows up as an exception, never as silent NaN.
class XReal {
  public:
    XReal() : v_(0.0) {}
    XReal(double v) : v_(v) {  // NOLINT: implicit by design, used as a scalar
        if (std::isnan(v)) throw std::invalid_argument("XReal: NaN rejected");
    }

    static XReal pos_inf() { return XReal(std::numeric_limits<double>::infinity()); }
    static XReal neg_inf() { return XReal(-std::numeric_limits<double>::infinity()); }

    bool is_finite() const { return std::isfinite(v_); }
    bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
    bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

    /// Underlying double; +-inf propagate as IEEE infinities.
    double value() const { return v_; }

    XReal operator-() const { return XReal(-v_); }

    friend XReal operator+(XReal a, XReal b) {
        if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
            throw IndeterminateValue("XReal: (+inf) + (-inf)");
        return XReal(a.v_ + b.v_);
    }
    friend XReal operator-(XReal a, XReal b) { return a + (-b); }
    XReal& operator+=(XReal b) { *this = *this + b; return *this; }

    /// Scalar scaling; 0 * inf is indeterminate and throws.
    friend XReal operator*(double s, XReal a) {
        if (s == 0.0 && !a.is_finite())
            throw IndeterminateValue("XReal: 0 * inf");
        return XReal(s * a.v_);
    }
    friend XReal operator*(XReal a, double s) { return s * a; }

    friend bool operator==(XReal a, XReal b) { return a.v_ == b.v_; }
    friend bool operator<(XReal a, XReal b) { return a.v_ < b.v_; }
    friend bool operator<=(XReal a, XReal b) { return a.v_ <= b.v_; }
    friend bool operator>(XReal a, XReal b) { return a.v_ > b.v_; }
    friend bool operator>=(XReal a, XReal b) { return a.v_ >= b.v_; }

  private:
    double v_;
};

inline XReal xmin(XReal a, XReal b) { return a <= b ? a : b; }
inline XReal xmax(XReal a, XReal b) { return a >= b ? a : b; }

}  // namespace rockrelax
