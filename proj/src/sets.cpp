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
#include "rockrelax/sets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rockrelax {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

}  // namespace

// ============================== Region =====================================

std::size_t Region::dim() const {
    switch (kind) {
        case Kind::box: return lo.size();
        case Kind::ball: return center.size();
        case Kind::halfspace: return normal.size();
        case Kind::finite_union:
            return members.empty() ? 0 : members.front().dim();
    }
    return 0;
}

bool Region::empty() const {
    switch (kind) {
        case Kind::box:
            for (std::size_t j = 0; j < lo.size(); ++j)
                if (lo[j] > hi[j]) return true;
            return false;
        case Kind::ball: return radius < 0.0;
        case Kind::halfspace: return false;
        case Kind::finite_union: {
            for (const Region& m : members)
                if (!m.empty()) return false;
            return true;
        }
    }
    return true;
}

bool Region::contains(std::span<const double> xi, double tol) const {
    switch (kind) {
        case Kind::box:
            for (std::size_t j = 0; j < lo.size(); ++j)
                if (xi[j] < lo[j] - tol || xi[j] > hi[j] + tol) return false;
            return true;
        case Kind::ball: {
            if (radius < 0.0) return false;
            std::vector<double> d(center.size());
            for (std::size_t j = 0; j < center.size(); ++j) d[j] = xi[j] - center[j];
            return norm2(d) <= radius + tol;
        }
        case Kind::halfspace: {
            double v = 0.0;
            for (std::size_t j = 0; j < normal.size(); ++j) v += normal[j] * xi[j];
            return v <= offset + tol;
        }
        case Kind::finite_union:
            for (const Region& m : members)
                if (m.contains(xi, tol)) return true;
            return false;
    }
    return false;
}

double Region::distance(std::span<const double> xi) const {
    if (empty()) return pos_inf();
    switch (kind) {
        case Kind::box: {
            double s = 0.0;
            for (std::size_t j = 0; j < lo.size(); ++j) {
                double d = 0.0;
                if (xi[j] < lo[j]) d = lo[j] - xi[j];
                else if (xi[j] > hi[j]) d = xi[j] - hi[j];
                s += d * d;
            }
            return std::sqrt(s);
        }
        case Kind::ball: {
            std::vector<double> d(center.size());
            for (std::size_t j = 0; j < center.size(); ++j) d[j] = xi[j] - center[j];
            return std::max(0.0, norm2(d) - radius);
        }
        case Kind::halfspace: {
            double v = 0.0;
            for (std::size_t j = 0; j < normal.size(); ++j) v += normal[j] * xi[j];
            double nn = norm2(normal);
            if (nn == 0.0)
                throw std::invalid_argument("Region: halfspace with zero normal");
            return std::max(0.0, (v - offset) / nn);
        }
        case Kind::finite_union: {
            double best = pos_inf();
            for (const Region& m : members) best = std::min(best, m.distance(xi));
            return best;
        }
    }
    return pos_inf();
}

Region Region::enlarge(double eps) const {
    if (eps < 0.0) throw std::invalid_argument("Region::enlarge: eps < 0");
    Region r = *this;
    switch (kind) {
        case Kind::box:
            for (std::size_t j = 0; j < r.lo.size(); ++j) {
                if (std::isfinite(r.lo[j])) r.lo[j] -= eps;
                if (std::isfinite(r.hi[j])) r.hi[j] += eps;
            }
            return r;
        case Kind::ball:
            r.radius += eps;
            return r;
        case Kind::halfspace:
            r.offset += eps * norm2(normal);
            return r;
        case Kind::finite_union:
            for (Region& m : r.members) m = m.enlarge(eps);
            return r;
    }
    return r;
}

Region Region::interval(double lo, double hi) {
    Region r;
    r.kind = Kind::box;
    r.lo = {lo};
    r.hi = {hi};
    return r;
}

Region Region::box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.size() != hi.size())
        throw std::invalid_argument("Region::box: lo/hi size mismatch");
    Region r;
    r.kind = Kind::box;
    r.lo = std::move(lo);
    r.hi = std::move(hi);
    return r;
}

Region Region::ball(std::vector<double> center, double radius) {
    Region r;
    r.kind = Kind::ball;
    r.center = std::move(center);
    r.radius = radius;
    return r;
}

Region Region::halfspace(std::vector<double> normal, double offset) {
    Region r;
    r.kind = Kind::halfspace;
    r.normal = std::move(normal);
    r.offset = offset;
    return r;
}

Region Region::finite_union(std::vector<Region> members) {
    Region r;
    r.kind = Kind::finite_union;
    r.members = std::move(members);
    return r;
}

// ============================== ParamSet ===================================

Region ParamSet::at(std::span<const double> x) const {
    switch (kind) {
        case Kind::box: {
            std::vector<double> l(lo.size()), h(hi.size());
            for (std::size_t j = 0; j < lo.size(); ++j) l[j] = lo[j].at(x);
            for (std::size_t j = 0; j < hi.size(); ++j) h[j] = hi[j].at(x);
            return Region::box(std::move(l), std::move(h));
        }
        case Kind::ball: {
            std::vector<double> c(center.size());
            for (std::size_t j = 0; j < center.size(); ++j) c[j] = center[j].at(x);
            return Region::ball(std::move(c), radius.at(x));
        }
        case Kind::halfspace:
            return Region::halfspace(normal, offset.at(x));
        case Kind::finite_union: {
            std::vector<Region> ms;
            ms.reserve(members.size());
            for (const ParamSet& m : members) ms.push_back(m.at(x));
            return Region::finite_union(std::move(ms));
        }
    }
    return Region{};
}

ParamSet ParamSet::interval(AffineScalar lo, AffineScalar hi) {
    ParamSet s;
    s.kind = Kind::box;
    s.lo = {std::move(lo)};
    s.hi = {std::move(hi)};
    return s;
}

ParamSet ParamSet::halfline_le(AffineScalar hi) {
    return interval(AffineScalar::constant(neg_inf()), std::move(hi));
}

ParamSet ParamSet::halfline_ge(AffineScalar lo) {
    return interval(std::move(lo), AffineScalar::constant(pos_inf()));
}

ParamSet ParamSet::singleton(AffineScalar point) {
    ParamSet s;
    s.kind = Kind::box;
    s.lo = {point};
    s.hi = {std::move(point)};
    return s;
}

ParamSet ParamSet::box2(AffineScalar lo0, AffineScalar hi0,
                        AffineScalar lo1, AffineScalar hi1) {
    ParamSet s;
    s.kind = Kind::box;
    s.lo = {std::move(lo0), std::move(lo1)};
    s.hi = {std::move(hi0), std::move(hi1)};
    return s;
}

ParamSet ParamSet::ball(std::vector<AffineScalar> center, AffineScalar radius) {
    ParamSet s;
    s.kind = Kind::ball;
    s.center = std::move(center);
    s.radius = std::move(radius);
    return s;
}

ParamSet ParamSet::halfspace(std::vector<double> normal, AffineScalar offset) {
    ParamSet s;
    s.kind = Kind::halfspace;
    s.normal = std::move(normal);
    s.offset = std::move(offset);
    return s;
}

ParamSet ParamSet::finite_union(std::vector<ParamSet> members) {
    ParamSet s;
    s.kind = Kind::finite_union;
    s.members = std::move(members);
    return s;
}

}  // namespace rockrelax
