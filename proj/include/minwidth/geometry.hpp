#pragma once

// Exact rational planar geometry: points, segments, axis-aligned boxes,
// quadrants, parameterized polylines, segment intersection, and even-odd
// parity via ray casting with a deterministic 8-direction fan.

#include "minwidth/rational.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace minwidth {

struct Vec2R {
    Rational x, y;
    Vec2R() = default;
    Vec2R(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}

    Vec2R operator+(const Vec2R& o) const { return {x + o.x, y + o.y}; }
    Vec2R operator-(const Vec2R& o) const { return {x - o.x, y - o.y}; }
    Vec2R operator*(const Rational& s) const { return {x * s, y * s}; }
    bool operator==(const Vec2R& o) const { return x == o.x && y == o.y; }
};

inline Rational cross(const Vec2R& a, const Vec2R& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2R& a, const Vec2R& b) { return a.x * b.x + a.y * b.y; }

struct SegmentR {
    Vec2R a, b;
};

// Closed-segment intersection test (shared endpoints count as intersection).
inline bool segments_intersect(const SegmentR& s, const SegmentR& t) {
    const Vec2R d1 = s.b - s.a, d2 = t.b - t.a;
    const Rational denom = cross(d1, d2);
    const Vec2R w = t.a - s.a;
    if (denom != 0) {
        const Rational u = cross(w, d2) / denom;   // along s
        const Rational v = cross(w, d1) / denom;   // along t
        return u >= 0 && u <= 1 && v >= 0 && v <= 1;
    }
    if (cross(w, d1) != 0) return false;  // parallel, not collinear
    // Collinear: overlap test via projection on the dominant axis.
    auto param = [&](const Vec2R& p) -> Rational {
        return (d1.x != 0 || d1.y != 0) ? dot(p - s.a, d1) : Rational(0);
    };
    Rational lo = param(t.a), hi = param(t.b);
    if (lo > hi) std::swap(lo, hi);
    const Rational len2 = dot(d1, d1);
    return hi >= 0 && lo <= len2;
}

// Axis-aligned box; the reference box of the lower-bound pipeline is
// (-2,2) x (-1,1) (open), but closure corners are what the tests use.
struct BoxR {
    Rational x0, x1, y0, y1;
    BoxR() : x0(-2), x1(2), y0(-1), y1(1) {}
    BoxR(Rational a, Rational b, Rational c, Rational d)
        : x0(std::move(a)), x1(std::move(b)), y0(std::move(c)), y1(std::move(d)) {
        if (!(x0 < x1 && y0 < y1)) throw std::invalid_argument("BoxR: empty box");
    }
    std::array<Vec2R, 4> corners() const {
        return {Vec2R{x0, y0}, Vec2R{x1, y0}, Vec2R{x1, y1}, Vec2R{x0, y1}};
    }
    std::vector<SegmentR> boundary() const {
        auto c = corners();
        return {{c[0], c[1]}, {c[1], c[2]}, {c[2], c[3]}, {c[3], c[0]}};
    }
    bool contains_closed(const Vec2R& p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
};

// Quadrant S = {x : <a1,x>+b1 >= 0, <a2,x>+b2 >= 0} in output coordinates.
struct Quadrant {
    Vec2R a1, a2;
    Rational b1, b2;
    bool contains(const Vec2R& p) const { return dot(a1, p) + b1 >= 0 && dot(a2, p) + b2 >= 0; }
    bool on_boundary(const Vec2R& p) const {
        return contains(p) && (dot(a1, p) + b1 == 0 || dot(a2, p) + b2 == 0);
    }
};

// Parameterized polyline: exact curve t -> R^2, linear between vertices.
struct Polyline {
    std::vector<Rational> ts;   // strictly increasing, spanning [0,1] for curve images
    std::vector<Vec2R> pts;

    void validate() const {
        if (ts.size() < 2 || ts.size() != pts.size())
            throw std::invalid_argument("Polyline: need >= 2 vertices");
        for (std::size_t i = 1; i < ts.size(); ++i)
            if (!(ts[i - 1] < ts[i])) throw std::invalid_argument("Polyline: parameters not increasing");
    }

    Vec2R at(const Rational& t) const {
        if (t <= ts.front()) return pts.front();
        if (t >= ts.back()) return pts.back();
        std::size_t lo = 0, hi = ts.size() - 1;
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            (ts[mid] <= t ? lo : hi) = mid;
        }
        const Rational u = (t - ts[lo]) / (ts[lo + 1] - ts[lo]);
        return pts[lo] + (pts[lo + 1] - pts[lo]) * u;
    }

    // Sub-polyline on [t0, t1]; vertices are inserted at the cut parameters.
    Polyline slice(const Rational& t0, const Rational& t1) const {
        Polyline out;
        out.ts.push_back(t0);
        out.pts.push_back(at(t0));
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (ts[i] > t0 && ts[i] < t1) {
                out.ts.push_back(ts[i]);
                out.pts.push_back(pts[i]);
            }
        }
        out.ts.push_back(t1);
        out.pts.push_back(at(t1));
        return out;
    }

    std::vector<SegmentR> segments() const {
        std::vector<SegmentR> out;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.push_back({pts[i], pts[i + 1]});
        return out;
    }
};

inline bool polylines_intersect(const Polyline& a, const Polyline& b) {
    for (const auto& s : a.segments())
        for (const auto& t : b.segments())
            if (segments_intersect(s, t)) return true;
    return false;
}

inline bool point_on_segments(const Vec2R& p, const std::vector<SegmentR>& segs) {
    for (const auto& s : segs) {
        const Vec2R d = s.b - s.a;
        if (cross(p - s.a, d) != 0) continue;
        const Rational t = dot(p - s.a, d);
        if (t >= 0 && t <= dot(d, d)) return true;
    }
    return false;
}

// One ray-casting pass.  Returns nullopt on a degenerate configuration
// (ray through a vertex / collinear with a segment), in which case the caller
// perturbs the direction.
inline std::optional<int> ray_parity(const Vec2R& p, const Vec2R& dir, const std::vector<SegmentR>& segs) {
    int crossings = 0;
    for (const auto& s : segs) {
        const Vec2R e = s.b - s.a;
        const Rational denom = cross(dir, e);
        const Vec2R w = s.a - p;
        if (denom == 0) {
            if (cross(w, dir) == 0) {
                // Collinear with the ray line: degenerate if any part lies ahead.
                const Rational ta = dot(w, dir), tb = dot(s.b - p, dir);
                if (ta >= 0 || tb >= 0) return std::nullopt;
            }
            continue;
        }
        const Rational r = cross(w, e) / denom;    // along the ray
        const Rational u = cross(w, dir) / denom;  // along the segment
        if (r <= 0) {
            if (r == 0 && u >= 0 && u <= 1) return std::nullopt;  // point on barrier handled upstream
            continue;
        }
        if (u < 0 || u > 1) continue;
        if (u == 0 || u == 1) return std::nullopt;  // through a vertex
        ++crossings;
    }
    return crossings % 2;
}

// Even-odd parity with the fixed 8-direction fan; every non-degenerate
// direction must agree.  Degenerate directions get a deterministic rational
// nudge until the cast is proper.
inline int parity(const Vec2R& p, const std::vector<SegmentR>& barrier) {
    if (point_on_segments(p, barrier)) throw std::invalid_argument("parity: point on barrier");
    static const std::array<Vec2R, 8> fan = {
        Vec2R{Rational(1), Rational(0)},  Vec2R{Rational(0), Rational(1)},
        Vec2R{Rational(-1), Rational(0)}, Vec2R{Rational(0), Rational(-1)},
        Vec2R{Rational(1), Rational(1)},  Vec2R{Rational(1), Rational(-1)},
        Vec2R{Rational(-1), Rational(1)}, Vec2R{Rational(-1), Rational(-1)}};
    std::optional<int> agreed;
    for (std::size_t k = 0; k < fan.size(); ++k) {
        Vec2R dir = fan[k];
        Rational nudge(1, 7919);  // deterministic perturbation schedule
        std::optional<int> par = ray_parity(p, dir, barrier);
        int tries = 0;
        while (!par && tries < 64) {
            dir = Vec2R{fan[k].x + nudge, fan[k].y + nudge * Rational(3, 2)};
            par = ray_parity(p, dir, barrier);
            nudge /= 2;
            ++tries;
        }
        if (!par) throw std::runtime_error("parity: could not resolve degeneracy");
        if (agreed && *agreed != *par) throw std::runtime_error("parity: fan directions disagree");
        agreed = par;
    }
    return *agreed;
}

// Exact sup-norm distance between two axis-aligned segments (each is a
// degenerate interval product, so the coordinates decouple).
inline Rational axis_aligned_sup_distance(const SegmentR& s, const SegmentR& t) {
    if ((s.a.x != s.b.x && s.a.y != s.b.y) || (t.a.x != t.b.x && t.a.y != t.b.y))
        throw std::invalid_argument("axis_aligned_sup_distance: segment not axis-aligned");
    auto interval_dist = [](Rational a0, Rational a1, Rational b0, Rational b1) -> Rational {
        if (a0 > a1) std::swap(a0, a1);
        if (b0 > b1) std::swap(b0, b1);
        if (b0 > a1) return b0 - a1;
        if (a0 > b1) return a0 - b1;
        return Rational(0);
    };
    const Rational dx = interval_dist(s.a.x, s.b.x, t.a.x, t.b.x);
    const Rational dy = interval_dist(s.a.y, s.b.y, t.a.y, t.b.y);
    return dx > dy ? dx : dy;
}

}  // namespace minwidth
