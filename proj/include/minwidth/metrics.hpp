#pragma once

// Error metrics between a target function and a constructed network:
// sup-norm and L^p norms over [0,1]^dx via deterministic grid or seeded
// Monte-Carlo quadrature, plus an exact sup-distance between planar
// parameterized polylines.

#include "minwidth/coding.hpp"
#include "minwidth/geometry.hpp"
#include "minwidth/network.hpp"
#include "minwidth/pl.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace minwidth {

enum class QuadratureKind { grid, monte_carlo };

struct Quadrature {
    QuadratureKind kind = QuadratureKind::grid;
    int resolution = 101;        // points per axis (grid) or total samples (MC)
    std::uint64_t seed = 0;      // MC only
    std::uint64_t samples = 0;   // MC only; overrides resolution when nonzero

    static Quadrature make_grid(int per_axis) {
        Quadrature q;
        q.kind = QuadratureKind::grid;
        q.resolution = per_axis;
        return q;
    }
    static Quadrature make_monte_carlo(std::uint64_t n, std::uint64_t seed) {
        Quadrature q;
        q.kind = QuadratureKind::monte_carlo;
        q.samples = n;
        q.seed = seed;
        return q;
    }
};

namespace detail {

// Visit every quadrature node in [0,1]^dx.
template <typename Visitor>
void for_each_node(int dx, const Quadrature& q, Visitor&& visit) {
    if (dx < 1) throw std::invalid_argument("quadrature: bad dimension");
    if (q.kind == QuadratureKind::grid) {
        if (q.resolution < 2) throw std::invalid_argument("quadrature: grid needs >= 2 points per axis");
        const int n = q.resolution;
        std::vector<int> idx(dx, 0);
        std::vector<double> x(dx);
        while (true) {
            for (int i = 0; i < dx; ++i) x[i] = double(idx[i]) / double(n - 1);
            visit(x);
            int i = dx - 1;
            while (i >= 0 && ++idx[i] == n) idx[i--] = 0;
            if (i < 0) break;
        }
    } else {
        const std::uint64_t n = q.samples ? q.samples : std::uint64_t(q.resolution);
        if (n == 0) throw std::invalid_argument("quadrature: zero samples");
        std::mt19937_64 rng(q.seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::vector<double> x(dx);
        for (std::uint64_t s = 0; s < n; ++s) {
            for (int i = 0; i < dx; ++i) x[i] = unif(rng);
            visit(x);
        }
    }
}

}  // namespace detail

// sup over nodes of max_k |f(x)_k - net(x)_k|.
inline double sup_error(const TargetFunction& f, const Network& net, const Quadrature& q) {
    if (f.dx != net.dx || f.dy != net.dy) throw std::invalid_argument("sup_error: dimension mismatch");
    double worst = 0.0;
    detail::for_each_node(f.dx, q, [&](const std::vector<double>& x) {
        const auto y = f(x);
        const auto z = evaluate(net, x);
        for (int k = 0; k < f.dy; ++k) worst = std::max(worst, std::abs(y[k] - z[k]));
    });
    return worst;
}

// (average over nodes of ||f(x)-net(x)||_p^p)^{1/p}; equal-weight quadrature,
// so the grid variant is a Riemann-type estimate of the L^p([0,1]^dx) norm.
inline double lp_error(const TargetFunction& f, const Network& net, double p, const Quadrature& q) {
    if (f.dx != net.dx || f.dy != net.dy) throw std::invalid_argument("lp_error: dimension mismatch");
    if (!(p >= 1.0)) throw std::invalid_argument("lp_error: need p >= 1");
    double acc = 0.0;
    std::uint64_t count = 0;
    detail::for_each_node(f.dx, q, [&](const std::vector<double>& x) {
        const auto y = f(x);
        const auto z = evaluate(net, x);
        double s = 0.0;
        for (int k = 0; k < f.dy; ++k) s += std::pow(std::abs(y[k] - z[k]), p);
        acc += s;
        ++count;
    });
    return std::pow(acc / double(count), 1.0 / p);
}

// Exact sup_t max(|dx(t)|, |dy(t)|) between two planar polylines over the
// common parameter interval [0,1].  The coordinate differences are piecewise
// linear in t, so the sup is attained at a vertex of the merged subdivision.
inline Rational pl_sup_distance(const Polyline& a, const Polyline& b) {
    a.validate();
    b.validate();
    if (a.ts.front() != b.ts.front() || a.ts.back() != b.ts.back())
        throw std::invalid_argument("pl_sup_distance: parameter ranges differ");
    std::vector<Rational> ts;
    ts.reserve(a.ts.size() + b.ts.size());
    std::size_t i = 0, j = 0;
    while (i < a.ts.size() || j < b.ts.size()) {
        Rational t;
        if (j == b.ts.size() || (i < a.ts.size() && a.ts[i] <= b.ts[j])) t = a.ts[i++];
        else t = b.ts[j++];
        if (ts.empty() || ts.back() != t) ts.push_back(t);
        while (i < a.ts.size() && a.ts[i] == t) ++i;
        while (j < b.ts.size() && b.ts[j] == t) ++j;
    }
    Rational worst(0);
    for (const Rational& t : ts) {
        Vec2R d = a.at(t) - b.at(t);
        if (d.x < 0) d.x = -d.x;
        if (d.y < 0) d.y = -d.y;
        const Rational m = d.x > d.y ? d.x : d.y;
        if (m > worst) worst = m;
    }
    return worst;
}

// Convenience overload on double-valued PL data (promoted exactly).
inline Rational pl_sup_distance(const PLVectorFunction& a, const PLVectorFunction& b) {
    if (a.dim() != 2 || b.dim() != 2)
        throw std::invalid_argument("pl_sup_distance: planar curves expected");
    auto promote = [](const PLVectorFunction& f) {
        Polyline p;
        for (std::size_t i = 0; i < f.xs.size(); ++i) {
            p.ts.push_back(rat_from_double(f.xs[i]));
            p.pts.push_back({rat_from_double(f.ys[i][0]), rat_from_double(f.ys[i][1])});
        }
        return p;
    };
    return pl_sup_distance(promote(a), promote(b));
}

}  // namespace minwidth
