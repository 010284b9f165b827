#pragma once

// Topological lower-bound machinery for width-2 nets R -> R^2:
// the fixed counterexample curve, the invertible-affine reformulation, exact
// polyline propagation with quadrant snapping, box-stability, the containment
// diagnostic, and helpers for generating/refining candidate nets.

#include "minwidth/builders.hpp"
#include "minwidth/geometry.hpp"
#include "minwidth/metrics.hpp"
#include "minwidth/network.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace minwidth {

// ---------------------------------------------------------------------------
// Exact 2x2 rational affine maps
// ---------------------------------------------------------------------------

struct Affine2 {
    std::array<std::array<Rational, 2>, 2> A{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
    Vec2R b{Rational(0), Rational(0)};

    Vec2R operator()(const Vec2R& x) const {
        return {A[0][0] * x.x + A[0][1] * x.y + b.x, A[1][0] * x.x + A[1][1] * x.y + b.y};
    }
    Rational det() const { return A[0][0] * A[1][1] - A[0][1] * A[1][0]; }
    Affine2 inverse() const {
        const Rational d = det();
        if (d == 0) throw std::invalid_argument("Affine2: singular map");
        Affine2 inv;
        inv.A = {{{A[1][1] / d, -A[0][1] / d}, {-A[1][0] / d, A[0][0] / d}}};
        inv.b = {inv.A[0][0] * (-b.x) + inv.A[0][1] * (-b.y),
                 inv.A[1][0] * (-b.x) + inv.A[1][1] * (-b.y)};
        return inv;
    }
    // (f o g)(x) = f(g(x))
    static Affine2 compose(const Affine2& f, const Affine2& g) {
        Affine2 h;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                h.A[i][j] = f.A[i][0] * g.A[0][j] + f.A[i][1] * g.A[1][j];
        h.b = f(g.b);
        return h;
    }
};

// t_1 : R -> R^2, t |-> w t + b.
struct AffineLine {
    Vec2R w, b;
    Vec2R operator()(const Rational& t) const { return {w.x * t + b.x, w.y * t + b.y}; }
};

// ---------------------------------------------------------------------------
// Counterexample curve
// ---------------------------------------------------------------------------

inline const Rational& curve_p1() {
    static const Rational p1(1, 3);
    return p1;
}
inline const Rational& curve_p2() {
    static const Rational p2(2, 3);
    return p2;
}
// Parameter q on the red part with curve value (0, 1/2).
inline const Rational& curve_q() {
    static const Rational q(11, 36);
    return q;
}

namespace detail {

// Intersection points of two non-degenerate segments (empty if disjoint;
// collinear overlaps report the overlap endpoints).
inline std::vector<Vec2R> segment_intersection_points(const SegmentR& s, const SegmentR& t) {
    const Vec2R d1 = s.b - s.a, d2 = t.b - t.a;
    const Rational denom = cross(d1, d2);
    const Vec2R w = t.a - s.a;
    std::vector<Vec2R> out;
    if (denom != 0) {
        const Rational u = cross(w, d2) / denom;
        const Rational v = cross(w, d1) / denom;
        if (u >= 0 && u <= 1 && v >= 0 && v <= 1) out.push_back(s.a + d1 * u);
        return out;
    }
    if (cross(w, d1) != 0) return out;
    const Rational len2 = dot(d1, d1);
    Rational lo = dot(t.a - s.a, d1), hi = dot(t.b - s.a, d1);
    if (lo > hi) std::swap(lo, hi);
    if (lo < 0) lo = 0;
    if (hi > len2) hi = len2;
    if (lo > hi) return out;
    out.push_back(s.a + d1 * (lo / len2));
    if (hi != lo) out.push_back(s.a + d1 * (hi / len2));
    return out;
}

inline void assert_curve_invariants(const Polyline& c) {
    c.validate();
    auto expect = [](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("counterexample_curve: invariant failed: ") + what);
    };
    expect(c.at(Rational(0)) == Vec2R{Rational(4), Rational(3)}, "start (4,3)");
    expect(c.at(Rational(1)) == Vec2R{Rational(1), Rational(0)}, "end (1,0)");
    expect(c.at(curve_p1()) == Vec2R{Rational(0), Rational(0)}, "p1 -> (0,0)");
    expect(c.at(curve_p2()) == Vec2R{Rational(-1), Rational(0)}, "p2 -> (-1,0)");
    expect(c.at(curve_q()) == Vec2R{Rational(0), Rational(1, 2)}, "q -> (0,1/2)");

    // Crossings with the reference box boundary are exactly (0,1), (-1,1), (1,1).
    const BoxR B;
    std::vector<Vec2R> crossings;
    for (const auto& cs : c.segments())
        for (const auto& bs : B.boundary())
            for (const auto& p : segment_intersection_points(cs, bs)) {
                bool seen = false;
                for (const auto& qp : crossings) seen = seen || qp == p;
                if (!seen) crossings.push_back(p);
            }
    expect(crossings.size() == 3, "exactly three box crossings");
    for (const auto& p : crossings)
        expect(p.y == 1 && (p.x == 0 || p.x == -1 || p.x == 1), "crossings at (0,1),(-1,1),(1,1)");

    // Red/blue sup-norm separation >= 1 (all segments are axis-aligned).
    const Polyline red = c.slice(Rational(0), curve_p1());
    const Polyline blue = c.slice(curve_p2(), Rational(1));
    Rational sep(-1);
    for (const auto& rs : red.segments())
        for (const auto& bs : blue.segments()) {
            const Rational d = axis_aligned_sup_distance(rs, bs);
            if (sep < 0 || d < sep) sep = d;
        }
    expect(sep >= 1, "red/blue separation >= 1");
}

}  // namespace detail

// The fixed curve [0,1] -> R^2: red part (4,3)->(0,3)->(0,0) on [0,1/3],
// black part (0,0)->(-1,0) on [1/3,2/3], blue part
// (-1,0)->(-1,6)->(6,6)->(6,2)->(1,2)->(1,0) on [2/3,1].  All structural
// constraints the lower-bound argument needs are asserted on first use.
inline const Polyline& counterexample_curve() {
    static const Polyline curve = [] {
        Polyline c;
        c.ts = {Rational(0),      Rational(1, 6),   Rational(1, 3),  Rational(2, 3),
                Rational(11, 15), Rational(4, 5),   Rational(13, 15), Rational(14, 15),
                Rational(1)};
        c.pts = {{Rational(4), Rational(3)},  {Rational(0), Rational(3)},
                 {Rational(0), Rational(0)},  {Rational(-1), Rational(0)},
                 {Rational(-1), Rational(6)}, {Rational(6), Rational(6)},
                 {Rational(6), Rational(2)},  {Rational(1), Rational(2)},
                 {Rational(1), Rational(0)}};
        detail::assert_curve_invariants(c);
        return c;
    }();
    return curve;
}

// Double-precision breakpoint form of the same curve.
inline PLVectorFunction counterexample_curve_pl() {
    const Polyline& c = counterexample_curve();
    PLVectorFunction f;
    for (std::size_t i = 0; i < c.ts.size(); ++i) {
        f.xs.push_back(rat_to_double(c.ts[i]));
        f.ys.push_back({rat_to_double(c.pts[i].x), rat_to_double(c.pts[i].y)});
    }
    f.validate();
    return f;
}

// Width-3 ReLU net computing the curve (up to double rounding).
inline Network make_curve_net() { return build_pl_vector_net(counterexample_curve_pl()); }

// ---------------------------------------------------------------------------
// Reformulation: f = (N_{L-1} sigma N_{L-1}^{-1}) o ... o (N_1 sigma N_1^{-1}) o t+
// with N_l = t_L o ... o t_{l+1} and phi_l = N_l^{-1}.
// ---------------------------------------------------------------------------

struct Reformulation {
    AffineLine t1;                    // first affine layer, R -> R^2
    std::vector<Affine2> layer_maps;  // t_2 .. t_L (last entry is the output map)
    std::vector<Affine2> N;           // N[l-1] = t_L o ... o t_{l+1}, l = 1..H
    std::vector<Affine2> phi;         // phi[l-1] = N[l-1]^{-1}
    int hidden_layers = 0;            // H; total affine maps L = H + 1

    Vec2R t_dagger(const Rational& t) const { return N[0](t1(t)); }

    // Recompose per the reformulated factorization (exact rational forward pass).
    Vec2R forward_exact(const Rational& t) const {
        Vec2R x = t_dagger(t);
        for (int l = 0; l < hidden_layers; ++l) {
            Vec2R z = phi[l](x);
            if (z.x < 0) z.x = 0;
            if (z.y < 0) z.y = 0;
            x = N[l](z);
        }
        return x;
    }

    // Quadrant S_l (in output coordinates) on which fold step l acts as identity.
    Quadrant quadrant(int l) const {
        const Affine2& p = phi[l - 1];
        Quadrant S;
        S.a1 = {p.A[0][0], p.A[0][1]};
        S.b1 = p.b.x;
        S.a2 = {p.A[1][0], p.A[1][1]};
        S.b2 = p.b.y;
        return S;
    }
};

namespace detail {

inline void require_width2(const Network& net) {
    if (net.dx != 1 || net.dy != 2) throw std::invalid_argument("width-2 machinery: need dx=1, dy=2");
    if (net.layers.size() < 2) throw std::invalid_argument("width-2 machinery: need >= 1 hidden layer");
    for (std::size_t i = 0; i + 1 < net.layers.size(); ++i) {
        if (net.layers[i].out_dim() != 2)
            throw std::invalid_argument("width-2 machinery: hidden width must be 2");
        for (Activation a : net.layers[i].activations)
            if (a != Activation::relu)
                throw std::invalid_argument("width-2 machinery: hidden activations must be relu");
    }
}

// Make a 2x2 linear part invertible by a diagonal nudge of at most ~1.2e-10.
inline void desingularize(Affine2& m) {
    if (m.det() != 0) return;
    Rational eps(1, std::int64_t(1) << 33);
    for (int tries = 0; tries < 8; ++tries) {
        Affine2 c = m;
        c.A[0][0] += eps;
        c.A[1][1] += eps;
        if (c.det() != 0) {
            m = c;
            return;
        }
        eps *= Rational(3, 4);  // -eps can match at most two eigenvalues
    }
    throw std::runtime_error("desingularize: could not perturb to invertibility");
}

}  // namespace detail

inline Reformulation reformulate(const Network& net) {
    detail::require_width2(net);
    Reformulation R;
    R.hidden_layers = static_cast<int>(net.layers.size()) - 1;

    const Layer& first = net.layers.front();
    R.t1.w = {rat_from_double(first.weights[0][0]), rat_from_double(first.weights[1][0])};
    R.t1.b = {rat_from_double(first.bias[0]), rat_from_double(first.bias[1])};

    for (std::size_t i = 1; i < net.layers.size(); ++i) {
        const Layer& l = net.layers[i];
        Affine2 m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) m.A[r][c] = rat_from_double(l.weights[r][c]);
        m.b = {rat_from_double(l.bias[0]), rat_from_double(l.bias[1])};
        detail::desingularize(m);
        R.layer_maps.push_back(m);
    }

    // N_l = t_L o ... o t_{l+1}, built back to front; N_H = t_L.
    R.N.assign(R.hidden_layers, Affine2{});
    R.N[R.hidden_layers - 1] = R.layer_maps.back();
    for (int l = R.hidden_layers - 1; l >= 1; --l)
        R.N[l - 1] = Affine2::compose(R.N[l], R.layer_maps[std::size_t(l) - 1]);
    for (const Affine2& n : R.N) R.phi.push_back(n.inverse());
    return R;
}

// ---------------------------------------------------------------------------
// Exact propagation of the parameter interval through the fold steps
// ---------------------------------------------------------------------------

namespace detail {

// Insert vertices wherever a coordinate of the pre-activation polyline crosses
// zero, so that ReLU is linear on every segment.
inline void split_at_zero_crossings(std::vector<Rational>& ts, std::vector<Vec2R>& pts) {
    std::vector<Rational> nts;
    std::vector<Vec2R> npts;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        nts.push_back(ts[i]);
        npts.push_back(pts[i]);
        std::vector<Rational> cuts;
        for (int k = 0; k < 2; ++k) {
            const Rational a = (k == 0 ? pts[i].x : pts[i].y);
            const Rational b = (k == 0 ? pts[i + 1].x : pts[i + 1].y);
            if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
                const Rational u = (Rational(0) - a) / (b - a);
                cuts.push_back(ts[i] + (ts[i + 1] - ts[i]) * u);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        for (const Rational& t : cuts) {
            if (t == nts.back() || t == ts[i + 1]) continue;
            const Rational u = (t - ts[i]) / (ts[i + 1] - ts[i]);
            nts.push_back(t);
            npts.push_back(pts[i] + (pts[i + 1] - pts[i]) * u);
        }
    }
    nts.push_back(ts.back());
    npts.push_back(pts.back());
    ts = std::move(nts);
    pts = std::move(npts);
}

}  // namespace detail

// Images g_0, g_1, ..., g_H of the parameter interval: g_0 is the affine image
// under t+, and g_l applies the l-th fold step N_l sigma N_l^{-1}.  The input
// polyline supplies the parameter subdivision (its points are ignored).  The
// snapping invariant — a vertex inside S_l is fixed, any other vertex lands on
// the boundary of S_l — is verified exactly at every vertex.
inline std::vector<Polyline> propagate(const Network& net, const Polyline& curve) {
    const Reformulation R = reformulate(net);
    std::vector<Polyline> out;

    std::vector<Rational> ts = curve.ts;
    std::vector<Vec2R> z;  // pre-activations of the upcoming layer
    z.reserve(ts.size());
    for (const Rational& t : ts) z.push_back(R.t1(t));

    {
        Polyline g0;
        g0.ts = ts;
        for (const Vec2R& v : z) g0.pts.push_back(R.N[0](v));
        g0.validate();
        out.push_back(std::move(g0));
    }

    for (int l = 1; l <= R.hidden_layers; ++l) {
        detail::split_at_zero_crossings(ts, z);
        const Quadrant S = R.quadrant(l);
        std::vector<Vec2R> h;
        h.reserve(z.size());
        for (const Vec2R& v : z) {
            Vec2R s = v;
            if (s.x < 0) s.x = 0;
            if (s.y < 0) s.y = 0;
            const Vec2R before = R.N[l - 1](v);
            const Vec2R after = R.N[l - 1](s);
            if (S.contains(before)) {
                if (!(after == before)) throw std::logic_error("propagate: fixed-point invariant failed");
            } else if (!S.on_boundary(after)) {
                throw std::logic_error("propagate: boundary-snap invariant failed");
            }
            h.push_back(s);
        }
        Polyline g;
        g.ts = ts;
        for (const Vec2R& v : h) g.pts.push_back(R.N[l - 1](v));
        g.validate();
        out.push_back(std::move(g));
        if (l < R.hidden_layers) {
            for (Vec2R& v : h) v = R.layer_maps[std::size_t(l) - 1](v);
            z = std::move(h);
        }
    }
    return out;
}

// Largest fold step that moves the box (0 if every step fixes it).  Step l
// fixes B exactly when all four corners of B's closure lie in S_l.
inline int find_box_stable_layer(const Network& net, const BoxR& B) {
    const Reformulation R = reformulate(net);
    int ell_star = 0;
    for (int l = 1; l <= R.hidden_layers; ++l) {
        const Quadrant S = R.quadrant(l);
        bool fixes = true;
        for (const Vec2R& c : B.corners()) fixes = fixes && S.contains(c);
        if (!fixes) ell_star = l;
    }
    return ell_star;
}

// ---------------------------------------------------------------------------
// Diagnostic pipeline
// ---------------------------------------------------------------------------

struct DiagnosticReport {
    Rational sup_distance;                  // exact sup distance to the curve
    bool pipeline_run = false;              // only when sup_distance <= 1/100
    std::vector<bool> nointersect;          // per g_l: red and blue images disjoint
    int ell_star = -1;                      // box-stability index (when pipeline runs)
    std::string containment_verdict = "not-applicable";  // surrounded | intersects
    std::vector<int> parity_samples;        // parity of g_l(q) for l = ell_star..H
    std::string contradiction_step;         // which pipeline step fired, if any
};

inline DiagnosticReport diagnose(const Network& net) {
    detail::require_width2(net);
    const Polyline& curve = counterexample_curve();
    DiagnosticReport rep;

    const std::vector<Polyline> g = propagate(net, curve);
    rep.sup_distance = pl_sup_distance(g.back(), curve);
    if (rep.sup_distance > Rational(1, 100)) return rep;

    rep.pipeline_run = true;
    bool all_disjoint = true;
    for (const Polyline& gl : g) {
        const Polyline red = gl.slice(Rational(0), curve_p1());
        const Polyline blue = gl.slice(curve_p2(), Rational(1));
        const bool disjoint = !polylines_intersect(red, blue);
        rep.nointersect.push_back(disjoint);
        all_disjoint = all_disjoint && disjoint;
    }
    if (!all_disjoint) {
        rep.containment_verdict = "intersects";
        rep.contradiction_step = "red-blue-intersection";
        return rep;
    }

    const BoxR B;
    rep.ell_star = find_box_stable_layer(net, B);
    const Polyline& gstar = g[std::size_t(rep.ell_star)];
    std::vector<SegmentR> barrier = gstar.slice(curve_p2(), Rational(1)).segments();
    for (const SegmentR& s : B.boundary()) barrier.push_back(s);

    const Vec2R q_img = gstar.at(curve_q());
    if (point_on_segments(q_img, barrier)) {
        rep.containment_verdict = "intersects";
        rep.contradiction_step = "red-point-on-barrier";
        return rep;
    }
    for (std::size_t l = std::size_t(rep.ell_star); l < g.size(); ++l) {
        const Vec2R x = g[l].at(curve_q());
        rep.parity_samples.push_back(point_on_segments(x, barrier) ? 1 : parity(x, barrier));
    }
    if (rep.parity_samples.front() == 1) {
        rep.containment_verdict = "surrounded";
        rep.contradiction_step = "enclosed-red-point";
    } else {
        rep.containment_verdict = "intersects";
        rep.contradiction_step = "parity-outside";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Candidate generation and refinement
// ---------------------------------------------------------------------------

inline Network random_width2_net(std::mt19937_64& rng, int max_hidden = 8) {
    std::uniform_int_distribution<int> depth_dist(1, max_hidden);
    std::uniform_real_distribution<double> wd(-2.0, 2.0);
    const int H = depth_dist(rng);
    Network net;
    net.dx = 1;
    net.dy = 2;
    for (int l = 0; l <= H; ++l) {
        Layer layer;
        const std::size_t in = (l == 0 ? 1 : 2);
        for (int r = 0; r < 2; ++r) {
            std::vector<double> row(in);
            for (double& w : row) w = wd(rng);
            layer.weights.push_back(std::move(row));
            layer.bias.push_back(wd(rng));
            layer.activations.push_back(l == H ? Activation::identity : Activation::relu);
        }
        net.layers.push_back(std::move(layer));
    }
    net.validate();
    return net;
}

// Sampled sup distance to the curve (cheap surrogate objective).
inline double sampled_curve_distance(const Network& net, int samples = 256) {
    const PLVectorFunction curve = counterexample_curve_pl();
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = double(i) / double(samples - 1);
        const auto y = evaluate(net, {t});
        const auto c = curve(t);
        worst = std::max(worst, std::max(std::abs(y[0] - c[0]), std::abs(y[1] - c[1])));
    }
    return worst;
}

// Stochastic hill climbing on all weights/biases against the sampled
// objective; the exact diagnostic is run on the result by the caller.
inline Network refine_width2_net(Network net, std::mt19937_64& rng, int iterations = 400) {
    std::normal_distribution<double> noise(0.0, 1.0);
    double best = sampled_curve_distance(net);
    double step = 0.5;
    for (int it = 0; it < iterations; ++it) {
        Network cand = net;
        std::uniform_int_distribution<std::size_t> ld(0, cand.layers.size() - 1);
        Layer& layer = cand.layers[ld(rng)];
        std::uniform_int_distribution<std::size_t> rd(0, layer.weights.size() - 1);
        const std::size_t r = rd(rng);
        std::uniform_int_distribution<std::size_t> cd(0, layer.weights[r].size());
        const std::size_t c = cd(rng);
        if (c == layer.weights[r].size()) layer.bias[r] += step * noise(rng);
        else layer.weights[r][c] += step * noise(rng);
        const double val = sampled_curve_distance(cand);
        if (val < best) {
            best = val;
            net = std::move(cand);
        }
        if ((it + 1) % 100 == 0) step *= 0.5;
    }
    return net;
}

// ---------------------------------------------------------------------------
// Affinity witness on an all-positive activation region
// ---------------------------------------------------------------------------

// True iff the net behaves affinely along [x1, x2] (midpoint test, 1e-9).
// Requires strictly positive preactivations at every hidden neuron along the
// segment; a violated precondition is reported via nullopt, not failure.
inline std::optional<bool> check_affine_on_S(const Network& net, const std::vector<double>& x1,
                                             const std::vector<double>& x2) {
    const int probes = 11;
    for (int s = 0; s < probes; ++s) {
        const double u = double(s) / double(probes - 1);
        std::vector<double> x(x1.size());
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = (1.0 - u) * x1[i] + u * x2[i];
        std::vector<double> h = x;
        for (std::size_t li = 0; li + 1 < net.layers.size(); ++li) {
            const Layer& l = net.layers[li];
            std::vector<double> pre(l.out_dim());
            for (std::size_t r = 0; r < pre.size(); ++r) {
                double acc = l.bias[r];
                for (std::size_t c = 0; c < h.size(); ++c) acc += l.weights[r][c] * h[c];
                if (!(acc > 0.0)) return std::nullopt;  // outside S
                pre[r] = apply_activation(l.activations[r], acc);
            }
            h = std::move(pre);
        }
    }
    std::vector<double> mid(x1.size());
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (x1[i] + x2[i]);
    const auto y1 = evaluate(net, x1);
    const auto y2 = evaluate(net, x2);
    const auto ym = evaluate(net, mid);
    for (std::size_t k = 0; k < ym.size(); ++k)
        if (std::abs(ym[k] - 0.5 * (y1[k] + y2[k])) > 1e-9) return false;
    return true;
}

}  // namespace minwidth
