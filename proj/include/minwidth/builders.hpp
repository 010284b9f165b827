#pragma once

// Explicit network builders: every construction lemma gets a builder whose
// output is validated against the coding oracles, plus the two theorem-level
// assemblers (uniform ReLU+Step and L^p ReLU-only) at width max{dx+1, dy}.

#include "minwidth/coding.hpp"
#include "minwidth/netbuilder.hpp"
#include "minwidth/network.hpp"
#include "minwidth/pl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace minwidth {

// ---------------------------------------------------------------------------
// Width-(d+1) piecewise-linear constructor.
//
// Carries (u, w_1..w_d) with u = relu(x - x_j) tracking the most recent
// breakpoint and w_k = f_j(x) - K_k the running PL value shifted to stay
// nonnegative (K_k = min over pieces of the piece line over the interval).
// Passing a breakpoint adds the slope change times u one layer later.
// ---------------------------------------------------------------------------

inline Network build_pl_vector_net(const PLVectorFunction& g, bool pair_output = false) {
    g.validate();
    const int d = g.dim();
    const int P = g.pieces();
    const double lo = g.lo(), hi = g.hi();

    // Per-piece slopes and per-output shift constants.
    std::vector<std::vector<double>> slope(P, std::vector<double>(d));
    std::vector<double> shift(d, std::numeric_limits<double>::infinity());
    for (int i = 0; i < P; ++i) {
        for (int k = 0; k < d; ++k) {
            double a = (g.ys[i + 1][k] - g.ys[i][k]) / (g.xs[i + 1] - g.xs[i]);
            slope[i][k] = a;
            // Piece line evaluated over the whole interval: extrema at lo/hi.
            double b = g.ys[i][k] - a * g.xs[i];
            shift[k] = std::min({shift[k], a * lo + b, a * hi + b});
        }
    }

    NetBuilder b(1);
    // Layer 1: u = relu(x - x_1) (or x - lo when P = 1), w_k = relu(piece-1 line - K_k).
    {
        std::vector<std::pair<AffExpr, Activation>> neurons;
        double x1 = (P >= 2) ? g.xs[1] : lo;
        neurons.emplace_back(AffExpr({1.0}, -x1), Activation::relu);
        for (int k = 0; k < d; ++k) {
            double a = slope[0][k];
            double b0 = g.ys[0][k] - a * g.xs[0] - shift[k];
            neurons.emplace_back(AffExpr({a}, b0), Activation::relu);
        }
        b.layer(neurons);
    }
    // Layers j = 2..P-1: advance u to the next breakpoint; fold in the slope
    // change at the breakpoint just passed.
    for (int j = 2; j <= P - 1; ++j) {
        std::vector<std::pair<AffExpr, Activation>> neurons;
        AffExpr u = b.chan(0);
        neurons.emplace_back(AffExpr(u).shift(-(g.xs[j] - g.xs[j - 1])), Activation::relu);
        for (int k = 0; k < d; ++k) {
            AffExpr w = b.chan(1 + static_cast<std::size_t>(k));
            w.add(u, slope[j - 1][k] - slope[j - 2][k]);
            neurons.emplace_back(std::move(w), Activation::relu);
        }
        b.layer(neurons);
    }
    // Output: y_k = w_k + (a_P - a_{P-1}) u + K_k;   pair variant prepends u.
    std::vector<AffExpr> outs;
    if (pair_output) outs.push_back(b.chan(0));
    for (int k = 0; k < d; ++k) {
        AffExpr y = b.chan(1 + static_cast<std::size_t>(k));
        if (P >= 2) y.add(b.chan(0), slope[P - 1][k] - slope[P - 2][k]);
        y.shift(shift[k]);
        outs.push_back(std::move(y));
    }
    return b.finish(outs);
}

inline Network build_pl_net(const PLScalarFunction& g, bool pair_output = false) {
    return build_pl_vector_net(g.as_vector(), pair_output);
}

// ---------------------------------------------------------------------------
// Quantizer stages (shared by the scalar quantizer and the Step encoder).
//
// One stage per grid cell l = 1..2^K - 1 flattens [(l-1)h, lh) onto (l-1)h
// while keeping every other value in [0,1] fixed; thresholds are the printed
// ones scaled by h = 2^-K.  A final min cap sends [1-h, 1] to 1-h.
// Each stage: (a,b) = (v, relu(v - lh)); (c,e) = (relu(a+b), relu(a-(l-1)h));
// v' = relu(c - e) + h * step(c - lh).
// ---------------------------------------------------------------------------

inline AffExpr append_quantizer_stages(NetBuilder& b, AffExpr v, std::size_t c1, std::size_t c2, int K) {
    const double h = std::ldexp(1.0, -K);
    const std::size_t n = b.channels();
    auto pass_others = [&](std::vector<std::pair<AffExpr, Activation>>& neurons) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == c1 || j == c2) continue;
            neurons[j] = {b.chan(j), Activation::relu};
        }
    };
    for (std::int64_t l = 1; l < (std::int64_t(1) << K); ++l) {
        std::vector<std::pair<AffExpr, Activation>> neurons(n);
        neurons[c1] = {v, Activation::relu};
        neurons[c2] = {AffExpr(v).shift(-double(l) * h), Activation::relu};
        pass_others(neurons);
        b.layer(neurons);

        neurons.assign(n, {});
        neurons[c1] = {AffExpr(b.chan(c1)).add(b.chan(c2)), Activation::relu};
        neurons[c2] = {AffExpr(b.chan(c1)).shift(-double(l - 1) * h), Activation::relu};
        pass_others(neurons);
        b.layer(neurons);

        neurons.assign(n, {});
        neurons[c1] = {AffExpr(b.chan(c1)).add(b.chan(c2), -1.0), Activation::relu};
        neurons[c2] = {AffExpr(b.chan(c1)).shift(-double(l) * h), Activation::step};
        pass_others(neurons);
        b.layer(neurons);

        v = AffExpr(b.chan(c1)).add(b.chan(c2), h);
    }
    // Cap: v <- min(v, 1-h), which also maps x = 1 to 1-h.
    {
        std::vector<std::pair<AffExpr, Activation>> neurons(n);
        neurons[c1] = {b.chan(c1), Activation::relu};
        neurons[c2] = {AffExpr(v).scale(-1.0).shift(1.0 - h), Activation::relu};
        pass_others(neurons);
        b.layer(neurons);
    }
    return AffExpr(b.chan(c2)).scale(-1.0).shift(1.0 - h);
}

// Lemma "Step quantizer": width-2 ReLU+Step net with net(x) = q_K(x) on [0,1].
inline Network build_step_quantizer_net(int K) {
    if (K < 1) throw std::invalid_argument("build_step_quantizer_net: K >= 1 required");
    NetBuilder b(1);
    b.layer({{b.chan(0), Activation::relu}, {b.lit(0.0), Activation::relu}});
    AffExpr q = append_quantizer_stages(b, b.chan(0), 0, 1, K);
    return b.finish({q});
}

// Step encoder: width dx+1; quantizes each coordinate in place (channel dx is
// the shared workspace), then combines linearly into encode_K(x).
inline Network build_step_encoder_net(int dx, int K) {
    if (dx < 1 || K < 1) throw std::invalid_argument("build_step_encoder_net: bad dims");
    if (dx * K > kCodingBudgetBits) throw std::invalid_argument("build_step_encoder_net: dx*K budget exceeded");
    NetBuilder b(dx);
    {
        std::vector<std::pair<AffExpr, Activation>> neurons;
        for (int j = 0; j < dx; ++j) neurons.emplace_back(b.chan(j), Activation::relu);
        neurons.emplace_back(b.lit(0.0), Activation::relu);
        b.layer(neurons);
    }
    const std::size_t temp = static_cast<std::size_t>(dx);
    for (int l = 0; l < dx; ++l) {
        AffExpr q = append_quantizer_stages(b, b.chan(l), static_cast<std::size_t>(l), temp, K);
        std::vector<std::pair<AffExpr, Activation>> neurons(b.channels());
        for (std::size_t j = 0; j < b.channels(); ++j) neurons[j] = {b.chan(j), Activation::relu};
        neurons[static_cast<std::size_t>(l)] = {q, Activation::relu};
        neurons[temp] = {b.lit(0.0), Activation::relu};
        b.layer(neurons);
    }
    AffExpr out = b.lit(0.0);
    for (int l = 0; l < dx; ++l) out.add(b.chan(l), std::ldexp(1.0, -l * K));
    return b.finish({out});
}

// ---------------------------------------------------------------------------
// Ramped staircase recursion (the (g_l)_2 recursion of the staircase lemma):
// z_{l+1} = min{lh, max{ramp_l(x), z_l}} with ramp_l of slope h/delta hitting
// (l-1)h at lh-delta and lh at lh.  Channel vc carries x (assumed in [0,1]),
// channel tc is the workspace; the returned expression is the staircase value.
// ---------------------------------------------------------------------------

inline AffExpr append_staircase_stages(NetBuilder& b, std::size_t vc, std::size_t tc, int M, double delta) {
    const double h = std::ldexp(1.0, -M);
    if (!(delta > 0.0 && delta < h)) throw std::invalid_argument("staircase: delta out of range");
    const double R = h / delta;
    const std::size_t n = b.channels();
    auto pass_others = [&](std::vector<std::pair<AffExpr, Activation>>& neurons) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == vc || j == tc) continue;
            neurons[j] = {b.chan(j), Activation::relu};
        }
    };
    AffExpr z = b.lit(0.0);
    for (std::int64_t l = 1; l < (std::int64_t(1) << M); ++l) {
        const double cl = double(l - 1) * h - R * (double(l) * h - delta);
        // max step: m = ramp + relu(z - ramp)
        std::vector<std::pair<AffExpr, Activation>> neurons(n);
        neurons[vc] = {b.chan(vc), Activation::relu};
        neurons[tc] = {AffExpr(z).add(b.chan(vc), -R).shift(-cl), Activation::relu};
        pass_others(neurons);
        b.layer(neurons);
        AffExpr m = AffExpr(b.chan(vc, R)).shift(cl).add(b.chan(tc));
        // min step: z' = lh - relu(lh - m)
        neurons.assign(n, {});
        neurons[vc] = {b.chan(vc), Activation::relu};
        neurons[tc] = {AffExpr(m).scale(-1.0).shift(double(l) * h), Activation::relu};
        pass_others(neurons);
        b.layer(neurons);
        z = AffExpr(b.chan(tc)).scale(-1.0).shift(double(l) * h);
    }
    return z;
}

// Staircase pair: width 2, ReLU only; outputs (q_M(x), 2^M (x - q_M(x)))
// outside the ramp set D_{M,delta}, with the clip prefix 1 - relu(1 - relu(x)).
inline Network build_staircase_pair_net(int M, double delta) {
    if (M < 1) throw std::invalid_argument("build_staircase_pair_net: M >= 1 required");
    NetBuilder b(1);
    b.layer({{b.chan(0), Activation::relu}});
    b.layer({{AffExpr(b.chan(0)).scale(-1.0).shift(1.0), Activation::relu}});
    AffExpr clipped = AffExpr(b.chan(0)).scale(-1.0).shift(1.0);
    b.layer({{clipped, Activation::relu}, {b.lit(0.0), Activation::relu}});
    AffExpr z = append_staircase_stages(b, 0, 1, M, delta);
    AffExpr y2 = AffExpr(b.chan(0)).add(z, -1.0).scale(std::ldexp(1.0, M));
    return b.finish({z, y2});
}

// Decoder: width dy, ReLU only; dy-1 chained staircase stages peel one
// coordinate at a time, already-extracted coordinates ride along through relu.
inline Network build_decoder_net(int dy, int M, double delta) {
    if (dy < 1 || M < 1) throw std::invalid_argument("build_decoder_net: bad dims");
    if (dy * M > kCodingBudgetBits) throw std::invalid_argument("build_decoder_net: dy*M budget exceeded");
    if (!(delta > 0.0 && delta < std::ldexp(1.0, -dy * M)))
        throw std::invalid_argument("build_decoder_net: need 0 < delta < 2^-(dy*M)");
    NetBuilder b(1);
    b.layer({{b.chan(0), Activation::relu}});
    b.layer({{AffExpr(b.chan(0)).scale(-1.0).shift(1.0), Activation::relu}});
    AffExpr clipped = AffExpr(b.chan(0)).scale(-1.0).shift(1.0);
    if (dy == 1) return b.finish({clipped});
    {
        std::vector<std::pair<AffExpr, Activation>> neurons;
        neurons.emplace_back(clipped, Activation::relu);
        for (int j = 1; j < dy; ++j) neurons.emplace_back(b.lit(0.0), Activation::relu);
        b.layer(neurons);
    }
    for (int i = 1; i <= dy - 1; ++i) {
        const auto vc = static_cast<std::size_t>(i - 1), tc = static_cast<std::size_t>(i);
        AffExpr z = append_staircase_stages(b, vc, tc, M, delta);
        std::vector<std::pair<AffExpr, Activation>> neurons(b.channels());
        for (std::size_t j = 0; j < b.channels(); ++j) neurons[j] = {b.chan(j), Activation::relu};
        neurons[vc] = {z, Activation::relu};  // extracted coordinate q_M(v)
        neurons[tc] = {AffExpr(b.chan(vc)).add(z, -1.0).scale(std::ldexp(1.0, M)), Activation::relu};
        b.layer(neurons);
    }
    std::vector<AffExpr> outs;
    for (int j = 0; j < dy; ++j) outs.push_back(b.chan(j));
    return b.finish(outs);
}

// ---------------------------------------------------------------------------
// Clamp: width dx+1, ReLU only.  f = x on [alpha,1-alpha]^dx, f = (1,...,1)
// off the unit cube, range in [0,1]^dx.
//
// Implementation: coordinates are pre-clamped into [-1,2] (offset rep
// s = x~ + 1), then a per-coordinate sweep of upper/lower trigger ramps runs
// in the spare channel.  Triggers are extremely steep hinges (full trigger
// exactly on x <= 0 / x >= 1, transition band width 2^-30), capped and
// broadcast as a +24 lift to every coordinate, after which a top clamp
// saturates the state at the absorbing value x~ = 2; the final clip maps the
// absorbing state to (1,...,1) and the identity band to itself.
// ---------------------------------------------------------------------------

inline Network build_clamp_net(int dx, double alpha) {
    if (dx < 1) throw std::invalid_argument("build_clamp_net: dx >= 1 required");
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("build_clamp_net: alpha out of range");
    // Transition band eps0 (a power of two, far below alpha) and hinge slope G.
    double eps0 = std::ldexp(1.0, -30);
    while (eps0 >= alpha) eps0 *= 0.5;
    const double G = 8.0 / eps0;
    const double cap = 8.0, lift = 3.0;

    NetBuilder b(dx);
    const auto temp = static_cast<std::size_t>(dx);
    auto all = [&](auto per_coord, std::pair<AffExpr, Activation> temp_neuron) {
        std::vector<std::pair<AffExpr, Activation>> neurons;
        for (int j = 0; j < dx; ++j) neurons.push_back(per_coord(static_cast<std::size_t>(j)));
        neurons.push_back(std::move(temp_neuron));
        b.layer(neurons);
    };
    // Pre-clamp into [-1, 2]; stored value s_j = x~_j + 1 in [0, 3].
    {
        std::vector<std::pair<AffExpr, Activation>> neurons;
        for (int j = 0; j < dx; ++j) neurons.emplace_back(AffExpr(b.chan(j)).shift(1.0), Activation::relu);
        neurons.emplace_back(b.lit(0.0), Activation::relu);
        b.layer(neurons);
    }
    auto zero_temp = [&] { return std::pair<AffExpr, Activation>{b.lit(0.0), Activation::relu}; };
    auto top_clamp = [&] {
        all([&](std::size_t j) {
            return std::pair<AffExpr, Activation>{AffExpr(b.chan(j)).scale(-1.0).shift(3.0), Activation::relu};
        }, zero_temp());
        all([&](std::size_t j) {
            return std::pair<AffExpr, Activation>{AffExpr(b.chan(j)).scale(-1.0).shift(3.0), Activation::relu};
        }, zero_temp());
    };
    top_clamp();
    for (int l = 0; l < dx; ++l) {
        for (int side = 0; side < 2; ++side) {
            // upper trigger: G*(x~_l - 1 + eps0); lower trigger: G*(eps0 - x~_l)
            AffExpr trig = (side == 0)
                ? AffExpr(b.chan(l, G)).shift(G * (eps0 - 2.0))
                : AffExpr(b.chan(l, -G)).shift(G * (eps0 + 1.0));
            all([&](std::size_t j) {
                return std::pair<AffExpr, Activation>{b.chan(j), Activation::relu};
            }, {trig, Activation::relu});
            all([&](std::size_t j) {
                return std::pair<AffExpr, Activation>{b.chan(j), Activation::relu};
            }, {AffExpr(b.chan(temp, -1.0)).shift(cap), Activation::relu});
            // Broadcast the capped trigger lift: s_j += lift * (cap - temp').
            all([&](std::size_t j) {
                return std::pair<AffExpr, Activation>{
                    AffExpr(b.chan(j)).add(b.chan(temp), -lift).shift(lift * cap), Activation::relu};
            }, zero_temp());
            top_clamp();
        }
    }
    // Final clip of x~ into [0,1].
    all([&](std::size_t j) {
        return std::pair<AffExpr, Activation>{AffExpr(b.chan(j)).shift(-1.0), Activation::relu};
    }, zero_temp());
    all([&](std::size_t j) {
        return std::pair<AffExpr, Activation>{AffExpr(b.chan(j)).scale(-1.0).shift(1.0), Activation::relu};
    }, zero_temp());
    std::vector<AffExpr> outs;
    for (int j = 0; j < dx; ++j) outs.push_back(AffExpr(b.chan(j)).scale(-1.0).shift(1.0));
    return b.finish(outs);
}

// ---------------------------------------------------------------------------
// ReLU encoder and assemblies.
// ---------------------------------------------------------------------------

struct EncoderArtifacts {
    Network net;
    double gamma = 0.0;
    double delta = 0.0;
    double alpha = 0.0;
    double sentinel = 0.0;   // 1 - 2^-(dx*K): encode of (1-2^-K, ..., 1-2^-K)
    double measure_bound = 0.0;
    std::string excluded;    // description of D_gamma
};

inline double largest_pow2_below(double x) {
    if (!(x > 0)) throw std::invalid_argument("largest_pow2_below: nonpositive");
    return std::ldexp(1.0, static_cast<int>(std::floor(std::log2(x * (1.0 - 1e-12)))));
}

// ReLU-only encoder: clamp then per-coordinate ramped staircases then linear
// combine.  Equals the encode oracle outside D_gamma of measure < gamma and is
// the constant sentinel 1 - 2^-(dx*K) off the unit cube.
inline EncoderArtifacts build_relu_encoder_net(int dx, int K, double alpha, double delta, double gamma) {
    if (dx < 1 || K < 1) throw std::invalid_argument("build_relu_encoder_net: bad dims");
    if (dx * K > kCodingBudgetBits) throw std::invalid_argument("build_relu_encoder_net: dx*K budget exceeded");
    if (!(gamma > 0.0)) throw std::invalid_argument("build_relu_encoder_net: gamma must be positive");
    if (alpha <= 0.0) alpha = largest_pow2_below(gamma / (8.0 * dx));
    if (delta <= 0.0)
        delta = std::min(std::ldexp(1.0, -(dx * K + 6)),
                         largest_pow2_below(gamma / (4.0 * dx * std::ldexp(1.0, K))));
    const double measure = dx * 2.0 * alpha + dx * std::ldexp(1.0, K) * delta;
    if (!(measure < gamma))
        throw std::invalid_argument("build_relu_encoder_net: (alpha, delta) infeasible for gamma");

    NetBuilder b(dx);
    {
        std::vector<std::pair<AffExpr, Activation>> neurons;
        for (int j = 0; j < dx; ++j) neurons.emplace_back(b.chan(j), Activation::relu);
        neurons.emplace_back(b.lit(0.0), Activation::relu);
        b.layer(neurons);
    }
    const auto temp = static_cast<std::size_t>(dx);
    for (int l = 0; l < dx; ++l) {
        AffExpr z = append_staircase_stages(b, static_cast<std::size_t>(l), temp, K, delta);
        std::vector<std::pair<AffExpr, Activation>> neurons(b.channels());
        for (std::size_t j = 0; j < b.channels(); ++j) neurons[j] = {b.chan(j), Activation::relu};
        neurons[static_cast<std::size_t>(l)] = {z, Activation::relu};
        neurons[temp] = {b.lit(0.0), Activation::relu};
        b.layer(neurons);
    }
    AffExpr out = b.lit(0.0);
    for (int l = 0; l < dx; ++l) out.add(b.chan(l), std::ldexp(1.0, -l * K));
    Network staircases = b.finish({out});

    EncoderArtifacts art;
    art.net = compose(build_clamp_net(dx, alpha), staircases);
    art.gamma = gamma;
    art.delta = delta;
    art.alpha = alpha;
    art.sentinel = 1.0 - std::ldexp(1.0, -dx * K);
    art.measure_bound = measure;
    art.excluded = "([0,1]^dx \\ [alpha,1-alpha]^dx) U D_{K,delta,dx}";
    return art;
}

// Memorizer: width-2 PL net through the codebook keys, linear interpolation
// between keys, constant extension beyond them (the f-dagger of the proof).
inline Network build_memorizer_net(const CodebookTable& table, double lo, double hi) {
    if (table.entries.empty()) throw std::invalid_argument("build_memorizer_net: empty table");
    PLScalarFunction g;
    if (lo < table.entries.begin()->first) {
        g.xs.push_back(lo);
        g.ys.push_back(table.entries.begin()->second);
    }
    for (const auto& [k, v] : table.entries) {
        if (k < lo || k > hi) throw std::invalid_argument("build_memorizer_net: key outside interval");
        g.xs.push_back(k);
        g.ys.push_back(v);
    }
    if (hi > table.entries.rbegin()->first) {
        g.xs.push_back(hi);
        g.ys.push_back(table.entries.rbegin()->second);
    }
    g.validate();
    return build_pl_net(g);
}

// Theorem "uniform" assembly: decoder o memorizer o step-encoder at width
// max{dx+1, dy}; sup error <= L*2^-K + 2^-M on the cube.
inline Network assemble_uniform_net(const TargetFunction& f, int K, int M) {
    CodebookTable table = build_codebook(f, K, M);
    Network enc = build_step_encoder_net(f.dx, K);
    Network mem = build_memorizer_net(table, 0.0, 1.0);
    Network dec = build_decoder_net(f.dy, M, std::ldexp(1.0, -(f.dy * M + 6)));
    return compose(compose(enc, mem), dec);
}

struct LpAssembly {
    Network net;
    EncoderArtifacts encoder;
    double analytic_bound = 0.0;  // the A.2-style error chain evaluated numerically
    double sentinel = 0.0;
    std::string ek_region;        // possibly-zeroed corner region
};

// Theorem "L^p" assembly: ReLU-only; the memorizer table routes the sentinel
// codeword to target codeword 0, so the network is exactly 0 off the cube.
inline LpAssembly assemble_lp_net(const TargetFunction& f, int K, int M, double gamma, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("assemble_lp_net: p in [1, inf) required");
    LpAssembly out;
    out.encoder = build_relu_encoder_net(f.dx, K, -1.0, -1.0, gamma);
    CodebookTable table = build_codebook(f, K, M);
    table.entries[out.encoder.sentinel] = 0.0;  // sentinel -> zero output
    Network mem = build_memorizer_net(table, 0.0, 1.0);
    Network dec = build_decoder_net(f.dy, M, std::ldexp(1.0, -(f.dy * M + 6)));
    out.net = compose(compose(out.encoder.net, mem), dec);
    out.sentinel = out.encoder.sentinel;
    out.ek_region = "[1-2^-K, 1]^dx";

    // Error chain: (dy*(L 2^-K + 2^-M)^p + (2^-(dx K) + gamma)*(sup||f*||_p + dy^(1/p))^p)^(1/p).
    double supf = 0.0;
    {
        const int res = (f.dx <= 2) ? 101 : 21;
        std::vector<int> idx(f.dx, 0);
        std::vector<double> x(f.dx);
        bool done = false;
        while (!done) {
            for (int i = 0; i < f.dx; ++i) x[i] = double(idx[i]) / (res - 1);
            const auto y = f(x);
            double np = 0.0;
            for (double v : y) np += std::pow(std::abs(v), p);
            supf = std::max(supf, std::pow(np, 1.0 / p));
            int i = 0;
            for (; i < f.dx; ++i) {
                if (++idx[i] < res) break;
                idx[i] = 0;
            }
            done = (i == f.dx);
        }
    }
    const double coding = error_budget(f.lipschitz, K, M);
    const double bad_measure = std::ldexp(1.0, -f.dx * K) + gamma;
    out.analytic_bound = std::pow(
        f.dy * std::pow(coding, p) + bad_measure * std::pow(supf + std::pow(double(f.dy), 1.0 / p), p),
        1.0 / p);
    return out;
}

}  // namespace minwidth
