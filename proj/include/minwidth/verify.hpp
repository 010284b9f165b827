#pragma once

// Oracle-equivalence and range suites for every constructed network family.
// Each suite compares a built network against the independent reference
// implementations in coding.hpp on exhaustive grids or seeded samples and
// reports pass/fail with a human-readable detail line.  Shared by the CLI
// and the test binaries.

#include "minwidth/builders.hpp"
#include "minwidth/coding.hpp"
#include "minwidth/network.hpp"
#include "minwidth/targets.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace minwidth {

struct VerifyResult {
    std::string name;
    bool pass = false;
    long long checks = 0;
    double worst = 0.0;  // worst deviation (or mismatch fraction, per suite)
    std::string detail;
};

struct VerifyParams {
    int dx = 2, dy = 2;
    int k = 3, m = 3;
    double alpha = 0.1;
    double gamma = 0.001;
    long long samples = 10000;
    std::uint64_t seed = 1;
};

namespace detail {

inline VerifyResult finish_result(std::string name, bool pass, long long checks, double worst,
                                  const std::string& extra = "") {
    VerifyResult r;
    r.name = std::move(name);
    r.pass = pass;
    r.checks = checks;
    r.worst = worst;
    std::ostringstream os;
    os << (pass ? "pass" : "FAIL") << ": " << r.checks << " checks, worst deviation " << worst;
    if (!extra.empty()) os << " (" << extra << ")";
    r.detail = os.str();
    return r;
}

}  // namespace detail

// Quantizer net == q_K on 2^K * 100 evenly spaced points of [0,1].
inline VerifyResult verify_quantizer(const VerifyParams& p) {
    const int K = p.k;
    const Network net = build_step_quantizer_net(K);
    const long long n = (1LL << K) * 100;
    double worst = 0.0;
    for (long long i = 0; i < n; ++i) {
        const double x = double(i) / double(n - 1);
        worst = std::max(worst, std::abs(evaluate(net, {x})[0] - quantize(x, K)));
    }
    return detail::finish_result("quantizer", worst <= 1e-9, n, worst);
}

// Step encoder == encode on a 129^dx grid.
inline VerifyResult verify_step_encoder(const VerifyParams& p) {
    const Network net = build_step_encoder_net(p.dx, p.k);
    const int res = 129;
    std::vector<int> idx(p.dx, 0);
    std::vector<double> x(p.dx);
    double worst = 0.0;
    long long n = 0;
    bool done = false;
    while (!done) {
        for (int i = 0; i < p.dx; ++i) x[i] = double(idx[i]) / double(res - 1);
        worst = std::max(worst, std::abs(evaluate(net, x)[0] - encode(x, p.k)));
        ++n;
        int i = 0;
        for (; i < p.dx; ++i) {
            if (++idx[i] < res) break;
            idx[i] = 0;
        }
        done = (i == p.dx);
    }
    return detail::finish_result("encoder-step", worst <= 1e-9, n, worst);
}

// Memorizer net reproduces every codebook entry.
inline VerifyResult verify_memorizer(const VerifyParams& p) {
    const TargetFunction f = (p.dx == 2 && p.dy == 3)
                                 ? make_builtin_target("prodmeanabs", 2, 3)
                                 : make_builtin_target("identity", p.dx, p.dx);
    const CodebookTable table = build_codebook(f, p.k, p.m);
    const Network net = build_memorizer_net(table, 0.0, 1.0);
    double worst = 0.0;
    for (const auto& [key, val] : table.entries)
        worst = std::max(worst, std::abs(evaluate(net, {key})[0] - val));
    return detail::finish_result("memorizer", worst <= 1e-9,
                                 static_cast<long long>(table.entries.size()), worst,
                                 "target " + f.name);
}

// Decoder exact on all codewords; range inside [0,1]^dy off-grid.
inline VerifyResult verify_decoder(const VerifyParams& p) {
    const int dy = p.dy, M = p.m;
    const Network net = build_decoder_net(dy, M, std::ldexp(1.0, -(dy * M + 6)));
    double worst = 0.0;
    long long n = 0;
    for (std::uint64_t j = 0; j < (std::uint64_t(1) << (dy * M)); ++j) {
        const double c = std::ldexp(double(j), -dy * M);
        const auto want = decode(c, M, dy);
        const auto got = evaluate(net, {c});
        for (int i = 0; i < dy; ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
        ++n;
    }
    bool range_ok = true;
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (long long s = 0; s < p.samples; ++s) {
        const auto y = evaluate(net, {unif(rng)});
        for (double v : y) range_ok = range_ok && v >= 0.0 && v <= 1.0;
        ++n;
    }
    return detail::finish_result("decoder", worst <= 1e-9 && range_ok, n, worst,
                                 range_ok ? "range ok" : "range violation");
}

// Staircase pair (q_M(x), 2^M (x - q_M(x))) away from the ramp set.
inline VerifyResult verify_staircase(const VerifyParams& p) {
    const int M = p.m;
    const double delta = std::ldexp(1.0, -(M + 6));
    const Network net = build_staircase_pair_net(M, delta);
    const double h = std::ldexp(1.0, -M);
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    long long n = 0;
    for (long long s = 0; s < p.samples; ++s) {
        const double x = unif(rng);
        // Skip the ramp zones [l h - delta, l h).
        const double frac = x / h - std::floor(x / h);
        if (frac >= 1.0 - delta / h) continue;
        const double q = quantize(x, M);
        const auto y = evaluate(net, {x});
        worst = std::max(worst, std::abs(y[0] - q));
        worst = std::max(worst, std::abs(y[1] - std::ldexp(x - q, M)));
        ++n;
    }
    return detail::finish_result("staircase", worst <= 1e-9, n, worst);
}

// Clamp clauses: identity on [alpha,1-alpha]^dx, all-ones off the cube,
// range always inside [0,1]^dx.
inline VerifyResult verify_clamp(const VerifyParams& p) {
    const Network net = build_clamp_net(p.dx, p.alpha);
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> inner(p.alpha, 1.0 - p.alpha);
    std::uniform_real_distribution<double> wide(-2.0, 3.0);
    std::uniform_real_distribution<double> unif01(0.0, 1.0);
    double worst = 0.0;
    bool ok = true;
    long long n = 0;
    std::vector<double> x(p.dx);
    const long long per_clause = p.samples;
    for (long long s = 0; s < per_clause; ++s) {  // clause 1: identity
        for (double& v : x) v = inner(rng);
        const auto y = evaluate(net, x);
        for (int i = 0; i < p.dx; ++i) worst = std::max(worst, std::abs(y[i] - x[i]));
        ++n;
    }
    for (long long s = 0; s < per_clause; ++s) {  // clause 2: off-cube absorption
        for (double& v : x) v = unif01(rng);
        const int j = int(rng() % std::uint64_t(p.dx));
        const double mag = unif01(rng) + 1e-6;
        x[std::size_t(j)] = (rng() & 1) ? 1.0 + mag : -mag;
        const auto y = evaluate(net, x);
        for (int i = 0; i < p.dx; ++i) worst = std::max(worst, std::abs(y[i] - 1.0));
        ++n;
    }
    for (long long s = 0; s < per_clause; ++s) {  // clause 3: range
        for (double& v : x) v = wide(rng);
        const auto y = evaluate(net, x);
        for (double v : y) ok = ok && v >= -1e-12 && v <= 1.0 + 1e-12;
        ++n;
    }
    return detail::finish_result("clamp", worst <= 1e-9 && ok, n, worst,
                                 ok ? "range ok" : "range violation");
}

// ReLU encoder: mismatch measure below gamma, sentinel exact off the cube.
inline VerifyResult verify_relu_encoder(const VerifyParams& p) {
    const EncoderArtifacts art = build_relu_encoder_net(p.dx, p.k, -1.0, -1.0, p.gamma);
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> x(p.dx);
    long long mismatches = 0;
    for (long long s = 0; s < p.samples; ++s) {
        for (double& v : x) v = unif(rng);
        const double got = evaluate(art.net, x)[0];
        if (std::abs(got - encode(x, p.k)) > 1e-9) ++mismatches;
    }
    const double frac = double(mismatches) / double(p.samples);
    bool sentinel_ok = true;
    for (long long s = 0; s < 100; ++s) {
        for (double& v : x) v = unif(rng);
        x[s % std::size_t(p.dx)] = (s & 1) ? 1.5 + unif(rng) : -0.5 - unif(rng);
        sentinel_ok = sentinel_ok && std::abs(evaluate(art.net, x)[0] - art.sentinel) <= 1e-9;
    }
    return detail::finish_result("encoder-relu", frac < p.gamma && sentinel_ok, p.samples + 100, frac,
                                 sentinel_ok ? "sentinel exact" : "sentinel violation");
}

// PL constructor exact at breakpoints and midpoints for random PL functions.
inline VerifyResult verify_pl(const VerifyParams& p) {
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::uniform_int_distribution<int> pieces_dist(1, 16);
    std::uniform_int_distribution<int> dim_dist(1, 3);
    double worst = 0.0;
    long long n = 0;
    const long long funcs = std::max<long long>(1, p.samples / 100);
    for (long long s = 0; s < funcs; ++s) {
        const int pieces = pieces_dist(rng);
        const int dim = dim_dist(rng);
        PLVectorFunction g;
        std::vector<double> xs = {0.0, 1.0};
        for (int i = 1; i < pieces; ++i) xs.push_back(unif(rng));
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        g.xs = xs;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::vector<double> y(dim);
            for (double& v : y) v = val(rng);
            g.ys.push_back(std::move(y));
        }
        g.validate();
        const Network net = build_pl_vector_net(g);
        auto probe = [&](double x) {
            const auto want = g(x);
            const auto got = evaluate(net, {x});
            for (int k = 0; k < dim; ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
            ++n;
        };
        for (std::size_t i = 0; i < g.xs.size(); ++i) {
            probe(g.xs[i]);
            if (i + 1 < g.xs.size()) probe(0.5 * (g.xs[i] + g.xs[i + 1]));
        }
    }
    return detail::finish_result("pl", worst <= 1e-9, n, worst);
}

inline VerifyResult run_lemma_suite(const std::string& name, const VerifyParams& p) {
    if (name == "quantizer") return verify_quantizer(p);
    if (name == "encoder-step") return verify_step_encoder(p);
    if (name == "encoder-relu") return verify_relu_encoder(p);
    if (name == "memorizer") return verify_memorizer(p);
    if (name == "decoder") return verify_decoder(p);
    if (name == "staircase") return verify_staircase(p);
    if (name == "clamp") return verify_clamp(p);
    if (name == "pl") return verify_pl(p);
    throw std::invalid_argument("run_lemma_suite: unknown suite '" + name + "'");
}

}  // namespace minwidth
