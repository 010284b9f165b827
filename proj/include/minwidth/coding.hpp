#pragma once

// Reference (non-network) implementations of the dyadic coding scheme:
// quantize, encode, decode, codebook construction, and the analytic error
// budget.  Every constructed network is tested against these oracles.
//
// All codewords are dyadic rationals with denominator at most 2^24, so double
// arithmetic below is exact.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "minwidth/rational.hpp"

namespace minwidth {

inline constexpr int kCodingBudgetBits = 24;  // dx*K and dy*M caps

struct QuantGrid {
    int n;
    explicit QuantGrid(int n_) : n(n_) {
        if (n < 1) throw std::invalid_argument("QuantGrid: n must be positive");
    }
    // C_n = {0, 2^-n, ..., 1 - 2^-n}
    std::vector<double> values() const {
        std::vector<double> v;
        const double h = std::ldexp(1.0, -n);
        v.reserve(std::size_t(1) << n);
        for (std::int64_t i = 0; i < (std::int64_t(1) << n); ++i) v.push_back(double(i) * h);
        return v;
    }
    std::size_t size() const { return std::size_t(1) << n; }
};

// q_n(x) = max{c in C_n : c <= x}; x = 1 maps to 1 - 2^-n.
inline double quantize(double x, int n) {
    if (n < 1) throw std::invalid_argument("quantize: n must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("quantize: x outside [0,1]");
    double scaled = std::floor(std::ldexp(x, n));
    double top = std::ldexp(1.0, n) - 1.0;
    if (scaled > top) scaled = top;  // x == 1
    return std::ldexp(scaled, -n);
}

// encode_K(x) = sum_i q_K(x_i) * 2^{-(i-1)K}
inline double encode(const std::vector<double>& x, int K) {
    const int dx = static_cast<int>(x.size());
    if (dx < 1) throw std::invalid_argument("encode: empty input");
    if (dx * K > kCodingBudgetBits) throw std::invalid_argument("encode: dx*K budget exceeded");
    double c = 0.0;
    for (int i = 0; i < dx; ++i) c += std::ldexp(quantize(x[i], K), -i * K);
    return c;
}

// decode_M(c): unique preimage of encode_M on the grid C_M^dy.
inline std::vector<double> decode(double c, int M, int dy) {
    if (dy < 1 || M < 1) throw std::invalid_argument("decode: bad dims");
    if (dy * M > kCodingBudgetBits) throw std::invalid_argument("decode: dy*M budget exceeded");
    const int bits = dy * M;
    double scaled = std::ldexp(c, bits);
    double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) > std::ldexp(1.0, -4) ||  // tolerance 2^-(dy*M+4) on c
        rounded < 0.0 || rounded >= std::ldexp(1.0, bits))
        throw std::invalid_argument("decode: value not on the C_{dy*M} grid");
    auto j = static_cast<std::uint64_t>(rounded);
    std::vector<double> out(dy);
    for (int i = dy - 1; i >= 0; --i) {
        out[i] = std::ldexp(double(j & ((std::uint64_t(1) << M) - 1)), -M);
        j >>= M;
    }
    return out;
}

struct TargetFunction {
    int dx = 1;
    int dy = 1;
    std::vector<double> domain_lo, domain_hi;  // default [0,1]^dx
    std::function<std::vector<double>(const std::vector<double>&)> evaluator;
    double lipschitz = 0.0;  // sup-norm modulus omega(d) = L*d
    std::string name;

    std::vector<double> operator()(const std::vector<double>& x) const {
        auto y = evaluator(x);
        if (y.size() != static_cast<std::size_t>(dy))
            throw std::runtime_error("TargetFunction: evaluator output dim mismatch");
        return y;
    }
};

inline TargetFunction make_target(int dx, int dy, double lipschitz,
                                  std::function<std::vector<double>(const std::vector<double>&)> f,
                                  std::string name = "") {
    TargetFunction t;
    t.dx = dx;
    t.dy = dy;
    t.lipschitz = lipschitz;
    t.evaluator = std::move(f);
    t.domain_lo.assign(dx, 0.0);
    t.domain_hi.assign(dx, 1.0);
    t.name = std::move(name);
    return t;
}

struct CodebookTable {
    int dx = 1, dy = 1;
    int K = 1, M = 1;
    // input codeword in C_{dx*K} -> output codeword in C_{dy*M}; doubles are exact here.
    std::map<double, double> entries;
};

// memorize_{K,M}(encode_K(v)) = encode_M(clip(f*(v))) over every grid vector v.
inline CodebookTable build_codebook(const TargetFunction& f, int K, int M) {
    if (f.dx * K > kCodingBudgetBits) throw std::invalid_argument("build_codebook: dx*K budget exceeded");
    if (f.dy * M > kCodingBudgetBits) throw std::invalid_argument("build_codebook: dy*M budget exceeded");
    CodebookTable t;
    t.dx = f.dx;
    t.dy = f.dy;
    t.K = K;
    t.M = M;
    const std::uint64_t per_axis = std::uint64_t(1) << K;
    std::uint64_t total = 1;
    for (int i = 0; i < f.dx; ++i) total *= per_axis;
    std::vector<double> v(f.dx);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        for (int i = f.dx - 1; i >= 0; --i) {
            v[i] = std::ldexp(double(rest % per_axis), -K);
            rest /= per_axis;
        }
        std::vector<double> y = f(v);
        for (double& yi : y) yi = std::clamp(yi, 0.0, 1.0);
        t.entries[encode(v, K)] = encode(y, M);
    }
    return t;
}

// omega(2^-K) + 2^-M with omega(d) = L*d.
inline double error_budget(double L, int K, int M) {
    if (L < 0) throw std::invalid_argument("error_budget: negative Lipschitz constant");
    return L * std::ldexp(1.0, -K) + std::ldexp(1.0, -M);
}

// CSV export: input_codeword, output_codeword as exact dyadic decimal strings.
inline void export_codebook_csv(const CodebookTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_codebook_csv: cannot write " + path);
    out << "input_codeword,output_codeword\n";
    for (const auto& [k, v] : t.entries)
        out << dyadic_decimal_string(rat_from_double(k)) << ","
            << dyadic_decimal_string(rat_from_double(v)) << "\n";
}

}  // namespace minwidth
