#pragma once

// Piecewise-linear functions on an interval, in breakpoint/value form.
// Continuity is inherent in the representation (one value per breakpoint).

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace minwidth {

// Vector-valued continuous PL function on [xs.front(), xs.back()].
// xs = x^(0) < x^(1) < ... < x^(P); ys[i] is the value (length dim) at xs[i].
struct PLVectorFunction {
    std::vector<double> xs;
    std::vector<std::vector<double>> ys;

    int dim() const { return ys.empty() ? 0 : static_cast<int>(ys[0].size()); }
    int pieces() const { return static_cast<int>(xs.size()) - 1; }
    double lo() const { return xs.front(); }
    double hi() const { return xs.back(); }

    void validate() const {
        if (xs.size() < 2 || ys.size() != xs.size())
            throw std::invalid_argument("PLVectorFunction: need >= 2 breakpoints with matching values");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("PLVectorFunction: breakpoints not increasing");
        for (const auto& y : ys)
            if (static_cast<int>(y.size()) != dim())
                throw std::invalid_argument("PLVectorFunction: ragged values");
    }

    // Evaluate by linear interpolation; clamps the query into the interval.
    std::vector<double> operator()(double x) const {
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs.begin());  // xs[i-1] <= x < xs[i]
        double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        std::vector<double> out(ys[i].size());
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = ys[i - 1][k] + t * (ys[i][k] - ys[i - 1][k]);
        return out;
    }
};

// Scalar PL function: the dim=1 specialization used by the builders.
struct PLScalarFunction {
    std::vector<double> xs;
    std::vector<double> ys;

    int pieces() const { return static_cast<int>(xs.size()) - 1; }
    double lo() const { return xs.front(); }
    double hi() const { return xs.back(); }

    void validate() const {
        if (xs.size() < 2 || ys.size() != xs.size())
            throw std::invalid_argument("PLScalarFunction: need >= 2 breakpoints with matching values");
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("PLScalarFunction: breakpoints not increasing");
    }

    double operator()(double x) const {
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        std::size_t i = static_cast<std::size_t>(it - xs.begin());
        double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
        return ys[i - 1] + t * (ys[i] - ys[i - 1]);
    }

    PLVectorFunction as_vector() const {
        PLVectorFunction v;
        v.xs = xs;
        v.ys.reserve(ys.size());
        for (double y : ys) v.ys.push_back({y});
        return v;
    }
};

}  // namespace minwidth
