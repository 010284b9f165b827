#pragma once

// Core network data model: layered affine maps with per-neuron activation tags
// (relu / step / identity), forward evaluation in float64 or exact dyadic
// arithmetic, and composition with junction merging.

#include "minwidth/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace minwidth {

enum class Activation { relu, step, identity };

inline std::string activation_name(Activation a) {
    switch (a) {
        case Activation::relu: return "relu";
        case Activation::step: return "step";
        case Activation::identity: return "id";
    }
    throw std::logic_error("activation_name: bad tag");
}

inline Activation activation_from_name(const std::string& s) {
    if (s == "relu") return Activation::relu;
    if (s == "step") return Activation::step;
    if (s == "id" || s == "identity") return Activation::identity;
    throw std::invalid_argument("unknown activation tag: " + s);
}

inline double apply_activation(Activation a, double x) {
    switch (a) {
        case Activation::relu: return x > 0.0 ? x : 0.0;
        case Activation::step: return x >= 0.0 ? 1.0 : 0.0;  // closed on the right
        case Activation::identity: return x;
    }
    throw std::logic_error("apply_activation: bad tag");
}

inline Rational apply_activation(Activation a, const Rational& x) {
    switch (a) {
        case Activation::relu: return x > 0 ? x : Rational(0);
        case Activation::step: return x >= 0 ? Rational(1) : Rational(0);
        case Activation::identity: return x;
    }
    throw std::logic_error("apply_activation: bad tag");
}

struct Layer {
    // weights[i] is the i-th output row; all rows share input dimension.
    std::vector<std::vector<double>> weights;
    std::vector<double> bias;
    std::vector<Activation> activations;

    std::size_t out_dim() const { return weights.size(); }
    std::size_t in_dim() const { return weights.empty() ? 0 : weights[0].size(); }

    void validate() const {
        if (weights.size() != bias.size() || weights.size() != activations.size())
            throw std::invalid_argument("Layer: row/bias/activation count mismatch");
        for (const auto& row : weights)
            if (row.size() != in_dim()) throw std::invalid_argument("Layer: ragged weight rows");
    }
};

enum class NumericMode { float64, dyadic_exact };

struct Network {
    int dx = 0;
    int dy = 0;
    std::vector<Layer> layers;  // last layer's activations are all identity

    void validate() const {
        if (layers.empty()) throw std::invalid_argument("Network: no layers");
        std::size_t in = static_cast<std::size_t>(dx);
        for (const auto& l : layers) {
            l.validate();
            if (l.in_dim() != in) throw std::invalid_argument("Network: layer dimension chain broken");
            in = l.out_dim();
        }
        if (in != static_cast<std::size_t>(dy)) throw std::invalid_argument("Network: output dim mismatch");
        for (Activation a : layers.back().activations)
            if (a != Activation::identity) throw std::invalid_argument("Network: output layer must be affine-only");
    }

    // Max hidden-layer output dim; the output layer is excluded.
    int width() const {
        int w = 0;
        for (std::size_t i = 0; i + 1 < layers.size(); ++i)
            w = std::max(w, static_cast<int>(layers[i].out_dim()));
        return w;
    }

    int depth() const { return static_cast<int>(layers.size()); }

    std::size_t parameter_count() const {
        std::size_t n = 0;
        for (const auto& l : layers) n += l.out_dim() * (l.in_dim() + 1);
        return n;
    }

    bool has_step_neuron() const {
        for (const auto& l : layers)
            for (Activation a : l.activations)
                if (a == Activation::step) return true;
        return false;
    }
};

inline std::vector<double> evaluate(const Network& net, const std::vector<double>& x) {
    if (x.size() != static_cast<std::size_t>(net.dx))
        throw std::invalid_argument("evaluate: input dimension mismatch");
    std::vector<double> cur = x, next;
    for (std::size_t li = 0; li < net.layers.size(); ++li) {
        const Layer& l = net.layers[li];
        next.assign(l.out_dim(), 0.0);
        for (std::size_t i = 0; i < l.out_dim(); ++i) {
            double acc = l.bias[i];
            const auto& row = l.weights[i];
            for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * cur[j];
            next[i] = apply_activation(l.activations[i], acc);
        }
        cur.swap(next);
    }
    return cur;
}

inline std::vector<Rational> evaluate_exact(const Network& net, const std::vector<Rational>& x) {
    if (x.size() != static_cast<std::size_t>(net.dx))
        throw std::invalid_argument("evaluate_exact: input dimension mismatch");
    std::vector<Rational> cur = x, next;
    for (const Layer& l : net.layers) {
        next.assign(l.out_dim(), Rational(0));
        for (std::size_t i = 0; i < l.out_dim(); ++i) {
            Rational acc = rat_from_double(l.bias[i]);
            for (std::size_t j = 0; j < l.weights[i].size(); ++j)
                acc += rat_from_double(l.weights[i][j]) * cur[j];
            next[i] = apply_activation(l.activations[i], acc);
        }
        cur.swap(next);
    }
    return cur;
}

inline std::vector<double> evaluate(const Network& net, const std::vector<double>& x, NumericMode mode) {
    if (mode == NumericMode::float64) return evaluate(net, x);
    // Dyadic-exact: every finite double weight is a dyadic rational; reject non-finite.
    std::vector<Rational> xr;
    xr.reserve(x.size());
    for (double v : x) xr.push_back(rat_from_double(v));
    std::vector<Rational> yr = evaluate_exact(net, xr);
    std::vector<double> y;
    y.reserve(yr.size());
    for (const Rational& v : yr) y.push_back(rat_to_double(v));
    return y;
}

// second o first.  The junction merges first's output affine layer with
// second's first affine layer, so no identity-activation hidden layer of
// width first.dy is introduced.
inline Network compose(const Network& first, const Network& second) {
    if (first.dy != second.dx) throw std::invalid_argument("compose: dimension mismatch");
    Network out;
    out.dx = first.dx;
    out.dy = second.dy;
    out.layers.assign(first.layers.begin(), first.layers.end() - 1);

    const Layer& fl = first.layers.back();   // affine-only
    const Layer& sl = second.layers.front();
    Layer merged;
    merged.activations = sl.activations;
    merged.bias = sl.bias;
    merged.weights.assign(sl.out_dim(), std::vector<double>(fl.in_dim(), 0.0));
    for (std::size_t i = 0; i < sl.out_dim(); ++i) {
        for (std::size_t k = 0; k < fl.out_dim(); ++k) {
            double w = sl.weights[i][k];
            if (w == 0.0) continue;
            merged.bias[i] += w * fl.bias[k];
            for (std::size_t j = 0; j < fl.in_dim(); ++j)
                merged.weights[i][j] += w * fl.weights[k][j];
        }
    }
    out.layers.push_back(std::move(merged));
    out.layers.insert(out.layers.end(), second.layers.begin() + 1, second.layers.end());
    out.validate();
    return out;
}

// Identity network (single affine layer), useful as a composition unit.
inline Network identity_network(int d) {
    Network n;
    n.dx = n.dy = d;
    Layer l;
    l.weights.assign(d, std::vector<double>(d, 0.0));
    l.bias.assign(d, 0.0);
    l.activations.assign(d, Activation::identity);
    for (int i = 0; i < d; ++i) l.weights[i][i] = 1.0;
    n.layers.push_back(std::move(l));
    return n;
}

}  // namespace minwidth
