#pragma once

// Small helper for writing explicit layer programs.  Each layer is specified
// neuron-by-neuron as an affine expression over the current channels plus an
// activation tag; affine expressions (AffExpr) can also be carried across
// layers and folded into the next layer's rows, which is how the builders
// merge "combine" steps without spending identity hidden layers.

#include "minwidth/network.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace minwidth {

// c0 + sum_j coeff[j] * channel_j over the current hidden representation.
struct AffExpr {
    std::vector<double> coeff;
    double c0 = 0.0;

    AffExpr() = default;
    AffExpr(std::vector<double> c, double b) : coeff(std::move(c)), c0(b) {}

    static AffExpr channel(std::size_t j, std::size_t n, double scale = 1.0) {
        AffExpr e;
        e.coeff.assign(n, 0.0);
        e.coeff[j] = scale;
        return e;
    }
    static AffExpr constant(double b, std::size_t n) {
        AffExpr e;
        e.coeff.assign(n, 0.0);
        e.c0 = b;
        return e;
    }
    AffExpr& add(const AffExpr& o, double scale = 1.0) {
        if (o.coeff.size() != coeff.size()) throw std::invalid_argument("AffExpr: arity mismatch");
        for (std::size_t j = 0; j < coeff.size(); ++j) coeff[j] += scale * o.coeff[j];
        c0 += scale * o.c0;
        return *this;
    }
    AffExpr& shift(double b) {
        c0 += b;
        return *this;
    }
    AffExpr& scale(double s) {
        for (double& c : coeff) c *= s;
        c0 *= s;
        return *this;
    }
};

class NetBuilder {
  public:
    explicit NetBuilder(int dx) : in_dim_(dx), cur_dim_(static_cast<std::size_t>(dx)) {
        if (dx < 1) throw std::invalid_argument("NetBuilder: bad input dim");
    }

    std::size_t channels() const { return cur_dim_; }

    AffExpr chan(std::size_t j, double scale = 1.0) const { return AffExpr::channel(j, cur_dim_, scale); }
    AffExpr lit(double b) const { return AffExpr::constant(b, cur_dim_); }

    // Append a hidden layer; neuron i computes act(exprs[i]).
    void layer(const std::vector<std::pair<AffExpr, Activation>>& neurons) {
        Layer l;
        for (const auto& [e, act] : neurons) {
            if (e.coeff.size() != cur_dim_) throw std::invalid_argument("NetBuilder: expr arity mismatch");
            l.weights.push_back(e.coeff);
            l.bias.push_back(e.c0);
            l.activations.push_back(act);
        }
        layers_.push_back(std::move(l));
        cur_dim_ = layers_.back().out_dim();
    }

    // Append the affine-only output layer and produce the network.
    Network finish(const std::vector<AffExpr>& outputs) {
        Layer l;
        for (const AffExpr& e : outputs) {
            if (e.coeff.size() != cur_dim_) throw std::invalid_argument("NetBuilder: output arity mismatch");
            l.weights.push_back(e.coeff);
            l.bias.push_back(e.c0);
            l.activations.push_back(Activation::identity);
        }
        Network net;
        net.dx = in_dim_;
        net.dy = static_cast<int>(l.out_dim());
        net.layers = std::move(layers_);
        net.layers.push_back(std::move(l));
        net.validate();
        return net;
    }

  private:
    int in_dim_;
    std::size_t cur_dim_;
    std::vector<Layer> layers_;
};

}  // namespace minwidth
