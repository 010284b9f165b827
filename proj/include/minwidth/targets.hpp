#pragma once

// Builtin target registry and target-spec intake.  Targets are concrete
// continuous maps [0,1]^dx -> R^dy with a declared sup-norm Lipschitz
// constant; user targets come in as tabulated CSV (dx = 1) or PL curve data.

#include "minwidth/coding.hpp"
#include "minwidth/pl.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace minwidth {

// Builtin names: identity (dy=dx), constant (dy arbitrary, value 1/2),
// product, mean, absdiff (dx=2), prodmeanabs (dx=2, dy=3 stack of product,
// mean, absdiff — the standard Lipschitz-1 demo target).
inline TargetFunction make_builtin_target(const std::string& name, int dx, int dy) {
    if (dx < 1 || dy < 1) throw std::invalid_argument("make_builtin_target: bad dims");
    if (name == "identity") {
        if (dy != dx) throw std::invalid_argument("identity target: dy must equal dx");
        return make_target(dx, dy, 1.0, [](const std::vector<double>& x) { return x; }, "identity");
    }
    if (name == "constant") {
        return make_target(dx, dy, 0.0,
                           [dy](const std::vector<double>&) { return std::vector<double>(dy, 0.5); },
                           "constant");
    }
    if (name == "product") {
        if (dy != 1) throw std::invalid_argument("product target: dy must be 1");
        return make_target(dx, 1, double(dx),
                           [](const std::vector<double>& x) {
                               double p = 1.0;
                               for (double v : x) p *= v;
                               return std::vector<double>{p};
                           },
                           "product");
    }
    if (name == "mean") {
        if (dy != 1) throw std::invalid_argument("mean target: dy must be 1");
        return make_target(dx, 1, 1.0,
                           [](const std::vector<double>& x) {
                               const double s = std::accumulate(x.begin(), x.end(), 0.0);
                               return std::vector<double>{s / double(x.size())};
                           },
                           "mean");
    }
    if (name == "absdiff") {
        if (dx != 2 || dy != 1) throw std::invalid_argument("absdiff target: needs dx=2, dy=1");
        return make_target(2, 1, 2.0,
                           [](const std::vector<double>& x) {
                               return std::vector<double>{std::abs(x[0] - x[1])};
                           },
                           "absdiff");
    }
    if (name == "prodmeanabs") {
        if (dx != 2 || dy != 3) throw std::invalid_argument("prodmeanabs target: needs dx=2, dy=3");
        // Product and absdiff are 2-Lipschitz in the sup norm on the unit
        // square, so they enter halved; the stack is then genuinely
        // 1-Lipschitz and the coding error budget L*2^-K + 2^-M is sharp.
        return make_target(2, 3, 1.0,
                           [](const std::vector<double>& x) {
                               return std::vector<double>{0.5 * x[0] * x[1], 0.5 * (x[0] + x[1]),
                                                         0.5 * std::abs(x[0] - x[1])};
                           },
                           "prodmeanabs");
    }
    throw std::invalid_argument("make_builtin_target: unknown target '" + name + "'");
}

// Wrap PL curve data (dx = 1) as a target with a declared Lipschitz constant.
inline TargetFunction make_pl_target(PLVectorFunction f, double lipschitz, std::string name = "pl") {
    f.validate();
    const int dy = f.dim();
    auto t = make_target(1, dy, lipschitz,
                         [f = std::move(f)](const std::vector<double>& x) { return f(x[0]); },
                         std::move(name));
    return t;
}

// CSV intake (dx = 1): header "x,y1,...,ydy", one breakpoint per row, linear
// interpolation in between; the caller declares the Lipschitz constant.
inline TargetFunction load_csv_target(const std::string& path, double lipschitz) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv_target: cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_csv_target: empty file");
    PLVectorFunction f;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() < 2) throw std::runtime_error("load_csv_target: need x plus >= 1 value column");
        f.xs.push_back(row[0]);
        f.ys.push_back(std::vector<double>(row.begin() + 1, row.end()));
    }
    f.validate();
    return make_pl_target(std::move(f), lipschitz, "csv:" + path);
}

// Target spec document:
// {"target": "builtin:<name>" | "table:<csv-path>", "dx", "dy", "lipschitz"?,
//  "k", "m", "gamma"?, "mode": "uniform-step"|"lp-relu", "p"?}
struct TargetSpec {
    TargetFunction target;
    int k = 4, m = 4;
    double gamma = 0.001;
    double p = 2.0;
    std::string mode = "uniform-step";
};

inline TargetSpec load_target_spec(const nlohmann::json& doc) {
    TargetSpec s;
    const std::string name = doc.at("target").get<std::string>();
    const int dx = doc.value("dx", 1);
    const int dy = doc.value("dy", 1);
    if (name.rfind("table:", 0) == 0) {
        s.target = load_csv_target(name.substr(6), doc.at("lipschitz").get<double>());
    } else {
        const std::string builtin = name.rfind("builtin:", 0) == 0 ? name.substr(8) : name;
        s.target = make_builtin_target(builtin, dx, dy);
        if (doc.contains("lipschitz")) s.target.lipschitz = doc["lipschitz"].get<double>();
    }
    s.k = doc.value("k", 4);
    s.m = doc.value("m", 4);
    s.gamma = doc.value("gamma", 0.001);
    s.p = doc.value("p", 2.0);
    s.mode = doc.value("mode", std::string("uniform-step"));
    if (s.mode != "uniform-step" && s.mode != "lp-relu")
        throw std::invalid_argument("load_target_spec: unknown mode '" + s.mode + "'");
    return s;
}

inline TargetSpec load_target_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_target_spec_file: cannot read " + path);
    nlohmann::json doc;
    in >> doc;
    return load_target_spec(doc);
}

}  // namespace minwidth
