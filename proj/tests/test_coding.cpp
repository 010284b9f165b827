#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minwidth/coding.hpp"
#include "minwidth/targets.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

using namespace minwidth;

TEST_CASE("quant grid values") {
    const QuantGrid g(2);
    CHECK(g.size() == 4);
    const auto v = g.values();
    CHECK(v == std::vector<double>{0.0, 0.25, 0.5, 0.75});
}

TEST_CASE("quantize examples") {
    CHECK(quantize(0.3, 2) == 0.25);
    CHECK(quantize(1.0, 3) == 0.875);  // top point maps down one cell
    CHECK(quantize(0.25, 2) == 0.25);
    CHECK_THROWS(quantize(-0.1, 2));
    CHECK_THROWS(quantize(1.1, 2));
}

TEST_CASE("quantization error is one-sided and bounded") {
    for (int n = 1; n <= 6; ++n)
        for (int i = 0; i <= 1000; ++i) {
            const double x = double(i) / 1000.0;
            const double q = quantize(x, n);
            CHECK(x - q >= 0.0);
            CHECK(x - q <= std::ldexp(1.0, -n));
        }
}

TEST_CASE("encode examples") {
    CHECK(encode({0.5, 0.25}, 2) == 0.5625);
    CHECK(encode({0.0, 0.0, 0.0}, 4) == 0.0);
    CHECK(encode({1.0, 1.0}, 1) == 0.75);  // q_1(1) = 0.5 both coordinates
    CHECK_THROWS(encode({0.5, 0.5, 0.5, 0.5, 0.5}, 6));  // budget
}

TEST_CASE("decode examples and exhaustive round-trip") {
    const auto v = decode(0.5625, 2, 2);
    CHECK(v == std::vector<double>{0.5, 0.25});
    CHECK(decode(0.0, 3, 2) == std::vector<double>{0.0, 0.0});
    // Exhaustive: dy=2, M=3 round-trip identity on the product grid.
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const std::vector<double> x = {a / 8.0, b / 8.0};
            CHECK(decode(encode(x, 3), 3, 2) == x);
        }
    CHECK_THROWS(decode(0.3, 2, 2));  // off-grid
}

TEST_CASE("encode is injective on the product grid") {
    std::map<double, int> seen;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            const double c = encode({a / 8.0, b / 8.0}, 3);
            CHECK(seen.insert({c, 1}).second);
        }
}

TEST_CASE("decode-back reconstruction error") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int s = 0; s < 2000; ++s) {
        const std::vector<double> x = {unif(rng), unif(rng)};
        const auto xh = decode(encode(x, 4), 4, 2);
        for (int i = 0; i < 2; ++i) CHECK(std::abs(x[i] - xh[i]) <= std::ldexp(1.0, -4));
    }
}

TEST_CASE("codebook: identity target fixes every codeword") {
    const auto f = make_target(1, 1, 1.0, [](const std::vector<double>& x) { return x; }, "id");
    const auto t = build_codebook(f, 2, 2);
    CHECK(t.entries.size() == 4);
    for (const auto& [k, v] : t.entries) CHECK(k == v);
}

TEST_CASE("codebook: constant-zero target") {
    const auto f = make_target(2, 1, 0.0,
                               [](const std::vector<double>&) { return std::vector<double>{0.0}; });
    for (const auto& [k, v] : build_codebook(f, 2, 3).entries) CHECK(v == 0.0);
}

TEST_CASE("codebook: square function at K=M=1") {
    const auto f = make_target(1, 1, 2.0, [](const std::vector<double>& x) {
        return std::vector<double>{x[0] * x[0]};
    });
    const auto t = build_codebook(f, 1, 1);
    CHECK(t.entries.at(0.0) == 0.0);
    CHECK(t.entries.at(0.5) == 0.0);  // q_1(0.25) = 0
}

TEST_CASE("error budget values") {
    CHECK(error_budget(1.0, 4, 4) == 0.125);
    CHECK(error_budget(0.0, 3, 5) == std::ldexp(1.0, -5));
    CHECK_THROWS(error_budget(-1.0, 3, 3));
}

TEST_CASE("full coding chain stays within the budget (identity, K=M=6)") {
    const auto f = make_target(1, 1, 1.0, [](const std::vector<double>& x) { return x; });
    const auto t = build_codebook(f, 6, 6);
    const double budget = error_budget(1.0, 6, 6);
    for (int i = 0; i <= 100000; ++i) {
        const double x = double(i) / 100000.0;
        const double y = decode(t.entries.at(encode({x}, 6)), 6, 1)[0];
        CHECK(std::abs(y - x) <= budget);
    }
}

TEST_CASE("codebook CSV export uses exact dyadic decimal strings") {
    const auto f = make_target(1, 1, 1.0, [](const std::vector<double>& x) { return x; });
    const auto t = build_codebook(f, 2, 2);
    const std::string path = "/tmp/minwidth_codebook_test.csv";
    export_codebook_csv(t, path);
    std::ifstream in(path);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "input_codeword,output_codeword");
    CHECK(first == "0,0");
    std::string second;
    std::getline(in, second);
    CHECK(second == "0.25,0.25");
    std::remove(path.c_str());
}

TEST_CASE("builtin targets: declared Lipschitz bounds empirical difference quotients") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (const auto& [name, dx, dy] :
         std::vector<std::tuple<std::string, int, int>>{{"identity", 2, 2},
                                                        {"constant", 2, 1},
                                                        {"product", 2, 1},
                                                        {"mean", 3, 1},
                                                        {"absdiff", 2, 1},
                                                        {"prodmeanabs", 2, 3}}) {
        const TargetFunction f = make_builtin_target(name, dx, dy);
        for (int s = 0; s < 2000; ++s) {
            std::vector<double> x(dx), y(dx);
            double d = 0.0;
            for (int i = 0; i < dx; ++i) {
                x[i] = unif(rng);
                y[i] = unif(rng);
                d = std::max(d, std::abs(x[i] - y[i]));
            }
            const auto fx = f(x), fy = f(y);
            for (int k = 0; k < dy; ++k)
                CHECK(std::abs(fx[k] - fy[k]) <= f.lipschitz * d + 1e-12);
        }
        // Range inside [0,1]^dy for builtins.
        for (int s = 0; s < 500; ++s) {
            std::vector<double> x(dx);
            for (double& v : x) v = unif(rng);
            for (double v : f(x)) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
        }
    }
}

TEST_CASE("target spec intake") {
    nlohmann::json doc = {{"target", "builtin:prodmeanabs"}, {"dx", 2}, {"dy", 3},
                          {"k", 4},  {"m", 4},               {"mode", "lp-relu"},
                          {"p", 2.0}};
    const TargetSpec s = load_target_spec(doc);
    CHECK(s.target.name == "prodmeanabs");
    CHECK(s.mode == "lp-relu");
    CHECK(s.k == 4);

    // CSV table target (dx = 1).
    const std::string path = "/tmp/minwidth_target_test.csv";
    {
        std::ofstream out(path);
        out << "x,y\n0,0\n0.5,1\n1,0\n";
    }
    nlohmann::json doc2 = {{"target", "table:" + path}, {"lipschitz", 2.0}};
    const TargetSpec s2 = load_target_spec(doc2);
    CHECK(s2.target.dx == 1);
    CHECK(s2.target({0.25})[0] == doctest::Approx(0.5));
    CHECK(s2.target.lipschitz == 2.0);
    std::remove(path.c_str());

    CHECK_THROWS(load_target_spec(nlohmann::json{{"target", "builtin:nope"}, {"dx", 1}, {"dy", 1}}));
}
