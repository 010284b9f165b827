#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minwidth/simplex.hpp"

#include <cmath>

using namespace minwidth;

TEST_CASE("simplex vertices: pairwise distance sqrt(2), centroid at origin") {
    for (int dy = 1; dy <= 6; ++dy) {
        const auto v = simplex_vertices(dy);
        REQUIRE(int(v.size()) == dy + 1);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                double d2 = 0.0;
                for (int k = 0; k < dy; ++k) d2 += (v[i][k] - v[j][k]) * (v[i][k] - v[j][k]);
                CHECK(std::abs(std::sqrt(d2) - std::sqrt(2.0)) <= 1e-12);
            }
        for (int k = 0; k < dy; ++k) {
            double c = 0.0;
            for (const auto& p : v) c += p[k];
            CHECK(std::abs(c) <= 1e-12);
        }
    }
}

TEST_CASE("simplex volume matches sqrt(dy+1)/dy!") {
    for (int dy = 1; dy <= 6; ++dy) {
        double fact = 1.0;
        for (int k = 2; k <= dy; ++k) fact *= double(k);
        const double expected = std::sqrt(double(dy + 1)) / fact;
        CHECK(std::abs(simplex_volume(simplex_vertices(dy)) - expected) <= 1e-9);
    }
}

TEST_CASE("geometric bound closed forms") {
    // dy = 1: sqrt(2)/2 * Gamma(1) * 1 = sqrt(2)/2.
    CHECK(simplex_geometric_bound(1) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
    // dy = 3: sqrt(4)/(2*6) * Gamma(2) * (2/pi) = 2/(6*pi).
    CHECK(simplex_geometric_bound(3) ==
          doctest::Approx(2.0 / (6.0 * 3.14159265358979323846)).epsilon(1e-12));
}

TEST_CASE("epsilon formula values") {
    // dy=3, p=2: dy^{1/2-1/2}=... p=2 branch: 3^0 * bound / 7^{1/2}.
    const double expected = simplex_geometric_bound(3) / std::sqrt(7.0);
    CHECK(std::abs(simplex_epsilon(3, 2.0) - expected) <= 1e-12);
    CHECK(simplex_epsilon(3, 2.0) == doctest::Approx(0.0401).epsilon(1e-2));
    // p < 2 branch drops the norm-comparison factor.
    CHECK(std::abs(simplex_epsilon(3, 1.0) - simplex_geometric_bound(3) / 7.0) <= 1e-12);
    CHECK_THROWS(simplex_epsilon(0, 2.0));
    CHECK_THROWS(simplex_epsilon(2, 0.5));
}

TEST_CASE("dy=1: any hyperplane is at distance >= sqrt(2)/2 from some vertex") {
    const auto v = simplex_vertices(1);
    CHECK(hyperplane_half_width(v, {1.0}) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(min_half_width_search(v, 100, 5) >= std::sqrt(2.0) / 2.0 - 1e-12);
}

TEST_CASE("Monte-Carlo + descent search never beats the geometric bound") {
    for (int dy = 1; dy <= 3; ++dy) {
        const double bound = simplex_geometric_bound(dy);
        const double found = min_half_width_search(simplex_vertices(dy), 10000, 42);
        CHECK(found >= bound - 1e-12);
    }
}

TEST_CASE("simplex_bound report is self-consistent") {
    const auto r = simplex_bound(3, 2.0);
    CHECK(r.dy == 3);
    CHECK(int(r.vertices.size()) == 4);
    CHECK(r.epsilon == simplex_epsilon(3, 2.0));
    CHECK(r.geometric_bound == simplex_geometric_bound(3));
    CHECK(r.epsilon < r.geometric_bound);
}
