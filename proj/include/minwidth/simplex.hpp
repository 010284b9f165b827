#pragma once

// Regular-simplex separation bound: a width-(dy-1)-image hyperplane cannot be
// uniformly close to all dy+1 vertices of a regular simplex with sidelength
// sqrt(2).  Provides the isometric vertex embedding, the volumetric distance
// bound, the L^p epsilon formula, and hyperplane search utilities.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace minwidth {

// Vertices of the regular dy-simplex with sidelength sqrt(2), embedded in
// R^dy: the standard basis of R^{dy+1} pushed through an orthonormal basis of
// the hyperplane x_1 + ... + x_{dy+1} = 0 (centroid at the origin).
inline std::vector<std::vector<double>> simplex_vertices(int dy) {
    if (dy < 1) throw std::invalid_argument("simplex_vertices: dy >= 1 required");
    const int n = dy + 1;
    // Rows of `basis`: orthonormal spanning set of {sum x_i = 0} in R^n,
    // Gram-Schmidt applied to e_1 - e_{i+1}.
    std::vector<std::vector<double>> basis;
    for (int i = 1; i < n; ++i) {
        std::vector<double> v(n, 0.0);
        v[0] = 1.0;
        v[i] = -1.0;
        for (const auto& u : basis) {
            double proj = 0.0;
            for (int k = 0; k < n; ++k) proj += v[k] * u[k];
            for (int k = 0; k < n; ++k) v[k] -= proj * u[k];
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        basis.push_back(std::move(v));
    }
    std::vector<std::vector<double>> verts(n, std::vector<double>(dy));
    const double c = 1.0 / double(n);  // centroid coordinate of e_i
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < dy; ++r) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += basis[r][k] * ((k == i ? 1.0 : 0.0) - c);
            verts[i][r] = acc;
        }
    return verts;
}

// dy-volume of the simplex spanned by the given dy+1 vertices, via the edge
// matrix determinant (Gaussian elimination with partial pivoting).
inline double simplex_volume(const std::vector<std::vector<double>>& verts) {
    const int dy = static_cast<int>(verts.size()) - 1;
    if (dy < 1) throw std::invalid_argument("simplex_volume: need >= 2 vertices");
    std::vector<std::vector<double>> m(dy, std::vector<double>(dy));
    for (int i = 0; i < dy; ++i)
        for (int j = 0; j < dy; ++j) m[i][j] = verts[i + 1][j] - verts[0][j];
    double det = 1.0;
    for (int c = 0; c < dy; ++c) {
        int piv = c;
        for (int r = c + 1; r < dy; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        if (m[c][c] == 0.0) return 0.0;
        det *= m[c][c];
        for (int r = c + 1; r < dy; ++r) {
            const double f = m[r][c] / m[c][c];
            for (int k = c; k < dy; ++k) m[r][k] -= f * m[c][k];
        }
    }
    double fact = 1.0;
    for (int k = 2; k <= dy; ++k) fact *= double(k);
    return std::abs(det) / fact;
}

// Volumetric lower bound on max_i dist(v_i, H) over hyperplanes H:
// sqrt(dy+1)/(2*dy!) * Gamma((dy+1)/2) * (2/pi)^{(dy-1)/2}.
inline double simplex_geometric_bound(int dy) {
    if (dy < 1) throw std::invalid_argument("simplex_geometric_bound: dy >= 1 required");
    double fact = 1.0;
    for (int k = 2; k <= dy; ++k) fact *= double(k);
    return std::sqrt(double(dy + 1)) / (2.0 * fact) * std::tgamma(0.5 * double(dy + 1)) *
           std::pow(2.0 / 3.14159265358979323846, 0.5 * double(dy - 1));
}

// L^p separation value epsilon(dy, p); the p >= 2 branch carries the extra
// dy^{1/p - 1/2} norm-comparison factor.
inline double simplex_epsilon(int dy, double p) {
    if (dy < 1) throw std::invalid_argument("simplex_epsilon: dy >= 1 required");
    if (!(p >= 1.0)) throw std::invalid_argument("simplex_epsilon: p >= 1 required");
    const double base = simplex_geometric_bound(dy) / std::pow(double(2 * dy + 1), 1.0 / p);
    if (p >= 2.0) return std::pow(double(dy), 1.0 / p - 0.5) * base;
    return base;
}

// Half-width of the vertex set along unit normal n: the best hyperplane with
// that normal sits at the mid-offset, so this equals max_i dist(v_i, H).
inline double hyperplane_half_width(const std::vector<std::vector<double>>& verts,
                                    const std::vector<double>& normal) {
    double norm = 0.0;
    for (double x : normal) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) throw std::invalid_argument("hyperplane_half_width: zero normal");
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        double proj = 0.0;
        for (std::size_t k = 0; k < normal.size(); ++k) proj += verts[i][k] * normal[k];
        proj /= norm;
        if (i == 0) lo = hi = proj;
        lo = std::min(lo, proj);
        hi = std::max(hi, proj);
    }
    return 0.5 * (hi - lo);
}

// Minimum over random unit normals (plus local descent refinement from the
// best candidate) of the max vertex-hyperplane distance.
inline double min_half_width_search(const std::vector<std::vector<double>>& verts, int trials,
                                    std::uint64_t seed, int descent_iters = 200) {
    const std::size_t dy = verts.front().size();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_normal = [&] {
        std::vector<double> n(dy);
        double norm = 0.0;
        do {
            norm = 0.0;
            for (double& x : n) {
                x = gauss(rng);
                norm += x * x;
            }
        } while (!(norm > 1e-12));
        return n;
    };
    std::vector<double> best_n = random_normal();
    double best = hyperplane_half_width(verts, best_n);
    for (int t = 1; t < trials; ++t) {
        auto n = random_normal();
        const double w = hyperplane_half_width(verts, n);
        if (w < best) {
            best = w;
            best_n = std::move(n);
        }
    }
    double step = 0.25;
    for (int it = 0; it < descent_iters; ++it) {
        std::vector<double> n = best_n;
        for (double& x : n) x += step * gauss(rng);
        const double w = hyperplane_half_width(verts, n);
        if (w < best) {
            best = w;
            best_n = std::move(n);
        } else if ((it + 1) % 25 == 0) {
            step *= 0.5;
        }
    }
    return best;
}

struct SimplexBoundReport {
    int dy = 1;
    double p = 2.0;
    std::vector<std::vector<double>> vertices;
    double epsilon = 0.0;
    double geometric_bound = 0.0;
};

inline SimplexBoundReport simplex_bound(int dy, double p) {
    SimplexBoundReport r;
    r.dy = dy;
    r.p = p;
    r.vertices = simplex_vertices(dy);
    r.epsilon = simplex_epsilon(dy, p);
    r.geometric_bound = simplex_geometric_bound(dy);
    return r;
}

}  // namespace minwidth
