#pragma once

// Simplex quadrature: symmetric Grundmann-Moller rules of arbitrary degree in any
// dimension, plus adaptive longest-edge bisection driven by comparing two
// successive rules. Also uniform (trapezoid) rules for periodic circle fibers.

#include "dlg/base.hpp"

namespace dlg {

struct QuadNode {
    VecD x;  // point in the unit simplex {t >= 0, sum t <= 1} of R^d
    double w;
};

// Grundmann-Moller rule of index s (polynomial degree 2s+1) on the unit d-simplex.
// Weights sum to the simplex volume 1/d!.
inline const std::vector<QuadNode>& gm_rule(int dim, int s) {
    static std::map<std::pair<int, int>, std::vector<QuadNode>> cache;
    auto key = std::make_pair(dim, s);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<QuadNode> nodes;
    int deg = 2 * s + 1;
    double two_pow = std::pow(2.0, -2.0 * s);
    double sign = 1.0;
    for (int i = 0; i <= s; ++i) {
        double numer = std::pow(double(deg + dim - 2 * i), double(deg));
        double denom = 1.0;
        for (int j = 2; j <= i; ++j) denom *= j;
        for (int j = 2; j <= deg + dim - i; ++j) denom *= j;
        double w = sign * two_pow * numer / denom;

        // compositions of (s - i) into dim+1 parts; coordinates from parts 1..dim
        int total = s - i;
        VecI beta(dim + 1, 0);
        beta[0] = total;
        while (true) {
            VecD x(dim);
            for (int j = 0; j < dim; ++j) x[j] = double(2 * beta[j + 1] + 1) / double(deg + dim - 2 * i);
            nodes.push_back({x, w});
            // next composition
            if (beta[dim] == total) break;
            int k = 0;
            while (beta[k] == 0) ++k;
            int v = beta[k];
            beta[k] = 0;
            beta[0] = v - 1;
            beta[k + 1] += 1;
        }
        sign = -sign;
    }
    return cache.emplace(key, std::move(nodes)).first->second;
}

struct QuadOpts {
    int rule = 2;           // GM index; degree 2*rule+1
    double tol = 1e-7;      // disagreement triggering refinement
    int max_depth = 8;      // bisection depth cap
};

namespace detail {

inline double gm_apply(const std::function<double(const VecD&)>& f, int dim, int s,
                       const std::vector<VecD>& verts, double volfac) {
    const auto& rule = gm_rule(dim, s);
    double acc = 0;
    VecD p(dim);
    for (const auto& n : rule) {
        for (int j = 0; j < dim; ++j) {
            p[j] = verts[0][j];
            for (int m = 0; m < dim; ++m) p[j] += n.x[m] * (verts[m + 1][j] - verts[0][j]);
        }
        acc += n.w * f(p);
    }
    return acc * volfac;
}

inline double simplex_adaptive(const std::function<double(const VecD&)>& f, int dim,
                               const QuadOpts& o, const std::vector<VecD>& verts, double volfac,
                               int depth) {
    double a = gm_apply(f, dim, o.rule, verts, volfac);
    double b = gm_apply(f, dim, o.rule + 1, verts, volfac);
    if (std::abs(a - b) <= o.tol || depth >= o.max_depth) return b;
    // bisect the longest edge
    int bi = 0, bj = 1;
    double best = -1;
    for (int i = 0; i <= dim; ++i)
        for (int j = i + 1; j <= dim; ++j) {
            double l = norm(verts[i] - verts[j]);
            if (l > best) { best = l; bi = i; bj = j; }
        }
    VecD mid = 0.5 * (verts[bi] + verts[bj]);
    auto va = verts, vb = verts;
    va[bi] = mid;
    vb[bj] = mid;
    // midpoint bisection halves the volume exactly
    return simplex_adaptive(f, dim, o, va, 0.5 * volfac, depth + 1) +
           simplex_adaptive(f, dim, o, vb, 0.5 * volfac, depth + 1);
}

}  // namespace detail

// Integral of f over the unit d-simplex in reference coordinates.
inline double integrate_unit_simplex(int dim, const std::function<double(const VecD&)>& f,
                                     const QuadOpts& o = {}) {
    if (dim == 0) return f(VecD{});
    std::vector<VecD> verts(dim + 1, VecD(dim, 0.0));
    for (int i = 1; i <= dim; ++i) verts[i][i - 1] = 1.0;
    // volfac relative to the unit simplex itself is 1; GM weights carry 1/d!.
    return detail::simplex_adaptive(f, dim, o, verts, 1.0, 0);
}

// Average of f over the uniform periodic grid {0, 1/n, ..., (n-1)/n}; equals the
// integral over the unit circle for smooth periodic integrands (spectral accuracy).
inline double circle_average(int n, const std::function<double(double)>& f) {
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += f(double(i) / n);
    return acc / n;
}

}  // namespace dlg
