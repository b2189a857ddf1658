#pragma once

// Reduced characteristic data and the spectral regions of a tridiagonal
// k-Toeplitz operator on the real axis.
//
// The characteristic polynomial of the symbol collapses to
//     det(f(z) - lambda) = A z + B z^{-1} + g(lambda),
// with A = (-1)^{k+1} prod c_i, B = (-1)^{k+1} prod b_i and g a degree-k real
// polynomial. Writing beta = r + beta_tilde, real symbol eigenvalues satisfy
//     2 A e^r cos(alpha) cosh(beta_tilde) + g(lambda) = 0,
// which yields
//     sigma_open = { |g| <= 2|A| e^r },   sigma_wind = { |g| < |A+B| },
//     sigma_det  = { g = +-(A+B) },
// and the per-frequency decay pair (r - beta_tilde, r + beta_tilde).

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "tbands/ktoeplitz.hpp"
#include "tbands/numerics.hpp"

namespace tbands {

struct ReducedSymbolData {
    double A = 0.0;  // (-1)^{k+1} prod c_i
    double B = 0.0;  // (-1)^{k+1} prod b_i
    double r = 0.0;  // 1/2 log prod b_i/c_i
    Polynomial g;    // degree k, leading coefficient (-1)^k
};

inline ReducedSymbolData reduce(const KToeplitzSpec& spec) {
    const int k = spec.k();
    ReducedSymbolData data;
    double prod_b = 1.0, prod_c = 1.0, log_ratio = 0.0;
    for (int i = 0; i < k; ++i) {
        prod_b *= spec.b[i];
        prod_c *= spec.c[i];
        log_ratio += std::log(spec.b[i] / spec.c[i]);
    }
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
    data.A = sign * prod_c;
    data.B = sign * prod_b;
    data.r = 0.5 * log_ratio;

    // det(A_0 - lambda) by the three-term continuant recursion
    const Polynomial minus_lambda({0.0, -1.0});
    Polynomial d_prev2 = Polynomial::constant(1.0);  // D_0
    Polynomial d_prev1 = minus_lambda + spec.a[0];   // D_1
    for (int j = 2; j <= k; ++j) {
        Polynomial d = (minus_lambda + spec.a[j - 1]) * d_prev1 -
                       (spec.b[j - 2] * spec.c[j - 2]) * d_prev2;
        d_prev2 = std::move(d_prev1);
        d_prev1 = std::move(d);
    }
    Polynomial det_a0 = d_prev1;

    // p(lambda): 0 for k=1, 1 for k=2, interior continuant over a_2..a_{k-1}
    Polynomial p = Polynomial::constant(0.0);
    if (k == 2) {
        p = Polynomial::constant(1.0);
    } else if (k >= 3) {
        Polynomial p_prev2 = Polynomial::constant(1.0);
        Polynomial p_prev1 = minus_lambda + spec.a[1];
        for (int j = 2; j <= k - 2; ++j) {
            Polynomial pj = (minus_lambda + spec.a[j]) * p_prev1 -
                            (spec.b[j - 1] * spec.c[j - 1]) * p_prev2;
            p_prev2 = std::move(p_prev1);
            p_prev1 = std::move(pj);
        }
        p = p_prev1;
    }
    data.g = det_a0 - (spec.b[k - 1] * spec.c[k - 1]) * p;
    return data;
}

// -------------------------------------------------------------------------

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
};

struct SpectralRegions {
    std::vector<Interval> open;  // closed intervals, ordered and disjoint
    std::vector<Interval> wind;  // open intervals
    std::vector<double> det;     // boundary points of the winding region
};

namespace detail {

// {lambda : |g(lambda)| <= t} as a union of intervals with exact polynomial
// roots as endpoints.
inline std::vector<Interval> sublevel_intervals(const Polynomial& g, double t) {
    std::vector<double> pts;
    for (double s : {t, -t}) {
        std::vector<double> roots;
        try {
            roots = real_roots(g - s);
        } catch (const NoConvergence&) {
            throw RootFindingFailure("regions: companion root finder failed");
        }
        pts.insert(pts.end(), roots.begin(), roots.end());
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double x, double y) {
                              return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(x));
                          }),
              pts.end());
    std::vector<Interval> out;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        if (std::abs(g(mid)) <= t) {
            if (!out.empty() && out.back().hi == pts[i])
                out.back().hi = pts[i + 1];
            else
                out.push_back({pts[i], pts[i + 1]});
        }
    }
    return out;
}

}  // namespace detail

inline SpectralRegions regions(const ReducedSymbolData& data) {
    SpectralRegions out;
    const double t_open = 2.0 * std::abs(data.A) * std::exp(data.r);
    const double t_wind = std::abs(data.A + data.B);
    out.open = detail::sublevel_intervals(data.g, t_open);
    out.wind = detail::sublevel_intervals(data.g, t_wind);
    for (const Interval& w : out.wind) {
        out.det.push_back(w.lo);
        out.det.push_back(w.hi);
    }
    std::sort(out.det.begin(), out.det.end());
    return out;
}

inline SpectralRegions regions(const KToeplitzSpec& spec) { return regions(reduce(spec)); }

// -------------------------------------------------------------------------
// beta_tilde and per-frequency classification

// Positive root of arccosh(-g/(2 A e^r)); zero inside sigma_open. The branch
// alpha* in {0, pi} is the sign that makes -g/(2 A e^r cos alpha*) >= 1.
inline double beta_tilde(const ReducedSymbolData& data, double lambda) {
    const double x = -data.g(lambda) / (2.0 * data.A * std::exp(data.r));
    if (std::abs(x) <= 1.0) return 0.0;
    return arccosh_pos(std::abs(x));
}

inline double beta_tilde(const KToeplitzSpec& spec, double lambda) {
    return beta_tilde(reduce(spec), lambda);
}

enum class Region { Open, WindNotOpen, DetBoundary, WindComplement };

inline const char* region_name(Region r) {
    switch (r) {
        case Region::Open: return "open";
        case Region::WindNotOpen: return "wind";
        case Region::DetBoundary: return "det";
        case Region::WindComplement: return "wind_complement";
    }
    return "?";
}

struct FrequencyClassification {
    double lambda = 0.0;
    Region region = Region::Open;
    double beta_tilde = 0.0;
    double rate_left = 0.0;   // r - beta_tilde, per k-block
    double rate_right = 0.0;  // r + beta_tilde
    std::optional<double> alpha_star;  // 0 or pi, only for gap frequencies
};

inline FrequencyClassification classify(const ReducedSymbolData& data, double lambda,
                                        const Tolerances& tol = {}) {
    FrequencyClassification cls;
    cls.lambda = lambda;
    const double x = -data.g(lambda) / (2.0 * data.A * std::exp(data.r));
    if (std::abs(x) <= 1.0) {
        cls.region = Region::Open;
        cls.beta_tilde = 0.0;
        cls.rate_left = cls.rate_right = data.r;
        return cls;
    }
    cls.beta_tilde = arccosh_pos(std::abs(x));
    cls.alpha_star = (x > 0) ? 0.0 : kPi;
    cls.rate_left = data.r - cls.beta_tilde;
    cls.rate_right = data.r + cls.beta_tilde;
    if (std::abs(cls.rate_left) < tol.det_boundary)
        cls.region = Region::DetBoundary;
    else if (cls.beta_tilde < data.r)
        cls.region = Region::WindNotOpen;
    else
        cls.region = Region::WindComplement;
    return cls;
}

inline FrequencyClassification classify(const KToeplitzSpec& spec, double lambda,
                                        const Tolerances& tol = {}) {
    return classify(reduce(spec), lambda, tol);
}

// -------------------------------------------------------------------------
// band and gap functions via the scalar reduced equation

struct BandPoint {
    double alpha;
    std::vector<double> lambdas;  // k values, ascending
};

inline std::vector<BandPoint> band_functions(const KToeplitzSpec& spec,
                                             const std::vector<double>& alpha_grid) {
    const ReducedSymbolData data = reduce(spec);
    const int k = spec.k();
    std::vector<BandPoint> table;
    table.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        if (std::abs(alpha) > kPi / spec.L * (1.0 + 1e-12))
            throw DomainError("band_functions: alpha outside the Brillouin zone");
        const double cst = 2.0 * data.A * std::exp(data.r) * std::cos(alpha * spec.L);
        std::vector<double> roots = real_roots(data.g + cst);
        if (static_cast<int>(roots.size()) != k) {
            // near band edges the companion matrix may split a double root;
            // fall back to the Hermitian eigensolve
            Eigen::SelfAdjointEigenSolver<MatrixC> es(symmetrized_symbol(spec, alpha));
            if (es.info() != Eigen::Success) throw EigFailure("band_functions: eigensolve failed");
            roots.assign(es.eigenvalues().data(), es.eigenvalues().data() + k);
        }
        std::sort(roots.begin(), roots.end());
        table.push_back({alpha, std::move(roots)});
    }
    return table;
}

struct GapPoint {
    double beta_tilde;
    std::vector<double> lambdas;  // all real roots, ascending (0..k of them)
};

inline std::vector<GapPoint> gap_functions(const KToeplitzSpec& spec, double alpha_star,
                                           const std::vector<double>& beta_tilde_grid) {
    const double ca = std::cos(alpha_star);
    if (std::abs(std::abs(ca) - 1.0) > 1e-9)
        throw DomainError("gap_functions: alpha_star must be 0 or pi");
    const ReducedSymbolData data = reduce(spec);
    std::vector<GapPoint> table;
    table.reserve(beta_tilde_grid.size());
    for (double bt : beta_tilde_grid) {
        if (bt < 0) throw DomainError("gap_functions: beta_tilde grid must be nonnegative");
        const double cst = 2.0 * data.A * std::exp(data.r) * ca * std::cosh(bt);
        std::vector<double> roots = real_roots(data.g + cst);
        std::sort(roots.begin(), roots.end());
        table.push_back({bt, std::move(roots)});
    }
    return table;
}

// -------------------------------------------------------------------------
// winding number of theta -> det(f(e^{-i theta}) - lambda) around 0

inline int winding_number(const KToeplitzSpec& spec, double lambda) {
    int n = 512;
    while (n <= (1 << 16)) {
        std::vector<Complex> det(n);
        double max_abs = 0.0, min_abs = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            const double theta = 2.0 * kPi * j / n;
            const MatrixC f = symbol_eval(spec, {theta / spec.L, 0.0});
            det[j] = (f - lambda * MatrixC::Identity(spec.k(), spec.k())).determinant();
            max_abs = std::max(max_abs, std::abs(det[j]));
            min_abs = std::min(min_abs, std::abs(det[j]));
        }
        if (min_abs <= 1e-9 * max_abs)
            throw OnBoundary("winding_number: determinant vanishes on the unit circle");
        double total = 0.0;
        bool fine = true;
        for (int j = 0; j < n; ++j) {
            const double step = std::arg(det[(j + 1) % n] / det[j]);
            if (std::abs(step) >= kPi / 2) {
                fine = false;
                break;
            }
            total += step;
        }
        if (fine) return static_cast<int>(std::lround(total / (2.0 * kPi)));
        n *= 2;
    }
    throw NoConvergence("winding_number: argument tracking did not stabilise");
}

}  // namespace tbands
