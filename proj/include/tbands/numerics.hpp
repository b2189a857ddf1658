#pragma once

// Self-contained numerical kernels: dense eigensolves, smallest singular
// value, real roots of real polynomials, Chebyshev U_n (plain and log-scaled
// hyperbolic form), principal arccosh, periodic quadrature and log-linear
// regression. Everything downstream funnels its linear algebra through here.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "tbands/errors.hpp"

namespace tbands {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using MatrixC = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using VectorC = Eigen::VectorXcd;

// Central tolerance record. Functions take it as a defaulted trailing
// argument so the acceptance suite can tighten individual knobs.
struct Tolerances {
    double not_an_eigenvalue = 1e-6;  // sigma_min gate for symbol null vectors
    double eig_residual = 1e-8;       // residual for accepting an eigenpair
    double root_imag = 1e-8;          // |Im| < root_imag * scale counts as real
    double quadrature = 1e-10;        // periodic trapezoid stopping change
    double det_boundary = 1e-6;       // |r - beta_tilde| below this is sigma_det
    double confluent = 1e-9;          // band-edge proximity for Confluent
    int dense_limit = 4096;           // dense eigensolver ceiling
};

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// polynomials (real coefficients, ascending degree)

class Polynomial {
public:
    Polynomial() : coef_{0.0} {}
    explicit Polynomial(std::vector<double> coef) : coef_(std::move(coef)) {
        if (coef_.empty()) coef_.push_back(0.0);
        trim();
    }

    static Polynomial constant(double v) { return Polynomial({v}); }

    int degree() const { return static_cast<int>(coef_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coef_; }
    double leading() const { return coef_.back(); }

    double operator()(double x) const {
        double v = 0.0;
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) v = v * x + *it;
        return v;
    }
    Complex operator()(Complex z) const {
        Complex v = 0.0;
        for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) v = v * z + *it;
        return v;
    }

    Polynomial derivative() const {
        if (degree() == 0) return constant(0.0);
        std::vector<double> d(coef_.size() - 1);
        for (size_t i = 1; i < coef_.size(); ++i) d[i - 1] = coef_[i] * static_cast<double>(i);
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        std::vector<double> c(std::max(p.coef_.size(), q.coef_.size()), 0.0);
        for (size_t i = 0; i < p.coef_.size(); ++i) c[i] += p.coef_[i];
        for (size_t i = 0; i < q.coef_.size(); ++i) c[i] += q.coef_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
        std::vector<double> c(std::max(p.coef_.size(), q.coef_.size()), 0.0);
        for (size_t i = 0; i < p.coef_.size(); ++i) c[i] += p.coef_[i];
        for (size_t i = 0; i < q.coef_.size(); ++i) c[i] -= q.coef_[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        std::vector<double> c(p.coef_.size() + q.coef_.size() - 1, 0.0);
        for (size_t i = 0; i < p.coef_.size(); ++i)
            for (size_t j = 0; j < q.coef_.size(); ++j) c[i + j] += p.coef_[i] * q.coef_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(double s, const Polynomial& p) {
        std::vector<double> c = p.coef_;
        for (double& v : c) v *= s;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator+(const Polynomial& p, double s) { return p + constant(s); }
    friend Polynomial operator-(const Polynomial& p, double s) { return p - constant(s); }

private:
    void trim() {
        double scale = 0.0;
        for (double v : coef_) scale = std::max(scale, std::abs(v));
        const double cut = scale * 1e-14;
        while (coef_.size() > 1 && std::abs(coef_.back()) <= cut) coef_.pop_back();
    }
    std::vector<double> coef_;
};

// ---------------------------------------------------------------------------
// dense eigensolver and smallest singular value

struct EigResult {
    VectorC values;
    MatrixC vectors;  // empty when not requested
};

inline EigResult eig_dense(const MatrixC& m, bool with_vectors = true,
                           const Tolerances& tol = {}) {
    if (m.rows() != m.cols()) throw DomainError("eig_dense: matrix not square");
    if (m.rows() > tol.dense_limit) throw DomainError("eig_dense: above dense limit");
    Eigen::ComplexEigenSolver<MatrixC> solver(m, with_vectors);
    if (solver.info() != Eigen::Success) throw EigFailure("eig_dense: QR iteration failed");
    EigResult out;
    out.values = solver.eigenvalues();
    if (with_vectors) out.vectors = solver.eigenvectors();
    return out;
}

inline double sigma_min(const MatrixC& m) {
    if (m.rows() <= 32) {
        Eigen::JacobiSVD<MatrixC> svd(m);
        return svd.singularValues().minCoeff();
    }
    Eigen::BDCSVD<MatrixC> svd(m);
    return svd.singularValues().minCoeff();
}

// ---------------------------------------------------------------------------
// real roots via companion matrix + Newton polish

inline std::vector<double> real_roots(const Polynomial& p, double tol = 1e-8) {
    const auto& c = p.coeffs();
    const int deg = p.degree();
    if (deg < 1) throw DomainError("real_roots: degree must be >= 1");

    Matrix companion = Matrix::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Matrix> solver(companion, false);
    if (solver.info() != Eigen::Success) throw NoConvergence("real_roots: companion eigensolve failed");

    const Polynomial dp = p.derivative();
    // a crude magnitude scale of p near x, used to judge "p(x) is zero"
    auto poly_scale = [&](double x) {
        double s = 0.0, xp = 1.0;
        for (double ci : c) {
            s += std::abs(ci) * std::abs(xp);
            xp *= x;
        }
        return std::max(s, 1e-300);
    };

    std::vector<double> roots;
    for (int i = 0; i < deg; ++i) {
        Complex z = solver.eigenvalues()(i);
        const double scale = std::max(1.0, std::abs(z));
        // Allow sqrt(eps)-sized imaginary parts through to the polish stage:
        // multiple real roots surface from QR as tiny conjugate pairs.
        if (std::abs(z.imag()) > std::max(tol, 5e-7) * scale) continue;
        double x = z.real();
        for (int it = 0; it < 50; ++it) {
            const double f = p(x);
            const double d = dp(x);
            if (std::abs(d) < 1e-300) break;
            const double step = f / d;
            x -= step;
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
        }
        if (std::abs(p(x)) <= 1e-9 * poly_scale(x)) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    // merge clusters of polished roots (multiple roots land on one point)
    for (size_t i = 1; i < roots.size(); ++i) {
        const double sc = std::max(1.0, std::abs(roots[i]));
        if (roots[i] - roots[i - 1] < 1e-7 * sc) {
            const double avg = 0.5 * (roots[i] + roots[i - 1]);
            roots[i - 1] = roots[i] = avg;
        }
    }
    return roots;
}

// ---------------------------------------------------------------------------
// Chebyshev polynomials of the second kind

inline double chebyshev_U(int n, double x) {
    if (n < 0) throw DomainError("chebyshev_U: n must be >= 0");
    double um1 = 1.0, u = 2.0 * x;  // U_0, U_1
    if (n == 0) return um1;
    for (int i = 1; i < n; ++i) {
        const double next = 2.0 * x * u - um1;
        um1 = u;
        u = next;
    }
    if (!std::isfinite(u)) throw Overflow("chebyshev_U: overflow, use log_chebyshev_U");
    return u;
}

// log(sinh t) for t > 0 without overflow
inline double log_sinh(double t) {
    if (t <= 0) throw DomainError("log_sinh: t must be positive");
    if (t < 1e-4) return std::log(t) + t * t / 6.0;
    return t + std::log1p(-std::exp(-2.0 * t)) - std::log(2.0);
}

inline double arccosh_pos(double x) {
    if (x < 1.0) throw DomainError("arccosh_pos: x must be >= 1");
    const double t = x - 1.0;
    if (t < 1e-8) return std::sqrt(2.0 * t) * (1.0 - t / 12.0 + 3.0 * t * t / 160.0);
    return std::log(x + std::sqrt(t * (x + 1.0)));
}

struct SignedLog {
    int sign;        // -1, 0 or +1
    double log_abs;  // log |value|
    double value() const { return sign * std::exp(log_abs); }
};

// U_n via sinh((n+1) arccosh x)/sqrt(x^2-1); requires |x| > 1.
inline SignedLog log_chebyshev_U(int n, double x) {
    if (n < 0) throw DomainError("log_chebyshev_U: n must be >= 0");
    const double ax = std::abs(x);
    if (ax <= 1.0) throw DomainError("log_chebyshev_U: requires |x| > 1");
    const double xi = arccosh_pos(ax);
    const double la = log_sinh((n + 1) * xi) - 0.5 * std::log((ax - 1.0) * (ax + 1.0));
    const int sign = (x > 0 || n % 2 == 0) ? 1 : -1;  // U_n(-x) = (-1)^n U_n(x)
    return {sign, la};
}

// ---------------------------------------------------------------------------
// periodic quadrature: mean of f over one period (trapezoid = spectral here)

inline Complex periodic_trapezoid(const std::function<Complex(double)>& f,
                                  double period = 2.0 * kPi, double tol = 1e-10,
                                  int n0 = 16, int nmax = (1 << 20)) {
    int n = n0;
    std::vector<Complex> samples(n);
    Complex sum = 0.0;
    for (int j = 0; j < n; ++j) {
        samples[j] = f(period * j / n);
        sum += samples[j];
    }
    Complex mean = sum / static_cast<double>(n);
    while (n < nmax) {
        // refine by sampling the midpoints only
        Complex odd = 0.0;
        for (int j = 0; j < n; ++j) odd += f(period * (2 * j + 1) / (2 * n));
        const Complex next = 0.5 * (mean + odd / static_cast<double>(n));
        n *= 2;
        const double change = std::abs(next - mean);
        mean = next;
        if (n >= 64 && change < tol * std::max(1.0, std::abs(mean))) return mean;
    }
    throw NoConvergence("periodic_trapezoid: did not converge below n = 2^20");
}

// ---------------------------------------------------------------------------
// log-linear regression

struct LinearFit {
    double slope;
    double intercept;
    double r2;
};

inline LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    if (n != ys.size() || n < 3) throw InsufficientData("linear_fit: need >= 3 points");
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0) throw InsufficientData("linear_fit: degenerate abscissae");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double r2 = 1.0;
    if (syy > 1e-30) {
        double ss_res = 0;
        for (size_t i = 0; i < n; ++i) {
            const double r = ys[i] - (intercept + slope * xs[i]);
            ss_res += r * r;
        }
        r2 = 1.0 - ss_res / syy;
    }
    return {slope, intercept, r2};
}

inline LinearFit loglinear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw InsufficientData("loglinear_fit: size mismatch");
    std::vector<double> logy(ys.size());
    for (size_t i = 0; i < ys.size(); ++i) {
        if (!(ys[i] > 0)) throw NonPositiveData("loglinear_fit: ordinates must be positive");
        logy[i] = std::log(ys[i]);
    }
    return linear_fit(xs, logy);
}

}  // namespace tbands
