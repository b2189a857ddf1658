#pragma once

// Tridiagonal k-Toeplitz operators: the period-k diagonal data (a, b, c),
// symbol evaluation at complex quasimomenta, and banded truncations of the
// Toeplitz and Laurent forms with optional defects and corner overrides.
//
// Conventions locked here and used everywhere else:
//   * b_i is the superdiagonal coupling site i -> i+1, c_i the subdiagonal.
//   * The symbol is f(z) = A_{-1} z^{-1} + A_0 + A_1 z evaluated at
//     z = exp(-i (alpha + i beta) L), with b_k in the lower-left corner of
//     A_{-1} and c_k in the upper-right corner of A_1. For k = 1 this is
//     b e^{i(alpha+i beta)L} + a + c e^{-i(alpha+i beta)L}, and symbol
//     eigenvalues are real for all alpha exactly at beta = r.

#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "tbands/numerics.hpp"

namespace tbands {

struct KToeplitzSpec {
    std::vector<double> a, b, c;  // period-k diagonals
    double L = 1.0;               // lattice length, Y* = (-pi/L, pi/L]

    enum class Orientation { Canonical, Hermitian, Adjoint };
    Orientation orientation = Orientation::Canonical;

    int k() const { return static_cast<int>(a.size()); }
    bool adjoint_oriented() const { return orientation == Orientation::Adjoint; }
};

inline KToeplitzSpec make_spec(std::vector<double> a, std::vector<double> b,
                               std::vector<double> c, double L = 1.0) {
    if (a.empty() || a.size() != b.size() || a.size() != c.size())
        throw BadLength("make_spec: a, b, c must share a common length k >= 1");
    if (!(L > 0)) throw DomainError("make_spec: L must be positive");
    double log_ratio = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!(b[i] * c[i] > 0))
            throw DegenerateCoupling("make_spec: b_i * c_i must be positive for all i");
        log_ratio += std::log(b[i] / c[i]);
    }
    KToeplitzSpec spec{std::move(a), std::move(b), std::move(c), L};
    if (log_ratio > 0)
        spec.orientation = KToeplitzSpec::Orientation::Canonical;
    else if (log_ratio < 0)
        spec.orientation = KToeplitzSpec::Orientation::Adjoint;
    else
        spec.orientation = KToeplitzSpec::Orientation::Hermitian;
    return spec;
}

inline KToeplitzSpec adjoint_spec(const KToeplitzSpec& spec) {
    KToeplitzSpec adj = spec;
    std::swap(adj.b, adj.c);
    return make_spec(adj.a, adj.b, adj.c, adj.L);
}

struct ComplexQuasimomentum {
    double alpha = 0.0;  // reduced to (-pi/L, pi/L]
    double beta = 0.0;
};

inline ComplexQuasimomentum make_quasimomentum(double alpha, double beta, double L = 1.0) {
    double phase = std::remainder(alpha * L, 2.0 * kPi);  // [-pi, pi]
    if (phase <= -kPi) phase = kPi;
    return {phase / L, beta};
}

// -------------------------------------------------------------------------
// defects

struct DefectSpec {
    enum class Kind { Multiplicative, Additive };
    int site = 1;  // 1-based row index in the truncated matrix
    Kind kind = Kind::Additive;
    double eta = 0.0;  // multiplicative: row scaled by (1 + eta)
    double d = 0.0;    // additive: added to the (site, site) entry

    static DefectSpec multiplicative(int site, double eta) {
        if (!(eta > -1.0)) throw EtaOutOfRange("multiplicative defect requires eta > -1");
        DefectSpec s;
        s.site = site;
        s.kind = Kind::Multiplicative;
        s.eta = eta;
        return s;
    }
    static DefectSpec additive(int site, double d) {
        DefectSpec s;
        s.site = site;
        s.kind = Kind::Additive;
        s.d = d;
        return s;
    }
};

// -------------------------------------------------------------------------
// banded (tridiagonal) storage; densification happens only at the solvers

class Tridiagonal {
public:
    Vector diag, super, sub;  // sizes n, n-1, n-1; sub[i] = entry (i+1, i)

    Tridiagonal() = default;
    explicit Tridiagonal(int n)
        : diag(Vector::Zero(n)), super(Vector::Zero(std::max(0, n - 1))),
          sub(Vector::Zero(std::max(0, n - 1))) {}

    int size() const { return static_cast<int>(diag.size()); }

    Matrix dense() const {
        const int n = size();
        Matrix m = Matrix::Zero(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = diag[i];
        for (int i = 0; i + 1 < n; ++i) {
            m(i, i + 1) = super[i];
            m(i + 1, i) = sub[i];
        }
        return m;
    }
    MatrixC dense_complex() const { return dense().cast<Complex>(); }

    VectorC apply(const VectorC& x) const {
        const int n = size();
        VectorC y(n);
        for (int i = 0; i < n; ++i) {
            Complex v = diag[i] * x[i];
            if (i > 0) v += sub[i - 1] * x[i - 1];
            if (i + 1 < n) v += super[i] * x[i + 1];
            y[i] = v;
        }
        return y;
    }
};

inline Tridiagonal truncate_toeplitz(const KToeplitzSpec& spec, int n,
                                     std::optional<std::pair<double, double>> corners = {}) {
    if (n < 2) throw DomainError("truncate_toeplitz: N must be >= 2");
    const int k = spec.k();
    Tridiagonal m(n);
    for (int i = 0; i < n; ++i) m.diag[i] = spec.a[i % k];
    for (int i = 0; i + 1 < n; ++i) {
        m.super[i] = spec.b[i % k];
        m.sub[i] = spec.c[i % k];
    }
    if (corners) {
        m.diag[0] = corners->first;
        m.diag[n - 1] = corners->second;
    }
    return m;
}

inline Tridiagonal apply_defect(Tridiagonal m, const DefectSpec& defect) {
    const int n = m.size();
    if (defect.site < 1 || defect.site > n)
        throw BadDefectSite("apply_defect: site outside the matrix");
    const int r = defect.site - 1;
    if (defect.kind == DefectSpec::Kind::Multiplicative) {
        if (!(defect.eta > -1.0)) throw EtaOutOfRange("apply_defect: eta must be > -1");
        const double s = 1.0 + defect.eta;
        m.diag[r] *= s;
        if (r > 0) m.sub[r - 1] *= s;
        if (r + 1 < n) m.super[r] *= s;
    } else {
        m.diag[r] += defect.d;
    }
    return m;
}

// Laurent truncation: the window is centred on the defect, which must sit at
// site floor(N/2); no corner overrides, the cut is a pure truncation.
inline Tridiagonal truncate_laurent(const KToeplitzSpec& spec, int n, const DefectSpec& defect) {
    if (n < 2) throw DomainError("truncate_laurent: N must be >= 2");
    if (defect.site != n / 2)
        throw BadDefectSite("truncate_laurent: defect must sit at floor(N/2)");
    return apply_defect(truncate_toeplitz(spec, n), defect);
}

// -------------------------------------------------------------------------
// symbol evaluation

inline MatrixC symbol_eval(const KToeplitzSpec& spec, const ComplexQuasimomentum& q) {
    const int k = spec.k();
    const Complex i_unit(0.0, 1.0);
    const Complex z = std::exp(-i_unit * Complex(q.alpha, q.beta) * spec.L);
    const Complex zinv = 1.0 / z;
    MatrixC f = MatrixC::Zero(k, k);
    if (k == 1) {
        f(0, 0) = spec.a[0] + spec.b[0] * zinv + spec.c[0] * z;
        return f;
    }
    for (int i = 0; i < k; ++i) f(i, i) = spec.a[i];
    for (int i = 0; i + 1 < k; ++i) {
        f(i, i + 1) = spec.b[i];
        f(i + 1, i) = spec.c[i];
    }
    f(k - 1, 0) += spec.b[k - 1] * zinv;
    f(0, k - 1) += spec.c[k - 1] * z;
    return f;
}

// Hermitian matrix with the same spectrum as symbol_eval(spec, {alpha, r}):
// conjugation by diag(prod_{i<j} sqrt(b_i/c_i)) turns the off-diagonals into
// sgn(b_i) sqrt(b_i c_i) and the corners into conjugate phases e^{+-i alpha L}.
inline MatrixC symmetrized_symbol(const KToeplitzSpec& spec, double alpha) {
    const int k = spec.k();
    const Complex i_unit(0.0, 1.0);
    const Complex phase = std::exp(i_unit * alpha * spec.L);
    auto geo = [&](int i) {
        return (spec.b[i] > 0 ? 1.0 : -1.0) * std::sqrt(spec.b[i] * spec.c[i]);
    };
    MatrixC s = MatrixC::Zero(k, k);
    if (k == 1) {
        s(0, 0) = spec.a[0] + geo(0) * (phase + std::conj(phase));
        return s;
    }
    for (int i = 0; i < k; ++i) s(i, i) = spec.a[i];
    for (int i = 0; i + 1 < k; ++i) {
        s(i, i + 1) = geo(i);
        s(i + 1, i) = geo(i);
    }
    s(k - 1, 0) += geo(k - 1) * phase;
    s(0, k - 1) += geo(k - 1) * std::conj(phase);
    return s;
}

// -------------------------------------------------------------------------
// gauge scalings

// Diagonal of R_N(e^r): entries e^{-r floor((i-1)/k)}, i = 1..N.
inline Vector gauge_similarity(const KToeplitzSpec& spec, int n) {
    double r = 0.0;
    for (int i = 0; i < spec.k(); ++i) r += 0.5 * std::log(spec.b[i] / spec.c[i]);
    Vector g(n);
    for (int i = 0; i < n; ++i) g[i] = std::exp(-r * (i / spec.k()));
    return g;
}

// Site-wise scaling G with G_1 = 1, G_{i+1} = G_i sqrt(super_i / sub_i);
// G M G^{-1} is symmetric whenever every super_i * sub_i > 0.
inline std::optional<Vector> symmetrizer(const Tridiagonal& m) {
    const int n = m.size();
    Vector g(n);
    g[0] = 1.0;
    for (int i = 0; i + 1 < n; ++i) {
        if (!(m.super[i] * m.sub[i] > 0)) return std::nullopt;
        g[i + 1] = g[i] * std::sqrt(m.super[i] / m.sub[i]);
        if (!std::isfinite(g[i + 1]) || g[i + 1] == 0.0) return std::nullopt;
    }
    return g;
}

inline Tridiagonal symmetrize(const Tridiagonal& m) {
    Tridiagonal s = m;
    for (int i = 0; i + 1 < m.size(); ++i) {
        const double off = (m.super[i] > 0 ? 1.0 : -1.0) * std::sqrt(m.super[i] * m.sub[i]);
        s.super[i] = off;
        s.sub[i] = off;
    }
    return s;
}

}  // namespace tbands
