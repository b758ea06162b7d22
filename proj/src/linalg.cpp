#include "qfb/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qfb/errors.hpp"

namespace qfb {

CMat2 CMat2::identity() {
    CMat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    return m;
}

CMat4 CMat4::identity() {
    CMat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

CMat2 operator+(const CMat2& a, const CMat2& b) {
    CMat2 out;
    for (std::size_t i = 0; i < 4; ++i) out.e[i] = a.e[i] + b.e[i];
    return out;
}

CMat2 operator-(const CMat2& a, const CMat2& b) {
    CMat2 out;
    for (std::size_t i = 0; i < 4; ++i) out.e[i] = a.e[i] - b.e[i];
    return out;
}

CMat2 operator*(const CMat2& a, const CMat2& b) {
    CMat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return out;
}

CMat2 operator*(Complex s, const CMat2& a) {
    CMat2 out;
    for (std::size_t i = 0; i < 4; ++i) out.e[i] = s * a.e[i];
    return out;
}

CMat4 operator+(const CMat4& a, const CMat4& b) {
    CMat4 out;
    for (std::size_t i = 0; i < 16; ++i) out.e[i] = a.e[i] + b.e[i];
    return out;
}

CMat4 operator-(const CMat4& a, const CMat4& b) {
    CMat4 out;
    for (std::size_t i = 0; i < 16; ++i) out.e[i] = a.e[i] - b.e[i];
    return out;
}

CMat4 operator*(const CMat4& a, const CMat4& b) {
    CMat4 out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            Complex acc = 0.0;
            for (int k = 0; k < 4; ++k) acc += a(i, k) * b(k, j);
            out(i, j) = acc;
        }
    }
    return out;
}

CMat4 operator*(Complex s, const CMat4& a) {
    CMat4 out;
    for (std::size_t i = 0; i < 16; ++i) out.e[i] = s * a.e[i];
    return out;
}

CMat2 dagger(const CMat2& a) {
    CMat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = std::conj(a(j, i));
    return out;
}

CMat4 dagger(const CMat4& a) {
    CMat4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out(i, j) = std::conj(a(j, i));
    return out;
}

CMat2 conjugate(const CMat2& a) {
    CMat2 out;
    for (std::size_t i = 0; i < 4; ++i) out.e[i] = std::conj(a.e[i]);
    return out;
}

CMat4 conjugate(const CMat4& a) {
    CMat4 out;
    for (std::size_t i = 0; i < 16; ++i) out.e[i] = std::conj(a.e[i]);
    return out;
}

Complex trace(const CMat2& a) { return a(0, 0) + a(1, 1); }

Complex trace(const CMat4& a) { return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3); }

CMat4 tensor(const CMat2& a, const CMat2& b) {
    CMat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

CMat2 partial_trace_B(const CMat4& rho) {
    CMat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    return out;
}

bool is_hermitian(const CMat4& m, double tol) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

bool is_finite(const CMat2& m) {
    for (const Complex& z : m.e)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

bool is_finite(const CMat4& m) {
    for (const Complex& z : m.e)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

double max_abs(const CMat2& m) {
    double out = 0.0;
    for (const Complex& z : m.e) out = std::max(out, std::abs(z));
    return out;
}

double max_abs(const CMat4& m) {
    double out = 0.0;
    for (const Complex& z : m.e) out = std::max(out, std::abs(z));
    return out;
}

double max_abs_diff(const CMat4& a, const CMat4& b) { return max_abs(a - b); }

double max_abs_diff(const CMat2& a, const CMat2& b) {
    double out = 0.0;
    for (std::size_t i = 0; i < 4; ++i) out = std::max(out, std::abs(a.e[i] - b.e[i]));
    return out;
}

namespace {

// Eigenvalues of [[a, b], [c, d]]. The discriminant is formed from the
// diagonal gap rather than tr^2 - 4 det, which cancels catastrophically
// for nearly degenerate pairs.
std::pair<Complex, Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
    const Complex half_tr = 0.5 * (a + d);
    const Complex half_gap = 0.5 * (a - d);
    const Complex disc = std::sqrt(half_gap * half_gap + b * c);
    return {half_tr + disc, half_tr - disc};
}

// Wilkinson shift: the eigenvalue of the trailing 2x2 closest to d.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    auto [l1, l2] = eig2(a, b, c, d);
    return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

// LAPACK-style complex Givens rotation: c real, s complex such that
// [c, s; -conj(s), c] * [x; y] = [r; 0].
void make_givens(Complex x, Complex y, double& c, Complex& s) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    const double nrm = std::hypot(ax, ay);
    if (nrm == 0.0 || ay == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    if (ax == 0.0) {
        c = 0.0;
        s = std::conj(y) / ay;
        return;
    }
    c = ax / nrm;
    s = (x / ax) * (std::conj(y) / nrm);
}

}  // namespace

EigenResult eigenvalues4(const CMat4& m, double tol, int max_iter) {
    std::array<std::array<Complex, 4>, 4> full;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) full[i][j] = m(i, j);

    EigenResult result;
    int nvals = 0;

    // Balancing-style isolation: a row (or column) whose off-diagonal
    // entries are exactly zero pins its diagonal entry as an eigenvalue.
    // The sparse states this solver sees keep their structural zeros exact,
    // and isolating them avoids O(eps) dust on zero eigenvalues, which the
    // sqrt in the concurrence would amplify to O(1e-8).
    std::array<int, 4> act{0, 1, 2, 3};
    int n = 4;
    bool changed = true;
    while (changed && n > 0) {
        changed = false;
        for (int ii = 0; ii < n && !changed; ++ii) {
            const int i = act[static_cast<std::size_t>(ii)];
            bool zero_row = true, zero_col = true;
            for (int jj = 0; jj < n; ++jj) {
                const int j = act[static_cast<std::size_t>(jj)];
                if (j == i) continue;
                if (full[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0.0)
                    zero_row = false;
                if (full[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] != 0.0)
                    zero_col = false;
            }
            if (zero_row || zero_col) {
                result.values[static_cast<std::size_t>(nvals++)] =
                    full[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
                for (int k = ii; k + 1 < n; ++k)
                    act[static_cast<std::size_t>(k)] = act[static_cast<std::size_t>(k + 1)];
                --n;
                changed = true;
            }
        }
    }

    std::array<std::array<Complex, 4>, 4> h{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                full[static_cast<std::size_t>(act[static_cast<std::size_t>(i)])]
                    [static_cast<std::size_t>(act[static_cast<std::size_t>(j)])];

    // Householder reduction of the active block to upper Hessenberg form.
    for (int k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += std::norm(h[i][k]);
        colnorm = std::sqrt(colnorm);
        if (colnorm <= 0.0) continue;

        const Complex x0 = h[k + 1][k];
        const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
        const Complex alpha = -phase * colnorm;

        std::array<Complex, 4> v{};
        v[k + 1] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[i] = h[i][k];
        double vnorm = 0.0;
        for (int i = k + 1; i < n; ++i) vnorm += std::norm(v[i]);
        if (vnorm <= 0.0) continue;
        vnorm = std::sqrt(vnorm);
        for (int i = k + 1; i < n; ++i) v[i] /= vnorm;

        // H <- P H with P = I - 2 v v^H
        for (int j = 0; j < n; ++j) {
            Complex dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h[i][j];
            for (int i = k + 1; i < n; ++i) h[i][j] -= 2.0 * v[i] * dot;
        }
        // H <- H P
        for (int i = 0; i < n; ++i) {
            Complex dot = 0.0;
            for (int j = k + 1; j < n; ++j) dot += h[i][j] * v[j];
            for (int j = k + 1; j < n; ++j) h[i][j] -= 2.0 * dot * std::conj(v[j]);
        }
    }

    const auto negligible = [&](int i) {
        return std::abs(h[i][i - 1]) <= tol * (std::abs(h[i - 1][i - 1]) + std::abs(h[i][i]));
    };

    // Values deflated from the QR iteration land after the isolated ones.
    const auto store = [&](int i, Complex v) {
        result.values[static_cast<std::size_t>(nvals + i)] = v;
    };

    int hi = n - 1;
    int iters = 0;
    int stall = 0;  // QR steps since the last deflation, for exceptional shifts
    while (hi > 0) {
        if (negligible(hi)) {
            h[hi][hi - 1] = 0.0;
            store(hi, h[hi][hi]);
            --hi;
            stall = 0;
            continue;
        }
        int lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;
        if (lo > 0) h[lo][lo - 1] = 0.0;

        if (hi - lo == 1) {
            auto [l1, l2] = eig2(h[lo][lo], h[lo][hi], h[hi][lo], h[hi][hi]);
            store(lo, l1);
            store(hi, l2);
            h[hi][lo] = 0.0;
            hi = lo - 1;
            stall = 0;
            continue;
        }

        if (iters >= max_iter) break;
        ++iters;
        ++stall;

        Complex mu = wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi]);
        if (stall % 8 == 0) mu = h[hi][hi] + 0.75 * std::abs(h[hi][hi - 1]);  // exceptional

        // Explicit shifted QR sweep on the window [lo, hi].
        for (int i = lo; i <= hi; ++i) h[i][i] -= mu;
        std::array<double, 3> cs{};
        std::array<Complex, 3> sn{};
        for (int k = lo; k < hi; ++k) {
            make_givens(h[k][k], h[k + 1][k], cs[k], sn[k]);
            for (int j = k; j < n; ++j) {
                const Complex t1 = h[k][j];
                const Complex t2 = h[k + 1][j];
                h[k][j] = cs[k] * t1 + sn[k] * t2;
                h[k + 1][j] = -std::conj(sn[k]) * t1 + cs[k] * t2;
            }
        }
        for (int k = lo; k < hi; ++k) {
            for (int i = 0; i <= std::min(k + 1, hi); ++i) {
                const Complex t1 = h[i][k];
                const Complex t2 = h[i][k + 1];
                h[i][k] = cs[k] * t1 + std::conj(sn[k]) * t2;
                h[i][k + 1] = -sn[k] * t1 + cs[k] * t2;
            }
        }
        for (int i = lo; i <= hi; ++i) h[i][i] += mu;
    }

    if (hi == 0) {
        store(0, h[0][0]);
        result.converged = true;
    } else if (hi < 0) {
        result.converged = true;
    } else {
        // Budget exhausted: report the current diagonal, flagged unconverged.
        for (int i = 0; i <= hi; ++i) store(i, h[i][i]);
        result.converged = false;
    }
    result.iterations = iters;

    std::sort(result.values.begin(), result.values.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return result;
}

bool is_psd(const CMat4& m, double tol) {
    const EigenResult eig = eigenvalues4(m);
    if (!eig.converged) throw NonConvergenceError("is_psd: eigensolver did not converge");
    for (const Complex& v : eig.values)
        if (v.real() < -tol) return false;
    return true;
}

}  // namespace qfb
