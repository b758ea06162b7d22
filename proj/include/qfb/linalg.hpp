#pragma once

#include <array>
#include <complex>

namespace qfb {

using Complex = std::complex<double>;

/// Dense 2x2 complex matrix, row major.
///
/// The single-qubit basis order is {|1>, |0>} throughout, so that the
/// two-qubit computational basis B = {|11>, |10>, |01>, |00>} is the plain
/// Kronecker square of it.
struct CMat2 {
    std::array<Complex, 4> e{};

    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(2 * r + c)]; }
    const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(2 * r + c)]; }

    static CMat2 zero() { return {}; }
    static CMat2 identity();
};

/// Dense 4x4 complex matrix, row major, basis B = {|11>, |10>, |01>, |00>}
/// with the first tensor factor indexing qubit A.
struct CMat4 {
    std::array<Complex, 16> e{};

    Complex& operator()(int r, int c) { return e[static_cast<std::size_t>(4 * r + c)]; }
    const Complex& operator()(int r, int c) const { return e[static_cast<std::size_t>(4 * r + c)]; }

    static CMat4 zero() { return {}; }
    static CMat4 identity();
};

CMat2 operator+(const CMat2& a, const CMat2& b);
CMat2 operator-(const CMat2& a, const CMat2& b);
CMat2 operator*(const CMat2& a, const CMat2& b);
CMat2 operator*(Complex s, const CMat2& a);
CMat4 operator+(const CMat4& a, const CMat4& b);
CMat4 operator-(const CMat4& a, const CMat4& b);
CMat4 operator*(const CMat4& a, const CMat4& b);
CMat4 operator*(Complex s, const CMat4& a);

CMat2 dagger(const CMat2& a);
CMat4 dagger(const CMat4& a);
CMat2 conjugate(const CMat2& a);
CMat4 conjugate(const CMat4& a);
Complex trace(const CMat2& a);
Complex trace(const CMat4& a);

/// Kronecker product; out[(2i+k),(2j+l)] = a(i,j) * b(k,l).
CMat4 tensor(const CMat2& a, const CMat2& b);

/// Trace out the second factor: out(i,j) = sum_k in(2i+k, 2j+k).
CMat2 partial_trace_B(const CMat4& rho);

bool is_hermitian(const CMat4& m, double tol);
bool is_finite(const CMat2& m);
bool is_finite(const CMat4& m);

/// Largest entrywise modulus.
double max_abs(const CMat2& m);
double max_abs(const CMat4& m);
double max_abs_diff(const CMat4& a, const CMat4& b);
double max_abs_diff(const CMat2& a, const CMat2& b);

struct EigenResult {
    std::array<Complex, 4> values{};  // sorted by descending real part
    int iterations = 0;
    bool converged = false;
};

/// Eigenvalues of a general complex 4x4 matrix: Householder reduction to
/// upper Hessenberg form followed by Wilkinson-shifted QR iteration.
/// `converged == false` means the iteration budget ran out; the values are
/// then not trustworthy and callers must not use them silently.
EigenResult eigenvalues4(const CMat4& m, double tol = 1e-12, int max_iter = 200);

/// Positive semidefinite up to an eigenvalue floor of -tol.
/// Throws NonConvergenceError if the eigensolver fails.
bool is_psd(const CMat4& m, double tol);

}  // namespace qfb
