#pragma once

#include <string>

#include "mweyl/util.hpp"

namespace mweyl {

/// Real symmetric 2x2 matrix. Hamiltonian values must additionally be
/// positive semidefinite with unit trace; check with validate_trace_normed.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a22 = 0.0;

    Mat2() = default;
    Mat2(double a11, double a12, double a22) : a11(a11), a12(a12), a22(a22) {}

    static Mat2 zero() { return Mat2(); }
    static Mat2 half_identity() { return Mat2(0.5, 0.0, 0.5); }

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a12; }
    /// spectral (operator) norm
    double op_norm() const;

    Mat2 operator+(const Mat2& o) const { return Mat2(a11 + o.a11, a12 + o.a12, a22 + o.a22); }
    Mat2 operator-(const Mat2& o) const { return Mat2(a11 - o.a11, a12 - o.a12, a22 - o.a22); }

    bool is_psd(double tol = 1e-12) const;
    /// throws std::invalid_argument with `where` in the message unless
    /// symmetric-psd with |trace-1| <= tol
    void validate_trace_normed(double tol, const std::string& where) const;
};

inline Mat2 operator*(double s, const Mat2& m) { return Mat2(s * m.a11, s * m.a12, s * m.a22); }
inline Mat2 operator*(const Mat2& m, double s) { return s * m; }

/// quadratic form e^* M e for a real direction e=(e1,e2)
inline double quad_form(const Mat2& m, double e1, double e2) {
    return m.a11 * e1 * e1 + 2.0 * m.a12 * e1 * e2 + m.a22 * e2 * e2;
}

/// entrywise max magnitude, for quadrature error control
inline double mag(const Mat2& m) {
    double x = std::abs(m.a11);
    x = x > std::abs(m.a12) ? x : std::abs(m.a12);
    return x > std::abs(m.a22) ? x : std::abs(m.a22);
}

/// Rank-one projection [[cos^2 t, cos t sin t],[cos t sin t, sin^2 t]].
/// The angle is reduced mod pi with exact IEEE fmod, so inputs that differ
/// by an exactly-representable multiple of pi produce bit-identical
/// matrices. Trace 1, det 0.
Mat2 p_matrix(double theta);

struct EigenPair {
    double lambda;  // larger eigenvalue, in [1/2, 1] for trace-normed psd
    double phi;     // angle of its unit eigenvector, normalized to [0, pi)
};

/// Spectral decomposition M = lambda P_phi + (1-lambda) P_{phi+pi/2} of a
/// trace-normed psd matrix. Degenerate eigenvalue (lambda == 1/2) returns
/// phi = 0.
EigenPair eigen_decompose(const Mat2& m);

}  // namespace mweyl
