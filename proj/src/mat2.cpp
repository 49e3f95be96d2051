#include "mweyl/mat2.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mweyl {

double Mat2::op_norm() const {
    double h = 0.5 * (a11 + a22);
    double r = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
    return std::max(std::abs(h + r), std::abs(h - r));
}

bool Mat2::is_psd(double tol) const {
    double h = 0.5 * (a11 + a22);
    double r = std::sqrt(0.25 * (a11 - a22) * (a11 - a22) + a12 * a12);
    return h - r >= -tol;
}

void Mat2::validate_trace_normed(double tol, const std::string& where) const {
    if (!std::isfinite(a11) || !std::isfinite(a12) || !std::isfinite(a22))
        throw std::invalid_argument(where + ": non-finite matrix entry");
    if (std::abs(trace() - 1.0) > tol)
        throw std::invalid_argument(where + ": matrix is not trace-normed");
    if (!is_psd(tol))
        throw std::invalid_argument(where + ": matrix is not positive semidefinite");
}

Mat2 p_matrix(double theta) {
    double r = std::fmod(theta, std::numbers::pi);  // exact in IEEE arithmetic
    if (r < 0.0) r += std::numbers::pi;
    double c = std::cos(r), s = std::sin(r);
    return Mat2(c * c, c * s, s * s);
}

EigenPair eigen_decompose(const Mat2& m) {
    m.validate_trace_normed(1e-9, "eigen_decompose");
    double dx = m.a11 - m.a22;
    double dy = 2.0 * m.a12;
    double r = std::hypot(dx, dy);
    EigenPair e;
    e.lambda = 0.5 * (1.0 + r);
    if (r < 1e-15) {
        e.phi = 0.0;  // degenerate pair: any direction works, pick 0
        e.lambda = 0.5;
        return e;
    }
    // M - I/2 = (r/2) [[cos 2phi, sin 2phi],[sin 2phi, -cos 2phi]]
    double phi = 0.5 * std::atan2(dy, dx);
    if (phi < 0.0) phi += std::numbers::pi;
    if (phi >= std::numbers::pi) phi -= std::numbers::pi;
    e.phi = phi;
    return e;
}

}  // namespace mweyl
