#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mweyl/sphere.hpp"

namespace mweyl {

/// Potential of -y'' + V y = z y. Either a closed-form callable (tagged) or
/// samples on an x-grid with cubic Hermite interpolation; beyond the last
/// sample the value is held constant.
class Potential {
public:
    static Potential from_function(std::function<double(double)> fn, std::string tag);
    static Potential from_samples(std::vector<double> x, std::vector<double> v);
    static Potential zero() { return from_function([](double) { return 0.0; }, "zero"); }
    static Potential constant(double c);

    double operator()(double x) const;
    const std::string& tag() const { return tag_; }
    bool sampled() const { return fn_ == nullptr; }
    const std::vector<double>& sample_x() const { return x_; }
    const std::vector<double>& sample_v() const { return v_; }

private:
    std::function<double(double)> fn_;
    std::vector<double> x_, v_, slope_;
    std::string tag_;
};

struct BoundaryData {
    double alpha = 0.0;       // y(0) cos a - y'(0) sin a = 0, a in [0, pi)
    bool limit_point = true;  // endpoint at infinity
    double b = 0.0;           // regular endpoint position
    double beta = 0.0;        // y(b) cos B + y'(b) sin B = 0, B in [0, pi)

    static BoundaryData lp(double alpha);
    static BoundaryData regular(double alpha, double b, double beta);
};

struct SchrodingerSolution {
    std::vector<double> x;
    std::vector<std::array<Cplx, 2>> y;  // (y, y')
    Cplx z{0.0, 0.0};
};

/// Adaptive RK45 (local tolerance 1e-10) sampled at the requested grid.
SchrodingerSolution solve_schrodinger(const Potential& v, Cplx z, Cplx y0, Cplx dy0,
                                      const std::vector<double>& x_grid);

struct MSchrodingerResult {
    SpherePoint m;
    double b_used = 0.0;
    double spread = 0.0;  // chordal gap of the two trial endpoint angles
    bool converged = true;
};

/// Weyl-Titchmarsh m function: regular endpoints integrate the endpoint
/// condition backward and rotate by alpha; limit-point endpoints run a
/// cutoff ladder with trial angles beta in {0, pi/2} until the two m values
/// agree within tol (two-point proxy for the contracting Weyl circle).
MSchrodingerResult m_schrodinger(const Potential& v, const BoundaryData& bd, Cplx z,
                                 double tol = 1e-8);

struct AsymptoticReport {
    std::vector<double> y;
    std::vector<double> residual;
    bool decreasing = false;
};

/// Residuals of the large-z expansion along z = iy: for alpha = 0 compare
/// against i sqrt(z), otherwise against cot(alpha) + i/(sin^2(alpha)
/// sqrt(z)).
AsymptoticReport asymptotic_residual(const Potential& v, const BoundaryData& bd,
                                     const std::vector<double>& y_values, double tol = 1e-9);

}  // namespace mweyl
