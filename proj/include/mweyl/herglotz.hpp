#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "mweyl/sphere.hpp"

namespace mweyl {

/// Herglotz function in the kernel representation
///   F(z) = A + int (1+tz)/(t-z) d rho(t),
/// rho a finite positive measure on the one-point compactification of the
/// line: point masses, a piecewise-linear density between grid samples,
/// and a mass at infinity (the kernel limit there is z).
struct HerglotzSpec {
    double a = 0.0;
    std::vector<std::pair<double, double>> atoms;  // (t, weight > 0)
    std::vector<double> density_grid;              // strictly increasing
    std::vector<double> density_vals;              // nonnegative
    double mass_at_inf = 0.0;

    void validate() const;
    double total_mass() const;
};

/// kernel (1+tz)/(t-z)
Cplx herglotz_kernel(double t, Cplx z);

/// Evaluate F(z) for Im z > 0. Density cells are integrated by adaptive
/// Simpson at relative tolerance 1e-9. The result has Im >= 0 up to
/// quadrature error.
Cplx eval_herglotz(const HerglotzSpec& spec, Cplx z);

/// density sqrt(t) / (pi (1 + t^2)) of the m function i sqrt(z)
double free_density(double t);

/// The A-constant of i sqrt(z) in the kernel representation, Re(i sqrt(i))
/// = -1/sqrt(2). Used when reconstructing functions from measures whose
/// tails match the free one.
inline constexpr double free_reference_constant() { return -0.70710678118654752; }

/// Measure part of i sqrt(z): density sampled on a power-law grid over
/// (0, t_max]; no atoms, no mass at infinity.
HerglotzSpec free_spectral_measure(double t_max, int grid_points);

/// Truncation: measure restricted to (-n, n), the free density appended on
/// [n, tail_t_max], and the mass at infinity moved to a point mass at n.
HerglotzSpec truncate_measure(const HerglotzSpec& spec, int n, double tail_t_max = 1e6,
                              int tail_points = 2048);

struct MeasureTestFn {
    std::function<double(double)> f;
    double at_inf = 0.0;
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();
    std::string name;
};

/// serial: 1/(1+t^2), t/(1+t^2), t^2/(1+t^2) (the one seeing infinity),
/// then width-1/2 hats centered at 0, 1/4, -1/4, 1/2, ... (32 entries)
std::vector<MeasureTestFn> measure_test_family();

double measure_integral(const HerglotzSpec& spec, const MeasureTestFn& fn);

/// sum_k 2^-k |int f_k d(rho1 - rho2)| / (1 + |.|) over the family
double measure_weak_dist(const HerglotzSpec& rho1, const HerglotzSpec& rho2,
                         const std::vector<MeasureTestFn>& family);

/// Least-squares real constant: minimizes sum |A + S(z_k) - F(z_k)|^2 where
/// S evaluates the measure part of `spec` (its A field ignored).
double fit_constant(const HerglotzSpec& spec, const std::function<Cplx(Cplx)>& target,
                    const std::vector<Cplx>& grid);

}  // namespace mweyl
