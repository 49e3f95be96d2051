#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mweyl/bspline.hpp"
#include "mweyl/util.hpp"

namespace mweyl {

/// Nondecreasing step function on [0, X): edges 0 = e_0 < ... < e_M = X,
/// value[i] on [e_i, e_{i+1}).
struct StepPhi {
    std::vector<double> edges;
    std::vector<double> values;

    double domain_end() const { return edges.back(); }
    double operator()(double t) const;
    void lift(double offset);
    void validate() const;
    /// copy with exactly-equal adjacent plateaus merged
    StepPhi merged(double tol = 0.0) const;
};

/// Continuous piecewise-linear function with strictly increasing nodes and
/// strictly increasing values; extended affinely outside the node range.
struct PwlPhi {
    std::vector<double> t;
    std::vector<double> phi;

    double domain_end() const { return t.back(); }
    double operator()(double x) const;
    double slope(std::size_t piece) const;
    void validate() const;
};

/// C^3 function stored as (t, phi, phi', phi'', phi''') samples, extended
/// affinely outside the sampled range. When produced by mollify() an exact
/// piecewise-polynomial backend (slope-1 base line plus kernel-smoothed
/// slope corners) is attached and evaluation is closed-form.
class SmoothPhi {
public:
    struct Corner {
        double t;
        double jump;  // slope jump of the underlying pwl
    };

    static SmoothPhi from_samples(std::vector<double> grid, std::vector<double> phi,
                                  std::vector<double> d1, std::vector<double> d2,
                                  std::vector<double> d3);
    /// samples the callable fn(t, deriv) on `grid` and keeps it as backend
    static SmoothPhi from_function(std::function<double(double, int)> fn,
                                   std::vector<double> grid);

    double operator()(double t) const { return eval(t, 0); }
    double eval(double t, int deriv) const;

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& phi() const { return phi_; }
    const std::vector<double>& d1() const { return d1_; }
    const std::vector<double>& d2() const { return d2_; }
    const std::vector<double>& d3() const { return d3_; }
    double domain_end() const { return grid_.back(); }

    /// t-values where the exact backend's piecewise polynomial changes
    /// (kernel knots); empty for sampled-only functions.
    std::vector<double> breakpoints(double lo, double hi) const;
    bool has_exact_backend() const { return exact_mollified_ || exact_fn_; }

    void validate() const;

    friend SmoothPhi mollify(const PwlPhi& pwl, double kernel_width);

private:
    SmoothPhi() = default;
    void sample_from_backend();
    double eval_mollified(double t, int deriv) const;

    std::vector<double> grid_, phi_, d1_, d2_, d3_;

    // mollified backend
    struct MollifiedData {
        double a0, b0;  // base line a0 + b0 t
        std::vector<Corner> corners;
        BsplineKernel kernel;
        // prefix sums of jump and jump*t for O(1) far-left contributions
        std::vector<double> pref_j, pref_jt;
    };
    std::shared_ptr<const MollifiedData> exact_mollified_;
    std::shared_ptr<const std::function<double(double, int)>> exact_fn_;
};

/// Strictly increasing continuous pwl approximation of a nondecreasing step
/// function: starts at (0, alpha) with slope exactly 1 on [0, delta], turns
/// each jump into a width-eps corner segment, and tilts plateaus by a small
/// positive slope so the result straddles each step value. The step is
/// lifted by a multiple of pi when needed to keep alpha below the first
/// plateau (the projection family is pi-periodic, so lifts are free).
/// Plateaus shorter than 2.5*eps are absorbed into the adjacent corner.
PwlPhi pwl_approximate(const StepPhi& step, double alpha, double corner_width_eps,
                       double initial_width_delta);

/// Convolution with the degree-4 B-spline kernel of width h (support 5h/2).
/// Requires h < delta/2 where delta is the first pwl piece, so the slope-1
/// initial segment survives untouched: phi(0), phi'(0), phi''(0) are exact.
SmoothPhi mollify(const PwlPhi& pwl, double kernel_width);

/// L1 distance between a pwl (or smooth) function and a step function over
/// [a, b], by quadrature split at all nodes.
double l1_distance(const std::function<double(double)>& f, const StepPhi& step, double a, double b,
                   double tol = 1e-10);

}  // namespace mweyl
