#pragma once

#include <memory>
#include <optional>

#include "mweyl/hamiltonian.hpp"
#include "mweyl/schrodinger.hpp"

namespace mweyl {

/// Variable change between -y'' + Vy = zy on (0,b) and the projection-
/// valued canonical system: t(x) = int (u0^2 + v0^2), u0 + i v0 = R e^{i
/// phi}, with u0, v0 the z=0 solutions for the boundary angle alpha.
/// Sampled along the solve; monotone interpolation both ways.
class TransformData {
public:
    double alpha = 0.0;
    std::vector<double> x, t, r, phi;
    std::vector<double> dt_dx;   // R^2
    std::vector<double> d2t_dx;  // 2(u0 u0' + v0 v0')
    double t_b = 0.0;            // t at the endpoint (or at the working cutoff)
    bool regular = false;
    double beta_tilde = 0.0;      // canonical tail angle when regular
    double schrodinger_b = 0.0;   // regular-endpoint data on the Schrodinger side
    double schrodinger_beta = 0.0;

    double t_of_x(double xq) const;
    double x_of_t(double tq) const;  // Newton-refined inverse, tol 1e-10
    double r_of_x(double xq) const;
    double phi_of_x(double xq) const;
};

struct SchrodingerToCanonical {
    Hamiltonian h;
    std::shared_ptr<const SmoothPhi> phi;  // angle as a function of t
    TransformData data;
};

/// Forward direction: solves u0, v0 at z = 0, extracts the unwrapped angle
/// and builds H = P_phi. Regular endpoints produce a finite t_b and a
/// singular tail of type beta_tilde (the endpoint condition pushed through
/// the inverse connection matrix at b); limit-point endpoints are sampled
/// up to working_cutoff and continued affinely.
SchrodingerToCanonical schrodinger_to_canonical(const Potential& v, const BoundaryData& bd,
                                                double working_cutoff = 48.0);

struct CanonicalToSchrodinger {
    Potential v;
    double alpha = 0.0;
    TransformData data;
};

/// Converse direction: x(t) = int sqrt(phi'), R = (phi')^{-1/4}, and
/// V = (7/16) phi_tt^2/phi_t^3 - (1/4) phi_ttt/phi_t^2 - phi_t along x(t).
/// Requires phi' > 0 and the slope-1 initial data phi'(0)=1, phi''(0)=0
/// within 1e-6.
CanonicalToSchrodinger canonical_to_schrodinger(const SmoothPhi& phi, double t_lo, double t_hi);

/// Schrodinger-side regular endpoint (b, beta) matching a canonical
/// singular tail of type beta_tilde at the end of a converse transform.
std::pair<double, double> schrodinger_endpoint(const CanonicalToSchrodinger& cs,
                                               double beta_tilde);

/// sup |c2s(s2c(V, alpha)).V - V| over [window_lo, window_hi]
double roundtrip_residual(const Potential& v, double alpha, double window_lo, double window_hi);

/// Independent check of the potential formula: R resampled on a uniform
/// x grid, R'' by 4th-order finite differences, sup |(R''/R - R^-4) -
/// V_tform| over the interior. Both samplers take x.
double vform_crosscheck(const std::function<double(double)>& r_of_x,
                        const std::function<double(double)>& vt_of_x, double x_lo, double x_hi,
                        int n = 2048);

}  // namespace mweyl
