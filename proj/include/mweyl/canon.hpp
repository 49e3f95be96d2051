#pragma once

#include <array>

#include "mweyl/hamiltonian.hpp"
#include "mweyl/sphere.hpp"

namespace mweyl {

/// Transfer matrix T(x0 -> x1) of Ju' = zHu: u(x1) = T u(x0), det T = 1.
/// Constant segments use the closed form exp(-zLJM) (Cayley-Hamilton with
/// Tr JM = 0); phi patches use adaptive 4th-order Magnus steps, halved
/// until the composed result is stable to ~1e-11 relative.
Mobius2 transfer_matrix(const Hamiltonian& h, double x0, double x1, Cplx z);

/// Truncation-L Weyl disk: boundary m(gamma) = (a sin g - c cos g)/(d cos g
/// - b sin g) over the transfer matrix T(0,L,z) = [[a,b],[c,d]]. Diameter
/// from 64 boundary samples with a local refinement pass; representative
/// chosen nearest `prev` (gamma = 0 when prev is null).
struct WeylDisk {
    double L = 0.0;
    Mobius2 boundary_map;
    SpherePoint representative;
    double chordal_diameter = 0.0;
};

WeylDisk weyl_disk(const Hamiltonian& h, double L, Cplx z, const SpherePoint* prev = nullptr);

SpherePoint weyl_boundary_point(const Mobius2& t, double gamma);

struct MFunctionResult {
    SpherePoint m;
    double diameter = 0.0;  // 0 for exact singular-tail evaluations
    double L_used = 0.0;
    bool converged = true;
};

/// m function of the half-line system: exact endpoint solve when the tail
/// is singular, otherwise an L-doubling disk ladder (L = 1, 2, ... capped
/// at 1e6) stopping when the chordal diameter drops below tol. A capped
/// ladder reports converged = false and the last diameter.
MFunctionResult m_function(const Hamiltonian& h, Cplx z, double tol = 1e-6);

/// Sampled solution of Ju' = zHu on [0, x_end].
struct Solution {
    std::vector<double> x;
    std::vector<std::array<Cplx, 2>> u;
    Cplx z{0.0, 0.0};

    static Solution from_samples(std::vector<double> x, std::vector<std::array<Cplx, 2>> u,
                                 Cplx z);
    std::array<Cplx, 2> at(double xq) const;  // linear interpolation
};

/// Propagates u0 across [0, x_end] by transfer matrices on a uniform grid,
/// refining until the integral-equation residual
/// ||u(x) - u(0) + z int_0^x J H u|| <= tol (1 + max||u||) at all nodes.
Solution solve_canonical(const Hamiltonian& h, Cplx z, std::array<Cplx, 2> u0, double x_end,
                         double residual_tol = 1e-9);

/// max-norm integral-equation residual of an arbitrary sampled solution
double solution_residual(const Hamiltonian& h, const Solution& s);

/// quadrature of u* H u over [a, b] (trapezoid-free: per-cell Simpson on
/// linearly interpolated samples); nonnegative up to roundoff
double h_norm(const Hamiltonian& h, const Solution& s, double a, double b);

/// Weyl solution f(x) = T(0,x)(1, m)^t sampled like solve_canonical.
Solution weyl_solution(const Hamiltonian& h, Cplx z, Cplx m, double x_end,
                       double residual_tol = 1e-9);

}  // namespace mweyl
