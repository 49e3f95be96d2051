#pragma once

#include <functional>
#include <vector>

#include "mweyl/util.hpp"

namespace mweyl {

/// Point of the Riemann sphere in homogeneous coordinates [p:q],
/// p/q when finite, [1:0] = infinity. Normalized on construction so the
/// larger component has magnitude 1; projective equality throughout.
struct SpherePoint {
    Cplx p{0.0, 0.0};
    Cplx q{1.0, 0.0};

    SpherePoint() = default;
    SpherePoint(Cplx p, Cplx q);

    static SpherePoint finite(Cplx w) { return SpherePoint(w, Cplx(1.0)); }
    static SpherePoint infinity() { return SpherePoint(Cplx(1.0), Cplx(0.0)); }

    bool is_infinite(double rel_tol = 1e-13) const;
    /// p/q; +inf-like values when is_infinite(). Callers wanting
    /// overflow-free arithmetic should stay projective.
    Cplx value() const { return p / q; }
    /// -1/w in homogeneous coordinates, [-q:p]; never overflows.
    SpherePoint negative_reciprocal() const { return SpherePoint(-q, p); }
};

/// 2x2 complex matrix acting on the sphere as a linear fractional
/// transformation. Nonsingularity is checked relative to entry size.
struct Mobius2 {
    Cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    Mobius2() = default;
    Mobius2(Cplx a, Cplx b, Cplx c, Cplx d) : a(a), b(b), c(c), d(d) {}

    static Mobius2 identity() { return Mobius2(); }
    /// [[cos a, sin a],[-sin a, cos a]]; the boundary-condition rotation.
    static Mobius2 rotation(double alpha);

    Cplx det() const { return a * d - b * c; }
    double entry_scale() const;
    bool nonsingular(double rel_tol = 1e-12) const;

    Mobius2 operator*(const Mobius2& o) const;
    Mobius2 inverse() const;
    /// adjugate; equals the inverse for det-1 matrices (transfer matrices)
    Mobius2 adjugate() const { return Mobius2(d, -b, -c, a); }
};

/// Homogeneous action [a p + b q : c p + d q]. Group homomorphism:
/// (M1*M2)(w) == M1(M2(w)) projectively.
SpherePoint mobius_apply(const Mobius2& m, const SpherePoint& w);

/// Chordal metric of the sphere, 2|p1 q2 - p2 q1| / (|w1| |w2|) with
/// |w| = sqrt(|p|^2+|q|^2). Range [0,2]; 0 iff projectively equal;
/// antipodal points (0 and infinity) at distance 2.
double chordal_dist(const SpherePoint& w1, const SpherePoint& w2);

/// max over the grid of chordal_dist(f(z), g(z)).
double grid_dist(const std::function<SpherePoint(Cplx)>& f,
                 const std::function<SpherePoint(Cplx)>& g,
                 const std::vector<Cplx>& grid);

}  // namespace mweyl
