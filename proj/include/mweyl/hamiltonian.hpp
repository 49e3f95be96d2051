#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "mweyl/mat2.hpp"
#include "mweyl/phi.hpp"

namespace mweyl {

/// Trace-normed 2x2 Hamiltonian on the half line, stored as contiguous
/// segments on [0, x_max) plus a tail. Segments hold either a constant
/// trace-normed psd matrix or a projection-valued patch P_{phi(t)+shift}
/// driven by a shared SmoothPhi. The tail is either a singular interval
/// (constant rank-one projection P_theta) or the affine continuation of the
/// last segment's payload.
class Hamiltonian {
public:
    struct SingularTail {
        double theta;  // angle in [0, pi)
    };
    struct ExtendTail {};
    using Tail = std::variant<SingularTail, ExtendTail>;

    struct Segment {
        double lo, hi;
        bool is_const;
        Mat2 m;                               // when is_const
        std::shared_ptr<const SmoothPhi> phi; // when !is_const, evaluated at absolute t
        double phi_shift = 0.0;
    };

    /// a flat decomposition of [x0, x1] used by quadrature and transfer code
    struct Piece {
        double lo, hi;
        bool is_const;
        Mat2 m;
        const SmoothPhi* phi = nullptr;
        double phi_shift = 0.0;
    };

    Hamiltonian(std::vector<Segment> segments, Tail tail);

    /// constant matrix on [0, x_max) continued indefinitely
    static Hamiltonian constant(const Mat2& m, double x_max = 1.0);
    /// pure singular type: H = P_theta on all of [0, inf)
    static Hamiltonian singular(double theta);
    /// P_{phi} patch on [0, phi.domain_end()) with the given tail
    static Hamiltonian phi_patch(std::shared_ptr<const SmoothPhi> phi, Tail tail);

    Mat2 value(double x) const;
    double x_max() const { return x_max_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const Tail& tail() const { return tail_; }

    bool has_singular_tail() const { return std::holds_alternative<SingularTail>(tail_); }
    double singular_tail_theta() const { return std::get<SingularTail>(tail_).theta; }

    std::vector<Piece> cover(double x0, double x1) const;
    /// segment boundaries inside (x0, x1), for quadrature splitting
    std::vector<double> boundaries(double x0, double x1) const;

    /// conjugation by J: H -> J H J^T; m function becomes -1/m.
    Hamiltonian swapped() const;

private:
    std::vector<Segment> segments_;
    Tail tail_;
    double x_max_;
};

/// 2^n * integral of H over I_{j,n} = [j/2^n, (j+1)/2^n); exact for
/// constant segments, quadrature (tol 1e-10) for phi patches.
Mat2 dyadic_average(const Hamiltonian& h, int level, long index);

/// Nondecreasing step function phi_n over [0, domain_end): each dyadic cell
/// contributes its spectral pair (angle on the lambda-fraction, angle+pi/2
/// on the rest), values lifted by the smallest multiples of pi keeping the
/// realized sequence nondecreasing. Sub-steps of zero length are omitted;
/// sub-steps with eigenvalue weight below drop_frac are also omitted (used
/// by the approximation pipeline to ignore numerically rank-one cells, at
/// an averaging error of at most drop_frac per cell).
StepPhi build_step_phi(const Hamiltonian& h, int level, double domain_end,
                       double drop_frac = 0.0);

/// Weak-* metric sum_{n=1..32} 2^-n d_n/(1+d_n) over the fixed family of
/// compactly supported hat-function directions documented in
/// weakstar_test_family(); remainder of the truncated series < 2^-32.
double weakstar_dist(const Hamiltonian& h1, const Hamiltonian& h2);

struct WeakstarTestFn {
    double support_lo, support_hi;  // triangular hat on this interval
    double e1, e2;                  // constant direction vector
};
std::vector<WeakstarTestFn> weakstar_test_family();  // 32 entries

/// entrywise integral of H over [0, x]; trace equals x up to quadrature
Mat2 cumulative_integral(const Hamiltonian& h, double x);

}  // namespace mweyl
