#pragma once

namespace mweyl {

/// Centered degree-4 (order-5) B-spline kernel, scaled so the total support
/// is [-5h/4, 5h/4] for width parameter h. C^3, nonnegative, unit mass,
/// symmetric; convolution against it reproduces affine functions exactly.
///
/// ramp2/ramp1 are the second/first antiderivatives arranged so that
/// (x)_+ * kernel == ramp2: ramp2(u)=0 for u <= -S, ramp2(u)=u for u >= S.
class BsplineKernel {
public:
    explicit BsplineKernel(double width_h);

    double support() const { return 2.5 * s_; }
    double scale() const { return s_; }

    double ramp2(double u) const;   // (.)_+ convolved with the kernel
    double ramp1(double u) const;   // its derivative, 0 -> 1 smoothstep
    double density(double u) const; // kernel itself
    double ddensity(double u) const;

private:
    double s_;  // natural-unit scale, h/2
};

}  // namespace mweyl
