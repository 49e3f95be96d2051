#include "mweyl/bspline.hpp"

#include <cmath>
#include <stdexcept>

namespace mweyl {

namespace {

constexpr double kBinom5[6] = {1.0, -5.0, 10.0, -10.0, 5.0, -1.0};  // (-1)^k C(5,k)

double powp(double t, int n) {
    if (t <= 0.0) return 0.0;
    double r = t;
    for (int i = 1; i < n; ++i) r *= t;
    return r;
}

// cardinal B-spline of order 5 shifted to be centered: support [-2.5, 2.5]
double b4(double x) {
    double t = x + 2.5;
    if (t <= 0.0 || t >= 5.0) return 0.0;
    double acc = 0.0;
    for (int k = 0; k < 6; ++k) acc += kBinom5[k] * powp(t - k, 4);
    return acc / 24.0;
}

double b4d(double x) {
    double t = x + 2.5;
    if (t <= 0.0 || t >= 5.0) return 0.0;
    double acc = 0.0;
    for (int k = 0; k < 6; ++k) acc += kBinom5[k] * powp(t - k, 3);
    return acc / 6.0;
}

double b4_int1(double x) {  // integral from -inf
    if (x <= -2.5) return 0.0;
    if (x >= 2.5) return 1.0;
    double t = x + 2.5;
    double acc = 0.0;
    for (int k = 0; k < 6; ++k) acc += kBinom5[k] * powp(t - k, 5);
    return acc / 120.0;
}

double b4_int2(double x) {  // second antiderivative, == x for x >= 2.5
    if (x <= -2.5) return 0.0;
    if (x >= 2.5) return x;
    double t = x + 2.5;
    double acc = 0.0;
    for (int k = 0; k < 6; ++k) acc += kBinom5[k] * powp(t - k, 6);
    return acc / 720.0;
}

}  // namespace

BsplineKernel::BsplineKernel(double width_h) : s_(0.5 * width_h) {
    if (!(width_h > 0.0)) throw std::invalid_argument("BsplineKernel: width must be positive");
}

double BsplineKernel::ramp2(double u) const { return s_ * b4_int2(u / s_); }
double BsplineKernel::ramp1(double u) const { return b4_int1(u / s_); }
double BsplineKernel::density(double u) const { return b4(u / s_) / s_; }
double BsplineKernel::ddensity(double u) const { return b4d(u / s_) / (s_ * s_); }

}  // namespace mweyl
