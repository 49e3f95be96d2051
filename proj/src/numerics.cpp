#include "mweyl/numerics.hpp"

namespace mweyl {

// Two-point Taylor interpolation: p matches f, f', f'' at t0 and t1.
// Written in the scaled variable u = (t-t0)/w, p(u) = sum c_k u^k.
double hermite5(double t0, double f0, double d0, double s0,
                double t1, double f1, double d1, double s1,
                double t, int deriv) {
    double w = t1 - t0;
    double u = (t - t0) / w;
    double F1 = f1, D1 = d1 * w, S1 = s1 * w * w;
    double c0 = f0, c1 = d0 * w, c2 = 0.5 * s0 * w * w;
    double r0 = F1 - (c0 + c1 + c2);
    double r1 = D1 - (c1 + 2.0 * c2);
    double r2 = S1 - 2.0 * c2;
    // solve for c3,c4,c5 from the conditions at u=1
    double c3 = 10.0 * r0 - 4.0 * r1 + 0.5 * r2;
    double c4 = -15.0 * r0 + 7.0 * r1 - r2;
    double c5 = 6.0 * r0 - 3.0 * r1 + 0.5 * r2;
    double c[6] = {c0, c1, c2, c3, c4, c5};
    double acc = 0.0;
    switch (deriv) {
        case 0:
            for (int k = 5; k >= 0; --k) acc = acc * u + c[k];
            return acc;
        case 1:
            for (int k = 5; k >= 1; --k) acc = acc * u + k * c[k];
            return acc / w;
        case 2:
            for (int k = 5; k >= 2; --k) acc = acc * u + k * (k - 1) * c[k];
            return acc / (w * w);
        default:
            for (int k = 5; k >= 3; --k) acc = acc * u + k * (k - 1) * (k - 2) * c[k];
            return acc / (w * w * w);
    }
}

double hermite3(double t0, double f0, double d0,
                double t1, double f1, double d1,
                double t, int deriv) {
    double w = t1 - t0;
    double u = (t - t0) / w;
    double c0 = f0, c1 = d0 * w;
    double r0 = f1 - c0 - c1;
    double r1 = d1 * w - c1;
    double c2 = 3.0 * r0 - r1;
    double c3 = r1 - 2.0 * r0;
    double c[4] = {c0, c1, c2, c3};
    double acc = 0.0;
    switch (deriv) {
        case 0:
            for (int k = 3; k >= 0; --k) acc = acc * u + c[k];
            return acc;
        case 1:
            for (int k = 3; k >= 1; --k) acc = acc * u + k * c[k];
            return acc / w;
        default:
            for (int k = 3; k >= 2; --k) acc = acc * u + k * (k - 1) * c[k];
            return acc / (w * w);
    }
}

}  // namespace mweyl
