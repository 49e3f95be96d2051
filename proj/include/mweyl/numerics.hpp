#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "mweyl/util.hpp"

namespace mweyl {

inline double mag(double x) { return std::abs(x); }
inline double mag(const Cplx& x) { return std::abs(x); }
template <typename T, std::size_t N>
double mag(const std::array<T, N>& v) {
    double s = 0.0;
    for (const auto& x : v) s = std::max(s, mag(x));
    return s;
}

/// Adaptive Simpson with Richardson acceptance test. Works for any T with
/// +, -, double*, and mag(); tol is absolute on the whole interval.
template <typename F, typename T = double>
T adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
    struct Rec {
        const F& f;
        int max_depth;
        T run(double a, double m, double b, const T& fa, const T& fm, const T& fb,
              const T& whole, double tol, int depth) const {
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            T flm = f(lm), frm = f(rm);
            T left = ((m - a) / 6.0) * (fa + 4.0 * flm + fm);
            T right = ((b - m) / 6.0) * (fm + 4.0 * frm + fb);
            T sum = left + right;
            if (depth >= max_depth || mag(sum - whole) <= 15.0 * tol)
                return sum + (1.0 / 15.0) * (sum - whole);
            return run(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
                   run(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
        }
    };
    if (a == b) return T{};
    double m = 0.5 * (a + b);
    T fa = f(a), fm = f(m), fb = f(b);
    T whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
    return Rec{f, max_depth}.run(a, m, b, fa, fm, fb, whole, tol, 0);
}

/// Integrate f over [a,b] splitting across sorted interior breakpoints.
template <typename F, typename T = double>
T adaptive_simpson_split(const F& f, double a, double b, const std::vector<double>& breaks,
                         double tol) {
    T total{};
    double lo = a;
    std::size_t pieces = breaks.size() + 1;
    for (double br : breaks) {
        if (br <= lo || br >= b) continue;
        total = total + adaptive_simpson<F, T>(f, lo, br, tol / double(pieces));
        lo = br;
    }
    return total + adaptive_simpson<F, T>(f, lo, b, tol / double(pieces));
}

/// Dormand-Prince 5(4) embedded pair, adaptive step, complex N-state.
/// Integrates from x0 to x1 (either direction), invoking `sample` at every
/// accepted step endpoint. Throws NonconvergenceError on step underflow.
template <std::size_t N>
class Rk45 {
public:
    using State = std::array<Cplx, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    explicit Rk45(Rhs rhs, double tol = 1e-10) : rhs_(std::move(rhs)), tol_(tol) {}

    void set_max_step(double h) { max_step_ = h; }

    State integrate(State y, double x0, double x1,
                    const std::function<void(double, const State&)>* sample = nullptr) const {
        if (x0 == x1) return y;
        double dir = x1 > x0 ? 1.0 : -1.0;
        double x = x0;
        double h = dir * std::min(max_step_, 0.1 * std::abs(x1 - x0) + 1e-30);
        State k[7], ytmp, y5, y4;
        rhs_(x, y, k[0]);
        int guard = 0;
        while (dir * (x1 - x) > 0.0) {
            if (++guard > 2000000)
                throw NonconvergenceError("rk45: step count exceeded", std::abs(h));
            if (dir * (x + h - x1) > 0.0) h = x1 - x;
            for (int s = 1; s < 7; ++s) {
                for (std::size_t i = 0; i < N; ++i) {
                    Cplx acc{0.0, 0.0};
                    for (int j = 0; j < s; ++j) acc += A_[s][j] * k[j][i];
                    ytmp[i] = y[i] + h * acc;
                }
                rhs_(x + C_[s] * h, ytmp, k[s]);
            }
            double err = 0.0, scale = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                Cplx acc5{0.0, 0.0}, acc4{0.0, 0.0};
                for (int j = 0; j < 7; ++j) {
                    acc5 += B5_[j] * k[j][i];
                    acc4 += B4_[j] * k[j][i];
                }
                y5[i] = y[i] + h * acc5;
                y4[i] = y[i] + h * acc4;
                err = std::max(err, std::abs(y5[i] - y4[i]));
                scale = std::max(scale, std::abs(y5[i]));
            }
            double tol = tol_ * (1.0 + scale);
            if (err <= tol) {
                x += h;
                y = y5;
                k[0] = k[6];  // FSAL
                if (sample) (*sample)(x, y);
            }
            double fac = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
            fac = std::min(5.0, std::max(0.2, fac));
            h *= fac;
            if (std::abs(h) > max_step_) h = dir * max_step_;
            if (std::abs(h) < 1e-14 * (1.0 + std::abs(x)))
                throw NonconvergenceError("rk45: step size underflow", std::abs(h));
        }
        return y;
    }

private:
    Rhs rhs_;
    double tol_;
    double max_step_ = 1e30;

    static constexpr double C_[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double A_[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static constexpr double B5_[7] = {35.0 / 384,      0.0,          500.0 / 1113, 125.0 / 192,
                                      -2187.0 / 6784,  11.0 / 84,    0.0};
    static constexpr double B4_[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695, 393.0 / 640,
                                      -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
};

/// Two-point interpolation matching value and first two derivatives at both
/// ends (quintic). Evaluates the derivative of order `deriv` (0..3).
double hermite5(double t0, double f0, double d0, double s0,
                double t1, double f1, double d1, double s1,
                double t, int deriv = 0);

/// Cubic Hermite on (value, slope) pairs.
double hermite3(double t0, double f0, double d0,
                double t1, double f1, double d1,
                double t, int deriv = 0);

}  // namespace mweyl
