#include "mweyl/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mweyl/numerics.hpp"

namespace mweyl {

namespace {
constexpr double kPi = std::numbers::pi;
}

Potential Potential::from_function(std::function<double(double)> fn, std::string tag) {
    Potential p;
    p.fn_ = std::move(fn);
    p.tag_ = std::move(tag);
    return p;
}

Potential Potential::constant(double c) {
    return from_function([c](double) { return c; }, "const(" + std::to_string(c) + ")");
}

Potential Potential::from_samples(std::vector<double> x, std::vector<double> v) {
    if (x.size() != v.size() || x.size() < 2)
        throw std::invalid_argument("Potential: bad sample arrays");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] < x[i + 1])) throw std::invalid_argument("Potential: grid not increasing");
    for (double vi : v)
        if (!std::isfinite(vi)) throw std::invalid_argument("Potential: non-finite value");
    Potential p;
    p.x_ = std::move(x);
    p.v_ = std::move(v);
    p.tag_ = "sampled";
    // centered-difference slopes for cubic Hermite cells
    std::size_t n = p.x_.size();
    p.slope_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = i == 0 ? 0 : i - 1;
        std::size_t hi = i + 1 == n ? i : i + 1;
        p.slope_[i] = (p.v_[hi] - p.v_[lo]) / (p.x_[hi] - p.x_[lo]);
    }
    return p;
}

double Potential::operator()(double xq) const {
    if (fn_) return fn_(xq);
    if (xq <= x_.front()) return v_.front();
    if (xq >= x_.back()) return v_.back();
    auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
    return hermite3(x_[i], v_[i], slope_[i], x_[i + 1], v_[i + 1], slope_[i + 1], xq, 0);
}

BoundaryData BoundaryData::lp(double alpha) {
    BoundaryData b;
    b.alpha = alpha;
    b.limit_point = true;
    return b;
}

BoundaryData BoundaryData::regular(double alpha, double b_, double beta) {
    BoundaryData b;
    b.alpha = alpha;
    b.limit_point = false;
    b.b = b_;
    b.beta = beta;
    return b;
}

namespace {

Rk45<2>::Rhs schrodinger_rhs(const Potential& v, Cplx z) {
    return [&v, z](double x, const std::array<Cplx, 2>& y, std::array<Cplx, 2>& dy) {
        dy[0] = y[1];
        dy[1] = (v(x) - z) * y[0];
    };
}

// backward sweep of the endpoint-condition solution with periodic
// renormalization (m functions are ratios, scaling is free)
std::array<Cplx, 2> sweep_to_origin(const Potential& v, Cplx z, double b, double beta) {
    Rk45<2> rk(schrodinger_rhs(v, z), 1e-10);
    rk.set_max_step(0.25 / (1.0 + std::sqrt(std::abs(z))));
    std::array<Cplx, 2> y = {Cplx(-std::sin(beta)), Cplx(std::cos(beta))};
    double x = b;
    while (x > 0.0) {
        double nx = std::max(0.0, x - 1.0);
        y = rk.integrate(y, x, nx);
        double s = std::max(std::abs(y[0]), std::abs(y[1]));
        if (s > 1e12 || (s > 0.0 && s < 1e-12)) {
            y[0] /= s;
            y[1] /= s;
        }
        x = nx;
    }
    return y;
}

}  // namespace

SchrodingerSolution solve_schrodinger(const Potential& v, Cplx z, Cplx y0, Cplx dy0,
                                      const std::vector<double>& x_grid) {
    if (x_grid.empty()) throw std::invalid_argument("solve_schrodinger: empty grid");
    SchrodingerSolution out;
    out.z = z;
    out.x = x_grid;
    out.y.resize(x_grid.size());
    Rk45<2> rk(schrodinger_rhs(v, z), 1e-10);
    rk.set_max_step(0.25 / (1.0 + std::sqrt(std::abs(z))));
    std::array<Cplx, 2> y = {y0, dy0};
    double x = x_grid.front();
    if (x != 0.0) y = rk.integrate(y, 0.0, x);
    out.y[0] = y;
    for (std::size_t i = 1; i < x_grid.size(); ++i) {
        y = rk.integrate(y, x, x_grid[i]);
        x = x_grid[i];
        out.y[i] = y;
    }
    return out;
}

MSchrodingerResult m_schrodinger(const Potential& v, const BoundaryData& bd, Cplx z, double tol) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("m_schrodinger: need Im z > 0");
    Mobius2 rot = Mobius2::rotation(bd.alpha);

    MSchrodingerResult r;
    if (!bd.limit_point) {
        auto y = sweep_to_origin(v, z, bd.b, bd.beta);
        r.m = mobius_apply(rot, SpherePoint(y[1], y[0]));
        r.b_used = bd.b;
        r.spread = 0.0;
        r.converged = true;
        return r;
    }

    double b = 1.0;
    const double cap = 4096.0;
    while (b <= cap) {
        auto y0 = sweep_to_origin(v, z, b, 0.0);
        auto y1 = sweep_to_origin(v, z, b, 0.5 * kPi);
        SpherePoint m0(y0[1], y0[0]), m1(y1[1], y1[0]);
        double gap = chordal_dist(m0, m1);
        r.m = mobius_apply(rot, m0);
        r.b_used = b;
        r.spread = gap;
        if (gap < tol) {
            r.converged = true;
            return r;
        }
        b *= 2.0;
    }
    r.converged = false;
    return r;
}

AsymptoticReport asymptotic_residual(const Potential& v, const BoundaryData& bd,
                                     const std::vector<double>& y_values, double tol) {
    AsymptoticReport rep;
    double sa = std::sin(bd.alpha), ca = std::cos(bd.alpha);
    for (double y : y_values) {
        Cplx z(0.0, y);
        auto mr = m_schrodinger(v, bd, z, tol);
        if (!mr.converged)
            throw NonconvergenceError("asymptotic_residual: m did not converge", mr.spread);
        Cplx pred;
        if (std::abs(sa) < 1e-14) {
            pred = Cplx(0.0, 1.0) * sqrt_uhp(z);
        } else {
            pred = ca / sa + Cplx(0.0, 1.0) / (sa * sa * sqrt_uhp(z));
        }
        rep.y.push_back(y);
        rep.residual.push_back(std::abs(mr.m.value() - pred));
    }
    rep.decreasing = true;
    for (std::size_t i = 0; i + 1 < rep.residual.size(); ++i)
        if (!(rep.residual[i + 1] < rep.residual[i])) rep.decreasing = false;
    return rep;
}

}  // namespace mweyl
