#include "mweyl/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mweyl/numerics.hpp"

namespace mweyl {

namespace {
constexpr double kPi = std::numbers::pi;

std::size_t bracket(const std::vector<double>& v, double q) {
    if (q <= v.front()) return 0;
    if (q >= v.back()) return v.size() - 2;
    auto it = std::upper_bound(v.begin(), v.end(), q);
    return static_cast<std::size_t>(it - v.begin()) - 1;
}
}  // namespace

double TransformData::t_of_x(double xq) const {
    std::size_t i = bracket(x, xq);
    return hermite5(x[i], t[i], dt_dx[i], d2t_dx[i], x[i + 1], t[i + 1], dt_dx[i + 1],
                    d2t_dx[i + 1], xq, 0);
}

double TransformData::x_of_t(double tq) const {
    std::size_t i = bracket(t, tq);
    double lo = x[i], hi = x[i + 1];
    double xm = lo + (hi - lo) * (tq - t[i]) / (t[i + 1] - t[i]);
    for (int it = 0; it < 60; ++it) {
        double f = hermite5(x[i], t[i], dt_dx[i], d2t_dx[i], x[i + 1], t[i + 1], dt_dx[i + 1],
                            d2t_dx[i + 1], xm, 0) -
                   tq;
        if (std::abs(f) <= 1e-10 * (1.0 + std::abs(tq))) break;
        double df = hermite5(x[i], t[i], dt_dx[i], d2t_dx[i], x[i + 1], t[i + 1], dt_dx[i + 1],
                             d2t_dx[i + 1], xm, 1);
        double step = f / df;
        xm -= step;
        if (xm < lo) xm = 0.5 * (lo + xm + step);  // bisect back into the bracket
        if (xm > hi) xm = 0.5 * (hi + xm + step);
        xm = std::min(hi, std::max(lo, xm));
    }
    return xm;
}

double TransformData::r_of_x(double xq) const {
    std::size_t i = bracket(x, xq);
    double w = (xq - x[i]) / (x[i + 1] - x[i]);
    return r[i] * (1.0 - w) + r[i + 1] * w;
}

double TransformData::phi_of_x(double xq) const {
    std::size_t i = bracket(x, xq);
    // phi_x = 1/R^2
    return hermite3(x[i], phi[i], 1.0 / (r[i] * r[i]), x[i + 1], phi[i + 1],
                    1.0 / (r[i + 1] * r[i + 1]), xq, 0);
}

SchrodingerToCanonical schrodinger_to_canonical(const Potential& v, const BoundaryData& bd,
                                                double working_cutoff) {
    double b = bd.limit_point ? working_cutoff : bd.b;
    if (!(b > 0.0)) throw std::invalid_argument("schrodinger_to_canonical: empty domain");
    double alpha = bd.alpha;

    // z = 0 system: state (u0, u0', v0, v0', t), all real
    Rk45<5> rk(
        [&v](double xx, const std::array<Cplx, 5>& y, std::array<Cplx, 5>& dy) {
            double vv = v(xx);
            dy[0] = y[1];
            dy[1] = vv * y[0];
            dy[2] = y[3];
            dy[3] = vv * y[2];
            dy[4] = y[0] * y[0] + y[2] * y[2];
        },
        1e-11);

    std::array<Cplx, 5> st = {std::cos(alpha), -std::sin(alpha), std::sin(alpha),
                              std::cos(alpha), 0.0};

    TransformData td;
    td.alpha = alpha;
    std::vector<double> u0{st[0].real()}, du0{st[1].real()}, v0{st[2].real()},
        dv0{st[3].real()};
    td.x.push_back(0.0);
    td.t.push_back(0.0);
    td.r.push_back(1.0);
    td.phi.push_back(alpha);
    td.dt_dx.push_back(1.0);
    td.d2t_dx.push_back(2.0 * (u0[0] * du0[0] + v0[0] * dv0[0]));

    double xx = 0.0;
    while (xx < b) {
        double r2 = u0.back() * u0.back() + v0.back() * v0.back();
        double step = std::min({0.02, 0.4 * r2, b - xx});
        step = std::max(step, 1e-6);
        double nx = std::min(b, xx + step);
        st = rk.integrate(st, xx, nx);
        xx = nx;
        double U = st[0].real(), dU = st[1].real(), V2 = st[2].real(), dV = st[3].real();
        double re = U * u0.back() + V2 * v0.back();
        double im = V2 * u0.back() - U * v0.back();
        double dphi = std::atan2(im, re);
        if (std::abs(dphi) > 1.2)
            throw NonconvergenceError("schrodinger_to_canonical: angle step too large", dphi);
        u0.push_back(U);
        du0.push_back(dU);
        v0.push_back(V2);
        dv0.push_back(dV);
        td.x.push_back(xx);
        td.t.push_back(st[4].real());
        double rr = std::sqrt(U * U + V2 * V2);
        td.r.push_back(rr);
        td.phi.push_back(td.phi.back() + dphi);
        td.dt_dx.push_back(rr * rr);
        td.d2t_dx.push_back(2.0 * (U * dU + V2 * dV));
    }
    td.t_b = td.t.back();

    // phi as a function of t with derivative samples:
    // phi_t = R^-4, phi_tt = -4 D R^-8, phi_ttt = -4 D' R^-10 + 32 D^2 R^-12,
    // D = u0 u0' + v0 v0', D' = u0'^2 + v0'^2 + V R^2
    std::vector<double> pt, p1, p2, p3;
    for (std::size_t i = 0; i < td.x.size(); ++i) {
        double rr = td.r[i], r2 = rr * rr;
        double d = u0[i] * du0[i] + v0[i] * dv0[i];
        double dp = du0[i] * du0[i] + dv0[i] * dv0[i] + v(td.x[i]) * r2;
        double r4 = r2 * r2, r8 = r4 * r4;
        pt.push_back(td.t[i]);
        p1.push_back(1.0 / r4);
        p2.push_back(-4.0 * d / r8);
        p3.push_back(-4.0 * dp / (r8 * r2) + 32.0 * d * d / (r8 * r4));
    }
    auto phi_fn =
        std::make_shared<const SmoothPhi>(SmoothPhi::from_samples(pt, td.phi, p1, p2, p3));

    Hamiltonian::Tail tail = Hamiltonian::ExtendTail{};
    if (!bd.limit_point) {
        td.regular = true;
        td.schrodinger_b = b;
        td.schrodinger_beta = bd.beta;
        // endpoint vector (-sin B, cos B) through the inverse connection
        // matrix C(b) = [[u0, v0],[u0', v0']] (det 1)
        double sb = std::sin(bd.beta), cb = std::cos(bd.beta);
        double w1 = dv0.back() * (-sb) - v0.back() * cb;
        double w2 = -du0.back() * (-sb) + u0.back() * cb;
        double bt = std::atan2(-w1, w2);
        if (bt < 0.0) bt += kPi;
        if (bt >= kPi) bt -= kPi;
        td.beta_tilde = bt;
        tail = Hamiltonian::SingularTail{bt};
    }

    Hamiltonian h = Hamiltonian::phi_patch(phi_fn, tail);
    return SchrodingerToCanonical{std::move(h), phi_fn, std::move(td)};
}

namespace {

double v_tform(const SmoothPhi& phi, double t) {
    double p1 = phi.eval(t, 1), p2 = phi.eval(t, 2), p3 = phi.eval(t, 3);
    if (!(p1 > 0.0))
        throw std::invalid_argument("canonical_to_schrodinger: nonpositive phi'");
    return 7.0 / 16.0 * p2 * p2 / (p1 * p1 * p1) - 0.25 * p3 / (p1 * p1) - p1;
}

}  // namespace

CanonicalToSchrodinger canonical_to_schrodinger(const SmoothPhi& phi, double t_lo, double t_hi) {
    if (!(t_hi > t_lo)) throw std::invalid_argument("canonical_to_schrodinger: empty domain");
    if (std::abs(phi.eval(t_lo, 1) - 1.0) > 1e-6 || std::abs(phi.eval(t_lo, 2)) > 1e-6)
        throw std::invalid_argument(
            "canonical_to_schrodinger: inconsistent derivative data at t=0 (needs slope-1 "
            "linear start)");

    // grid: the function's own samples plus a uniform fill
    std::vector<double> grid;
    for (double g : phi.grid())
        if (g > t_lo && g < t_hi) grid.push_back(g);
    int fill = 512;
    for (int i = 0; i <= fill; ++i) grid.push_back(t_lo + (t_hi - t_lo) * i / double(fill));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               grid.end());

    TransformData td;
    td.alpha = phi(t_lo);
    double xacc = 0.0;
    std::vector<double> vx, vv;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double t = grid[i];
        double p1 = phi.eval(t, 1);
        if (!(p1 > 0.0))
            throw std::invalid_argument("canonical_to_schrodinger: nonpositive phi'");
        if (i > 0) {
            auto f = [&](double s) { return std::sqrt(phi.eval(s, 1)); };
            xacc += adaptive_simpson(f, grid[i - 1], t, 1e-12 * (t_hi - t_lo));
        }
        double rr = std::pow(p1, -0.25);
        td.x.push_back(xacc);
        td.t.push_back(t);
        td.r.push_back(rr);
        td.phi.push_back(phi.eval(t, 0));
        td.dt_dx.push_back(1.0 / std::sqrt(p1));
        td.d2t_dx.push_back(-0.5 * phi.eval(t, 2) / (p1 * p1));
        vx.push_back(xacc);
        vv.push_back(v_tform(phi, t));
    }
    td.t_b = t_hi;

    CanonicalToSchrodinger out{Potential::from_samples(vx, vv), td.alpha, std::move(td)};
    return out;
}

std::pair<double, double> schrodinger_endpoint(const CanonicalToSchrodinger& cs,
                                               double beta_tilde) {
    const TransformData& td = cs.data;
    double b = td.x.back();
    double rr = td.r.back(), ph = td.phi.back();
    double u0 = rr * std::cos(ph), v0 = rr * std::sin(ph);
    // x-derivatives of u0 = R cos phi, v0 = R sin phi:
    // d2t_dx = d(R^2)/dx = 2 R R', and phi_x = 1/R^2 by the Wronskian
    double rx = 0.5 * td.d2t_dx.back() / rr;
    double phx = 1.0 / (rr * rr);
    double du0 = rx * std::cos(ph) - rr * phx * std::sin(ph);
    double dv0 = rx * std::sin(ph) + rr * phx * std::cos(ph);
    double sb = std::sin(beta_tilde), cb = std::cos(beta_tilde);
    // u(t_b) = (-sin Bt, cos Bt); (y, y')(b) = C(b) u(t_b)
    double y = u0 * (-sb) + v0 * cb;
    double dy = du0 * (-sb) + dv0 * cb;
    double beta = std::atan2(-y, dy);
    if (beta < 0.0) beta += kPi;
    if (beta >= kPi) beta -= kPi;
    return {b, beta};
}

double roundtrip_residual(const Potential& v, double alpha, double window_lo, double window_hi) {
    double cutoff = window_hi + 1.0;
    auto fwd = schrodinger_to_canonical(v, BoundaryData::lp(alpha), cutoff);
    double t_hi = fwd.data.t_of_x(window_hi + 0.5);
    auto back = canonical_to_schrodinger(*fwd.phi, 0.0, t_hi);
    double sup = 0.0;
    int n = 400;
    for (int i = 0; i <= n; ++i) {
        double x = window_lo + (window_hi - window_lo) * i / double(n);
        sup = std::max(sup, std::abs(back.v(x) - v(x)));
    }
    return sup;
}

double vform_crosscheck(const std::function<double(double)>& r_of_x,
                        const std::function<double(double)>& vt_of_x, double x_lo, double x_hi,
                        int n) {
    if (n < 16) throw std::invalid_argument("vform_crosscheck: grid too small");
    double dx = (x_hi - x_lo) / double(n);
    std::vector<double> r(n + 1);
    for (int i = 0; i <= n; ++i) r[i] = r_of_x(x_lo + i * dx);
    double sup = 0.0;
    for (int i = 2; i + 2 <= n; ++i) {
        // 4th-order central second difference
        double rpp =
            (-r[i - 2] + 16.0 * r[i - 1] - 30.0 * r[i] + 16.0 * r[i + 1] - r[i + 2]) /
            (12.0 * dx * dx);
        double rr = r[i];
        double v_r = rpp / rr - 1.0 / (rr * rr * rr * rr);
        double x = x_lo + i * dx;
        sup = std::max(sup, std::abs(v_r - vt_of_x(x)));
    }
    return sup;
}

}  // namespace mweyl
