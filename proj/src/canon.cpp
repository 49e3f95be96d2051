#include "mweyl/canon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mweyl {

namespace {

constexpr double kPi = std::numbers::pi;

Cplx sinc(Cplx w) {
    if (std::abs(w) < 1e-6) {
        Cplx w2 = w * w;
        return 1.0 - w2 / 6.0 + w2 * w2 / 120.0;
    }
    return std::sin(w) / w;
}

// exp(B) for traceless 2x2 B via B^2 = -det(B) I
Mobius2 exp_traceless(const Mobius2& b) {
    Cplx w = std::sqrt(b.det());
    Cplx cw = std::cos(w), sw = sinc(w);
    return Mobius2(cw + sw * b.a, sw * b.b, sw * b.c, cw + sw * b.d);
}

// closed form exp(-zLJM) for constant symmetric M
Mobius2 const_transfer(const Mat2& m, double len, Cplx z) {
    Cplx s = -z * len;
    // J M is traceless with det = det(M)
    Mobius2 a(s * (-m.a12), s * (-m.a22), s * m.a11, s * m.a12);
    Cplx w = s * std::sqrt(std::max(0.0, m.det()));
    Cplx cw = std::cos(w), sw = sinc(w);
    return Mobius2(cw + a.a * sw, a.b * sw, a.c * sw, cw + a.d * sw);
}

struct PhiCoef {
    const SmoothPhi* phi;
    double shift;
    Cplx z;

    // A(t) = -z J P_phi(t); traceless
    Mobius2 at(double t) const {
        double ang = phi->eval(t, 0) + shift;
        double c = std::cos(ang), s = std::sin(ang);
        return Mobius2(z * c * s, z * s * s, -z * c * c, -z * c * s);
    }
};

Mobius2 sub(const Mobius2& x, const Mobius2& y) {
    return Mobius2(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
}

double frob(const Mobius2& x) {
    return std::sqrt(std::norm(x.a) + std::norm(x.b) + std::norm(x.c) + std::norm(x.d));
}

Mobius2 magnus_step(const PhiCoef& f, double t0, double t1) {
    double h = t1 - t0;
    double off = h * 0.2886751345948129;  // sqrt(3)/6
    double mid = 0.5 * (t0 + t1);
    Mobius2 a1 = f.at(mid - off), a2 = f.at(mid + off);
    Cplx hh(0.5 * h);
    Mobius2 omega(hh * (a1.a + a2.a), hh * (a1.b + a2.b), hh * (a1.c + a2.c),
                  hh * (a1.d + a2.d));
    Cplx k(h * h * 0.14433756729740643);  // sqrt(3)/12
    Mobius2 comm = sub(a2 * a1, a1 * a2);
    omega.a += k * comm.a;
    omega.b += k * comm.b;
    omega.c += k * comm.c;
    omega.d += k * comm.d;
    return exp_traceless(omega);
}

Mobius2 phi_transfer_rec(const PhiCoef& f, double t0, double t1, int depth) {
    Mobius2 coarse = magnus_step(f, t0, t1);
    double mid = 0.5 * (t0 + t1);
    Mobius2 fine = magnus_step(f, mid, t1) * magnus_step(f, t0, mid);
    if (depth > 40 || frob(sub(fine, coarse)) <= 1e-11 * (1.0 + frob(fine)))
        return fine;
    return phi_transfer_rec(f, mid, t1, depth + 1) * phi_transfer_rec(f, t0, mid, depth + 1);
}

Mobius2 phi_transfer(const Hamiltonian::Piece& p, double lo, double hi, Cplx z) {
    PhiCoef f{p.phi, p.phi_shift, z};
    // pre-chop so single Magnus steps stay in their asymptotic regime
    double max_h = 0.5 / (1.0 + std::abs(z));
    long n = std::max(1L, std::lround(std::ceil((hi - lo) / max_h)));
    Mobius2 t = Mobius2::identity();
    double step = (hi - lo) / double(n);
    for (long i = 0; i < n; ++i)
        t = phi_transfer_rec(f, lo + i * step, lo + (i + 1) * step, 0) * t;
    return t;
}

}  // namespace

Mobius2 transfer_matrix(const Hamiltonian& h, double x0, double x1, Cplx z) {
    if (x0 < 0.0 || x1 < x0) throw std::invalid_argument("transfer_matrix: bad interval");
    Mobius2 t = Mobius2::identity();
    for (const auto& p : h.cover(x0, x1)) {
        Mobius2 tp = p.is_const ? const_transfer(p.m, p.hi - p.lo, z) : phi_transfer(p, p.lo, p.hi, z);
        t = tp * t;
    }
    return t;
}

SpherePoint weyl_boundary_point(const Mobius2& t, double gamma) {
    double sg = std::sin(gamma), cg = std::cos(gamma);
    return SpherePoint(t.a * sg - t.c * cg, t.d * cg - t.b * sg);
}

namespace {

constexpr int kDiskSamples = 64;

double pair_dist(const Mobius2& t, double g1, double g2) {
    return chordal_dist(weyl_boundary_point(t, g1), weyl_boundary_point(t, g2));
}

double refine_pair(const Mobius2& t, double g1, double g2) {
    // coordinate ascent around a sampled max chordal pair
    double step = kPi / kDiskSamples;
    double best = pair_dist(t, g1, g2);
    for (int round = 0; round < 3; ++round) {
        step *= 0.5;
        for (double s : {-step, step}) {
            if (double d = pair_dist(t, g1 + s, g2); d > best) {
                best = d;
                g1 += s;
            }
            if (double d = pair_dist(t, g1, g2 + s); d > best) {
                best = d;
                g2 += s;
            }
        }
    }
    return best;
}

WeylDisk disk_from_transfer(const Mobius2& t, double L, const SpherePoint* prev) {
    // transfer matrices have det 1 by construction; entries may be huge in
    // the contracted regime, so the relative-scale singularity test does
    // not apply here. Guard against genuine breakdown only.
    if (!std::isfinite(t.entry_scale()) || t.det() == Cplx(0.0, 0.0))
        throw std::invalid_argument("weyl_disk: degenerate transfer matrix");
    WeylDisk d;
    d.L = L;
    d.boundary_map = t;

    std::vector<SpherePoint> pts;
    pts.reserve(kDiskSamples);
    for (int k = 0; k < kDiskSamples; ++k)
        pts.push_back(weyl_boundary_point(t, k * kPi / kDiskSamples));

    double best = 0.0;
    int bi = 0, bj = 0;
    for (int i = 0; i < kDiskSamples; ++i)
        for (int j = i + 1; j < kDiskSamples; ++j) {
            double dd = chordal_dist(pts[i], pts[j]);
            if (dd > best) {
                best = dd;
                bi = i;
                bj = j;
            }
        }
    d.chordal_diameter =
        std::max(best, refine_pair(t, bi * kPi / kDiskSamples, bj * kPi / kDiskSamples));

    if (!prev) {
        d.representative = weyl_boundary_point(t, 0.0);
    } else {
        double bestd = 1e300;
        for (const auto& p : pts) {
            double dd = chordal_dist(p, *prev);
            if (dd < bestd) {
                bestd = dd;
                d.representative = p;
            }
        }
    }
    return d;
}

}  // namespace

WeylDisk weyl_disk(const Hamiltonian& h, double L, Cplx z, const SpherePoint* prev) {
    if (!(L > 0.0)) throw std::invalid_argument("weyl_disk: L must be positive");
    if (!(z.imag() > 0.0)) throw std::invalid_argument("weyl_disk: need Im z > 0");
    return disk_from_transfer(transfer_matrix(h, 0.0, L, z), L, prev);
}

MFunctionResult m_function(const Hamiltonian& h, Cplx z, double tol) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("m_function: need Im z > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("m_function: tol must be positive");

    MFunctionResult r;
    if (h.has_singular_tail()) {
        // the H-integrable solution satisfies e_theta . u == 0 from the tail
        // start on; pull that condition back to 0 and read off m = u2/u1
        double th = h.singular_tail_theta();
        double tb = h.x_max();
        Mobius2 t = tb > 0.0 ? transfer_matrix(h, 0.0, tb, z) : Mobius2::identity();
        Mobius2 ti = t.adjugate();
        Cplx s = std::sin(th), c = std::cos(th);
        Cplx f1 = ti.a * (-s) + ti.b * c;
        Cplx f2 = ti.c * (-s) + ti.d * c;
        r.m = SpherePoint(f2, f1);
        r.diameter = 0.0;
        r.L_used = tb;
        r.converged = true;
        return r;
    }

    Mobius2 t = Mobius2::identity();
    double L = 0.0;
    SpherePoint rep;
    bool have_rep = false;
    double next = 1.0;
    while (next <= 1e6) {
        t = transfer_matrix(h, L, next, z) * t;
        L = next;
        WeylDisk d = disk_from_transfer(t, L, have_rep ? &rep : nullptr);
        rep = d.representative;
        have_rep = true;
        r.m = rep;
        r.diameter = d.chordal_diameter;
        r.L_used = L;
        if (d.chordal_diameter < tol) {
            r.converged = true;
            return r;
        }
        next = 2.0 * L;
    }
    r.converged = false;
    return r;
}

Solution Solution::from_samples(std::vector<double> x, std::vector<std::array<Cplx, 2>> u,
                                Cplx z) {
    if (x.size() != u.size() || x.size() < 2)
        throw std::invalid_argument("Solution: sample arrays mismatch");
    Solution s;
    s.x = std::move(x);
    s.u = std::move(u);
    s.z = z;
    return s;
}

std::array<Cplx, 2> Solution::at(double xq) const {
    if (xq <= x.front()) return u.front();
    if (xq >= x.back()) return u.back();
    auto it = std::upper_bound(x.begin(), x.end(), xq);
    std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    double w = (xq - x[i]) / (x[i + 1] - x[i]);
    return {u[i][0] * (1.0 - w) + u[i + 1][0] * w, u[i][1] * (1.0 - w) + u[i + 1][1] * w};
}

namespace {

std::array<Cplx, 2> apply_transfer(const Mobius2& t, const std::array<Cplx, 2>& v) {
    return {t.a * v[0] + t.b * v[1], t.c * v[0] + t.d * v[1]};
}

// (J H u); H real symmetric, u complex
std::array<Cplx, 2> jhu(const Mat2& hm, const std::array<Cplx, 2>& v) {
    Cplx h1 = hm.a11 * v[0] + hm.a12 * v[1];
    Cplx h2 = hm.a12 * v[0] + hm.a22 * v[1];
    return {-h2, h1};
}

double unorm(const std::array<Cplx, 2>& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

}  // namespace

Solution solve_canonical(const Hamiltonian& h, Cplx z, std::array<Cplx, 2> u0, double x_end,
                         double residual_tol) {
    if (!(x_end > 0.0)) throw std::invalid_argument("solve_canonical: x_end must be positive");
    for (std::size_t n = 128; n <= (1u << 18); n *= 2) {
        Solution s;
        s.z = z;
        s.x.resize(n + 1);
        s.u.resize(n + 1);
        double dx = x_end / double(n);
        s.x[0] = 0.0;
        s.u[0] = u0;
        for (std::size_t i = 0; i < n; ++i) {
            s.x[i + 1] = (i + 1) * dx;
            s.u[i + 1] = apply_transfer(transfer_matrix(h, s.x[i], s.x[i + 1], z), s.u[i]);
        }
        if (solution_residual(h, s) <= residual_tol) return s;
    }
    throw NonconvergenceError("solve_canonical: residual tolerance unreachable", residual_tol);
}

double solution_residual(const Hamiltonian& h, const Solution& s) {
    double umax = 0.0;
    for (const auto& v : s.u) umax = std::max(umax, unorm(v));
    std::array<Cplx, 2> integral = {0.0, 0.0};
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < s.x.size(); ++i) {
        double a = s.x[i], b = s.x[i + 1], mid = 0.5 * (a + b);
        auto fa = jhu(h.value(a), s.u[i]);
        auto fm = jhu(h.value(mid), s.at(mid));
        auto fb = jhu(h.value(b), s.u[i + 1]);
        double w = (b - a) / 6.0;
        integral[0] += w * (fa[0] + 4.0 * fm[0] + fb[0]);
        integral[1] += w * (fa[1] + 4.0 * fm[1] + fb[1]);
        std::array<Cplx, 2> res = {s.u[i + 1][0] - s.u[0][0] + s.z * integral[0],
                                   s.u[i + 1][1] - s.u[0][1] + s.z * integral[1]};
        worst = std::max(worst, unorm(res) / (1.0 + umax));
    }
    return worst;
}

double h_norm(const Hamiltonian& h, const Solution& s, double a, double b) {
    if (b < a) throw std::invalid_argument("h_norm: bad interval");
    auto density = [&](double x) {
        auto v = s.at(x);
        Mat2 hm = h.value(x);
        double t = 0.0;
        t += hm.a11 * std::norm(v[0]) + hm.a22 * std::norm(v[1]);
        t += 2.0 * hm.a12 * (v[0] * std::conj(v[1])).real();
        return t;
    };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < s.x.size(); ++i) {
        double lo = std::max(a, s.x[i]), hi = std::min(b, s.x[i + 1]);
        if (hi <= lo) continue;
        double mid = 0.5 * (lo + hi);
        acc += (hi - lo) / 6.0 * (density(lo) + 4.0 * density(mid) + density(hi));
    }
    return acc;
}

Solution weyl_solution(const Hamiltonian& h, Cplx z, Cplx m, double x_end, double residual_tol) {
    return solve_canonical(h, z, {Cplx(1.0), m}, x_end, residual_tol);
}

}  // namespace mweyl
