#include "mweyl/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mweyl/numerics.hpp"

namespace mweyl {

namespace {
constexpr double kPi = std::numbers::pi;

Mat2 j_conjugate(const Mat2& m) {
    // J [[a,b],[b,c]] J^T = [[c,-b],[-b,a]]
    return Mat2(m.a22, -m.a12, m.a11);
}
}  // namespace

Hamiltonian::Hamiltonian(std::vector<Segment> segments, Tail tail)
    : segments_(std::move(segments)), tail_(tail) {
    double x = 0.0;
    for (const auto& s : segments_) {
        if (std::abs(s.lo - x) > 1e-12)
            throw std::invalid_argument("Hamiltonian: segments must be contiguous from 0");
        if (!(s.hi > s.lo)) throw std::invalid_argument("Hamiltonian: empty segment");
        if (s.is_const)
            s.m.validate_trace_normed(1e-9, "Hamiltonian segment");
        else if (!s.phi)
            throw std::invalid_argument("Hamiltonian: phi segment without phi data");
        x = s.hi;
    }
    x_max_ = x;
    if (auto* st = std::get_if<SingularTail>(&tail_)) {
        if (st->theta < 0.0 || st->theta >= kPi)
            throw std::invalid_argument("Hamiltonian: tail angle must lie in [0, pi)");
    } else if (segments_.empty()) {
        throw std::invalid_argument("Hamiltonian: extend tail requires at least one segment");
    }
}

Hamiltonian Hamiltonian::constant(const Mat2& m, double x_max) {
    return Hamiltonian({Segment{0.0, x_max, true, m, nullptr, 0.0}}, ExtendTail{});
}

Hamiltonian Hamiltonian::singular(double theta) {
    return Hamiltonian({}, SingularTail{theta});
}

Hamiltonian Hamiltonian::phi_patch(std::shared_ptr<const SmoothPhi> phi, Tail tail) {
    double hi = phi->domain_end();
    return Hamiltonian({Segment{0.0, hi, false, Mat2{}, std::move(phi), 0.0}}, tail);
}

Mat2 Hamiltonian::value(double x) const {
    if (x < 0.0) throw std::invalid_argument("Hamiltonian::value: x < 0");
    if (x < x_max_) {
        for (const auto& s : segments_) {
            if (x < s.hi) {
                if (s.is_const) return s.m;
                return p_matrix(s.phi->eval(x, 0) + s.phi_shift);
            }
        }
    }
    if (auto* st = std::get_if<SingularTail>(&tail_)) return p_matrix(st->theta);
    // extend tail: the last segment's payload continues indefinitely
    const auto& s = segments_.back();
    if (s.is_const) return s.m;
    return p_matrix(s.phi->eval(x, 0) + s.phi_shift);
}

std::vector<Hamiltonian::Piece> Hamiltonian::cover(double x0, double x1) const {
    if (x0 < 0.0 || x1 < x0) throw std::invalid_argument("Hamiltonian::cover: bad interval");
    std::vector<Piece> out;
    if (x1 == x0) return out;
    for (const auto& s : segments_) {
        double lo = std::max(x0, s.lo), hi = std::min(x1, s.hi);
        if (hi > lo) out.push_back({lo, hi, s.is_const, s.m, s.phi.get(), s.phi_shift});
    }
    if (x1 > x_max_) {
        double lo = std::max(x0, x_max_);
        if (auto* st = std::get_if<SingularTail>(&tail_)) {
            out.push_back({lo, x1, true, p_matrix(st->theta), nullptr, 0.0});
        } else {
            const auto& s = segments_.back();
            out.push_back({lo, x1, s.is_const, s.m, s.phi.get(), s.phi_shift});
        }
    }
    return out;
}

std::vector<double> Hamiltonian::boundaries(double x0, double x1) const {
    std::vector<double> b;
    for (const auto& s : segments_)
        if (s.hi > x0 && s.hi < x1) b.push_back(s.hi);
    return b;
}

Hamiltonian Hamiltonian::swapped() const {
    std::vector<Segment> segs = segments_;
    for (auto& s : segs) {
        if (s.is_const)
            s.m = j_conjugate(s.m);
        else
            s.phi_shift += 0.5 * kPi;
    }
    Tail t = tail_;
    if (auto* st = std::get_if<SingularTail>(&t)) {
        double th = st->theta + 0.5 * kPi;
        if (th >= kPi) th -= kPi;
        st->theta = th;
    }
    return Hamiltonian(std::move(segs), t);
}

Mat2 dyadic_average(const Hamiltonian& h, int level, long index) {
    if (level < 0 || index < 0)
        throw std::invalid_argument("dyadic_average: interval outside domain");
    double w = std::ldexp(1.0, -level);
    double lo = index * w, hi = (index + 1) * w;
    Mat2 acc;
    for (const auto& p : h.cover(lo, hi)) {
        if (p.is_const) {
            acc = acc + (p.hi - p.lo) * p.m;
        } else {
            auto f = [&](double t) { return p_matrix(p.phi->eval(t, 0) + p.phi_shift); };
            acc = acc + adaptive_simpson<decltype(f), Mat2>(f, p.lo, p.hi, 1e-10 * w);
        }
    }
    return (1.0 / w) * acc;
}

StepPhi build_step_phi(const Hamiltonian& h, int level, double domain_end, double drop_frac) {
    if (level < 0) throw std::invalid_argument("build_step_phi: level must be >= 0");
    double w = std::ldexp(1.0, -level);
    long cells = std::lround(domain_end / w);
    if (cells <= 0 || std::abs(cells * w - domain_end) > 1e-9)
        throw std::invalid_argument("build_step_phi: domain end must be a dyadic multiple");

    StepPhi out;
    out.edges.push_back(0.0);
    double top = 0.0;
    bool first = true;
    auto push = [&](double edge_hi, double raw) {
        double v = raw;
        if (first) {
            first = false;
        } else {
            // smallest multiple of pi lifting v to at least the running top;
            // equality within 1e-12 counts as nondecreasing already
            double k = std::ceil((top - raw) / kPi - 1e-12);
            if (k > 0.0) v = raw + k * kPi;
        }
        top = v;
        out.values.push_back(v);
        out.edges.push_back(edge_hi);
    };

    for (long j = 0; j < cells; ++j) {
        Mat2 avg = dyadic_average(h, level, j);
        EigenPair e = eigen_decompose(avg);
        double lo = j * w, hi = (j + 1) * w;
        double split = lo + e.lambda * w;
        double len2 = (1.0 - e.lambda) * w;
        bool drop2 = len2 <= 0.0 || (1.0 - e.lambda) <= drop_frac;
        if (drop2) {
            push(hi, e.phi);
        } else {
            push(split, e.phi);
            push(hi, e.phi + 0.5 * kPi);
        }
    }
    out.validate();
    return out;
}

std::vector<WeakstarTestFn> weakstar_test_family() {
    std::vector<WeakstarTestFn> fam;
    const double dirs[3][2] = {{1.0, 0.0}, {0.0, 1.0}, {std::sqrt(0.5), std::sqrt(0.5)}};
    for (int n = 0; n < 32; ++n) {
        int d = n % 3;
        int m = n / 3;
        double lo, hi;
        if (m < 8) {
            lo = m;
            hi = m + 1.0;
        } else {
            lo = 0.5 * (m - 8);
            hi = lo + 0.5;
        }
        fam.push_back({lo, hi, dirs[d][0], dirs[d][1]});
    }
    return fam;
}

namespace {

double hat(double x, double lo, double hi) {
    if (x <= lo || x >= hi) return 0.0;
    double mid = 0.5 * (lo + hi), hw = 0.5 * (hi - lo);
    return 1.0 - std::abs(x - mid) / hw;
}

double pair_integral(const Hamiltonian& h1, const Hamiltonian& h2, const WeakstarTestFn& f) {
    auto integrand = [&](double x) {
        double g = hat(x, f.support_lo, f.support_hi);
        if (g == 0.0) return 0.0;
        Mat2 d = h1.value(x) - h2.value(x);
        return g * g * quad_form(d, f.e1, f.e2);
    };
    std::vector<double> breaks = h1.boundaries(f.support_lo, f.support_hi);
    for (double b : h2.boundaries(f.support_lo, f.support_hi)) breaks.push_back(b);
    breaks.push_back(0.5 * (f.support_lo + f.support_hi));
    std::sort(breaks.begin(), breaks.end());
    return adaptive_simpson_split(integrand, f.support_lo, f.support_hi, breaks, 1e-11);
}

}  // namespace

double weakstar_dist(const Hamiltonian& h1, const Hamiltonian& h2) {
    auto fam = weakstar_test_family();
    double total = 0.0, weight = 0.5;
    for (const auto& f : fam) {
        double d = std::abs(pair_integral(h1, h2, f));
        total += weight * d / (1.0 + d);
        weight *= 0.5;
    }
    return total;
}

Mat2 cumulative_integral(const Hamiltonian& h, double x) {
    if (x < 0.0) throw std::invalid_argument("cumulative_integral: x < 0");
    Mat2 acc;
    for (const auto& p : h.cover(0.0, x)) {
        if (p.is_const) {
            acc = acc + (p.hi - p.lo) * p.m;
        } else {
            auto f = [&](double t) { return p_matrix(p.phi->eval(t, 0) + p.phi_shift); };
            acc = acc + adaptive_simpson<decltype(f), Mat2>(f, p.lo, p.hi, 1e-10);
        }
    }
    return acc;
}

}  // namespace mweyl
