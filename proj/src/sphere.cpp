#include "mweyl/sphere.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace mweyl {

std::vector<Cplx> default_grid() {
    std::vector<Cplx> g;
    for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0})
        for (double y : {0.5, 1.0, 2.0})
            g.emplace_back(x, y);
    return g;
}

Cplx sqrt_uhp(Cplx z) {
    Cplx r = std::sqrt(z);
    // principal branch already maps Im z > 0 to the first quadrant;
    // flip only guards the Im z == 0 edge of closures.
    if (r.imag() < 0.0) r = -r;
    return r;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    threads = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

unsigned resolve_threads(int requested) {
    if (requested > 0) return static_cast<unsigned>(requested);
    if (const char* env = std::getenv("MWEYL_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

SpherePoint::SpherePoint(Cplx p_, Cplx q_) : p(p_), q(q_) {
    double ap = std::abs(p), aq = std::abs(q);
    double s = std::max(ap, aq);
    if (s == 0.0 || !std::isfinite(s))
        throw std::invalid_argument("SpherePoint: homogeneous pair must be finite and nonzero");
    p /= s;
    q /= s;
}

bool SpherePoint::is_infinite(double rel_tol) const {
    return std::abs(q) <= rel_tol * std::abs(p);
}

Mobius2 Mobius2::rotation(double alpha) {
    double c = std::cos(alpha), s = std::sin(alpha);
    return Mobius2(Cplx(c), Cplx(s), Cplx(-s), Cplx(c));
}

double Mobius2::entry_scale() const {
    return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
}

bool Mobius2::nonsingular(double rel_tol) const {
    double s = entry_scale();
    return std::abs(det()) > rel_tol * s * s;
}

Mobius2 Mobius2::operator*(const Mobius2& o) const {
    return Mobius2(a * o.a + b * o.c, a * o.b + b * o.d,
                   c * o.a + d * o.c, c * o.b + d * o.d);
}

Mobius2 Mobius2::inverse() const {
    Cplx dt = det();
    if (!nonsingular())
        throw std::invalid_argument("Mobius2::inverse: matrix is numerically singular");
    return Mobius2(d / dt, -b / dt, -c / dt, a / dt);
}

SpherePoint mobius_apply(const Mobius2& m, const SpherePoint& w) {
    if (!m.nonsingular())
        throw std::invalid_argument("mobius_apply: matrix is numerically singular");
    return SpherePoint(m.a * w.p + m.b * w.q, m.c * w.p + m.d * w.q);
}

double chordal_dist(const SpherePoint& w1, const SpherePoint& w2) {
    double n1 = std::sqrt(std::norm(w1.p) + std::norm(w1.q));
    double n2 = std::sqrt(std::norm(w2.p) + std::norm(w2.q));
    return 2.0 * std::abs(w1.p * w2.q - w2.p * w1.q) / (n1 * n2);
}

double grid_dist(const std::function<SpherePoint(Cplx)>& f,
                 const std::function<SpherePoint(Cplx)>& g,
                 const std::vector<Cplx>& grid) {
    if (grid.empty())
        throw std::invalid_argument("grid_dist: empty grid");
    double d = 0.0;
    for (Cplx z : grid) {
        if (z.imag() <= 0.0)
            throw std::invalid_argument("grid_dist: grid point not in the upper half plane");
        d = std::max(d, chordal_dist(f(z), g(z)));
    }
    return d;
}

}  // namespace mweyl
