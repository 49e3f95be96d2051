#include "mweyl/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mweyl/numerics.hpp"

namespace mweyl {

namespace {
constexpr double kPi = std::numbers::pi;
}

void HerglotzSpec::validate() const {
    if (!std::isfinite(a)) throw std::invalid_argument("HerglotzSpec: non-finite constant");
    for (const auto& [t, w] : atoms) {
        if (!std::isfinite(t) || !(w > 0.0))
            throw std::invalid_argument("HerglotzSpec: atoms need finite t and weight > 0");
    }
    if (density_grid.size() != density_vals.size())
        throw std::invalid_argument("HerglotzSpec: density arrays mismatch");
    for (std::size_t i = 0; i + 1 < density_grid.size(); ++i)
        if (!(density_grid[i] < density_grid[i + 1]))
            throw std::invalid_argument("HerglotzSpec: density grid not increasing");
    for (double v : density_vals)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("HerglotzSpec: density values must be >= 0");
    if (!(mass_at_inf >= 0.0))
        throw std::invalid_argument("HerglotzSpec: mass at infinity must be >= 0");
    if (!std::isfinite(total_mass()))
        throw std::invalid_argument("HerglotzSpec: total mass must be finite");
}

double HerglotzSpec::total_mass() const {
    double m = mass_at_inf;
    for (const auto& [t, w] : atoms) m += w;
    for (std::size_t i = 0; i + 1 < density_grid.size(); ++i)
        m += 0.5 * (density_vals[i] + density_vals[i + 1]) *
             (density_grid[i + 1] - density_grid[i]);
    return m;
}

Cplx herglotz_kernel(double t, Cplx z) { return (1.0 + t * z) / (t - z); }

namespace {

// integral of the kernel against the piecewise-linear density over one cell
Cplx cell_integral(double t0, double v0, double t1, double v1, Cplx z) {
    auto f = [&](double t) {
        double w = (t - t0) / (t1 - t0);
        return (v0 * (1.0 - w) + v1 * w) * herglotz_kernel(t, z);
    };
    // coarse estimate sets the absolute tolerance for 1e-9 relative accuracy
    Cplx rough = (t1 - t0) * 0.5 * (f(t0) + f(t1));
    double tol = 1e-9 * std::abs(rough) + 1e-15;
    return adaptive_simpson<decltype(f), Cplx>(f, t0, t1, tol);
}

}  // namespace

Cplx eval_herglotz(const HerglotzSpec& spec, Cplx z) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("eval_herglotz: need Im z > 0");
    spec.validate();
    Cplx acc(spec.a, 0.0);
    for (const auto& [t, w] : spec.atoms) acc += w * herglotz_kernel(t, z);
    for (std::size_t i = 0; i + 1 < spec.density_grid.size(); ++i) {
        if (spec.density_vals[i] == 0.0 && spec.density_vals[i + 1] == 0.0) continue;
        acc += cell_integral(spec.density_grid[i], spec.density_vals[i], spec.density_grid[i + 1],
                             spec.density_vals[i + 1], z);
    }
    acc += spec.mass_at_inf * z;
    return acc;
}

double free_density(double t) {
    if (t <= 0.0) return 0.0;
    return std::sqrt(t) / (kPi * (1.0 + t * t));
}

HerglotzSpec free_spectral_measure(double t_max, int grid_points) {
    if (!(t_max > 0.0) || grid_points < 16)
        throw std::invalid_argument("free_spectral_measure: need t_max > 0 and >= 16 points");
    HerglotzSpec s;
    s.a = free_reference_constant();
    s.density_grid.reserve(grid_points + 1);
    s.density_vals.reserve(grid_points + 1);
    for (int k = 0; k <= grid_points; ++k) {
        // quartic clustering toward 0 resolves the sqrt(t) onset
        double u = double(k) / grid_points;
        double t = t_max * u * u * u * u;
        if (k > 0 && t <= s.density_grid.back()) continue;
        s.density_grid.push_back(t);
        s.density_vals.push_back(free_density(t));
    }
    return s;
}

HerglotzSpec truncate_measure(const HerglotzSpec& spec, int n, double tail_t_max,
                              int tail_points) {
    if (n < 1) throw std::invalid_argument("truncate_measure: n >= 1");
    spec.validate();
    if (tail_t_max <= n) throw std::invalid_argument("truncate_measure: tail range empty");
    HerglotzSpec out;
    out.a = spec.a;
    double nn = n;
    for (const auto& [t, w] : spec.atoms)
        if (t > -nn && t < nn) out.atoms.emplace_back(t, w);

    // density restricted to (-n, n), cells clipped at the boundary
    for (std::size_t i = 0; i + 1 < spec.density_grid.size(); ++i) {
        double t0 = spec.density_grid[i], t1 = spec.density_grid[i + 1];
        double lo = std::max(t0, -nn), hi = std::min(t1, nn);
        if (hi <= lo) continue;
        auto val = [&](double t) {
            double w = (t - t0) / (t1 - t0);
            return spec.density_vals[i] * (1.0 - w) + spec.density_vals[i + 1] * w;
        };
        if (out.density_grid.empty() || out.density_grid.back() < lo) {
            if (!out.density_grid.empty()) {
                // close the previous run with a zero-width gap marker
                out.density_grid.push_back(std::nextafter(out.density_grid.back(), 1e300));
                out.density_vals.push_back(0.0);
                out.density_grid.push_back(std::nextafter(lo, -1e300));
                out.density_vals.push_back(0.0);
            }
            out.density_grid.push_back(lo);
            out.density_vals.push_back(val(lo));
        }
        out.density_grid.push_back(hi);
        out.density_vals.push_back(val(hi));
    }

    // free tail on [n, tail_t_max], geometric grid
    double prev = out.density_grid.empty() ? -1e300 : out.density_grid.back();
    if (prev < nn) {
        if (!out.density_grid.empty()) {
            out.density_grid.push_back(std::nextafter(prev, 1e300));
            out.density_vals.push_back(0.0);
            out.density_grid.push_back(std::nextafter(nn, -1e300));
            out.density_vals.push_back(0.0);
        }
    }
    double ratio = std::pow(tail_t_max / nn, 1.0 / tail_points);
    double t = nn;
    for (int k = 0; k <= tail_points; ++k) {
        if (!out.density_grid.empty() && t <= out.density_grid.back())
            t = std::nextafter(out.density_grid.back(), 1e300);
        out.density_grid.push_back(t);
        out.density_vals.push_back(free_density(t));
        t = nn * std::pow(ratio, k + 1);
    }

    if (spec.mass_at_inf > 0.0) out.atoms.emplace_back(nn, spec.mass_at_inf);
    out.mass_at_inf = 0.0;
    out.validate();
    return out;
}

std::vector<MeasureTestFn> measure_test_family() {
    std::vector<MeasureTestFn> fam;
    fam.push_back({[](double t) { return 1.0 / (1.0 + t * t); }, 0.0,
                   -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity(), "1/(1+t^2)"});
    fam.push_back({[](double t) { return t / (1.0 + t * t); }, 0.0,
                   -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity(), "t/(1+t^2)"});
    fam.push_back({[](double t) { return t * t / (1.0 + t * t); }, 1.0,
                   -std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity(), "t^2/(1+t^2)"});
    // hats at rational centers k/4, width 1/2
    std::vector<double> centers{0.0};
    for (int j = 1; centers.size() < 29; ++j) {
        centers.push_back(j / 4.0);
        if (centers.size() < 29) centers.push_back(-j / 4.0);
    }
    for (double c : centers) {
        double lo = c - 0.25, hi = c + 0.25;
        fam.push_back({[c](double t) {
                           double d = std::abs(t - c);
                           return d >= 0.25 ? 0.0 : 1.0 - 4.0 * d;
                       },
                       0.0, lo, hi, "hat@" + std::to_string(c)});
    }
    return fam;
}

double measure_integral(const HerglotzSpec& spec, const MeasureTestFn& fn) {
    double acc = spec.mass_at_inf * fn.at_inf;
    for (const auto& [t, w] : spec.atoms)
        if (t > fn.support_lo && t < fn.support_hi) acc += w * fn.f(t);
    for (std::size_t i = 0; i + 1 < spec.density_grid.size(); ++i) {
        double t0 = spec.density_grid[i], t1 = spec.density_grid[i + 1];
        if (t1 <= fn.support_lo || t0 >= fn.support_hi) continue;
        if (spec.density_vals[i] == 0.0 && spec.density_vals[i + 1] == 0.0) continue;
        double lo = std::max(t0, fn.support_lo), hi = std::min(t1, fn.support_hi);
        auto g = [&](double t) {
            double w = (t - t0) / (t1 - t0);
            return (spec.density_vals[i] * (1.0 - w) + spec.density_vals[i + 1] * w) * fn.f(t);
        };
        double rough = (hi - lo) * 0.5 * (g(lo) + g(hi));
        acc += adaptive_simpson(g, lo, hi, 1e-9 * std::abs(rough) + 1e-15);
    }
    return acc;
}

double measure_weak_dist(const HerglotzSpec& rho1, const HerglotzSpec& rho2,
                         const std::vector<MeasureTestFn>& family) {
    rho1.validate();
    rho2.validate();
    double total = 0.0, weight = 0.5;
    for (const auto& fn : family) {
        double d = std::abs(measure_integral(rho1, fn) - measure_integral(rho2, fn));
        total += weight * d / (1.0 + d);
        weight *= 0.5;
    }
    return total;
}

double fit_constant(const HerglotzSpec& spec, const std::function<Cplx(Cplx)>& target,
                    const std::vector<Cplx>& grid) {
    if (grid.empty()) throw std::invalid_argument("fit_constant: empty grid");
    HerglotzSpec mspec = spec;
    mspec.a = 0.0;
    double acc = 0.0;
    for (Cplx z : grid) acc += (target(z) - eval_herglotz(mspec, z)).real();
    return acc / double(grid.size());
}

}  // namespace mweyl
