#include "mweyl/phi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "mweyl/numerics.hpp"

namespace mweyl {

double StepPhi::operator()(double t) const {
    if (values.empty()) throw std::invalid_argument("StepPhi: empty");
    if (t <= edges.front()) return values.front();
    auto it = std::upper_bound(edges.begin(), edges.end(), t);
    std::size_t i = static_cast<std::size_t>(it - edges.begin());
    if (i == 0) return values.front();
    if (i > values.size()) return values.back();
    return values[i - 1];
}

void StepPhi::lift(double offset) {
    for (double& v : values) v += offset;
}

void StepPhi::validate() const {
    if (values.empty() || edges.size() != values.size() + 1)
        throw std::invalid_argument("StepPhi: edge/value size mismatch");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        if (!(edges[i] < edges[i + 1]))
            throw std::invalid_argument("StepPhi: edges not increasing");
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        if (values[i] > values[i + 1] + 1e-12)
            throw std::invalid_argument("StepPhi: values not nondecreasing");
}

StepPhi StepPhi::merged(double tol) const {
    StepPhi out;
    out.edges.push_back(edges.front());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!out.values.empty() && std::abs(values[i] - out.values.back()) <= tol) {
            out.edges.back() = edges[i + 1];
            continue;
        }
        out.values.push_back(values[i]);
        out.edges.push_back(edges[i + 1]);
    }
    return out;
}

double PwlPhi::operator()(double x) const {
    if (t.size() < 2) throw std::invalid_argument("PwlPhi: needs at least two nodes");
    if (x <= t.front()) return phi.front() + slope(0) * (x - t.front());
    if (x >= t.back()) return phi.back() + slope(t.size() - 2) * (x - t.back());
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
    return phi[i] + slope(i) * (x - t[i]);
}

double PwlPhi::slope(std::size_t piece) const {
    return (phi[piece + 1] - phi[piece]) / (t[piece + 1] - t[piece]);
}

void PwlPhi::validate() const {
    if (t.size() < 2 || t.size() != phi.size())
        throw std::invalid_argument("PwlPhi: bad node arrays");
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (!(t[i] < t[i + 1])) throw std::invalid_argument("PwlPhi: nodes not increasing");
        if (!(phi[i] < phi[i + 1]))
            throw std::invalid_argument("PwlPhi: values not strictly increasing");
    }
}

PwlPhi pwl_approximate(const StepPhi& step_in, double alpha, double eps, double delta) {
    step_in.validate();
    if (!(eps > 0.0) || !(delta > 0.0))
        throw std::invalid_argument("pwl_approximate: eps and delta must be positive");
    double X = step_in.domain_end();
    if (eps >= X / 4.0)
        throw std::invalid_argument("pwl_approximate: corner width too large for the domain");

    StepPhi step = step_in.merged(1e-14);

    // lift so the ramp lands strictly below the first plateau, with slack
    // for the plateau tilt (pi-lifts are invisible to the projections)
    const double pi = std::numbers::pi;
    double slack = pi / 8.0;
    double need = alpha + delta + slack;
    if (step.values.front() < need)
        step.lift(pi * std::ceil((need - step.values.front()) / pi));

    // plateaus shorter than 2.5 eps cannot host a tilted segment between
    // two corners; absorb them into the adjacent corner
    struct Plateau {
        double a, b, v;
    };
    std::vector<Plateau> kept;
    for (std::size_t i = 0; i < step.values.size(); ++i) {
        double a = step.edges[i], b = step.edges[i + 1];
        bool last = (i + 1 == step.values.size());
        double usable = (last ? b : b - 0.5 * eps) - std::max(a + 0.5 * eps, delta + eps);
        if (b - a >= 2.5 * eps && usable > 0.25 * eps)
            kept.push_back({a, b, step.values[i]});
    }
    if (kept.empty())
        throw std::invalid_argument("pwl_approximate: no plateau survives; eps too large");

    PwlPhi out;
    out.t = {0.0, delta};
    out.phi = {alpha, alpha + delta};
    double cursor_t = delta, cursor_phi = alpha + delta;
    for (std::size_t i = 0; i < kept.size(); ++i) {
        bool last = (i + 1 == kept.size());
        double start = std::max(kept[i].a + 0.5 * eps, cursor_t + eps);
        double end = last ? X : kept[i].b - 0.5 * eps;
        if (end <= start) continue;
        double len = end - start;
        double jump_left = kept[i].v - cursor_phi;
        double jump_right = last ? 1e300 : kept[i + 1].v - kept[i].v;
        double gamma = std::min({eps * len, 0.8 * jump_left, 0.8 * jump_right});
        if (!(gamma > 0.0))
            throw std::invalid_argument("pwl_approximate: overlapping corners");
        out.t.push_back(start);
        out.phi.push_back(kept[i].v - 0.5 * gamma);
        out.t.push_back(end);
        out.phi.push_back(kept[i].v + 0.5 * gamma);
        cursor_t = end;
        cursor_phi = kept[i].v + 0.5 * gamma;
    }
    out.validate();
    return out;
}

// ---- SmoothPhi ----

SmoothPhi SmoothPhi::from_samples(std::vector<double> grid, std::vector<double> phi,
                                  std::vector<double> d1, std::vector<double> d2,
                                  std::vector<double> d3) {
    SmoothPhi s;
    s.grid_ = std::move(grid);
    s.phi_ = std::move(phi);
    s.d1_ = std::move(d1);
    s.d2_ = std::move(d2);
    s.d3_ = std::move(d3);
    s.validate();
    return s;
}

SmoothPhi SmoothPhi::from_function(std::function<double(double, int)> fn,
                                   std::vector<double> grid) {
    SmoothPhi s;
    s.exact_fn_ = std::make_shared<const std::function<double(double, int)>>(std::move(fn));
    s.grid_ = std::move(grid);
    for (double t : s.grid_) {
        s.phi_.push_back((*s.exact_fn_)(t, 0));
        s.d1_.push_back((*s.exact_fn_)(t, 1));
        s.d2_.push_back((*s.exact_fn_)(t, 2));
        s.d3_.push_back((*s.exact_fn_)(t, 3));
    }
    s.validate();
    return s;
}

void SmoothPhi::validate() const {
    std::size_t n = grid_.size();
    if (n < 2 || phi_.size() != n || d1_.size() != n || d2_.size() != n || d3_.size() != n)
        throw std::invalid_argument("SmoothPhi: inconsistent sample arrays");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(d1_[i] > 0.0))
            throw std::invalid_argument("SmoothPhi: phi' must be positive on the grid");
        if (!std::isfinite(d3_[i]))
            throw std::invalid_argument("SmoothPhi: phi''' must be finite");
        if (i + 1 < n && !(grid_[i] < grid_[i + 1]))
            throw std::invalid_argument("SmoothPhi: grid not increasing");
    }
}

double SmoothPhi::eval(double t, int deriv) const {
    if (exact_mollified_) return eval_mollified(t, deriv);
    if (exact_fn_) return (*exact_fn_)(t, deriv);
    // affine extension outside the sampled range
    if (t <= grid_.front()) {
        double dt = t - grid_.front();
        switch (deriv) {
            case 0: return phi_.front() + d1_.front() * dt;
            case 1: return d1_.front();
            default: return 0.0;
        }
    }
    if (t >= grid_.back()) {
        double dt = t - grid_.back();
        switch (deriv) {
            case 0: return phi_.back() + d1_.back() * dt;
            case 1: return d1_.back();
            default: return 0.0;
        }
    }
    auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - grid_.begin()) - 1;
    std::size_t j = i + 1;
    switch (deriv) {
        case 0:
            return hermite5(grid_[i], phi_[i], d1_[i], d2_[i], grid_[j], phi_[j], d1_[j], d2_[j],
                            t, 0);
        case 1:
            return hermite5(grid_[i], phi_[i], d1_[i], d2_[i], grid_[j], phi_[j], d1_[j], d2_[j],
                            t, 1);
        case 2:
            return hermite3(grid_[i], d2_[i], d3_[i], grid_[j], d2_[j], d3_[j], t, 0);
        default:
            return hermite3(grid_[i], d2_[i], d3_[i], grid_[j], d2_[j], d3_[j], t, 1);
    }
}

double SmoothPhi::eval_mollified(double t, int deriv) const {
    const auto& m = *exact_mollified_;
    double S = m.kernel.support();
    double acc = 0.0;
    const auto& cs = m.corners;
    auto lo = std::lower_bound(cs.begin(), cs.end(), t - S,
                               [](const Corner& c, double v) { return c.t < v; });
    for (auto it = lo; it != cs.end() && it->t <= t + S; ++it) {
        double u = t - it->t;
        switch (deriv) {
            case 0: acc += it->jump * m.kernel.ramp2(u); break;
            case 1: acc += it->jump * m.kernel.ramp1(u); break;
            case 2: acc += it->jump * m.kernel.density(u); break;
            default: acc += it->jump * m.kernel.ddensity(u); break;
        }
    }
    // corners fully to the left of the window contribute their ramp asymptote
    if (deriv <= 1) {
        std::size_t nleft = static_cast<std::size_t>(lo - cs.begin());
        if (deriv == 0)
            acc += t * m.pref_j[nleft] - m.pref_jt[nleft];
        else
            acc += m.pref_j[nleft];
    }
    switch (deriv) {
        case 0: return m.a0 + m.b0 * t + acc;
        case 1: return m.b0 + acc;
        default: return acc;
    }
}

std::vector<double> SmoothPhi::breakpoints(double lo, double hi) const {
    std::vector<double> out;
    if (!exact_mollified_) return out;
    const auto& m = *exact_mollified_;
    double s = m.kernel.scale();
    for (const auto& c : m.corners) {
        for (int k = -5; k <= 5; ++k) {
            double b = c.t + 0.5 * k * s;
            if (b > lo && b < hi) out.push_back(b);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SmoothPhi mollify(const PwlPhi& pwl, double kernel_width) {
    pwl.validate();
    double delta = pwl.t[1] - pwl.t[0];
    if (!(kernel_width > 0.0))
        throw std::invalid_argument("mollify: kernel width must be positive");
    if (!(kernel_width < 0.5 * delta))
        throw std::invalid_argument("mollify: kernel wider than half the initial segment");

    auto data = std::make_shared<SmoothPhi::MollifiedData>(SmoothPhi::MollifiedData{
        0.0, 0.0, {}, BsplineKernel(kernel_width), {}, {}});
    // base line through the first node with the first slope, corners at the
    // interior nodes carrying slope jumps
    double s0 = pwl.slope(0);
    data->b0 = s0;
    data->a0 = pwl.phi[0] - s0 * pwl.t[0];
    for (std::size_t k = 1; k + 1 < pwl.t.size(); ++k)
        data->corners.push_back({pwl.t[k], pwl.slope(k) - pwl.slope(k - 1)});
    data->pref_j.assign(data->corners.size() + 1, 0.0);
    data->pref_jt.assign(data->corners.size() + 1, 0.0);
    for (std::size_t k = 0; k < data->corners.size(); ++k) {
        data->pref_j[k + 1] = data->pref_j[k] + data->corners[k].jump;
        data->pref_jt[k + 1] = data->pref_jt[k] + data->corners[k].jump * data->corners[k].t;
    }

    SmoothPhi out;
    out.exact_mollified_ = data;

    // sample grid: pwl nodes plus kernel-support edges around each corner
    double S = data->kernel.support();
    std::set<double> g(pwl.t.begin(), pwl.t.end());
    for (const auto& c : data->corners) {
        g.insert(c.t - S);
        g.insert(c.t + S);
        g.insert(c.t - 0.5 * S);
        g.insert(c.t + 0.5 * S);
    }
    double lo = pwl.t.front(), hi = pwl.t.back();
    for (auto it = g.begin(); it != g.end();) {
        if (*it < lo || *it > hi)
            it = g.erase(it);
        else
            ++it;
    }
    out.grid_.assign(g.begin(), g.end());
    out.sample_from_backend();
    out.validate();
    return out;
}

void SmoothPhi::sample_from_backend() {
    phi_.clear();
    d1_.clear();
    d2_.clear();
    d3_.clear();
    for (double t : grid_) {
        phi_.push_back(eval(t, 0));
        d1_.push_back(eval(t, 1));
        d2_.push_back(eval(t, 2));
        d3_.push_back(eval(t, 3));
    }
}

double l1_distance(const std::function<double(double)>& f, const StepPhi& step, double a, double b,
                   double tol) {
    std::vector<double> breaks(step.edges.begin(), step.edges.end());
    auto integrand = [&](double x) { return std::abs(f(x) - step(x)); };
    return adaptive_simpson_split(integrand, a, b, breaks, tol);
}

}  // namespace mweyl
