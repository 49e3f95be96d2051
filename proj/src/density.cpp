#include "mweyl/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mweyl {

namespace {
constexpr double kPi = std::numbers::pi;
}

Hamiltonian step_hamiltonian(const StepPhi& step) {
    step.validate();
    std::vector<Hamiltonian::Segment> segs;
    for (std::size_t i = 0; i < step.values.size(); ++i)
        segs.push_back({step.edges[i], step.edges[i + 1], true, p_matrix(step.values[i]),
                        nullptr, 0.0});
    return Hamiltonian(std::move(segs), Hamiltonian::ExtendTail{});
}

TargetSpec TargetSpec::from_catalog(std::string key, double param) {
    TargetSpec t;
    t.catalog = std::move(key);
    t.param = param;
    return t;
}

TargetSpec TargetSpec::from_hamiltonian(Hamiltonian h) {
    TargetSpec t;
    t.hamiltonian = std::make_shared<Hamiltonian>(std::move(h));
    return t;
}

ResolvedTarget resolve_target(const TargetSpec& spec, double reference_tol) {
    ResolvedTarget r;
    if (spec.catalog.empty()) {
        if (!spec.hamiltonian)
            throw std::invalid_argument("resolve_target: neither catalog key nor Hamiltonian");
        r.h = spec.hamiltonian;
        r.name = "hamiltonian";
        auto h = r.h;
        r.reference_m = [h, reference_tol](Cplx z) {
            auto mr = m_function(*h, z, reference_tol);
            if (!mr.converged)
                throw NonconvergenceError("reference m did not converge", mr.diameter);
            return mr.m;
        };
        return r;
    }
    const std::string& key = spec.catalog;
    r.name = key;
    if (key == "free") {
        auto fwd = schrodinger_to_canonical(Potential::zero(), BoundaryData::lp(0.0), 48.0);
        r.h = std::make_shared<Hamiltonian>(std::move(fwd.h));
        r.reference_m = [](Cplx z) {
            return SpherePoint::finite(Cplx(0.0, 1.0) * sqrt_uhp(z));
        };
    } else if (key == "shifted-free") {
        double c = spec.param;
        auto fwd =
            schrodinger_to_canonical(Potential::constant(c), BoundaryData::lp(0.0), 48.0);
        r.h = std::make_shared<Hamiltonian>(std::move(fwd.h));
        r.reference_m = [c](Cplx z) {
            return SpherePoint::finite(Cplx(0.0, 1.0) * sqrt_uhp(z - c));
        };
    } else if (key == "constant-angle") {
        double th = spec.param;
        r.h = std::make_shared<Hamiltonian>(Hamiltonian::singular(th));
        double m = -std::cos(th) / std::sin(th);
        r.reference_m = [m](Cplx) { return SpherePoint::finite(Cplx(m, 0.0)); };
    } else if (key == "hinf") {
        r.h = std::make_shared<Hamiltonian>(Hamiltonian::singular(0.0));
        r.reference_m = [](Cplx) { return SpherePoint::infinity(); };
    } else if (key == "mass-at-infinity") {
        std::vector<Hamiltonian::Segment> segs{{0.0, 1.0, true, p_matrix(0.0), nullptr, 0.0}};
        r.h = std::make_shared<Hamiltonian>(
            Hamiltonian(std::move(segs), Hamiltonian::SingularTail{0.5 * kPi}));
        r.reference_m = [](Cplx z) { return SpherePoint::finite(z); };
    } else {
        throw std::invalid_argument("resolve_target: unknown catalog key '" + key + "'");
    }
    return r;
}

std::vector<ApproximationResult> approximate(const TargetSpec& target,
                                             const std::vector<ScheduleEntry>& schedule,
                                             double alpha,
                                             const ApproximateOptions& opts) {
    if (schedule.empty()) throw std::invalid_argument("approximate: empty schedule");
    if (alpha < 0.0 || alpha >= kPi)
        throw std::invalid_argument("approximate: alpha must lie in [0, pi)");
    ResolvedTarget rt = resolve_target(target);

    bool singular = rt.h->has_singular_tail();
    double window = opts.window;
    if (window <= 0.0) {
        if (singular && rt.h->x_max() > 0.0)
            window = rt.h->x_max();
        else if (singular)
            window = 8.0;  // pure singular type: any window sees the same matrix
        else
            window = 512.0;
    }
    std::vector<Cplx> grid = opts.grid.empty() ? default_grid() : opts.grid;

    std::vector<ApproximationResult> out;
    for (const auto& entry : schedule) {
        ApproximationResult res;
        res.n = entry.n;
        res.eps = entry.eps > 0.0 ? entry.eps : std::ldexp(1.0, -entry.n - 2);
        res.h = entry.h > 0.0 ? entry.h : std::ldexp(1.0, -entry.n - 2);
        res.alpha = alpha;

        // cells that are rank-one to within the corner resolution are kept
        // as single sub-steps; their omitted parts are below eps/4 in length
        double drop_frac = std::min(0.3, res.eps * std::ldexp(1.0, entry.n - 2));
        StepPhi step = build_step_phi(*rt.h, entry.n, window, drop_frac);
        PwlPhi pwl = pwl_approximate(step, alpha, res.eps, 2.5 * res.eps);
        auto phi = std::make_shared<const SmoothPhi>(mollify(pwl, res.h));
        res.phi = phi;

        Hamiltonian::Tail tail = Hamiltonian::ExtendTail{};
        if (singular && rt.h->x_max() > 0.0)
            tail = Hamiltonian::SingularTail{rt.h->singular_tail_theta()};
        auto happrox = std::make_shared<const Hamiltonian>(Hamiltonian::phi_patch(phi, tail));
        res.h_approx = happrox;

        res.weakstar = weakstar_dist(*happrox, *rt.h);

        res.diameters.assign(grid.size(), 0.0);
        res.l_used.assign(grid.size(), 0.0);
        std::vector<SpherePoint> ms(grid.size());
        std::vector<char> ok(grid.size(), 1);
        parallel_for(grid.size(), opts.threads, [&](std::size_t i) {
            auto mr = m_function(*happrox, grid[i], opts.m_tol);
            ms[i] = mr.m;
            res.diameters[i] = mr.diameter;
            res.l_used[i] = mr.L_used;
            ok[i] = mr.converged ? 1 : 0;
        });
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!ok[i]) res.all_converged = false;
            err = std::max(err, chordal_dist(ms[i], rt.reference_m(grid[i])));
        }
        res.m_error = err;

        auto back = canonical_to_schrodinger(*phi, 0.0, phi->domain_end());
        res.v = back.v;
        if (singular && rt.h->x_max() > 0.0) {
            auto [b, beta] = schrodinger_endpoint(back, rt.h->singular_tail_theta());
            res.regular_endpoint = true;
            res.schrodinger_b = b;
            res.schrodinger_beta = beta;
        }
        out.push_back(std::move(res));
    }
    return out;
}

std::vector<HarnessRow> appendix_harness(const Hamiltonian& target, const std::vector<int>& levels,
                                         double m_tol, double window) {
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (!(levels[i] < levels[i + 1]))
            throw std::invalid_argument("appendix_harness: levels must increase");
    std::vector<Cplx> grid = default_grid();
    Cplx zi(0.0, 1.0);

    std::vector<SpherePoint> m_ref(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto mr = m_function(target, grid[i], m_tol);
        if (!mr.converged)
            throw NonconvergenceError("appendix_harness: target m did not converge",
                                      mr.diameter);
        m_ref[i] = mr.m;
    }
    Solution u_ref = solve_canonical(target, zi, {Cplx(1.0), Cplx(0.0)}, 1.0);

    std::vector<Mat2> cum_ref;
    std::vector<double> cum_x;
    for (int k = 0; k <= 40; ++k) {
        cum_x.push_back(0.05 * k);
        cum_ref.push_back(cumulative_integral(target, cum_x.back()));
    }

    std::vector<HarnessRow> rows;
    for (int n : levels) {
        HarnessRow row;
        row.level = n;
        Hamiltonian hn = step_hamiltonian(build_step_phi(target, n, window));

        Solution un = solve_canonical(hn, zi, {Cplx(1.0), Cplx(0.0)}, 1.0);
        double sup = 0.0;
        for (std::size_t i = 0; i < un.x.size(); ++i) {
            auto ur = u_ref.at(un.x[i]);
            sup = std::max(sup, std::max(std::abs(un.u[i][0] - ur[0]),
                                         std::abs(un.u[i][1] - ur[1])));
        }
        row.solution_sup_err = sup;

        double csup = 0.0;
        for (std::size_t k = 0; k < cum_x.size(); ++k) {
            Mat2 d = cumulative_integral(hn, cum_x[k]) - cum_ref[k];
            csup = std::max(csup, d.op_norm());
        }
        row.cumulative_sup_err = csup;

        double merr = 0.0;
        MFunctionResult at_i;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            auto mr = m_function(hn, grid[i], m_tol);
            merr = std::max(merr, chordal_dist(mr.m, m_ref[i]));
            if (grid[i] == zi) at_i = mr;
        }
        row.m_grid_err = merr;

        if (at_i.L_used > 0.0 && !at_i.m.is_infinite()) {
            Cplx m = at_i.m.value();
            Solution f = weyl_solution(hn, zi, m, at_i.L_used);
            double lhs = m.imag() / zi.imag();
            double rhs = h_norm(hn, f, 0.0, at_i.L_used);
            row.imwith_residual = std::abs(lhs - rhs);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace mweyl
