#pragma once

#include <memory>
#include <optional>
#include <string>

#include "mweyl/canon.hpp"
#include "mweyl/transform.hpp"

namespace mweyl {

/// Hamiltonian made of constant projection segments P_{value_i}
Hamiltonian step_hamiltonian(const StepPhi& step);

/// Approximation target: a catalog key with a closed-form reference m, or
/// an explicit Hamiltonian (reference computed by the disk ladder).
struct TargetSpec {
    std::string catalog;  // free | shifted-free | constant-angle | hinf | mass-at-infinity
    double param = 0.0;   // shift c, or angle theta
    std::shared_ptr<const Hamiltonian> hamiltonian;  // used when catalog empty

    static TargetSpec from_catalog(std::string key, double param = 0.0);
    static TargetSpec from_hamiltonian(Hamiltonian h);
};

struct ResolvedTarget {
    std::shared_ptr<const Hamiltonian> h;
    std::function<SpherePoint(Cplx)> reference_m;
    std::string name;
};

ResolvedTarget resolve_target(const TargetSpec& spec, double reference_tol = 1e-8);

struct ScheduleEntry {
    int n = 2;
    double eps = 0.0;  // 0: diagonal default 2^{-n-2}
    double h = 0.0;    // 0: same default
};

struct ApproximateOptions {
    double window = 0.0;  // 0: tail start when singular, else 512 (8 for pure tails)
    double m_tol = 1e-5;
    unsigned threads = 1;
    std::vector<Cplx> grid;  // empty: default grid
};

/// One pipeline stage: step function -> strictly increasing pwl -> mollified
/// smooth angle -> P_phi Hamiltonian -> smooth potential.
struct ApproximationResult {
    int n = 0;
    double eps = 0.0, h = 0.0;
    double alpha = 0.0;
    std::shared_ptr<const SmoothPhi> phi;
    std::shared_ptr<const Hamiltonian> h_approx;
    Potential v = Potential::zero();
    double weakstar = 0.0;  // distance to the target Hamiltonian
    double m_error = 0.0;   // grid chordal distance to the reference m
    std::vector<double> diameters;  // per grid point
    std::vector<double> l_used;
    bool all_converged = true;
    bool regular_endpoint = false;
    double schrodinger_b = 0.0, schrodinger_beta = 0.0;
};

std::vector<ApproximationResult> approximate(const TargetSpec& target,
                                             const std::vector<ScheduleEntry>& schedule,
                                             double alpha,
                                             const ApproximateOptions& opts = {});

struct HarnessRow {
    int level = 0;
    double solution_sup_err = 0.0;    // z = i, fixed initial value, on [0,1]
    double cumulative_sup_err = 0.0;  // entrywise sup on [0,2]
    double m_grid_err = 0.0;          // chordal, default grid
    double imwith_residual = 0.0;     // |Im m / Im z - int f* H f| at z = i
};

/// Dyadic-average ladder diagnostics for a target Hamiltonian.
std::vector<HarnessRow> appendix_harness(const Hamiltonian& target, const std::vector<int>& levels,
                                         double m_tol = 1e-8, double window = 64.0);

}  // namespace mweyl
