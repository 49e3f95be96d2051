#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mweyl {

using Cplx = std::complex<double>;

/// Numerical iteration exceeded its cap without reaching the requested
/// tolerance. `last_scale` carries the achieved figure (disk diameter,
/// step size, ...) so callers can report partial results.
class NonconvergenceError : public std::runtime_error {
public:
    NonconvergenceError(const std::string& what, double last_scale)
        : std::runtime_error(what), last_scale(last_scale) {}
    double last_scale;
};

/// Evaluation grid used whenever "the default grid" is referenced:
/// {x + iy : x in {-2,-1,0,1,2}, y in {0.5,1,2}}, x-major order.
std::vector<Cplx> default_grid();

/// Principal square root mapping the open upper half plane into itself
/// (Im sqrt_uhp(z) > 0 for Im z > 0, branch cut on [0,inf)).
Cplx sqrt_uhp(Cplx z);

/// Run fn(i) for i in [0,n) on `threads` workers. Deterministic output
/// slots are the caller's business; order of execution is not.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Thread count resolution: explicit argument > MWEYL_THREADS env > 1.
unsigned resolve_threads(int requested);

}  // namespace mweyl
