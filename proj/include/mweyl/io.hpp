#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mweyl/density.hpp"
#include "mweyl/herglotz.hpp"

namespace mweyl {

using Json = nlohmann::json;

// ---- JSON ----

Json herglotz_to_json(const HerglotzSpec& s);
HerglotzSpec herglotz_from_json(const Json& j);

Json hamiltonian_to_json(const Hamiltonian& h);
Hamiltonian hamiltonian_from_json(const Json& j);

Json target_to_json(const TargetSpec& t);
TargetSpec target_from_json(const Json& j);

// ---- CSV (all numbers %.17g; deterministic, no timestamps) ----

std::string format_g17(double v);

struct MGridRow {
    Cplx z;
    SpherePoint m;
    double diameter = 0.0;
    double l_used = 0.0;
};
/// columns re_z, im_z, re_m, im_m, is_infinite, diameter, L_used
void write_m_grid_csv(const std::string& path, const std::vector<MGridRow>& rows);

/// columns t, phi, dphi, d2phi, d3phi
void write_phi_csv(const std::string& path, const SmoothPhi& phi);
SmoothPhi read_phi_csv(const std::string& path);

/// columns x, V
void write_potential_csv(const std::string& path, const Potential& v, double x_lo, double x_hi,
                         int samples = 0);
Potential read_potential_csv(const std::string& path);

/// columns x, t, R, phi
void write_transform_csv(const std::string& path, const TransformData& td);

/// columns re_z, im_z
std::vector<Cplx> read_grid_csv(const std::string& path);
void write_grid_csv(const std::string& path, const std::vector<Cplx>& grid);

/// atomic text write (temp file + rename)
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace mweyl
