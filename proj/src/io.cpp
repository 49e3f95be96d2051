#include "mweyl/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mweyl {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

// ---- JSON ----

Json herglotz_to_json(const HerglotzSpec& s) {
    Json atoms = Json::array();
    for (const auto& [t, w] : s.atoms) atoms.push_back(Json::array({t, w}));
    return Json{{"A", s.a},
                {"atoms", atoms},
                {"density", Json{{"grid", s.density_grid}, {"values", s.density_vals}}},
                {"mass_at_inf", s.mass_at_inf}};
}

HerglotzSpec herglotz_from_json(const Json& j) {
    HerglotzSpec s;
    s.a = j.value("A", 0.0);
    if (j.contains("atoms"))
        for (const auto& a : j.at("atoms"))
            s.atoms.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    if (j.contains("density")) {
        s.density_grid = j.at("density").value("grid", std::vector<double>{});
        s.density_vals = j.at("density").value("values", std::vector<double>{});
    }
    s.mass_at_inf = j.value("mass_at_inf", 0.0);
    s.validate();
    return s;
}

Json hamiltonian_to_json(const Hamiltonian& h) {
    Json segs = Json::array();
    for (const auto& s : h.segments()) {
        Json js{{"lo", s.lo}, {"hi", s.hi}};
        if (s.is_const) {
            js["kind"] = "const";
            js["matrix"] = Json::array({Json::array({s.m.a11, s.m.a12}),
                                        Json::array({s.m.a12, s.m.a22})});
        } else {
            js["kind"] = "phi";
            js["grid"] = s.phi->grid();
            js["phi"] = s.phi->phi();
            js["dphi"] = s.phi->d1();
            js["d2phi"] = s.phi->d2();
            js["d3phi"] = s.phi->d3();
            if (s.phi_shift != 0.0) js["shift"] = s.phi_shift;
        }
        segs.push_back(js);
    }
    Json tail;
    if (h.has_singular_tail())
        tail = Json{{"theta", h.singular_tail_theta()}};
    else
        tail = nullptr;
    return Json{{"segments", segs}, {"tail", tail}};
}

Hamiltonian hamiltonian_from_json(const Json& j) {
    std::vector<Hamiltonian::Segment> segs;
    for (const auto& js : j.at("segments")) {
        Hamiltonian::Segment s;
        s.lo = js.at("lo").get<double>();
        s.hi = js.at("hi").get<double>();
        std::string kind = js.at("kind").get<std::string>();
        if (kind == "const") {
            auto m = js.at("matrix");
            s.is_const = true;
            s.m = Mat2(m.at(0).at(0).get<double>(), m.at(0).at(1).get<double>(),
                       m.at(1).at(1).get<double>());
        } else if (kind == "phi") {
            s.is_const = false;
            s.phi = std::make_shared<const SmoothPhi>(SmoothPhi::from_samples(
                js.at("grid").get<std::vector<double>>(), js.at("phi").get<std::vector<double>>(),
                js.at("dphi").get<std::vector<double>>(),
                js.at("d2phi").get<std::vector<double>>(),
                js.at("d3phi").get<std::vector<double>>()));
            s.phi_shift = js.value("shift", 0.0);
        } else {
            throw std::invalid_argument("hamiltonian_from_json: unknown segment kind " + kind);
        }
        segs.push_back(std::move(s));
    }
    Hamiltonian::Tail tail = Hamiltonian::ExtendTail{};
    if (j.contains("tail") && !j.at("tail").is_null())
        tail = Hamiltonian::SingularTail{j.at("tail").at("theta").get<double>()};
    return Hamiltonian(std::move(segs), tail);
}

Json target_to_json(const TargetSpec& t) {
    if (!t.catalog.empty()) return Json{{"catalog", t.catalog}, {"param", t.param}};
    return Json{{"hamiltonian", hamiltonian_to_json(*t.hamiltonian)}};
}

TargetSpec target_from_json(const Json& j) {
    if (j.contains("catalog"))
        return TargetSpec::from_catalog(j.at("catalog").get<std::string>(), j.value("param", 0.0));
    if (j.contains("hamiltonian"))
        return TargetSpec::from_hamiltonian(hamiltonian_from_json(j.at("hamiltonian")));
    throw std::invalid_argument("target_from_json: need catalog or hamiltonian");
}

// ---- CSV ----

namespace {

std::vector<std::vector<double>> read_csv_columns(const std::string& path,
                                                  const std::string& expect_header) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty csv " + path);
    if (line != expect_header)
        throw std::invalid_argument("unexpected header in " + path + ": " + line);
    std::size_t ncol = 1 + std::count(expect_header.begin(), expect_header.end(), ',');
    std::vector<std::vector<double>> cols(ncol);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t c = 0; c < ncol; ++c) {
            if (!std::getline(ss, cell, ',')) throw std::invalid_argument("short row in " + path);
            cols[c].push_back(std::stod(cell));
        }
    }
    return cols;
}

}  // namespace

void write_m_grid_csv(const std::string& path, const std::vector<MGridRow>& rows) {
    std::ostringstream out;
    out << "re_z,im_z,re_m,im_m,is_infinite,diameter,L_used\n";
    for (const auto& r : rows) {
        bool inf = r.m.is_infinite();
        Cplx m = inf ? Cplx(0.0, 0.0) : r.m.value();
        out << format_g17(r.z.real()) << ',' << format_g17(r.z.imag()) << ','
            << format_g17(m.real()) << ',' << format_g17(m.imag()) << ',' << (inf ? 1 : 0) << ','
            << format_g17(r.diameter) << ',' << format_g17(r.l_used) << '\n';
    }
    write_text_atomic(path, out.str());
}

void write_phi_csv(const std::string& path, const SmoothPhi& phi) {
    std::ostringstream out;
    out << "t,phi,dphi,d2phi,d3phi\n";
    const auto& g = phi.grid();
    for (std::size_t i = 0; i < g.size(); ++i) {
        out << format_g17(g[i]) << ',' << format_g17(phi.phi()[i]) << ','
            << format_g17(phi.d1()[i]) << ',' << format_g17(phi.d2()[i]) << ','
            << format_g17(phi.d3()[i]) << '\n';
    }
    write_text_atomic(path, out.str());
}

SmoothPhi read_phi_csv(const std::string& path) {
    auto cols = read_csv_columns(path, "t,phi,dphi,d2phi,d3phi");
    return SmoothPhi::from_samples(cols[0], cols[1], cols[2], cols[3], cols[4]);
}

void write_potential_csv(const std::string& path, const Potential& v, double x_lo, double x_hi,
                         int samples) {
    std::ostringstream out;
    out << "x,V\n";
    if (v.sampled() && samples <= 0) {
        const auto& xs = v.sample_x();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] < x_lo || xs[i] > x_hi) continue;
            out << format_g17(xs[i]) << ',' << format_g17(v.sample_v()[i]) << '\n';
        }
    } else {
        int n = samples > 0 ? samples : 400;
        for (int i = 0; i <= n; ++i) {
            double x = x_lo + (x_hi - x_lo) * i / double(n);
            out << format_g17(x) << ',' << format_g17(v(x)) << '\n';
        }
    }
    write_text_atomic(path, out.str());
}

Potential read_potential_csv(const std::string& path) {
    auto cols = read_csv_columns(path, "x,V");
    return Potential::from_samples(cols[0], cols[1]);
}

void write_transform_csv(const std::string& path, const TransformData& td) {
    std::ostringstream out;
    out << "x,t,R,phi\n";
    for (std::size_t i = 0; i < td.x.size(); ++i) {
        out << format_g17(td.x[i]) << ',' << format_g17(td.t[i]) << ',' << format_g17(td.r[i])
            << ',' << format_g17(td.phi[i]) << '\n';
    }
    write_text_atomic(path, out.str());
}

std::vector<Cplx> read_grid_csv(const std::string& path) {
    auto cols = read_csv_columns(path, "re_z,im_z");
    std::vector<Cplx> g;
    for (std::size_t i = 0; i < cols[0].size(); ++i) g.emplace_back(cols[0][i], cols[1][i]);
    return g;
}

void write_grid_csv(const std::string& path, const std::vector<Cplx>& grid) {
    std::ostringstream out;
    out << "re_z,im_z\n";
    for (Cplx z : grid) out << format_g17(z.real()) << ',' << format_g17(z.imag()) << '\n';
    write_text_atomic(path, out.str());
}

}  // namespace mweyl
