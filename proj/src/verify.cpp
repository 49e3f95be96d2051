#include "mweyl/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "mweyl/canon.hpp"
#include "mweyl/density.hpp"
#include "mweyl/herglotz.hpp"
#include "mweyl/transform.hpp"

namespace mweyl {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_detail(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

Mat2 random_trace_normed(std::mt19937& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double lam = 0.5 + 0.5 * u01(rng);
    double th = kPi * u01(rng);
    Mat2 p = p_matrix(th), q = p_matrix(th + 0.5 * kPi);
    return lam * p + (1.0 - lam) * q;
}

Cplx random_z(std::mt19937& rng) {
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.2, 3.0);
    return Cplx(re(rng), im(rng));
}

Hamiltonian random_hamiltonian(std::mt19937& rng) {
    std::uniform_int_distribution<int> nseg(1, 4);
    std::uniform_real_distribution<double> len(0.25, 2.0);
    std::vector<Hamiltonian::Segment> segs;
    double x = 0.0;
    int n = nseg(rng);
    for (int i = 0; i < n; ++i) {
        double hi = x + len(rng);
        segs.push_back({x, hi, true, random_trace_normed(rng), nullptr, 0.0});
        x = hi;
    }
    return Hamiltonian(std::move(segs), Hamiltonian::ExtendTail{});
}

struct Battery {
    std::vector<VerifyCheck> checks;
    std::ostream& log;

    void add(const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
        log << (pass ? "[PASS] " : "[FAIL] ") << name << " (" << detail << ")\n";
    }
};

}  // namespace

std::vector<VerifyCheck> run_verification(std::ostream& log) {
    Battery b{{}, log};
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    {  // Mobius group action
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            Mobius2 m1(Cplx(u01(rng), u01(rng)), Cplx(u01(rng), u01(rng)),
                       Cplx(u01(rng), u01(rng)), Cplx(u01(rng), u01(rng)));
            Mobius2 m2(Cplx(u01(rng), u01(rng)), Cplx(u01(rng), u01(rng)),
                       Cplx(u01(rng), u01(rng)), Cplx(u01(rng), u01(rng)));
            if (!m1.nonsingular() || !m2.nonsingular()) continue;
            SpherePoint w(Cplx(u01(rng), u01(rng)), Cplx(u01(rng), u01(rng)));
            worst = std::max(worst, chordal_dist(mobius_apply(m1 * m2, w),
                                                 mobius_apply(m1, mobius_apply(m2, w))));
        }
        b.add("mobius-homomorphism", worst <= 1e-10, "worst " + format_detail(worst));
    }

    {  // chordal triangle inequality
        double worst = -1.0;
        for (int k = 0; k < 200; ++k) {
            SpherePoint a(Cplx(u01(rng), u01(rng)), Cplx(u01(rng), u01(rng)));
            SpherePoint c(Cplx(u01(rng), u01(rng)), Cplx(u01(rng), u01(rng)));
            SpherePoint d(Cplx(u01(rng), u01(rng)), Cplx(u01(rng), u01(rng)));
            double lhs = chordal_dist(a, c);
            double rhs = chordal_dist(a, d) + chordal_dist(d, c);
            worst = std::max(worst, lhs - rhs);
        }
        b.add("chordal-triangle", worst <= 1e-12, "worst gap " + format_detail(worst));
    }

    {  // projection periodicity (exact for exactly-representable shifts)
        bool ok = true;
        for (double th : {0.0, 0.25, 0.5, 1.0, kPi / 4.0, kPi / 2.0}) {
            for (int k = -2; k <= 2; ++k) {
                double shifted = th + k * kPi;
                // only assert when the shift did not round
                if (shifted - k * kPi != th) continue;
                Mat2 p = p_matrix(th), q = p_matrix(shifted);
                if (p.a11 != q.a11 || p.a12 != q.a12 || p.a22 != q.a22) ok = false;
            }
        }
        b.add("p-matrix-periodicity", ok, "bit-exact across exact pi shifts");
    }

    {  // Herglotz positivity on random specs
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            HerglotzSpec s;
            s.a = 2.0 * u01(rng) - 1.0;
            int na = int(3 * u01(rng));
            for (int i = 0; i < na; ++i)
                s.atoms.emplace_back(4.0 * u01(rng) - 2.0, 0.1 + u01(rng));
            s.density_grid = {-2.0, -1.0, 0.5, 2.0};
            s.density_vals = {u01(rng), u01(rng), u01(rng), u01(rng)};
            s.mass_at_inf = 0.5 * u01(rng);
            for (Cplx z : default_grid())
                worst = std::min(worst, eval_herglotz(s, z).imag());
        }
        b.add("herglotz-imag-positive", worst >= -1e-12, "min Im " + format_detail(worst));
    }

    {  // transfer determinant and composition
        double worst_det = 0.0, worst_comp = 0.0;
        for (int k = 0; k < 100; ++k) {
            Hamiltonian h = random_hamiltonian(rng);
            Cplx z = random_z(rng);
            double x1 = 3.0 * u01(rng) + 0.1, x0 = x1 * u01(rng), xm = x0 + (x1 - x0) * u01(rng);
            Mobius2 t = transfer_matrix(h, x0, x1, z);
            worst_det = std::max(worst_det, std::abs(t.det() - 1.0));
            Mobius2 t2 = transfer_matrix(h, xm, x1, z) * transfer_matrix(h, x0, xm, z);
            double diff = std::max(std::max(std::abs(t.a - t2.a), std::abs(t.b - t2.b)),
                                   std::max(std::abs(t.c - t2.c), std::abs(t.d - t2.d)));
            worst_comp = std::max(worst_comp, diff / (1.0 + t.entry_scale()));
        }
        b.add("transfer-det", worst_det <= 1e-10, "worst " + format_detail(worst_det));
        b.add("transfer-composition", worst_comp <= 1e-9, "worst " + format_detail(worst_comp));
    }

    {  // Weyl disk nesting
        bool ok = true;
        double worst = 0.0;
        for (const Hamiltonian& h :
             {Hamiltonian::constant(Mat2::half_identity(), 1.0), random_hamiltonian(rng)}) {
            for (Cplx z : {Cplx(0.0, 1.0), Cplx(1.0, 0.5)}) {
                double prev = 3.0;
                SpherePoint rep;
                const SpherePoint* rp = nullptr;
                for (double L = 1.0; L <= 32.0; L *= 2.0) {
                    WeylDisk d = weyl_disk(h, L, z, rp);
                    if (d.chordal_diameter > prev + 1e-10) {
                        ok = false;
                        worst = std::max(worst, d.chordal_diameter - prev);
                    }
                    prev = d.chordal_diameter;
                    rep = d.representative;
                    rp = &rep;
                }
            }
        }
        b.add("weyl-nesting", ok, "worst growth " + format_detail(worst));
    }

    {  // boundary-condition rotation law
        double worst = 0.0;
        Potential v = Potential::zero();
        for (double alpha : {kPi / 6.0, kPi / 3.0}) {
            for (Cplx z : {Cplx(0.0, 1.0), Cplx(1.0, 2.0)}) {
                auto m0 = m_schrodinger(v, BoundaryData::lp(0.0), z, 1e-9);
                auto ma = m_schrodinger(v, BoundaryData::lp(alpha), z, 1e-9);
                SpherePoint rot = mobius_apply(Mobius2::rotation(alpha), m0.m);
                worst = std::max(worst, chordal_dist(rot, ma.m));
            }
        }
        b.add("rotation-law", worst <= 1e-9, "worst " + format_detail(worst));
    }

    {  // free-potential round trip
        double r = roundtrip_residual(Potential::zero(), 0.0, 0.0, 3.0);
        b.add("roundtrip-free", r <= 1e-7, "sup " + format_detail(r));
    }

    {  // averaging identity
        std::vector<Hamiltonian::Segment> segs{
            {0.0, 1.0 / 3.0, true, p_matrix(kPi / 4.0), nullptr, 0.0},
            {1.0 / 3.0, 4.0, true, Mat2::half_identity(), nullptr, 0.0}};
        Hamiltonian h(std::move(segs), Hamiltonian::ExtendTail{});
        StepPhi step = build_step_phi(h, 3, 4.0);
        Hamiltonian hn = step_hamiltonian(step);
        double worst = 0.0;
        for (int n0 = 0; n0 <= 3; ++n0) {
            for (long j = 0; j < (4L << n0); ++j) {
                Mat2 d = dyadic_average(hn, n0, j) - dyadic_average(h, n0, j);
                worst = std::max(worst, d.op_norm());
            }
        }
        b.add("dyadic-average-identity", worst <= 1e-9, "worst " + format_detail(worst));
    }

    return b.checks;
}

}  // namespace mweyl
