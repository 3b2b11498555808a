#include "rpsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "rpsim/spin.hpp"

namespace rpsim::dynamics {

std::vector<double> time_grid(double t0, double t1, int points) {
    if (points < 2 || t1 <= t0) throw std::invalid_argument("time_grid: bad grid");
    std::vector<double> t(points);
    const double dt = (t1 - t0) / (points - 1);
    for (int i = 0; i < points; ++i) t[i] = t0 + dt * i;
    t.back() = t1;
    return t;
}

namespace {

using spin::sites_for_dim;

// rt -> V (phases outer-conj phases . rt) V^dagger, where rt is rho0 in the
// eigenbasis.  The elementwise phase product is the cmul kernel's job.
CMat reconstruct(const Eigh& hd, const CMat& rt, const std::vector<cplx>& ph, double scale) {
    const int n = rt.n;
    CMat phased(n);
    std::vector<cplx> rowphase(n);
    for (int i = 0; i < n; ++i) {
        const cplx pi = ph[i];
        for (int j = 0; j < n; ++j) rowphase[j] = pi * std::conj(ph[j]);
        kernels::active().cmul(static_cast<std::size_t>(n),
                               rt.a.data() + static_cast<std::size_t>(i) * n,
                               rowphase.data(),
                               phased.a.data() + static_cast<std::size_t>(i) * n);
    }
    CMat out = matmul(matmul(hd.V, phased), adjoint(hd.V));
    for (cplx& v : out.a) v *= scale;
    return out;
}

}  // namespace

Trajectory propagate_exact_equal_rates(const CMat& H, const CMat& rho0, double k,
                                       const std::vector<double>& times) {
    if (k < 0.0) throw std::invalid_argument("propagate: negative rate");
    if (hermiticity_defect(H) > 1e-9) throw std::invalid_argument("propagate: H not Hermitian");
    const Eigh hd = eigh(H);
    CMat rt = matmul(matmul(adjoint(hd.V), rho0), hd.V);

    Trajectory traj;
    traj.times = times;
    traj.nsites = sites_for_dim(H.n);
    traj.integrator = "exact_eigendecomposition";
    traj.states.reserve(times.size());
    std::vector<cplx> ph(H.n);
    for (double t : times) {
        for (int m = 0; m < H.n; ++m) {
            const double ang = -hd.w[m] * t;
            ph[m] = cplx(std::cos(ang), std::sin(ang));
        }
        traj.states.push_back(reconstruct(hd, rt, ph, std::exp(-k * t)));
    }
    return traj;
}

namespace {

// -i[H,rho] - kS/2 {QS,rho} - kT/2 {QT,rho}
CMat liouville_rhs(const CMat& H, const CMat& QS, const CMat& QT, double kS, double kT,
                   const CMat& rho) {
    CMat Hr = matmul(H, rho);
    CMat rH = matmul(rho, H);
    CMat out(rho.n);
    const cplx mi(0.0, -1.0);
    add_scaled(out, mi, Hr);
    add_scaled(out, -mi, rH);
    if (kS != 0.0) {
        add_scaled(out, -0.5 * kS, matmul(QS, rho));
        add_scaled(out, -0.5 * kS, matmul(rho, QS));
    }
    if (kT != 0.0) {
        add_scaled(out, -0.5 * kT, matmul(QT, rho));
        add_scaled(out, -0.5 * kT, matmul(rho, QT));
    }
    return out;
}

}  // namespace

Trajectory propagate_general(const CMat& H, const CMat& rho0, double k_S, double k_T,
                             const std::vector<double>& times, double h_max_override) {
    if (k_S < 0.0 || k_T < 0.0) throw std::invalid_argument("propagate: negative rate");
    const int nsites = sites_for_dim(H.n);
    const auto proj = spin::singlet_triplet_projectors(nsites);

    const double scale = fro_norm(H) + k_S + k_T;
    // 0.005 keeps every sampled state positive semidefinite to ~1e-10 and the
    // entrywise error well under 1e-8 over a 1 us window (h^4 law).  The local
    // two-field model needs the margin: its fastest oscillation (~158 rad/us)
    // is large relative to its Frobenius norm (~113), so a norm-based step
    // under-resolves it compared with the 16-dimensional hyperfine models.
    const double h_auto = (scale > 0.0) ? 0.005 / scale : 1e9;
    const double h_max = (h_max_override > 0.0) ? h_max_override : h_auto;

    Trajectory traj;
    traj.times = times;
    traj.nsites = nsites;
    traj.states.reserve(times.size());

    CMat rho = rho0;
    double tcur = 0.0;
    long total_steps = 0;
    auto rk4_to = [&](double ttarget) {
        const double span = ttarget - tcur;
        if (span <= 0.0) return;
        const int substeps = std::max(1, static_cast<int>(std::ceil(span / h_max)));
        const double h = span / substeps;
        for (int s = 0; s < substeps; ++s) {
            CMat k1 = liouville_rhs(H, proj.QS, proj.QT, k_S, k_T, rho);
            CMat y2 = rho;
            add_scaled(y2, 0.5 * h, k1);
            CMat k2 = liouville_rhs(H, proj.QS, proj.QT, k_S, k_T, y2);
            CMat y3 = rho;
            add_scaled(y3, 0.5 * h, k2);
            CMat k3 = liouville_rhs(H, proj.QS, proj.QT, k_S, k_T, y3);
            CMat y4 = rho;
            add_scaled(y4, h, k3);
            CMat k4 = liouville_rhs(H, proj.QS, proj.QT, k_S, k_T, y4);
            add_scaled(rho, h / 6.0, k1);
            add_scaled(rho, h / 3.0, k2);
            add_scaled(rho, h / 3.0, k3);
            add_scaled(rho, h / 6.0, k4);
        }
        total_steps += substeps;
        tcur = ttarget;
    };

    for (double t : times) {
        rk4_to(t);
        traj.states.push_back(rho);
    }
    traj.integrator = "rk4 fixed-step, " + std::to_string(total_steps) + " steps";
    return traj;
}

std::vector<cplx> evolve_pure(const Eigh& hd, const std::vector<cplx>& psi0, double t) {
    const int n = hd.V.n;
    // V e^{-i w t} V^dagger psi0
    std::vector<cplx> tmp(n, cplx(0.0, 0.0));
    for (int m = 0; m < n; ++m) {
        cplx acc(0.0, 0.0);
        for (int i = 0; i < n; ++i) acc += std::conj(hd.V(i, m)) * psi0[i];
        const double ang = -hd.w[m] * t;
        tmp[m] = acc * cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        cplx acc(0.0, 0.0);
        for (int m = 0; m < n; ++m) acc += hd.V(i, m) * tmp[m];
        out[i] = acc;
    }
    return out;
}

std::vector<cplx> evolve_pure(const CMat& H, const std::vector<cplx>& psi0, double t) {
    return evolve_pure(eigh(H), psi0, t);
}

}  // namespace rpsim::dynamics
