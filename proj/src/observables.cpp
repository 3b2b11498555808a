#include "rpsim/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "rpsim/spin.hpp"

namespace rpsim::obs {

namespace {

CMat to_basis(const CMat& V, const CMat& op) {  // V^dagger op V
    return matmul(matmul(adjoint(V), op), V);
}

// Elementwise C(m,n) = Q(n,m) * r(m,n); tr(Q rho(t)) in the eigenbasis is
// then sum_{m,n} C(m,n) e^{-i(w_m - w_n) t}.
CMat cross_weights(const CMat& Q, const CMat& r) {
    CMat C(Q.n);
    for (int m = 0; m < Q.n; ++m)
        for (int n = 0; n < Q.n; ++n) C(m, n) = Q(n, m) * r(m, n);
    return C;
}

double yield_closed(const CMat& C, const std::vector<double>& w, double k) {
    double acc = 0.0;
    const int n = C.n;
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < n; ++j)
            acc += std::real(C(m, j) / cplx(k, w[m] - w[j]));
    return k * acc;
}

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double kGlw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

double yield_quadrature(const CMat& C, const std::vector<double>& w, double k) {
    const int n = C.n;
    double wmax = 0.0;
    for (double wi : w) {
        wmax = std::max(wmax, std::abs(wi - w.front()));
        wmax = std::max(wmax, std::abs(w.back() - wi));
    }
    const double t_max = 18.42 / k;  // e^{-k t_max} < 1e-8 tail
    const double panel = M_PI / (wmax + k);
    const long panels = std::max(1L, static_cast<long>(std::ceil(t_max / panel)));
    const double h = t_max / static_cast<double>(panels);

    std::vector<cplx> ph(n);
    double acc = 0.0;
    for (long p = 0; p < panels; ++p) {
        const double mid = (static_cast<double>(p) + 0.5) * h;
        for (int q = 0; q < 8; ++q) {
            const double t = mid + 0.5 * h * kGlx[q];
            for (int m = 0; m < n; ++m) {
                const double ang = -w[m] * t;
                ph[m] = cplx(std::cos(ang), std::sin(ang));
            }
            double f = 0.0;
            for (int m = 0; m < n; ++m) {
                cplx row(0.0, 0.0);
                for (int j = 0; j < n; ++j) row += C(m, j) * std::conj(ph[j]);
                f += std::real(ph[m] * row);
            }
            acc += kGlw[q] * f * std::exp(-k * t);
        }
    }
    return k * acc * 0.5 * h;
}

}  // namespace

YieldResult triplet_yield(const CMat& H, const CMat& rho0, double k, YieldMethod method,
                          bool rank1_triplet) {
    if (k <= 0.0)
        throw std::invalid_argument("triplet_yield: k must be positive (yield integral diverges)");
    if (H.n != rho0.n) throw std::invalid_argument("triplet_yield: dimension mismatch");
    const int nsites = spin::sites_for_dim(H.n);
    const auto proj = spin::singlet_triplet_projectors(nsites);
    const CMat& QT = rank1_triplet ? spin::rank1_triplet_operator(nsites) : proj.QT;

    const Eigh hd = eigh(H);
    const CMat rt = to_basis(hd.V, rho0);
    const CMat CT = cross_weights(to_basis(hd.V, QT), rt);
    const CMat CS = cross_weights(to_basis(hd.V, proj.QS), rt);

    YieldResult out;
    if (method == YieldMethod::closed_form) {
        out.phi_T = yield_closed(CT, hd.w, k);
        out.phi_S = yield_closed(CS, hd.w, k);
        out.method = "closed_form";
    } else {
        out.phi_T = yield_quadrature(CT, hd.w, k);
        out.phi_S = yield_quadrature(CS, hd.w, k);
        out.method = "quadrature";
    }
    return out;
}

double negativity(const CMat& rho_e) {
    if (rho_e.n != 4) throw std::invalid_argument("negativity: need a two-qubit (4x4) state");
    if (std::abs(trace(rho_e) - 1.0) > 1e-6)
        throw std::invalid_argument("negativity: state is not normalized");
    const CMat pt = spin::partial_transpose(rho_e, spin::Subsystem::first);
    double nval = 0.5 * (spin::trace_norm(pt) - 1.0);
    if (nval < 0.0) {
        if (nval < -1e-9)
            throw std::runtime_error("negativity: partial-transpose norm below 1 beyond tolerance");
        nval = 0.0;
    } else if (nval > 0.5) {
        // mirrored overshoot window; matches the normalization slack accepted above
        if (nval > 0.5 + 1e-6)
            throw std::runtime_error("negativity: value above the two-qubit bound");
        nval = 0.5;
    }
    return nval;
}

CurveSeries negativity_trajectory(const dynamics::Trajectory& traj, bool renormalize) {
    if (traj.nsites < 2) throw std::invalid_argument("negativity_trajectory: no electron pair");
    CurveSeries s;
    s.label = renormalize ? "negativity" : "negativity_unrenormalized";
    s.abscissa_name = "t";
    s.abscissa_unit = "us";
    s.x = traj.times;
    s.y.resize(traj.times.size(), 0.0);
    s.missing.assign(traj.times.size(), 0);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        CMat re = (traj.nsites == 2) ? traj.states[i]
                                     : spin::partial_trace(traj.states[i], traj.nsites, {0, 1});
        const double tr = std::real(trace(re));
        if (tr < 1e-12) {
            s.missing[i] = 1;
            continue;
        }
        for (cplx& v : re.a) v /= tr;
        const double nval = negativity(re);
        s.y[i] = renormalize ? nval : nval * tr;
    }
    return s;
}

namespace {

CMat sigma_dot(const std::array<double, 3>& v) {
    CMat m = CMat::zero(2);
    add_scaled(m, v[0], spin::pauli(spin::Axis::x));
    add_scaled(m, v[1], spin::pauli(spin::Axis::y));
    add_scaled(m, v[2], spin::pauli(spin::Axis::z));
    return m;
}

double norm3(const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

std::vector<cplx> phase_apply(const std::vector<double>& w, double t,
                              const std::vector<cplx>& v, double sign) {
    std::vector<cplx> out(v.size());
    for (std::size_t m = 0; m < v.size(); ++m) {
        const double ang = sign * w[m] * t;
        out[m] = v[m] * cplx(std::cos(ang), std::sin(ang));
    }
    return out;
}

cplx vdot(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

}  // namespace

std::vector<double> chsh_curve(const CMat& H, const CHSHConfig& cfg,
                               const std::vector<double>& times) {
    if (H.n != 4) throw std::invalid_argument("chsh: needs the two-spin (4x4) model");
    if (std::abs(norm3(cfg.a) - 1.0) > 1e-12 || std::abs(norm3(cfg.b) - 1.0) > 1e-12)
        throw std::invalid_argument("chsh: detector directions must be unit vectors");
    if (cfg.k < 0.0) throw std::invalid_argument("chsh: negative decay rate");
    for (double t : times)
        if (t < 0.0) throw std::invalid_argument("chsh: negative time");

    const Eigh hd = eigh(H);
    const CMat I2 = CMat::identity(2);
    const CMat Ma = to_basis(hd.V, kron(sigma_dot(cfg.a), I2));
    const CMat Mb = to_basis(hd.V, kron(I2, sigma_dot(cfg.b)));
    const CMat Mab = matmul(Ma, Mb);
    std::vector<cplx> st(4);
    {
        const auto S = spin::singlet_state();
        for (int m = 0; m < 4; ++m) {
            cplx acc(0.0, 0.0);
            for (int i = 0; i < 4; ++i) acc += std::conj(hd.V(i, m)) * S[i];
            st[m] = acc;
        }
    }
    const cplx E00 = vdot(st, matvec(Mab, st));

    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        cplx E0t, Et0, Ett;
        if (cfg.two_time == TwoTimeMode::amplitude) {
            const std::vector<cplx> phi = phase_apply(hd.w, t, st, -1.0);
            E0t = vdot(st, matvec(Mab, phi));
            Et0 = vdot(phi, matvec(Mab, st));
            Ett = vdot(phi, matvec(Mab, phi));
        } else {
            // A(t1) B(t2) on the singlet; U U^dagger cancels inside E(t,t)
            const std::vector<cplx> phi = phase_apply(hd.w, t, st, -1.0);
            E0t = vdot(st, matvec(Ma, phase_apply(hd.w, t, matvec(Mb, phi), 1.0)));
            Et0 = vdot(phi, matvec(Ma, phase_apply(hd.w, t, matvec(Mb, st), -1.0)));
            Ett = vdot(phi, matvec(Mab, phi));
        }
        const double w0t = cfg.apply_decay ? std::exp(-0.5 * cfg.k * t) : 1.0;
        const double wtt = cfg.apply_decay ? std::exp(-cfg.k * t) : 1.0;
        double val;
        if (cfg.real_part_first)
            val = std::abs(std::real(E00) + (std::real(E0t) + std::real(Et0)) * w0t -
                           std::real(Ett) * wtt);
        else
            val = std::abs(E00 + (E0t + Et0) * w0t - Ett * wtt);
        out.push_back(val);
    }
    return out;
}

double chsh_witness(const CMat& H, const CHSHConfig& cfg, double t) {
    return chsh_curve(H, cfg, std::vector<double>{t}).front();
}

Duration entanglement_duration(const std::vector<double>& times,
                               const std::vector<double>& values, double threshold) {
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("entanglement_duration: bad series");
    constexpr double kEps = 1e-12;
    // Locate the first sample at or above the threshold.  Witness curves for
    // non-parallel detector axes start slightly below 2 even for a maximally
    // entangled state (|E(0,0)| = 2|a.b|), so a short sub-threshold prefix is
    // part of normal operation rather than an error.
    std::size_t rise = values.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= threshold - kEps) {
            rise = i;
            break;
        }
    }
    if (rise == values.size())
        throw std::invalid_argument(
            "entanglement_duration: series never reaches the threshold");
    // Duration = end of the first above-threshold excursion, measured from
    // t = 0 (the pair is created entangled; the witness may just need a few
    // samples before its reading clears the classical bound).
    for (std::size_t i = rise + 1; i < values.size(); ++i) {
        if (values[i] < threshold - kEps) {
            const double x0 = times[i - 1], x1 = times[i];
            const double y0 = values[i - 1], y1 = values[i];
            return {x0 + (threshold - y0) * (x1 - x0) / (y1 - y0), false};
        }
    }
    return {times.back(), true};
}

}  // namespace rpsim::obs
