#pragma once
#include <array>
#include <string>
#include <vector>

#include "rpsim/dynamics.hpp"
#include "rpsim/linalg.hpp"
#include "rpsim/series.hpp"

namespace rpsim::obs {

// ---- Triplet yield -------------------------------------------------------

enum class YieldMethod { closed_form, quadrature };

struct YieldResult {
    double phi_T = 0.0;
    double phi_S = 0.0;
    std::string method;  // "closed_form" or "quadrature"
};

// Phi_T = k * integral_0^inf tr(Q_T rho(t)) dt for equal-rate decay.
// closed_form evaluates the integral analytically in the eigenbasis of H;
// quadrature integrates the same eigenbasis expression with Gauss-Legendre
// panels, truncating the exponential tail at e^{-k t_max} < 1e-8.
// rank1_triplet swaps Q_T for the rank-one |T><T| built from the unnormalized
// sum of the triplet basis states (comparison runs only).
YieldResult triplet_yield(const CMat& H, const CMat& rho0, double k,
                          YieldMethod method = YieldMethod::closed_form,
                          bool rank1_triplet = false);

// ---- Negativity ----------------------------------------------------------

// (||rho^{T_A}||_1 - 1)/2 for a normalized two-qubit state.  Tiny negative
// results in [-1e-9, 0) are clamped to 0 (and the mirrored overshoot above
// 0.5 is clamped back); anything worse throws, since it signals a
// positivity bug upstream.
double negativity(const CMat& rho_e);

// Per time point: reduce to the electron pair, renormalize by the surviving
// trace, evaluate negativity.  Points whose trace has decayed below 1e-12
// are emitted as missing.  renormalize=false instead scales the renormalized
// negativity back by the surviving trace (sensitivity variant).
CurveSeries negativity_trajectory(const dynamics::Trajectory& traj, bool renormalize = true);

// ---- Two-time CHSH witness -----------------------------------------------

enum class TwoTimeMode {
    amplitude,   // E(t1,t2) = <phi_{t1}| (sigma1.a)(sigma2.b) |phi_{t2}>
    heisenberg,  // E(t1,t2) = <S| A(t1) B(t2) |S>, A/B evolved operators
};

struct CHSHConfig {
    std::array<double, 3> a{0.0, 0.0, 1.0};  // detector direction 1, unit
    std::array<double, 3> b{0.0, 0.0, 1.0};  // detector direction 2, unit
    double lambda_max = 1.0;                 // bound scale; 2*lambda_max^2 is the classical bound
    bool apply_decay = true;                 // weight E(t1,t2) by e^{-k(t1+t2)/2}
    double k = 1.0;                          // us^-1
    TwoTimeMode two_time = TwoTimeMode::amplitude;
    bool real_part_first = false;            // Re() each term before combining (sensitivity check)
};

// |E| = |E(0,0) + E(0,t) + E(t,0) - E(t,t)| on the singlet, for a 4x4
// two-spin Hamiltonian.  The terms are complex for t1 != t2; the signed sum
// is taken in the complex plane and the modulus applied last.
double chsh_witness(const CMat& H, const CHSHConfig& cfg, double t);

// Same witness across a time grid, diagonalizing H once.
std::vector<double> chsh_curve(const CMat& H, const CHSHConfig& cfg,
                               const std::vector<double>& times);

// ---- Duration extraction ---------------------------------------------------

struct Duration {
    double t = 0.0;            // same unit as the input grid
    bool unterminated = false; // series never dropped below the threshold
};

// How long the series stays above `threshold`: the end of its first
// above-threshold excursion, measured from t = 0 and located by linear
// interpolation between the bracketing samples; grid end + flag when the
// series never drops back below.  A sub-threshold prefix before the first
// rise is tolerated (a witness with non-parallel detectors reads 2|a.b|,
// slightly under the bound, at t = 0 while the state is still maximally
// entangled); a series that never reaches the threshold is an error.
Duration entanglement_duration(const std::vector<double>& times,
                               const std::vector<double>& values, double threshold);

}  // namespace rpsim::obs
