#pragma once
#include <string>
#include <vector>

#include "rpsim/linalg.hpp"

namespace rpsim::dynamics {

struct Trajectory {
    std::vector<double> times;   // us, strictly increasing from 0
    std::vector<CMat> states;    // density matrix per time point
    int nsites = 0;              // spin-1/2 sites in the layout
    std::string integrator;      // provenance record for run metadata
};

std::vector<double> time_grid(double t0, double t1, int points);

// rho(t) = e^{-kt} U(t) rho0 U(t)^dagger via Hermitian eigendecomposition.
// Exact for k_S = k_T = k because Q_S + Q_T = 1 collapses both
// anticommutator terms to -k rho.
Trajectory propagate_exact_equal_rates(const CMat& H, const CMat& rho0, double k,
                                       const std::vector<double>& times);

// Full equation of motion
//   rho' = -i[H,rho] - k_S/2 {Q_S,rho} - k_T/2 {Q_T,rho}
// integrated with fixed-step classical RK4; substeps chosen so that
// h * (||H||_F + k_S + k_T) <= 0.005.  A positive h_max_override replaces the
// automatic step bound (used by the convergence study).
Trajectory propagate_general(const CMat& H, const CMat& rho0, double k_S, double k_T,
                             const std::vector<double>& times,
                             double h_max_override = 0.0);

// |phi_t> = exp(-iHt) |psi0> via eigendecomposition.
std::vector<cplx> evolve_pure(const CMat& H, const std::vector<cplx>& psi0, double t);
std::vector<cplx> evolve_pure(const Eigh& hd, const std::vector<cplx>& psi0, double t);

}  // namespace rpsim::dynamics
