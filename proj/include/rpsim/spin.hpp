#pragma once
#include <vector>

#include "rpsim/linalg.hpp"

// Multi-spin operator algebra on tensor products of spin-1/2 sites.
// Site layout convention everywhere: electrons first — [e1, e2] for the
// two-spin system, [e1, e2, n1, n2] for electron pair + two nuclei.
namespace rpsim::spin {

enum class Axis { x, y, z };

CMat pauli(Axis axis);

// Number of spin-1/2 sites for a state dimension; throws unless dim = 2^n.
int sites_for_dim(int dim);

// Kronecker-embed a 2x2 operator at `site` of an nsites-fold spin-1/2 space,
// identity on every other factor.  Throws on site out of range.
CMat embed(const CMat& op2, int site, int nsites);

// |S> = (|01> - |10>)/sqrt(2) on the electron pair, as a 4-component vector.
std::vector<cplx> singlet_state();

struct Projectors {
    CMat QS;  // |S><S| (x) 1_nuclear
    CMat QT;  // sum of the three triplet projectors (x) 1_nuclear
};
// Electron sites are 0 and 1 of an nsites-fold layout (nsites >= 2).
Projectors singlet_triplet_projectors(int nsites);

// Rank-1 variant built from the unnormalized |T> = |T+> + |T0> + |T->.
// Not a projector (trace 3 on the electron factor); kept selectable for
// comparison runs only.
CMat rank1_triplet_operator(int nsites);

// Reduced state on the `keep` subset of sites (ascending site indices kept
// in layout order).  Trace is preserved.
CMat partial_trace(const CMat& rho, int nsites, const std::vector<int>& keep);

enum class Subsystem { first, second };
// Blockwise transpose of one qubit of a two-qubit (4x4) operator.
CMat partial_transpose(const CMat& rho4, Subsystem which);

// Sum of singular values.
double trace_norm(const CMat& m);

}  // namespace rpsim::spin
