#pragma once
#include <array>
#include <string>
#include <utility>

#include "rpsim/linalg.hpp"

namespace rpsim::model {

// Electron gyromagnetic conversion g*muB/hbar with g=2, expressed in
// rad us^-1 G^-1 (CODATA muB and hbar; 1 G = 1e-4 T):
//   2 * 9.2740100783e-24 / 1.054571817e-34 * 1e-4 / 1e6
inline constexpr double kGammaDefault =
    2.0 * 9.2740100783e-24 / 1.054571817e-34 * 1.0e-10;

using Vec3 = std::array<double, 3>;

// External field given by magnitude plus spherical angles in degrees.
struct FieldVector {
    double B0 = 0.0;        // Gauss
    double theta_deg = 0.0; // polar
    double phi_deg = 0.0;   // azimuthal
    Vec3 cartesian() const;
};

struct HyperfineTensor {
    double a[3][3] = {};  // Gauss
};

enum class ModelKind { hyperfine, local_field };

struct ModelSpec {
    ModelKind kind = ModelKind::hyperfine;
    FieldVector external;
    HyperfineTensor A1, A2;  // hyperfine kind
    Vec3 B1{}, B2{};         // local-field kind, Gauss
    double k_S = 1.0;        // us^-1
    double k_T = 1.0;
    double gamma = kGammaDefault;  // rad us^-1 G^-1
};

// Hyperfine tensor pairs: A_default, A_b, A_c.
std::pair<HyperfineTensor, HyperfineTensor> tensor_preset(const std::string& name);
// Local-field pairs: local_4_5 -> B1=(0,0,4), B2=(0,5,0); local_5_5 -> B1=(0,0,5).
std::pair<Vec3, Vec3> local_preset(const std::string& name);

struct BuildResult {
    CMat H;
    // max |H - H^dagger| before symmetrization; recorded in run metadata.
    // Zero by construction for every real tensor (each S_a (x) I_b term is
    // Hermitian on its own), symmetric or not.
    double asymmetry = 0.0;
};

// H = gamma * sum_i S_i . (B + A_i . I_i) on layout [e1,e2,n1,n2]; 16x16.
BuildResult build_hyperfine_hamiltonian(const ModelSpec& spec);
// H = gamma * sum_i S_i . (B + B_i_local) on layout [e1,e2]; 4x4.
BuildResult build_local_field_hamiltonian(const ModelSpec& spec);
BuildResult build_hamiltonian(const ModelSpec& spec);  // dispatch on kind

// hyperfine: |S><S| (x) 1/4 (16x16); local-field: |S><S| (4x4).
CMat initial_state(ModelKind kind);

}  // namespace rpsim::model
