#include "rpsim/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rpsim/spin.hpp"

namespace rpsim::model {

Vec3 FieldVector::cartesian() const {
    const double th = theta_deg * std::numbers::pi / 180.0;
    const double ph = phi_deg * std::numbers::pi / 180.0;
    return {B0 * std::sin(th) * std::cos(ph), B0 * std::sin(th) * std::sin(ph),
            B0 * std::cos(th)};
}

std::pair<HyperfineTensor, HyperfineTensor> tensor_preset(const std::string& name) {
    HyperfineTensor A1, A2;
    if (name == "A_default") {
        A1.a[0][0] = 10.0; A1.a[1][1] = 10.0;              // axial: no z coupling
        A2.a[0][0] = 5.0; A2.a[1][1] = 5.0; A2.a[2][2] = 5.0;  // isotropic
    } else if (name == "A_b") {
        A1.a[0][0] = 10.0; A1.a[1][1] = 10.0; A1.a[2][2] = 4.0;
        A2.a[0][0] = 5.0; A2.a[1][1] = 5.0; A2.a[2][2] = 5.0;
        A2.a[0][1] = 5.0;  // asymmetric off-diagonal term
    } else if (name == "A_c") {
        A1.a[2][2] = 4.0;  // only two nonzero entries across the pair
        A2.a[0][1] = 5.0;
    } else {
        throw std::invalid_argument("unknown tensor preset: " + name);
    }
    return {A1, A2};
}

std::pair<Vec3, Vec3> local_preset(const std::string& name) {
    if (name == "local_4_5") return {Vec3{0.0, 0.0, 4.0}, Vec3{0.0, 5.0, 0.0}};
    if (name == "local_5_5") return {Vec3{0.0, 0.0, 5.0}, Vec3{0.0, 5.0, 0.0}};
    throw std::invalid_argument("unknown local-field preset: " + name);
}

namespace {

// Spin-1/2 vector operator components sigma/2 embedded at `site`.
std::array<CMat, 3> spin_ops(int site, int nsites) {
    using spin::Axis;
    auto half = [&](Axis ax) {
        CMat s = spin::pauli(ax);
        for (cplx& v : s.a) v *= 0.5;
        return spin::embed(s, site, nsites);
    };
    return {half(Axis::x), half(Axis::y), half(Axis::z)};
}

BuildResult finalize(CMat H) {
    // Eq.-of-motion generator must be Hermitian; symmetrize and record the
    // pre-symmetrization defect (0 to machine precision by construction).
    BuildResult out;
    out.asymmetry = hermiticity_defect(H);
    CMat Hd = adjoint(H);
    CMat sym(H.n);
    for (std::size_t i = 0; i < sym.a.size(); ++i) sym.a[i] = 0.5 * (H.a[i] + Hd.a[i]);
    out.H = std::move(sym);
    return out;
}

}  // namespace

BuildResult build_hyperfine_hamiltonian(const ModelSpec& spec) {
    if (spec.kind != ModelKind::hyperfine)
        throw std::invalid_argument("build_hyperfine_hamiltonian: wrong model kind");
    const int nsites = 4;  // [e1, e2, n1, n2]
    const Vec3 B = spec.external.cartesian();
    CMat H(16);
    for (int e = 0; e < 2; ++e) {
        const auto S = spin_ops(e, nsites);
        const auto I = spin_ops(e + 2, nsites);
        const HyperfineTensor& A = (e == 0) ? spec.A1 : spec.A2;
        for (int u = 0; u < 3; ++u) {
            add_scaled(H, B[u], S[u]);
            for (int v = 0; v < 3; ++v) {
                if (A.a[u][v] == 0.0) continue;
                add_scaled(H, A.a[u][v], matmul(S[u], I[v]));
            }
        }
    }
    for (cplx& v : H.a) v *= spec.gamma;
    return finalize(std::move(H));
}

BuildResult build_local_field_hamiltonian(const ModelSpec& spec) {
    if (spec.kind != ModelKind::local_field)
        throw std::invalid_argument("build_local_field_hamiltonian: wrong model kind");
    const Vec3 B = spec.external.cartesian();
    CMat H(4);
    for (int e = 0; e < 2; ++e) {
        const auto S = spin_ops(e, 2);
        const Vec3& Bl = (e == 0) ? spec.B1 : spec.B2;
        for (int u = 0; u < 3; ++u) add_scaled(H, B[u] + Bl[u], S[u]);
    }
    for (cplx& v : H.a) v *= spec.gamma;
    return finalize(std::move(H));
}

BuildResult build_hamiltonian(const ModelSpec& spec) {
    return spec.kind == ModelKind::hyperfine ? build_hyperfine_hamiltonian(spec)
                                             : build_local_field_hamiltonian(spec);
}

CMat initial_state(ModelKind kind) {
    const auto S = spin::singlet_state();
    CMat ps(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ps(i, j) = S[i] * std::conj(S[j]);
    if (kind == ModelKind::local_field) return ps;
    CMat nuc = CMat::identity(4);
    for (cplx& v : nuc.a) v *= 0.25;  // completely mixed nuclear pair
    return kron(ps, nuc);
}

}  // namespace rpsim::model
