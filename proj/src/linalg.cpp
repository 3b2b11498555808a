#include "rpsim/linalg.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace rpsim {

namespace {
using EMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMat to_eigen(const CMat& m) {
    return Eigen::Map<const EMat>(m.a.data(), m.n, m.n);
}
}  // namespace

CMat matmul(const CMat& A, const CMat& B) {
    if (A.n != B.n) throw std::invalid_argument("matmul: dim mismatch");
    CMat C(A.n);
    kernels::active().matmul(A.n, A.a.data(), B.a.data(), C.a.data());
    return C;
}

CMat adjoint(const CMat& m) {
    CMat r(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) r(i, j) = std::conj(m(j, i));
    return r;
}

CMat kron(const CMat& A, const CMat& B) {
    CMat r(A.n * B.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            const cplx aij = A(i, j);
            if (aij == cplx(0.0, 0.0)) continue;
            for (int k = 0; k < B.n; ++k)
                for (int l = 0; l < B.n; ++l)
                    r(i * B.n + k, j * B.n + l) = aij * B(k, l);
        }
    return r;
}

void add_scaled(CMat& y, cplx alpha, const CMat& x) {
    if (y.n != x.n) throw std::invalid_argument("add_scaled: dim mismatch");
    kernels::active().axpy(y.a.size(), alpha, x.a.data(), y.a.data());
}

cplx trace(const CMat& m) {
    cplx t(0.0, 0.0);
    for (int i = 0; i < m.n; ++i) t += m(i, i);
    return t;
}

cplx trace_of_product(const CMat& A, const CMat& B) {
    // tr(AB) = sum_ij A_ij B_ji
    cplx t(0.0, 0.0);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) t += A(i, j) * B(j, i);
    return t;
}

double fro_norm(const CMat& m) {
    double s = 0.0;
    for (const cplx& v : m.a) s += std::norm(v);
    return std::sqrt(s);
}

double max_abs(const CMat& m) {
    double mx = 0.0;
    for (const cplx& v : m.a) mx = std::max(mx, std::abs(v));
    return mx;
}

double max_abs_diff(const CMat& A, const CMat& B) {
    double mx = 0.0;
    for (std::size_t i = 0; i < A.a.size(); ++i) mx = std::max(mx, std::abs(A.a[i] - B.a[i]));
    return mx;
}

double hermiticity_defect(const CMat& m) {
    double mx = 0.0;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            mx = std::max(mx, std::abs(m(i, j) - std::conj(m(j, i))));
    return mx;
}

std::vector<cplx> matvec(const CMat& A, const std::vector<cplx>& x) {
    std::vector<cplx> y(A.n, cplx(0.0, 0.0));
    for (int i = 0; i < A.n; ++i) {
        cplx acc(0.0, 0.0);
        const cplx* row = A.a.data() + static_cast<std::size_t>(i) * A.n;
        for (int j = 0; j < A.n; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

Eigh eigh(const CMat& m) {
    Eigen::SelfAdjointEigenSolver<EMat> solver(to_eigen(m));
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigh failed");
    Eigh out;
    out.w.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + m.n);
    out.V = CMat(m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) out.V(i, j) = solver.eigenvectors()(i, j);
    return out;
}

std::vector<double> singular_values(const CMat& m) {
    Eigen::JacobiSVD<EMat> svd(to_eigen(m));
    std::vector<double> s(svd.singularValues().data(), svd.singularValues().data() + m.n);
    return s;
}

std::vector<double> eigvalsh(const CMat& m) {
    return eigh(m).w;
}

}  // namespace rpsim
