#include "vsb/assembly.hpp"

#include "vsb/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vsb {

namespace {

constexpr double pi = std::numbers::pi;

struct NodeTable {
    int nq = 0;
    int N = 0;
    Eigen::MatrixXd psi_phi, psi_r, zeta_phi, zeta_theta;
};

NodeTable tabulate(const ModalBasis& basis, const QuadratureRule& quad, Execution exec)
{
    NodeTable t;
    t.nq = quad.count();
    t.N = basis.size();
    t.psi_phi.resize(t.nq, t.N);
    t.psi_r.resize(t.nq, t.N);
    t.zeta_phi.resize(t.nq, t.N);
    t.zeta_theta.resize(t.nq, t.N);
    const bool par = exec == Execution::parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int q = 0; q < t.nq; ++q) {
        std::vector<ShapeValue> sv(t.N);
        basis.shapes(std::acos(std::clamp(quad.x[q], -1.0, 1.0)), sv.data());
        for (int k = 0; k < t.N; ++k) {
            t.psi_phi(q, k) = sv[k].psi_phi;
            t.psi_r(q, k) = sv[k].psi_r;
            t.zeta_phi(q, k) = sv[k].dpsi_phi + sv[k].psi_r;
            t.zeta_theta(q, k) = sv[k].cot_psi_phi + sv[k].psi_r;
        }
    }
    return t;
}

template <class Density>
Eigen::MatrixXd integrate_pairs(const NodeTable& t, const QuadratureRule& quad, double scale,
                                Execution exec, Density density)
{
    Eigen::MatrixXd out(t.N, t.N);
    const bool par = exec == Execution::parallel;
#pragma omp parallel for schedule(dynamic) if (par)
    for (int k = 0; k < t.N; ++k) {
        for (int l = k; l < t.N; ++l) {
            double acc = 0.0;
            for (int q = 0; q < t.nq; ++q) acc += quad.w[q] * density(q, k, l);
            out(k, l) = scale * acc;
            out(l, k) = scale * acc;
        }
    }
    return out;
}

double relative_gap(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    const double ref = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return ref > 0 ? (a - b).cwiseAbs().maxCoeff() / ref : 0.0;
}

} // namespace

QuadratureRule QuadratureRule::gauss_legendre(int n)
{
    if (n < 1) throw ValidationError("quadrature needs at least one node");
    QuadratureRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const auto v = legendre(n, x);
            dp = v.derivative;
            const double dx = v.value / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        dp = legendre(n, x).derivative;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = x;
        rule.x[n - 1 - i] = -x;
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

QuadratureRule QuadratureRule::for_modes(int mode_count)
{
    return gauss_legendre(std::max(64, 2 * mode_count + 8));
}

Eigen::MatrixXd assemble_Mee(const ModalBasis& basis, const QuadratureRule& quad, Execution exec)
{
    const auto& s = basis.shell();
    const auto t = tabulate(basis, quad, exec);
    const double scale = 2.0 * pi * s.density * s.thickness * s.radius * s.radius;
    return integrate_pairs(t, quad, scale, exec, [&](int q, int k, int l) {
        return t.psi_phi(q, k) * t.psi_phi(q, l) + t.psi_r(q, k) * t.psi_r(q, l);
    });
}

Eigen::MatrixXd assemble_Kee(const ModalBasis& basis, const QuadratureRule& quad, Execution exec)
{
    const auto& s = basis.shell();
    const double nu = s.poisson_ratio;
    const auto t = tabulate(basis, quad, exec);
    const double scale = 2.0 * pi * s.youngs_modulus * s.thickness / (1.0 - nu * nu);
    return integrate_pairs(t, quad, scale, exec, [&](int q, int k, int l) {
        const double fk = t.zeta_phi(q, k), gk = t.zeta_theta(q, k);
        const double fl = t.zeta_phi(q, l), gl = t.zeta_theta(q, l);
        return fk * fl + gk * gl + nu * (fk * gl + gk * fl);
    });
}

ModalMatrices assemble_modal(const ModalBasis& basis, double alpha_d, double beta_d, Execution exec)
{
    ModalMatrices mm;
    mm.alpha_d = alpha_d;
    mm.beta_d = beta_d;
    const int N = basis.size();
    if (N == 0) {
        mm.M_ee.resize(0, 0);
        mm.K_ee.resize(0, 0);
        mm.D_ee.resize(0, 0);
        return mm;
    }
    const auto quad = QuadratureRule::for_modes(N);
    const auto fine = QuadratureRule::gauss_legendre(2 * quad.count());
    mm.M_ee = assemble_Mee(basis, quad, exec);
    mm.K_ee = assemble_Kee(basis, quad, exec);
    if (relative_gap(mm.M_ee, assemble_Mee(basis, fine, exec)) > 1e-8 ||
        relative_gap(mm.K_ee, assemble_Kee(basis, fine, exec)) > 1e-8)
        throw NumericalError("quadrature resolution: modal matrices not converged");
    mm.D_ee = alpha_d * mm.M_ee + beta_d * mm.K_ee;
    return mm;
}

std::vector<double> rr_eigenfrequencies(const Eigen::MatrixXd& M_ee, const Eigen::MatrixXd& K_ee)
{
    if (M_ee.rows() != M_ee.cols() || K_ee.rows() != M_ee.rows() || K_ee.cols() != M_ee.cols())
        throw ValidationError("mass and stiffness matrices must be square and the same size");
    if (M_ee.size() == 0) return {};
    Eigen::LLT<Eigen::MatrixXd> llt(M_ee);
    if (llt.info() != Eigen::Success) throw NumericalError("mass matrix is not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K_ee, M_ee);
    if (es.info() != Eigen::Success) throw NumericalError("generalized eigenproblem failed");
    std::vector<double> w;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        w.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
    std::sort(w.begin(), w.end());
    return w;
}

SystemMatrices assemble_system(double mass, const ModalMatrices& modal, double J_s, double J_s_rate,
                               const Eigen::Matrix3d& D_x, const Eigen::Matrix3d& D_w)
{
    if (!(J_s > 0)) throw ValidationError("rotational inertia must be positive");
    if (!(mass > 0)) throw ValidationError("mass must be positive");
    const Eigen::Index N = modal.M_ee.rows();
    if (modal.M_ee.cols() != N || modal.K_ee.rows() != N || modal.K_ee.cols() != N ||
        modal.D_ee.rows() != N || modal.D_ee.cols() != N)
        throw ValidationError("modal block dimension mismatch");
    const Eigen::Index n = 6 + N;
    SystemMatrices s;
    s.M = Eigen::MatrixXd::Zero(n, n);
    s.Mdot = Eigen::MatrixXd::Zero(n, n);
    s.D = Eigen::MatrixXd::Zero(n, n);
    s.M.block(0, 0, 3, 3) = mass * Eigen::Matrix3d::Identity();
    s.M.block(3, 3, 3, 3) = J_s * Eigen::Matrix3d::Identity();
    s.M.block(6, 6, N, N) = modal.M_ee;
    s.Mdot.block(3, 3, 3, 3) = J_s_rate * Eigen::Matrix3d::Identity();
    s.D.block(0, 0, 3, 3) = D_x;
    s.D.block(3, 3, 3, 3) = D_w;
    s.D.block(6, 6, N, N) = modal.D_ee;
    return s;
}

} // namespace vsb
