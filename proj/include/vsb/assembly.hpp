#pragma once

#include "vsb/execution.hpp"
#include "vsb/modal_basis.hpp"

#include <Eigen/Dense>

#include <vector>

namespace vsb {

/// Gauss-Legendre rule in x = cos(phi) on [-1, 1].
struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;

    int count() const { return static_cast<int>(x.size()); }

    static QuadratureRule gauss_legendre(int n);
    /// max(64, 2N + 8) nodes.
    static QuadratureRule for_modes(int mode_count);
};

struct ModalMatrices {
    Eigen::MatrixXd M_ee;
    Eigen::MatrixXd K_ee;
    Eigen::MatrixXd D_ee;
    double alpha_d = 0.0;
    double beta_d = 0.0;
};

struct SystemMatrices {
    Eigen::MatrixXd M;
    Eigen::MatrixXd Mdot;
    Eigen::MatrixXd D;
};

Eigen::MatrixXd assemble_Mee(const ModalBasis& basis, const QuadratureRule& quad,
                             Execution exec = Execution::serial);
Eigen::MatrixXd assemble_Kee(const ModalBasis& basis, const QuadratureRule& quad,
                             Execution exec = Execution::serial);

/// Mass, stiffness and Rayleigh damping with a refinement check: the rule is
/// doubled once and a relative disagreement above 1e-8 raises NumericalError.
ModalMatrices assemble_modal(const ModalBasis& basis, double alpha_d, double beta_d,
                             Execution exec = Execution::serial);

/// Ascending sqrt of the generalized eigenvalues of K v = w^2 M v.
std::vector<double> rr_eigenfrequencies(const Eigen::MatrixXd& M_ee, const Eigen::MatrixXd& K_ee);

/// Block-diagonal M = diag{m 1, J 1, M_ee}, Mdot = diag{0, Jdot 1, 0}, D = diag{D_x, D_w, D_ee}.
SystemMatrices assemble_system(double mass, const ModalMatrices& modal, double J_s, double J_s_rate,
                               const Eigen::Matrix3d& D_x = Eigen::Matrix3d::Zero(),
                               const Eigen::Matrix3d& D_w = Eigen::Matrix3d::Zero());

} // namespace vsb
