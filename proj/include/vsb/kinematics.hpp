#pragma once

#include "vsb/modal_basis.hpp"

#include <Eigen/Dense>

#include <vector>

namespace vsb {

/// Generalized coordinates q = [r_sa; theta_sa; eta] with rates.
struct GeneralizedState {
    Eigen::VectorXd q;
    Eigen::VectorXd qdot;
    double t = 0.0;

    static GeneralizedState zero(int mode_count);

    int modes() const { return static_cast<int>(q.size()) - 6; }
    Eigen::Vector3d position() const { return q.head<3>(); }
    Eigen::Vector3d angles() const { return q.segment<3>(3); }
    Eigen::VectorXd eta() const { return q.tail(modes()); }
    Eigen::VectorXd eta_rate() const { return qdot.tail(modes()); }
};

/// Passive single-axis rotations.
Eigen::Matrix3d rot1(double a);
Eigen::Matrix3d rot2(double a);
Eigen::Matrix3d rot3(double a);

/// C_es = C2(phi) C3(theta).
Eigen::Matrix3d rotation_es(double phi, double theta);

/// C_sa = C1(theta_3) C2(theta_2) C3(theta_1) for 3-2-1 angles.
Eigen::Matrix3d rotation_sa(const Eigen::Vector3d& theta);

struct EulerRateMap {
    Eigen::Matrix3d inverse;       ///< omega = inverse * theta_dot
    Eigen::Matrix3d inverse_rate;  ///< time derivative of inverse
};

/// Throws NumericalError near cos(theta_2) = 0.
EulerRateMap euler_rate_map(const Eigen::Vector3d& theta, const Eigen::Vector3d& theta_dot);

/// Deformed point in the body frame: C_es^T ([0, 0, r] + Phi_e(phi) eta).
Eigen::Vector3d body_position(const ModalBasis& basis, const Eigen::VectorXd& eta, double phi,
                              double theta = 0.0);

/// Inertial position r_sa + C_sa^T body_position.
Eigen::Vector3d surface_position(const GeneralizedState& state, const ModalBasis& basis, double phi,
                                 double theta = 0.0);

struct SurfaceNode {
    double phi = 0.0;
    Eigen::Vector3d position = Eigen::Vector3d::Zero();  ///< body frame, meridian plane y = 0
    Eigen::Vector3d normal = Eigen::Vector3d::Zero();
    double psi = 0.0;
};

/// Outward normal of a revolved meridian given its tangent in the direction of increasing phi.
Eigen::Vector3d meridian_normal(const Eigen::Vector3d& tangent);

/// Fills normal and psi of an ordered meridian from central-difference tangents.
/// Endpoints on the symmetry axis use the mirrored neighbour.
void surface_normal(std::vector<SurfaceNode>& nodes);

/// Meridian sample in the body frame at theta = 0.
struct MeridianPoint {
    double u, v;        ///< tangential and radial displacement
    double du, dv;      ///< their phi-derivatives
    double rho, z;      ///< horizontal radius and height
    double drho, dz;
    double radius;      ///< distance from the centre
    double dradius_sq;  ///< d(radius^2)/dphi
};

/// Deformed meridian for a fixed modal vector.
class Meridian {
public:
    Meridian(const ModalBasis& basis, const Eigen::VectorXd& eta);
    MeridianPoint at(double phi) const;

private:
    const ModalBasis* basis_;
    Eigen::VectorXd eta_;
};

/// Shapes and trig tabulated at phi_i = i * pi / (2n), i = 0..2n: the nodes and
/// midpoints of n uniform colatitude steps.
class MeridianGrid {
public:
    MeridianGrid(const ModalBasis& basis, int n);
    const ModalBasis& basis() const { return *basis_; }
    int steps() const { return n_; }
    int samples() const { return 2 * n_ + 1; }
    double phi(int i) const { return phi_[i]; }
    const ShapeValue* shapes(int i) const { return shape_.data() + static_cast<std::size_t>(i) * basis_->size(); }
    MeridianPoint point(int i, const Eigen::VectorXd& eta) const;

private:
    const ModalBasis* basis_;
    int n_;
    std::vector<double> phi_, cos_, sin_;
    std::vector<ShapeValue> shape_;
};

/// J_s = (2/3) * integral of |r_dms|^2 dm over the shell for the given modes.
double shell_inertia(const ModalBasis& basis, const Eigen::VectorXd& eta);

} // namespace vsb
