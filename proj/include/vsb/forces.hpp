#pragma once

#include "vsb/execution.hpp"
#include "vsb/hydrostatics.hpp"
#include "vsb/kinematics.hpp"
#include "vsb/modal_basis.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace vsb {

struct ExcitationSpec {
    double pressure = 1800.0;  ///< Pa
    double period = 2.5;       ///< s
    double phase = 0.0;        ///< rad

    double omega() const;
    void validate() const;
};

struct ConstraintSpec {
    std::optional<double> phi_c;  ///< no-deformation colatitude
    bool heave_only = true;
    bool rigid = false;           ///< pin every modal coordinate
};

/// Treatment of the buoyant term where |cos(pi - psi)| < 0.05.
/// vertical_limit: the buoyant force becomes rho_w V g straight up.
/// continuous: same vertical part, lateral part taken linearly through zero across the band
/// so the force matches the unguarded law at both band edges.
enum class BuoyancyGuard { continuous, vertical_limit };

/// Q with Q_3 = -c * zdot, all other entries zero.
Eigen::VectorXd pto_force(const GeneralizedState& state, double c);

struct NodeForce {
    double magnitude = 0.0;                        ///< signed scalar multiplying -c3
    Eigen::Vector3d force = Eigen::Vector3d::Zero();  ///< body frame, meridian plane
    bool guarded = false;                          ///< buoyancy replaced by its vertical limit
};

/// Hydro force on one disk: -(P A cos(wt + phase) + rho_w V g / cos(pi - psi)) c3.
/// Dry disks carry no force. Near psi = pi/2 the buoyant part is applied vertically.
NodeForce node_hydro_force(const Disk& disk, const ExcitationSpec& excitation, double t,
                           double water_density, double gravity,
                           BuoyancyGuard guard = BuoyancyGuard::continuous);

/// Generalized hydro force from all wet disks.
Eigen::VectorXd hydro_generalized(const GeneralizedState& state, const PartitionSet& parts,
                                  const ModalBasis& basis, const ExcitationSpec& excitation, double t,
                                  BuoyancyGuard guard = BuoyancyGuard::continuous,
                                  Execution exec = Execution::serial, const MeridianGrid* grid = nullptr);

/// a = [m g e3; omega * Jdot; K_ee eta]. Middle block is zero when heave_only.
Eigen::VectorXd bias_vector(const GeneralizedState& state, double mass, double gravity, double J_rate,
                            const Eigen::MatrixXd& K_ee, bool heave_only);

/// Udwadia-Kalaba force M^{1/2} (A M^{-1/2})^+ (b - A M^{-1} (Q - abar)).
Eigen::VectorXd constraint_force(const Eigen::MatrixXd& M, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                 const Eigen::VectorXd& Q, const Eigen::VectorXd& abar);

/// Indices of rows that do not raise the rank when added in order.
std::vector<int> redundant_rows(const Eigen::MatrixXd& A);

struct ConstraintSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
    std::vector<std::string> labels;
};

/// Rows of Phi_e(phi_c) Bbar that are not identically zero, plus pinning rows in rigid mode.
/// Throws ValidationError when the rows are linearly dependent.
ConstraintSystem constraint_jacobian(const ConstraintSpec& spec, const ModalBasis& basis,
                                     const Eigen::MatrixXd& Bbar);

} // namespace vsb
