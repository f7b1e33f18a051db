#pragma once

#include "vsb/execution.hpp"
#include "vsb/kinematics.hpp"
#include "vsb/modal_basis.hpp"

#include <Eigen/Dense>

#include <vector>

namespace vsb {

struct FreeSurface {
    double elevation = 0.0;  ///< inertial height of the still water line (m)
};

/// One horizontal slab of the deformed shell between two colatitudes.
struct Disk {
    double phi_a = 0.0, phi_b = 0.0;        ///< colatitude bounds, phi_a < phi_b
    double z_a = 0.0, z_b = 0.0;            ///< body-frame heights at the bounds
    double height = 0.0;                    ///< |z_a - z_b|
    int orientation = 1;                    ///< +1 when height decreases with phi
    double radius_sup = 0.0, radius_inf = 0.0;            ///< horizontal radius bounds
    double area_radius_sup = 0.0, area_radius_inf = 0.0;  ///< centre-distance bounds
    double area = 0.0;
    double volume_lower = 0.0, volume_upper = 0.0, volume = 0.0;  ///< signed by orientation
    double mid_height = 0.0;                ///< inertial
    bool wet = false;
    double phi_mid = 0.0;
    int sample = -1;                        ///< grid index of phi_mid for an unsplit disk
    Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();  ///< body frame, meridian plane
    double psi = 0.0;
};

struct PartitionSet {
    int n = 0;  ///< requested partition count (uniform colatitude steps)
    FreeSurface surface;
    std::vector<Disk> disks;  ///< split disks in order of increasing phi
};

struct VolumeBounds {
    double lower = 0.0;
    double upper = 0.0;
    double value = 0.0;  ///< (lower + upper) / 2
    bool wide_gap = false;  ///< upper - lower above 2% of upper
};

struct AreaSummary {
    std::vector<double> per_disk;
    double total = 0.0;
    double wet = 0.0;
};

/// Partition the deformed shell into horizontal disks. Disks are split where the
/// meridian height turns and where it crosses the free surface.
PartitionSet discretize(const GeneralizedState& state, const ModalBasis& basis, int n,
                        const FreeSurface& surface = {}, Execution exec = Execution::serial);
/// Same partition on a pretabulated grid of grid.steps() steps.
PartitionSet discretize(const GeneralizedState& state, const MeridianGrid& grid,
                        const FreeSurface& surface = {}, Execution exec = Execution::serial);

VolumeBounds submerged_volume(const PartitionSet& parts);
VolumeBounds instantaneous_volume(const PartitionSet& parts);
AreaSummary partition_areas(const PartitionSet& parts);

} // namespace vsb
