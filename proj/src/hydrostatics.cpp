#include "vsb/hydrostatics.hpp"

#include "vsb/error.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace vsb {

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
double bracketed_root(F f, double a, double b)
{
    std::uintmax_t iters = 100;
    const auto r = boost::math::tools::toms748_solve(f, a, b, boost::math::tools::eps_tolerance<double>(50),
                                                     iters);
    return 0.5 * (r.first + r.second);
}

struct Slicer {
    const Meridian& mer;
    double offset;  // inertial height of the body origin
    double axis;    // projection of the body axis on the vertical
    double level;   // free surface

    double inertial(double z) const { return offset + axis * z; }

    // Range of a meridian quantity over [a, b] from end values and slopes. With the
    // slope taken linear across the disk, an interior extremum sits at the slope
    // zero and its value follows from integrating the slope; third-order accurate.
    static void bounds(double a, double b, double fa, double fb, double sa, double sb, double& lo, double& hi)
    {
        lo = std::min(fa, fb);
        hi = std::max(fa, fb);
        if (sa * sb < 0) {
            const double x = (b - a) * sa / (sa - sb);
            const double y = x - (b - a);
            const double v = 0.5 * (fa + 0.5 * sa * x + fb + 0.5 * sb * y);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }

    Disk make(double a, double b, const MeridianPoint& pa, const MeridianPoint& pb) const
    {
        Disk d;
        d.phi_a = a;
        d.phi_b = b;
        d.z_a = pa.z;
        d.z_b = pb.z;
        d.height = std::abs(pa.z - pb.z);
        d.orientation = pa.z >= pb.z ? 1 : -1;
        bounds(a, b, pa.rho, pb.rho, pa.drho, pb.drho, d.radius_inf, d.radius_sup);
        double r2_lo, r2_hi;
        bounds(a, b, pa.radius * pa.radius, pb.radius * pb.radius, pa.dradius_sq, pb.dradius_sq, r2_lo, r2_hi);
        d.radius_inf = std::max(d.radius_inf, 0.0);
        d.area_radius_inf = std::sqrt(std::max(r2_lo, 0.0));
        d.area_radius_sup = std::sqrt(std::max(r2_hi, 0.0));
        d.area = pi * (d.area_radius_sup + d.area_radius_inf) * d.height;
        const double vl = d.orientation * pi * d.radius_inf * d.radius_inf * d.height;
        const double vu = d.orientation * pi * d.radius_sup * d.radius_sup * d.height;
        d.volume_lower = std::min(vl, vu);
        d.volume_upper = std::max(vl, vu);
        d.volume = 0.5 * (vl + vu);
        d.mid_height = inertial(0.5 * (pa.z + pb.z));
        d.wet = d.mid_height < level;
        d.phi_mid = 0.5 * (a + b);
        Eigen::Vector3d t(pb.rho - pa.rho, 0.0, pb.z - pa.z);
        if (t.norm() < 1e-14) {
            const auto pm = mer.at(d.phi_mid);
            t = Eigen::Vector3d(pm.drho, 0.0, pm.dz);
        }
        d.normal = meridian_normal(t);
        d.psi = std::acos(std::clamp(d.normal(2), -1.0, 1.0));
        return d;
    }

    struct Pieces {
        std::array<Disk, 4> disk;
        int count = 0;
    };

    Pieces slice(double a, double b, const MeridianPoint& pa, const MeridianPoint& pb) const
    {
        std::array<double, 5> cut{};
        std::array<MeridianPoint, 5> pt{};
        int nc = 0;
        cut[nc] = a;
        pt[nc++] = pa;
        if (pa.dz * pb.dz < 0) {
            cut[nc] = bracketed_root([&](double p) { return mer.at(p).dz; }, a, b);
            pt[nc] = mer.at(cut[nc]);
            ++nc;
        }
        cut[nc] = b;
        pt[nc++] = pb;

        std::array<double, 5> all{};
        std::array<MeridianPoint, 5> apt{};
        int na = 0;
        const auto g = [&](double p) { return inertial(mer.at(p).z) - level; };
        for (int i = 0; i + 1 < nc; ++i) {
            all[na] = cut[i];
            apt[na++] = pt[i];
            const double ga = inertial(pt[i].z) - level, gb = inertial(pt[i + 1].z) - level;
            if (ga * gb < 0) {
                all[na] = bracketed_root(g, cut[i], cut[i + 1]);
                apt[na] = mer.at(all[na]);
                ++na;
            }
        }
        all[na] = b;
        apt[na++] = pb;

        Pieces out;
        for (int i = 0; i + 1 < na; ++i) {
            if (all[i + 1] - all[i] <= 1e-15) continue;
            out.disk[out.count++] = make(all[i], all[i + 1], apt[i], apt[i + 1]);
        }
        return out;
    }
};

VolumeBounds sum_volume(const PartitionSet& parts, bool wet_only)
{
    VolumeBounds v;
    for (const auto& d : parts.disks) {
        if (wet_only && !d.wet) continue;
        v.lower += d.volume_lower;
        v.upper += d.volume_upper;
    }
    v.value = 0.5 * (v.lower + v.upper);
    v.wide_gap = v.upper - v.lower > 0.02 * std::abs(v.upper);
    return v;
}

} // namespace

PartitionSet discretize(const GeneralizedState& state, const ModalBasis& basis, int n,
                        const FreeSurface& surface, Execution exec)
{
    if (n < 8) throw ValidationError("partition count must be at least 8");
    return discretize(state, MeridianGrid(basis, n), surface, exec);
}

PartitionSet discretize(const GeneralizedState& state, const MeridianGrid& grid, const FreeSurface& surface,
                        Execution exec)
{
    const int n = grid.steps();
    if (n < 8) throw ValidationError("partition count must be at least 8");
    const Eigen::VectorXd eta = state.eta();
    const Meridian mer(grid.basis(), eta);
    const Eigen::Matrix3d Csa = rotation_sa(state.angles());
    const Slicer slicer{mer, state.q(2), Csa(2, 2), surface.elevation};

    std::vector<MeridianPoint> at(n + 1);
    std::vector<Slicer::Pieces> pieces(n);
    const bool par = exec == Execution::parallel;
#pragma omp parallel if (par)
    {
#pragma omp for schedule(static)
        for (int j = 0; j <= n; ++j) at[j] = grid.point(2 * j, eta);
#pragma omp for schedule(static)
        for (int j = 0; j < n; ++j) {
            pieces[j] = slicer.slice(grid.phi(2 * j), grid.phi(2 * j + 2), at[j], at[j + 1]);
            if (pieces[j].count == 1) pieces[j].disk[0].sample = 2 * j + 1;
        }
    }

    PartitionSet parts;
    parts.n = n;
    parts.surface = surface;
    parts.disks.reserve(n + 4);
    for (const auto& p : pieces)
        for (int i = 0; i < p.count; ++i) parts.disks.push_back(p.disk[i]);
    return parts;
}

VolumeBounds submerged_volume(const PartitionSet& parts) { return sum_volume(parts, true); }

VolumeBounds instantaneous_volume(const PartitionSet& parts) { return sum_volume(parts, false); }

AreaSummary partition_areas(const PartitionSet& parts)
{
    AreaSummary a;
    a.per_disk.reserve(parts.disks.size());
    for (const auto& d : parts.disks) {
        a.per_disk.push_back(d.area);
        a.total += d.area;
        if (d.wet) a.wet += d.area;
    }
    return a;
}

} // namespace vsb
