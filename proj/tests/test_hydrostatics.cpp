#include "vsb/error.hpp"
#include "vsb/hydrostatics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace vsb;

namespace {

constexpr double pi = std::numbers::pi;

ShellProperties shell()
{
    return ShellProperties::with_density(2.0, 0.01, 1e7, 0.3, 2700.0);
}

GeneralizedState at_heave(double z, int N = 0)
{
    auto s = GeneralizedState::zero(N);
    s.q(2) = z;
    return s;
}

double cap(double r, double d)
{
    d = std::clamp(d, 0.0, 2 * r);
    return pi * d * d * (3 * r - d) / 3.0;
}

Eigen::VectorXd smooth_eta(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Eigen::VectorXd eta(7);
    for (int k = 0; k < 7; ++k) eta(k) = 0.03 * U(rng) / (1 + k);
    return eta;
}

} // namespace

TEST_CASE("submerged volume of a rigid sphere")
{
    const ModalBasis b(shell(), 0);
    const double r = 2.0;
    CHECK(submerged_volume(discretize(at_heave(1.0), b, 200)).value == doctest::Approx(cap(r, 1.0)).epsilon(5e-3));
    CHECK(cap(r, 1.0) == doctest::Approx(5.236).epsilon(1e-4));
    CHECK(submerged_volume(discretize(at_heave(0.0), b, 200)).value == doctest::Approx(16.755).epsilon(5e-3));
    const double full = 4.0 / 3.0 * pi * 8.0;
    double prev = INFINITY;
    for (int n : {50, 100, 200, 400, 800}) {
        const double err = std::abs(submerged_volume(discretize(at_heave(-5.0), b, n)).value - full);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-4 * full);

    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(-1.9, 1.9);
    for (int i = 0; i < 10; ++i) {
        const double zc = U(rng);
        const auto v = submerged_volume(discretize(at_heave(zc), b, 200));
        CHECK(std::abs(v.value - cap(r, r - zc)) < 5e-3 * cap(r, r - zc));
        CHECK(v.lower <= v.value);
        CHECK(v.value <= v.upper);
    }
}

TEST_CASE("volume bound gap shrinks under refinement")
{
    const ModalBasis b(shell(), 7);
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        auto s = at_heave(0.3 * trial - 0.6, 7);
        s.q.tail(7) = smooth_eta(rng);
        double prev = INFINITY;
        for (int n : {50, 100, 200, 400}) {
            const auto v = submerged_volume(discretize(s, b, n));
            const auto t = instantaneous_volume(discretize(s, b, n));
            CHECK(v.lower <= v.upper);
            CHECK(t.lower <= t.upper);
            const double gap = v.upper - v.lower;
            CHECK(gap * 1.8 <= prev);
            prev = gap;
        }
    }
}

TEST_CASE("instantaneous volume")
{
    const ModalBasis b(shell(), 7);
    const double full = 4.0 / 3.0 * pi * 8.0;
    CHECK(instantaneous_volume(discretize(at_heave(0.7, 7), b, 400)).value == doctest::Approx(full).epsilon(1e-4));
    const double delta = 0.05;
    auto s = at_heave(0.0, 7);
    s.q(6) = delta / b.radial_ratio(0);
    const double inflated = 4.0 / 3.0 * pi * std::pow(2.0 + delta, 3);
    CHECK(instantaneous_volume(discretize(s, b, 400)).value == doctest::Approx(inflated).epsilon(1e-4));
}

TEST_CASE("areas")
{
    const ModalBasis b(shell(), 0);
    const auto parts = discretize(at_heave(0.2), b, 400);
    const auto a = partition_areas(parts);
    CHECK(a.total == doctest::Approx(4 * pi * 4.0).epsilon(5e-3));
    CHECK(a.per_disk.size() == parts.disks.size());
    CHECK(a.wet < a.total);

    // each band of a sphere has lateral area 2 pi r dz
    for (const auto& d : parts.disks) CHECK(d.area == doctest::Approx(2 * pi * 2.0 * d.height).epsilon(1e-12));
    double band = 0;
    for (const auto& d : parts.disks)
        if (d.z_a <= 0.5 && d.z_b >= -0.5) band += d.area;
    const double lo = std::cos(pi / 400 * std::ceil(std::acos(0.25) / (pi / 400)));
    const double hi = std::cos(pi / 400 * std::floor(std::acos(-0.25) / (pi / 400)));
    CHECK(band == doctest::Approx(2 * pi * 2.0 * 2.0 * (lo - hi)).epsilon(1e-12));

    PartitionSet flat;
    Disk d;
    flat.disks.push_back(d);
    CHECK(partition_areas(flat).total == 0.0);
}

TEST_CASE("disk structure")
{
    const ModalBasis b(shell(), 0);
    const auto parts = discretize(at_heave(0.0), b, 8);
    bool found = false;
    for (const auto& d : parts.disks) {
        if (std::abs(d.phi_b - pi / 2) < 1e-15) {
            CHECK(d.radius_sup == doctest::Approx(2.0).epsilon(1e-15));
            found = true;
        }
        CHECK(d.phi_a < d.phi_b);
        CHECK(d.z_a >= d.z_b);
        CHECK(d.orientation == 1);
    }
    CHECK(found);
    for (std::size_t i = 1; i < parts.disks.size(); ++i) CHECK(parts.disks[i].z_a <= parts.disks[i - 1].z_a);
    CHECK_THROWS_AS(discretize(at_heave(0.0), b, 4), ValidationError);
}

TEST_CASE("waterline splitting and wetness")
{
    const ModalBasis b(shell(), 7);
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = at_heave(0.35 * trial - 1.5, 7);
        s.q.tail(7) = smooth_eta(rng);
        const auto parts = discretize(s, b, 200);
        for (const auto& d : parts.disks) {
            const double za = s.q(2) + d.z_a, zb = s.q(2) + d.z_b;
            CHECK(!(std::min(za, zb) < -1e-12 && std::max(za, zb) > 1e-12));
        }
        for (const auto& di : parts.disks)
            for (const auto& dj : parts.disks)
                if (di.wet && std::max(dj.z_a, dj.z_b) <= std::min(di.z_a, di.z_b)) CHECK(dj.wet);
    }
}

TEST_CASE("rigid rotation leaves totals unchanged")
{
    const ModalBasis b(shell(), 7);
    std::mt19937_64 rng(12);
    auto s = at_heave(0.1, 7);
    s.q.tail(7) = smooth_eta(rng);
    auto r = s;
    r.q.segment<3>(3) << 0.2, -0.1, 0.3;
    const auto p = discretize(s, b, 200), q = discretize(r, b, 200);
    // waterline splits move with the attitude, so agreement is to refinement accuracy
    CHECK(instantaneous_volume(q).value == doctest::Approx(instantaneous_volume(p).value).epsilon(1e-6));
    CHECK(partition_areas(q).total == doctest::Approx(partition_areas(p).total).epsilon(1e-6));
}

TEST_CASE("grid and direct discretization agree")
{
    const ModalBasis b(shell(), 7);
    std::mt19937_64 rng(2);
    auto s = at_heave(-0.3, 7);
    s.q.tail(7) = smooth_eta(rng);
    const MeridianGrid grid(b, 200);
    const auto p = discretize(s, b, 200), q = discretize(s, grid);
    REQUIRE(p.disks.size() == q.disks.size());
    for (std::size_t i = 0; i < p.disks.size(); ++i) {
        CHECK(p.disks[i].volume == q.disks[i].volume);
        CHECK(p.disks[i].area == q.disks[i].area);
        CHECK(p.disks[i].wet == q.disks[i].wet);
    }
}
