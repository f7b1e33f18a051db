#include "vsb/assembly.hpp"
#include "vsb/dynamics.hpp"
#include "vsb/forces.hpp"
#include "vsb/hydrostatics.hpp"

#include <doctest.h>
#include <omp.h>

#include <random>

using namespace vsb;

namespace {

ShellProperties shell()
{
    return ShellProperties::with_density(2.0, 0.01, 1e7, 0.3, 2700.0);
}

GeneralizedState random_state(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto s = GeneralizedState::zero(7);
    s.q(2) = 0.8 * U(rng);
    for (int k = 0; k < 7; ++k) s.q(6 + k) = 0.02 * U(rng) / (1 + k);
    s.t = 2.0 * (U(rng) + 1);
    return s;
}

struct Threads {
    int saved = omp_get_max_threads();
    explicit Threads(int n) { omp_set_num_threads(n); }
    ~Threads() { omp_set_num_threads(saved); }
};

} // namespace

TEST_CASE("discretization is identical in serial and parallel")
{
    Threads t(4);
    const ModalBasis b(shell(), 7);
    const MeridianGrid grid(b, 200);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
        const auto s = random_state(rng);
        const auto p = discretize(s, grid, {}, Execution::serial);
        const auto q = discretize(s, grid, {}, Execution::parallel);
        REQUIRE(p.disks.size() == q.disks.size());
        for (std::size_t j = 0; j < p.disks.size(); ++j) {
            CHECK(p.disks[j].volume == q.disks[j].volume);
            CHECK(p.disks[j].volume_lower == q.disks[j].volume_lower);
            CHECK(p.disks[j].volume_upper == q.disks[j].volume_upper);
            CHECK(p.disks[j].area == q.disks[j].area);
            CHECK(p.disks[j].normal == q.disks[j].normal);
            CHECK(p.disks[j].wet == q.disks[j].wet);
        }
        CHECK(submerged_volume(p).value == submerged_volume(q).value);

        const auto hs = hydro_generalized(s, p, b, ExcitationSpec{}, s.t, BuoyancyGuard::continuous,
                                          Execution::serial, &grid);
        const auto hp = hydro_generalized(s, q, b, ExcitationSpec{}, s.t, BuoyancyGuard::continuous,
                                          Execution::parallel, &grid);
        CHECK(hs == hp);
    }
}

TEST_CASE("assembly is identical in serial and parallel")
{
    Threads t(4);
    const ModalBasis b(shell(), 12);
    const auto s = assemble_modal(b, 0.1, 1e-4, Execution::serial);
    const auto p = assemble_modal(b, 0.1, 1e-4, Execution::parallel);
    CHECK(s.M_ee == p.M_ee);
    CHECK(s.K_ee == p.K_ee);
    CHECK(s.D_ee == p.D_ee);
}

TEST_CASE("a parallel model integrates the same trajectory")
{
    Threads t(4);
    ModelSpec sp;
    sp.shell = shell();
    sp.partitions = 100;
    ModelSpec pp = sp;
    pp.exec = Execution::parallel;
    BuoyModel ms(sp), mp(pp);
    auto s0 = GeneralizedState::zero(7);
    s0.qdot(2) = -0.8;
    const IntegratorConfig cfg{1e-6, 1e-8, 1e-3, 0.05, 0.5};
    const auto a = simulate(ms, s0, cfg, {0.01, 0.01});
    const auto b = simulate(mp, s0, cfg, {0.01, 0.01});
    REQUIRE(a.output.size() == b.output.size());
    for (std::size_t i = 0; i < a.output.size(); ++i) {
        CHECK(a.output[i].q == b.output[i].q);
        CHECK(a.output[i].qdot == b.output[i].qdot);
    }
}
