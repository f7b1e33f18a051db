#include "vsb/error.hpp"
#include "vsb/modal_basis.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace vsb;

namespace {

ShellProperties shell()
{
    return ShellProperties::with_density(2.0, 0.01, 1e7, 0.3, 2700.0);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("legendre low orders")
{
    auto p = legendre(0, 0.3);
    CHECK(p.value == 1.0);
    CHECK(p.derivative == 0.0);
    p = legendre(1, -0.7);
    CHECK(p.value == -0.7);
    CHECK(p.derivative == 1.0);
    p = legendre(2, 0.5);
    CHECK(p.value == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(p.derivative == doctest::Approx(1.5).epsilon(1e-15));
    for (double x : {-1.0, -0.3, 0.2, 0.9, 1.0}) {
        CHECK(legendre(3, x).value == doctest::Approx(0.5 * (5 * x * x * x - 3 * x)).epsilon(1e-14));
        CHECK(legendre(3, x).derivative == doctest::Approx(0.5 * (15 * x * x - 3)).epsilon(1e-14));
        CHECK(legendre(4, x).value == doctest::Approx((35 * std::pow(x, 4) - 30 * x * x + 3) / 8).epsilon(1e-14));
    }
    CHECK_THROWS_AS(legendre(2, 1.1), ValidationError);
}

TEST_CASE("legendre recurrence residual up to order 32")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> p(34), dp(34);
    for (int s = 0; s < 200; ++s) {
        const double x = U(rng);
        legendre_all(33, x, p.data(), dp.data());
        for (int n = 1; n <= 32; ++n)
            CHECK(std::abs((n + 1) * p[n + 1] - (2 * n + 1) * x * p[n] + n * p[n - 1]) < 1e-12);
        for (int n = 0; n <= 33; ++n) CHECK(legendre(n, x).value == p[n]);
    }
    // endpoint derivative n(n+1)/2
    legendre_all(10, 1.0, p.data(), dp.data());
    for (int n = 0; n <= 10; ++n) CHECK(dp[n] == doctest::Approx(n * (n + 1) / 2.0).epsilon(1e-14));
}

TEST_CASE("frequency coefficients")
{
    const auto s = shell();
    CHECK(frequency_coefficients(s, 1).m == 0.0);
    auto thin = s;
    thin.thickness = 1e-9;
    const auto c0 = frequency_coefficients(thin, 0);
    CHECK(c0.A == doctest::Approx(3 * 1.3 + c0.m).epsilon(1e-12));
}

TEST_CASE("frequency parameter against high-precision evaluation")
{
    const auto s = shell();
    // 40-digit evaluations of the characteristic equation
    const double expect[] = {2.8571428571428571429, 4.2857232142857142857, 8.1414697732981795907,
                             14.517924949351563809, 23.214079331642547976, 34.154403958532939551,
                             47.313204874565271492};
    for (int n = 0; n < 7; ++n) CHECK(rel(frequency_parameter(s, n, Branch::membrane), expect[n]) < 1e-14);
    CHECK(rel(frequency_parameter(s, 2, Branch::bending), 0.53993384391793762538) < 1e-12);
}

TEST_CASE("natural frequencies reproduce the reference closed-form column")
{
    const auto s = shell();
    const double table[] = {51.434449987363962009, 62.994144453669143501, 86.823947953540184130,
                            115.94189536682350194, 146.61008798738586733, 177.83264073210156652,
                            209.30485668518272746};
    const ModalBasis b(s, 7);
    for (int k = 0; k < 7; ++k) CHECK(rel(b.natural_frequency(k), table[k]) < 1e-12);
}

TEST_CASE("natural frequency scaling")
{
    auto s = shell();
    const double w2 = 5.0;
    const double w = natural_frequency(s, w2);
    auto s4 = s;
    s4.density *= 4;
    CHECK(natural_frequency(s4, w2) == doctest::Approx(w / 2).epsilon(1e-14));
    auto s2 = s;
    s2.radius *= 2;
    CHECK(natural_frequency(s2, w2) == doctest::Approx(w / 2).epsilon(1e-14));
    // as_printed puts the parameter in the denominator
    CHECK(natural_frequency(s, 2 * w2, FrequencyForm::as_printed) ==
          doctest::Approx(natural_frequency(s, w2, FrequencyForm::as_printed) / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("membrane parameter increases with n and ignores thickness")
{
    auto s = shell();
    double prev = 0;
    for (int n = 1; n < 12; ++n) {
        const double w2 = frequency_parameter(s, n, Branch::membrane);
        CHECK(w2 > prev);
        prev = w2;
    }
    auto half = s;
    half.thickness /= 2;
    half.mass /= 2;
    for (int n = 1; n < 8; ++n) {
        CHECK(rel(frequency_parameter(half, n, Branch::membrane), frequency_parameter(s, n, Branch::membrane)) < 1e-3);
    }
    // bending roots scale with (h/r)^2 at high n
    const double b_full = frequency_parameter(s, 8, Branch::bending);
    const double b_half = frequency_parameter(half, 8, Branch::bending);
    CHECK(rel(b_half, b_full) > 1e-3);
}

TEST_CASE("as_printed coefficients fail on thin shells")
{
    CHECK_THROWS_AS(frequency_parameter(shell(), 5, Branch::membrane, Coefficients::as_printed), NumericalError);
}

TEST_CASE("amplitude ratio forms")
{
    const double nu = 0.3, w2 = 4.0;
    const double wt = (1 - nu * nu) * w2;
    CHECK(amplitude_ratio(w2, nu, AmplitudeRatio::reference_normalized) ==
          doctest::Approx((1 + (1 + nu) * wt) / (1 - wt)).epsilon(1e-15));
    CHECK(amplitude_ratio(w2, nu, AmplitudeRatio::as_printed) ==
          doctest::Approx((2 + nu) * w2 / (1 - w2)).epsilon(1e-15));
    CHECK_THROWS_AS(amplitude_ratio(1.0, nu, AmplitudeRatio::as_printed), NumericalError);
}

TEST_CASE("shell validation messages")
{
    auto s = shell();
    s.thickness = -1;
    CHECK_THROWS_WITH_AS(s.validate(), "thickness must be positive", ValidationError);
    s = shell();
    s.poisson_ratio = 0.6;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    CHECK_THROWS_AS(ModalBasis(shell(), -1), ValidationError);
}

TEST_CASE("shape functions")
{
    const ModalBasis b(shell(), 7);
    for (double phi : {0.0, 0.3, 1.2, 2.5, std::numbers::pi}) CHECK(b.shape(0, phi).psi_phi == 0.0);
    for (int k = 0; k < 7; ++k) {
        CHECK(std::abs(b.shape(k, 0.0).psi_phi) < 1e-15);
        CHECK(std::abs(b.shape(k, std::numbers::pi).psi_phi) < 1e-14);
    }
    const double phi = std::numbers::pi / 3;
    CHECK(b.shape(2, phi).psi_phi == doctest::Approx(-std::sin(phi) * 1.5).epsilon(1e-14));
    CHECK(b.shape(2, phi).psi_r == doctest::Approx(b.radial_ratio(2) * legendre(2, 0.5).value).epsilon(1e-14));

    // derivatives against central differences
    const double d = 1e-6;
    for (int k = 0; k < 7; ++k)
        for (double p : {0.4, 1.1, 2.0}) {
            const auto s = b.shape(k, p);
            const auto sp = b.shape(k, p + d), sm = b.shape(k, p - d);
            CHECK(s.dpsi_phi == doctest::Approx((sp.psi_phi - sm.psi_phi) / (2 * d)).epsilon(1e-7));
            CHECK(s.dpsi_r == doctest::Approx((sp.psi_r - sm.psi_r) / (2 * d)).epsilon(1e-7));
            CHECK(s.cot_psi_phi == doctest::Approx(s.psi_phi / std::tan(p)).epsilon(1e-12));
        }
}

TEST_CASE("basis matrix matches per-mode sums")
{
    const ModalBasis b(shell(), 7);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> G;
    Eigen::VectorXd eta(7);
    for (int k = 0; k < 7; ++k) eta(k) = G(rng);
    for (double phi : {0.0, 0.7, 1.9, 3.0}) {
        const auto Phi = b.basis_matrix(phi);
        CHECK(Phi.row(1).norm() == 0.0);
        const Eigen::Vector3d r = Phi * eta;
        double u = 0, v = 0;
        for (int k = 0; k < 7; ++k) {
            u += b.shape(k, phi).psi_phi * eta(k);
            v += b.shape(k, phi).psi_r * eta(k);
        }
        CHECK(r(0) == doctest::Approx(u).epsilon(1e-14));
        CHECK(r(2) == doctest::Approx(v).epsilon(1e-14));
        CHECK((Phi * Eigen::VectorXd::Zero(7)).norm() == 0.0);
    }
}
