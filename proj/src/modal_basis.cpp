#include "vsb/modal_basis.hpp"

#include "vsb/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace vsb {

namespace {
constexpr double pi = std::numbers::pi;
}

ShellProperties ShellProperties::with_density(double r, double h, double E, double nu, double rho,
                                              double g, double rho_w)
{
    ShellProperties s;
    s.radius = r;
    s.thickness = h;
    s.youngs_modulus = E;
    s.poisson_ratio = nu;
    s.density = rho;
    s.mass = rho * 4.0 * pi * r * r * h;
    s.gravity = g;
    s.water_density = rho_w;
    return s;
}

ShellProperties ShellProperties::with_mass(double r, double h, double E, double nu, double m,
                                           double g, double rho_w)
{
    ShellProperties s = with_density(r, h, E, nu, 1.0, g, rho_w);
    s.mass = m;
    s.density = (r > 0 && h > 0) ? m / (4.0 * pi * r * r * h) : 0.0;
    return s;
}

void ShellProperties::validate() const
{
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(radius) || radius <= 0) throw ValidationError("radius must be positive");
    if (!finite(thickness) || thickness <= 0) throw ValidationError("thickness must be positive");
    if (thickness >= radius) throw ValidationError("thickness must be smaller than radius");
    if (!finite(youngs_modulus) || youngs_modulus <= 0)
        throw ValidationError("youngs_modulus must be positive");
    if (!finite(poisson_ratio) || poisson_ratio < 0 || poisson_ratio >= 0.5)
        throw ValidationError("poisson_ratio must lie in [0, 0.5)");
    if (!finite(density) || density <= 0) throw ValidationError("density must be positive");
    if (!finite(gravity) || gravity <= 0) throw ValidationError("gravity must be positive");
    if (!finite(water_density) || water_density <= 0)
        throw ValidationError("water_density must be positive");
    const double expected = density * 4.0 * pi * radius * radius * thickness;
    if (!finite(mass) || std::abs(mass - expected) > 1e-9 * expected)
        throw ValidationError("shell mass must equal density * 4 pi r^2 h");
}

LegendreValue legendre(int n, double x)
{
    if (n < 0) throw ValidationError("legendre: negative degree");
    if (!(std::abs(x) <= 1.0 + 1e-12)) throw ValidationError("legendre: |x| > 1");
    double p0 = 1.0, d0 = 0.0;
    if (n == 0) return {p0, d0};
    double p1 = x, d1 = 1.0;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        const double d2 = d0 + (2 * k + 1) * p1;
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
    }
    return {p1, d1};
}

void legendre_all(int n_max, double x, double* p, double* dp)
{
    p[0] = 1.0;
    dp[0] = 0.0;
    if (n_max == 0) return;
    p[1] = x;
    dp[1] = 1.0;
    for (int k = 1; k < n_max; ++k) {
        p[k + 1] = ((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1);
        dp[k + 1] = dp[k - 1] + (2 * k + 1) * p[k];
    }
}

FrequencyCoefficients frequency_coefficients(const ShellProperties& shell, int n, Coefficients form)
{
    if (n < 0) throw ValidationError("mode index must be non-negative");
    const double nu = shell.poisson_ratio;
    const double hr2 = (shell.thickness / shell.radius) * (shell.thickness / shell.radius);
    const double m = n * (n + 1.0) - 2.0;
    FrequencyCoefficients c{m, 0.0, 0.0};
    if (form == Coefficients::corrected) {
        const double beta = hr2 / 12.0;
        c.A = 3.0 * (1.0 + nu) + m + beta * (m + 3.0) * (m + 1.0 + nu);
        c.B = (1.0 - nu * nu) + beta * ((m + 1.0) * (m + 1.0) - nu * nu);
    } else {
        c.A = 3.0 * (1.0 + nu) + m + 0.5 * hr2 * (m + 3.0) * (m + 1.0 + nu);
        c.B = 1.0 + nu * nu + ((m + 1.0) * (m + 1.0) - nu * nu) / 12.0;
    }
    return c;
}

double frequency_parameter(const ShellProperties& shell, int n, Branch branch, Coefficients form)
{
    const auto c = frequency_coefficients(shell, n, form);
    const double disc = c.A * c.A - 4.0 * c.m * c.B;
    if (disc < 0)
        throw NumericalError("negative discriminant in frequency equation for n=" + std::to_string(n));
    const double sq = std::sqrt(disc);
    const double nu = shell.poisson_ratio;
    const double num = branch == Branch::membrane ? c.A + sq : c.A - sq;
    const double omega_sq = num / (2.0 * (1.0 - nu * nu));
    if (!(omega_sq > 0))
        throw NumericalError("non-positive frequency parameter for n=" + std::to_string(n) +
                             (branch == Branch::membrane ? " (membrane)" : " (bending)"));
    return omega_sq;
}

double natural_frequency(const ShellProperties& shell, double omega_sq, FrequencyForm form)
{
    if (!(omega_sq > 0)) throw ValidationError("frequency parameter must be positive");
    const double r = shell.radius;
    const double base = shell.youngs_modulus / (r * r * shell.density);
    return form == FrequencyForm::omega_proportional ? std::sqrt(base * omega_sq)
                                                     : std::sqrt(base / omega_sq);
}

double amplitude_ratio(double omega_sq, double nu, AmplitudeRatio form)
{
    double w = omega_sq;
    if (form == AmplitudeRatio::reference_normalized) w *= 1.0 - nu * nu;
    if (std::abs(1.0 - w) < 1e-12) throw NumericalError("singular shape function: Omega^2 = 1");
    if (form == AmplitudeRatio::as_printed) return (2.0 + nu) * w / (1.0 - w);
    return (1.0 + (1.0 + nu) * w) / (1.0 - w);
}

ModalBasis::ModalBasis(const ShellProperties& shell, int mode_count, AmplitudeRatio ratio,
                       FrequencyForm form, double amplitude)
    : shell_(shell), amplitude_(amplitude), ratio_form_(ratio), freq_form_(form)
{
    shell_.validate();
    if (mode_count < 0) throw ValidationError("modes must be non-negative");
    if (!std::isfinite(amplitude) || amplitude == 0.0)
        throw ValidationError("shape amplitude must be finite and non-zero");
    for (int n = 0; n < mode_count; ++n) {
        modes_.push_back({n, Branch::membrane});
        const double w2 = frequency_parameter(shell_, n, Branch::membrane);
        omega_sq_.push_back(w2);
        omega_.push_back(vsb::natural_frequency(shell_, w2, form));
        ratio_.push_back(amplitude_ratio(w2, shell_.poisson_ratio, ratio));
    }
}

void ModalBasis::shapes(double phi, ShapeValue* out) const
{
    const int N = size();
    if (N == 0) return;
    if (!(phi >= -1e-12 && phi <= pi + 1e-12)) throw ValidationError("colatitude outside [0, pi]");
    const double x = std::cos(phi);
    const double s = std::sin(phi);
    double p[64], dp[64];
    std::vector<double> pv, dpv;
    double* P = p;
    double* dP = dp;
    if (N > 64) {
        pv.resize(N);
        dpv.resize(N);
        P = pv.data();
        dP = dpv.data();
    }
    legendre_all(N - 1, x, P, dP);
    const double A = amplitude_;
    for (int k = 0; k < N; ++k) {
        const double C = ratio_[k];
        const double lam = k * (k + 1.0);
        out[k].psi_phi = -A * s * dP[k];
        out[k].psi_r = A * C * P[k];
        out[k].dpsi_phi = A * (x * dP[k] - lam * P[k]);
        out[k].dpsi_r = -A * C * s * dP[k];
        out[k].cot_psi_phi = -A * x * dP[k];
    }
}

ShapeValue ModalBasis::shape(int k, double phi) const
{
    if (k < 0 || k >= size()) throw ValidationError("mode index out of range");
    std::vector<ShapeValue> all(size());
    shapes(phi, all.data());
    return all[k];
}

Eigen::Matrix<double, 3, Eigen::Dynamic> ModalBasis::basis_matrix(double phi) const
{
    const int N = size();
    Eigen::Matrix<double, 3, Eigen::Dynamic> Phi = Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(3, N);
    std::vector<ShapeValue> all(N);
    shapes(phi, all.data());
    for (int k = 0; k < N; ++k) {
        Phi(0, k) = all[k].psi_phi;
        Phi(2, k) = all[k].psi_r;
    }
    return Phi;
}

} // namespace vsb
