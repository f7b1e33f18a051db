#pragma once

#include <Eigen/Dense>

#include <vector>

namespace vsb {

/// Geometry and material of the thin spherical shell.
///
/// Shell mass and density are tied by m = rho * 4 pi r^2 h. Build through
/// with_density() or with_mass() so the other one is derived.
struct ShellProperties {
    double radius = 2.0;
    double thickness = 0.01;
    double youngs_modulus = 1.0e7;
    double poisson_ratio = 0.3;
    double density = 2700.0;
    double mass = 0.0;
    double gravity = 9.81;
    double water_density = 1025.0;

    static ShellProperties with_density(double r, double h, double E, double nu, double rho,
                                        double g = 9.81, double rho_w = 1025.0);
    static ShellProperties with_mass(double r, double h, double E, double nu, double m,
                                     double g = 9.81, double rho_w = 1025.0);

    double surface_density() const { return density * thickness; }

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
};

enum class Branch { membrane, bending };

/// Frequency-equation coefficients. `as_printed` keeps the 1+nu^2 constant and the
/// 1/2 thickness factor, which yields complex roots for n >= 3 on thin shells.
enum class Coefficients { corrected, as_printed };

/// omega^2 proportional to Omega^2 (default) or to 1/Omega^2.
enum class FrequencyForm { omega_proportional, as_printed };

/// Radial-to-tangential amplitude ratio of the shape functions.
enum class AmplitudeRatio { reference_normalized, exact_membrane, as_printed };

struct LegendreValue {
    double value;
    double derivative;
};

/// P_n(x) and dP_n/dx by the three-term recurrence.
LegendreValue legendre(int n, double x);

/// Fills p[0..n_max] and dp[0..n_max]; both must hold n_max+1 entries.
void legendre_all(int n_max, double x, double* p, double* dp);

struct FrequencyCoefficients {
    double m;
    double A;
    double B;
};

FrequencyCoefficients frequency_coefficients(const ShellProperties& shell, int n,
                                             Coefficients form = Coefficients::corrected);

/// Dimensionless frequency parameter Omega^2 for mode n.
double frequency_parameter(const ShellProperties& shell, int n, Branch branch,
                           Coefficients form = Coefficients::corrected);

/// Natural frequency in rad/s from Omega^2.
double natural_frequency(const ShellProperties& shell, double omega_sq,
                         FrequencyForm form = FrequencyForm::omega_proportional);

struct ModeSpec {
    int n;
    Branch branch;
};

/// Shape-function values of one mode at one colatitude.
struct ShapeValue {
    double psi_phi;      ///< tangential component
    double psi_r;        ///< radial component
    double dpsi_phi;     ///< d(psi_phi)/dphi
    double dpsi_r;       ///< d(psi_r)/dphi
    double cot_psi_phi;  ///< cot(phi) * psi_phi, finite at the poles
};

class ModalBasis {
public:
    ModalBasis(const ShellProperties& shell, int mode_count,
               AmplitudeRatio ratio = AmplitudeRatio::reference_normalized,
               FrequencyForm form = FrequencyForm::omega_proportional,
               double amplitude = 1.0);

    int size() const { return static_cast<int>(modes_.size()); }
    const ShellProperties& shell() const { return shell_; }
    const std::vector<ModeSpec>& modes() const { return modes_; }
    double omega_sq(int k) const { return omega_sq_[k]; }
    double natural_frequency(int k) const { return omega_[k]; }
    double radial_ratio(int k) const { return ratio_[k]; }
    double amplitude() const { return amplitude_; }
    AmplitudeRatio ratio_form() const { return ratio_form_; }
    FrequencyForm frequency_form() const { return freq_form_; }

    ShapeValue shape(int k, double phi) const;

    /// All modes at once; out must hold size() entries.
    void shapes(double phi, ShapeValue* out) const;

    /// 3xN basis, columns [psi_phi; 0; psi_r].
    Eigen::Matrix<double, 3, Eigen::Dynamic> basis_matrix(double phi) const;

private:
    ShellProperties shell_;
    std::vector<ModeSpec> modes_;
    std::vector<double> omega_sq_;
    std::vector<double> omega_;
    std::vector<double> ratio_;
    double amplitude_;
    AmplitudeRatio ratio_form_;
    FrequencyForm freq_form_;
};

/// Radial amplitude ratio for a given Omega^2.
double amplitude_ratio(double omega_sq, double nu, AmplitudeRatio form);

} // namespace vsb
