#include "vsb/kinematics.hpp"

#include "vsb/assembly.hpp"
#include "vsb/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace vsb {

GeneralizedState GeneralizedState::zero(int mode_count)
{
    GeneralizedState s;
    s.q = Eigen::VectorXd::Zero(6 + mode_count);
    s.qdot = Eigen::VectorXd::Zero(6 + mode_count);
    return s;
}

Eigen::Matrix3d rot1(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Eigen::Matrix3d m;
    m << 1, 0, 0, 0, c, s, 0, -s, c;
    return m;
}

Eigen::Matrix3d rot2(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Eigen::Matrix3d m;
    m << c, 0, -s, 0, 1, 0, s, 0, c;
    return m;
}

Eigen::Matrix3d rot3(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Eigen::Matrix3d m;
    m << c, s, 0, -s, c, 0, 0, 0, 1;
    return m;
}

Eigen::Matrix3d rotation_es(double phi, double theta) { return rot2(phi) * rot3(theta); }

Eigen::Matrix3d rotation_sa(const Eigen::Vector3d& th) { return rot1(th(2)) * rot2(th(1)) * rot3(th(0)); }

EulerRateMap euler_rate_map(const Eigen::Vector3d& th, const Eigen::Vector3d& thd)
{
    const double s2 = std::sin(th(1)), c2 = std::cos(th(1));
    const double s3 = std::sin(th(2)), c3 = std::cos(th(2));
    if (std::abs(c2) <= 1e-8) throw NumericalError("Euler rate map singular: cos(theta_2) ~ 0");
    EulerRateMap m;
    m.inverse << -s2, 0, 1,
                 c2 * s3, c3, 0,
                 c2 * c3, -s3, 0;
    const double d2 = thd(1), d3 = thd(2);
    m.inverse_rate << d2 * c2, 0, 0,
                      d2 * s2 * s3 - d3 * c2 * c3, d3 * s3, 0,
                      d2 * s2 * c3 + d3 * c2 * s3, d3 * c3, 0;
    m.inverse_rate = -m.inverse_rate;
    return m;
}

Eigen::Vector3d body_position(const ModalBasis& basis, const Eigen::VectorXd& eta, double phi,
                              double theta)
{
    Eigen::Vector3d e(0.0, 0.0, basis.shell().radius);
    if (basis.size() > 0) e += basis.basis_matrix(phi) * eta;
    return rotation_es(phi, theta).transpose() * e;
}

Eigen::Vector3d surface_position(const GeneralizedState& state, const ModalBasis& basis, double phi,
                                 double theta)
{
    return state.position() +
           rotation_sa(state.angles()).transpose() * body_position(basis, state.eta(), phi, theta);
}

Eigen::Vector3d meridian_normal(const Eigen::Vector3d& tangent)
{
    const double len = std::hypot(tangent(0), tangent(2));
    if (!(len > 1e-300)) throw NumericalError("degenerate meridian tangent");
    return Eigen::Vector3d(-tangent(2) / len, 0.0, tangent(0) / len);
}

void surface_normal(std::vector<SurfaceNode>& nodes)
{
    const std::size_t n = nodes.size();
    if (n < 3) throw ValidationError("surface_normal needs at least 3 nodes");
    double scale = 0.0;
    for (const auto& nd : nodes) scale = std::max(scale, nd.position.norm());
    const double axis_tol = 1e-12 * std::max(scale, 1.0);
    auto mirror = [](Eigen::Vector3d p) {
        p(0) = -p(0);
        return p;
    };
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::Vector3d prev, next;
        if (i == 0) {
            next = nodes[1].position;
            prev = std::abs(nodes[0].position(0)) < axis_tol ? mirror(nodes[1].position) : nodes[0].position;
        } else if (i == n - 1) {
            prev = nodes[n - 2].position;
            next = std::abs(nodes[i].position(0)) < axis_tol ? mirror(nodes[n - 2].position) : nodes[i].position;
        } else {
            prev = nodes[i - 1].position;
            next = nodes[i + 1].position;
        }
        const Eigen::Vector3d t = next - prev;
        if (t.norm() <= 1e-14 * std::max(scale, 1.0)) throw NumericalError("coincident meridian nodes");
        nodes[i].normal = meridian_normal(t);
        nodes[i].psi = std::acos(std::clamp(nodes[i].normal(2), -1.0, 1.0));
    }
}

Meridian::Meridian(const ModalBasis& basis, const Eigen::VectorXd& eta) : basis_(&basis), eta_(eta)
{
    if (eta.size() != basis.size()) throw ValidationError("modal vector size mismatch");
}

namespace {

MeridianPoint compose(double R, double c, double s, const ShapeValue* sv, const Eigen::VectorXd& eta)
{
    double u = 0, v = 0, du = 0, dv = 0;
    for (Eigen::Index k = 0; k < eta.size(); ++k) {
        u += sv[k].psi_phi * eta(k);
        v += sv[k].psi_r * eta(k);
        du += sv[k].dpsi_phi * eta(k);
        dv += sv[k].dpsi_r * eta(k);
    }
    const double r = R + v;
    MeridianPoint p;
    p.u = u;
    p.v = v;
    p.du = du;
    p.dv = dv;
    p.rho = r * s + u * c;
    p.z = r * c - u * s;
    p.drho = dv * s + r * c + du * c - u * s;
    p.dz = dv * c - r * s - du * s - u * c;
    p.radius = std::hypot(r, u);
    p.dradius_sq = 2.0 * (r * dv + u * du);
    return p;
}

} // namespace

MeridianPoint Meridian::at(double phi) const
{
    const int N = basis_->size();
    std::array<ShapeValue, 32> buf{};
    std::vector<ShapeValue> big;
    ShapeValue* sv = buf.data();
    if (N > 32) {
        big.resize(N);
        sv = big.data();
    }
    if (N > 0) basis_->shapes(phi, sv);
    return compose(basis_->shell().radius, std::cos(phi), std::sin(phi), sv, eta_);
}

MeridianGrid::MeridianGrid(const ModalBasis& basis, int n) : basis_(&basis), n_(n)
{
    if (n < 1) throw ValidationError("grid step count must be positive");
    const int m = samples();
    const int N = basis.size();
    phi_.resize(m);
    cos_.resize(m);
    sin_.resize(m);
    shape_.resize(static_cast<std::size_t>(m) * N);
    for (int i = 0; i < m; ++i) {
        phi_[i] = i == m - 1 ? std::numbers::pi : i * std::numbers::pi / (2 * n);
        cos_[i] = std::cos(phi_[i]);
        sin_[i] = std::sin(phi_[i]);
        if (N > 0) basis.shapes(phi_[i], shape_.data() + static_cast<std::size_t>(i) * N);
    }
}

MeridianPoint MeridianGrid::point(int i, const Eigen::VectorXd& eta) const
{
    if (eta.size() != basis_->size()) throw ValidationError("modal vector size mismatch");
    return compose(basis_->shell().radius, cos_[i], sin_[i], shapes(i), eta);
}

double shell_inertia(const ModalBasis& basis, const Eigen::VectorXd& eta)
{
    const auto& s = basis.shell();
    const auto quad = QuadratureRule::for_modes(basis.size());
    const Meridian mer(basis, eta);
    double acc = 0.0;
    for (int q = 0; q < quad.count(); ++q) {
        const double r = mer.at(std::acos(quad.x[q])).radius;
        acc += quad.w[q] * r * r;
    }
    return (2.0 / 3.0) * 2.0 * std::numbers::pi * s.surface_density() * s.radius * s.radius * acc;
}

} // namespace vsb
