#include "vsb/forces.hpp"

#include "vsb/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vsb {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double guard_cos = 0.05;
}

double ExcitationSpec::omega() const { return 2.0 * pi / period; }

void ExcitationSpec::validate() const
{
    if (!std::isfinite(pressure) || pressure < 0) throw ValidationError("excitation pressure must be non-negative");
    if (!std::isfinite(period) || period <= 0) throw ValidationError("excitation period must be positive");
    if (!std::isfinite(phase)) throw ValidationError("excitation phase must be finite");
}

Eigen::VectorXd pto_force(const GeneralizedState& state, double c)
{
    if (!(c >= 0)) throw ValidationError("PTO damping must be non-negative");
    Eigen::VectorXd Q = Eigen::VectorXd::Zero(state.q.size());
    Q(2) = -c * state.qdot(2);
    return Q;
}

NodeForce node_hydro_force(const Disk& disk, const ExcitationSpec& ex, double t, double rho_w, double g,
                           BuoyancyGuard guard)
{
    NodeForce f;
    if (!disk.wet) return f;
    const double excitation = ex.pressure * disk.area * std::cos(ex.omega() * t + ex.phase);
    const double buoyant = rho_w * disk.volume * g;
    const Eigen::Vector3d c3(std::sin(disk.psi), 0.0, std::cos(disk.psi));
    const double cpp = std::cos(pi - disk.psi);
    if (std::abs(cpp) < guard_cos) {
        f.guarded = true;
        f.magnitude = excitation;
        f.force = -excitation * c3 + Eigen::Vector3d(0.0, 0.0, buoyant);
        if (guard == BuoyancyGuard::continuous)
            f.force(0) -= buoyant * std::sin(disk.psi) * cpp / (guard_cos * guard_cos);
    } else {
        f.magnitude = excitation + buoyant / cpp;
        f.force = -f.magnitude * c3;
    }
    return f;
}

Eigen::VectorXd hydro_generalized(const GeneralizedState& state, const PartitionSet& parts,
                                  const ModalBasis& basis, const ExcitationSpec& ex, double t, BuoyancyGuard guard,
                                  Execution exec, const MeridianGrid* grid)
{
    if (grid && &grid->basis() != &basis) throw ValidationError("grid built on a different basis");
    const int N = basis.size();
    const auto& shell = basis.shell();
    const int nd = static_cast<int>(parts.disks.size());
    // per disk: body-frame resultant of the revolved ring (axial; lateral parts cancel) then modal projections
    Eigen::MatrixXd contrib = Eigen::MatrixXd::Zero(3 + N, nd);
    const bool par = exec == Execution::parallel;
#pragma omp parallel if (par)
    {
        std::vector<ShapeValue> sv(N);
#pragma omp for schedule(static)
        for (int i = 0; i < nd; ++i) {
            const Disk& d = parts.disks[i];
            if (!d.wet) continue;
            const auto nf = node_hydro_force(d, ex, t, shell.water_density, shell.gravity, guard);
            contrib(2, i) = nf.force(2);
            if (N > 0) {
                const Eigen::Vector3d fe = rotation_es(d.phi_mid, 0.0) * nf.force;
                const ShapeValue* S = sv.data();
                if (grid && d.sample >= 0)
                    S = grid->shapes(d.sample);
                else
                    basis.shapes(d.phi_mid, sv.data());
                for (int k = 0; k < N; ++k) contrib(3 + k, i) = fe(0) * S[k].psi_phi + fe(2) * S[k].psi_r;
            }
        }
    }
    Eigen::VectorXd total = Eigen::VectorXd::Zero(3 + N);
    for (int i = 0; i < nd; ++i) total += contrib.col(i);

    Eigen::VectorXd Q = Eigen::VectorXd::Zero(6 + N);
    Q.head<3>() = rotation_sa(state.angles()).transpose() * total.head<3>();
    Q.tail(N) = total.tail(N);
    return Q;
}

Eigen::VectorXd bias_vector(const GeneralizedState& state, double mass, double g, double J_rate,
                            const Eigen::MatrixXd& K_ee, bool heave_only)
{
    const int N = state.modes();
    Eigen::VectorXd a = Eigen::VectorXd::Zero(6 + N);
    a(2) = mass * g;
    if (!heave_only) {
        const auto map = euler_rate_map(state.angles(), state.qdot.segment<3>(3));
        a.segment<3>(3) = map.inverse * state.qdot.segment<3>(3) * J_rate;
    }
    if (N > 0) a.tail(N) = K_ee * state.eta();
    return a;
}

Eigen::VectorXd constraint_force(const Eigen::MatrixXd& M, const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                 const Eigen::VectorXd& Q, const Eigen::VectorXd& abar)
{
    const Eigen::Index n = M.rows();
    if (M.cols() != n || Q.size() != n || abar.size() != n || (A.rows() > 0 && A.cols() != n) ||
        b.size() != A.rows())
        throw ValidationError("constraint_force: dimension mismatch");
    if (A.rows() == 0) return Eigen::VectorXd::Zero(n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0)
        throw NumericalError("constraint_force: mass matrix is not positive definite");
    const Eigen::VectorXd s = es.eigenvalues().cwiseSqrt();
    const Eigen::MatrixXd& V = es.eigenvectors();
    const Eigen::MatrixXd Mh = V * s.asDiagonal() * V.transpose();
    const Eigen::MatrixXd Mih = V * s.cwiseInverse().asDiagonal() * V.transpose();

    const Eigen::MatrixXd K = A * Mih;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(K, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * (sv.size() ? sv(0) : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    if (rank < A.rows()) {
        std::ostringstream os;
        os << "redundant constraint rows:";
        for (int r : redundant_rows(A)) os << ' ' << r;
        throw NumericalError(os.str());
    }
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
    const Eigen::MatrixXd Kp = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();

    const Eigen::VectorXd unconstrained = Mih * (Mih * (Q - abar));
    return Mh * (Kp * (b - A * unconstrained));
}

std::vector<int> redundant_rows(const Eigen::MatrixXd& A)
{
    std::vector<int> out;
    Eigen::MatrixXd kept(0, A.cols());
    const double scale = A.size() ? std::max(A.cwiseAbs().maxCoeff(), 1e-300) : 1.0;
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        Eigen::MatrixXd trial(kept.rows() + 1, A.cols());
        trial << kept, A.row(r);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(trial);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-12 * scale) ++rank;
        if (rank == trial.rows())
            kept = trial;
        else
            out.push_back(static_cast<int>(r));
    }
    return out;
}

ConstraintSystem constraint_jacobian(const ConstraintSpec& spec, const ModalBasis& basis, const Eigen::MatrixXd& Bbar)
{
    const int N = basis.size();
    const Eigen::Index n = 6 + N;
    if (Bbar.rows() != n || Bbar.cols() != n) throw ValidationError("constraint_jacobian: Bbar dimension mismatch");
    ConstraintSystem cs;
    std::vector<Eigen::RowVectorXd> rows;
    if (spec.phi_c) {
        const double phi = *spec.phi_c;
        if (!(phi >= 0 && phi <= pi)) throw ValidationError("constraint colatitude must lie in [0, pi]");
        if (N > 0) {
            const auto Phi = basis.basis_matrix(phi);
            const double scale = std::max(1.0, Phi.cwiseAbs().maxCoeff());
            const char* names[3] = {"tangential", "out-of-plane", "radial"};
            for (int r = 0; r < 3; ++r) {
                Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
                row.tail(N) = Phi.row(r);
                row = row * Bbar;
                if (row.cwiseAbs().maxCoeff() <= 1e-12 * scale) continue;
                rows.push_back(row);
                cs.labels.push_back(std::string("phi_c ") + names[r] + " displacement");
            }
        }
    }
    if (spec.rigid) {
        for (int k = 0; k < N; ++k) {
            Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(n);
            row(6 + k) = 1.0;
            rows.push_back(row * Bbar);
            cs.labels.push_back("eta_" + std::to_string(k + 1) + " pinned");
        }
    }
    cs.A.resize(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t i = 0; i < rows.size(); ++i) cs.A.row(static_cast<Eigen::Index>(i)) = rows[i];
    cs.b = Eigen::VectorXd::Zero(cs.A.rows());
    const auto red = redundant_rows(cs.A);
    if (!red.empty()) {
        std::string msg = "redundant constraints:";
        for (int r : red) msg += " [" + cs.labels[r] + "]";
        throw ValidationError(msg);
    }
    return cs;
}

} // namespace vsb
