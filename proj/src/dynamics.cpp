#include "vsb/dynamics.hpp"

#include "vsb/error.hpp"

#include <cmath>
#include <numbers>

namespace vsb {

namespace {

Eigen::MatrixXd select(const Eigen::MatrixXd& m, const std::vector<int>& rows, const std::vector<int>& cols)
{
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
    return out;
}

Eigen::VectorXd select(const Eigen::VectorXd& v, const std::vector<int>& idx)
{
    Eigen::VectorXd out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
    return out;
}

} // namespace

BuoyModel::BuoyModel(const ModelSpec& spec)
    : spec_(spec),
      basis_(spec.shell, spec.modes, spec.ratio, spec.frequency_form),
      grid_(basis_, std::max(spec.partitions, 1))
{
    spec_.excitation.validate();
    if (!(spec_.body_mass > 0) || spec_.body_mass < spec_.shell.mass * (1.0 - 1e-12))
        throw ValidationError("body mass must be at least the shell mass");
    if (!(spec_.pto_damping >= 0)) throw ValidationError("PTO damping must be non-negative");
    if (spec_.partitions < 8) throw ValidationError("partition count must be at least 8");
    if (!(spec_.alpha_d >= 0) || !(spec_.beta_d >= 0))
        throw ValidationError("damping multipliers must be non-negative");
    modal_ = assemble_modal(basis_, spec_.alpha_d, spec_.beta_d, spec_.exec);
    const int n = dof();
    constraints_ = constraint_jacobian(spec_.constraints, basis_, Eigen::MatrixXd::Identity(n, n));
    for (int i = 0; i < n; ++i)
        if (!(spec_.constraints.heave_only && i >= 3 && i < 6)) active_.push_back(i);
    omega_c_ = spec_.baumgarte_omega > 0 ? spec_.baumgarte_omega : 10.0 * spec_.excitation.omega();
    reset_history(GeneralizedState::zero(basis_.size()));

    if (spec_.constraints.heave_only) {
        const auto sys = assemble_system(spec_.body_mass, modal_, J_, 0.0);
        std::vector<int> rows(constraints_.A.rows());
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
        const Eigen::MatrixXd Mr = select(sys.M, active_, active_);
        Dr_ = select(sys.D, active_, active_);
        Ar_ = select(constraints_.A, rows, active_);
        Eigen::LLT<Eigen::MatrixXd> llt(Mr);
        if (llt.info() != Eigen::Success) throw NumericalError("reduced mass matrix is singular");
        Mr_inv_ = llt.solve(Eigen::MatrixXd::Identity(Mr.rows(), Mr.cols()));
        if (Ar_.rows() > 0) {
            // Q_c = gain * (b - map * (Q - abar)), from unit right-hand sides
            const Eigen::Index m = Mr.rows(), c = Ar_.rows();
            uk_gain_.resize(m, c);
            for (Eigen::Index j = 0; j < c; ++j)
                uk_gain_.col(j) = constraint_force(Mr, Ar_, Eigen::VectorXd::Unit(c, j), Eigen::VectorXd::Zero(m),
                                                   Eigen::VectorXd::Zero(m));
            uk_map_ = Ar_ * Mr_inv_;
        }
        cached_ = true;
    }
}

PartitionSet BuoyModel::partitions(const GeneralizedState& s) const
{
    return discretize(s, grid_, spec_.surface, spec_.exec);
}

void BuoyModel::reset_history(const GeneralizedState& s)
{
    J_ = shell_inertia(basis_, s.eta());
    J_rate_ = 0.0;
    t_prev_ = s.t;
}

void BuoyModel::accept(const GeneralizedState& s)
{
    if (spec_.constraints.heave_only) return;
    const double J = shell_inertia(basis_, s.eta());
    const double dt = s.t - t_prev_;
    J_rate_ = dt > 0 ? (J - J_) / dt : 0.0;
    J_ = J;
    t_prev_ = s.t;
}

Evaluation BuoyModel::evaluate(const GeneralizedState& s) const
{
    const int n = dof();
    if (s.q.size() != n || s.qdot.size() != n) throw ValidationError("state dimension mismatch");
    const bool heave_only = spec_.constraints.heave_only;
    const double m = spec_.body_mass;

    if (cached_) return evaluate_heave(s);

    const auto sys = assemble_system(m, modal_, J_, J_rate_);
    Eigen::MatrixXd Bbar = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd Bbar_rate = Eigen::MatrixXd::Zero(n, n);
    if (!heave_only) {
        const auto map = euler_rate_map(s.angles(), s.qdot.segment<3>(3));
        Bbar.block<3, 3>(3, 3) = map.inverse;
        Bbar_rate.block<3, 3>(3, 3) = map.inverse_rate;
    }

    Evaluation ev = applied(s);

    const Eigen::MatrixXd Mbar = Bbar.transpose() * sys.M * Bbar;
    const Eigen::VectorXd abar =
        Bbar.transpose() * (sys.M * Bbar_rate * s.qdot + sys.D * Bbar * s.qdot + ev.a);
    const Eigen::VectorXd Q = ev.Q_pto + ev.Q_hydro;

    const auto& act = active_;
    std::vector<int> all_rows(constraints_.A.rows());
    for (std::size_t i = 0; i < all_rows.size(); ++i) all_rows[i] = static_cast<int>(i);
    const Eigen::MatrixXd Mr = select(Mbar, act, act);
    const Eigen::VectorXd ar = select(abar, act);
    const Eigen::VectorXd Qr = select(Q, act);
    const Eigen::MatrixXd Ar = select(constraints_.A, all_rows, act);

    Eigen::VectorXd b = constraints_.b;
    if (Ar.rows() > 0) {
        const double xi = spec_.baumgarte_xi;
        b -= 2.0 * xi * omega_c_ * (constraints_.A * s.qdot) + omega_c_ * omega_c_ * (constraints_.A * s.q);
    }
    const Eigen::VectorXd Qc = constraint_force(Mr, Ar, b, Qr, ar);

    Eigen::LLT<Eigen::MatrixXd> llt(Mr);
    if (llt.info() != Eigen::Success) throw NumericalError("reduced mass matrix is singular");
    const Eigen::VectorXd qdd = llt.solve(Qr - ar + Qc);

    ev.qddot = Eigen::VectorXd::Zero(n);
    ev.Q_c = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < act.size(); ++i) {
        ev.qddot(act[i]) = qdd(i);
        ev.Q_c(act[i]) = Qc(i);
    }
    ev.constraint_residual = Ar.rows() > 0 ? (Ar * qdd - b).norm() : 0.0;
    return ev;
}

EnergyTerms BuoyModel::energy(const GeneralizedState& s) const
{
    EnergyTerms e;
    const double m = spec_.body_mass;
    const Eigen::Vector3d v = s.qdot.head<3>();
    e.T_x = 0.5 * m * v.squaredNorm();
    if (!spec_.constraints.heave_only) {
        const auto map = euler_rate_map(s.angles(), s.qdot.segment<3>(3));
        const Eigen::Vector3d w = map.inverse * s.qdot.segment<3>(3);
        e.T_omega = 0.5 * shell_inertia(basis_, s.eta()) * w.squaredNorm();
    }
    if (basis_.size() > 0) {
        const Eigen::VectorXd ed = s.eta_rate();
        const Eigen::VectorXd et = s.eta();
        e.T_s = 0.5 * ed.dot(modal_.M_ee * ed);
        e.strain = 0.5 * et.dot(modal_.K_ee * et);
    }
    e.gravity = m * spec_.shell.gravity * s.q(2);
    return e;
}

Evaluation BuoyModel::applied(const GeneralizedState& s) const
{
    const int n = dof();
    const double m = spec_.body_mass;
    const double g = spec_.shell.gravity;
    const bool heave_only = spec_.constraints.heave_only;
    Evaluation ev;
    ev.a = bias_vector(s, m, g, J_rate_, modal_.K_ee, heave_only);
    ev.Q_pto = pto_force(s, spec_.pto_damping);
    switch (spec_.hydro) {
    case HydroMode::full:
        ev.Q_hydro = hydro_generalized(s, partitions(s), basis_, spec_.excitation, s.t, spec_.guard, spec_.exec, &grid_);
        break;
    case HydroMode::neutral:
        ev.Q_hydro = Eigen::VectorXd::Zero(n);
        ev.Q_hydro(2) = m * g;
        break;
    case HydroMode::off:
        ev.Q_hydro = Eigen::VectorXd::Zero(n);
        break;
    }
    if (heave_only) ev.Q_hydro.segment<3>(3).setZero();
    return ev;
}

Evaluation BuoyModel::evaluate_heave(const GeneralizedState& s) const
{
    const int n = dof();
    Evaluation ev = applied(s);
    const Eigen::VectorXd qd = select(s.qdot, active_);
    const Eigen::VectorXd ar = Dr_ * qd + select(ev.a, active_);
    const Eigen::VectorXd rhs = select(Eigen::VectorXd(ev.Q_pto + ev.Q_hydro), active_) - ar;
    Eigen::VectorXd Qc = Eigen::VectorXd::Zero(rhs.size());
    Eigen::VectorXd b;
    if (Ar_.rows() > 0) {
        b = constraints_.b - 2.0 * spec_.baumgarte_xi * omega_c_ * (constraints_.A * s.qdot) -
            omega_c_ * omega_c_ * (constraints_.A * s.q);
        Qc = uk_gain_ * (b - uk_map_ * rhs);
    }
    const Eigen::VectorXd qdd = Mr_inv_ * (rhs + Qc);
    ev.qddot = Eigen::VectorXd::Zero(n);
    ev.Q_c = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < active_.size(); ++i) {
        ev.qddot(active_[i]) = qdd(i);
        ev.Q_c(active_[i]) = Qc(i);
    }
    ev.constraint_residual = Ar_.rows() > 0 ? (Ar_ * qdd - b).norm() : 0.0;
    return ev;
}

double BuoyModel::potential(const EnergyTerms& e) const
{
    return spec_.hydro == HydroMode::neutral ? e.strain : e.strain + e.gravity;
}

double BuoyModel::constraint_drift(const GeneralizedState& s) const
{
    return constraints_.A.rows() > 0 ? (constraints_.A * s.q).norm() : 0.0;
}

namespace {

class Grid {
public:
    Grid(double t0, double step, double t_end)
        : t0_(t0), step_(step), t_end_(t_end), last_(std::llround((t_end - t0) / step)) {}

    template <class Emit>
    void feed(const DenseStep& ds, Emit emit)
    {
        while (next_ <= last_) {
            const double t = next_ == last_ ? t_end_ : t0_ + next_ * step_;
            if (t > ds.t1) break;
            emit(t, t == ds.t1 ? ds.y1 : ds(t));
            ++next_;
        }
    }

private:
    double t0_, step_, t_end_;
    long long last_;
    long long next_ = 1;
};

Sample make_sample(double t, const Eigen::VectorXd& y, int n)
{
    return {t, y.head(n), y.tail(n)};
}

} // namespace

SimulationResult simulate(BuoyModel& model, const GeneralizedState& initial, const IntegratorConfig& cfg,
                          const SimulationOptions& opt)
{
    cfg.validate(model.spec().excitation.period);
    if (!(opt.output_step > 0) || !(opt.metric_step > 0)) throw ValidationError("sampling steps must be positive");
    const double ratio = (cfg.t_end - initial.t) / opt.output_step;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw ValidationError("horizon must be a whole number of output steps");
    const int n = model.dof();
    if (initial.q.size() != n || initial.qdot.size() != n) throw ValidationError("initial state dimension mismatch");

    model.reset_history(initial);
    SimulationResult res;
    Eigen::VectorXd y(2 * n);
    y << initial.q, initial.qdot;

    auto state_of = [n](double t, const Eigen::VectorXd& yy) {
        GeneralizedState s;
        s.q = yy.head(n);
        s.qdot = yy.tail(n);
        s.t = t;
        return s;
    };
    auto rhs = [&](double t, const Eigen::VectorXd& yy, Eigen::VectorXd& dy) {
        const auto s = state_of(t, yy);
        dy.resize(2 * n);
        dy.head(n) = s.qdot;
        dy.tail(n) = model.acceleration(s);
    };

    Grid out_grid(initial.t, opt.output_step, cfg.t_end);
    Grid met_grid(initial.t, opt.metric_step, cfg.t_end);
    res.output.push_back(make_sample(initial.t, y, n));
    res.metric.push_back(make_sample(initial.t, y, n));
    res.max_position_drift = model.constraint_drift(initial);
    res.max_acceleration_residual = model.evaluate(initial).constraint_residual;

    DormandPrince dp(cfg);
    if (!(cfg.t_end > initial.t)) throw ValidationError("horizon must end after the initial time");
    dp.integrate(rhs, initial.t, y, [&](const DenseStep& ds) {
        const auto s = state_of(ds.t1, ds.y1);
        model.accept(s);
        res.max_acceleration_residual =
            std::max(res.max_acceleration_residual, model.evaluate(s).constraint_residual);
        out_grid.feed(ds, [&](double t, const Eigen::VectorXd& yy) { res.output.push_back(make_sample(t, yy, n)); });
        met_grid.feed(ds, [&](double t, const Eigen::VectorXd& yy) {
            res.metric.push_back(make_sample(t, yy, n));
            res.max_position_drift = std::max(res.max_position_drift, model.constraint_drift(state_of(t, yy)));
        });
    });
    res.stats = dp.stats();
    return res;
}

std::vector<EnergyPoint> energy_accounting(const BuoyModel& model, const std::vector<Sample>& samples, double c)
{
    std::vector<EnergyPoint> out;
    out.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        GeneralizedState s;
        s.q = samples[i].q;
        s.qdot = samples[i].qdot;
        s.t = samples[i].t;
        EnergyPoint p;
        p.t = s.t;
        p.terms = model.energy(s);
        p.power = c * s.qdot(2) * s.qdot(2);
        p.harvested = i == 0 ? 0.0 : out.back().harvested + 0.5 * (p.t - out.back().t) * (p.power + out.back().power);
        out.push_back(p);
    }
    return out;
}

} // namespace vsb
