#pragma once

#include <Eigen/Dense>

#include <functional>

namespace vsb {

struct IntegratorConfig {
    double rtol = 1e-8;
    double atol = 1e-10;
    double h_init = 1e-3;
    double h_max = 0.05;
    double t_end = 60.0;

    /// Throws ValidationError; h_max must not exceed period / 20 when period > 0.
    void validate(double period = 0.0) const;
};

struct IntegrationStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evals = 0;
};

/// One accepted Dormand-Prince step with its fourth-order continuous extension.
class DenseStep {
public:
    double t0 = 0.0, t1 = 0.0;
    Eigen::VectorXd y0, y1;

    Eigen::VectorXd operator()(double t) const;

private:
    friend class DormandPrince;
    Eigen::VectorXd r2_, r3_, r4_, r5_;
};

/// Adaptive explicit Runge-Kutta pair of orders 5(4) with max-norm error control.
class DormandPrince {
public:
    using Rhs = std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;
    using Observer = std::function<void(const DenseStep&)>;

    explicit DormandPrince(IntegratorConfig cfg) : cfg_(cfg) {}

    /// Integrates from t0 to cfg.t_end and returns the final state. The observer sees
    /// every accepted step in order. Throws NumericalError on step-size underflow.
    Eigen::VectorXd integrate(const Rhs& f, double t0, Eigen::VectorXd y0, const Observer& observe);

    const IntegrationStats& stats() const { return stats_; }

private:
    IntegratorConfig cfg_;
    IntegrationStats stats_;
};

} // namespace vsb
