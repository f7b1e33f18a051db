#include "vsb/integrator.hpp"

#include "vsb/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace vsb {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
// difference between the 5th and embedded 4th order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense output
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

} // namespace

void IntegratorConfig::validate(double period) const
{
    if (!(rtol > 0) || !(atol > 0)) throw ValidationError("integrator tolerances must be positive");
    if (!(h_init > 0)) throw ValidationError("integrator h_init must be positive");
    if (!(h_max > 0)) throw ValidationError("integrator h_max must be positive");
    if (!(t_end > 0) || !std::isfinite(t_end)) throw ValidationError("integrator t_end must be positive");
    if (period > 0 && h_max > period / 20.0 * (1.0 + 1e-12))
        throw ValidationError("integrator h_max must not exceed wave period / 20");
}

Eigen::VectorXd DenseStep::operator()(double t) const
{
    const double h = t1 - t0;
    const double th = h > 0 ? (t - t0) / h : 1.0;
    const double th1 = 1.0 - th;
    return y0 + th * (r2_ + th1 * (r3_ + th * (r4_ + th1 * r5_)));
}

Eigen::VectorXd DormandPrince::integrate(const Rhs& f, double t0, Eigen::VectorXd y, const Observer& observe)
{
    cfg_.validate();
    stats_ = {};
    const Eigen::Index n = y.size();
    Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
    double t = t0;
    double h = std::min(cfg_.h_init, cfg_.h_max);
    f(t, y, k1);
    ++stats_.rhs_evals;
    DenseStep step;
    double err_prev = 1e-4;
    bool rejected = false;
    while (t < cfg_.t_end) {
        const double floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
        bool last = false;
        if (t + h >= cfg_.t_end - 64.0 * floor) {
            h = cfg_.t_end - t;
            last = true;
        }
        if (h < floor) {
            std::ostringstream os;
            os << "step-size underflow at t=" << t << " (h=" << h << "), state:";
            for (Eigen::Index i = 0; i < n; ++i) os << ' ' << y(i);
            throw NumericalError(os.str());
        }
        tmp = y + h * a21 * k1;
        f(t + c2 * h, tmp, k2);
        tmp = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, tmp, k3);
        tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, tmp, k4);
        tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, tmp, k5);
        tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, tmp, k6);
        ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        f(t + h, ynew, k7);
        stats_.rhs_evals += 6;

        double err = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double e = h * (e1 * k1(i) + e3 * k3(i) + e4 * k4(i) + e5 * k5(i) + e6 * k6(i) + e7 * k7(i));
            const double sc = cfg_.atol + cfg_.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
            err = std::max(err, std::abs(e) / sc);
        }
        if (!std::isfinite(err)) {
            ++stats_.rejected;
            h *= 0.2;
            continue;
        }
        if (err <= 1.0) {
            step.t0 = t;
            step.t1 = last ? cfg_.t_end : t + h;
            step.y0 = y;
            step.y1 = ynew;
            step.r2_ = ynew - y;
            step.r3_ = h * k1 - step.r2_;
            step.r4_ = step.r2_ - h * k7 - step.r3_;
            step.r5_ = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            t = step.t1;
            y = ynew;
            k1 = k7;
            ++stats_.accepted;
            if (observe) observe(step);
            // PI control; no growth straight after a rejection
            const double e = std::max(err, 1e-10);
            const double fac = 0.9 * std::pow(e, -0.17) * std::pow(err_prev, 0.04);
            h = std::min(cfg_.h_max, h * std::clamp(fac, 0.2, rejected ? 1.0 : 10.0));
            err_prev = std::max(err, 1e-4);
            rejected = false;
        } else {
            ++stats_.rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.17), 0.2, 1.0);
            rejected = true;
        }
    }
    return y;
}

} // namespace vsb
