#pragma once

#include <vector>

#include "ntband/market.hpp"

namespace ntband {

// A utility model supplies the zero-cost value function H0 with its first
// two wealth derivatives, the frictionless optimal curve A*(Pi, t), and the
// objective it optimizes. Models must be increasing and concave in wealth.
class UtilityModel {
public:
    virtual ~UtilityModel() = default;

    virtual double value(double pi, double t) const = 0;       // H0(Pi, t)
    virtual double value_dpi(double pi, double t) const = 0;   // dH0/dPi
    virtual double value_d2pi(double pi, double t) const = 0;  // d2H0/dPi2

    virtual std::vector<double> optimal_curve(double pi, double t) const = 0;

    // dA*/dPi. The default is a central finite difference with step
    // 1e-6 * pi; models with a known slope should override.
    virtual std::vector<double> curve_slope(double pi, double t) const;

    virtual double terminal_utility(double pi) const = 0;      // F(Pi)
    virtual double running_utility(double /*pi*/) const { return 0.0; } // I(Pi)
};

// Long Term Growth Model: maximize E[log Pi(T)].
//   H0(Pi, t) = log Pi + (r + mu_hat . Omega^{-1} mu_hat / 2) (T - t)
//   A*(Pi)    = Pi * Omega^{-1} mu_hat
class LtgmModel final : public UtilityModel {
public:
    explicit LtgmModel(const MarketParams& params);

    const std::vector<double>& weights() const { return p_; }  // p = Omega^{-1} mu_hat
    double bond_weight() const { return q_; }                  // q = 1 - sum(p)
    double growth_rate() const { return growth_; }             // r + mu_hat . p / 2

    double value(double pi, double t) const override;
    double value_dpi(double pi, double t) const override;
    double value_d2pi(double pi, double t) const override;
    std::vector<double> optimal_curve(double pi, double t) const override;
    std::vector<double> curve_slope(double pi, double t) const override;
    double terminal_utility(double pi) const override;

private:
    std::vector<double> p_;
    double q_;
    double growth_;
    double horizon_;
};

} // namespace ntband
