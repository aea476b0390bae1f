#include "ntband/utility.hpp"

#include <cmath>

#include "ntband/errors.hpp"
#include "ntband/strategy.hpp"

namespace ntband {

std::vector<double> UtilityModel::curve_slope(double pi, double t) const {
    const double h = 1e-6 * pi;
    const std::vector<double> up = optimal_curve(pi + h, t);
    const std::vector<double> dn = optimal_curve(pi - h, t);
    std::vector<double> slope(up.size());
    for (std::size_t i = 0; i < up.size(); ++i) {
        slope[i] = (up[i] - dn[i]) / (2.0 * h);
    }
    return slope;
}

LtgmModel::LtgmModel(const MarketParams& params)
    : p_(optimal_weights(params)), horizon_(params.horizon()) {
    double sum = 0.0;
    double excess = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        sum += p_[i];
        excess += params.mu_hat()[i] * p_[i];
    }
    q_ = 1.0 - sum;
    growth_ = params.r() + 0.5 * excess;
}

double LtgmModel::value(double pi, double t) const {
    if (!(pi > 0.0)) {
        throw DomainError("log utility requires positive wealth");
    }
    return std::log(pi) + growth_ * (horizon_ - t);
}

double LtgmModel::value_dpi(double pi, double /*t*/) const {
    if (!(pi > 0.0)) {
        throw DomainError("log utility requires positive wealth");
    }
    return 1.0 / pi;
}

double LtgmModel::value_d2pi(double pi, double /*t*/) const {
    if (!(pi > 0.0)) {
        throw DomainError("log utility requires positive wealth");
    }
    return -1.0 / (pi * pi);
}

std::vector<double> LtgmModel::optimal_curve(double pi, double /*t*/) const {
    std::vector<double> a(p_.size());
    for (std::size_t i = 0; i < p_.size(); ++i) {
        a[i] = pi * p_[i];
    }
    return a;
}

std::vector<double> LtgmModel::curve_slope(double /*pi*/, double /*t*/) const {
    return p_;
}

double LtgmModel::terminal_utility(double pi) const {
    if (!(pi > 0.0)) {
        throw DomainError("log utility requires positive wealth");
    }
    return std::log(pi);
}

} // namespace ntband
