#include "riskstat/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace riskstat {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument(std::string(what) +
                                        ": entries must be finite");
        }
    }
}

}  // namespace

ScenarioVector::ScenarioVector(std::vector<double> values)
    : values_(std::move(values)) {
    if (values_.empty()) {
        throw std::invalid_argument("ScenarioVector: dimension must be >= 1");
    }
    require_finite(values_, "ScenarioVector");
}

DiscountVector::DiscountVector(std::vector<double> factors)
    : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw std::invalid_argument("DiscountVector: dimension must be >= 1");
    }
    for (double f : factors_) {
        if (!(f >= 0.0 && f <= 1.0)) {
            throw std::invalid_argument(
                "DiscountVector: factors must lie in [0, 1]");
        }
    }
}

CashShift::CashShift(double amount_in) : amount(amount_in) {
    if (!std::isfinite(amount)) {
        throw std::invalid_argument("CashShift: amount must be finite");
    }
}

ScenarioVector add_cash(const ScenarioVector& x, CashShift shift) {
    std::vector<double> out(x.values().begin(), x.values().end());
    for (double& v : out) v += shift.amount;
    return ScenarioVector(std::move(out));
}

ScenarioVector discount(const DiscountVector& d, const ScenarioVector& x) {
    if (d.size() != x.size()) {
        throw std::invalid_argument("discount: dimension mismatch");
    }
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = d[i] * x[i];
    return ScenarioVector(std::move(out));
}

ScenarioVector clip_losses(const ScenarioVector& x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(x[i], 0.0);
    return ScenarioVector(std::move(out));
}

ScenarioVector convex_combination(double lambda, const ScenarioVector& x,
                                  const ScenarioVector& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("convex_combination: dimension mismatch");
    }
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("convex_combination: lambda outside [0, 1]");
    }
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = lambda * x[i] + (1.0 - lambda) * y[i];
    }
    return ScenarioVector(std::move(out));
}

bool dominates(const ScenarioVector& x, const ScenarioVector& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("dominates: dimension mismatch");
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < y[i]) return false;
    }
    return true;
}

double min_entry(const ScenarioVector& x) {
    return *std::min_element(x.values().begin(), x.values().end());
}

}  // namespace riskstat
