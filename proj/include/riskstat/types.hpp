#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace riskstat {

/// An N-dimensional outcome vector: one monetary outcome per scenario.
/// Entries are validated finite at construction; the dimension is fixed
/// for the lifetime of the object.
class ScenarioVector {
public:
    explicit ScenarioVector(std::vector<double> values);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    bool operator==(const ScenarioVector& other) const = default;

private:
    std::vector<double> values_;
};

/// Per-scenario stochastic discount factors, each in [0, 1].
class DiscountVector {
public:
    explicit DiscountVector(std::vector<double> factors);

    std::size_t size() const { return factors_.size(); }
    double operator[](std::size_t i) const { return factors_[i]; }
    std::span<const double> factors() const { return factors_; }

    bool operator==(const DiscountVector& other) const = default;

private:
    std::vector<double> factors_;
};

/// A sure cash amount added to (or removed from) every scenario at once.
struct CashShift {
    explicit CashShift(double amount);
    double amount;
};

/// x + b*(1,...,1).
ScenarioVector add_cash(const ScenarioVector& x, CashShift shift);

/// Componentwise product (d_1 x_1, ..., d_N x_N).
ScenarioVector discount(const DiscountVector& d, const ScenarioVector& x);

/// Componentwise min with zero; keeps only the loss part of each scenario.
ScenarioVector clip_losses(const ScenarioVector& x);

/// lambda * x + (1 - lambda) * y, dimensions must match.
ScenarioVector convex_combination(double lambda, const ScenarioVector& x,
                                  const ScenarioVector& y);

/// Componentwise x_i >= y_i for all i.
bool dominates(const ScenarioVector& x, const ScenarioVector& y);

double min_entry(const ScenarioVector& x);

}  // namespace riskstat
