#pragma once

#include <cstddef>

#include "riskstat/axioms.hpp"
#include "riskstat/catalog.hpp"
#include "riskstat/types.hpp"

namespace riskstat {

/// Two-branch extension of a scenario vector: the body is active on the
/// original scenarios, the cash branch holds a sure amount a (as a*1).
class ExtendedVector {
  public:
    ExtendedVector(ScenarioVector body, double cash);

    const ScenarioVector& body() const { return body_; }
    double cash() const { return cash_; }

    friend bool operator==(const ExtendedVector&,
                           const ExtendedVector&) = default;

  private:
    ScenarioVector body_;
    double cash_;
};

/// Injection at cash = 0.
ExtendedVector embed(const ScenarioVector& x);

/// Componentwise order: both branches must dominate.
bool dominates(const ExtendedVector& a, const ExtendedVector& b);

/// Cash shift on the extended space moves both branches: ((X+b1), a+b).
ExtendedVector extended_shift(const ExtendedVector& x, double b);

ExtendedVector convex_combination(double lambda, const ExtendedVector& x,
                                  const ExtendedVector& y);

/// The lift: R(body - cash*1) - cash.
double lift_eval(const RiskStatisticSpec& spec, const ExtendedVector& x);

/// Lift axioms plus the extension identity. Cash additivity of the lift is
/// an algebraic identity and holds for every spec at 1e-12; monotonicity of
/// the lift needs the base statistic to be cash sub-additive; convexity
/// needs the base to be convex. The extension identity is bitwise exact.
struct LiftReport {
    AxiomReport cash_additivity;  // "A1-lift"
    AxiomReport monotonicity;     // "A2-lift"
    AxiomReport convexity;        // "A3-lift"
    AxiomReport extension;        // "extension-identity"
    bool all_passed() const {
        return cash_additivity.passed && monotonicity.passed &&
               convexity.passed && extension.passed;
    }
};
LiftReport verify_lift(const RiskStatisticSpec& spec, std::size_t dim,
                       const CheckConfig& cfg);

}  // namespace riskstat
