#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "riskstat/catalog.hpp"
#include "riskstat/types.hpp"

namespace riskstat {

/// Any evaluable statistic; test fixtures plug in plain lambdas.
using RiskFn = std::function<double(const ScenarioVector&)>;

/// Adapter from a catalog spec to the generic callable the checkers take.
RiskFn risk_fn(const RiskStatisticSpec& spec);

struct CheckConfig {
    std::uint64_t trials = 10000;
    /// Tolerance for exact identities (A1, B1, B3).
    double identity_tol = 1e-9;
    /// Allowed floating-point slack on one-sided inequalities.
    double inequality_slack = 1e-12;
    /// Sampling range for vector entries.
    double box_lo = -10.0;
    double box_hi = 10.0;
    std::uint64_t seed = 0;

    static CheckConfig with_box(double half_width) {
        CheckConfig cfg;
        cfg.box_lo = -half_width;
        cfg.box_hi = half_width;
        return cfg;
    }
};

/// The inputs and both sides of one violated (in)equality, stored so the
/// violation can be recomputed independently of the checker.
struct Counterexample {
    std::vector<std::pair<std::string, std::vector<double>>> vectors;
    std::vector<std::pair<std::string, double>> scalars;
    double lhs = 0.0;
    double rhs = 0.0;
    double violation = 0.0;
};

struct AxiomReport {
    std::string axiom;
    bool passed = false;
    std::uint64_t trials = 0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::optional<Counterexample> counterexample;
};

/// A1: |R(X + b1) - R(X) + b| <= identity_tol, b signed.
AxiomReport check_cash_additivity(const RiskFn& fn, std::size_t dim,
                                  const CheckConfig& cfg);

/// A2: X >= Y (componentwise) implies R(X) <= R(Y) + slack.
AxiomReport check_monotonicity(const RiskFn& fn, std::size_t dim,
                               const CheckConfig& cfg);

/// A3: R(lambda X + (1-lambda) Y) <= lambda R(X) + (1-lambda) R(Y) + slack.
AxiomReport check_convexity(const RiskFn& fn, std::size_t dim,
                            const CheckConfig& cfg);

/// The pair form of A5 together with both one-sided equivalents; the three
/// verdicts must agree on any fixed sample budget.
struct CashSubadditivityReport {
    AxiomReport pair;   // R(X+z1*1)+z1 <= R(X+z2*1)+z2 for z1 <= z2
    AxiomReport left;   // R(X+z*1) >= R(X)-z for z >= 0
    AxiomReport right;  // R(X-z*1) <= R(X)+z for z >= 0
    bool verdicts_agree = false;
    bool all_passed() const { return pair.passed && left.passed && right.passed; }
};
CashSubadditivityReport check_cash_subadditivity(const RiskFn& fn,
                                                 std::size_t dim,
                                                 const CheckConfig& cfg);

/// B1 on the grid a in {0, 0.5, ..., 10}, B2-B4 sampled, then the
/// loss-based => cash sub-additive chain: rho((1-eps)X - z1) <=
/// (1-eps)rho(X) + z for eps in {0.5, 0.1, 0.01, 0.001} and the direct
/// inequality rho(X - z1) <= rho(X) + z.
struct LossBasedReport {
    AxiomReport b1;
    AxiomReport b2;
    AxiomReport b3;
    AxiomReport b4;
    AxiomReport implies_csa;  // axiom id "LB=>CSA"
    bool all_passed() const {
        return b1.passed && b2.passed && b3.passed && b4.passed &&
               implies_csa.passed;
    }
};
LossBasedReport check_loss_based(const RiskFn& fn, std::size_t dim,
                                 const CheckConfig& cfg);

/// Sampled Lipschitz-on-compacts probe standing in for closedness (A4).
/// Finite convex functions on R^N are continuous, so this is a heuristic
/// blow-up detector, not a proof: difference quotients at a fine scale must
/// stay within a fixed factor of the coarse-scale maximum.
AxiomReport check_continuity_proxy(const RiskFn& fn, std::size_t dim,
                                   const CheckConfig& cfg);

// Spec-level overloads; dim must match the spec's fixed dimension if any.
AxiomReport check_cash_additivity(const RiskStatisticSpec& spec, std::size_t dim,
                                  const CheckConfig& cfg);
AxiomReport check_monotonicity(const RiskStatisticSpec& spec, std::size_t dim,
                               const CheckConfig& cfg);
AxiomReport check_convexity(const RiskStatisticSpec& spec, std::size_t dim,
                            const CheckConfig& cfg);
CashSubadditivityReport check_cash_subadditivity(const RiskStatisticSpec& spec,
                                                 std::size_t dim,
                                                 const CheckConfig& cfg);
LossBasedReport check_loss_based(const RiskStatisticSpec& spec, std::size_t dim,
                                 const CheckConfig& cfg);
AxiomReport check_continuity_proxy(const RiskStatisticSpec& spec,
                                   std::size_t dim, const CheckConfig& cfg);

/// Everything the `check` command runs: A1, A2, A3, the A5 triple, the
/// continuity probe, and the B set when the spec is loss-based.
struct CheckSuiteResult {
    std::vector<AxiomReport> reports;
    bool m1_agreement = true;
};
CheckSuiteResult run_check_suite(const RiskStatisticSpec& spec, std::size_t dim,
                                 const CheckConfig& cfg);

}  // namespace riskstat
