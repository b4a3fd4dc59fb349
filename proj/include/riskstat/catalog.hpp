#pragma once

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "riskstat/types.hpp"

namespace riskstat {

/// Axioms a statistic may claim. A1 cash additivity, A2 monotonicity,
/// A3 convexity, A5 cash sub-additivity; B1-B4 are the loss-based set.
enum class Axiom { A1, A2, A3, A5, B1, B2, B3, B4 };

std::string axiom_name(Axiom a);
Axiom parse_axiom(const std::string& name);

enum class StatKind {
    worst_case,
    neg_expectation,
    entropic,
    discounted,
    loss_based,
    scaled_worst_case,
};

std::string kind_name(StatKind k);
StatKind parse_kind(const std::string& name);

class RiskStatisticSpec;

struct WorstCaseParams {};
struct NegExpectationParams {
    std::vector<double> weights;
};
struct EntropicParams {
    double rate;
    std::vector<double> weights;
};
struct DiscountedParams {
    DiscountVector discount;
    std::shared_ptr<const RiskStatisticSpec> base;
};
struct LossBasedParams {
    std::vector<double> weights;
};
struct ScaledWorstCaseParams {
    double scale;
};

/// A closed, serializable description of one risk statistic R: R^N -> R.
///
/// The catalog holds six kinds: three convex cash additive instances
/// (worst_case, neg_expectation, entropic), the discounted construction
/// that turns a cash additive base into a cash sub-additive statistic,
/// the loss-based instance, and scaled_worst_case which for scale > 1
/// deliberately breaks cash sub-additivity (negative control for the
/// axiom checker).
class RiskStatisticSpec {
public:
    using Params = std::variant<WorstCaseParams, NegExpectationParams,
                                EntropicParams, DiscountedParams,
                                LossBasedParams, ScaledWorstCaseParams>;

    static RiskStatisticSpec worst_case();
    static RiskStatisticSpec neg_expectation(std::vector<double> weights);
    static RiskStatisticSpec entropic(double rate, std::vector<double> weights);
    static RiskStatisticSpec discounted(DiscountVector d,
                                        RiskStatisticSpec base);
    static RiskStatisticSpec loss_based(std::vector<double> weights);
    static RiskStatisticSpec scaled_worst_case(double scale);

    StatKind kind() const { return kind_; }
    const Params& params() const { return params_; }

    /// Axioms the spec asserts about itself; checked (not trusted) by the
    /// axioms module. Defaults to the honest profile of the kind; fixture
    /// files may override it, e.g. to plant a claim the checker must refute.
    const std::set<Axiom>& claimed_axioms() const { return claimed_; }
    void set_claimed_axioms(std::set<Axiom> claims) { claimed_ = std::move(claims); }

    /// Fixed dimension when the parameters pin one (weights or discount
    /// factors); nullopt for dimension-agnostic kinds.
    std::optional<std::size_t> dimension() const;

private:
    RiskStatisticSpec(StatKind kind, Params params);

    StatKind kind_;
    Params params_;
    std::set<Axiom> claimed_;
};

/// The honest axiom profile of a spec (what the catalog instance satisfies).
std::set<Axiom> default_claims(StatKind kind, const RiskStatisticSpec::Params& params);

/// R(X) for the given spec; pure, total and finite on valid inputs.
/// Throws std::invalid_argument on dimension mismatch.
double eval(const RiskStatisticSpec& spec, const ScenarioVector& x);

// Direct catalog evaluators. Weight preconditions (w_i >= 0, sum w = 1)
// are validated on entry.
double eval_worst_case(const ScenarioVector& x);
double eval_neg_expectation(std::span<const double> weights,
                            const ScenarioVector& x);
double eval_entropic(double rate, std::span<const double> weights,
                     const ScenarioVector& x);
double eval_discounted(const RiskStatisticSpec& base, const DiscountVector& d,
                       const ScenarioVector& x);
double eval_loss_based(std::span<const double> weights,
                       const ScenarioVector& x);
double eval_scaled_worst_case(double scale, const ScenarioVector& x);

/// Throws unless w is a probability weight vector: w_i >= 0, |sum w - 1| <= 1e-12.
void validate_probability_weights(std::span<const double> weights);

}  // namespace riskstat
