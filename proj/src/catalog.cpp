#include "riskstat/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace riskstat {

namespace {

constexpr double kWeightSumTol = 1e-12;

}  // namespace

std::string axiom_name(Axiom a) {
    switch (a) {
        case Axiom::A1: return "A1";
        case Axiom::A2: return "A2";
        case Axiom::A3: return "A3";
        case Axiom::A5: return "A5";
        case Axiom::B1: return "B1";
        case Axiom::B2: return "B2";
        case Axiom::B3: return "B3";
        case Axiom::B4: return "B4";
    }
    throw std::logic_error("axiom_name: unknown axiom");
}

Axiom parse_axiom(const std::string& name) {
    if (name == "A1") return Axiom::A1;
    if (name == "A2") return Axiom::A2;
    if (name == "A3") return Axiom::A3;
    if (name == "A5") return Axiom::A5;
    if (name == "B1") return Axiom::B1;
    if (name == "B2") return Axiom::B2;
    if (name == "B3") return Axiom::B3;
    if (name == "B4") return Axiom::B4;
    throw std::invalid_argument("parse_axiom: unknown axiom '" + name + "'");
}

std::string kind_name(StatKind k) {
    switch (k) {
        case StatKind::worst_case: return "worst_case";
        case StatKind::neg_expectation: return "neg_expectation";
        case StatKind::entropic: return "entropic";
        case StatKind::discounted: return "discounted";
        case StatKind::loss_based: return "loss_based";
        case StatKind::scaled_worst_case: return "scaled_worst_case";
    }
    throw std::logic_error("kind_name: unknown kind");
}

StatKind parse_kind(const std::string& name) {
    if (name == "worst_case") return StatKind::worst_case;
    if (name == "neg_expectation") return StatKind::neg_expectation;
    if (name == "entropic") return StatKind::entropic;
    if (name == "discounted") return StatKind::discounted;
    if (name == "loss_based") return StatKind::loss_based;
    if (name == "scaled_worst_case") return StatKind::scaled_worst_case;
    throw std::invalid_argument("parse_kind: unknown kind '" + name + "'");
}

void validate_probability_weights(std::span<const double> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("weights: dimension must be >= 1");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("weights: entries must be >= 0");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
        throw std::invalid_argument("weights: entries must sum to 1");
    }
}

RiskStatisticSpec::RiskStatisticSpec(StatKind kind, Params params)
    : kind_(kind), params_(std::move(params)) {
    claimed_ = default_claims(kind_, params_);
}

RiskStatisticSpec RiskStatisticSpec::worst_case() {
    return RiskStatisticSpec(StatKind::worst_case, WorstCaseParams{});
}

RiskStatisticSpec RiskStatisticSpec::neg_expectation(std::vector<double> weights) {
    validate_probability_weights(weights);
    return RiskStatisticSpec(StatKind::neg_expectation,
                             NegExpectationParams{std::move(weights)});
}

RiskStatisticSpec RiskStatisticSpec::entropic(double rate,
                                              std::vector<double> weights) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw std::invalid_argument("entropic: rate must be > 0");
    }
    validate_probability_weights(weights);
    return RiskStatisticSpec(StatKind::entropic,
                             EntropicParams{rate, std::move(weights)});
}

RiskStatisticSpec RiskStatisticSpec::discounted(DiscountVector d,
                                                RiskStatisticSpec base) {
    if (auto base_dim = base.dimension(); base_dim && *base_dim != d.size()) {
        throw std::invalid_argument(
            "discounted: discount and base dimensions differ");
    }
    auto base_ptr = std::make_shared<const RiskStatisticSpec>(std::move(base));
    return RiskStatisticSpec(StatKind::discounted,
                             DiscountedParams{std::move(d), std::move(base_ptr)});
}

RiskStatisticSpec RiskStatisticSpec::loss_based(std::vector<double> weights) {
    validate_probability_weights(weights);
    return RiskStatisticSpec(StatKind::loss_based,
                             LossBasedParams{std::move(weights)});
}

RiskStatisticSpec RiskStatisticSpec::scaled_worst_case(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("scaled_worst_case: scale must be > 0");
    }
    return RiskStatisticSpec(StatKind::scaled_worst_case,
                             ScaledWorstCaseParams{scale});
}

std::optional<std::size_t> RiskStatisticSpec::dimension() const {
    switch (kind_) {
        case StatKind::worst_case:
        case StatKind::scaled_worst_case:
            return std::nullopt;
        case StatKind::neg_expectation:
            return std::get<NegExpectationParams>(params_).weights.size();
        case StatKind::entropic:
            return std::get<EntropicParams>(params_).weights.size();
        case StatKind::loss_based:
            return std::get<LossBasedParams>(params_).weights.size();
        case StatKind::discounted:
            return std::get<DiscountedParams>(params_).discount.size();
    }
    return std::nullopt;
}

std::set<Axiom> default_claims(StatKind kind,
                               const RiskStatisticSpec::Params& params) {
    switch (kind) {
        case StatKind::worst_case:
        case StatKind::neg_expectation:
        case StatKind::entropic:
            return {Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A5};
        case StatKind::discounted:
            return {Axiom::A2, Axiom::A3, Axiom::A5};
        case StatKind::loss_based:
            return {Axiom::A2, Axiom::A3, Axiom::A5,
                    Axiom::B1, Axiom::B2, Axiom::B3, Axiom::B4};
        case StatKind::scaled_worst_case: {
            // -c*min is positively homogeneous and convex for any c > 0;
            // z -> R(X+z1)+z has slope 1-c, so A5 survives only for c <= 1.
            const double c = std::get<ScaledWorstCaseParams>(params).scale;
            std::set<Axiom> claims{Axiom::A2, Axiom::A3};
            if (c <= 1.0) claims.insert(Axiom::A5);
            if (c == 1.0) claims.insert(Axiom::A1);
            return claims;
        }
    }
    return {};
}

double eval_worst_case(const ScenarioVector& x) { return -min_entry(x); }

double eval_neg_expectation(std::span<const double> weights,
                            const ScenarioVector& x) {
    validate_probability_weights(weights);
    if (weights.size() != x.size()) {
        throw std::invalid_argument("eval_neg_expectation: dimension mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += weights[i] * x[i];
    return -acc;
}

double eval_entropic(double rate, std::span<const double> weights,
                     const ScenarioVector& x) {
    if (!(rate > 0.0)) {
        throw std::invalid_argument("eval_entropic: rate must be > 0");
    }
    validate_probability_weights(weights);
    if (weights.size() != x.size()) {
        throw std::invalid_argument("eval_entropic: dimension mismatch");
    }
    // (1/rate) * log sum_i w_i exp(-rate * x_i), evaluated with the usual
    // max-shift so that |rate * x_i| far beyond 700 cannot overflow.
    double shift = -rate * x[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        shift = std::max(shift, -rate * x[i]);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += weights[i] * std::exp(-rate * x[i] - shift);
    }
    return (shift + std::log(acc)) / rate;
}

double eval_discounted(const RiskStatisticSpec& base, const DiscountVector& d,
                       const ScenarioVector& x) {
    return eval(base, discount(d, x));
}

double eval_loss_based(std::span<const double> weights,
                       const ScenarioVector& x) {
    validate_probability_weights(weights);
    if (weights.size() != x.size()) {
        throw std::invalid_argument("eval_loss_based: dimension mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += weights[i] * std::min(x[i], 0.0);
    }
    return -acc;
}

double eval_scaled_worst_case(double scale, const ScenarioVector& x) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("eval_scaled_worst_case: scale must be > 0");
    }
    return -scale * min_entry(x);
}

double eval(const RiskStatisticSpec& spec, const ScenarioVector& x) {
    if (auto dim = spec.dimension(); dim && *dim != x.size()) {
        throw std::invalid_argument("eval: spec dimension " +
                                    std::to_string(*dim) +
                                    " does not match input dimension " +
                                    std::to_string(x.size()));
    }
    switch (spec.kind()) {
        case StatKind::worst_case:
            return eval_worst_case(x);
        case StatKind::neg_expectation:
            return eval_neg_expectation(
                std::get<NegExpectationParams>(spec.params()).weights, x);
        case StatKind::entropic: {
            const auto& p = std::get<EntropicParams>(spec.params());
            return eval_entropic(p.rate, p.weights, x);
        }
        case StatKind::discounted: {
            const auto& p = std::get<DiscountedParams>(spec.params());
            return eval_discounted(*p.base, p.discount, x);
        }
        case StatKind::loss_based:
            return eval_loss_based(
                std::get<LossBasedParams>(spec.params()).weights, x);
        case StatKind::scaled_worst_case:
            return eval_scaled_worst_case(
                std::get<ScaledWorstCaseParams>(spec.params()).scale, x);
    }
    throw std::logic_error("eval: unknown kind");
}

}  // namespace riskstat
