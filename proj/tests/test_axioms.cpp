#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "riskstat/axioms.hpp"
#include "riskstat/catalog.hpp"

using namespace riskstat;

namespace {

CheckConfig fast_cfg(std::uint64_t trials = 2000, std::uint64_t seed = 11) {
    CheckConfig cfg;
    cfg.trials = trials;
    cfg.seed = seed;
    return cfg;
}

RiskStatisticSpec discounted_fixture() {
    return RiskStatisticSpec::discounted(DiscountVector({0.5, 1.0}),
                                         RiskStatisticSpec::worst_case());
}

double reevaluate(const RiskFn& fn, const Counterexample& ce,
                  const std::string& name) {
    for (const auto& [n, v] : ce.vectors)
        if (n == name) return fn(ScenarioVector(v));
    FAIL("missing counterexample vector: ", name);
    return 0.0;
}

double scalar_of(const Counterexample& ce, const std::string& name) {
    for (const auto& [n, v] : ce.scalars)
        if (n == name) return v;
    FAIL("missing counterexample scalar: ", name);
    return 0.0;
}

}  // namespace

TEST_CASE("cash additive catalog members pass the additive checks") {
    const CheckConfig cfg = fast_cfg();
    for (const RiskStatisticSpec& spec :
         {RiskStatisticSpec::worst_case(),
          RiskStatisticSpec::neg_expectation({0.3, 0.7}),
          RiskStatisticSpec::entropic(2.0, {0.25, 0.75})}) {
        const std::size_t dim = spec.dimension().value_or(3);
        CHECK(check_cash_additivity(spec, dim, cfg).passed);
        CHECK(check_monotonicity(spec, dim, cfg).passed);
        CHECK(check_convexity(spec, dim, cfg).passed);
        const CashSubadditivityReport csa =
            check_cash_subadditivity(spec, dim, cfg);
        CHECK(csa.all_passed());
        CHECK(csa.verdicts_agree);
        CHECK(check_continuity_proxy(spec, dim, cfg).passed);
    }
}

TEST_CASE("discounting keeps cash sub-additivity but breaks additivity") {
    const RiskStatisticSpec spec = discounted_fixture();
    const CheckConfig cfg = fast_cfg(1000);

    const AxiomReport a1 = check_cash_additivity(spec, 2, cfg);
    CHECK_FALSE(a1.passed);
    REQUIRE(a1.counterexample.has_value());

    const CashSubadditivityReport csa = check_cash_subadditivity(spec, 2, cfg);
    CHECK(csa.all_passed());
    CHECK(csa.verdicts_agree);
    CHECK(check_monotonicity(spec, 2, cfg).passed);
    CHECK(check_convexity(spec, 2, cfg).passed);
}

TEST_CASE("counterexamples re-evaluate to their recorded sides") {
    const RiskStatisticSpec spec = discounted_fixture();
    const RiskFn fn = risk_fn(spec);
    const AxiomReport a1 = check_cash_additivity(spec, 2, fast_cfg(1000));
    REQUIRE(a1.counterexample.has_value());
    const Counterexample& ce = *a1.counterexample;

    const double b = scalar_of(ce, "b");
    std::vector<double> shifted;
    for (const auto& [name, values] : ce.vectors)
        if (name == "X")
            for (double v : values) shifted.push_back(v + b);
    const double lhs = fn(ScenarioVector(shifted));
    const double rhs = reevaluate(fn, ce, "X") - b;
    CHECK(lhs == ce.lhs);
    CHECK(rhs == ce.rhs);
    CHECK(std::abs(lhs - rhs) == ce.violation);
    CHECK(ce.violation > 1e-9);
}

TEST_CASE("scaled worst case beyond scale one fails every sub-additivity form") {
    const RiskStatisticSpec spec = RiskStatisticSpec::scaled_worst_case(2.0);
    const CashSubadditivityReport csa =
        check_cash_subadditivity(spec, 2, fast_cfg(1000));
    CHECK_FALSE(csa.pair.passed);
    CHECK_FALSE(csa.left.passed);
    CHECK_FALSE(csa.right.passed);
    CHECK(csa.verdicts_agree);
    REQUIRE(csa.pair.counterexample.has_value());

    // At or below scale one the forms hold.
    const CashSubadditivityReport ok = check_cash_subadditivity(
        RiskStatisticSpec::scaled_worst_case(0.75), 2, fast_cfg(1000));
    CHECK(ok.all_passed());
    CHECK(ok.verdicts_agree);
}

TEST_CASE("an increasing statistic fails monotonicity quickly") {
    const RiskFn increasing = [](const ScenarioVector& x) {
        double s = 0.0;
        for (double v : x.values()) s += v;
        return s;
    };
    const AxiomReport a2 = check_monotonicity(increasing, 2, fast_cfg(1000));
    CHECK_FALSE(a2.passed);
    REQUIRE(a2.counterexample.has_value());
    CHECK(a2.counterexample->violation > 0.0);
}

TEST_CASE("a concave transform fails convexity quickly") {
    const RiskFn concave = [](const ScenarioVector& x) {
        const double m = min_entry(x);
        return -m * m;
    };
    CheckConfig cfg = fast_cfg(1000);
    cfg.box_lo = 1.0;
    cfg.box_hi = 10.0;
    const AxiomReport a3 = check_convexity(concave, 2, cfg);
    CHECK_FALSE(a3.passed);
    REQUIRE(a3.counterexample.has_value());
}

TEST_CASE("cash additivity implies all sub-additivity forms at the same budget") {
    const CheckConfig cfg = fast_cfg();
    for (const RiskStatisticSpec& spec :
         {RiskStatisticSpec::worst_case(),
          RiskStatisticSpec::neg_expectation({0.5, 0.5}),
          RiskStatisticSpec::entropic(1.0, {0.5, 0.5}),
          RiskStatisticSpec::scaled_worst_case(1.0)}) {
        const std::size_t dim = spec.dimension().value_or(2);
        if (check_cash_additivity(spec, dim, cfg).passed)
            CHECK(check_cash_subadditivity(spec, dim, cfg).all_passed());
    }
}

TEST_CASE("one-sided and pair verdicts agree across the catalog") {
    const CheckConfig cfg = fast_cfg();
    for (const RiskStatisticSpec& spec :
         {RiskStatisticSpec::worst_case(),
          RiskStatisticSpec::neg_expectation({0.5, 0.5}),
          RiskStatisticSpec::entropic(1.0, {0.5, 0.5}), discounted_fixture(),
          RiskStatisticSpec::loss_based({0.5, 0.5}),
          RiskStatisticSpec::scaled_worst_case(2.0),
          RiskStatisticSpec::scaled_worst_case(1.0)}) {
        const std::size_t dim = spec.dimension().value_or(2);
        CHECK(check_cash_subadditivity(spec, dim, cfg).verdicts_agree);
    }
}

TEST_CASE("loss based statistic satisfies its whole bundle") {
    const RiskStatisticSpec spec = RiskStatisticSpec::loss_based({0.5, 0.5});
    const LossBasedReport lb = check_loss_based(spec, 2, fast_cfg());
    CHECK(lb.b1.passed);
    CHECK(lb.b1.trials == 21);  // a = 0, 0.5, ..., 10
    CHECK(lb.b2.passed);
    CHECK(lb.b3.passed);
    CHECK(lb.b4.passed);
    CHECK(lb.implies_csa.passed);
    CHECK(lb.all_passed());
}

TEST_CASE("worst case charges sure losses but is not loss based") {
    const RiskStatisticSpec spec = RiskStatisticSpec::worst_case();
    const LossBasedReport lb = check_loss_based(spec, 2, fast_cfg(1000));
    CHECK(lb.b1.passed);        // -min(-a 1) = a
    CHECK_FALSE(lb.b3.passed);  // gains move the worst case
    REQUIRE(lb.b3.counterexample.has_value());
}

TEST_CASE("reports are reproducible under a fixed seed") {
    const RiskStatisticSpec spec = discounted_fixture();
    const AxiomReport first = check_cash_additivity(spec, 2, fast_cfg(1000, 42));
    const AxiomReport second = check_cash_additivity(spec, 2, fast_cfg(1000, 42));
    CHECK(first.passed == second.passed);
    REQUIRE(first.counterexample.has_value());
    REQUIRE(second.counterexample.has_value());
    CHECK(first.counterexample->violation == second.counterexample->violation);
    CHECK(first.counterexample->vectors == second.counterexample->vectors);
    CHECK(first.counterexample->scalars == second.counterexample->scalars);
}

TEST_CASE("continuity probe flags a near-singular statistic") {
    const RiskFn spiky = [](const ScenarioVector& x) {
        return 1.0 / (std::abs(x[0]) + 1e-6);
    };
    CheckConfig cfg = fast_cfg(10000, 7);
    cfg.box_lo = -0.01;
    cfg.box_hi = 0.01;
    const AxiomReport probe = check_continuity_proxy(spiky, 1, cfg);
    CHECK_FALSE(probe.passed);
    REQUIRE(probe.counterexample.has_value());
}

TEST_CASE("the check suite covers the loss based bundle only when relevant") {
    const CheckConfig cfg = fast_cfg(500);
    const CheckSuiteResult plain =
        run_check_suite(RiskStatisticSpec::worst_case(), 2, cfg);
    CHECK(plain.reports.size() == 7);  // A1, A2, A3, A5 triple, continuity
    CHECK(plain.m1_agreement);

    const CheckSuiteResult lossy =
        run_check_suite(RiskStatisticSpec::loss_based({0.5, 0.5}), 2, cfg);
    CHECK(lossy.reports.size() == 12);
    const auto has = [&](const char* id) {
        return std::any_of(lossy.reports.begin(), lossy.reports.end(),
                           [&](const AxiomReport& r) { return r.axiom == id; });
    };
    CHECK(has("B1"));
    CHECK(has("LB=>CSA"));
}

TEST_CASE("dimension handling in checkers") {
    const RiskStatisticSpec spec = RiskStatisticSpec::neg_expectation({1.0});
    CHECK_THROWS_AS(check_cash_additivity(spec, 2, fast_cfg(10)),
                    std::invalid_argument);
    const RiskFn fn = risk_fn(RiskStatisticSpec::worst_case());
    CHECK_THROWS_AS(check_monotonicity(fn, 0, fast_cfg(10)),
                    std::invalid_argument);
}
