#include "riskstat/embedding.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "detail.hpp"

namespace riskstat {

using detail::derive_seed;
using detail::finalize;
using detail::make_ce;
using detail::Sampler;
using detail::Tracker;

ExtendedVector::ExtendedVector(ScenarioVector body, double cash)
    : body_(std::move(body)), cash_(cash) {
    if (!std::isfinite(cash))
        throw std::invalid_argument("extended cash branch must be finite");
}

ExtendedVector embed(const ScenarioVector& x) { return {x, 0.0}; }

bool dominates(const ExtendedVector& a, const ExtendedVector& b) {
    return dominates(a.body(), b.body()) && a.cash() >= b.cash();
}

ExtendedVector extended_shift(const ExtendedVector& x, double b) {
    return {add_cash(x.body(), CashShift(b)), x.cash() + b};
}

ExtendedVector convex_combination(double lambda, const ExtendedVector& x,
                                  const ExtendedVector& y) {
    return {convex_combination(lambda, x.body(), y.body()),
            lambda * x.cash() + (1.0 - lambda) * y.cash()};
}

double lift_eval(const RiskStatisticSpec& spec, const ExtendedVector& x) {
    return eval(spec, add_cash(x.body(), CashShift(-x.cash()))) - x.cash();
}

namespace {

std::vector<double> body_of(const ExtendedVector& v) {
    return {v.body().values().begin(), v.body().values().end()};
}

}  // namespace

LiftReport verify_lift(const RiskStatisticSpec& spec, std::size_t dim,
                       const CheckConfig& cfg) {
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
    if (auto fixed = spec.dimension(); fixed && *fixed != dim)
        throw std::invalid_argument(
            "dimension does not match the statistic's fixed dimension");

    const double lo = cfg.box_lo, hi = cfg.box_hi;
    const double span = std::max(std::abs(lo), std::abs(hi));
    const double range = hi - lo;
    LiftReport out;

    {
        // Cash additivity of the lift reduces to R((X+b1)-(a+b)1) vs
        // R(X-a1): equal up to rounding whatever R is.
        Sampler rng(derive_seed(cfg.seed, 20));
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            ExtendedVector xhat(ScenarioVector(rng.entries(dim, lo, hi)),
                                rng.uniform(lo, hi));
            const double b = rng.uniform(-span, span);
            const double lhs = lift_eval(spec, extended_shift(xhat, b));
            const double rhs = lift_eval(spec, xhat) - b;
            const double violation = std::abs(lhs - rhs);
            t.offer(violation, [&] {
                return make_ce({{"X_body", body_of(xhat)}},
                               {{"X_cash", xhat.cash()}, {"b", b}}, lhs, rhs,
                               violation);
            });
        }
        out.cash_additivity = finalize("A1-lift", t, 1e-12, cfg.trials, cfg.seed);
    }
    {
        Sampler rng(derive_seed(cfg.seed, 21));
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            std::vector<double> ye = rng.entries(dim, lo, hi);
            std::vector<double> xe(dim);
            for (std::size_t k = 0; k < dim; ++k)
                xe[k] = ye[k] + rng.uniform(0.0, range);
            const double cash_y = rng.uniform(lo, hi);
            const double cash_x = cash_y + rng.uniform(0.0, range);
            ExtendedVector xhat(ScenarioVector(xe), cash_x);
            ExtendedVector yhat(ScenarioVector(ye), cash_y);
            const double lhs = lift_eval(spec, xhat);
            const double rhs = lift_eval(spec, yhat);
            const double violation = lhs - rhs;
            t.offer(violation, [&] {
                return make_ce({{"X_body", xe}, {"Y_body", ye}},
                               {{"X_cash", cash_x}, {"Y_cash", cash_y}}, lhs,
                               rhs, violation);
            });
        }
        out.monotonicity =
            finalize("A2-lift", t, cfg.identity_tol, cfg.trials, cfg.seed);
    }
    {
        Sampler rng(derive_seed(cfg.seed, 22));
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            ExtendedVector xhat(ScenarioVector(rng.entries(dim, lo, hi)),
                                rng.uniform(lo, hi));
            ExtendedVector yhat(ScenarioVector(rng.entries(dim, lo, hi)),
                                rng.uniform(lo, hi));
            const double lambda = rng.uniform(0.0, 1.0);
            const double lhs =
                lift_eval(spec, convex_combination(lambda, xhat, yhat));
            const double rhs = lambda * lift_eval(spec, xhat) +
                               (1.0 - lambda) * lift_eval(spec, yhat);
            const double violation = lhs - rhs;
            t.offer(violation, [&] {
                return make_ce(
                    {{"X_body", body_of(xhat)}, {"Y_body", body_of(yhat)}},
                    {{"X_cash", xhat.cash()},
                     {"Y_cash", yhat.cash()},
                     {"lambda", lambda}},
                    lhs, rhs, violation);
            });
        }
        out.convexity =
            finalize("A3-lift", t, cfg.identity_tol, cfg.trials, cfg.seed);
    }
    {
        // Embedding at cash 0 must reproduce the base statistic bit for bit.
        Sampler rng(derive_seed(cfg.seed, 23));
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            std::vector<double> xe = rng.entries(dim, lo, hi);
            ScenarioVector x(xe);
            const double lhs = lift_eval(spec, embed(x));
            const double rhs = eval(spec, x);
            const double violation = lhs == rhs ? 0.0 : std::abs(lhs - rhs);
            t.offer(violation, [&] {
                return make_ce({{"X", xe}}, {}, lhs, rhs, violation);
            });
        }
        out.extension =
            finalize("extension-identity", t, 0.0, cfg.trials, cfg.seed);
    }
    return out;
}

}  // namespace riskstat
