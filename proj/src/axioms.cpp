#include "riskstat/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "detail.hpp"

namespace riskstat {

using detail::derive_seed;
using detail::finalize;
using detail::make_ce;
using detail::Sampler;
using detail::Tracker;

namespace {

void require_dim(std::size_t dim) {
    if (dim == 0) throw std::invalid_argument("dimension must be positive");
}

double shift_span(const CheckConfig& cfg) {
    return std::max(std::abs(cfg.box_lo), std::abs(cfg.box_hi));
}

}  // namespace

RiskFn risk_fn(const RiskStatisticSpec& spec) {
    return [spec](const ScenarioVector& x) { return eval(spec, x); };
}

AxiomReport check_cash_additivity(const RiskFn& fn, std::size_t dim,
                                  const CheckConfig& cfg) {
    require_dim(dim);
    Sampler rng(derive_seed(cfg.seed, 1));
    const double span = shift_span(cfg);
    Tracker t;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        ScenarioVector x(rng.entries(dim, cfg.box_lo, cfg.box_hi));
        const double b = rng.uniform(-span, span);
        const double lhs = fn(add_cash(x, CashShift(b)));
        const double rhs = fn(x) - b;
        const double violation = std::abs(lhs - rhs);
        t.offer(violation, [&] {
            return make_ce({{"X", std::vector<double>(x.values().begin(),
                                                      x.values().end())}},
                           {{"b", b}}, lhs, rhs, violation);
        });
    }
    return finalize("A1", t, cfg.identity_tol, cfg.trials, cfg.seed);
}

AxiomReport check_monotonicity(const RiskFn& fn, std::size_t dim,
                               const CheckConfig& cfg) {
    require_dim(dim);
    Sampler rng(derive_seed(cfg.seed, 2));
    const double range = cfg.box_hi - cfg.box_lo;
    Tracker t;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        std::vector<double> ye = rng.entries(dim, cfg.box_lo, cfg.box_hi);
        std::vector<double> xe(dim);
        for (std::size_t k = 0; k < dim; ++k)
            xe[k] = ye[k] + rng.uniform(0.0, range);
        ScenarioVector y(ye), x(xe);
        const double lhs = fn(x);  // X >= Y, so R(X) must not exceed R(Y)
        const double rhs = fn(y);
        const double violation = lhs - rhs;
        t.offer(violation, [&] {
            return make_ce({{"X", xe}, {"Y", ye}}, {}, lhs, rhs, violation);
        });
    }
    return finalize("A2", t, cfg.inequality_slack, cfg.trials, cfg.seed);
}

namespace {

AxiomReport check_convexity_impl(const RiskFn& fn, std::size_t dim,
                                 const CheckConfig& cfg, std::string axiom,
                                 std::uint64_t stream) {
    require_dim(dim);
    Sampler rng(derive_seed(cfg.seed, stream));
    Tracker t;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        std::vector<double> xe = rng.entries(dim, cfg.box_lo, cfg.box_hi);
        std::vector<double> ye = rng.entries(dim, cfg.box_lo, cfg.box_hi);
        const double lambda = rng.uniform(0.0, 1.0);
        ScenarioVector x(xe), y(ye);
        const double lhs = fn(convex_combination(lambda, x, y));
        const double rhs = lambda * fn(x) + (1.0 - lambda) * fn(y);
        const double violation = lhs - rhs;
        t.offer(violation, [&] {
            return make_ce({{"X", xe}, {"Y", ye}}, {{"lambda", lambda}}, lhs,
                           rhs, violation);
        });
    }
    return finalize(std::move(axiom), t, cfg.inequality_slack, cfg.trials,
                    cfg.seed);
}

}  // namespace

AxiomReport check_convexity(const RiskFn& fn, std::size_t dim,
                            const CheckConfig& cfg) {
    return check_convexity_impl(fn, dim, cfg, "A3", 3);
}

CashSubadditivityReport check_cash_subadditivity(const RiskFn& fn,
                                                 std::size_t dim,
                                                 const CheckConfig& cfg) {
    require_dim(dim);
    const double span = shift_span(cfg);
    CashSubadditivityReport out;

    {
        Sampler rng(derive_seed(cfg.seed, 4));
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            std::vector<double> xe = rng.entries(dim, cfg.box_lo, cfg.box_hi);
            double z1 = rng.uniform(0.0, span);
            double z2 = rng.uniform(0.0, span);
            if (z2 < z1) std::swap(z1, z2);
            ScenarioVector x(xe);
            const double lhs = fn(add_cash(x, CashShift(z1))) + z1;
            const double rhs = fn(add_cash(x, CashShift(z2))) + z2;
            const double violation = lhs - rhs;  // map z -> R(X+z1)+z must not decrease
            t.offer(violation, [&] {
                return make_ce({{"X", xe}}, {{"z1", z1}, {"z2", z2}}, lhs, rhs,
                               violation);
            });
        }
        out.pair = finalize("A5", t, cfg.inequality_slack, cfg.trials, cfg.seed);
    }
    {
        Sampler rng(derive_seed(cfg.seed, 5));
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            std::vector<double> xe = rng.entries(dim, cfg.box_lo, cfg.box_hi);
            const double z = rng.uniform(0.0, span);
            ScenarioVector x(xe);
            const double lhs = fn(add_cash(x, CashShift(z)));
            const double rhs = fn(x) - z;  // adding cash cannot cut risk by more
            const double violation = rhs - lhs;
            t.offer(violation, [&] {
                return make_ce({{"X", xe}}, {{"z", z}}, lhs, rhs, violation);
            });
        }
        out.left =
            finalize("A5-left", t, cfg.inequality_slack, cfg.trials, cfg.seed);
    }
    {
        Sampler rng(derive_seed(cfg.seed, 6));
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            std::vector<double> xe = rng.entries(dim, cfg.box_lo, cfg.box_hi);
            const double z = rng.uniform(0.0, span);
            ScenarioVector x(xe);
            const double lhs = fn(add_cash(x, CashShift(-z)));
            const double rhs = fn(x) + z;  // removing cash cannot add more risk
            const double violation = lhs - rhs;
            t.offer(violation, [&] {
                return make_ce({{"X", xe}}, {{"z", z}}, lhs, rhs, violation);
            });
        }
        out.right =
            finalize("A5-right", t, cfg.inequality_slack, cfg.trials, cfg.seed);
    }

    out.verdicts_agree =
        out.pair.passed == (out.left.passed && out.right.passed);
    return out;
}

LossBasedReport check_loss_based(const RiskFn& fn, std::size_t dim,
                                 const CheckConfig& cfg) {
    require_dim(dim);
    LossBasedReport out;

    {
        Tracker t;
        std::uint64_t count = 0;
        for (double a = 0.0; a <= 10.0 + 1e-12; a += 0.5) {
            ScenarioVector m(std::vector<double>(dim, -a));
            const double lhs = fn(m);
            const double rhs = a;  // constant sure loss is reported at face value
            const double violation = std::abs(lhs - rhs);
            t.offer(violation, [&] {
                return make_ce({}, {{"a", a}}, lhs, rhs, violation);
            });
            ++count;
        }
        out.b1 = finalize("B1", t, cfg.identity_tol, count, cfg.seed);
    }
    {
        Sampler rng(derive_seed(cfg.seed, 7));
        const double range = cfg.box_hi - cfg.box_lo;
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            std::vector<double> m1 = rng.entries(dim, cfg.box_lo, cfg.box_hi);
            std::vector<double> m2(dim);
            for (std::size_t k = 0; k < dim; ++k)
                m2[k] = m1[k] + rng.uniform(0.0, range);
            const double lhs = fn(ScenarioVector(m1));  // M1 <= M2
            const double rhs = fn(ScenarioVector(m2));
            const double violation = rhs - lhs;  // smaller outcomes carry more risk
            t.offer(violation, [&] {
                return make_ce({{"M1", m1}, {"M2", m2}}, {}, lhs, rhs,
                               violation);
            });
        }
        out.b2 =
            finalize("B2", t, cfg.inequality_slack, cfg.trials, cfg.seed);
    }
    {
        Sampler rng(derive_seed(cfg.seed, 8));
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            std::vector<double> me = rng.entries(dim, cfg.box_lo, cfg.box_hi);
            ScenarioVector m(me);
            const double lhs = fn(m);
            const double rhs = fn(clip_losses(m));  // gains are ignored
            const double violation = std::abs(lhs - rhs);
            t.offer(violation, [&] {
                return make_ce({{"M", me}}, {}, lhs, rhs, violation);
            });
        }
        out.b3 = finalize("B3", t, cfg.identity_tol, cfg.trials, cfg.seed);
    }
    out.b4 = check_convexity_impl(fn, dim, cfg, "B4", 9);
    {
        Sampler rng(derive_seed(cfg.seed, 10));
        const double span = shift_span(cfg);
        constexpr double kEps[] = {0.5, 0.1, 0.01, 0.001};
        Tracker t;
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            std::vector<double> xe = rng.entries(dim, cfg.box_lo, cfg.box_hi);
            const double z = rng.uniform(0.0, span);
            ScenarioVector x(xe);
            const double rx = fn(x);
            for (double eps : kEps) {
                std::vector<double> se(dim);
                for (std::size_t k = 0; k < dim; ++k)
                    se[k] = (1.0 - eps) * xe[k] - z;
                const double lhs = fn(ScenarioVector(se));
                const double rhs = (1.0 - eps) * rx + z;
                const double violation = lhs - rhs;
                t.offer(violation, [&] {
                    return make_ce({{"X", xe}}, {{"z", z}, {"epsilon", eps}},
                                   lhs, rhs, violation);
                });
            }
            // eps -> 0 limit, checked directly.
            const double lhs = fn(add_cash(x, CashShift(-z)));
            const double rhs = rx + z;
            const double violation = lhs - rhs;
            t.offer(violation, [&] {
                return make_ce({{"X", xe}}, {{"z", z}, {"epsilon", 0.0}}, lhs,
                               rhs, violation);
            });
        }
        out.implies_csa =
            finalize("LB=>CSA", t, cfg.inequality_slack, cfg.trials, cfg.seed);
    }
    return out;
}

AxiomReport check_continuity_proxy(const RiskFn& fn, std::size_t dim,
                                   const CheckConfig& cfg) {
    require_dim(dim);
    Sampler rng(derive_seed(cfg.seed, 11));
    const double range = cfg.box_hi - cfg.box_lo;
    const double delta_coarse = 1e-2 * range;
    const double delta_fine = 1e-5 * range;

    double max_coarse = 0.0;
    double max_fine = 0.0;
    std::vector<double> worst_x, worst_u;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
        std::vector<double> xe = rng.entries(dim, cfg.box_lo, cfg.box_hi);
        std::vector<double> u(dim);
        double norm = 0.0;
        for (auto& e : u) {
            e = rng.uniform(-1.0, 1.0);
            norm = std::max(norm, std::abs(e));
        }
        if (norm < 1e-6) u[0] = norm = 1.0;
        for (auto& e : u) e /= norm;

        const double base = fn(ScenarioVector(xe));
        auto quotient = [&](double delta) {
            std::vector<double> pe(dim);
            for (std::size_t k = 0; k < dim; ++k) pe[k] = xe[k] + delta * u[k];
            return std::abs(fn(ScenarioVector(pe)) - base) / delta;
        };
        max_coarse = std::max(max_coarse, quotient(delta_coarse));
        const double qf = quotient(delta_fine);
        if (qf > max_fine) {
            max_fine = qf;
            worst_x = xe;
            worst_u = u;
        }
    }

    // Heuristic: local steepness must stay comparable to the coarse scale.
    const double bound = 4.0 * max_coarse + 1.0;
    AxiomReport r;
    r.axiom = "A4-proxy";
    r.trials = cfg.trials;
    r.tolerance = 4.0;
    r.seed = cfg.seed;
    r.passed = max_fine <= bound;
    if (!r.passed) {
        r.counterexample = make_ce(
            {{"X", worst_x}, {"u", worst_u}},
            {{"delta_fine", delta_fine}, {"coarse_max", max_coarse}}, max_fine,
            bound, max_fine - bound);
    }
    return r;
}

namespace {

std::size_t resolve_dim(const RiskStatisticSpec& spec, std::size_t dim) {
    if (auto fixed = spec.dimension(); fixed && *fixed != dim)
        throw std::invalid_argument(
            "dimension does not match the statistic's fixed dimension");
    return dim;
}

}  // namespace

AxiomReport check_cash_additivity(const RiskStatisticSpec& spec,
                                  std::size_t dim, const CheckConfig& cfg) {
    return check_cash_additivity(risk_fn(spec), resolve_dim(spec, dim), cfg);
}

AxiomReport check_monotonicity(const RiskStatisticSpec& spec, std::size_t dim,
                               const CheckConfig& cfg) {
    return check_monotonicity(risk_fn(spec), resolve_dim(spec, dim), cfg);
}

AxiomReport check_convexity(const RiskStatisticSpec& spec, std::size_t dim,
                            const CheckConfig& cfg) {
    return check_convexity(risk_fn(spec), resolve_dim(spec, dim), cfg);
}

CashSubadditivityReport check_cash_subadditivity(const RiskStatisticSpec& spec,
                                                 std::size_t dim,
                                                 const CheckConfig& cfg) {
    return check_cash_subadditivity(risk_fn(spec), resolve_dim(spec, dim), cfg);
}

LossBasedReport check_loss_based(const RiskStatisticSpec& spec, std::size_t dim,
                                 const CheckConfig& cfg) {
    return check_loss_based(risk_fn(spec), resolve_dim(spec, dim), cfg);
}

AxiomReport check_continuity_proxy(const RiskStatisticSpec& spec,
                                   std::size_t dim, const CheckConfig& cfg) {
    return check_continuity_proxy(risk_fn(spec), resolve_dim(spec, dim), cfg);
}

CheckSuiteResult run_check_suite(const RiskStatisticSpec& spec, std::size_t dim,
                                 const CheckConfig& cfg) {
    const RiskFn fn = risk_fn(spec);
    const std::size_t d = resolve_dim(spec, dim);

    CheckSuiteResult out;
    out.reports.push_back(check_cash_additivity(fn, d, cfg));
    out.reports.push_back(check_monotonicity(fn, d, cfg));
    out.reports.push_back(check_convexity(fn, d, cfg));
    CashSubadditivityReport csa = check_cash_subadditivity(fn, d, cfg);
    out.m1_agreement = csa.verdicts_agree;
    out.reports.push_back(std::move(csa.pair));
    out.reports.push_back(std::move(csa.left));
    out.reports.push_back(std::move(csa.right));
    out.reports.push_back(check_continuity_proxy(fn, d, cfg));

    const auto& claims = spec.claimed_axioms();
    const bool wants_loss_based =
        spec.kind() == StatKind::loss_based ||
        std::any_of(claims.begin(), claims.end(), [](Axiom a) {
            return a == Axiom::B1 || a == Axiom::B2 || a == Axiom::B3 ||
                   a == Axiom::B4;
        });
    if (wants_loss_based) {
        LossBasedReport lb = check_loss_based(fn, d, cfg);
        out.reports.push_back(std::move(lb.b1));
        out.reports.push_back(std::move(lb.b2));
        out.reports.push_back(std::move(lb.b3));
        out.reports.push_back(std::move(lb.b4));
        out.reports.push_back(std::move(lb.implies_csa));
    }
    return out;
}

}  // namespace riskstat
