#include "riskstat/duality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

#include "detail.hpp"

namespace riskstat {

using detail::derive_seed;
using detail::Sampler;

namespace {

constexpr double kMassGuard = 1e-12;
constexpr double kBoundaryRel = 1e-7;
constexpr int kPolishPasses = 3;
constexpr int kBisectIters = 60;
constexpr int kGoldenIters = 160;

double infnorm(const std::vector<double>& x) {
    double n = 0.0;
    for (double e : x) n = std::max(n, std::abs(e));
    return n;
}

double pairing_raw(std::span<const double> p, std::span<const double> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * (-x[i]);
    return acc;
}

}  // namespace

SubProbabilityWeight::SubProbabilityWeight(std::vector<double> weights)
    : weights_(std::move(weights)) {
    if (weights_.empty())
        throw std::invalid_argument("weight vector must be nonempty");
    for (double w : weights_) {
        if (!std::isfinite(w) || w < 0.0)
            throw std::invalid_argument(
                "weights must be finite and nonnegative");
        total_ += w;
    }
    if (total_ > 1.0 + kMassGuard)
        throw std::invalid_argument("weight mass exceeds one");
}

bool SubProbabilityWeight::on_simplex(double tol) const {
    return std::abs(total_ - 1.0) <= tol;
}

std::string_view weight_set_name(WeightSet set) {
    switch (set) {
        case WeightSet::sub_probability: return "sub_probability";
        case WeightSet::simplex: return "simplex";
    }
    throw std::invalid_argument("unknown weight set");
}

std::string_view penalty_mode_name(PenaltyMode mode) {
    switch (mode) {
        case PenaltyMode::acceptance: return "acceptance";
        case PenaltyMode::conjugate: return "conjugate";
    }
    throw std::invalid_argument("unknown penalty mode");
}

PenaltyMode parse_penalty_mode(std::string_view name) {
    if (name == "acceptance") return PenaltyMode::acceptance;
    if (name == "conjugate") return PenaltyMode::conjugate;
    throw std::invalid_argument("unknown penalty mode: " + std::string(name));
}

double pairing(const SubProbabilityWeight& p, const ScenarioVector& x) {
    if (p.size() != x.size())
        throw std::invalid_argument("weight and scenario dimensions differ");
    return pairing_raw(p.values(), x.values());
}

bool acceptance_membership(const RiskStatisticSpec& spec,
                           const ScenarioVector& x) {
    return eval(spec, x) <= kAcceptanceTol;
}

std::vector<SubProbabilityWeight> weight_grid(std::size_t n, double step,
                                              WeightSet set) {
    if (n == 0) throw std::invalid_argument("dimension must be positive");
    if (n > 6)
        throw std::invalid_argument(
            "weight grids are capped at dimension 6 (combinatorial growth)");
    if (!std::isfinite(step) || step <= 0.0 || step > 1.0)
        throw std::invalid_argument("grid step must lie in (0, 1]");
    const long long k_total = std::llround(1.0 / step);
    if (k_total < 1 || std::abs(static_cast<double>(k_total) * step - 1.0) > 1e-12)
        throw std::invalid_argument("grid step must divide one");

    std::vector<SubProbabilityWeight> out;
    std::vector<long long> counts(n, 0);
    // Lexicographic: the first coordinate varies slowest.
    auto emit = [&](auto&& self, std::size_t i, long long remaining) -> void {
        if (i == n) {
            if (set == WeightSet::simplex && remaining != 0) return;
            std::vector<double> w(n);
            for (std::size_t j = 0; j < n; ++j)
                w[j] = static_cast<double>(counts[j]) /
                       static_cast<double>(k_total);
            out.emplace_back(std::move(w));
            return;
        }
        for (long long k = 0; k <= remaining; ++k) {
            counts[i] = k;
            self(self, i + 1, remaining - k);
        }
        counts[i] = 0;
    };
    emit(emit, 0, k_total);
    return out;
}

namespace {

void validate_search(const SearchConfig& cfg) {
    if (!std::isfinite(cfg.box) || cfg.box <= 0.0)
        throw std::invalid_argument("search box must be positive");
    if (cfg.coarse_points < 2)
        throw std::invalid_argument("coarse lattice needs at least 2 points");
    if (cfg.refine_rounds < 0)
        throw std::invalid_argument("refinement rounds must be nonnegative");
    if (!(cfg.refine_shrink > 0.0 && cfg.refine_shrink < 1.0))
        throw std::invalid_argument("refinement shrink must lie in (0, 1)");
    if (cfg.max_sweeps < 1)
        throw std::invalid_argument("sweep budget must be at least 1");
}

// Maximizes pairing(P, X) - fn(X) on [-B, B]^N, optionally inside the
// acceptance region fn <= kAcceptanceTol. Deterministic; ties prefer the
// smallest sup-norm maximizer, then lexicographic order.
class BoxSearch {
  public:
    BoxSearch(const RiskFn& fn, const SubProbabilityWeight& p,
              const SearchConfig& cfg, bool constrained)
        : fn_(fn), p_(p), cfg_(cfg), constrained_(constrained),
          dim_(p.size()) {
        validate_search(cfg);
        double lattice = std::pow(static_cast<double>(cfg.coarse_points),
                                  static_cast<double>(dim_));
        if (lattice > 5e7)
            throw std::invalid_argument(
                "coarse lattice too large; lower coarse_points or dimension");
    }

    PenaltyValue run() {
        coarse_scan();
        if (!has_best_)
            throw std::runtime_error(
                "no acceptance point found on the search lattice");
        refine();
        if (cfg_.polish) polish();
        PenaltyValue out;
        out.value = best_value_;
        out.attained_on_boundary = on_boundary(best_x_);
        return out;
    }

  private:
    struct Eval {
        double objective;
        bool feasible;
    };

    Eval evaluate(const std::vector<double>& x) const {
        const double r = fn_(ScenarioVector(x));
        return {pairing_raw(p_.values(), x) - r,
                !constrained_ || r <= kAcceptanceTol};
    }

    bool on_boundary(const std::vector<double>& x) const {
        const double edge = cfg_.box * (1.0 - kBoundaryRel);
        return std::any_of(x.begin(), x.end(),
                           [&](double e) { return std::abs(e) >= edge; });
    }

    // Strictly better, or equal value at a more central / lex-smaller point.
    bool better(double v, const std::vector<double>& x) const {
        if (!has_best_) return true;
        if (v != best_value_) return v > best_value_;
        const double nx = infnorm(x), nb = infnorm(best_x_);
        if (nx != nb) return nx < nb;
        return x < best_x_;
    }

    void offer(double v, const std::vector<double>& x) {
        if (better(v, x)) {
            best_value_ = v;
            best_x_ = x;
            has_best_ = true;
        }
    }

    void coarse_scan() {
        const int m = cfg_.coarse_points;
        const double b = cfg_.box;
        const double spacing = 2.0 * b / static_cast<double>(m - 1);
        std::vector<int> idx(dim_, 0);
        std::vector<double> x(dim_, -b);
        for (;;) {
            for (std::size_t i = 0; i < dim_; ++i)
                x[i] = -b + spacing * static_cast<double>(idx[i]);
            const Eval e = evaluate(x);
            if (e.feasible) offer(e.objective, x);
            std::size_t i = dim_;
            while (i > 0) {
                --i;
                if (++idx[i] < m) break;
                idx[i] = 0;
                if (i == 0) return;
            }
        }
    }

    void refine() {
        const double spacing =
            2.0 * cfg_.box / static_cast<double>(cfg_.coarse_points - 1);
        const long long reach =
            std::max<long long>(2, std::llround(1.0 / cfg_.refine_shrink));
        double h = spacing;
        for (int round = 1; round <= cfg_.refine_rounds; ++round) {
            h *= cfg_.refine_shrink;
            for (int sweep = 0; sweep < cfg_.max_sweeps; ++sweep) {
                bool moved = false;
                for (std::size_t i = 0; i < dim_; ++i) {
                    std::vector<double> x = best_x_;
                    for (long long k = -reach; k <= reach; ++k) {
                        if (k == 0) continue;
                        x[i] = std::clamp(best_x_[i] + static_cast<double>(k) * h,
                                          -cfg_.box, cfg_.box);
                        const Eval e = evaluate(x);
                        if (e.feasible && better(e.objective, x)) {
                            offer(e.objective, x);
                            moved = true;
                        }
                    }
                }
                if (!moved) break;
            }
        }
    }

    std::vector<std::vector<double>> directions() const {
        std::vector<std::vector<double>> dirs;
        for (std::size_t i = 0; i < dim_; ++i) {
            std::vector<double> d(dim_, 0.0);
            d[i] = 1.0;
            dirs.push_back(std::move(d));
        }
        dirs.emplace_back(dim_, 1.0);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j) {
                std::vector<double> d(dim_, 0.0);
                d[i] = 1.0;
                d[j] = 1.0;
                dirs.push_back(d);
                d[j] = -1.0;
                dirs.push_back(std::move(d));
            }
        return dirs;
    }

    std::vector<double> at(const std::vector<double>& d, double t) const {
        std::vector<double> x(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            x[i] = std::clamp(best_x_[i] + t * d[i], -cfg_.box, cfg_.box);
        return x;
    }

    // Largest feasible |t| toward t_edge, given t=0 feasible. The feasible
    // set on a line is an interval for convex statistics; for anything else
    // this is a conservative probe since moves are re-verified on accept.
    double feasible_reach(const std::vector<double>& d, double t_edge) const {
        if (!constrained_) return t_edge;
        if (evaluate(at(d, t_edge)).feasible) return t_edge;
        double ok = 0.0, bad = t_edge;
        for (int it = 0; it < kBisectIters; ++it) {
            const double mid = 0.5 * (ok + bad);
            (evaluate(at(d, mid)).feasible ? ok : bad) = mid;
        }
        return ok;
    }

    void polish() {
        const auto dirs = directions();
        for (int pass = 0; pass < kPolishPasses; ++pass) {
            for (const auto& d : dirs) {
                double t_lo = -std::numeric_limits<double>::infinity();
                double t_hi = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < dim_; ++i) {
                    if (d[i] == 0.0) continue;
                    const double a = (-cfg_.box - best_x_[i]) / d[i];
                    const double b = (cfg_.box - best_x_[i]) / d[i];
                    t_lo = std::max(t_lo, std::min(a, b));
                    t_hi = std::min(t_hi, std::max(a, b));
                }
                if (!(t_lo <= 0.0 && 0.0 <= t_hi)) continue;
                t_hi = feasible_reach(d, t_hi);
                t_lo = feasible_reach(d, t_lo);
                if (t_hi - t_lo < 1e-14) continue;
                golden(d, t_lo, t_hi);
            }
        }
    }

    void golden(const std::vector<double>& d, double lo, double hi) {
        constexpr double phi = 0.6180339887498949;
        auto g = [&](double t) {
            const Eval e = evaluate(at(d, t));
            return e.feasible ? e.objective
                              : -std::numeric_limits<double>::infinity();
        };
        double a = lo, b = hi;
        double c = b - phi * (b - a);
        double e = a + phi * (b - a);
        double fc = g(c), fe = g(e);
        for (int it = 0; it < kGoldenIters &&
                         (b - a) > 1e-12 * (1.0 + std::abs(a) + std::abs(b));
             ++it) {
            if (fc < fe) {
                a = c;
                c = e;
                fc = fe;
                e = a + phi * (b - a);
                fe = g(e);
            } else {
                b = e;
                e = c;
                fe = fc;
                c = b - phi * (b - a);
                fc = g(c);
            }
        }
        const double t = fc >= fe ? c : e;
        const std::vector<double> x = at(d, t);
        const Eval ev = evaluate(x);
        // Strict improvement only: flat directions must not drift the point.
        if (ev.feasible && ev.objective > best_value_) offer(ev.objective, x);
    }

    const RiskFn& fn_;
    const SubProbabilityWeight& p_;
    SearchConfig cfg_;
    bool constrained_;
    std::size_t dim_;
    double best_value_ = -std::numeric_limits<double>::infinity();
    std::vector<double> best_x_;
    bool has_best_ = false;
};

void check_spec_dim(const RiskStatisticSpec& spec, std::size_t dim) {
    if (auto fixed = spec.dimension(); fixed && *fixed != dim)
        throw std::invalid_argument(
            "weight dimension does not match the statistic's dimension");
}

}  // namespace

PenaltyValue penalty_min(const RiskFn& fn, const SubProbabilityWeight& p,
                         const SearchConfig& cfg) {
    return BoxSearch(fn, p, cfg, true).run();
}

PenaltyValue penalty_min(const RiskStatisticSpec& spec,
                         const SubProbabilityWeight& p,
                         const SearchConfig& cfg) {
    check_spec_dim(spec, p.size());
    return penalty_min(risk_fn(spec), p, cfg);
}

PenaltyValue conjugate_unconstrained(const RiskFn& fn,
                                     const SubProbabilityWeight& p,
                                     const SearchConfig& cfg) {
    return BoxSearch(fn, p, cfg, false).run();
}

PenaltyValue conjugate_unconstrained(const RiskStatisticSpec& spec,
                                     const SubProbabilityWeight& p,
                                     const SearchConfig& cfg) {
    check_spec_dim(spec, p.size());
    return conjugate_unconstrained(risk_fn(spec), p, cfg);
}

PenaltySurface penalty_surface(const RiskStatisticSpec& spec, std::size_t dim,
                               double grid_step, const SearchConfig& cfg,
                               PenaltyMode mode, WeightSet set) {
    check_spec_dim(spec, dim);
    validate_search(cfg);
    std::vector<SubProbabilityWeight> grid = weight_grid(dim, grid_step, set);

    PenaltySurface surface;
    surface.grid_step = grid_step;
    surface.search_box = cfg.box;
    surface.mode = mode;
    surface.weight_set = set;
    surface.dimension = dim;
    surface.grid.reserve(grid.size());
    for (auto& w : grid) surface.grid.push_back({std::move(w), 0.0, false});

    const RiskFn fn = risk_fn(spec);
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(surface.grid.size());
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= surface.grid.size()) return;
            try {
                PenaltyEntry& entry = surface.grid[i];
                const PenaltyValue v =
                    mode == PenaltyMode::acceptance
                        ? penalty_min(fn, entry.weight, cfg)
                        : conjugate_unconstrained(fn, entry.weight, cfg);
                entry.value = v.value;
                entry.attained_on_boundary = v.attained_on_boundary;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::size_t n_workers =
        std::min<std::size_t>(hw, surface.grid.size());
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw std::runtime_error("penalty surface failed at grid point " +
                                     std::to_string(i) + ": " + errors[i]);
    return surface;
}

ReconstructDetail reconstruct_detail(const PenaltySurface& surface,
                                     const ScenarioVector& x) {
    if (surface.grid.empty())
        throw std::invalid_argument("penalty surface has no grid points");
    ReconstructDetail out;
    out.value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < surface.grid.size(); ++i) {
        const PenaltyEntry& e = surface.grid[i];
        const double v = pairing(e.weight, x) - e.value;
        if (v > out.value) {  // first winner keeps the lex-smallest P
            out.value = v;
            out.argmax_index = i;
        }
    }
    return out;
}

double reconstruct(const PenaltySurface& surface, const ScenarioVector& x) {
    return reconstruct_detail(surface, x).value;
}

namespace {

GapReport gap_report_impl(const RiskStatisticSpec& spec, std::size_t dim,
                          double grid_step, const SearchConfig& cfg,
                          const std::vector<ScenarioVector>& probes) {
    GapReport report;
    report.acceptance_surface =
        penalty_surface(spec, dim, grid_step, cfg, PenaltyMode::acceptance,
                        WeightSet::sub_probability);
    report.conjugate_surface =
        penalty_surface(spec, dim, grid_step, cfg, PenaltyMode::conjugate,
                        WeightSet::sub_probability);
    report.rows.reserve(probes.size());
    for (const ScenarioVector& x : probes) {
        GapRow row;
        row.probe.assign(x.values().begin(), x.values().end());
        row.exact = eval(spec, x);
        row.acceptance_value = reconstruct(report.acceptance_surface, x);
        row.acceptance_gap = std::abs(row.acceptance_value - row.exact);
        row.conjugate_value = reconstruct(report.conjugate_surface, x);
        row.conjugate_gap = std::abs(row.conjugate_value - row.exact);
        report.max_acceptance_gap =
            std::max(report.max_acceptance_gap, row.acceptance_gap);
        report.max_conjugate_gap =
            std::max(report.max_conjugate_gap, row.conjugate_gap);
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace

GapReport duality_gap_report(const RiskStatisticSpec& spec, std::size_t dim,
                             double grid_step, const SearchConfig& cfg,
                             const ProbeConfig& probes) {
    if (probes.count == 0)
        throw std::invalid_argument("probe count must be positive");
    if (!std::isfinite(probes.box) || probes.box <= 0.0)
        throw std::invalid_argument("probe box must be positive");
    Sampler rng(derive_seed(probes.seed, 30));
    std::vector<ScenarioVector> xs;
    xs.reserve(probes.count);
    for (std::size_t i = 0; i < probes.count; ++i)
        xs.emplace_back(rng.entries(dim, -probes.box, probes.box));
    return gap_report_impl(spec, dim, grid_step, cfg, xs);
}

GapReport duality_gap_report(const RiskStatisticSpec& spec, std::size_t dim,
                             double grid_step, const SearchConfig& cfg,
                             const std::vector<ScenarioVector>& probes) {
    if (probes.empty())
        throw std::invalid_argument("probe list must be nonempty");
    return gap_report_impl(spec, dim, grid_step, cfg, probes);
}

AcceptanceSample::AcceptanceSample(RiskStatisticSpec spec)
    : spec_(std::move(spec)) {}

void AcceptanceSample::add(const ScenarioVector& x) {
    if (!acceptance_membership(spec_, x))
        throw std::invalid_argument(
            "point is not acceptable: statistic exceeds zero");
    points_.push_back(x);
}

AcceptanceSample sample_acceptance(const RiskStatisticSpec& spec,
                                   std::size_t dim, std::size_t count,
                                   double box, std::uint64_t seed) {
    check_spec_dim(spec, dim);
    if (!std::isfinite(box) || box <= 0.0)
        throw std::invalid_argument("sampling box must be positive");
    AcceptanceSample sample(spec);
    Sampler rng(derive_seed(seed, 31));
    const std::size_t max_attempts = std::max<std::size_t>(1000, count * 1000);
    std::size_t attempts = 0;
    while (sample.points().size() < count && attempts < max_attempts) {
        ++attempts;
        ScenarioVector x(rng.entries(dim, -box, box));
        if (acceptance_membership(spec, x)) sample.add(x);
    }
    if (sample.points().size() < count)
        throw std::runtime_error(
            "acceptance sampling exhausted its attempt budget");
    return sample;
}

}  // namespace riskstat
