#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "riskstat/axioms.hpp"
#include "riskstat/catalog.hpp"
#include "riskstat/types.hpp"

namespace riskstat {

/// Membership slack for the acceptance set {X : R(X) <= 0}.
inline constexpr double kAcceptanceTol = 1e-12;

/// Nonnegative weights with total mass at most one (up to a 1e-12 guard).
class SubProbabilityWeight {
  public:
    explicit SubProbabilityWeight(std::vector<double> weights);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> values() const { return weights_; }
    double total() const { return total_; }
    bool on_simplex(double tol = 1e-12) const;

    friend bool operator==(const SubProbabilityWeight& a,
                           const SubProbabilityWeight& b) {
        return a.weights_ == b.weights_;
    }

  private:
    std::vector<double> weights_;
    double total_ = 0.0;
};

/// Which weight set a grid discretizes: total mass <= 1, or exactly 1.
enum class WeightSet { sub_probability, simplex };
std::string_view weight_set_name(WeightSet set);

/// acceptance: sup of pairing - R over the acceptance set.
/// conjugate: the same sup without the acceptance constraint.
enum class PenaltyMode { acceptance, conjugate };
std::string_view penalty_mode_name(PenaltyMode mode);
PenaltyMode parse_penalty_mode(std::string_view name);

/// Risk-side pairing: sum of P_i times the loss -X_i. With this sign the
/// sup-representation is antitone in X and total mass at most one is exactly
/// what cash sub-additivity imposes on the dual side.
double pairing(const SubProbabilityWeight& p, const ScenarioVector& x);

bool acceptance_membership(const RiskStatisticSpec& spec,
                           const ScenarioVector& x);

/// All weight vectors with entries in {0, step, 2 step, ...} and total mass
/// <= 1 (sub_probability) or == 1 (simplex), in lexicographic order.
/// step must divide 1 within 1e-12. Dimension capped at 6.
std::vector<SubProbabilityWeight> weight_grid(std::size_t n, double step,
                                              WeightSet set);

struct SearchConfig {
    double box = 10.0;
    /// Points per axis of the coarse lattice; odd keeps 0 and both corners.
    int coarse_points = 41;
    int refine_rounds = 3;
    double refine_shrink = 0.1;
    int max_sweeps = 8;
    /// Concave line searches after lattice refinement; needed to push
    /// penalty values to the 1e-9 scale the duality checks run at.
    bool polish = true;
};

struct PenaltyValue {
    double value = 0.0;
    /// The maximizer sat on the search-box boundary: value is only a lower
    /// bound for the true sup, which may be infinite.
    bool attained_on_boundary = false;
};

/// sup over the acceptance set of pairing(P, X) - R(X), searched on
/// [-box, box]^N. Throws if no feasible point is found at all.
PenaltyValue penalty_min(const RiskFn& fn, const SubProbabilityWeight& p,
                         const SearchConfig& cfg);
PenaltyValue penalty_min(const RiskStatisticSpec& spec,
                         const SubProbabilityWeight& p,
                         const SearchConfig& cfg);

/// Unconstrained convex-conjugate variant of the same sup.
PenaltyValue conjugate_unconstrained(const RiskFn& fn,
                                     const SubProbabilityWeight& p,
                                     const SearchConfig& cfg);
PenaltyValue conjugate_unconstrained(const RiskStatisticSpec& spec,
                                     const SubProbabilityWeight& p,
                                     const SearchConfig& cfg);

struct PenaltyEntry {
    SubProbabilityWeight weight;
    double value = 0.0;
    bool attained_on_boundary = false;
};

struct PenaltySurface {
    std::vector<PenaltyEntry> grid;  // in weight_grid order
    double grid_step = 0.0;
    double search_box = 0.0;
    PenaltyMode mode = PenaltyMode::acceptance;
    WeightSet weight_set = WeightSet::sub_probability;
    std::size_t dimension = 0;
};

/// Penalty at every grid point; points are independent and distributed
/// across threads, merged in grid order so output ignores scheduling.
PenaltySurface penalty_surface(const RiskStatisticSpec& spec, std::size_t dim,
                               double grid_step, const SearchConfig& cfg,
                               PenaltyMode mode, WeightSet set);

/// max over grid points of pairing(P, X) - value(P); boundary-flagged
/// entries participate with their lower-bound value; ties resolve to the
/// lexicographically smallest P (first winner in grid order).
double reconstruct(const PenaltySurface& surface, const ScenarioVector& x);

struct ReconstructDetail {
    double value = 0.0;
    std::size_t argmax_index = 0;
};
ReconstructDetail reconstruct_detail(const PenaltySurface& surface,
                                     const ScenarioVector& x);

struct ProbeConfig {
    std::size_t count = 100;
    double box = 3.0;
    std::uint64_t seed = 0;
};

struct GapRow {
    std::vector<double> probe;
    double exact = 0.0;
    double acceptance_value = 0.0;
    double acceptance_gap = 0.0;
    double conjugate_value = 0.0;
    double conjugate_gap = 0.0;
};

struct GapReport {
    PenaltySurface acceptance_surface;
    PenaltySurface conjugate_surface;
    std::vector<GapRow> rows;
    double max_acceptance_gap = 0.0;
    double max_conjugate_gap = 0.0;
};

/// Reconstruction error at random (or supplied) probes under both penalty
/// modes on the sub-probability grid.
GapReport duality_gap_report(const RiskStatisticSpec& spec, std::size_t dim,
                             double grid_step, const SearchConfig& cfg,
                             const ProbeConfig& probes);
GapReport duality_gap_report(const RiskStatisticSpec& spec, std::size_t dim,
                             double grid_step, const SearchConfig& cfg,
                             const std::vector<ScenarioVector>& probes);

/// Certified feasible points: every stored point satisfies R(X) <= 1e-12.
class AcceptanceSample {
  public:
    explicit AcceptanceSample(RiskStatisticSpec spec);

    const RiskStatisticSpec& spec() const { return spec_; }
    const std::vector<ScenarioVector>& points() const { return points_; }
    void add(const ScenarioVector& x);

  private:
    RiskStatisticSpec spec_;
    std::vector<ScenarioVector> points_;
};

/// Rejection-samples feasible points from [-box, box]^N.
AcceptanceSample sample_acceptance(const RiskStatisticSpec& spec,
                                   std::size_t dim, std::size_t count,
                                   double box, std::uint64_t seed);

}  // namespace riskstat
