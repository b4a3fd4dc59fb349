#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "riskstat/axioms.hpp"

namespace riskstat::detail {

// splitmix64: decorrelates the per-check streams derived from one user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d649bb133111ebULL;
    return z ^ (z >> 31);
}

class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }

    std::vector<double> entries(std::size_t dim, double lo, double hi) {
        std::vector<double> v(dim);
        for (auto& e : v) e = uniform(lo, hi);
        return v;
    }

  private:
    std::mt19937_64 eng_;
};

// Keeps the single worst violation seen; exact ties resolve to the
// lexicographically smallest flattened input list so reruns are stable.
class Tracker {
  public:
    template <typename Make>
    void offer(double violation, Make&& make) {
        if (!has_ || violation > worst_) {
            worst_ = violation;
            best_ = make();
            has_ = true;
        } else if (violation == worst_) {
            Counterexample cand = make();
            if (flatten(cand) < flatten(best_)) best_ = std::move(cand);
        }
    }

    bool has() const { return has_; }
    double worst() const { return worst_; }
    const Counterexample& best() const { return best_; }

  private:
    static std::vector<double> flatten(const Counterexample& ce) {
        std::vector<double> flat;
        for (const auto& [name, vec] : ce.vectors)
            flat.insert(flat.end(), vec.begin(), vec.end());
        for (const auto& [name, val] : ce.scalars) flat.push_back(val);
        return flat;
    }

    double worst_ = -std::numeric_limits<double>::infinity();
    Counterexample best_;
    bool has_ = false;
};

inline AxiomReport finalize(std::string axiom, const Tracker& t, double tol,
                            std::uint64_t trials, std::uint64_t seed) {
    AxiomReport r;
    r.axiom = std::move(axiom);
    r.trials = trials;
    r.tolerance = tol;
    r.seed = seed;
    r.passed = !t.has() || t.worst() <= tol;
    if (!r.passed) r.counterexample = t.best();
    return r;
}

inline Counterexample make_ce(
    std::vector<std::pair<std::string, std::vector<double>>> vectors,
    std::vector<std::pair<std::string, double>> scalars, double lhs, double rhs,
    double violation) {
    Counterexample ce;
    ce.vectors = std::move(vectors);
    ce.scalars = std::move(scalars);
    ce.lhs = lhs;
    ce.rhs = rhs;
    ce.violation = violation;
    return ce;
}

}  // namespace riskstat::detail
