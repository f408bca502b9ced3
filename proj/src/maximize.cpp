#include <cmath>
#include <numbers>
#include <random>

#include "conflict_lab/conflict.hpp"
#include "conflict_lab/error.hpp"

namespace clab {

namespace {

constexpr double kSnapScale = 1 << 20;
constexpr double kInitialStep = 1.0;
constexpr double kMinStep = 1.0 / 32;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Box-Muller on raw generator output, so the stream is identical across
// standard library implementations.
double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

struct Candidate {
  std::vector<double> w0;  // over f^-1(0), in index order
  std::vector<double> w1;  // over f^-1(1)
};

std::map<std::uint32_t, Rational> snap(const std::vector<double>& w, const std::vector<std::uint32_t>& points) {
  double total = 0;
  for (double x : w) total += x;
  std::vector<long> ticks(w.size());
  long sum = 0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    ticks[j] = std::max(1L, std::lround(w[j] / total * kSnapScale));
    sum += ticks[j];
  }
  std::map<std::uint32_t, Rational> side;
  for (std::size_t j = 0; j < w.size(); ++j) side.emplace(points[j], make_rational(ticks[j], sum));
  return side;
}

class PairSearch {
 public:
  PairSearch(const TruthTable& t, const MaximizeOptions& options) : t_(t), options_(options) {
    for (std::uint32_t idx = 0; idx < t.size(); ++idx) (t.at(idx) ? ones_ : zeros_).push_back(idx);
  }

  ChiBound run() {
    witness_phase();
    random_phase();
    return best_;
  }

 private:
  void consider(ChiBound&& candidate) {
    if (!has_best_ || candidate.value > best_.value) {
      best_ = std::move(candidate);
      has_best_ = true;
    }
  }

  void witness_phase() {
    const int bs = block_sensitivity(t_).value;
    for (std::uint32_t idx = 0; idx < t_.size(); ++idx) {
      const Point x{idx, t_.arity()};
      if (block_sensitivity_at(t_, x).value != bs) continue;
      for (const auto& packing : maximum_packings(t_, x, options_.packings_per_point)) {
        ChiBound b = min_expected_conflict(t_, witness_pair(t_, packing));
        b.provenance = Provenance::kWitness;
        consider(std::move(b));
      }
    }
  }

  Rational evaluate(const Candidate& c, ChiBound* out) {
    DistributionPair pair;
    pair.arity = t_.arity();
    pair.mu0 = snap(c.w0, zeros_);
    pair.mu1 = snap(c.w1, ones_);
    ChiBound b = min_expected_conflict(t_, pair);
    b.provenance = Provenance::kHeuristic;
    Rational v = b.value;
    if (out) *out = std::move(b);
    return v;
  }

  // Restart 0 perturbs a mixture of the best witness pair with the uniform
  // pair; later restarts draw exponential (flat Dirichlet) weights.
  Candidate initial(std::mt19937_64& rng, int restart) const {
    Candidate c;
    c.w0.resize(zeros_.size());
    c.w1.resize(ones_.size());
    if (restart == 0) {
      auto mix = [](std::vector<double>& w, const std::vector<std::uint32_t>& pts,
                    const std::map<std::uint32_t, Rational>& side) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
          auto it = side.find(pts[j]);
          const double mass = it == side.end() ? 0.0 : it->second.get_d();
          w[j] = 0.9 * mass + 0.1 / static_cast<double>(pts.size());
        }
      };
      mix(c.w0, zeros_, best_.pair.mu0);
      mix(c.w1, ones_, best_.pair.mu1);
    } else {
      for (double& x : c.w0) x = -std::log(1.0 - uniform01(rng));
      for (double& x : c.w1) x = -std::log(1.0 - uniform01(rng));
    }
    return c;
  }

  void random_phase() {
    int remaining = options_.budget;
    const std::size_t coords = zeros_.size() + ones_.size();
    const int patience = static_cast<int>(std::clamp<std::size_t>(coords, 4, 16));
    for (int restart = 0; remaining > 0; ++restart) {
      std::seed_seq seq{static_cast<std::uint32_t>(options_.seed), static_cast<std::uint32_t>(options_.seed >> 32),
                        static_cast<std::uint32_t>(restart)};
      std::mt19937_64 rng(seq);
      Candidate current = initial(rng, restart);
      ChiBound evaluated;
      Rational current_value = evaluate(current, &evaluated);
      --remaining;
      consider(std::move(evaluated));

      double step = kInitialStep;
      int failures = 0;
      while (remaining > 0 && step >= kMinStep) {
        Candidate next = current;
        std::size_t j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(coords));
        if (j >= coords) j = coords - 1;
        double& w = j < next.w0.size() ? next.w0[j] : next.w1[j - next.w0.size()];
        w *= std::exp(step * standard_normal(rng));
        ChiBound b;
        const Rational value = evaluate(next, &b);
        --remaining;
        if (value > current_value) {
          current = std::move(next);
          current_value = value;
          failures = 0;
          consider(std::move(b));
        } else if (++failures >= patience) {
          step /= 2;
          failures = 0;
        }
      }
    }
  }

  const TruthTable& t_;
  MaximizeOptions options_;
  std::vector<std::uint32_t> zeros_;
  std::vector<std::uint32_t> ones_;
  ChiBound best_;
  bool has_best_ = false;
};

}  // namespace

ChiBound maximize_pairs(const TruthTable& t, const MaximizeOptions& options) {
  if (t.is_constant()) throw DomainError("function " + serialize(t) + " is constant; no distribution pair exists");
  if (t.arity() > kMaximizeMaxArity) {
    throw ArityError("maximize_pairs supports arity <= " + std::to_string(kMaximizeMaxArity));
  }
  if (options.budget < 0) throw DomainError("budget must be nonnegative");
  return PairSearch(t, options).run();
}

}  // namespace clab
