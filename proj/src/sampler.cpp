#include "mdm/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mdm/dirmult_chain.hpp"
#include "mdm/log_math.hpp"

namespace mdm {

SequentialSampler::SequentialSampler(MdmParams params, std::uint64_t seed)
    : params_(std::move(params)), rng_(seed) {
  const DispersionModel& model = params_.model;
  tails_ = model.is_multinomial_limit() ? alpha_tails(model.probs()) : alpha_tails(model.alpha());
}

double SequentialSampler::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

int SequentialSampler::draw_index(std::span<const double> log_weights) {
  const double peak = *std::max_element(log_weights.begin(), log_weights.end());
  double total = 0.0;
  scratch_.resize(log_weights.size());
  for (std::size_t k = 0; k < log_weights.size(); ++k) {
    scratch_[k] = std::exp(log_weights[k] - peak);
    total += scratch_[k];
  }
  double u = uniform() * total;
  for (std::size_t k = 0; k < scratch_.size(); ++k) {
    if (u < scratch_[k]) return static_cast<int>(k);
    u -= scratch_[k];
  }
  // Rounding left u past the last positive weight.
  for (std::size_t k = scratch_.size(); k-- > 0;)
    if (scratch_[k] > 0.0) return static_cast<int>(k);
  return 0;
}

int SequentialSampler::draw_beta_binomial(int trials, double alpha_a, double alpha_tail) {
  if (trials == 0) return 0;
  std::vector<double> lw(static_cast<std::size_t>(trials) + 1);
  for (int k = 0; k <= trials; ++k)
    lw[static_cast<std::size_t>(k)] = beta_binomial_step(k, 0, alpha_a, alpha_tail, trials).log();
  return draw_index(lw);
}

int SequentialSampler::draw_binomial(int trials, double success, double failure) {
  if (trials == 0) return 0;
  if (failure <= 0.0) return trials;
  const double total = success + failure;
  const double log_p = std::log(success / total);
  const double log_q = std::log(failure / total);
  std::vector<double> lw(static_cast<std::size_t>(trials) + 1);
  for (int k = 0; k <= trials; ++k)
    lw[static_cast<std::size_t>(k)] = log_binomial(trials, k) + k * log_p + (trials - k) * log_q;
  return draw_index(lw);
}

int SequentialSampler::draw_hypergeometric(int successes, int population, int draws) {
  const int lo = std::max(0, draws - (population - successes));
  const int hi = std::min(draws, successes);
  if (lo == hi) return lo;
  std::vector<double> lw;
  lw.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k)
    lw.push_back(log_binomial(successes, k) + log_binomial(population - successes, draws - k));
  return lo + draw_index(lw);
}

CountTable SequentialSampler::draw() {
  const std::size_t profiles = params_.profiles();
  const std::size_t cats = params_.categories();
  IntMatrix out(profiles, cats);
  std::vector<int> remaining = params_.row_sums;
  const DispersionModel& model = params_.model;

  if (model.is_multinomial_limit()) {
    const auto q = model.probs();
    for (std::size_t i = 0; i < profiles; ++i) {
      int left = remaining[i];
      for (std::size_t a = 0; a + 1 < cats; ++a) {
        const int k = draw_binomial(left, q[a], tails_[a + 1]);
        out(i, a) = k;
        left -= k;
      }
      out(i, cats - 1) = left;
    }
    return CountTable(std::move(out));
  }

  const auto alpha = model.alpha();
  for (std::size_t a = 0; a + 1 < cats; ++a) {
    int pool = 0;
    for (int r : remaining) pool += r;
    int left = draw_beta_binomial(pool, alpha[a], tails_[a + 1]);
    for (std::size_t i = 0; i < profiles && left > 0; ++i) {
      const int k = i + 1 == profiles ? left : draw_hypergeometric(remaining[i], pool, left);
      out(i, a) = k;
      remaining[i] -= k;
      pool -= remaining[i] + k;
      left -= k;
    }
  }
  for (std::size_t i = 0; i < profiles; ++i) out(i, cats - 1) = remaining[i];
  return CountTable(std::move(out));
}

CountTable sequential_sample(const MdmParams& params, std::uint64_t rng_seed) {
  SequentialSampler sampler(params, rng_seed);
  return sampler.draw();
}

}  // namespace mdm
