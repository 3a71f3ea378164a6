#include "mdm/dirmult_chain.hpp"

#include <cmath>
#include <string>

namespace mdm {

namespace {

void require_dirichlet(const DispersionModel& model, const char* op) {
  if (model.is_multinomial_limit()) {
    throw ParameterDomainError(std::string(op) +
                               ": theta = 0 has no Dirichlet parameters; use the binomial chain");
  }
}

void require_dimensions(std::size_t got, std::size_t expected) {
  if (got != expected) {
    throw ValidationError("dimension mismatch: " + std::to_string(got) + " counts for " +
                          std::to_string(expected) + " categories");
  }
}

}  // namespace

ProfileCounts::ProfileCounts(std::vector<int> counts) : counts_(std::move(counts)) {
  cum_.reserve(counts_.size() + 1);
  cum_.push_back(0);
  for (std::size_t a = 0; a < counts_.size(); ++a) {
    if (counts_[a] < 0) {
      throw ValidationError("negative allele count at position " + std::to_string(a));
    }
    cum_.push_back(cum_.back() + counts_[a]);
  }
  total_ = cum_.back();
}

std::vector<double> alpha_tails(std::span<const double> alpha) {
  std::vector<double> tails(alpha.size() + 1, 0.0);
  for (std::size_t a = alpha.size(); a-- > 0;) tails[a] = tails[a + 1] + alpha[a];
  return tails;
}

std::vector<double> scaled_chain_probs(std::span<const double> probs) {
  std::vector<double> tail(probs.size() + 1, 0.0);
  for (std::size_t a = probs.size(); a-- > 0;) tail[a] = tail[a + 1] + probs[a];
  std::vector<double> scaled(probs.size());
  for (std::size_t a = 0; a < probs.size(); ++a) scaled[a] = probs[a] / tail[a];
  if (!scaled.empty()) scaled.back() = 1.0;
  return scaled;
}

LogProb dm_log_pmf(const ProfileCounts& profile, const DispersionModel& model) {
  require_dirichlet(model, "dm_log_pmf");
  require_dimensions(profile.categories(), model.category_count());
  const auto alpha = model.alpha();
  const int n = profile.total();
  double lp = log_factorial(n) + log_gamma(model.alpha_total()) -
              log_gamma(n + model.alpha_total());
  for (std::size_t b = 0; b < alpha.size(); ++b) {
    const int nb = profile[b];
    if (nb == 0) continue;
    lp += log_gamma(nb + alpha[b]) - log_factorial(nb) - log_gamma(alpha[b]);
  }
  return LogProb(lp);
}

LogProb dm_collapsed_log_pmf(std::span<const int> prefix, int n_total,
                             const DispersionModel& model) {
  require_dirichlet(model, "dm_collapsed_log_pmf");
  const auto alpha = model.alpha();
  if (prefix.size() >= alpha.size()) {
    throw ValidationError("collapsed prefix must be shorter than the category count");
  }
  int s = 0;
  for (int c : prefix) {
    if (c < 0) throw ValidationError("negative count in collapsed prefix");
    s += c;
  }
  if (s > n_total) {
    throw ValidationError("prefix sum " + std::to_string(s) + " exceeds n_total " +
                          std::to_string(n_total));
  }
  const auto tails = alpha_tails(alpha);
  const double tail = tails[prefix.size()];
  const int rest = n_total - s;
  double lp = log_factorial(n_total) + log_gamma(model.alpha_total()) -
              log_gamma(n_total + model.alpha_total());
  lp += log_gamma(rest + tail) - log_factorial(rest) - log_gamma(tail);
  for (std::size_t b = 0; b < prefix.size(); ++b) {
    lp += log_gamma(prefix[b] + alpha[b]) - log_factorial(prefix[b]) - log_gamma(alpha[b]);
  }
  return LogProb(lp);
}

LogProb beta_binomial_step(int n_a, int s_prev, double alpha_a, double alpha_tail, int n_total) {
  const int trials = n_total - s_prev;
  if (trials < 0 || n_a < 0 || n_a > trials) {
    throw ValidationError("beta-binomial step: n_a = " + std::to_string(n_a) +
                          " outside [0, " + std::to_string(trials) + "]");
  }
  if (!(alpha_a > 0.0) || !(alpha_tail > 0.0)) {
    throw ParameterDomainError("beta-binomial step: shape parameters must be positive");
  }
  // C(m, k) B(k + a, m - k + b) / B(a, b) written with rising factorials.
  const double lp = log_binomial(trials, n_a) + log_rising(alpha_a, n_a) +
                    log_rising(alpha_tail, trials - n_a) -
                    log_rising(alpha_a + alpha_tail, trials);
  return LogProb(lp);
}

LogProb chain_log_pmf(const ProfileCounts& profile, const DispersionModel& model) {
  require_dirichlet(model, "chain_log_pmf");
  require_dimensions(profile.categories(), model.category_count());
  const auto alpha = model.alpha();
  const auto tails = alpha_tails(alpha);
  const int n = profile.total();
  LogProb lp = LogProb::certain();
  for (std::size_t a = 0; a + 1 < alpha.size(); ++a) {
    lp *= beta_binomial_step(profile[a], profile.cumulative(a), alpha[a], tails[a + 1], n);
  }
  return lp;
}

LogProb binomial_chain_log_pmf(const ProfileCounts& profile, std::span<const double> probs) {
  require_dimensions(profile.categories(), probs.size());
  std::vector<double> tail(probs.size() + 1, 0.0);
  for (std::size_t a = probs.size(); a-- > 0;) tail[a] = tail[a + 1] + probs[a];
  const int n = profile.total();
  double lp = 0.0;
  for (std::size_t a = 0; a + 1 < probs.size(); ++a) {
    const int trials = n - profile.cumulative(a);
    const int k = profile[a];
    // Q_a and 1 - Q_a both as ratios of tail masses.
    lp += log_binomial(trials, k) + xlogy(k, probs[a] / tail[a]) +
          xlogy(trials - k, tail[a + 1] / tail[a]);
  }
  return std::isnan(lp) ? LogProb::impossible() : LogProb(lp);
}

LogProb binomial_chain_log_pmf(const ProfileCounts& profile, const AlleleFrequencies& freqs) {
  const auto probs = freqs.category_probs();
  return binomial_chain_log_pmf(profile, probs);
}

}  // namespace mdm
