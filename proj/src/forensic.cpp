#include "mdm/forensic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mdm/log_math.hpp"
#include "mdm/mdm_core.hpp"

namespace mdm {

namespace {

void require_genotype(const ProfileCounts& p, const char* which) {
  if (p.total() != 2) {
    throw ValidationError(std::string("genotype ") + which + " must contain exactly two alleles");
  }
}

std::vector<int> padded(const ProfileCounts& p, std::size_t categories) {
  std::vector<int> out(p.counts().begin(), p.counts().end());
  if (out.size() + 1 == categories) out.push_back(0);
  if (out.size() != categories) {
    throw ValidationError("genotype has " + std::to_string(p.categories()) + " entries, model has " +
                          std::to_string(categories) + " categories");
  }
  return out;
}

void require_theta(double theta) {
  if (!(theta >= 0.0 && theta < 1.0)) {
    throw ParameterDomainError("theta must lie in [0, 1)");
  }
}

}  // namespace

GenotypePair::GenotypePair(std::vector<int> i, std::vector<int> j)
    : profile_i(std::move(i)), profile_j(std::move(j)) {
  require_genotype(profile_i, "i");
  require_genotype(profile_j, "j");
  if (profile_i.categories() != profile_j.categories()) {
    throw ValidationError("genotypes have different allele counts");
  }
}

std::vector<int> GenotypePair::pooled() const {
  std::vector<int> out(profile_i.categories());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = profile_i[a] + profile_j[a];
  return out;
}

std::string MultiplicityClass::label() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t k = 0; k < multiplicities.size(); ++k) {
    if (k) out << ',';
    out << multiplicities[k];
  }
  out << ')';
  return out.str();
}

MultiplicityClass multiplicity_class(const GenotypePair& pair) {
  MultiplicityClass cls;
  for (int c : pair.pooled())
    if (c >= 2) cls.multiplicities.push_back(c);
  std::sort(cls.multiplicities.rbegin(), cls.multiplicities.rend());
  return cls;
}

double woe_step(const MarginState& margin, double scaled_prob, double theta, double tail_mass) {
  if (!margin.feasible()) {
    throw ValidationError("infeasible margin (" + std::to_string(margin.n_col) + ", " +
                          std::to_string(margin.s_prev) + ") for " +
                          std::to_string(margin.n_contributors) + " contributors");
  }
  if (!(scaled_prob > 0.0 && scaled_prob < 1.0)) {
    throw ParameterDomainError("scaled allele probability must lie in (0, 1)");
  }
  if (!(tail_mass > 0.0 && tail_mass <= 1.0)) {
    throw ParameterDomainError("tail mass must lie in (0, 1]");
  }
  require_theta(theta);
  if (theta == 0.0) return 1.0;

  const int n = margin.n_col;
  const int m = margin.pooled_capacity() - margin.s_prev - n;
  const double alpha_step = tail_mass * (1.0 - theta) / theta;
  const double alpha_a = scaled_prob * alpha_step;
  const double alpha_tail = (1.0 - scaled_prob) * alpha_step;
  const double log_independent = xlogy(n, scaled_prob) + xlogy(m, 1.0 - scaled_prob);
  const double log_joint = log_rising(alpha_a, n) + log_rising(alpha_tail, m) -
                           log_rising(alpha_a + alpha_tail, n + m);
  return std::exp(log_independent - log_joint);
}

std::vector<GridState> woe_margin_grid(int contributors) {
  if (contributors < 1) throw ValidationError("at least one contributor is required");
  const int capacity = 2 * contributors;
  std::vector<GridState> grid;
  for (int n = 0; n <= capacity; ++n) {
    for (int s = 0; n + s <= capacity; ++s) {
      grid.push_back({MarginState{n, s, contributors}, s >= capacity - 1});
    }
  }
  return grid;
}

double pair_ratio(const GenotypePair& pair, const AlleleFrequencies& freqs, double theta) {
  require_theta(theta);
  if (theta == 0.0) return 1.0;
  const auto q = freqs.category_probs();
  const auto row_i = padded(pair.profile_i, q.size());
  const auto row_j = padded(pair.profile_j, q.size());

  double log_independent = log_multinomial(row_i) + log_multinomial(row_j);
  for (std::size_t a = 0; a < q.size(); ++a) log_independent += xlogy(row_i[a] + row_j[a], q[a]);

  const MdmParams params({2, 2}, theta_to_alpha(freqs, theta));
  const LogProb joint = mdm_log_pmf(CountTable::from_rows({row_i, row_j}), params);
  return std::exp(log_independent - joint.log());
}

double pair_ratio_by_woe(const GenotypePair& pair, const AlleleFrequencies& freqs, double theta) {
  require_theta(theta);
  const auto q = freqs.category_probs();
  const ProfileCounts pi(padded(pair.profile_i, q.size()));
  const ProfileCounts pj(padded(pair.profile_j, q.size()));
  std::vector<double> tail(q.size() + 1, 0.0);
  for (std::size_t a = q.size(); a-- > 0;) tail[a] = tail[a + 1] + q[a];

  double ratio = 1.0;
  for (std::size_t a = 0; a + 1 < q.size(); ++a) {
    const MarginState margin{pi[a] + pj[a], pi.cumulative(a) + pj.cumulative(a), 2};
    ratio *= woe_step(margin, q[a] / tail[a], theta, tail[a]);
  }
  return ratio;
}

std::vector<WoeCurveRow> woe_curve(const std::vector<GridState>& states, double scaled_prob,
                                   const std::vector<double>& theta_grid) {
  std::vector<WoeCurveRow> rows(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    rows[s].state = states[s].state;
    rows[s].correlation_free = states[s].correlation_free;
    rows[s].scaled_prob = scaled_prob;
    rows[s].woe.resize(theta_grid.size());
  }
  const auto cells = static_cast<std::int64_t>(states.size() * theta_grid.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto s = static_cast<std::size_t>(c) / theta_grid.size();
    const auto t = static_cast<std::size_t>(c) % theta_grid.size();
    rows[s].woe[t] = woe_step(states[s].state, scaled_prob, theta_grid[t]);
  }
  return rows;
}

namespace {

std::vector<std::vector<int>> diploid_genotypes(std::size_t alleles) {
  std::vector<std::vector<int>> out;
  for (std::size_t a = 0; a < alleles; ++a) {
    for (std::size_t b = a; b < alleles; ++b) {
      std::vector<int> g(alleles, 0);
      ++g[a];
      ++g[b];
      out.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, int>> repeated_alleles(const std::vector<int>& pooled) {
  std::vector<std::pair<std::size_t, int>> out;
  for (std::size_t a = 0; a < pooled.size(); ++a)
    if (pooled[a] >= 2) out.emplace_back(a, pooled[a]);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  return out;
}

}  // namespace

std::vector<PairRatioCurve> pair_ratio_curves(const AlleleFrequencies& freqs,
                                              const std::vector<double>& theta_grid) {
  for (double t : theta_grid) require_theta(t);
  const auto genotypes = diploid_genotypes(freqs.allele_count());
  std::vector<GenotypePair> pairs;
  for (std::size_t g = 0; g < genotypes.size(); ++g)
    for (std::size_t h = g; h < genotypes.size(); ++h) pairs.emplace_back(genotypes[g], genotypes[h]);

  std::vector<std::vector<double>> ratios(pairs.size(), std::vector<double>(theta_grid.size()));
  const auto cells = static_cast<std::int64_t>(pairs.size() * theta_grid.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < cells; ++c) {
    const auto p = static_cast<std::size_t>(c) / theta_grid.size();
    const auto t = static_cast<std::size_t>(c) % theta_grid.size();
    ratios[p][t] = pair_ratio(pairs[p], freqs, theta_grid[t]);
  }

  using GroupKey = std::pair<MultiplicityClass, std::vector<std::pair<std::size_t, int>>>;
  std::map<GroupKey, PairRatioCurve> groups;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto pooled = pairs[p].pooled();
    GroupKey key{multiplicity_class(pairs[p]), repeated_alleles(pooled)};
    auto [it, inserted] = groups.try_emplace(key);
    PairRatioCurve& curve = it->second;
    if (inserted) {
      curve.cls = key.first;
      curve.repeated = key.second;
      curve.key = curve.cls.label();
      for (std::size_t k = 0; k < curve.repeated.size(); ++k) {
        curve.key += (k ? "/" : "@") + freqs.labels()[curve.repeated[k].first];
      }
      curve.ratio = ratios[p];
    } else {
      for (std::size_t t = 0; t < theta_grid.size(); ++t) {
        const double ref = curve.ratio[t];
        if (std::abs(ratios[p][t] - ref) > 1e-12 * std::max(1.0, std::abs(ref))) {
          throw Error("pair ratio differs within class " + curve.key);
        }
      }
    }
    ++curve.pair_count;
  }
  std::vector<PairRatioCurve> out;
  out.reserve(groups.size());
  for (auto& [k, v] : groups) out.push_back(std::move(v));
  return out;
}

std::vector<double> theta_range(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw ValidationError("invalid theta range");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) out.push_back(std::round((start + k * step) * 1e12) / 1e12);
  return out;
}

}  // namespace mdm
