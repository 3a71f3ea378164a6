// Batch front end: pmf evaluation, moments, WoE / pair-ratio curve data,
// sampling and the oracle validation suites.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or input error.

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mdm/core_model.hpp"
#include "mdm/csv_io.hpp"
#include "mdm/enumeration.hpp"
#include "mdm/forensic.hpp"
#include "mdm/mdm_core.hpp"
#include "mdm/moments.hpp"
#include "mdm/sampler.hpp"
#include "mdm/validation.hpp"

namespace {

constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

const std::vector<double> kDefaultFrequencies = {0.025, 0.05, 0.1, 0.2, 0.4};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelOptions {
  std::string freqs_path;
  std::string locus;
  std::vector<double> q;
  std::vector<double> alpha;
  double theta = 0.0;
};

struct RunConfig {
  std::string out_path;
  std::string table_path;
  std::string theta_grid = "0:0.5:0.01";
  std::vector<int> rows = {2, 2};
  std::uint64_t seed = 1;
  std::size_t count = 1;
  int contributors = 2;
  ModelOptions model;
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
  cmd->add_option("--freqs", m.freqs_path, "Allele frequency CSV (locus,allele,frequency)");
  cmd->add_option("--locus", m.locus, "Locus to read from --freqs");
  cmd->add_option("--q", m.q, "Allele frequencies given inline; a sum below 1 adds a rest class")
      ->delimiter(',');
  cmd->add_option("--alpha", m.alpha, "Dirichlet parameters given directly")->delimiter(',');
  cmd->add_option("--theta", m.theta, "Coancestry coefficient in [0, 1)");
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError("cannot parse '" + item + "' as a number");
    }
    out.push_back(v);
  }
  return out;
}

/// "start:stop:step" or a comma-separated list.
std::vector<double> parse_theta_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    std::string range = text;
    for (char& c : range)
      if (c == ':') c = ',';
    const auto parts = parse_number_list(range);
    if (parts.size() != 3) throw UsageError("theta grid range must be start:stop:step");
    grid = mdm::theta_range(parts[0], parts[1], parts[2]);
  } else {
    grid = parse_number_list(text);
  }
  if (grid.empty()) throw UsageError("theta grid is empty");
  for (double t : grid) {
    if (!(t >= 0.0 && t < 1.0)) throw UsageError("theta grid values must lie in [0, 1)");
  }
  return grid;
}

mdm::LocusFrequencies load_locus(const ModelOptions& m) {
  std::ifstream in(m.freqs_path);
  if (!in) throw UsageError("cannot open frequency file " + m.freqs_path);
  auto loci = mdm::read_allele_frequencies(in);
  if (loci.empty()) throw UsageError("frequency file has no loci");
  if (m.locus.empty()) {
    if (loci.size() > 1) throw UsageError("frequency file has several loci; pass --locus");
    return loci.front();
  }
  for (auto& l : loci)
    if (l.locus == m.locus) return l;
  throw UsageError("locus " + m.locus + " not found in " + m.freqs_path);
}

std::optional<mdm::AlleleFrequencies> frequencies(const ModelOptions& m, bool use_default) {
  if (!m.freqs_path.empty() && !m.q.empty()) throw UsageError("use either --freqs or --q");
  if (!m.freqs_path.empty()) return load_locus(m).freqs;
  if (!m.q.empty()) return mdm::AlleleFrequencies(m.q);
  if (use_default) return mdm::AlleleFrequencies(kDefaultFrequencies);
  return std::nullopt;
}

mdm::DispersionModel build_model(const ModelOptions& m) {
  if (!m.alpha.empty()) {
    if (!m.freqs_path.empty() || !m.q.empty()) {
      throw UsageError("--alpha cannot be combined with --freqs or --q");
    }
    return mdm::DispersionModel::from_alpha(m.alpha);
  }
  const auto freqs = frequencies(m, false);
  if (!freqs) throw UsageError("a model needs --freqs, --q or --alpha");
  return mdm::theta_to_alpha(*freqs, m.theta);
}

/// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

/// Appends a zero rest-class column when the table lists only the named alleles.
mdm::CountTable fit_to_model(const mdm::CountTable& table, std::size_t categories) {
  if (table.categories() + 1 != categories) return table;
  mdm::IntMatrix padded(table.profiles(), categories);
  for (std::size_t i = 0; i < table.profiles(); ++i)
    for (std::size_t a = 0; a < table.categories(); ++a) padded(i, a) = table(i, a);
  return mdm::CountTable(std::move(padded));
}

int cmd_pmf(const RunConfig& cfg) {
  if (cfg.table_path.empty()) throw UsageError("pmf needs --table");
  const auto model = build_model(cfg.model);
  std::ifstream in(cfg.table_path);
  if (!in) throw UsageError("cannot open table file " + cfg.table_path);
  const auto tables = mdm::read_tables(in);
  Output out(cfg.out_path);
  auto& os = out.stream();
  os << "table_id,log_pmf,pmf\n";
  for (const auto& named : tables) {
    const auto table = fit_to_model(named.table, model.category_count());
    const mdm::MdmParams params(table.row_sums(), model);
    const auto lp = mdm::mdm_log_pmf(table, params);
    os << mdm::csv_field(named.id) << ',' << mdm::format_double(lp.log()) << ','
       << mdm::format_double(lp.prob()) << '\n';
  }
  return 0;
}

int cmd_moments(const RunConfig& cfg) {
  const mdm::MdmParams params(cfg.rows, build_model(cfg.model));
  const auto mean = mdm::mean_matrix(params);
  const auto cov = mdm::covariance_matrix(params);
  const std::size_t cats = params.categories();
  Output out(cfg.out_path);
  auto& os = out.stream();
  os << "quantity,profile,allele,profile2,allele2,value\n";
  for (std::size_t i = 0; i < params.profiles(); ++i)
    for (std::size_t a = 0; a < cats; ++a)
      os << "mean," << i + 1 << ',' << a + 1 << ",,,"
         << mdm::format_double(mean(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)))
         << '\n';
  for (Eigen::Index r = 0; r < cov.rows(); ++r)
    for (Eigen::Index c = 0; c < cov.cols(); ++c) {
      const auto ur = static_cast<std::size_t>(r);
      const auto uc = static_cast<std::size_t>(c);
      os << "covariance," << ur / cats + 1 << ',' << ur % cats + 1 << ',' << uc / cats + 1 << ','
         << uc % cats + 1 << ',' << mdm::format_double(cov(r, c)) << '\n';
    }
  return 0;
}

int cmd_woe_curve(const RunConfig& cfg) {
  const auto grid = parse_theta_grid(cfg.theta_grid);
  const std::vector<double> panels = cfg.model.q.empty() ? kDefaultFrequencies : cfg.model.q;
  const auto states = mdm::woe_margin_grid(cfg.contributors);
  Output out(cfg.out_path);
  auto& os = out.stream();
  os << "n_col,s_prev,Q,theta,woe\n";
  for (double q : panels) {
    for (const auto& row : mdm::woe_curve(states, q, grid)) {
      for (std::size_t t = 0; t < grid.size(); ++t) {
        os << row.state.n_col << ',' << row.state.s_prev << ',' << mdm::format_double(q) << ','
           << mdm::format_double(grid[t]) << ',' << mdm::format_double(row.woe[t]) << '\n';
      }
    }
  }
  return 0;
}

int cmd_ratio_curve(const RunConfig& cfg) {
  const auto grid = parse_theta_grid(cfg.theta_grid);
  const auto freqs = frequencies(cfg.model, true);
  Output out(cfg.out_path);
  auto& os = out.stream();
  os << "class,theta,ratio\n";
  for (const auto& curve : mdm::pair_ratio_curves(*freqs, grid)) {
    for (std::size_t t = 0; t < grid.size(); ++t) {
      os << mdm::csv_field(curve.key) << ',' << mdm::format_double(grid[t]) << ','
         << mdm::format_double(curve.ratio[t]) << '\n';
    }
  }
  return 0;
}

int cmd_sample(const RunConfig& cfg) {
  if (cfg.count == 0) throw UsageError("--count must be positive");
  const mdm::MdmParams params(cfg.rows, build_model(cfg.model));
  mdm::SequentialSampler sampler(params, cfg.seed);
  Output out(cfg.out_path);
  auto& os = out.stream();
  os << "# rng=" << mdm::SequentialSampler::kRngAlgorithm << " seed=" << cfg.seed << '\n';
  if (cfg.count > 1) os << "table,";
  os << "profile";
  for (std::size_t a = 0; a < params.categories(); ++a) os << ",allele_" << a + 1;
  os << '\n';
  for (std::size_t k = 0; k < cfg.count; ++k) {
    const auto table = sampler.draw();
    mdm::write_table(os, table, cfg.count > 1 ? std::to_string(k + 1) : std::string());
  }
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  const auto results = mdm::run_validation_suites();
  Output out(cfg.out_path);
  auto& os = out.stream();
  os << "suite,status,max_error,tolerance,checks\n";
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    os << r.name << ',' << (r.passed ? "pass" : "fail") << ',' << mdm::format_double(r.max_error)
       << ',' << mdm::format_double(r.tolerance) << ',' << r.checks << '\n';
  }
  return ok ? 0 : kExitValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate Dirichlet-multinomial toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML/INI defaults, one [section] per subcommand; flags take precedence");

  RunConfig cfg;

  auto* pmf = app.add_subcommand("pmf", "Evaluate the joint pmf of count tables");
  pmf->add_option("--table", cfg.table_path, "Table CSV (profile,allele_1,...)")->required();
  add_model_options(pmf, cfg.model);

  auto* moments = app.add_subcommand("moments", "Means and covariances as CSV");
  moments->add_option("--rows", cfg.rows, "Row sums n_i.")->delimiter(',');
  add_model_options(moments, cfg.model);

  auto* woe = app.add_subcommand("woe-curve", "Per-step weight-of-evidence over a theta grid");
  woe->add_option("--q", cfg.model.q, "Scaled allele probabilities, one panel each")
      ->delimiter(',');
  woe->add_option("--theta-grid", cfg.theta_grid, "start:stop:step or a comma list");
  woe->add_option("--contributors", cfg.contributors, "Number of contributors")
      ->check(CLI::PositiveNumber);

  auto* ratio = app.add_subcommand("ratio-curve", "Genotype-pair match-probability ratios");
  ratio->add_option("--freqs", cfg.model.freqs_path, "Allele frequency CSV");
  ratio->add_option("--locus", cfg.model.locus, "Locus to read from --freqs");
  ratio->add_option("--q", cfg.model.q, "Allele frequencies given inline")->delimiter(',');
  ratio->add_option("--theta-grid", cfg.theta_grid, "start:stop:step or a comma list");

  auto* sample = app.add_subcommand("sample", "Draw tables with the sequential sampler");
  sample->add_option("--rows", cfg.rows, "Row sums n_i.")->delimiter(',');
  sample->add_option("--seed", cfg.seed, "64-bit generator seed");
  sample->add_option("--count", cfg.count, "Number of tables");
  add_model_options(sample, cfg.model);

  auto* validate = app.add_subcommand("validate", "Run the enumeration-oracle suites");

  for (auto* cmd : {pmf, moments, woe, ratio, sample, validate}) {
    cmd->add_option("--out", cfg.out_path, "Output file (default stdout)");
    cmd->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*pmf) return cmd_pmf(cfg);
    if (*moments) return cmd_moments(cfg);
    if (*woe) return cmd_woe_curve(cfg);
    if (*ratio) return cmd_ratio_curve(cfg);
    if (*sample) return cmd_sample(cfg);
    if (*validate) return cmd_validate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
