#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "pbd/core.hpp"
#include "pbd/cover.hpp"
#include "pbd/io.hpp"
#include "pbd/learn.hpp"
#include "pbd/weighted.hpp"

namespace {

using namespace pbd;

constexpr int kExitUsage = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitBudget = 4;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

LearnConfig load_config(const std::string& explicit_path) {
  std::string path = explicit_path;
  if (path.empty()) {
    if (const char* env = std::getenv("PBD_CONFIG")) path = env;
  }
  if (path.empty()) return LearnConfig{};
  return config_from_json(load_json(path));
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    out.push_back(csv.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

PbdSpec gen_pbd(const std::string& kind, std::size_t n, double p,
                std::size_t ell, std::size_t ones, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> probs;
  probs.reserve(n);
  if (kind == "binomial") {
    probs.assign(n, p);
  } else if (kind == "uniform-p") {
    for (std::size_t i = 0; i < n; ++i) probs.push_back(rng.next_unit());
  } else if (kind == "random") {
    for (std::size_t i = 0; i < n; ++i) {
      double u = rng.next_unit();
      if (u < 0.2) {
        probs.push_back(0.0);
      } else if (u < 0.4) {
        probs.push_back(1.0);
      } else {
        probs.push_back(rng.next_unit());
      }
    }
  } else if (kind == "sparse") {
    if (ell + ones > n) throw CLI::ValidationError("ell + ones exceeds n");
    for (std::size_t i = 0; i < ell; ++i) probs.push_back(rng.next_unit());
    for (std::size_t i = 0; i < ones; ++i) probs.push_back(1.0);
    probs.resize(n, 0.0);
  } else {
    throw CLI::ValidationError("unknown kind: " + kind);
  }
  return PbdSpec(std::move(probs));
}

WeightedSumSpec gen_weighted(const std::string& weights_csv,
                             const std::string& counts_csv,
                             std::uint64_t seed) {
  WeightedSumSpec spec;
  auto weights = split_list(weights_csv);
  auto counts = split_list(counts_csv);
  if (weights.size() != counts.size() || weights.empty()) {
    throw CLI::ValidationError("--weights and --counts must align");
  }
  SplitMix64 rng(seed);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    WeightedSumSpec::Class cls;
    std::string w = weights[j];
    std::size_t slash = w.find('/');
    cls.weight_num = std::stoll(w.substr(0, slash));
    cls.weight_den =
        slash == std::string::npos ? 1 : std::stoll(w.substr(slash + 1));
    std::size_t count = std::stoull(counts[j]);
    for (std::size_t c = 0; c < count; ++c) {
      cls.probs.push_back(rng.next_unit());
    }
    spec.classes.push_back(std::move(cls));
  }
  spec.validate();
  return spec;
}

// Either a pbd or a weighted spec document.
struct Truth {
  bool is_weighted = false;
  PbdSpec pbd;
  WeightedSumSpec weighted;
};

Truth load_truth(const std::string& path) {
  json j = load_json(path);
  Truth t;
  if (j.value("type", "") == "weighted") {
    t.is_weighted = true;
    t.weighted = weighted_from_json(j);
  } else {
    t.pbd = spec_from_json(j);
  }
  return t;
}

double tv_against_truth(const Truth& truth, const Hypothesis& h) {
  if (truth.is_weighted) {
    const auto* wh = std::get_if<WeightedHypothesis>(&h.value());
    if (wh == nullptr) {
      throw std::runtime_error(
          "weighted truth requires a weighted hypothesis");
    }
    return exact_tv_weighted(weighted_pmf(truth.weighted), *wh->pmf);
  }
  return exact_tv_target(truth.pbd, h);
}

int cmd_gen(const std::string& kind, std::size_t n, double p,
            std::size_t ell, std::size_t ones, const std::string& weights,
            const std::string& counts, std::uint64_t seed,
            const std::string& out) {
  json doc;
  if (kind == "weighted") {
    doc = weighted_to_json(gen_weighted(weights, counts, seed));
  } else {
    doc = spec_to_json(gen_pbd(kind, n, p, ell, ones, seed));
  }
  save_json(out, doc);
  return 0;
}

int cmd_sample(const std::string& truth_path, std::size_t m,
               std::uint64_t seed, const std::string& out) {
  Truth truth = load_truth(truth_path);
  SampleBatch batch;
  batch.seed = seed;
  if (truth.is_weighted) {
    WeightedSampleSource source(truth.weighted, seed);
    batch.values.reserve(m);
    for (std::size_t i = 0; i < m; ++i) batch.values.push_back(source.draw());
  } else {
    batch = pbd_sample(truth.pbd, m, seed);
  }
  save_samples(out, batch);
  return 0;
}

int cmd_learn(const std::string& truth_path, const std::string& samples_path,
              std::int64_t n, double eps, double delta,
              const std::string& mode, std::uint64_t seed,
              const std::string& out, const LearnConfig& config) {
  auto start = std::chrono::steady_clock::now();
  std::unique_ptr<SampleSource> oracle;
  Truth truth;
  bool have_truth = !truth_path.empty();
  if (have_truth) {
    truth = load_truth(truth_path);
    if (truth.is_weighted) {
      throw std::runtime_error("use learn-weighted for weighted targets");
    }
    if (n <= 0) n = static_cast<std::int64_t>(truth.pbd.n());
    oracle = std::make_unique<SpecSampleSource>(truth.pbd, seed);
  } else {
    if (samples_path.empty()) {
      throw CLI::ValidationError("need --truth or --samples");
    }
    if (n <= 0) throw CLI::ValidationError("--samples requires --n");
    oracle = std::make_unique<RecordedSource>(load_samples(samples_path));
  }

  json metrics{{"eps", eps}, {"delta", delta}, {"mode", mode}};
  Hypothesis result{HypothesisVariant(BinomialSpec(1, 0.5))};
  if (mode == "proper") {
    ProperResult res = proper_learn_pbd(*oracle, n, eps, delta, config);
    result = Hypothesis(HypothesisVariant(PbdHypothesis(res.spec)));
    metrics["branch"] =
        res.branch == LearnBranch::kSparse ? "sparse" : "poisson";
    metrics["sparse_fallback"] = res.sparse_fallback;
  } else if (mode == "nonproper") {
    LearnResult res = learn_pbd(*oracle, n, eps, delta, config);
    result = res.hypothesis;
    metrics["branch"] =
        res.branch == LearnBranch::kSparse ? "sparse" : "poisson";
    metrics["record"] = record_to_json(res.record);
  } else {
    throw CLI::ValidationError("mode must be nonproper or proper");
  }
  metrics["draws"] = oracle->draws_used();
  if (have_truth) metrics["tv"] = tv_against_truth(truth, result);
  metrics["seconds"] = elapsed_seconds(start);
  save_json(out, hypothesis_to_json(result));
  std::printf("%s\n", metrics.dump(2).c_str());
  return 0;
}

int cmd_learn_weighted(const std::string& truth_path, double eps,
                       double delta, std::uint64_t seed,
                       const std::string& out, const LearnConfig& config) {
  auto start = std::chrono::steady_clock::now();
  Truth truth = load_truth(truth_path);
  if (!truth.is_weighted) {
    throw std::runtime_error("learn-weighted needs a weighted truth spec");
  }
  WeightedShape shape;
  for (const auto& cls : truth.weighted.classes) {
    shape.classes.push_back(
        {cls.weight_num, cls.weight_den, cls.probs.size()});
  }
  WeightedSampleSource oracle(truth.weighted, seed);
  WeightedLearnResult res = learn_weighted(oracle, shape, eps, delta, config);
  json metrics{{"eps", eps},
               {"delta", delta},
               {"cover_size", res.cover_size},
               {"draws", res.draws_used},
               {"tournament_failed", res.tournament_failed},
               {"tv", exact_tv_weighted(weighted_pmf(truth.weighted),
                                        weighted_pmf(res.spec))}};
  metrics["seconds"] = elapsed_seconds(start);
  save_json(out, weighted_to_json(res.spec));
  std::printf("%s\n", metrics.dump(2).c_str());
  return 0;
}

int cmd_eval(const std::string& truth_path, const std::string& hyp_path) {
  Truth truth = load_truth(truth_path);
  json hyp_doc = load_json(hyp_path);
  Hypothesis h = hyp_doc.value("type", "") == "weighted"
                     ? Hypothesis(HypothesisVariant(
                           WeightedHypothesis(weighted_from_json(hyp_doc))))
                     : hypothesis_from_json(hyp_doc);
  json report;
  if (truth.is_weighted) {
    report["tv"] = tv_against_truth(truth, h);
    report["tail_bound"] = 0.0;
  } else {
    SupportWindow w = support_window(truth.pbd);
    DensePmf window = pbd_pmf_window(truth.pbd, w.lo, w.hi);
    report["tv"] = exact_tv_upper(window, w.tail_bound, h);
    report["tail_bound"] = w.tail_bound;
    report["window"] = json::array({w.lo, w.hi});
  }
  std::printf("%s\n", report.dump(2).c_str());
  return 0;
}

int cmd_tournament(const std::string& truth_path,
                   const std::string& candidates_path, double eps,
                   double delta, std::uint64_t seed, const std::string& out) {
  Truth truth = load_truth(truth_path);
  json docs = load_json(candidates_path);
  std::vector<Hypothesis> candidates;
  for (const auto& doc : docs) {
    if (doc.value("type", "") == "weighted") {
      candidates.push_back(Hypothesis(
          HypothesisVariant(WeightedHypothesis(weighted_from_json(doc)))));
    } else {
      candidates.push_back(hypothesis_from_json(doc));
    }
  }
  std::unique_ptr<SampleSource> oracle;
  if (truth.is_weighted) {
    oracle = std::make_unique<WeightedSampleSource>(truth.weighted, seed);
  } else {
    oracle = std::make_unique<SpecSampleSource>(truth.pbd, seed);
  }
  TournamentResult res = tournament_select(*oracle, candidates, eps, delta);
  json doc{{"losses", res.losses}, {"draws", oracle->draws_used()}};
  if (res.winner) {
    doc["winner_index"] = *res.winner;
    doc["winner_tv"] = tv_against_truth(truth, candidates[*res.winner]);
  } else {
    doc["winner_index"] = nullptr;
  }
  json records = json::array();
  for (const auto& r : res.records) records.push_back(record_to_json(r));
  doc["records"] = records;
  save_json(out, doc);
  return 0;
}

int cmd_bench(const std::string& kind, const std::string& n_list,
              const std::string& eps_list, std::size_t trials, double delta,
              double p, std::size_t ell, std::uint64_t seed,
              const std::string& mode, const std::string& out,
              const LearnConfig& config) {
  FILE* f = std::fopen(out.c_str(), "w");
  if (f == nullptr) throw std::runtime_error("cannot write " + out);
  std::fprintf(f, "n,eps,trials,median_tv,p90_tv,samples_used,seconds\n");
  std::vector<std::string> ns = split_list(n_list);
  std::vector<std::string> epss = split_list(eps_list);
  for (std::size_t ei = 0; ei < epss.size(); ++ei) {
    double eps = std::stod(epss[ei]);
    for (const std::string& n_str : ns) {
      std::size_t n = std::stoull(n_str);
      auto start = std::chrono::steady_clock::now();
      std::vector<double> tvs;
      std::uint64_t draws = 0;
      for (std::size_t trial = 0; trial < trials; ++trial) {
        // seeds deliberately exclude n so that the n-independence audit
        // sees identical streams
        std::uint64_t trial_seed =
            derive_seed(seed, ei * 1000003ULL + trial);
        PbdSpec target =
            kind == "binomial"
                ? gen_pbd("binomial", n, p, 0, 0, derive_seed(seed, 777))
                : gen_pbd("sparse", n, p, ell, 0, derive_seed(seed, 777));
        SpecSampleSource oracle(target, trial_seed);
        if (mode == "proper") {
          ProperResult res =
              proper_learn_pbd(oracle, static_cast<std::int64_t>(n), eps,
                               delta, config);
          tvs.push_back(exact_tv_target(
              target,
              Hypothesis(HypothesisVariant(PbdHypothesis(res.spec)))));
        } else {
          LearnResult res = learn_pbd(oracle, static_cast<std::int64_t>(n),
                                      eps, delta, config);
          tvs.push_back(exact_tv_target(target, res.hypothesis));
        }
        draws += oracle.draws_used();
      }
      std::sort(tvs.begin(), tvs.end());
      double median = tvs[tvs.size() / 2];
      double p90 = tvs[std::min(tvs.size() - 1,
                                static_cast<std::size_t>(std::ceil(
                                    0.9 * static_cast<double>(tvs.size()))))];
      std::fprintf(f, "%zu,%s,%zu,%.12g,%.12g,%llu,%.3f\n", n,
                   epss[ei].c_str(), trials, median, p90,
                   static_cast<unsigned long long>(draws),
                   elapsed_seconds(start));
    }
  }
  std::fclose(f);
  return 0;
}

int cmd_poisson_pmf(const std::string& lambda_str, std::uint64_t k,
                    std::int64_t t) {
  std::size_t slash = lambda_str.find('/');
  mpz_class num(lambda_str.substr(0, slash));
  mpz_class den = slash == std::string::npos
                      ? mpz_class(1)
                      : mpz_class(lambda_str.substr(slash + 1));
  ExactRational lambda(num, den);
  lambda.canonicalize();
  double estimate = poisson_pmf_approx({lambda, k, t});
  std::printf("%.12g\n", estimate);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson Binomial Distribution learning toolkit"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path,
                 "config file (default: $PBD_CONFIG when set)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a target spec");
  std::string kind = "binomial", out = "spec.json";
  std::string weights = "1", counts = "10";
  std::size_t n = 100, ell = 5, ones = 0, m = 1000, trials = 5;
  double p = 0.5, eps = 0.15, delta = 0.1;
  std::uint64_t seed = 1;
  gen->add_option("--kind", kind,
                  "binomial|uniform-p|random|sparse|weighted");
  gen->add_option("--n", n, "number of indicators");
  gen->add_option("--p", p, "mean for binomial kind");
  gen->add_option("--ell", ell, "nontrivial count for sparse kind");
  gen->add_option("--ones", ones, "deterministic-one count for sparse kind");
  gen->add_option("--weights", weights, "comma list, entries num[/den]");
  gen->add_option("--counts", counts, "comma list of class sizes");
  gen->add_option("--seed", seed);
  gen->add_option("--out", out)->required();

  // sample
  auto* sample = app.add_subcommand("sample", "draw samples from a spec");
  std::string truth_path;
  sample->add_option("--truth", truth_path)->required();
  sample->add_option("--m", m, "sample count");
  sample->add_option("--seed", seed);
  sample->add_option("--out", out)->required();

  // learn
  auto* learn = app.add_subcommand("learn", "learn a PBD from samples");
  std::string samples_path, mode = "nonproper";
  std::int64_t learn_n = 0;
  learn->add_option("--truth", truth_path, "live sampling oracle");
  learn->add_option("--samples", samples_path, "recorded sample file");
  learn->add_option("--n", learn_n, "domain size (required with --samples)");
  learn->add_option("--eps", eps);
  learn->add_option("--delta", delta);
  learn->add_option("--mode", mode, "nonproper|proper");
  learn->add_option("--seed", seed);
  learn->add_option("--out", out)->required();

  // learn-weighted
  auto* lw = app.add_subcommand("learn-weighted",
                                "learn a weighted Bernoulli sum");
  lw->add_option("--truth", truth_path)->required();
  lw->add_option("--eps", eps);
  lw->add_option("--delta", delta);
  lw->add_option("--seed", seed);
  lw->add_option("--out", out)->required();

  // eval
  auto* eval = app.add_subcommand("eval", "exact TV of a hypothesis");
  std::string hyp_path;
  eval->add_option("--truth", truth_path)->required();
  eval->add_option("--hypothesis", hyp_path)->required();

  // tournament
  auto* tour = app.add_subcommand("tournament", "all-pairs selection");
  std::string candidates_path;
  tour->add_option("--truth", truth_path)->required();
  tour->add_option("--candidates", candidates_path)->required();
  tour->add_option("--eps", eps);
  tour->add_option("--delta", delta);
  tour->add_option("--seed", seed);
  tour->add_option("--out", out)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "sample-complexity sweep");
  std::string n_list = "100", eps_list = "0.15";
  bench->add_option("--kind", kind, "sparse|binomial target family");
  bench->add_option("--n-list", n_list, "comma list of n values");
  bench->add_option("--eps-list", eps_list, "comma list of eps values");
  bench->add_option("--trials", trials);
  bench->add_option("--delta", delta);
  bench->add_option("--p", p);
  bench->add_option("--ell", ell);
  bench->add_option("--seed", seed);
  bench->add_option("--mode", mode, "nonproper|proper");
  bench->add_option("--out", out)->required();

  // poisson-pmf
  auto* pp = app.add_subcommand("poisson-pmf",
                                "additive-error Poisson pmf value");
  std::string lambda_str = "1";
  std::uint64_t kk = 0;
  std::int64_t tt = 1000;
  pp->add_option("--lambda", lambda_str, "rational rate NUM[/DEN]")
      ->required();
  pp->add_option("--k", kk)->required();
  pp->add_option("--t", tt, "inverse accuracy")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    LearnConfig config = load_config(config_path);
    if (gen->parsed()) {
      return cmd_gen(kind, n, p, ell, ones, weights, counts, seed, out);
    }
    if (sample->parsed()) return cmd_sample(truth_path, m, seed, out);
    if (learn->parsed()) {
      return cmd_learn(truth_path, samples_path, learn_n, eps, delta, mode,
                       seed, out, config);
    }
    if (lw->parsed()) {
      return cmd_learn_weighted(truth_path, eps, delta, seed, out, config);
    }
    if (eval->parsed()) return cmd_eval(truth_path, hyp_path);
    if (tour->parsed()) {
      return cmd_tournament(truth_path, candidates_path, eps, delta, seed,
                            out);
    }
    if (bench->parsed()) {
      return cmd_bench(kind, n_list, eps_list, trials, delta, p, ell, seed,
                       mode, out, config);
    }
    if (pp->parsed()) return cmd_poisson_pmf(lambda_str, kk, tt);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const OracleExhausted& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitExhausted;
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return kExitUsage;
}
