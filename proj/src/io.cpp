#include "pbd/io.hpp"

#include <fstream>
#include <sstream>

namespace pbd {

json spec_to_json(const PbdSpec& spec) {
  return json{{"type", "pbd"}, {"p", spec.probs}};
}

PbdSpec spec_from_json(const json& j) {
  if (j.value("type", "") != "pbd") {
    throw std::runtime_error("expected a document with type \"pbd\"");
  }
  return PbdSpec(j.at("p").get<std::vector<double>>());
}

json weighted_to_json(const WeightedSumSpec& spec) {
  json classes = json::array();
  for (const auto& cls : spec.classes) {
    classes.push_back(json{{"weight_num", cls.weight_num},
                           {"weight_den", cls.weight_den},
                           {"p", cls.probs}});
  }
  return json{{"type", "weighted"}, {"classes", classes}};
}

WeightedSumSpec weighted_from_json(const json& j) {
  if (j.value("type", "") != "weighted") {
    throw std::runtime_error("expected a document with type \"weighted\"");
  }
  WeightedSumSpec spec;
  for (const auto& c : j.at("classes")) {
    WeightedSumSpec::Class cls;
    cls.weight_num = c.at("weight_num").get<std::int64_t>();
    cls.weight_den = c.value("weight_den", std::int64_t{1});
    cls.probs = c.at("p").get<std::vector<double>>();
    spec.classes.push_back(std::move(cls));
  }
  spec.validate();
  return spec;
}

json pmf_to_json(const DensePmf& pmf) {
  return json{{"type", "pmf"}, {"origin", pmf.origin}, {"mass", pmf.mass}};
}

DensePmf pmf_from_json(const json& j) {
  if (j.value("type", "") != "pmf") {
    throw std::runtime_error("expected a document with type \"pmf\"");
  }
  DensePmf pmf(j.at("origin").get<std::int64_t>(),
               j.at("mass").get<std::vector<double>>());
  pmf.validate();
  return pmf;
}

json hypothesis_to_json(const Hypothesis& h) {
  json j{{"type", "hypothesis"}, {"variant", h.tag()}};
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SparseIntervalHypothesis>) {
          j["a"] = v.a;
          j["b"] = v.b;
          j["pmf"] = v.pmf;
          j["trivial_fail"] = v.trivial_fail;
        } else if constexpr (std::is_same_v<T, PiecewiseUniformHypothesis>) {
          j["lo"] = v.lo;
          j["hi"] = v.hi;
          json pieces = json::array();
          for (const auto& piece : v.pieces) {
            pieces.push_back(json::array({piece.a, piece.b, piece.mass}));
          }
          j["intervals"] = pieces;
        } else if constexpr (std::is_same_v<T, DiscretizedTp>) {
          j["mu"] = v.params().mu;
          j["sigma2"] = v.params().sigma2;
          j["clamped"] = v.params().clamped;
          j["point_t"] = v.point_t();
        } else if constexpr (std::is_same_v<T, PbdHypothesis>) {
          j["p"] = v.spec.probs;
        } else if constexpr (std::is_same_v<T, BinomialSpec>) {
          j["n_hat"] = v.n_hat;
          j["p_hat"] = v.p_hat;
        } else {
          j["classes"] = weighted_to_json(v.spec)["classes"];
        }
      },
      h.value());
  return j;
}

Hypothesis hypothesis_from_json(const json& j) {
  if (j.value("type", "") != "hypothesis") {
    throw std::runtime_error("expected a document with type \"hypothesis\"");
  }
  std::string variant = j.at("variant").get<std::string>();
  if (variant == "sparse-interval") {
    SparseIntervalHypothesis h;
    h.a = j.at("a").get<std::int64_t>();
    h.b = j.at("b").get<std::int64_t>();
    h.pmf = j.at("pmf").get<std::vector<double>>();
    h.trivial_fail = j.value("trivial_fail", false);
    h.validate();
    return Hypothesis(HypothesisVariant(h));
  }
  if (variant == "piecewise-uniform") {
    PiecewiseUniformHypothesis h;
    h.lo = j.at("lo").get<std::int64_t>();
    h.hi = j.at("hi").get<std::int64_t>();
    for (const auto& piece : j.at("intervals")) {
      h.pieces.push_back({piece.at(0).get<std::int64_t>(),
                          piece.at(1).get<std::int64_t>(),
                          piece.at(2).get<double>()});
    }
    h.validate();
    return Hypothesis(HypothesisVariant(h));
  }
  if (variant == "translated-poisson") {
    TranslatedPoissonParams params(j.at("mu").get<double>(),
                                   j.at("sigma2").get<double>(),
                                   j.value("clamped", false));
    DiscretizedTp table(params, j.value("point_t", std::int64_t{1000}));
    return Hypothesis(HypothesisVariant(table));
  }
  if (variant == "pbd") {
    return Hypothesis(HypothesisVariant(
        PbdHypothesis(PbdSpec(j.at("p").get<std::vector<double>>()))));
  }
  if (variant == "binomial") {
    return Hypothesis(HypothesisVariant(BinomialSpec(
        j.at("n_hat").get<std::int64_t>(), j.at("p_hat").get<double>())));
  }
  if (variant == "weighted") {
    json wrapped{{"type", "weighted"}, {"classes", j.at("classes")}};
    return Hypothesis(
        HypothesisVariant(WeightedHypothesis(weighted_from_json(wrapped))));
  }
  throw std::runtime_error("unknown hypothesis variant: " + variant);
}

json record_to_json(const CompetitionRecord& record) {
  const char* verdict = record.verdict == Verdict::kFirstWins ? "first-wins"
                        : record.verdict == Verdict::kSecondWins
                            ? "second-wins"
                            : "draw";
  return json{{"w1", record.w1}, {"p1", record.p1}, {"q1", record.q1},
              {"tau", record.tau}, {"m", record.m}, {"verdict", verdict}};
}

json sparse_form_to_json(const SparseFormSpec& form) {
  json mults = json::array();
  for (const auto& [i, m] : form.multiplicities) {
    mults.push_back(json::array({i, m}));
  }
  return json{{"type", "sparse-form"},
              {"k", form.grid_k},
              {"multiplicities", mults},
              {"ones", form.ones}};
}

SparseFormSpec sparse_form_from_json(const json& j) {
  if (j.value("type", "") != "sparse-form") {
    throw std::runtime_error("expected a document with type \"sparse-form\"");
  }
  SparseFormSpec form;
  form.grid_k = j.at("k").get<int>();
  for (const auto& pair : j.at("multiplicities")) {
    form.multiplicities[pair.at(0).get<int>()] =
        pair.at(1).get<std::int64_t>();
  }
  form.ones = j.value("ones", std::int64_t{0});
  return form;
}

json binomial_form_to_json(const BinomialFormSpec& form) {
  return json{{"type", "binomial-form"},
              {"ell", form.ell},
              {"q", form.q},
              {"t", form.t}};
}

BinomialFormSpec binomial_form_from_json(const json& j) {
  if (j.value("type", "") != "binomial-form") {
    throw std::runtime_error(
        "expected a document with type \"binomial-form\"");
  }
  BinomialFormSpec form;
  form.ell = j.at("ell").get<std::int64_t>();
  form.q = j.at("q").get<double>();
  form.t = j.value("t", std::int64_t{0});
  return form;
}

json config_to_json(const LearnConfig& config) {
  json j{{"c1", config.c1},
         {"c2", config.c2},
         {"C", config.cover_c},
         {"theta", config.theta},
         {"c_b", config.c_b},
         {"sigma_floor", config.sigma_floor},
         {"rejection_factor", config.rejection_factor},
         {"candidate_budget", config.candidate_budget}};
  if (config.distinct_cap) j["distinct_cap"] = *config.distinct_cap;
  if (config.q_grid_denominator) {
    j["q_grid_denominator"] = *config.q_grid_denominator;
  }
  if (config.cover_max_ones) j["cover_max_ones"] = *config.cover_max_ones;
  return j;
}

LearnConfig config_from_json(const json& j) {
  LearnConfig config;
  config.c1 = j.value("c1", config.c1);
  config.c2 = j.value("c2", config.c2);
  config.cover_c = j.value("C", config.cover_c);
  config.theta = j.value("theta", config.theta);
  config.c_b = j.value("c_b", config.c_b);
  config.sigma_floor = j.value("sigma_floor", config.sigma_floor);
  config.rejection_factor =
      j.value("rejection_factor", config.rejection_factor);
  config.candidate_budget =
      j.value("candidate_budget", config.candidate_budget);
  if (j.contains("distinct_cap")) {
    config.distinct_cap = j.at("distinct_cap").get<int>();
  }
  if (j.contains("q_grid_denominator")) {
    config.q_grid_denominator =
        j.at("q_grid_denominator").get<std::int64_t>();
  }
  if (j.contains("cover_max_ones")) {
    config.cover_max_ones = j.at("cover_max_ones").get<std::int64_t>();
  }
  return config;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void save_samples(const std::string& path, const SampleBatch& batch) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::int64_t v : batch.values) out << v << "\n";
}

std::vector<std::int64_t> load_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::int64_t> values;
  std::int64_t v;
  while (in >> v) values.push_back(v);
  return values;
}

}  // namespace pbd
