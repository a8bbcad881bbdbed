#ifndef PBD_IO_HPP
#define PBD_IO_HPP

#include <string>

#include <json.hpp>

#include "pbd/hypothesis.hpp"
#include "pbd/types.hpp"

namespace pbd {

using json = nlohmann::json;

// Spec documents: {"type":"pbd","p":[...]} and
// {"type":"weighted","classes":[{"weight_num":..,"weight_den":..,"p":[..]}]}.
json spec_to_json(const PbdSpec& spec);
PbdSpec spec_from_json(const json& j);
json weighted_to_json(const WeightedSumSpec& spec);
WeightedSumSpec weighted_from_json(const json& j);

// {"type":"pmf","origin":..,"mass":[...]}
json pmf_to_json(const DensePmf& pmf);
DensePmf pmf_from_json(const json& j);

// {"type":"hypothesis","variant":...} with per-variant payload; the
// piecewise variant serializes its pieces as [a, b, mass] triples.
json hypothesis_to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const json& j);

json record_to_json(const CompetitionRecord& record);

// Cover-form documents.
json sparse_form_to_json(const SparseFormSpec& form);
SparseFormSpec sparse_form_from_json(const json& j);
json binomial_form_to_json(const BinomialFormSpec& form);
BinomialFormSpec binomial_form_from_json(const json& j);

json config_to_json(const LearnConfig& config);
LearnConfig config_from_json(const json& j);

// File helpers.  Readers throw std::runtime_error with the path on
// failure; writers create or truncate.
json load_json(const std::string& path);
void save_json(const std::string& path, const json& j);
void save_samples(const std::string& path, const SampleBatch& batch);
std::vector<std::int64_t> load_samples(const std::string& path);

}  // namespace pbd

#endif  // PBD_IO_HPP
