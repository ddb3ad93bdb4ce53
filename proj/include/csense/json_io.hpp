#ifndef CSENSE_JSON_IO_HPP
#define CSENSE_JSON_IO_HPP

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "csense/compare.hpp"
#include "csense/error.hpp"
#include "csense/reconstruct.hpp"
#include "csense/sampling.hpp"
#include "csense/synth.hpp"

namespace csense {

using json = nlohmann::json;

namespace detail {

inline json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

inline Vector vector_from_json(const json& arr, const char* field) {
  require(arr.is_array(), ErrorKind::format, std::string("'") + field + "' must be an array");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    require(arr[i].is_number(), ErrorKind::format, std::string("'") + field + "' must hold numbers");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

// JSON has no infinity or NaN; both serialize as null.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace detail

/// {"n", "indices", "values"}; multichannel sets add "channels", one value
/// array per channel, with "values" equal to channels[0].
inline json sample_set_to_json(const std::vector<SampleSet>& channels) {
  detail::require(!channels.empty(), ErrorKind::dimension, "no sample sets to serialize");
  const SampleSet& first = channels.front();
  json j;
  j["n"] = first.n;
  j["indices"] = first.indices;
  j["values"] = detail::vector_to_json(first.values);
  if (channels.size() > 1) {
    json per = json::array();
    for (const auto& set : channels) per.push_back(detail::vector_to_json(set.values));
    j["channels"] = std::move(per);
  }
  return j;
}

inline json sample_set_to_json(const SampleSet& set) {
  return sample_set_to_json(std::vector<SampleSet>{set});
}

/// Parses the document written by sample_set_to_json; returns one SampleSet
/// per channel.
inline std::vector<SampleSet> sample_sets_from_json(const json& j) {
  detail::require(j.is_object(), ErrorKind::format, "sample set JSON must be an object");
  for (const char* key : {"n", "indices", "values"}) {
    detail::require(j.contains(key), ErrorKind::format, std::string("sample set JSON lacks '") + key + "'");
  }
  detail::require(j["n"].is_number_unsigned(), ErrorKind::format, "'n' must be a nonnegative integer");
  detail::require(j["indices"].is_array(), ErrorKind::format, "'indices' must be an array");
  std::vector<std::size_t> indices;
  for (const auto& v : j["indices"]) {
    detail::require(v.is_number_unsigned(), ErrorKind::format, "'indices' must hold nonnegative integers");
    indices.push_back(v.get<std::size_t>());
  }
  std::vector<Vector> values;
  if (j.contains("channels")) {
    detail::require(j["channels"].is_array() && !j["channels"].empty(), ErrorKind::format,
                    "'channels' must be a nonempty array");
    for (const auto& ch : j["channels"]) values.push_back(detail::vector_from_json(ch, "channels"));
  } else {
    values.push_back(detail::vector_from_json(j["values"], "values"));
  }
  std::vector<SampleSet> out;
  for (auto& v : values) {
    SampleSet set;
    set.n = j["n"].get<std::size_t>();
    set.indices = indices;
    set.values = std::move(v);
    set.validate();
    out.push_back(std::move(set));
  }
  return out;
}

inline json report_to_json(const ReconstructionReport& r) {
  json per = json::array();
  for (const auto& c : r.per_channel) {
    per.push_back({{"iterations", c.iterations},
                   {"converged", c.converged},
                   {"nnz", c.nnz},
                   {"objective_final", detail::finite_or_null(c.objective_final)}});
  }
  return {{"fraction", r.fraction},
          {"seed", r.seed},
          {"solver", std::string(to_string(r.solver))},
          {"lambda", r.lambda},
          {"per_channel", std::move(per)},
          {"psnr_db", detail::finite_or_null(r.psnr_db)},
          {"rel_err_l2", r.rel_err_l2},
          {"wall_ms", r.wall_ms}};
}

inline json synth_report_to_json(const SynthReport& r) {
  json trials = json::array();
  for (const auto& t : r.trials) {
    trials.push_back({{"seed", t.seed},
                      {"support_recovered", t.support_recovered},
                      {"rel_err_l2", t.rel_err_l2},
                      {"iterations", t.iterations},
                      {"converged", t.converged},
                      {"nnz", t.nnz}});
  }
  const SynthConfig& c = r.config;
  return {{"n", c.n},
          {"k", c.k},
          {"p", c.p},
          {"k1", c.k1 ? json(*c.k1) : json(nullptr)},
          {"lambda", c.solver_cfg.lambda},
          {"solver", std::string(to_string(c.solver))},
          {"seed", c.seed},
          {"trials", c.trials},
          {"successes", r.successes},
          {"success_rate", r.success_rate},
          {"mean_rel_err_success", detail::finite_or_null(r.mean_rel_err_success)},
          {"per_trial", std::move(trials)},
          {"wall_ms", r.wall_ms}};
}

inline json solver_run_to_json(const SolverRun& r, const char* bytes_key) {
  if (!r.ran) return {{"ran", false}, {"refusal", r.refusal}};
  return {{"ran", true},
          {"objective", detail::finite_or_null(r.objective)},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"nnz", r.nnz},
          {bytes_key, r.state_bytes},
          {"wall_ms", r.wall_ms}};
}

inline json comparison_to_json(const SolverComparison& c) {
  return {{"n", c.n},
          {"p", c.p},
          {"lambda", c.lambda},
          {"lasso_cd", solver_run_to_json(c.lasso, "dense_bytes")},
          {"owlqn", solver_run_to_json(c.owlqn, "operator_bytes")},
          {"objective_rel_diff", detail::finite_or_null(c.objective_rel_diff)},
          {"objectives_agree", c.objectives_agree}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "' for reading");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::format, "'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::io, "write failure on '" + path + "'");
}

}  // namespace csense

#endif  // CSENSE_JSON_IO_HPP
