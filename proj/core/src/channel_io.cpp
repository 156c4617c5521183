#include "permchan/channel_io.hpp"

#include <cstdlib>
#include <fstream>

namespace permchan {

namespace {

double parse_entry(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    char* end = nullptr;
    const double parsed = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') fail(Errc::io_error, "bad decimal string '" + s + "'");
    return parsed;
  }
  fail(Errc::io_error, "matrix entries must be numbers or decimal strings");
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json one_based(const std::vector<int>& indices) {
  nlohmann::json out = nlohmann::json::array();
  for (const int i : indices) out.push_back(i + 1);
  return out;
}

}  // namespace

Channel parse_channel_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) {
    fail(Errc::io_error, "channel JSON needs a 'rows' array");
  }
  const auto& rows = j["rows"];
  if (rows.empty()) fail(Errc::io_error, "channel JSON has no rows");
  std::vector<std::vector<double>> m;
  m.reserve(rows.size());
  for (const auto& row : rows) {
    if (!row.is_array()) fail(Errc::io_error, "each row must be an array");
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& v : row) r.push_back(parse_entry(v));
    m.push_back(std::move(r));
  }
  if (j.contains("input_size") && j["input_size"].get<std::int64_t>() != static_cast<std::int64_t>(m.size())) {
    fail(Errc::io_error, "input_size does not match the row count");
  }
  if (j.contains("output_size") &&
      j["output_size"].get<std::int64_t>() != static_cast<std::int64_t>(m.front().size())) {
    fail(Errc::io_error, "output_size does not match the column count");
  }
  return Channel::validate(m);
}

Channel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::io_error, "malformed JSON in '" + path + "': " + e.what());
  }
  return parse_channel_json(j);
}

nlohmann::json channel_to_json(const Channel& channel) {
  return nlohmann::json{{"input_size", channel.input_size()},
                        {"output_size", channel.output_size()},
                        {"rows", matrix_to_json(channel.matrix())}};
}

nlohmann::json profile_to_json(const ChannelProfile& p) {
  return nlohmann::json{{"input_size", p.input_size},
                        {"output_size", p.output_size},
                        {"rank", p.rank_r},
                        {"row_subset", one_based(p.row_subset)},
                        {"reduced_matrix", matrix_to_json(p.reduced_matrix)},
                        {"right_pinv", matrix_to_json(p.right_pinv)},
                        {"sigma", p.sigma},
                        {"sigma_min", p.sigma_min},
                        {"ext_count", p.ext_count},
                        {"extreme_rows", one_based(p.extreme_rows)},
                        {"nu", p.nu},
                        {"strictly_positive", p.strictly_positive},
                        {"doeblin_eta", p.doeblin_eta}};
}

nlohmann::json bounds_to_json(const CapacityBounds& b) {
  return nlohmann::json{{"lower", b.lower},
                        {"upper", b.upper},
                        {"exact", b.exact},
                        {"rules", b.rules},
                        {"annotations", b.annotations}};
}

nlohmann::json witness_to_json(const DegradationWitness& w) {
  nlohmann::json j = channel_to_json(w.intermediate);
  j["residual"] = w.residual;
  return j;
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.channel_path = j.at("channel").get<std::string>();
    c.scheme = scheme_from_name(j.at("scheme").get<std::string>());
    c.epsilon = j.at("epsilon").get<double>();
    c.n_grid = j.at("n_grid").get<std::vector<std::int64_t>>();
    c.trials = j.at("trials").get<std::int64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.output_path = j.value("output", std::string{});
    c.threads = j.value("threads", 0);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::io_error, std::string("bad experiment config: ") + e.what());
  }
  if (!(c.epsilon > 0.0 && c.epsilon < 0.5)) fail(Errc::io_error, "epsilon must lie in (0, 1/2)");
  if (c.trials < 1) fail(Errc::io_error, "trials must be positive");
  if (c.n_grid.empty()) fail(Errc::io_error, "n_grid must be non-empty");
  for (std::size_t i = 1; i < c.n_grid.size(); ++i) {
    if (c.n_grid[i] <= c.n_grid[i - 1]) fail(Errc::io_error, "n_grid must be strictly increasing");
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::io_error, "malformed JSON in '" + path + "': " + e.what());
  }
  return parse_experiment_config(j);
}

}  // namespace permchan
