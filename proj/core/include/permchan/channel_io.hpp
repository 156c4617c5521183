#pragma once

#include <string>

#include <json.hpp>

#include "permchan/analysis.hpp"
#include "permchan/capacity.hpp"
#include "permchan/channel.hpp"
#include "permchan/degradation.hpp"
#include "permchan/simulate.hpp"

namespace permchan {

// Channel interchange format:
//   {"input_size": m, "output_size": n, "rows": [[...], ...], "labels": [...]}
// Row entries may be JSON numbers or decimal strings ("0.3333333333333333");
// strings survive round-tripping of exact decimals. Labels are optional
// metadata and do not affect semantics. Indices reported anywhere in JSON
// (row subsets, extreme rows) are 1-based.
Channel parse_channel_json(const nlohmann::json& j);
Channel load_channel(const std::string& path);
nlohmann::json channel_to_json(const Channel& channel);

nlohmann::json profile_to_json(const ChannelProfile& profile);
nlohmann::json bounds_to_json(const CapacityBounds& bounds);
nlohmann::json witness_to_json(const DegradationWitness& witness);

// Experiment configuration:
//   {"channel": path, "scheme": name, "epsilon": e, "n_grid": [...],
//    "trials": t, "seed": s, "output": path, "threads": optional}
ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace permchan
