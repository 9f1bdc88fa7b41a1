#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "procctl/krotov.hpp"
#include "procctl/rydberg.hpp"

namespace procctl {

/// Fully resolved run configuration (presets expanded, targets materialized).
struct RunConfig {
  LindbladModel model;
  TimeGrid grid;
  ControlFieldSet guess;
  Objective objective;
  KrotovConfig krotov;
  std::filesystem::path output_dir = "out";
  int oracle_samples = 10;
  unsigned oracle_seed = 12345;
  double oracle_tolerance = 1e-6;
};

/// Parses and schema-validates a config document. Unknown keys are rejected.
/// `base_dir` anchors relative target-file paths.
RunConfig parse_run_config(const nlohmann::json& doc,
                           const std::filesystem::path& base_dir);

/// Canonical (fully explicit) form of a resolved config; parse(dump(c))
/// resolves to the same computation.
nlohmann::json dump_run_config(const RunConfig& config);

/// Builder specs: "gate:identity", "gate:phase:<angle|pi>[:tf=<ns>]",
/// "decoherence:tf=<ns>", "depolarizing:tf=<ns>". Targets are stated in the
/// literal frame; literal omega0 mode maps them into the working frame
/// (phase gates then need tf).
ProcessMatrix build_target_from_spec(const std::string& spec, const RydbergParams& params,
                                     const OperatorBasis& basis);

/// Config for a named scenario preset, expanded to canonical form.
nlohmann::json preset_config(ScenarioKind kind, const RydbergParams& params, double dt_ns);

} // namespace procctl
