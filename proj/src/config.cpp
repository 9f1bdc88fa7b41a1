#include "procctl/config.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "procctl/io.hpp"

namespace procctl {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed,
                  const std::set<std::string>& required = {}) {
  if (!obj.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      throw std::invalid_argument(where + ": unknown key '" + key + "'");
  for (const auto& key : required)
    if (!obj.contains(key))
      throw std::invalid_argument(where + ": missing key '" + key + "'");
}

ShapeFunction parse_shape(const json& j, const std::string& where) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "blackman-paper") {
    require_keys(j, where, {"kind", "g", "k", "l"}, {"g", "k", "l"});
    return ShapeFunction::blackman(j.at("g").get<double>(), j.at("k").get<int>(),
                                   j.at("l").get<int>());
  }
  if (kind == "constant") {
    require_keys(j, where, {"kind", "value"});
    return ShapeFunction::constant(j.value("value", 1.0));
  }
  if (kind == "custom-samples") {
    require_keys(j, where, {"kind", "samples"}, {"samples"});
    ShapeFunction s;
    s.kind = ShapeFunction::Kind::CustomSamples;
    s.samples = j.at("samples").get<std::vector<double>>();
    return s;
  }
  throw std::invalid_argument(where + ": unknown shape kind '" + kind + "'");
}

json shape_to_canonical(const ShapeFunction& s) {
  switch (s.kind) {
    case ShapeFunction::Kind::BlackmanPaper:
      return json{{"kind", "blackman-paper"}, {"g", s.g}, {"k", s.k}, {"l", s.l}};
    case ShapeFunction::Kind::Constant:
      return json{{"kind", "constant"}, {"value", s.value}};
    case ShapeFunction::Kind::CustomSamples:
      return json{{"kind", "custom-samples"}, {"samples", s.samples}};
  }
  throw std::logic_error("unreachable");
}

RydbergParams parse_rydberg_params(const json& j) {
  RydbergParams p;
  if (j.is_null()) return p;
  require_keys(j, "preset.params",
               {"delta_p_rad_per_ns", "delta_s_rad_per_ns", "tau_i_ns", "tau_r_ns",
                "peak_rad_per_ns", "omega0_mode"});
  p.delta_p = j.value("delta_p_rad_per_ns", p.delta_p);
  p.delta_s = j.contains("delta_s_rad_per_ns") ? j.at("delta_s_rad_per_ns").get<double>()
                                               : -p.delta_p;
  p.tau_i = j.value("tau_i_ns", p.tau_i);
  p.tau_r = j.value("tau_r_ns", p.tau_r);
  p.peak = j.value("peak_rad_per_ns", p.peak);
  if (j.contains("omega0_mode")) {
    const std::string mode = j.at("omega0_mode").get<std::string>();
    if (mode == "absorbed")
      p.omega0_mode = Omega0Mode::Absorbed;
    else if (mode == "literal")
      p.omega0_mode = Omega0Mode::Literal;
    else
      throw std::invalid_argument("preset.params.omega0_mode: expected absorbed|literal");
  }
  return p;
}

} // namespace

ProcessMatrix build_target_from_spec(const std::string& spec, const RydbergParams& params,
                                     const OperatorBasis& basis) {
  auto bad = [&] { return std::invalid_argument("malformed target spec: " + spec); };
  auto parse_tf = [&](const std::string& part) {
    if (part.rfind("tf=", 0) != 0) throw bad();
    return std::stod(part.substr(3));
  };
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t next = spec.find(':', pos);
    if (next == std::string::npos) next = spec.size();
    parts.push_back(spec.substr(pos, next - pos));
    pos = next + 1;
  }
  if (parts.empty()) throw bad();
  if (parts[0] == "gate") {
    // gates without a tf are frame-independent only in absorbed mode; the
    // frame transform for a literal-mode gate needs tf, so require it there
    if (parts.size() == 2 && parts[1] == "identity")
      return gate_target(Mat::Identity(basis.dim(), basis.dim()), basis);
    if (parts.size() >= 3 && parts[1] == "phase") {
      double phi = parts[2] == "pi" ? kPi : std::stod(parts[2]);
      if (basis.dim() < 2) throw std::invalid_argument("dimension-error: phase gate needs dim >= 2");
      Mat o = Mat::Identity(basis.dim(), basis.dim());
      o(1, 1) = std::exp(cx(0, phi));
      ProcessMatrix xi = gate_target(o, basis);
      if (params.omega0_mode == Omega0Mode::Literal) {
        if (parts.size() != 4) throw bad();
        return to_working_frame(xi, params, parse_tf(parts[3]), basis);
      }
      if (parts.size() != 3) throw bad();
      return xi;
    }
    throw bad();
  }
  if (parts[0] == "decoherence" && parts.size() == 2) {
    // identical in both omega0 modes (frame conjugations cancel)
    double tf = parse_tf(parts[1]);
    Mat h_s = Mat::Zero(4, 4);
    h_s(2, 2) = params.delta_p;
    h_s(3, 3) = params.delta_p + params.delta_s;
    return decoherence_suppression_target(tf, h_s, basis);
  }
  if (parts[0] == "depolarizing" && parts.size() == 2) {
    double tf = parse_tf(parts[1]);
    return to_working_frame(depolarizing_target(error_probability(tf, params.tau_i), basis),
                            params, tf, basis);
  }
  throw bad();
}

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
  require_keys(doc, "config",
               {"schema", "preset", "model", "grid", "objective", "fields", "krotov",
                "output", "oracle"});
  if (doc.value("schema", "") != "procctl-config-v1")
    throw std::invalid_argument("config: expected schema procctl-config-v1");

  RunConfig cfg;
  RydbergParams params;

  if (doc.contains("preset")) {
    const json& pre = doc.at("preset");
    require_keys(pre, "preset", {"scenario", "params", "dt_ns"}, {"scenario"});
    params = parse_rydberg_params(pre.value("params", json()));
    double dt = pre.value("dt_ns", 1.0);
    OperatorBasis basis = OperatorBasis::gell_mann(4);
    Scenario sc = scenario(scenario_kind_from_string(pre.at("scenario").get<std::string>()),
                           params, basis, dt);
    cfg.model = std::move(sc.model);
    cfg.grid = sc.grid;
    cfg.guess = std::move(sc.guess);
    cfg.objective = std::move(sc.objective);
  } else {
    require_keys(doc, "config", {"schema", "model", "grid", "objective", "fields",
                                 "krotov", "output", "oracle"},
                 {"model", "grid", "objective", "fields"});
    const json& mj = doc.at("model");
    require_keys(mj, "model", {"dim", "drift", "controls", "jumps"}, {"dim", "drift"});
    cfg.model.dim = mj.at("dim").get<int>();
    cfg.model.drift = matrix_from_json(mj.at("drift"));
    if (mj.contains("controls"))
      for (const auto& c : mj.at("controls")) cfg.model.controls.push_back(matrix_from_json(c));
    if (mj.contains("jumps"))
      for (const auto& jj : mj.at("jumps")) {
        require_keys(jj, "model.jumps[]", {"op", "rate"}, {"op", "rate"});
        cfg.model.jumps.push_back({matrix_from_json(jj.at("op")), jj.at("rate").get<double>()});
      }
    cfg.model.validate();
  }

  if (doc.contains("grid")) {
    const json& gj = doc.at("grid");
    require_keys(gj, "grid", {"t_f_ns", "n_steps"}, {"t_f_ns", "n_steps"});
    cfg.grid = TimeGrid(gj.at("t_f_ns").get<double>(), gj.at("n_steps").get<int>());
  } else if (!doc.contains("preset")) {
    throw std::invalid_argument("config: missing grid");
  }

  if (doc.contains("fields")) {
    const json& fj = doc.at("fields");
    if (!fj.is_array()) throw std::invalid_argument("fields: expected an array");
    cfg.guess.clear();
    for (const auto& f : fj) {
      require_keys(f, "fields[]", {"name", "shape", "peak", "weight"},
                   {"name", "shape", "peak", "weight"});
      cfg.guess.push_back(guess_pulse(f.at("name").get<std::string>(),
                                      parse_shape(f.at("shape"), "fields[].shape"),
                                      f.at("peak").get<double>(),
                                      f.at("weight").get<double>(), cfg.grid));
    }
  }
  if (cfg.guess.size() != cfg.model.controls.size())
    throw std::invalid_argument("config: field count must match control operators");

  if (doc.contains("objective")) {
    const json& oj = doc.at("objective");
    require_keys(oj, "objective", {"w0", "target_file", "builder", "target"});
    cfg.objective.w0 = oj.value("w0", 1.0);
    OperatorBasis basis = OperatorBasis::gell_mann(cfg.model.dim);
    int sources = oj.contains("target_file") + oj.contains("builder") + oj.contains("target");
    if (sources > 1)
      throw std::invalid_argument("objective: give exactly one of target_file/builder/target");
    if (oj.contains("target_file"))
      cfg.objective.target =
          process_matrix_from_json(read_json_file(base_dir / oj.at("target_file").get<std::string>()));
    else if (oj.contains("builder"))
      cfg.objective.target =
          build_target_from_spec(oj.at("builder").get<std::string>(), params, basis);
    else if (oj.contains("target"))
      cfg.objective.target = process_matrix_from_json(oj.at("target"));
    else if (!doc.contains("preset"))
      throw std::invalid_argument("objective: missing target");
  } else if (!doc.contains("preset")) {
    throw std::invalid_argument("config: missing objective");
  }

  if (doc.contains("krotov")) {
    const json& kj = doc.at("krotov");
    require_keys(kj, "krotov",
                 {"max_iters", "j_tolerance", "stall_tolerance", "zeta_A", "zeta_B",
                  "A_override", "retry_limit", "checkpoint_every"});
    cfg.krotov.max_iters = kj.value("max_iters", cfg.krotov.max_iters);
    cfg.krotov.j_tolerance = kj.value("j_tolerance", cfg.krotov.j_tolerance);
    cfg.krotov.stall_tolerance = kj.value("stall_tolerance", cfg.krotov.stall_tolerance);
    cfg.krotov.zeta_a = kj.value("zeta_A", cfg.krotov.zeta_a);
    cfg.krotov.zeta_b = kj.value("zeta_B", cfg.krotov.zeta_b);
    if (kj.contains("A_override")) cfg.krotov.a_override = kj.at("A_override").get<double>();
    cfg.krotov.retry_limit = kj.value("retry_limit", cfg.krotov.retry_limit);
    cfg.krotov.checkpoint_every = kj.value("checkpoint_every", cfg.krotov.checkpoint_every);
  }

  if (doc.contains("output")) {
    const json& oj = doc.at("output");
    require_keys(oj, "output", {"directory"});
    cfg.output_dir = oj.value("directory", std::string("out"));
  }

  if (doc.contains("oracle")) {
    const json& oj = doc.at("oracle");
    require_keys(oj, "oracle", {"samples", "seed", "tolerance"});
    cfg.oracle_samples = oj.value("samples", cfg.oracle_samples);
    cfg.oracle_seed = oj.value("seed", cfg.oracle_seed);
    cfg.oracle_tolerance = oj.value("tolerance", cfg.oracle_tolerance);
  }
  return cfg;
}

json dump_run_config(const RunConfig& cfg) {
  json controls = json::array();
  for (const auto& c : cfg.model.controls) controls.push_back(matrix_to_json(c));
  json jumps = json::array();
  for (const auto& j : cfg.model.jumps)
    jumps.push_back(json{{"op", matrix_to_json(j.op)}, {"rate", j.rate}});
  json fields = json::array();
  for (const auto& f : cfg.guess) {
    // canonical form re-derives samples from shape * peak; recover peak
    double peak = 0.0;
    for (int k = 0; k < cfg.grid.n_steps; ++k) {
      double s = f.shape.eval_mid(cfg.grid, k);
      if (s > 1e-12) {
        peak = f.samples[k] / s;
        break;
      }
    }
    fields.push_back(json{{"name", f.name},
                          {"shape", shape_to_canonical(f.shape)},
                          {"peak", peak},
                          {"weight", f.weight}});
  }
  json krotov = json{{"max_iters", cfg.krotov.max_iters},
                     {"j_tolerance", cfg.krotov.j_tolerance},
                     {"stall_tolerance", cfg.krotov.stall_tolerance},
                     {"zeta_A", cfg.krotov.zeta_a},
                     {"zeta_B", cfg.krotov.zeta_b},
                     {"retry_limit", cfg.krotov.retry_limit},
                     {"checkpoint_every", cfg.krotov.checkpoint_every}};
  if (cfg.krotov.a_override) krotov["A_override"] = *cfg.krotov.a_override;
  return json{
      {"schema", "procctl-config-v1"},
      {"model",
       {{"dim", cfg.model.dim},
        {"drift", matrix_to_json(cfg.model.drift)},
        {"controls", std::move(controls)},
        {"jumps", std::move(jumps)}}},
      {"grid", {{"t_f_ns", cfg.grid.t_f}, {"n_steps", cfg.grid.n_steps}}},
      {"fields", std::move(fields)},
      {"objective",
       {{"w0", cfg.objective.w0},
        {"target", process_matrix_to_json(cfg.objective.target, cfg.model.dim,
                                          BasisKind::GellMann)}}},
      {"krotov", std::move(krotov)},
      {"output", {{"directory", cfg.output_dir.string()}}},
      {"oracle",
       {{"samples", cfg.oracle_samples},
        {"seed", cfg.oracle_seed},
        {"tolerance", cfg.oracle_tolerance}}}};
}

json preset_config(ScenarioKind kind, const RydbergParams& params, double dt_ns) {
  RunConfig cfg;
  OperatorBasis basis = OperatorBasis::gell_mann(4);
  Scenario sc = scenario(kind, params, basis, dt_ns);
  cfg.model = std::move(sc.model);
  cfg.grid = sc.grid;
  cfg.guess = std::move(sc.guess);
  cfg.objective = std::move(sc.objective);
  if (kind == ScenarioKind::GateSimulation) cfg.krotov.zeta_a = 0.01;
  return dump_run_config(cfg);
}

} // namespace procctl
