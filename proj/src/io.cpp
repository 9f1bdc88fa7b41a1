#include "procctl/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "procctl/objectives.hpp"

namespace procctl {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

json matrix_to_json(const Mat& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

Mat matrix_from_json(const json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  const auto rows = re.size();
  if (rows == 0) throw std::invalid_argument("matrix: empty");
  const auto cols = re.at(0).size();
  if (im.size() != rows) throw std::invalid_argument("matrix: re/im shape mismatch");
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (re.at(i).size() != cols || im.at(i).size() != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          cx(re.at(i).at(c).get<double>(), im.at(i).at(c).get<double>());
  }
  return m;
}

json process_matrix_to_json(const ProcessMatrix& chi, int dim, BasisKind basis) {
  return json{{"schema", "procctl-process-matrix-v1"},
              {"dim", dim},
              {"basis", to_string(basis)},
              {"matrix", matrix_to_json(chi.m)}};
}

ProcessMatrix process_matrix_from_json(const json& j, int* dim_out, BasisKind* basis_out) {
  if (j.at("schema").get<std::string>() != "procctl-process-matrix-v1")
    throw std::invalid_argument("process matrix: unknown schema");
  if (dim_out) *dim_out = j.at("dim").get<int>();
  if (basis_out) *basis_out = basis_kind_from_string(j.at("basis").get<std::string>());
  ProcessMatrix chi;
  chi.m = matrix_from_json(j.at("matrix"));
  return chi;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  return json::parse(in);
}

void write_pulse_csv(const std::filesystem::path& path, const ControlFieldSet& fields,
                     const TimeGrid& grid) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "t_ns";
  for (const auto& f : fields) out << ",omega_" << (f.name.empty() ? "field" : f.name.substr(0, 1)) << "_rad_per_ns";
  out << "\n";
  for (int k = 0; k < grid.n_steps; ++k) {
    out << format_double(grid.midpoint(k));
    for (const auto& f : fields) out << "," << format_double(f.samples[k]);
    out << "\n";
  }
}

void write_spectrum_csv(const std::filesystem::path& path,
                        const std::vector<SpectrumPoint>& spectrum) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "omega_rad_per_ns,magnitude\n";
  for (const auto& p : spectrum)
    out << format_double(p.omega) << "," << format_double(p.magnitude) << "\n";
}

void write_convergence_csv(const std::filesystem::path& path,
                           const std::vector<IterationRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "n,J,F,J_f,A_n,retries\n";
  for (const auto& r : trace)
    out << r.n << "," << format_double(r.j) << "," << format_double(r.f) << ","
        << format_double(r.j_f) << "," << format_double(r.a_n) << "," << r.retries << "\n";
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj,
                          const ProcessMatrix* target, double w0) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "t_ns,trace_re,min_eigenvalue,hermiticity_error";
  if (target) out << ",fidelity";
  out << "\n";
  for (int k = 0; k <= traj.grid.n_steps; ++k) {
    ProcessMatrix chi{traj.points[k]};
    out << format_double(traj.grid.point(k)) << "," << format_double(chi.trace_real()) << ","
        << format_double(chi.min_eigenvalue()) << ","
        << format_double(chi.hermiticity_error());
    if (target) out << "," << format_double(-fidelity(chi, *target, w0));
    out << "\n";
  }
}

namespace {

json shape_to_json(const ShapeFunction& s) {
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

ShapeFunction shape_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "blackman-paper")
    return ShapeFunction::blackman(j.at("g").get<double>(), j.at("k").get<int>(),
                                   j.at("l").get<int>());
  if (kind == "constant") return ShapeFunction::constant(j.at("value").get<double>());
  if (kind == "custom-samples") {
    ShapeFunction s;
    s.kind = ShapeFunction::Kind::CustomSamples;
    s.samples = j.at("samples").get<std::vector<double>>();
    return s;
  }
  throw std::invalid_argument("unknown shape kind: " + kind);
}

} // namespace

json checkpoint_to_json(const KrotovRun& run) {
  json fields = json::array();
  for (const auto& f : run.fields) {
    fields.push_back(json{{"name", f.name},
                          {"samples", f.samples},
                          {"reference", f.reference},
                          {"weight", f.weight},
                          {"shape", shape_to_json(f.shape)}});
  }
  json trace = json::array();
  for (const auto& r : run.trace)
    trace.push_back(json{{"n", r.n},
                         {"J", r.j},
                         {"F", r.f},
                         {"J_f", r.j_f},
                         {"A_n", r.a_n},
                         {"retries", r.retries}});
  return json{{"schema", "procctl-checkpoint-v1"},
              {"iteration", run.iterations},
              {"A_n", run.a_n},
              {"fields", std::move(fields)},
              {"trace", std::move(trace)}};
}

ResumeState checkpoint_from_json(const json& j, const TimeGrid& grid) {
  if (j.at("schema").get<std::string>() != "procctl-checkpoint-v1")
    throw std::invalid_argument("checkpoint: unknown schema");
  ResumeState state;
  state.a_n = j.at("A_n").get<double>();
  for (const auto& fj : j.at("fields")) {
    ControlField f;
    f.name = fj.at("name").get<std::string>();
    f.samples = fj.at("samples").get<std::vector<double>>();
    f.reference = fj.at("reference").get<std::vector<double>>();
    f.weight = fj.at("weight").get<double>();
    f.shape = shape_from_json(fj.at("shape"));
    if (static_cast<int>(f.samples.size()) != grid.n_steps)
      throw std::invalid_argument("checkpoint: field sampling does not match grid");
    state.fields.push_back(std::move(f));
  }
  for (const auto& rj : j.at("trace"))
    state.trace.push_back({rj.at("n").get<int>(), rj.at("J").get<double>(),
                           rj.at("F").get<double>(), rj.at("J_f").get<double>(),
                           rj.at("A_n").get<double>(), rj.at("retries").get<int>()});
  return state;
}

} // namespace procctl
