#include "rosenau/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rosenau/errors.hpp"

namespace rosenau {

namespace {

using nlohmann::json;

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    const auto [line, column] = line_column(text, err.byte);
    throw ConfigError("config syntax error at line " + std::to_string(line) +
                      ", column " + std::to_string(column) + ": " +
                      err.what());
  }
}

/// Translates missing-key / wrong-type accesses into configuration errors.
template <typename Fn>
auto with_config_errors(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& err) {
    throw ConfigError(std::string("config semantic error: ") + err.what());
  }
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                         const std::string& context) {
  for (const auto& item : obj.items()) {
    if (std::find(known.begin(), known.end(), item.key()) != known.end()) {
      continue;
    }
    std::string nearest = known.front();
    std::size_t best = edit_distance(item.key(), nearest);
    for (const std::string& k : known) {
      const std::size_t d = edit_distance(item.key(), k);
      if (d < best) {
        best = d;
        nearest = k;
      }
    }
    throw ConfigError("unknown key \"" + item.key() + "\" in " + context +
                      "; nearest known key is \"" + nearest + "\"");
  }
}

double require_positive(const json& obj, const std::string& key) {
  const double v = obj.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError("config field \"" + key + "\" must be positive");
  }
  return v;
}

InitialSpec parse_initial(const json& obj) {
  InitialSpec spec;
  const std::string type = obj.at("type").get<std::string>();
  if (type == "gaussian") {
    reject_unknown_keys(obj, {"type", "amplitude", "center", "width"},
                        "\"initial\"");
    spec.kind = InitialSpec::Kind::Gaussian;
    if (obj.contains("amplitude")) spec.amplitude = obj["amplitude"].get<double>();
    if (obj.contains("center")) spec.center = obj["center"].get<double>();
    if (obj.contains("width")) spec.width = require_positive(obj, "width");
  } else if (type == "riemann") {
    reject_unknown_keys(obj, {"type", "u_left", "u_right", "width"},
                        "\"initial\"");
    spec.kind = InitialSpec::Kind::Riemann;
    spec.u_left = obj.at("u_left").get<double>();
    spec.u_right = obj.at("u_right").get<double>();
    if (obj.contains("width")) spec.riemann_width = require_positive(obj, "width");
  } else {
    throw ConfigError("config field \"initial.type\" must be \"gaussian\" or "
                      "\"riemann\", got \"" + type + "\"");
  }
  return spec;
}

json initial_to_json(const InitialSpec& spec) {
  json obj;
  if (spec.kind == InitialSpec::Kind::Gaussian) {
    obj["type"] = "gaussian";
    obj["amplitude"] = spec.amplitude;
    obj["center"] = spec.center;
    obj["width"] = spec.width;
  } else {
    obj["type"] = "riemann";
    obj["u_left"] = spec.u_left;
    obj["u_right"] = spec.u_right;
    if (spec.riemann_width > 0.0) obj["width"] = spec.riemann_width;
  }
  return obj;
}

void write_u32le(std::ostream& out, std::uint32_t v) {
  char buf[4];
  for (int i = 0; i < 4; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 4);
}

void write_u64le(std::ostream& out, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(buf, 8);
}

void write_f64le(std::ostream& out, double v) {
  write_u64le(out, std::bit_cast<std::uint64_t>(v));
}

bool read_exact(std::istream& in, char* buf, std::size_t n) {
  in.read(buf, static_cast<std::streamsize>(n));
  return static_cast<std::size_t>(in.gcount()) == n;
}

std::uint32_t read_u32le(std::istream& in, const char* what) {
  char buf[4];
  if (!read_exact(in, buf, 4)) {
    throw IoError(std::string("snapshot: truncated ") + what);
  }
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) {
    v = (v << 8) | static_cast<std::uint8_t>(buf[i]);
  }
  return v;
}

std::uint64_t read_u64le(std::istream& in, const char* what) {
  char buf[8];
  if (!read_exact(in, buf, 8)) {
    throw IoError(std::string("snapshot: truncated ") + what);
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) {
    v = (v << 8) | static_cast<std::uint8_t>(buf[i]);
  }
  return v;
}

double read_f64le(std::istream& in, const char* what) {
  return std::bit_cast<double>(read_u64le(in, what));
}

} // namespace

namespace {

RunConfig parse_run_config_object(const json& root) {
  reject_unknown_keys(root,
                      {"variant", "eps", "beta", "coupling_d", "grid", "t_end",
                       "initial", "safety", "output_stride", "initial_bound_c0",
                       "override_initial_check"},
                      "the config root");

  RunConfig cfg;
  cfg.variant = parse_variant(root.at("variant").get<std::string>());
  cfg.eps = root.at("eps").get<double>();
  if (!(cfg.eps >= 0.0) || !std::isfinite(cfg.eps)) {
    throw ConfigError("config field \"eps\" must be positive or zero");
  }
  const bool has_beta = root.contains("beta");
  const bool has_d = root.contains("coupling_d");
  if (has_beta == has_d) {
    throw ConfigError(
        "config must set exactly one of \"beta\" and \"coupling_d\"");
  }
  if (has_beta) {
    cfg.beta = require_positive(root, "beta");
  } else {
    cfg.coupling_d = require_positive(root, "coupling_d");
    const double d = *cfg.coupling_d;
    cfg.beta = d * d * cfg.eps * cfg.eps * cfg.eps * cfg.eps;
    if (!(cfg.beta > 0.0)) {
      throw ConfigError("config field \"coupling_d\" requires eps > 0");
    }
  }

  const json& grid = root.at("grid");
  reject_unknown_keys(grid, {"half_length", "n_points"}, "\"grid\"");
  cfg.half_length = require_positive(grid, "half_length");
  cfg.n_points = grid.at("n_points").get<Eigen::Index>();
  if (cfg.n_points < 8 || cfg.n_points % 2 != 0) {
    throw ConfigError("config field \"n_points\" must be even and >= 8");
  }

  cfg.t_end = require_positive(root, "t_end");
  if (root.contains("initial")) cfg.initial = parse_initial(root["initial"]);
  if (root.contains("safety")) {
    cfg.safety = root["safety"].get<double>();
    if (!(cfg.safety > 0.0) || cfg.safety > 1.0) {
      throw ConfigError("config field \"safety\" must lie in (0, 1]");
    }
  }
  if (root.contains("output_stride")) {
    cfg.output_stride = root["output_stride"].get<Eigen::Index>();
    if (cfg.output_stride < 1) {
      throw ConfigError("config field \"output_stride\" must be positive");
    }
  }
  if (root.contains("initial_bound_c0")) {
    cfg.initial_bound_c0 = require_positive(root, "initial_bound_c0");
  }
  if (root.contains("override_initial_check")) {
    cfg.override_initial_check = root["override_initial_check"].get<bool>();
  }
  return cfg;
}

} // namespace

RunConfig parse_run_config(const std::string& text) {
  const json root = parse_json(text);
  if (!root.is_object()) throw ConfigError("config root must be an object");
  return with_config_errors([&] { return parse_run_config_object(root); });
}

std::string serialize_run_config(const RunConfig& cfg) {
  json root;
  root["variant"] = variant_name(cfg.variant);
  root["eps"] = cfg.eps;
  if (cfg.coupling_d) {
    root["coupling_d"] = *cfg.coupling_d;
  } else {
    root["beta"] = cfg.beta;
  }
  root["grid"] = {{"half_length", cfg.half_length},
                  {"n_points", cfg.n_points}};
  root["t_end"] = cfg.t_end;
  root["initial"] = initial_to_json(cfg.initial);
  root["safety"] = cfg.safety;
  root["output_stride"] = cfg.output_stride;
  root["initial_bound_c0"] = cfg.initial_bound_c0;
  root["override_initial_check"] = cfg.override_initial_check;
  return root.dump(2) + "\n";
}

ModelParams model_params(const RunConfig& cfg) {
  ModelParams p;
  p.variant = cfg.variant;
  p.eps = cfg.eps;
  p.beta = cfg.beta;
  p.coupling_d = cfg.coupling_d;
  validate(p);
  return p;
}

Field build_initial_field(const RunConfig& cfg, const GridSpec& grid) {
  if (cfg.initial.kind == InitialSpec::Kind::Gaussian) {
    const double a = cfg.initial.amplitude;
    const double c = cfg.initial.center;
    const double w = cfg.initial.width;
    return make_field(grid, [=](double x) {
      const double s = (x - c) / w;
      return a * std::exp(-s * s);
    });
  }
  const double width =
      cfg.initial.riemann_width > 0.0 ? cfg.initial.riemann_width : cfg.eps;
  return mollified_riemann(cfg.initial.u_left, cfg.initial.u_right, width,
                           grid);
}

namespace {

SweepConfig parse_sweep_config_object(const json& root) {
  reject_unknown_keys(root,
                      {"variant", "eps_sequence", "coupling_d", "c0", "initial",
                       "t_end", "grid", "window", "p_values", "safety", "cfl",
                       "ref_multiplier", "ref_time_samples", "snapshot_target",
                       "initial_bound_c0"},
                      "the sweep config root");

  SweepConfig cfg;
  cfg.variant = parse_variant(root.at("variant").get<std::string>());
  for (const json& e : root.at("eps_sequence")) {
    cfg.eps_sequence.push_back(e.get<double>());
  }
  if (root.contains("coupling_d")) {
    cfg.coupling_d = require_positive(root, "coupling_d");
  }
  if (root.contains("c0")) cfg.c0 = require_positive(root, "c0");

  const json& initial = root.at("initial");
  reject_unknown_keys(initial, {"u_left", "u_right"}, "\"initial\"");
  cfg.initial.u_left = initial.at("u_left").get<double>();
  cfg.initial.u_right = initial.at("u_right").get<double>();

  cfg.t_end = require_positive(root, "t_end");
  const json& grid = root.at("grid");
  reject_unknown_keys(grid, {"half_length"}, "\"grid\"");
  cfg.half_length = require_positive(grid, "half_length");

  const json& window = root.at("window");
  reject_unknown_keys(window, {"t_min", "t_max", "x_min", "x_max"},
                      "\"window\"");
  if (window.contains("t_min")) cfg.window.t_min = window["t_min"].get<double>();
  cfg.window.t_max = window.at("t_max").get<double>();
  cfg.window.x_min = window.at("x_min").get<double>();
  cfg.window.x_max = window.at("x_max").get<double>();

  for (const json& p : root.at("p_values")) {
    cfg.p_values.push_back(p.get<double>());
  }
  if (root.contains("safety")) cfg.safety = require_positive(root, "safety");
  if (root.contains("cfl")) cfg.cfl = require_positive(root, "cfl");
  if (root.contains("ref_multiplier")) {
    cfg.ref_multiplier = root["ref_multiplier"].get<int>();
  }
  if (root.contains("ref_time_samples")) {
    cfg.ref_time_samples = root["ref_time_samples"].get<int>();
  }
  if (root.contains("snapshot_target")) {
    cfg.snapshot_target = root["snapshot_target"].get<int>();
  }
  if (root.contains("initial_bound_c0")) {
    cfg.initial_bound_c0 = require_positive(root, "initial_bound_c0");
  }
  return cfg;
}

} // namespace

SweepConfig parse_sweep_config(const std::string& text) {
  const json root = parse_json(text);
  if (!root.is_object()) throw ConfigError("config root must be an object");
  return with_config_errors([&] { return parse_sweep_config_object(root); });
}

std::string serialize_sweep_config(const SweepConfig& cfg) {
  json root;
  root["variant"] = variant_name(cfg.variant);
  root["eps_sequence"] = cfg.eps_sequence;
  if (cfg.coupling_d) root["coupling_d"] = *cfg.coupling_d;
  if (cfg.c0) root["c0"] = *cfg.c0;
  root["initial"] = {{"u_left", cfg.initial.u_left},
                     {"u_right", cfg.initial.u_right}};
  root["t_end"] = cfg.t_end;
  root["grid"] = {{"half_length", cfg.half_length}};
  root["window"] = {{"t_min", cfg.window.t_min},
                    {"t_max", cfg.window.t_max},
                    {"x_min", cfg.window.x_min},
                    {"x_max", cfg.window.x_max}};
  root["p_values"] = cfg.p_values;
  root["safety"] = cfg.safety;
  root["cfl"] = cfg.cfl;
  root["ref_multiplier"] = cfg.ref_multiplier;
  root["ref_time_samples"] = cfg.ref_time_samples;
  root["snapshot_target"] = cfg.snapshot_target;
  root["initial_bound_c0"] = cfg.initial_bound_c0;
  return root.dump(2) + "\n";
}

void write_snapshot(const Field& f, std::ostream& sink) {
  sink.write("RSNU", 4);
  write_u32le(sink, kSnapshotVersion);
  write_u64le(sink, static_cast<std::uint64_t>(f.grid.n_points));
  write_f64le(sink, f.time);
  write_f64le(sink, f.grid.half_length);
  for (Eigen::Index i = 0; i < f.samples.size(); ++i) {
    write_f64le(sink, f.samples[i]);
  }
  if (!sink) throw IoError("snapshot: write failure");
}

Field read_snapshot(std::istream& source) {
  char magic[4];
  if (!read_exact(source, magic, 4)) {
    throw IoError("snapshot: truncated header (missing magic)");
  }
  if (std::memcmp(magic, "RSNU", 4) != 0) {
    throw IoError("snapshot: bad magic \"" + std::string(magic, 4) + "\"");
  }
  const std::uint32_t version = read_u32le(source, "header (version)");
  if (version != kSnapshotVersion) {
    throw IoError("snapshot: unsupported format version " +
                  std::to_string(version));
  }
  const std::uint64_t n = read_u64le(source, "header (point count)");
  const double time = read_f64le(source, "header (time)");
  const double half_length = read_f64le(source, "header (half_length)");

  GridSpec grid;
  try {
    grid = make_grid(half_length, static_cast<Eigen::Index>(n));
  } catch (const ConfigError& err) {
    throw IoError(std::string("snapshot: invalid grid parameters: ") +
                  err.what());
  }
  Field f;
  f.grid = std::move(grid);
  f.time = time;
  f.samples.resize(static_cast<Eigen::Index>(n));
  for (std::uint64_t i = 0; i < n; ++i) {
    f.samples[static_cast<Eigen::Index>(i)] = read_f64le(source, "payload");
  }
  return f;
}

void write_snapshot_file(const Field& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open \"" + path + "\" for writing");
  write_snapshot(f, out);
}

Field read_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open \"" + path + "\" for reading");
  return read_snapshot(in);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_run_directory(const RunConfig& config, const Trajectory& traj,
                         const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory \"" + dir + "\"");
  {
    std::ofstream out(dir + "/run.json");
    if (!out) throw IoError("cannot write \"" + dir + "/run.json\"");
    out << serialize_run_config(config);
  }
  {
    std::ofstream out(dir + "/ledger.csv");
    if (!out) throw IoError("cannot write \"" + dir + "/ledger.csv\"");
    export_ledger_csv(traj, out);
  }
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%06zu.rsnu", i);
    write_snapshot_file(traj.snapshots[i], dir + "/" + name);
  }
}

RunDirectory read_run_directory(const std::string& dir) {
  namespace fs = std::filesystem;
  RunDirectory out;
  {
    std::ifstream in(dir + "/run.json");
    if (!in) throw IoError("cannot open \"" + dir + "/run.json\"");
    std::ostringstream text;
    text << in.rdbuf();
    out.config = parse_run_config(text.str());
  }
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("snap_") && name.ends_with(".rsnu")) {
      paths.push_back(entry.path().string());
    }
  }
  if (paths.empty()) {
    throw IoError("no snapshots found in \"" + dir + "\"");
  }
  std::sort(paths.begin(), paths.end());
  std::vector<Field> fields;
  fields.reserve(paths.size());
  for (const std::string& p : paths) fields.push_back(read_snapshot_file(p));
  out.trajectory = trajectory_from_snapshots(model_params(out.config),
                                             std::move(fields));
  return out;
}

void export_ledger_csv(const Trajectory& traj, std::ostream& sink) {
  if (traj.ledger.empty()) {
    throw ConfigError("export_ledger_csv: empty trajectory");
  }
  sink << "t,l2,l4,linf,h1_semi,h2_semi,energy,dissipation\n";
  const double beta = traj.params.beta;
  for (const LedgerEntry& e : traj.ledger) {
    sink << format_double(e.time) << ',' << format_double(e.norms.l2) << ','
         << format_double(e.norms.l4) << ',' << format_double(e.norms.linf)
         << ',' << format_double(e.norms.h1_semi) << ','
         << format_double(e.norms.h2_semi) << ','
         << format_double(energy(e.norms, beta)) << ','
         << format_double(e.dissipation) << '\n';
  }
  if (!sink) throw IoError("export_ledger_csv: write failure");
}

void export_report_csv(const ConvergenceReport& report, std::ostream& sink) {
  if (report.rows.empty()) {
    throw ConfigError("export_report_csv: empty report");
  }
  sink << "eps,beta,n,dt,err_l1,err_l2,err_l3,entropy_residual,monitor_max,"
          "wall_s\n";
  const std::vector<double>& ps = report.plan.config.p_values;
  for (const RunRow& row : report.rows) {
    double err[3] = {std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN()};
    for (std::size_t i = 0; i < ps.size() && i < row.lp_errors.size(); ++i) {
      for (int target = 1; target <= 3; ++target) {
        if (ps[i] == static_cast<double>(target)) {
          err[target - 1] = row.lp_errors[i];
        }
      }
    }
    sink << format_double(row.eps) << ',' << format_double(row.beta) << ','
         << row.n_points << ',' << format_double(row.dt) << ','
         << format_double(err[0]) << ',' << format_double(err[1]) << ','
         << format_double(err[2]) << ','
         << format_double(row.entropy_residual) << ','
         << format_double(row.monitor_max) << ','
         << format_double(row.wall_seconds) << '\n';
  }
  if (!sink) throw IoError("export_report_csv: write failure");
}

} // namespace rosenau
