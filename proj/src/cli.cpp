#include "sscap/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sscap/channels.hpp"
#include "sscap/coherent.hpp"
#include "sscap/depol.hpp"
#include "sscap/verify.hpp"

namespace sscap::cli {

namespace {

// Bad user input, reported with exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double rounded(double x) {
  const std::string s = format_number(x);
  double back = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), back);
  return back;
}

struct CurveConfig {
  std::string kinds = "hashing,hull_ub";
  double p_min = 0.0;
  double p_max = 0.25;
  int steps = 251;
  std::string format = "csv";
  std::string out;
  int threads = 1;
  double q = 0.0;
};

std::vector<depol::Kind> parse_kinds(const std::string& list) {
  std::vector<depol::Kind> kinds;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      kinds.push_back(depol::parse_kind(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (kinds.empty()) throw UsageError("--kinds: no curve kinds given");
  return kinds;
}

std::string render_curves(const CurveConfig& cfg) {
  const auto kinds = parse_kinds(cfg.kinds);
  if (!(cfg.p_min < cfg.p_max)) throw UsageError("--p-min must be smaller than --p-max");
  if (cfg.p_min < 0.0 || cfg.p_max > 1.0) throw UsageError("p range must lie in [0, 1]");
  if (cfg.steps < 2) throw UsageError("--steps must be at least 2");
  for (auto k : kinds) {
    if (k == depol::Kind::hull_ub && cfg.p_max > 0.25) throw UsageError("hull_ub is defined on [0, 0.25]");
    if ((k == depol::Kind::ss_lower || k == depol::Kind::ss_lower_qopt || k == depol::Kind::amp_damp_ub) &&
        cfg.p_max > 0.75) {
      throw UsageError(depol::to_string(k) + " is defined on [0, 0.75]");
    }
  }
  if (cfg.q < 0.0 || cfg.q > 0.75) throw UsageError("--q must lie in [0, 0.75]");

  const auto grid = depol::linspace(cfg.p_min, cfg.p_max, cfg.steps);
  depol::CurveOptions opts;
  opts.q = cfg.q;
  opts.threads = cfg.threads;
  std::vector<depol::BoundCurve> curves;
  for (auto k : kinds) curves.push_back(depol::curve(k, grid, opts));

  std::vector<std::string> columns{"p"};
  for (const auto& c : curves) {
    columns.push_back(depol::to_string(c.kind));
    if (!c.params.empty()) columns.push_back(depol::to_string(c.kind) + "_param");
  }

  std::ostringstream os;
  if (cfg.format == "csv") {
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (std::size_t r = 0; r < grid.size(); ++r) {
      os << format_number(grid[r]);
      for (const auto& c : curves) {
        os << ',' << format_number(c.values[r]);
        if (!c.params.empty()) os << ',' << format_number(c.params[r]);
      }
      os << '\n';
    }
  } else {
    nlohmann::ordered_json doc;
    doc["columns"] = columns;
    if (std::find(kinds.begin(), kinds.end(), depol::Kind::ss_lower) != kinds.end()) doc["q"] = rounded(cfg.q);
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < grid.size(); ++r) {
      nlohmann::ordered_json row;
      row["p"] = rounded(grid[r]);
      for (const auto& c : curves) {
        row[depol::to_string(c.kind)] = rounded(c.values[r]);
        if (!c.params.empty()) row[depol::to_string(c.kind) + "_param"] = rounded(c.params[r]);
      }
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
  }
  return os.str();
}

int run_curve(const CurveConfig& cfg, std::ostream& out) {
  const std::string text = render_curves(cfg);
  if (cfg.out.empty() || cfg.out == "-") {
    out << text;
    return kOk;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + cfg.out + "' for writing");
  file << text;
  file.close();
  if (!file) throw std::runtime_error("failed writing '" + cfg.out + "'");
  return kOk;
}

struct ThresholdConfig {
  std::string kind = "hashing";
  double lo = 0.15;
  double hi = 0.22;
  double tol = 1e-7;
  double q = 0.0;
};

int run_threshold(const ThresholdConfig& cfg, std::ostream& out, std::ostream& err) {
  depol::Kind kind;
  try {
    kind = depol::parse_kind(cfg.kind);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!(cfg.lo < cfg.hi)) throw UsageError("--lo must be smaller than --hi");
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
  depol::CurveOptions opts;
  opts.q = cfg.q;
  try {
    const auto t = depol::threshold(kind, cfg.lo, cfg.hi, cfg.tol, opts);
    out << "kind " << depol::to_string(t.kind) << '\n'
        << "p_star " << format_number(t.p_star) << '\n'
        << "bracket " << format_number(t.lo) << ' ' << format_number(t.hi) << '\n'
        << "tolerance " << format_number(t.tol) << '\n';
    return kOk;
  } catch (const std::invalid_argument& e) {
    err << e.what() << '\n';
    return kFailure;
  }
}

int run_verify(std::uint64_t seed, std::ostream& out) {
  const auto report = verify::run(seed);
  std::size_t passed = 0;
  for (const auto& c : report.checks) {
    passed += c.passed;
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " measured=" << format_number(c.measured)
        << " tol=" << format_number(c.tolerance) << '\n';
  }
  out << "verify: " << passed << '/' << report.checks.size() << " checks passed (seed " << seed << ")\n";
  return report.passed() ? kOk : kFailure;
}

const char* const kChannelNames = "identity D, depolarizing P, pauli PX PY PZ, dephasing X|Y|Z P, amp_damp G, ssc D";

double number_arg(const std::vector<std::string>& params, std::size_t i) {
  double v = 0.0;
  const auto& s = params.at(i);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

int int_arg(const std::vector<std::string>& params, std::size_t i) {
  const double v = number_arg(params, i);
  if (v != std::floor(v) || v < 1 || v > 64) throw UsageError("expected a positive dimension, got '" + params[i] + "'");
  return static_cast<int>(v);
}

channels::Channel build_channel(const std::string& name, const std::vector<std::string>& params) {
  auto need = [&](std::size_t n) {
    if (params.size() != n) {
      throw UsageError(name + " takes " + std::to_string(n) + " parameter(s), got " + std::to_string(params.size()));
    }
  };
  try {
    if (name == "identity") {
      need(1);
      return channels::identity(int_arg(params, 0));
    }
    if (name == "depolarizing") {
      need(1);
      return channels::depolarizing(number_arg(params, 0));
    }
    if (name == "pauli") {
      need(3);
      return channels::pauli_channel(number_arg(params, 0), number_arg(params, 1), number_arg(params, 2));
    }
    if (name == "dephasing") {
      need(2);
      const std::string& a = params[0];
      if (a != "X" && a != "Y" && a != "Z") throw UsageError("dephasing axis must be X, Y or Z");
      const auto axis = a == "X" ? channels::Axis::X : a == "Y" ? channels::Axis::Y : channels::Axis::Z;
      return channels::dephasing_axis(axis, number_arg(params, 1));
    }
    if (name == "amp_damp") {
      need(1);
      return channels::amplitude_damping(number_arg(params, 0));
    }
    if (name == "ssc") {
      need(1);
      return channels::symmetric_side_channel(int_arg(params, 0));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown channel '" + name + "' (known: " + kChannelNames + ")");
}

int run_channel(const std::string& name, const std::vector<std::string>& params, std::ostream& out) {
  const auto ch = build_channel(name, params);
  const auto q1 = coherent::q1_optimize(ch);
  const auto deg = channels::degradability_residual(ch);
  const auto spectrum = qmat::eigenvalues_hermitian(q1.argmax.op());

  out << "channel " << ch.name() << '\n'
      << "dims " << ch.dim_in() << " -> " << ch.dim_out() << '\n'
      << "kraus " << ch.kraus_count() << '\n'
      << "q1 " << format_number(q1.value) << '\n'
      << "q1_input_spectrum";
  for (Eigen::Index i = 0; i < spectrum.size(); ++i) out << ' ' << format_number(std::max(0.0, spectrum(i)));
  out << '\n'
      << "degradability_residual " << format_number(deg.residual) << '\n'
      << "degradability_iterations " << deg.iterations << (deg.hit_iteration_limit ? " (limit hit)" : "") << '\n';
  return kOk;
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity bounds for quantum channels with symmetric side channels", "sscap"};
  app.require_subcommand(1);

  CurveConfig curve;
  auto* c = app.add_subcommand("curve", "Tabulate bound curves for the depolarizing channel");
  c->add_option("--kinds", curve.kinds, "Comma-separated curve kinds")->capture_default_str();
  c->add_option("--p-min", curve.p_min, "Smallest p")->capture_default_str();
  c->add_option("--p-max", curve.p_max, "Largest p")->capture_default_str();
  c->add_option("--steps", curve.steps, "Number of grid points")->capture_default_str();
  c->add_option("--format", curve.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  c->add_option("--out", curve.out, "Output path (standard output if omitted)");
  c->add_option("--threads", curve.threads, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  c->add_option("--q", curve.q, "Fixed q for the ss_lower kind")->capture_default_str();

  ThresholdConfig thr;
  auto* t = app.add_subcommand("threshold", "Locate the p where a curve stops being positive");
  t->add_option("--kind", thr.kind, "Curve kind")->capture_default_str();
  t->add_option("--lo", thr.lo, "Bracket start")->capture_default_str();
  t->add_option("--hi", thr.hi, "Bracket end")->capture_default_str();
  t->add_option("--tol", thr.tol, "Final bracket width")->capture_default_str();
  t->add_option("--q", thr.q, "Fixed q for the ss_lower kind")->capture_default_str();

  std::uint64_t seed = 1;
  auto* v = app.add_subcommand("verify", "Run the property suite");
  v->add_option("--seed", seed, "Seed for random instances")->capture_default_str();

  std::string name;
  std::vector<std::string> params;
  auto* ch = app.add_subcommand("channel", "Describe a channel: dimensions, Q1 estimate, degradability");
  ch->add_option("name", name, kChannelNames)->required();
  ch->add_option("params", params, "Channel parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c) return run_curve(curve, out);
    if (*t) return run_threshold(thr, out, err);
    if (*v) return run_verify(seed, out);
    return run_channel(name, params, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace sscap::cli
