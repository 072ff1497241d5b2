#include "hpt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "hpt/comparison.hpp"
#include "hpt/cone.hpp"
#include "hpt/generate.hpp"
#include "hpt/hyperbolicity.hpp"
#include "hpt/io.hpp"
#include "hpt/moebius.hpp"

namespace hpt {

namespace {

using nlohmann::json;

struct UsageError : Error {
  using Error::Error;
};

struct InvalidInput : Error {
  InvalidInput(const std::string& what, ValidationReport r) : Error(what), report(std::move(r)) {}
  ValidationReport report;
};

struct Input {
  ExtendedMetricSpace space;
  std::string source;
  std::string digest;
};

class Session {
 public:
  explicit Session(const RunConfig& c) : cfg_(c) {}

  RunOutcome run();

 private:
  Input load(const std::string& source) const;
  Input primary() const;
  ScanOptions scan() const { return {cfg_.workers}; }
  double kappa_or(double fallback) const { return cfg_.kappa.value_or(fallback); }
  double negative_kappa() const;

  void check(const std::string& name, double value, double threshold);
  void check(const std::string& name, bool pass);
  void emit_space(const ExtendedMetricSpace& space);
  void take_timings(json& node, const std::string& prefix);

  void validate_cmd();
  void certify(const std::string& what);
  void moebius(const std::string& what);
  void cone(const std::string& what);
  void gen();

  const RunConfig& cfg_;
  json results_ = json::object();
  json verdicts_ = json::array();
  json timings_ = json::object();
  json input_ = nullptr;
  bool artifact_ = false;
  bool pass_ = true;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw UsageError(what + ": not a number: '" + s + "'");
  return v;
}

std::size_t to_index(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v < 0 || v != std::floor(v)) throw UsageError(what + ": not an index: '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_heights(const std::string& text, const ExtendedMetricSpace& z) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "geometric") {
    return geometric_heights(diameter(z), to_index(arg, "--heights"));
  }
  if (kind == "list") {
    std::vector<double> h;
    for (const auto& s : split(arg, ',')) h.push_back(to_double(s, "--heights"));
    return h;
  }
  throw UsageError("--heights must be geometric:K or list:h1,h2,...");
}

Input Session::load(const std::string& source) const {
  if (source.empty()) throw UsageError("no input: give a path or --gen");
  Input in;
  in.source = source;
  if (std::filesystem::is_regular_file(source)) {
    in.space = load_space_file(source);
  } else if (source.find(':') != std::string::npos || !std::filesystem::exists(source)) {
    try {
      in.space = parse_space(source, cfg_.seed);
    } catch (const Error& e) {
      if (source.find(':') == std::string::npos) {
        throw Error("cannot read '" + source + "': no such file or generator (" + e.what() + ")");
      }
      throw;
    }
  } else {
    throw Error("cannot read '" + source + "'");
  }
  in.digest = fnv1a_digest(write_csv(in.space));
  ValidationReport report = validate(in.space, cfg_.workers);
  if (!report.ok) {
    throw InvalidInput("input '" + source + "' is not an extended metric", std::move(report));
  }
  return in;
}

Input Session::primary() const {
  if (!cfg_.gen.empty() && !cfg_.input.empty()) throw UsageError("give either a path or --gen, not both");
  return load(cfg_.gen.empty() ? cfg_.input : cfg_.gen);
}

double Session::negative_kappa() const {
  const double k = kappa_or(-1.0);
  if (!(k < 0.0)) throw UsageError("this command needs --kappa < 0");
  return k;
}

void Session::check(const std::string& name, double value, double threshold) {
  const bool pass = value <= threshold + cfg_.tolerance;
  verdicts_.push_back({{"name", name},
                       {"value", number_json(value)},
                       {"threshold", number_json(threshold)},
                       {"tolerance", cfg_.tolerance},
                       {"pass", pass}});
  pass_ = pass_ && pass;
}

void Session::check(const std::string& name, bool pass) {
  verdicts_.push_back({{"name", name}, {"pass", pass}});
  pass_ = pass_ && pass;
}

void Session::emit_space(const ExtendedMetricSpace& space) {
  if (cfg_.out.empty()) {
    results_["space"] = to_descriptor(space);
    return;
  }
  artifact_ = true;
  write_file(cfg_.out, cfg_.format == "csv" ? write_csv(space) : to_descriptor(space).dump(2) + "\n");
  results_["written"] = cfg_.out;
}

void Session::take_timings(json& node, const std::string& prefix) {
  if (!node.is_object()) return;
  if (node.contains("elapsed_s")) {
    timings_[prefix] = node["elapsed_s"];
    node.erase("elapsed_s");
  }
  for (auto& [key, value] : node.items()) take_timings(value, prefix.empty() ? key : prefix + "." + key);
}

void Session::validate_cmd() {
  const Input in = primary();
  input_ = {{"source", in.source}, {"digest", in.digest}};
  results_["size"] = in.space.size();
  results_["omega"] = in.space.omega() ? json(*in.space.omega()) : json(nullptr);
  results_["validation"] = to_json(validate(in.space, cfg_.workers));
  check("valid", true);
}

void Session::certify(const std::string& what) {
  const Input in = primary();
  input_ = {{"source", in.source}, {"digest", in.digest}};
  const ExtendedMetricSpace& x = in.space;
  if (what == "ptolemy") {
    const Certificate c = ptolemy_defect(x, scan());
    results_["ptolemy"] = to_json(c);
    check("ptolemy_defect", c.defect, cfg_.threshold.value_or(0.0));
  } else if (what == "ptk") {
    const double k = kappa_or(-1.0);
    const Certificate c = pt_kappa_defect(x, k, scan());
    json j = to_json(c);
    j["kappa"] = k;
    results_["ptk"] = j;
    check("ptk_defect", c.defect, cfg_.threshold.value_or(0.0));
  } else if (what == "apt") {
    const AptCertificate c = apt_defect(x, negative_kappa(), scan());
    results_["apt"] = to_json(c);
    check("exp_defect", c.exp.defect, cfg_.threshold.value_or(4.0));
  } else if (what == "gromov") {
    const Certificate c = gromov_delta(x, scan());
    results_["gromov"] = to_json(c);
    double threshold = 0.0;
    if (cfg_.threshold) {
      threshold = *cfg_.threshold;
    } else if (x.finite_size() >= 4) {
      const AptCertificate a = apt_defect(x, -1.0, scan());
      const double delta = std::max(0.0, a.exp.defect);
      threshold = hyperbolicity_bound_from_apt(delta);
      results_["apt_exp_defect"] = number_json(a.exp.defect);
      timings_["apt"] = a.exp.elapsed_s + a.sn.elapsed_s;
    }
    results_["bound"] = number_json(threshold);
    check("gromov_delta", c.defect, threshold);
  } else if (what == "ascat") {
    const AscatCertificate c = ascat_defect(x, negative_kappa(), scan());
    results_["ascat"] = to_json(c);
    check("ascat_defect", c.cert.defect, cfg_.threshold.value_or(0.0));
  } else {
    throw UsageError("certify needs one of ptolemy, ptk, apt, gromov, ascat");
  }
}

void Session::moebius(const std::string& what) {
  const Input in = primary();
  input_ = {{"source", in.source}, {"digest", in.digest}};
  const ExtendedMetricSpace& x = in.space;
  if (what == "crt") {
    if (!cfg_.quad) throw UsageError("moebius crt needs --quad i,j,k,l");
    const auto parts = split(*cfg_.quad, ',');
    if (parts.size() != 4) throw UsageError("--quad needs four indices");
    Quad q{};
    for (std::size_t a = 0; a < 4; ++a) {
      q[a] = to_index(parts[a], "--quad");
      if (q[a] >= x.size()) throw UsageError("--quad index out of range");
    }
    if (!admissible(q)) throw UsageError("--quad repeats an index three or more times");
    const CrossRatioTriple t = crt(x, q);
    const bool inside = in_delta(t);
    results_["quad"] = q;
    results_["crt"] = {t.a, t.b, t.c};
    results_["in_delta"] = inside;
    check("in_delta", inside);
  } else if (what == "equivalent" || what == "homothety") {
    if (cfg_.other.empty()) throw UsageError("moebius " + what + " needs --other");
    const Input other = load(cfg_.other);
    input_["other"] = {{"source", other.source}, {"digest", other.digest}};
    if (what == "equivalent") {
      const EquivalenceResult r = moebius_equivalent(x, other.space, scan());
      results_["equivalent"] = r.equivalent;
      results_["max_discrepancy"] = number_json(r.max_discrepancy);
      results_["witness"] = r.witness ? json(*r.witness) : json(nullptr);
      check("equivalent", r.equivalent);
    } else {
      const HomothetyResult r = homothety_ratio(x, other.space);
      results_["homothety"] = r.ok;
      results_["lambda"] = number_json(r.lambda);
      results_["worst_pair"] = {r.worst.first, r.worst.second};
      results_["worst_relative"] = number_json(r.worst_relative);
      check("homothety", r.ok);
    }
  } else if (what == "involute") {
    if (!cfg_.omega_index) throw UsageError("moebius involute needs --omega-index");
    const InvolutionResult r = involute(x, *cfg_.omega_index);
    results_["omega_index"] = *cfg_.omega_index;
    results_["validation"] = to_json(r.validation);
    emit_space(r.space);
    check("involution_valid", r.validation.ok);
  } else {
    throw UsageError("moebius needs one of crt, equivalent, involute, homothety");
  }
}

void Session::cone(const std::string& what) {
  const Input in = primary();
  input_ = {{"source", in.source}, {"digest", in.digest}};
  const ExtendedMetricSpace& z = in.space;
  if (z.has_omega()) throw UsageError("cone commands need a base space without omega");
  if (cfg_.z0 >= z.size()) throw UsageError("--z0 out of range");
  results_["z0"] = cfg_.z0;
  if (what == "build") {
    const std::vector<double> heights = parse_heights(cfg_.heights, z);
    const ConeSpace c = build_cone(z, heights, cfg_.truncate, cfg_.z0);
    results_["points"] = c.size();
    results_["base_size"] = z.size();
    results_["heights"] = heights;
    results_["truncate"] = cfg_.truncate;
    if (cfg_.out.empty()) {
      results_["cone"] = cone_to_json(c);
    } else {
      artifact_ = true;
      write_file(cfg_.out, cfg_.format == "csv" ? write_csv(c.materialize()) : cone_to_json(c).dump(2) + "\n");
      results_["written"] = cfg_.out;
    }
    check("built", true);
  } else if (what == "boundary") {
    const BoundaryMetric b = boundary_metric(z, cfg_.z0, cfg_.levels);
    const ValidationReport v = validate(b.rho, cfg_.workers);
    const Certificate p = ptolemy_defect(b.rho, scan());
    const ExtendedMetricSpace back = recovered_involution(z, cfg_.z0);
    double recovery = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
      for (std::size_t j = 0; j < z.size(); ++j)
        recovery = std::max(recovery, std::abs(back.at(i, j).value() - z.at(i, j).value()));
    bool monotone = true;
    for (std::size_t k = 1; k < b.gaps.size(); ++k) monotone = monotone && b.gaps[k] <= b.gaps[k - 1];
    json gaps = json::array();
    for (double g : b.gaps) gaps.push_back(number_json(g));
    results_["gaps"] = gaps;
    results_["fitted_c"] = number_json(b.fitted_c);
    results_["validation"] = to_json(v);
    results_["ptolemy"] = to_json(p);
    results_["recovery_error"] = number_json(recovery);
    emit_space(b.rho);
    check("boundary_valid", v.ok);
    check("boundary_ptolemy_defect", p.defect, cfg_.threshold.value_or(0.0));
    check("recovery_error", recovery, 0.0);
    check("gaps_monotone", monotone);
  } else if (what == "busemann") {
    if (!cfg_.point) throw UsageError("cone busemann needs --point base,height");
    const auto parts = split(*cfg_.point, ',');
    if (parts.size() != 2) throw UsageError("--point needs base,height");
    const ConePoint x{to_index(parts[0], "--point"), to_double(parts[1], "--point")};
    if (x.base >= z.size()) throw UsageError("--point base out of range");
    const ConeSpace c(z, {}, cfg_.z0);
    const BusemannResult r = busemann_approx(x, c, cfg_.imax);
    json trace = json::array();
    for (const auto& [i, v] : r.trace) trace.push_back({i, number_json(v)});
    results_["point"] = {x.base, x.height};
    results_["imax"] = cfg_.imax;
    results_["value"] = number_json(r.value);
    results_["formula_value"] = number_json(r.formula_value);
    results_["tail_residual"] = number_json(r.tail_residual);
    results_["trace"] = trace;
    check("formula_agreement", std::abs(r.value - r.formula_value), r.tail_residual);
  } else {
    throw UsageError("cone needs one of build, boundary, busemann");
  }
}

void Session::gen() {
  const std::string source = cfg_.gen.empty() ? cfg_.input : cfg_.gen;
  if (source.empty()) throw UsageError("gen needs --gen kind:k=v,...");
  const GeneratorSpec spec = GeneratorSpec::parse(source, cfg_.seed);
  const ExtendedMetricSpace x = generate(spec);
  const std::string digest = fnv1a_digest(write_csv(x));
  input_ = {{"source", source}, {"digest", digest}};
  results_["generator"] = to_json(spec);
  results_["size"] = x.size();
  emit_space(x);
  check("generated", true);
}

RunOutcome Session::run() {
  const auto& cmd = cfg_.command;
  std::string name;
  for (const auto& part : cmd) name += (name.empty() ? "" : " ") + part;

  json config = {{"kappa", cfg_.kappa ? json(*cfg_.kappa) : json(nullptr)},
                 {"seed", cfg_.seed},
                 {"threshold", cfg_.threshold ? json(*cfg_.threshold) : json(nullptr)},
                 {"tolerance", cfg_.tolerance}};
  if (!cmd.empty() && cmd[0] == "cone") {
    config["heights"] = cfg_.heights;
    config["truncate"] = cfg_.truncate;
    config["levels"] = cfg_.levels;
    config["imax"] = cfg_.imax;
  }

  int code = 0;
  json error = nullptr;
  json violations = nullptr;
  const Stopwatch total;
  try {
    if (cfg_.workers < 1) throw UsageError("--workers must be >= 1");
    if (cfg_.format != "json" && cfg_.format != "csv") throw UsageError("--format must be json or csv");
    if (cmd.empty()) throw UsageError("no command");
    const std::string sub = cmd.size() > 1 ? cmd[1] : "";
    const std::size_t want = (cmd[0] == "validate" || cmd[0] == "gen") ? 1 : 2;
    if (cmd.size() != want) throw UsageError("malformed command '" + name + "'");
    if (cmd[0] == "validate") {
      validate_cmd();
    } else if (cmd[0] == "certify") {
      certify(sub);
    } else if (cmd[0] == "moebius") {
      moebius(sub);
    } else if (cmd[0] == "cone") {
      cone(sub);
    } else if (cmd[0] == "gen") {
      gen();
    } else {
      throw UsageError("unknown command '" + cmd[0] + "'");
    }
    code = pass_ ? 0 : 1;
  } catch (const InvalidInput& e) {
    code = 2;
    error = e.what();
    violations = to_json(e.report);
  } catch (const Error& e) {
    code = 2;
    error = e.what();
  } catch (const nlohmann::json::exception& e) {
    code = 2;
    error = e.what();
  } catch (const std::exception& e) {
    code = 2;
    error = std::string("internal error: ") + e.what();
  }

  take_timings(results_, "");
  timings_["total_s"] = total.seconds();

  json report = {{"schema_version", kSchemaVersion},
                 {"tool", "hpt"},
                 {"version", kToolVersion},
                 {"command", name},
                 {"config", config},
                 {"input", input_},
                 {"results", results_},
                 {"verdicts", verdicts_},
                 {"pass", code == 0},
                 {"exit_code", code},
                 {"timings", timings_}};
  if (code == 2) {
    report["error"] = error;
    if (!violations.is_null()) report["violations"] = violations;
  }

  if (!artifact_ && !cfg_.out.empty() && code != 2) {
    try {
      write_file(cfg_.out, report.dump(2) + "\n");
    } catch (const Error& e) {
      report["error"] = e.what();
      report["exit_code"] = code = 2;
      report["pass"] = false;
    }
  }
  return {code, std::move(report)};
}

}  // namespace

ExtendedMetricSpace parse_space(const std::string& source, std::uint64_t seed) {
  if (std::filesystem::is_regular_file(source)) return load_space_file(source);
  return generate(GeneratorSpec::parse(source, seed));
}

RunOutcome run(const RunConfig& config) { return Session(config).run(); }

nlohmann::json strip_timings(nlohmann::json report) {
  report.erase("timings");
  return report;
}

}  // namespace hpt
