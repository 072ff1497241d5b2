#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hpt/cli.hpp"

namespace {

void add_common(CLI::App& cmd, hpt::RunConfig& cfg, std::string& input) {
  cmd.add_option("input", input, "CSV/JSON file or generator string");
  cmd.add_option("--gen", cfg.gen, "generator, e.g. euclidean:dim=2,n=20")->envname("HPT_GEN");
  cmd.add_option("--kappa", cfg.kappa, "curvature")->envname("HPT_KAPPA");
  cmd.add_option("--seed", cfg.seed, "generator seed")->envname("HPT_SEED");
  cmd.add_option("--workers", cfg.workers, "scan threads (>= 1)")->envname("HPT_WORKERS");
  cmd.add_option("--threshold", cfg.threshold, "verdict threshold")->envname("HPT_THRESHOLD");
  cmd.add_option("--tolerance", cfg.tolerance, "slack added to thresholds")->envname("HPT_TOLERANCE");
  cmd.add_option("--out", cfg.out, "artifact or report path")->envname("HPT_OUT");
  cmd.add_option("--format", cfg.format, "artifact format: json or csv")->envname("HPT_FORMAT");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ptolemy, asymptotic PT and cone certificates for finite metric spaces", "hpt"};
  app.set_version_flag("--version", hpt::kToolVersion);
  app.require_subcommand(1);

  hpt::RunConfig cfg;
  std::string what;
  std::string input;

  auto* validate = app.add_subcommand("validate", "check the metric axioms");
  add_common(*validate, cfg, input);

  auto* certify = app.add_subcommand("certify", "defect certificates");
  certify->add_option("what", what, "ptolemy | ptk | apt | gromov | ascat")
      ->required()
      ->check(CLI::IsMember({"ptolemy", "ptk", "apt", "gromov", "ascat"}));
  add_common(*certify, cfg, input);

  auto* moebius = app.add_subcommand("moebius", "cross ratios and involutions");
  moebius->add_option("what", what, "crt | equivalent | involute | homothety")
      ->required()
      ->check(CLI::IsMember({"crt", "equivalent", "involute", "homothety"}));
  add_common(*moebius, cfg, input);
  moebius->add_option("--quad", cfg.quad, "i,j,k,l for crt");
  moebius->add_option("--other", cfg.other, "second space for equivalent/homothety");
  moebius->add_option("--omega-index", cfg.omega_index, "point sent to infinity");

  auto* cone = app.add_subcommand("cone", "hyperbolic cone over a space");
  cone->add_option("what", what, "build | boundary | busemann")
      ->required()
      ->check(CLI::IsMember({"build", "boundary", "busemann"}));
  add_common(*cone, cfg, input);
  cone->add_option("--heights", cfg.heights, "geometric:K or list:h1,h2,...")->envname("HPT_HEIGHTS");
  cone->add_flag("--truncate", cfg.truncate, "require heights <= diam(Z)");
  cone->add_option("--z0", cfg.z0, "base point index");
  cone->add_option("--levels", cfg.levels, "height levels for the boundary gap");
  cone->add_option("--point", cfg.point, "base,height for busemann");
  cone->add_option("--imax", cfg.imax, "last index of the busemann sequence");

  auto* gen = app.add_subcommand("gen", "generate a space");
  add_common(*gen, cfg, input);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command.push_back(sub->get_name());
    if (!what.empty()) cfg.command.push_back(what);
  }
  cfg.input = input;

  const hpt::RunOutcome outcome = hpt::run(cfg);
  std::cout << outcome.report.dump(2) << "\n";
  if (outcome.exit_code == 2 && outcome.report.contains("error")) {
    std::cerr << "hpt: " << outcome.report["error"].get<std::string>() << "\n";
  }
  return outcome.exit_code;
}
