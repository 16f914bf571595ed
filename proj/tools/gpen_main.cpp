#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpen/commands.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  long long seed = -1;
  std::vector<std::string> resolutions;
  std::vector<std::string> tolerances;
};

void attach_common(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "run configuration file")
      ->envname("GPEN_CONFIG");
  cmd->add_option("--out", flags->out_dir, "output directory")
      ->envname("GPEN_OUT");
  cmd->add_option("--threads", flags->threads, "worker thread count")
      ->envname("GPEN_THREADS");
  cmd->add_option("--seed", flags->seed, "random seed")->envname("GPEN_SEED");
  cmd->add_option("--resolution", flags->resolutions,
                  "grid resolution T,P (repeatable)")
      ->expected(-1);
  cmd->add_option("--tolerance", flags->tolerances,
                  "tolerance override KEY=VAL (repeatable)")
      ->expected(-1);
}

gpen::RunConfig build_config(const CommonFlags& flags) {
  gpen::RunConfig config;
  if (!flags.config_path.empty()) {
    config = gpen::load_config(flags.config_path);
  }
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.threads > 0) config.threads = flags.threads;
  if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
  if (!flags.resolutions.empty()) {
    config.resolutions.clear();
    for (const auto& r : flags.resolutions) {
      const auto comma = r.find(',');
      if (comma == std::string::npos) {
        throw std::invalid_argument("--resolution expects T,P");
      }
      config.resolutions.emplace_back(std::stoi(r.substr(0, comma)),
                                      std::stoi(r.substr(comma + 1)));
    }
  }
  for (const auto& t : flags.tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--tolerance expects KEY=VAL");
    }
    const std::string key = t.substr(0, eq);
    const double val = std::stod(t.substr(eq + 1));
    if (key == "identity") config.tol.identity = val;
    else if (key == "inequality") config.tol.inequality = val;
    else if (key == "ode") config.tol.ode = val;
    else if (key == "root") config.tol.root = val;
    else throw std::invalid_argument("unknown tolerance key: " + key);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gpen - numerical verification of the Gibbons-Penrose inequality on "
      "spacelike surfaces in the Schwarzschild spacetime"};
  app.require_subcommand(1);

  CommonFlags verify_flags, family_flags, converge_flags, identity_flags;
  CLI::App* verify =
      app.add_subcommand("verify", "verify one surface spec end to end");
  attach_common(verify, &verify_flags);
  CLI::App* family = app.add_subcommand(
      "family", "run a randomized surface family, write aggregate CSV");
  attach_common(family, &family_flags);
  CLI::App* converge = app.add_subcommand(
      "converge", "refinement study with Richardson order estimates");
  attach_common(converge, &converge_flags);
  CLI::App* identities = app.add_subcommand(
      "identities", "run the geometric identity suite at the configured m, "
                    "lambda");
  attach_common(identities, &identity_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      return gpen::run_command("verify", build_config(verify_flags));
    }
    if (family->parsed()) {
      return gpen::run_command("family", build_config(family_flags));
    }
    if (converge->parsed()) {
      return gpen::run_command("converge", build_config(converge_flags));
    }
    if (identities->parsed()) {
      return gpen::run_command("identities", build_config(identity_flags));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gpen::kExitUsage;
  }
  return gpen::kExitUsage;
}
