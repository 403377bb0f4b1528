#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmcycles/cli.hpp"

namespace {

struct Flags {
  std::string config = "-";
  std::string out = "-";
  long long seed = -1;
  bool override_bounds = false;
};

nlohmann::json read_config(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    buf << in.rdbuf();
  }
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return nlohmann::json::object();
  return nlohmann::json::parse(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Breuil-Mezard multiplicities for GL_2 and the supporting checks"};
  app.require_subcommand(1);
  Flags flags;
  for (const auto& task : bmc::cli::task_names()) {
    auto* sub = app.add_subcommand(task);
    sub->add_option("--config", flags.config, "JSON config file, - for stdin");
    sub->add_option("--seed", flags.seed, "seed for randomized suites (overrides the config)");
    sub->add_option("--out", flags.out, "report path, - for stdout");
    sub->add_flag("--override-bounds", flags.override_bounds, "skip the gap bounds (unsound)");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string task = app.get_subcommands().front()->get_name();

  nlohmann::json cfg;
  try {
    cfg = read_config(flags.config);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  bmc::cli::Options opt;
  opt.override_bounds = flags.override_bounds;
  if (flags.seed >= 0) opt.seed = static_cast<std::uint64_t>(flags.seed);
  const nlohmann::json report = bmc::cli::run_task(task, cfg, opt);
  const std::string text = report.dump(2) + "\n";
  if (flags.out == "-") {
    std::cout << text;
  } else {
    std::ofstream out(flags.out);
    out << text;
  }
  if (report.contains("error")) std::cerr << report["error"]["message"].get<std::string>() << "\n";
  return report["pass"].get<bool>() ? 0 : 1;
}
