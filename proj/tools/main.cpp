#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <thread>

#include "meq/config.hpp"
#include "meq/errors.hpp"
#include "meq/parallel.hpp"
#include "meq/runner.hpp"

namespace {

const std::map<std::string, std::string> kAbout{
    {"gen", "print coordinates of the first configured point"},
    {"dfest", "estimate the averaged distance of the two configured points"},
    {"scan", "modulus-of-continuity table over shrinking radii"},
    {"ue-test", "unique-ergodicity verdict from sampled Birkhoff averages"},
    {"product-check", "unique ergodicity along orbits of pairs in the product system"},
    {"spectrum", "Weyl-sum eigenvalue scan"},
    {"factor", "fiber statistics of the system's factor map"},
    {"fullgroup", "apply, compose and invert full-group elements"},
    {"accept", "run the acceptance suite"},
    {"defaults", "print every config key with its default"},
};

void print_checks(const std::string& report_text) {
  const auto j = nlohmann::json::parse(report_text);
  for (const auto& c : j.at("checks")) {
    const std::string status = c.at("status").get<std::string>();
    const std::string tag = status == "pass" ? "[PASS]" : status == "fail" ? "[FAIL]" : "[INCONCLUSIVE]";
    std::cerr << tag << " " << c.at("id").get<std::string>() << " " << c.at("name").get<std::string>() << ": "
              << c.at("detail").get<std::string>() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meqlab: averaged-distance pseudometrics, ergodic averages and spectra of symbolic systems"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string seed, out, config_path;
  int threads = 0;
  app.add_option("--seed", seed, "master seed (overrides the config)");
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--threads", threads, "worker threads; 0 = hardware concurrency")->check(CLI::NonNegativeNumber);

  const meq::RunConfig defaults = meq::RunConfig::defaults();
  std::map<std::string, std::string> values;
  std::vector<std::string> assignments;
  std::vector<CLI::App*> subs;
  for (const auto& name : meq::subcommands()) {
    CLI::App* sc = app.add_subcommand(name, kAbout.at(name));
    if (name != "defaults") {
      for (const auto& e : defaults.entries()) {
        if (e.key == "seed") continue;
        sc->add_option("--" + e.key, values[e.key], e.help);
      }
      sc->add_option("--set", assignments, "extra key=value assignments");
    }
    subs.push_back(sc);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? meq::kExitOk : meq::kExitBadConfig;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string sub = chosen->get_name();
  try {
    meq::RunConfig config = defaults;
    if (!config_path.empty()) config.load_file(config_path);
    for (const auto& e : defaults.entries()) {
      if (e.key == "seed" || sub == "defaults") continue;
      if (chosen->get_option("--" + e.key)->count() > 0) config.set(e.key, values[e.key]);
    }
    for (const auto& a : assignments) config.set_assignment(a);
    if (!seed.empty()) config.set("seed", seed);

    const unsigned hw = std::thread::hardware_concurrency();
    meq::set_worker_count(threads > 0 ? threads : static_cast<int>(hw == 0 ? 1 : hw));

    const auto t0 = std::chrono::steady_clock::now();
    const meq::RunOutcome outcome = meq::run(sub, config);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (out.empty()) {
      std::cout << outcome.output;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f) {
        std::cerr << "meqlab: cannot write '" << out << "'\n";
        return meq::kExitFailure;
      }
      f << outcome.output;
    }
    if (sub != "defaults") {
      if (sub == "accept") print_checks(outcome.output);
      std::fprintf(stderr, "meqlab %s: %.2f s\n", sub.c_str(), secs);
    }
    return outcome.exit_code;
  } catch (const meq::Error& e) {
    std::cerr << "meqlab: " << meq::to_string(e.code()) << ": " << e.what() << "\n";
    return meq::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "meqlab: " << e.what() << "\n";
    return meq::kExitFailure;
  }
}
