#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "suites.hpp"

using namespace thetalab::cli;

namespace {

std::vector<std::uint64_t> parse_primes(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw CliError(kExitUsage, "invalid prime '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CliError(kExitUsage, "--primes needs at least one prime");
  return out;
}

const char* const kSubcommands[] = {"analyze", "petri",  "syzygies", "surjectivity", "trigonal",
                                    "epqr",    "gamma",  "theta",    "gunning"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical certificates for canonical curves and second-order theta functions"};
  app.set_version_flag("--version", "thetalab 0.1.0");
  app.require_subcommand(0, 1);

  RunConfig cfg;
  std::string primes = "10007,65521";
  std::size_t points = 0;
  int genus = 0;
  bool no_timestamp = false;

  for (const char* name : kSubcommands) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " certificates");
    sub->add_option("--curve", cfg.curve, "curve file or fixture name");
    sub->add_option("--primes", primes, "comma-separated primes");
    sub->add_option("--seed", cfg.seed, "base seed");
    sub->add_option("--points", points, "sample size override");
    sub->add_option("--epsilon", cfg.epsilon, "theta truncation tolerance");
    sub->add_option("--fixture", cfg.fixture, "abelian fixture JSON");
    sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "write the report to this file");
    sub->add_flag("--no-timestamp", no_timestamp, "omit the timestamp");
    sub->add_option("--genus", genus, "genus for random period matrices");
    sub->add_option("--threads", cfg.threads, "linear-algebra worker threads");
  }

  // Unknown positional words would otherwise be reported as generic parse errors.
  if (argc > 1 && argv[1][0] != '-') {
    std::string first = argv[1];
    bool known = false;
    for (const char* n : kSubcommands) known = known || first == n;
    if (!known) {
      std::cerr << "thetalab: unknown subcommand '" << first << "'\n";
      return kExitUnknownSubcommand;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  auto subs = app.get_subcommands();
  if (subs.empty()) {
    std::cerr << app.help();
    return kExitUsage;
  }
  cfg.subcommand = subs.front()->get_name();
  cfg.timestamp = !no_timestamp;
  if (points > 0) cfg.points = points;
  if (genus > 0) cfg.genus = genus;

  try {
    cfg.primes = parse_primes(primes);
    if (cfg.epsilon <= 0 || cfg.epsilon >= 1e-3) throw CliError(kExitUsage, "--epsilon must lie in (0, 1e-3)");
    Report report = run(cfg);
    std::string text = render(report, cfg.format);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!out) throw CliError(kExitUnreadableFile, "cannot write " + cfg.out);
      out << text;
    }
    return report.exit_code();
  } catch (const CliError& e) {
    std::cerr << "thetalab: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "thetalab: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
