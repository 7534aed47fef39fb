#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace thetalab::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "thetalab.report/1";

enum class Verdict { Pass, Fail, Indeterminate, Skipped };
std::string to_string(Verdict v);

enum ExitCode : int {
  kExitOk = 0,
  kExitCertificateFailed = 1,
  kExitUsage = 2,
  kExitUnknownSubcommand = 3,
  kExitUnreadableFile = 4,
  kExitInvalidInput = 5,
  kExitInternal = 6,
};

struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

struct RunConfig {
  std::string subcommand;
  std::string curve;
  std::vector<std::uint64_t> primes{10007, 65521};
  std::uint64_t seed = 1;
  std::optional<std::size_t> points;
  double epsilon = 1e-14;
  std::string fixture;
  std::string format = "json";
  std::string out;
  bool timestamp = true;
  std::optional<int> genus;
  unsigned threads = 1;

  Json to_json() const;
};

struct Certificate {
  std::string name;
  std::optional<std::uint64_t> prime;
  Verdict verdict = Verdict::Pass;
  Json data = Json::object();
  std::string message;
};

struct Report {
  RunConfig config;
  std::string timestamp;
  std::deque<Certificate> certificates;

  Certificate& add(std::string name, std::optional<std::uint64_t> prime = std::nullopt);
  const Certificate* find(const std::string& name, std::optional<std::uint64_t> prime = std::nullopt) const;
  int exit_code() const;
  Json to_json() const;
  std::string to_text() const;
};

std::string render(const Report& r, const std::string& format);

}  // namespace thetalab::cli
