#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "suites.hpp"

using namespace thetalab::cli;
namespace fs = std::filesystem;

namespace {

struct Case {
  std::string file;
  std::string subcommand;
  std::string curve;
  std::optional<std::size_t> points;
  std::optional<int> genus;
  std::uint64_t seed = 1;
};

std::vector<Case> cases() {
  std::vector<Case> out;
  for (const char* c : {"QUARTIC", "GEN5", "TRIG5", "QUINTIC", "GEN6", "TRIG6", "GEN7", "TRIG7"}) {
    out.push_back({std::string("analyze_") + c, "analyze", c});
    out.push_back({std::string("syzygies_") + c, "syzygies", c});
    out.push_back({std::string("gamma_") + c, "gamma", c});
  }
  for (const char* c : {"GEN5", "GEN6", "TRIG6", "GEN7", "TRIG7"}) out.push_back({std::string("petri_") + c, "petri", c, 10});
  for (const char* c : {"QUINTIC", "GEN6", "TRIG6", "TRIG7"}) out.push_back({std::string("surjectivity_") + c, "surjectivity", c});
  for (const char* c : {"TRIG5", "TRIG6", "TRIG7"}) out.push_back({std::string("trigonal_") + c, "trigonal", c, 10});
  for (const char* c : {"GEN6", "TRIG7"}) out.push_back({std::string("epqr_") + c, "epqr", c, 4});
  out.push_back({"theta_genus3_seed7", "theta", "", std::nullopt, 3, 7});
  out.push_back({"theta_genus2", "theta", "", std::nullopt, 2});
  out.push_back({"gunning_genus3", "gunning", ""});
  return out;
}

// Numbers compare with a relative tolerance; everything else must match exactly.
bool same(const Json& a, const Json& b, const std::string& path, std::string& why) {
  if (a.is_number_float() || b.is_number_float()) {
    if (!a.is_number() || !b.is_number()) return why = path + ": type differs", false;
    double x = a.get<double>(), y = b.get<double>();
    double tol = 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
    // Residual-sized quantities are compared by order of magnitude only.
    if (std::abs(x) < 1e-6 && std::abs(y) < 1e-6) return true;
    if (std::abs(x - y) > tol && std::abs(x - y) > 1e-6 * std::max(std::abs(x), std::abs(y)))
      return why = path + ": " + a.dump() + " vs " + b.dump(), false;
    return true;
  }
  if (a.is_number() && b.is_number()) {
    if (a.get<std::int64_t>() != b.get<std::int64_t>()) return why = path + ": " + a.dump() + " vs " + b.dump(), false;
    return true;
  }
  if (a.type() != b.type()) return why = path + ": type differs", false;
  if (a.is_object()) {
    if (a.size() != b.size()) return why = path + ": key count differs", false;
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return why = path + ": missing key " + it.key(), false;
      if (!same(it.value(), b.at(it.key()), path + "." + it.key(), why)) return false;
    }
    return true;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return why = path + ": length differs", false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!same(a[i], b[i], path + "[" + std::to_string(i) + "]", why)) return false;
    return true;
  }
  if (a != b) return why = path + ": " + a.dump() + " vs " + b.dump(), false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  bool update = argc > 1 && std::strcmp(argv[1], "--update") == 0;
  fs::path dir = THETALAB_GOLDEN_DIR;
  int failures = 0;
  for (const auto& c : cases()) {
    RunConfig cfg;
    cfg.subcommand = c.subcommand;
    cfg.curve = c.curve;
    cfg.points = c.points;
    cfg.genus = c.genus;
    cfg.seed = c.seed;
    cfg.timestamp = false;
    Json got = run(cfg).to_json();
    fs::path file = dir / (c.file + ".json");
    if (update) {
      std::ofstream(file) << got.dump(2) << "\n";
      std::cout << "wrote " << file.filename().string() << "\n";
      continue;
    }
    std::ifstream in(file);
    if (!in) {
      std::cout << "FAIL " << c.file << ": golden file missing\n";
      ++failures;
      continue;
    }
    Json want = Json::parse(in);
    std::string why;
    if (same(want, got, c.file, why)) {
      std::cout << "PASS " << c.file << "\n";
    } else {
      std::cout << "FAIL " << why << "\n";
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
