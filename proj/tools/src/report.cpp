#include "report.hpp"

#include <iomanip>
#include <sstream>

namespace thetalab::cli {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Indeterminate: return "INDETERMINATE";
    case Verdict::Skipped: return "SKIPPED";
  }
  return "FAIL";
}

Json RunConfig::to_json() const {
  Json j;
  j["subcommand"] = subcommand;
  j["curve"] = curve.empty() ? Json() : Json(curve);
  j["primes"] = primes;
  j["seed"] = seed;
  j["points"] = points ? Json(*points) : Json();
  j["epsilon"] = epsilon;
  j["fixture"] = fixture.empty() ? Json() : Json(fixture);
  j["genus"] = genus ? Json(*genus) : Json();
  return j;
}

Certificate& Report::add(std::string name, std::optional<std::uint64_t> prime) {
  certificates.push_back(Certificate{std::move(name), prime, Verdict::Pass, Json::object(), {}});
  return certificates.back();
}

const Certificate* Report::find(const std::string& name, std::optional<std::uint64_t> prime) const {
  for (const auto& c : certificates)
    if (c.name == name && (!prime || c.prime == prime)) return &c;
  return nullptr;
}

int Report::exit_code() const {
  for (const auto& c : certificates)
    if (c.verdict == Verdict::Fail || c.verdict == Verdict::Indeterminate) return kExitCertificateFailed;
  return kExitOk;
}

Json Report::to_json() const {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = "thetalab";
  if (!timestamp.empty()) j["timestamp"] = timestamp;
  j["config"] = config.to_json();
  Json certs = Json::array();
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& c : certificates) {
    Json e;
    e["name"] = c.name;
    e["prime"] = c.prime ? Json(*c.prime) : Json();
    e["verdict"] = to_string(c.verdict);
    if (!c.message.empty()) e["message"] = c.message;
    e["data"] = c.data;
    certs.push_back(std::move(e));
    ++counts[static_cast<int>(c.verdict)];
  }
  j["certificates"] = std::move(certs);
  Json s;
  s["pass"] = counts[0];
  s["fail"] = counts[1];
  s["indeterminate"] = counts[2];
  s["skipped"] = counts[3];
  s["exit_code"] = exit_code();
  j["summary"] = s;
  return j;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(4) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

}  // namespace

std::string Report::to_text() const {
  std::ostringstream os;
  os << "thetalab " << config.subcommand;
  if (!config.curve.empty()) os << "  curve=" << config.curve;
  os << "  seed=" << config.seed;
  if (!timestamp.empty()) os << "  at " << timestamp;
  os << "\n";
  std::size_t width = 0;
  for (const auto& c : certificates) width = std::max(width, c.name.size());
  for (const auto& c : certificates) {
    os << std::left << std::setw(14) << to_string(c.verdict) << std::setw(static_cast<int>(width) + 2) << c.name;
    os << std::setw(8) << (c.prime ? std::to_string(*c.prime) : std::string("-"));
    bool first = true;
    for (const auto& [k, v] : c.data.items()) {
      if (v.is_object()) continue;
      std::string text = v.is_array() && (v.size() > 12 || v.dump().size() > 60)
                             ? "[" + std::to_string(v.size()) + " items]"
                             : scalar_text(v);
      os << (first ? "" : "  ") << k << "=" << text;
      first = false;
    }
    if (!c.message.empty()) os << "  (" << c.message << ")";
    os << "\n";
  }
  os << "exit " << exit_code() << "\n";
  return os.str();
}

std::string render(const Report& r, const std::string& format) {
  if (format == "text") return r.to_text();
  return r.to_json().dump(2) + "\n";
}

}  // namespace thetalab::cli
