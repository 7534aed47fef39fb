#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "suites.hpp"

using namespace thetalab::cli;

namespace {

struct Timed {
  Report report;
  double seconds = 0;
};

std::map<std::string, Timed> cache;

const Timed& get(const std::string& sub, const std::string& curve, std::optional<int> genus = std::nullopt,
                 unsigned threads = 1) {
  std::string key = sub + "|" + curve + "|" + (genus ? std::to_string(*genus) : "") + "|" + std::to_string(threads);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RunConfig c;
  c.subcommand = sub;
  c.curve = curve;
  c.genus = genus;
  c.threads = threads;
  c.timestamp = false;
  auto t0 = std::chrono::steady_clock::now();
  Timed t{run(c), 0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cache.emplace(key, std::move(t)).first->second;
}

std::vector<const Certificate*> all(const Report& r, const std::string& name, std::optional<std::uint64_t> p = {}) {
  std::vector<const Certificate*> out;
  for (const auto& c : r.certificates)
    if (c.name == name && (!p || c.prime == p)) out.push_back(&c);
  return out;
}

bool passed(const Certificate* c) { return c && c->verdict == Verdict::Pass; }

const std::vector<std::uint64_t> kPrimes{10007, 65521};

class Criterion {
 public:
  explicit Criterion(int n) : n_(n) {}
  void check(bool ok, const std::string& what) {
    if (!ok) {
      ok_ = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& s) { notes_ += (notes_.empty() ? "" : ", ") + s; }
  bool finish() const {
    std::cout << "criterion " << n_ << ": " << (ok_ ? "PASS" : "FAIL") << "  " << notes_;
    if (!ok_) std::cout << "  [" << failures_ << "]";
    std::cout << std::endl;
    return ok_;
  }

 private:
  int n_;
  bool ok_ = true;
  std::string notes_, failures_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

bool ideal_dimensions() {
  Criterion c(1);
  for (auto [curve, dim] : std::vector<std::pair<std::string, int>>{
           {"QUINTIC", 6}, {"GEN6", 6}, {"TRIG6", 6}, {"TRIG7", 10}, {"GEN7", 10}}) {
    const auto& t = get("analyze", curve);
    for (auto p : kPrimes) {
      const auto* d = t.report.find("ideal-dimensions", p);
      c.check(passed(d) && d->data["I2"] == dim, curve + " I(2) at " + std::to_string(p));
    }
    c.check(passed(t.report.find("cross-prime")), curve + " cross-prime");
    c.check(t.seconds < 30, curve + " took " + fmt(t.seconds) + " s");
    c.note(curve + "=" + std::to_string(dim) + " (" + fmt(t.seconds) + " s)");
  }
  return c.finish();
}

bool petri_certificates() {
  Criterion c(2);
  for (const std::string curve : {"GEN6", "GEN7", "TRIG6", "TRIG7"}) {
    const auto& r = get("petri", curve).report;
    for (auto p : kPrimes) {
      auto certs = all(r, "petri-basis", p);
      c.check(certs.size() >= 3, curve + " has fewer than 3 seeds");
      for (const auto* x : certs) c.check(passed(x), curve + " " + x->message);
    }
    c.note(curve + " ok");
  }
  return c.finish();
}

bool syzygy_kernels() {
  Criterion c(3);
  for (auto [curve, ker] : std::vector<std::pair<std::string, int>>{{"QUINTIC", 0}, {"GEN6", 0}, {"TRIG6", 1}, {"GEN7", 1}}) {
    const auto& t = get("syzygies", curve);
    for (auto p : kPrimes) {
      const auto* s = t.report.find("syzygy-kernel", p);
      c.check(passed(s) && s->data["ker_m"] == ker, curve + " ker m at " + std::to_string(p));
    }
    c.check(passed(t.report.find("cross-prime")), curve + " cross-prime");
    if (curve == "GEN7") c.check(t.seconds < 300, "GEN7 took " + fmt(t.seconds) + " s");
    c.note(curve + "=" + std::to_string(ker) + " (" + fmt(t.seconds) + " s)");
  }
  return c.finish();
}

bool surjectivity() {
  Criterion c(4);
  for (const std::string curve : {"GEN6", "QUINTIC"}) {
    const auto& r = get("surjectivity", curve).report;
    for (auto p : kPrimes) {
      const auto* s = r.find("multiplication-span", p);
      c.check(passed(s) && s->data["span"] == 21, curve + " span at " + std::to_string(p));
    }
    c.note(curve + " span 21");
  }
  for (auto [curve, cod] : std::vector<std::pair<std::string, int>>{{"TRIG6", 1}, {"TRIG7", 5}}) {
    const auto& r = get("surjectivity", curve).report;
    for (auto p : kPrimes) {
      const auto* s = r.find("multiplication-span", p);
      c.check(passed(s) && s->data["route_a"] == cod && s->data["route_b"] == cod, curve + " corank at " + std::to_string(p));
    }
    c.note(curve + " codim " + std::to_string(cod));
  }
  return c.finish();
}

bool gamma_table() {
  Criterion c(5);
  auto expect = [&](const std::string& curve, std::optional<int> g11, int g000) {
    const auto& r = get("gamma", curve).report;
    for (auto p : kPrimes) {
      const auto* t = r.find("gamma-table", p);
      bool ok = passed(t) && t->data["G000"] == g000 && (!g11 || t->data["G11"] == *g11);
      c.check(ok, curve + " at " + std::to_string(p));
    }
    c.check(passed(r.find("cross-prime")), curve + " cross-prime");
    c.note(curve + (g11 ? " (" + std::to_string(*g11) + "," : " (-,") + std::to_string(g000) + ")");
  };
  expect("GEN6", 1, 1);
  expect("QUINTIC", 1, 1);
  expect("TRIG6", 2, 3);
  expect("GEN7", 9, 10);
  for (const char* low : {"QUARTIC", "GEN5", "TRIG5"}) expect(low, std::nullopt, 0);
  return c.finish();
}

bool pair_round_trip() {
  Criterion c(6);
  for (const std::string curve : {"GEN6", "GEN7"}) {
    const auto& r = get("petri", curve).report;
    for (auto p : kPrimes) {
      const auto* pr = r.find("pair-roundtrip", p);
      if (!pr) {
        c.check(false, curve + " missing pair certificate");
        continue;
      }
      std::size_t rank6 = pr->data["rank6"], tested = pr->data["tested"];
      std::size_t checked = pr->data["pairs_checked"];
      c.check(passed(pr), curve + " " + pr->message);
      c.check(rank6 >= 5, curve + " only " + std::to_string(rank6) + " rank-6 quadrics");
      c.check(tested > 0 && checked >= 50 * tested, curve + " too few pairs");
      c.check(pr->data["discrepancies"] == 0, curve + " discrepancies");
      if (p == kPrimes[0])
        c.note(curve + " rank6=" + std::to_string(rank6) + " pairs=" + std::to_string(checked) +
               " conjugate=" + pr->data["conjugate_pairs"].dump());
    }
  }
  return c.finish();
}

bool extension_classes() {
  Criterion c(7);
  for (const std::string curve : {"GEN6", "GEN7"}) {
    const auto& r = get("epqr", curve).report;
    for (auto p : kPrimes) {
      const auto* e = r.find("extension-classes", p);
      const auto* i = r.find("theta-incidence", p);
      c.check(passed(e) && e->data["non_collinear"].get<int>() >= 20, curve + " triples");
      c.check(passed(i) && i->data["holds"].get<int>() >= 30, curve + " incidence");
      c.check(i && i->data["negative_controls_failing"].get<int>() >= 1, curve + " negative control");
    }
    c.note(curve + " ok");
  }
  for (const std::string curve : {"TRIG6", "TRIG7"}) {
    const auto& r = get("epqr", curve).report;
    for (auto p : kPrimes) {
      const auto* col = r.find("collinear-rejection", p);
      c.check(passed(col) && col->data["rejected"].get<int>() > 0, curve + " collinear fibers");
    }
    c.note(curve + " fibers rejected");
  }
  return c.finish();
}

bool theta_numerics() {
  Criterion c(8);
  for (auto [g, dim] : std::vector<std::pair<int, int>>{{2, 4}, {3, 7}, {4, 11}}) {
    const auto& t = get("theta", "", g);
    for (const auto& cert : t.report.certificates) c.check(cert.verdict == Verdict::Pass, "g=" + std::to_string(g) + " " + cert.name);
    const auto* k = t.report.find("kummer-tangent");
    c.check(k && k->data["tangent_dim"] == dim, "tangent dimension at g=" + std::to_string(g));
    const auto* d = t.report.find("diagonal-control");
    c.check(d && d->data["tangent_dim"] == 1 + g, "diagonal control at g=" + std::to_string(g));
    if (g == 4) c.check(t.seconds < 60, "g=4 took " + fmt(t.seconds) + " s");
    c.note("g=" + std::to_string(g) + " dim " + std::to_string(dim) + " gap " + (k ? fmt(k->data["gap_ratio"].get<double>()) : "?") +
           " (" + fmt(t.seconds) + " s)");
  }
  return c.finish();
}

bool gunning_suite() {
  Criterion c(9);
  const auto& r = get("gunning", "").report;
  if (r.certificates.size() == 1 && r.certificates[0].verdict == Verdict::Skipped) {
    std::cout << "criterion 9: SKIPPED  " << r.certificates[0].message << std::endl;
    return true;
  }
  for (const auto& cert : r.certificates) c.check(cert.verdict == Verdict::Pass, cert.name + " " + cert.message);
  const auto* span = r.find("xi-span");
  c.check(span && span->data["dimension"].get<int>() <= 1, "xi span");
  c.note(std::to_string(r.certificates.size()) + " certificates");
  return c.finish();
}

bool determinism() {
  Criterion c(10);
  std::vector<std::tuple<std::string, std::string, std::optional<int>>> configs{
      {"gamma", "GEN7", std::nullopt}, {"petri", "TRIG6", std::nullopt}, {"epqr", "GEN6", std::nullopt},
      {"theta", "", 3}, {"gunning", "", std::nullopt}};
  for (const auto& [sub, curve, g] : configs) {
    std::string base = render(get(sub, curve, g, 1).report, "json");
    cache.clear();
    std::string again = render(get(sub, curve, g, 1).report, "json");
    std::string threaded = render(get(sub, curve, g, 4).report, "json");
    c.check(base == again, sub + " " + curve + " rerun differs");
    c.check(base == threaded, sub + " " + curve + " differs with 4 threads");
  }
  c.note(std::to_string(configs.size()) + " configs, threads 1 and 4");
  return c.finish();
}

}  // namespace

int main() {
  std::vector<std::function<bool()>> criteria{ideal_dimensions, petri_certificates, syzygy_kernels, surjectivity,
                                             gamma_table,      pair_round_trip,    extension_classes, theta_numerics,
                                             gunning_suite,    determinism};
  int failed = 0;
  for (const auto& f : criteria) {
    try {
      if (!f()) ++failed;
    } catch (const std::exception& e) {
      std::cout << "criterion: FAIL  exception " << e.what() << std::endl;
      ++failed;
    }
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
