#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>

#include "thetalab/bundles.hpp"
#include "thetalab/gamma.hpp"
#include "thetalab/ideal.hpp"
#include "thetalab/linalg.hpp"
#include "thetalab/theta.hpp"
#include "thetalab/trigonal.hpp"

#ifndef THETALAB_DEFAULT_DATA_DIR
#define THETALAB_DEFAULT_DATA_DIR "data"
#endif

namespace thetalab::cli {

namespace fs = std::filesystem;

std::string data_dir() {
  if (const char* env = std::getenv("THETALAB_DATA_DIR"); env && *env) return env;
  return THETALAB_DEFAULT_DATA_DIR;
}

std::string default_fixture() { return (fs::path(data_dir()) / "theta" / "genus3_hyperelliptic.json").string(); }

std::string resolve_curve(const std::string& arg) {
  if (arg.empty()) throw CliError(kExitUsage, "--curve is required for this subcommand");
  std::error_code ec;
  if (fs::is_regular_file(arg, ec)) return arg;
  fs::path named = fs::path(data_dir()) / "curves" / (arg + ".curve");
  if (fs::is_regular_file(named, ec)) return named.string();
  throw CliError(kExitUnreadableFile, "cannot read curve '" + arg + "'");
}

namespace {

bool readable(const std::string& path) {
  std::ifstream in(path);
  return static_cast<bool>(in);
}

CurveModel load_model(const std::string& path, std::uint64_t prime) {
  if (!readable(path)) throw CliError(kExitUnreadableFile, "cannot read " + path);
  try {
    return load_curve(path, Field::prime(prime));
  } catch (const CurveError& e) {
    throw CliError(kExitInvalidInput, e.what());
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitInvalidInput, e.what());
  }
}

void require(Certificate& c, bool ok, const std::string& why) {
  if (ok) return;
  c.verdict = Verdict::Fail;
  if (!c.message.empty()) c.message += "; ";
  c.message += why;
}

void fail(Certificate& c, const std::exception& e) {
  c.verdict = Verdict::Fail;
  c.message = e.what();
}

// Runs body once per prime into its own report, concurrently when threads > 1, and merges in prime order.
template <class Body>
std::map<std::uint64_t, Json> for_primes(const RunConfig& c, Report& r, Body body) {
  std::vector<Report> local(c.primes.size());
  std::vector<Json> values(c.primes.size());
  auto one = [&](std::size_t k) { body(c.primes[k], local[k], values[k]); };
  if (c.threads > 1 && c.primes.size() > 1) {
    std::vector<std::future<void>> jobs;
    for (std::size_t k = 0; k < c.primes.size(); ++k) jobs.push_back(std::async(std::launch::async, one, k));
    for (auto& j : jobs) j.get();
  } else {
    for (std::size_t k = 0; k < c.primes.size(); ++k) one(k);
  }
  std::map<std::uint64_t, Json> out;
  for (std::size_t k = 0; k < c.primes.size(); ++k) {
    for (auto& cert : local[k].certificates) r.certificates.push_back(std::move(cert));
    if (!values[k].is_null()) out[c.primes[k]] = std::move(values[k]);
  }
  return out;
}

std::int64_t choose(std::int64_t n, std::int64_t k) { return binomial(n, k); }

// Expected dim I(n) of a projectively normal canonical curve.
std::int64_t expected_ideal_dim(int g, int n) {
  return choose(g + n - 1, n) - (n == 1 ? g : (2 * n - 1) * (g - 1));
}

void cross_prime(Report& r, const std::string& name, const std::map<std::uint64_t, Json>& values) {
  if (values.size() < 2) return;
  auto& c = r.add(name);
  Json per = Json::object();
  bool equal = true;
  const Json& first = values.begin()->second;
  for (const auto& [p, v] : values) {
    per[std::to_string(p)] = v;
    equal = equal && v == first;
  }
  c.data["values"] = per;
  c.data["equal"] = equal;
  require(c, equal, "values differ between primes");
}

std::vector<Json> scalars_json(const Vector& v) {
  std::vector<Json> out;
  for (const auto& s : v) out.emplace_back(s.to_string());
  return out;
}

PetriBasis petri_with_resampling(CanonicalRing& ring, const IdealComponent& i2, std::uint64_t seed, int& attempts,
                                 std::vector<std::string>& log) {
  const auto& model = ring.model();
  for (attempts = 1; attempts <= 10; ++attempts) {
    auto pts = sample_points(model, static_cast<std::size_t>(model.genus()),
                             derive_seed(seed, "petri-points", static_cast<std::uint64_t>(attempts)));
    auto gp = general_position_check(model, i2, pts);
    if (!gp.ok) {
      log.push_back("resampled: " + gp.reason);
      continue;
    }
    try {
      return petri_basis(ring, i2, pts);
    } catch (const PetriError& e) {
      log.push_back(std::string("resampled: ") + e.what());
    }
  }
  throw PetriError("no point set in general position after 10 draws");
}

struct CurveRun {
  std::string path;
  std::string name;
};

CurveRun curve_of(const RunConfig& c) {
  CurveRun cr;
  cr.path = resolve_curve(c.curve);
  cr.name = fs::path(cr.path).stem().string();
  return cr;
}

std::uint64_t seed_for(const RunConfig& c, std::string_view tag, std::uint64_t prime) {
  return derive_seed(c.seed, tag, prime);
}

// Corank of phi2* from the appropriate route; returns -1 if not computable.
struct CorankInfo {
  std::int64_t corank = -1;
  std::string route;
  Json data = Json::object();
};

CorankInfo compute_corank(CanonicalRing& ring, const IdealComponent& i2, std::uint64_t seed) {
  const auto& model = ring.model();
  CorankInfo info;
  const auto sym2 = static_cast<std::int64_t>(i2.dim() * (i2.dim() + 1) / 2);
  if (i2.dim() == 0) {
    info.corank = 0;
    info.route = "empty";
    return info;
  }
  if (model.has_tag("trigonal")) {
    auto tc = trigonal_context(ring, seed);
    auto cr = corank_certificate(tc, i2, derive_seed(seed, "corank"));
    info.route = "trigonal";
    info.data["route_a"] = cr.route_a;
    info.data["route_b"] = cr.route_b;
    info.data["samples_a"] = cr.samples_a;
    info.data["samples_b"] = cr.samples_b;
    info.data["stabilized"] = cr.stabilized;
    info.corank = cr.route_a == cr.route_b ? static_cast<std::int64_t>(cr.route_a) : -1;
    return info;
  }
  int attempts = 0;
  std::vector<std::string> log;
  auto pb = petri_with_resampling(ring, i2, seed, attempts, log);
  auto sr = surjectivity_certificate(ring, i2, pb, derive_seed(seed, "surjectivity"));
  info.route = sr.route;
  info.data["span"] = sr.span_dim;
  info.data["expected"] = sr.expected;
  info.corank = sym2 - static_cast<std::int64_t>(sr.span_dim);
  return info;
}

}  // namespace

void suite_analyze(const RunConfig& c, Report& r) {
  auto cr = curve_of(c);
  auto vals = for_primes(c, r, [&](std::uint64_t p, Report& r, Json& value) {
    auto model = load_model(cr.path, p);
    auto& m = r.add("curve-model", p);
    m.data["name"] = model.name();
    m.data["degree"] = model.degree();
    m.data["genus"] = model.genus();
    Json sing = Json::array();
    for (const auto& s : model.singular_points()) sing.push_back({{"point", s.point.to_string()}, {"multiplicity", s.multiplicity}});
    m.data["singular_points"] = sing;
    m.data["tags"] = model.tags();
    m.data["irreducibility"] = model.irreducibility_certificate();
    m.data["canonical_forms"] = model.canonical_forms().size();
    require(m, static_cast<int>(model.canonical_forms().size()) == model.genus(), "canonical series has the wrong size");

    auto& d = r.add("ideal-dimensions", p);
    try {
      CanonicalRing ring(model);
      const int g = model.genus();
      auto i2 = ideal_component(ring, 2);
      auto i3 = ideal_component(ring, 3);
      auto i4 = ideal_component(ring, 4);
      d.data["I2"] = i2.dim();
      d.data["I3"] = i3.dim();
      d.data["I4"] = i4.dim();
      d.data["expected_I2"] = expected_ideal_dim(g, 2);
      d.data["expected_I4"] = expected_ideal_dim(g, 4);
      require(d, static_cast<std::int64_t>(i2.dim()) == expected_ideal_dim(g, 2), "dim I(2) differs from C(g-2,2)");
      require(d, static_cast<std::int64_t>(i4.dim()) == expected_ideal_dim(g, 4), "dim I(4) differs from projective normality");
      std::size_t samples = c.points.value_or(3 * i2.monomials.size());
      bool vanish = vanishes_on_sample(model, i2, samples, seed_for(c, "vanish", p));
      d.data["vanishing_sample"] = samples;
      d.data["vanishes"] = vanish;
      require(d, vanish, "a quadric does not vanish on sampled canonical points");
      value = {{"genus", g}, {"I2", i2.dim()}, {"I3", i3.dim()}, {"I4", i4.dim()}};
    } catch (const std::exception& e) {
      fail(d, e);
    }
  });
  cross_prime(r, "cross-prime", vals);
}

void suite_syzygies(const RunConfig& c, Report& r) {
  auto cr = curve_of(c);
  auto vals = for_primes(c, r, [&](std::uint64_t p, Report& r, Json& value) {
    auto model = load_model(cr.path, p);
    auto& s = r.add("syzygy-kernel", p);
    try {
      CanonicalRing ring(model);
      auto i2 = ideal_component(ring, 2);
      auto i4 = ideal_component(ring, 4);
      auto rep = syzygy_kernel(i2, i4, seed_for(c, "syzygy", p));
      s.data["genus"] = model.genus();
      s.data["I2"] = rep.ideal2_dim;
      s.data["I4"] = rep.ideal4_dim;
      s.data["sym2_I2"] = rep.sym2_dim;
      s.data["rank_m"] = rep.rank;
      s.data["ker_m"] = rep.kernel_dim;
      s.data["consistent"] = rep.consistency;
      Json ks = Json::array();
      for (const auto& k : rep.kernel) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < k.rows(); ++i) rows.push_back(scalars_json(k.row(i)));
        ks.push_back(rows);
      }
      s.data["kernel"] = ks;
      require(s, rep.consistency, "kernel relations do not reproduce zero in I(4)");
      require(s, rep.rank + rep.kernel_dim == rep.sym2_dim, "rank-nullity violated");
      value = {{"I2", rep.ideal2_dim}, {"I4", rep.ideal4_dim}, {"ker_m", rep.kernel_dim}};
    } catch (const std::exception& e) {
      fail(s, e);
    }
  });
  cross_prime(r, "cross-prime", vals);
}

void suite_petri(const RunConfig& c, Report& r) {
  auto cr = curve_of(c);
  auto vals = for_primes(c, r, [&](std::uint64_t p, Report& r, Json& value) {
    auto model = load_model(cr.path, p);
    const int g = model.genus();
    if (g < 4) {
      auto& s = r.add("petri-basis", p);
      s.verdict = Verdict::Skipped;
      s.message = "no quadrics for genus below 4";
      return;
    }
    CanonicalRing ring(model);
    auto i2 = ideal_component(ring, 2);
    const bool trig = model.has_tag("trigonal");
    const bool quintic = model.has_tag("plane-quintic");
    Json rank_profile = Json::array();
    std::optional<PetriBasis> first;
    for (std::uint64_t k = 0; k < 3; ++k) {
      auto& s = r.add("petri-basis", p);
      std::uint64_t seed = derive_seed(c.seed + k, "petri", p);
      s.data["seed_offset"] = k;
      try {
        int attempts = 0;
        std::vector<std::string> log;
        auto pb = petri_with_resampling(ring, i2, seed, attempts, log);
        Json pts = Json::array();
        for (const auto& q : pb.points) pts.push_back(q.to_string());
        s.data["points"] = pts;
        s.data["attempts"] = attempts;
        if (!log.empty()) s.data["resampling"] = log;
        Json ranks = Json::array();
        bool ranks_ok = true, sing_ok = true;
        for (const auto& q : pb.quadrics) {
          ranks.push_back({{"i", q.i}, {"j", q.j}, {"rank", q.rank}, {"dij_in_sing", q.dij_in_sing}});
          if (trig) {
            ranks_ok = ranks_ok && q.rank == 4;
            sing_ok = sing_ok && q.dij_in_sing;
          } else if (!quintic) {
            ranks_ok = ranks_ok && (q.rank == 5 || q.rank == 6);
          }
        }
        s.data["quadrics"] = ranks;
        s.data["duality"] = pb.duality;
        s.data["span_rank"] = pb.span_rank;
        s.data["spans_ideal"] = pb.spans_ideal;
        s.data["rank_rule"] = trig ? "all 4, singular along D_ij" : (quintic ? "none" : "5 or 6");
        require(s, pb.duality, "dual differentials do not satisfy omega_i(p_j) = delta_ij");
        require(s, pb.spans_ideal, "quadrics do not span I(2)");
        require(s, ranks_ok, "rank outside the expected range");
        require(s, sing_ok, "singular locus misses a D_ij candidate");
        if (k == 0) {
          for (const auto& q : pb.quadrics) rank_profile.push_back(q.rank);
          first = pb;
        }
      } catch (const std::exception& e) {
        fail(s, e);
      }
    }
    value = {{"I2", i2.dim()}, {"ranks", rank_profile}};

    if (trig || !first) return;
    auto& pr = r.add("pair-roundtrip", p);
    try {
      const std::size_t npairs = c.points.value_or(50);
      std::size_t tested = 0, rank6 = 0, discrepancies = 0, polar = 0, roundtrip_fail = 0, checked_pairs = 0;
      std::size_t idx = 0;
      Json per = Json::array();
      for (const auto& q : first->quadrics) {
        ++idx;
        if (q.rank != 5 && q.rank != 6) continue;
        ++tested;
        if (q.rank == 6) ++rank6;
        auto [a, b] = pair_from_quadric(model, q.form, derive_seed(c.seed, "pair", p * 100 + idx));
        bool rt = quadric_from_pair(a).projectively_equal(q.form) && quadric_from_pair(b).projectively_equal(q.form);
        if (!rt) ++roundtrip_fail;
        auto sp = sample_points(model, npairs + 1, derive_seed(c.seed, "pair-points", p * 100 + idx));
        std::size_t disc = 0, pol = 0;
        for (std::size_t k = 0; k + 1 < sp.size(); ++k) {
          auto cp = model.canonical_image(sp[k]);
          auto cq = model.canonical_image(sp[k + 1]);
          bool conj = q.form.polar(cp, cq).is_zero();
          bool sa = !sections_vanishing(a, {cp, cq}).empty();
          bool sb = !sections_vanishing(b, {cp, cq}).empty();
          if (conj != sa || conj != sb) ++disc;
          ++checked_pairs;
        }
        auto cp0 = model.canonical_image(sp[0]);
        Vector lin = q.form.gram() * cp0;
        for (const auto& z : common_zeros(model, ring.adjoint(lin), 4)) {
          if (z == sp[0]) continue;
          auto cz = model.canonical_image(z);
          bool sa = !sections_vanishing(a, {cp0, cz}).empty();
          bool sb = !sections_vanishing(b, {cp0, cz}).empty();
          if (!sa || !sb) ++disc;
          ++pol;
          ++checked_pairs;
        }
        discrepancies += disc;
        polar += pol;
        per.push_back({{"i", q.i}, {"j", q.j}, {"rank", q.rank}, {"roundtrip", rt}, {"pairs", sp.size() - 1},
                       {"conjugate_pairs", pol}, {"discrepancies", disc}});
      }
      pr.data["quadrics"] = per;
      pr.data["tested"] = tested;
      pr.data["rank6"] = rank6;
      pr.data["pairs_checked"] = checked_pairs;
      pr.data["conjugate_pairs"] = polar;
      pr.data["discrepancies"] = discrepancies;
      pr.data["roundtrip_failures"] = roundtrip_fail;
      if (tested == 0) {
        pr.verdict = Verdict::Skipped;
        pr.message = "no Petri quadric of rank 5 or 6";
      }
      require(pr, roundtrip_fail == 0, "quadric not recovered from its pair");
      require(pr, discrepancies == 0, "conjugate-pair criterion disagrees with section counts");
    } catch (const std::exception& e) {
      fail(pr, e);
    }
  });
  cross_prime(r, "cross-prime", vals);
}

void suite_surjectivity(const RunConfig& c, Report& r) {
  auto cr = curve_of(c);
  auto vals = for_primes(c, r, [&](std::uint64_t p, Report& r, Json& value) {
    auto model = load_model(cr.path, p);
    auto& s = r.add("multiplication-span", p);
    try {
      CanonicalRing ring(model);
      auto i2 = ideal_component(ring, 2);
      const int g = model.genus();
      const auto sym2 = static_cast<std::int64_t>(i2.dim() * (i2.dim() + 1) / 2);
      s.data["I2"] = i2.dim();
      s.data["sym2_I2"] = sym2;
      if (g < 4) {
        s.verdict = Verdict::Skipped;
        s.message = "no quadrics for genus below 4";
        return;
      }
      if (model.has_tag("trigonal")) {
        auto tc = trigonal_context(ring, seed_for(c, "trigonal", p));
        auto cor = corank_certificate(tc, i2, seed_for(c, "corank", p));
        std::int64_t expected = choose(g - 2, 4);
        s.data["route"] = "trigonal";
        s.data["route_a"] = cor.route_a;
        s.data["route_b"] = cor.route_b;
        s.data["samples_a"] = cor.samples_a;
        s.data["samples_b"] = cor.samples_b;
        s.data["stabilized"] = cor.stabilized;
        s.data["expected_corank"] = expected;
        s.data["span"] = sym2 - static_cast<std::int64_t>(cor.route_b);
        require(s, cor.stabilized, "decomposable sample did not stabilise");
        require(s, cor.route_a == cor.route_b, "corank routes disagree");
        require(s, static_cast<std::int64_t>(cor.route_a) == expected, "corank differs from C(g-2,4)");
        value = {{"corank", cor.route_a}};
      } else {
        int attempts = 0;
        std::vector<std::string> log;
        auto pb = petri_with_resampling(ring, i2, seed_for(c, "petri", p), attempts, log);
        auto sr = surjectivity_certificate(ring, i2, pb, seed_for(c, "surjectivity", p));
        s.data["route"] = sr.route;
        s.data["step1"] = sr.step1_dim;
        s.data["span"] = sr.span_dim;
        s.data["expected"] = sr.expected;
        s.data["monotone"] = sr.monotone;
        Json contrib = Json::array();
        for (const auto& k : sr.contributions) {
          Json params = Json::array();
          for (const auto& x : k.params) params.push_back(x.to_string());
          contrib.push_back({{"step", k.step}, {"indices", k.indices}, {"params", params}, {"span_after", k.rank}});
        }
        s.data["contributions"] = contrib;
        if (!sr.failures.empty()) s.data["failures"] = sr.failures;
        require(s, static_cast<std::int64_t>(sr.span_dim) == sym2, "squares do not span Sym2 I(2)");
        value = {{"span", sr.span_dim}};
      }
    } catch (const std::exception& e) {
      fail(s, e);
    }
  });
  cross_prime(r, "cross-prime", vals);
}

void suite_trigonal(const RunConfig& c, Report& r) {
  auto cr = curve_of(c);
  auto vals = for_primes(c, r, [&](std::uint64_t p, Report& r, Json& value) {
    auto model = load_model(cr.path, p);
    const auto& f = model.field();
    CanonicalRing ring(model);
    auto& ctxc = r.add("trigonal-context", p);
    std::optional<TrigonalContext> tc;
    try {
      tc = trigonal_context(ring, seed_for(c, "trigonal", p));
      ctxc.data["centre"] = tc->centre.to_string();
      ctxc.data["dim_V"] = tc->dim_v();
      ctxc.data["fibers"] = tc->fibers.size();
      require(ctxc, static_cast<int>(tc->dim_v()) == model.genus() - 2, "dim V differs from g - 2");
    } catch (const std::exception& e) {
      fail(ctxc, e);
      return;
    }
    auto i2 = ideal_component(ring, 2);
    auto& iso = r.add("beta-isomorphism", p);
    try {
      auto rep = beta_iso_certificate(ring, *tc, i2);
      iso.data["rank"] = rep.rank;
      iso.data["expected"] = rep.expected;
      iso.data["I2"] = i2.dim();
      iso.data["all_in_ideal"] = rep.all_in_ideal;
      iso.data["trisecants_contained"] = rep.trisecants_contained;
      iso.data["fibers_checked"] = rep.fibers_checked;
      require(iso, rep.ok, rep.reason.empty() ? "certificate failed" : rep.reason);
      value = {{"rank", rep.rank}};
    } catch (const std::exception& e) {
      fail(iso, e);
    }
    auto& cor = r.add("corank", p);
    try {
      auto rep = corank_certificate(*tc, i2, seed_for(c, "corank", p));
      cor.data["route_a"] = rep.route_a;
      cor.data["route_b"] = rep.route_b;
      cor.data["expected"] = rep.expected;
      cor.data["samples_a"] = rep.samples_a;
      cor.data["samples_b"] = rep.samples_b;
      cor.data["stabilized"] = rep.stabilized;
      require(cor, rep.stabilized, "sample did not stabilise");
      require(cor, rep.route_a == rep.route_b, "routes disagree");
      require(cor, rep.route_a == rep.expected, "corank differs from C(g-2,4)");
      value["corank"] = rep.route_a;
    } catch (const std::exception& e) {
      fail(cor, e);
    }
    auto& beta = r.add("beta-quadrics", p);
    try {
      Rng rng(seed_for(c, "beta-samples", p));
      auto rnd = [&] {
        Vector v(tc->dim_v());
        for (auto& x : v) x = rng.scalar(f);
        return v;
      };
      auto tc2 = rebased(ring, *tc, rng.nonzero_scalar(f), rng.scalar(f), rng.scalar(f), rng.nonzero_scalar(f));
      const std::size_t n = c.points.value_or(50);
      std::size_t bad_rank = 0, bad_ideal = 0, bad_alt = 0, bad_choice = 0, bad_delta = 0;
      for (std::size_t k = 0; k < n; ++k) {
        Vector v = rnd(), w = rnd();
        auto q = beta_map(*tc, v, w);
        if (q.rank() > 4) ++bad_rank;
        if (!in_ideal(ring, q)) ++bad_ideal;
        if (!beta_map(*tc, v, v).is_zero()) ++bad_alt;
        auto q2 = beta_map(tc2, v, w);
        if (!q.is_zero() && !q2.projectively_equal(q)) ++bad_choice;
        Vector u1 = add(scale(rng.nonzero_scalar(f), v), scale(rng.scalar(f), w));
        Vector u2 = add(scale(rng.scalar(f), v), scale(rng.nonzero_scalar(f), w));
        auto dq = delta_quadric(*tc, {u1, u2});
        if (!dq.is_zero() && !dq.projectively_equal(q)) ++bad_delta;
      }
      beta.data["samples"] = n;
      beta.data["rank_above_4"] = bad_rank;
      beta.data["outside_ideal"] = bad_ideal;
      beta.data["not_alternating"] = bad_alt;
      beta.data["pencil_dependence"] = bad_choice;
      beta.data["delta_mismatch"] = bad_delta;
      require(beta, bad_rank + bad_ideal + bad_alt + bad_choice + bad_delta == 0, "beta-map property violated");
    } catch (const std::exception& e) {
      fail(beta, e);
    }
  });
  cross_prime(r, "cross-prime", vals);
}

void suite_epqr(const RunConfig& c, Report& r) {
  auto cr = curve_of(c);
  for_primes(c, r, [&](std::uint64_t p, Report& r, Json&) {
    auto model = load_model(cr.path, p);
    const int g = model.genus();
    if (g < 4) {
      auto& s = r.add("extension-classes", p);
      s.verdict = Verdict::Skipped;
      s.message = "requires genus at least 4";
      return;
    }
    const std::size_t ntrip = c.points.value_or(20);
    auto pts = sample_points(model, 3 * ntrip, seed_for(c, "epqr-points", p));
    std::vector<ExtensionClass> classes;
    auto& ex = r.add("extension-classes", p);
    std::size_t agree = 0, dim_ok = 0, collinear = 0;
    for (std::size_t t = 0; t < ntrip; ++t) {
      try {
        auto e = build_Epqr(model, pts[3 * t], pts[3 * t + 1], pts[3 * t + 2], derive_seed(c.seed, "epqr", t));
        if (e.paths_agree) ++agree;
        if (static_cast<int>(e.h0_minus_2p_2q) == g - 2) ++dim_ok;
        classes.push_back(std::move(e));
      } catch (const CollinearError&) {
        ++collinear;
      } catch (const std::exception& e) {
        fail(ex, e);
      }
    }
    ex.data["triples"] = ntrip;
    ex.data["collinear_skipped"] = collinear;
    ex.data["non_collinear"] = classes.size();
    ex.data["paths_agree"] = agree;
    ex.data["dim_g_minus_2"] = dim_ok;
    require(ex, agree == classes.size(), "construction paths disagree");
    require(ex, dim_ok == classes.size(), "h0(K x^2 (-2p-2q)) differs from g - 2");

    if (model.has_tag("trigonal")) {
      auto& col = r.add("collinear-rejection", p);
      try {
        CanonicalRing ring(model);
        auto tc = trigonal_context(ring, seed_for(c, "trigonal", p));
        std::size_t rejected = 0, tried = 0;
        for (const auto& fib : tc.fibers) {
          if (fib.size() < 3) continue;
          ++tried;
          try {
            build_Epqr(model, fib[0], fib[1], fib[2]);
          } catch (const CollinearError&) {
            ++rejected;
          }
        }
        col.data["fibers"] = tried;
        col.data["rejected"] = rejected;
        require(col, tried > 0 && rejected == tried, "a collinear fiber was accepted");
      } catch (const std::exception& e) {
        fail(col, e);
      }
    }

    auto& inc = r.add("theta-incidence", p);
    try {
      auto proxies = sing_theta_proxies(model, 3, seed_for(c, "proxies", p));
      inc.data["proxies"] = proxies.size();
      std::size_t holds = 0, total = 0;
      std::map<std::string, std::size_t> branches;
      const std::size_t use = std::min<std::size_t>(classes.size(), 10);
      for (std::size_t t = 0; t < use; ++t)
        for (const auto& a : proxies) {
          auto res = theta_incidence_check(model, classes[t], a);
          ++total;
          if (res.holds) ++holds;
          ++branches[res.branch];
        }
      inc.data["combinations"] = total;
      inc.data["holds"] = holds;
      Json br = Json::object();
      for (const auto& [k, v] : branches) br[k] = v;
      inc.data["branches"] = br;
      std::size_t neg_total = 0, neg_fail = 0;
      if (!classes.empty())
        for (const auto& a : proxies) {
          Vector bad = classes[0].functional;
          bad[0] = bad[0] + Scalar::one(model.field());
          auto res = theta_incidence_check(model, classes[0], a, bad);
          if (res.branch != "coboundary") continue;
          ++neg_total;
          if (!res.holds) ++neg_fail;
        }
      inc.data["negative_controls"] = neg_total;
      inc.data["negative_controls_failing"] = neg_fail;
      require(inc, !proxies.empty(), "no theta-divisor proxies found");
      require(inc, holds == total, "incidence fails on a proxy");
      require(inc, neg_total == 0 || neg_fail > 0, "negative control unexpectedly holds");
    } catch (const std::exception& e) {
      fail(inc, e);
    }
  });
}

void suite_gamma(const RunConfig& c, Report& r) {
  auto cr = curve_of(c);
  auto vals = for_primes(c, r, [&](std::uint64_t p, Report& r, Json& value) {
    auto model = load_model(cr.path, p);
    auto& t = r.add("gamma-table", p);
    try {
      CanonicalRing ring(model);
      const int g = model.genus();
      auto i2 = ideal_component(ring, 2);
      auto i4 = ideal_component(ring, 4);
      auto syz = syzygy_kernel(i2, i4, seed_for(c, "syzygy", p));
      auto cor = compute_corank(ring, i2, seed_for(c, "corank", p));
      t.data["corank_route"] = cor.route;
      t.data["corank_detail"] = cor.data;
      if (cor.corank < 0) throw GammaError("corank routes disagree");
      auto tab = gamma_dimensions(g, cor.corank, static_cast<std::int64_t>(syz.kernel_dim), static_cast<std::int64_t>(i2.dim()));
      t.data["genus"] = g;
      Json entries = Json::array();
      for (const auto& e : tab.entries()) entries.push_back({{"name", e.name}, {"value", e.value}, {"source", e.source}});
      t.data["entries"] = entries;
      t.data["G00"] = tab.gamma00;
      t.data["G00_2"] = tab.gamma00_2;
      t.data["G11"] = tab.gamma11;
      t.data["G000"] = tab.gamma000;
      t.data["chain_consistent"] = tab.chain_consistent();
      require(t, tab.chain_consistent(), "inclusion chain violated");
      value = {{"G11", tab.gamma11}, {"G000", tab.gamma000}};
    } catch (const std::exception& e) {
      fail(t, e);
    }
  });
  cross_prime(r, "cross-prime", vals);
}

namespace {

CVector random_w(Rng& rng, int g, double re, double im) {
  CVector w(g);
  for (int i = 0; i < g; ++i) {
    double a = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    double b = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
    w[i] = cplx((2 * a - 1) * re, (2 * b - 1) * im);
  }
  return w;
}

double rel_err(const CVector& a, const CVector& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

Json sv_json(const std::vector<double>& sv) { return Json(sv); }

void kummer_cert(Certificate& k, const KummerReport& kr, std::size_t expected) {
  k.data["genus"] = kr.genus;
  k.data["ambient"] = kr.ambient;
  k.data["tangent_dim"] = kr.tangent_dim;
  k.data["gamma00_dim"] = kr.gamma00_dim;
  k.data["expected_tangent_dim"] = expected;
  k.data["threshold"] = kr.threshold;
  k.data["gap_ratio"] = kr.gap_ratio;
  k.data["singular_values"] = sv_json(kr.singular_values);
  if (kr.indeterminate) {
    k.verdict = Verdict::Indeterminate;
    k.message = "singular value within three orders of the threshold";
    return;
  }
  require(k, kr.tangent_dim + kr.gamma00_dim == kr.ambient, "dimensions do not sum to 2^g");
  require(k, kr.tangent_dim == expected, "tangent span has unexpected dimension");
  require(k, kr.gap_ratio > 1e6, "singular-value gap below 1e6");
}

}  // namespace

void suite_theta(const RunConfig& c, Report& r) {
  CMatrix omega;
  std::string source;
  if (!c.fixture.empty()) {
    if (!readable(c.fixture)) throw CliError(kExitUnreadableFile, "cannot read " + c.fixture);
    try {
      omega = load_abelian_fixture(c.fixture).omega;
    } catch (const ThetaError& e) {
      throw CliError(kExitInvalidInput, e.what());
    }
    source = "fixture";
  } else {
    int g = c.genus.value_or(3);
    if (g < 1 || g > 6) throw CliError(kExitUsage, "--genus must lie in 1..6");
    omega = random_period_matrix(g, c.seed);
    source = "random";
  }
  ThetaContext ctx = make_theta_context(omega, c.epsilon);
  const int g = ctx.genus;
  auto& cc = r.add("theta-context");
  cc.data["genus"] = g;
  cc.data["source"] = source;
  cc.data["epsilon"] = ctx.epsilon;
  cc.data["radius"] = ctx.radius;
  cc.data["lattice_min"] = ctx.lattice_min;
  Json om = Json::array();
  for (int i = 0; i < g; ++i) {
    Json row = Json::array();
    for (int j = 0; j < g; ++j) row.push_back({ctx.omega(i, j).real(), ctx.omega(i, j).imag()});
    om.push_back(row);
  }
  cc.data["omega"] = om;

  Rng rng(derive_seed(c.seed, "theta-samples"));
  const std::size_t n = c.points.value_or(20);

  auto& ev = r.add("evenness");
  double even = 0;
  for (std::size_t k = 0; k < n; ++k) {
    CVector w = random_w(rng, g, 0.5, 0.3);
    even = std::max(even, rel_err(theta2(ctx, -w).values, theta2(ctx, w).values));
  }
  ev.data["samples"] = n;
  ev.data["residual"] = even;
  require(ev, even < 1e-12, "evenness residual above 1e-12");

  auto& per = r.add("periodicity");
  double period = 0;
  for (std::size_t k = 0; k < std::min<std::size_t>(n, 10); ++k) {
    CVector w = random_w(rng, g, 0.5, 0.3);
    Eigen::VectorXd m(g), nn(g);
    for (int i = 0; i < g; ++i) {
      m[i] = static_cast<double>(static_cast<int>(rng.below(3)) - 1);
      nn[i] = static_cast<double>(static_cast<int>(rng.below(3)) - 1);
    }
    CVector lam = ctx.omega * m.cast<cplx>() + nn.cast<cplx>();
    CVector lhs = theta2(ctx, w + lam).values;
    CVector rhs = lattice_multiplier(ctx, m, w) * theta2(ctx, w).values;
    period = std::max(period, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(lhs.cwiseAbs().maxCoeff(), 1e-300));
  }
  per.data["residual"] = period;
  require(per, period < 1e-9, "periodicity residual above 1e-9");

  auto& fd = r.add("finite-differences");
  double d1 = 0, d2 = 0;
  const double h = 1e-5;
  for (std::size_t k = 0; k < 10; ++k) {
    CVector w = random_w(rng, g, 0.5, 0.3);
    CVector a = random_w(rng, g, 1.0, 1.0);
    a /= a.norm();
    CVector b = random_w(rng, g, 1.0, 1.0);
    b /= b.norm();
    CVector an = theta2_directional(ctx, w, {a});
    CVector num = (theta2(ctx, w + h * a).values - theta2(ctx, w - h * a).values) / (2 * h);
    d1 = std::max(d1, rel_err(num, an));
    CVector an2 = theta2_directional(ctx, w, {a, b});
    CVector num2 = (theta2_directional(ctx, w + h * b, {a}) - theta2_directional(ctx, w - h * b, {a})) / (2 * h);
    d2 = std::max(d2, rel_err(num2, an2));
  }
  fd.data["step"] = h;
  fd.data["first_order"] = d1;
  fd.data["second_order"] = d2;
  require(fd, d1 < 1e-7, "first derivative disagrees with central differences");
  require(fd, d2 < 1e-6, "second derivative disagrees with central differences");

  auto& tail = r.add("radius-doubling");
  double tdiff = 0;
  ThetaContext wide = ctx;
  wide.radius_factor = 2.0;
  for (std::size_t k = 0; k < 5; ++k) {
    CVector w = random_w(rng, g, 0.5, 0.3);
    tdiff = std::max(tdiff, (theta2(wide, w).values - theta2(ctx, w).values).cwiseAbs().maxCoeff());
  }
  tail.data["max_change"] = tdiff;
  tail.data["allowed"] = 2 * ctx.epsilon + 1e-13;
  require(tail, tdiff < 2 * ctx.epsilon + 1e-13, "doubling the radius changes values");

  auto& k = r.add("kummer-tangent");
  auto kr = kummer_tangent_report(ctx);
  std::size_t expected = std::min<std::size_t>(std::size_t{1} << g, static_cast<std::size_t>(1 + g * (g + 1) / 2));
  kummer_cert(k, kr, expected);

  auto& dg = r.add("diagonal-control");
  auto kd = kummer_tangent_report(make_theta_context(diagonal_period_matrix(g, c.seed), c.epsilon));
  kummer_cert(dg, kd, static_cast<std::size_t>(1 + g));
}

void suite_gunning(const RunConfig& c, Report& r) {
  std::string path = c.fixture.empty() ? default_fixture() : c.fixture;
  if (!fs::exists(path)) {
    auto& s = r.add("gunning-suite");
    s.verdict = Verdict::Skipped;
    s.message = "fixture not found: " + path;
    return;
  }
  if (!readable(path)) throw CliError(kExitUnreadableFile, "cannot read " + path);
  AbelianFixture fx;
  try {
    fx = load_abelian_fixture(path);
    validate_fixture(fx);
  } catch (const ThetaError& e) {
    throw CliError(kExitInvalidInput, e.what());
  }
  ThetaContext ctx = make_theta_context(fx.omega, c.epsilon);
  auto kr = kummer_tangent_report(ctx);
  auto& f = r.add("fixture");
  f.data["path"] = fs::path(path).filename().string();
  f.data["schema"] = fx.schema;
  f.data["genus"] = fx.genus;
  f.data["points"] = fx.size();
  f.data["normalization"] = fx.normalization;
  auto& k = r.add("kummer-tangent");
  kummer_cert(k, kr, std::min<std::size_t>(std::size_t{1} << fx.genus, static_cast<std::size_t>(1 + fx.genus * (fx.genus + 1) / 2)));

  GunningSuite suite(ctx, fx, kr);
  auto rep = suite.run();
  const double tol = 1e-6;
  auto resid = [&](const std::string& name, double v, const std::string& why) {
    auto& e = r.add(name);
    e.data["residual"] = v;
    e.data["tolerance"] = tol;
    require(e, v < tol, why);
    return &e;
  };
  resid("xi-skew-symmetry", rep.xi_skew, "xi is not skew-symmetric")->data["xi_magnitude"] = rep.xi_magnitude;
  resid("sigma-symmetry", rep.sigma_symmetry, "sigma is not symmetric in its middle arguments");
  resid("tau-symmetry", rep.tau_symmetry, "tau is not symmetric in its argument pairs");
  auto* one = resid("quartic-jet-identity", rep.quartic_jet, "fourth-derivative identity violated");
  one->data["tuples"] = rep.tuples;
  one->data["term_scale"] = rep.identity_scale;
  resid("secant-identity", rep.secant, "secant identity violated")->data["tuples"] = rep.tuples;
  auto& span = r.add("xi-span");
  span.data["dimension"] = rep.xi_span;
  span.data["bound"] = rep.xi_bound;
  require(span, rep.xi_span <= rep.xi_bound, "xi span exceeds C(g,3)");
  auto* fr = resid("difference-surface", rep.frobenius, "a G00 element does not vanish on C - C");
  fr->data["gamma00_dim"] = kr.gamma00_dim;
  auto& neg = r.add("difference-surface-control");
  neg.data["residual"] = rep.negative_control;
  require(neg, rep.negative_control > 1e-3, "coordinate function unexpectedly vanishes on C - C");
}

Report run(const RunConfig& config) {
  Report r;
  r.config = config;
  if (config.timestamp) {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    r.timestamp = buf;
  }
  for (auto p : config.primes)
    if (!is_prime_number(p) || p < 1009) throw CliError(kExitUsage, "primes must be odd primes >= 1009");
  set_linalg_threads(std::max(1U, config.threads));
  static const std::map<std::string, void (*)(const RunConfig&, Report&)> table = {
      {"analyze", suite_analyze},   {"petri", suite_petri},     {"syzygies", suite_syzygies},
      {"surjectivity", suite_surjectivity}, {"trigonal", suite_trigonal}, {"epqr", suite_epqr},
      {"gamma", suite_gamma},       {"theta", suite_theta},     {"gunning", suite_gunning},
  };
  auto it = table.find(config.subcommand);
  if (it == table.end()) throw CliError(kExitUnknownSubcommand, "unknown subcommand '" + config.subcommand + "'");
  it->second(config, r);
  return r;
}

}  // namespace thetalab::cli
