#pragma once

#include <string>

#include "report.hpp"

namespace thetalab::cli {

// Resolves a curve argument: an existing path, or a fixture name looked up in the data directory.
std::string resolve_curve(const std::string& arg);
std::string data_dir();
std::string default_fixture();

Report run(const RunConfig& config);

void suite_analyze(const RunConfig& c, Report& r);
void suite_petri(const RunConfig& c, Report& r);
void suite_syzygies(const RunConfig& c, Report& r);
void suite_surjectivity(const RunConfig& c, Report& r);
void suite_trigonal(const RunConfig& c, Report& r);
void suite_epqr(const RunConfig& c, Report& r);
void suite_gamma(const RunConfig& c, Report& r);
void suite_theta(const RunConfig& c, Report& r);
void suite_gunning(const RunConfig& c, Report& r);

}  // namespace thetalab::cli
