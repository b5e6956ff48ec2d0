// Named verification suites composing the library operations into
// pass/fail reports with sweep tables.
#pragma once

#include "config.hpp"
#include "report.hpp"

namespace heatindex {

// Executes the configured suite; deterministic for a fixed config.  Writes
// report.json and the CSV tables when cfg.out_dir is nonempty.  Config
// problems raise ConfigError; anything else raises std::exception with a
// message that names the failing stage.
VerificationReport run_suite(const RunConfig& cfg);

// Individual suites (cfg.suite is ignored).
void suite_mckean_singer(const RunConfig& cfg, VerificationReport& report);
void suite_mehler(const RunConfig& cfg, VerificationReport& report);
void suite_rescale(const RunConfig& cfg, VerificationReport& report);
void suite_jlo_limit(const RunConfig& cfg, VerificationReport& report);
void suite_k_pairing(const RunConfig& cfg, VerificationReport& report);
void suite_charclass(const RunConfig& cfg, VerificationReport& report);

}  // namespace heatindex
