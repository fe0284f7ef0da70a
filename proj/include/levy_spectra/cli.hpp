#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "levy_spectra/config.hpp"

namespace levy_spectra {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitNoArtifacts = 3 };

inline constexpr const char* kSeedEnv = "LEVY_SPECTRA_SEED";

// Command-line layer over a campaign config. Precedence, lowest first:
// preset, config file, LEVY_SPECTRA_SEED (seed only), flags.
struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> preset;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations;
    std::optional<int> workers;
    std::optional<std::string> format;
    bool read_env = true;
};

CampaignConfig resolve_campaign(const Overrides& o);

// Each command writes into cfg.out_dir, finishing with manifest_{command}.json,
// and logs one line per artifact to `log`.
int cmd_simulate(const CampaignConfig& cfg, std::ostream& log);
int cmd_dos(const CampaignConfig& cfg, std::ostream& log);
int cmd_wegner(const CampaignConfig& cfg, std::ostream& log);
int cmd_minami(const CampaignConfig& cfg, std::ostream& log);
int cmd_fit(const CampaignConfig& cfg, std::ostream& log);
// Compares the artifacts in `dir` with the predicted limits; writes report.md.
int cmd_report(const std::filesystem::path& dir, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levy_spectra
