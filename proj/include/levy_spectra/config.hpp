#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levy_spectra/lattice.hpp"

namespace levy_spectra {

// Flat key/value view of a TOML-style file: `key = value` lines, `#`
// comments, `[section]` headers (prefixing later keys with "section."),
// numbers, quoted strings, booleans and one-level arrays.
class ConfigTable {
public:
    static ConfigTable parse(const std::string& text);
    static ConfigTable load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, const std::string& raw) { values_[key] = raw; }
    // Keys of `other` replace existing ones.
    void merge(const ConfigTable& other);

    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<std::int64_t> get_ints(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    const std::map<std::string, std::string>& raw() const noexcept { return values_; }

private:
    const std::string& require(const std::string& key) const;
    std::map<std::string, std::string> values_;
};

enum class OutputFormat { Csv, Json, Both };

OutputFormat format_from_string(const std::string& name);
std::string to_string(OutputFormat f);

struct CampaignConfig {
    std::string name = "campaign";
    ModelSpec model;

    // window: E_0 and the base interval I = [a, b]
    double center = 0.0;
    double a = -0.5;
    double b = 0.5;
    std::vector<double> lengths;         // |I| values for simulate / fit
    std::vector<double> wegner_lengths;  // |I| values for wegner
    std::vector<double> minami_lengths;  // |I| values for minami

    std::vector<int> boxes;  // half sides L
    std::size_t realizations = 1000;
    std::uint64_t seed = 1;
    int workers = 0;

    bool blocks_enabled = false;
    double blocks_epsilon = 0.1;
    int blocks_half_side = 0;  // 0: derive from L

    double dos_e_min = -1.0;
    double dos_e_max = 1.0;
    int dos_points = 101;
    double dos_bandwidth = 0.05;

    std::string out_dir = "levy_out";
    OutputFormat format = OutputFormat::Both;

    // Throws ConfigError naming the offending field.
    void validate() const;
    // Deterministic text form of every resolved field; hashed into manifests.
    std::string canonical() const;
};

// Resolves a parsed table into a validated campaign configuration.
CampaignConfig campaign_from_table(const ConfigTable& table);

// Names of the built-in presets and their config text.
std::vector<std::string> preset_names();
std::optional<std::string> preset_text(const std::string& name);
ConfigTable preset_table(const std::string& name);
CampaignConfig load_preset(const std::string& name);

// Decimal or 0x-prefixed unsigned 64-bit value; ConfigError names `field`.
std::uint64_t parse_seed(const std::string& field, const std::string& text);

// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace levy_spectra
