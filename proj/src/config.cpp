#include "levy_spectra/config.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <fstream>
#include <sstream>

#include "levy_spectra/error.hpp"

namespace levy_spectra {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_array(const std::string& key, const std::string& raw) {
    if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']')
        throw ConfigError(fmt::format("field '{}' must be an array like [1, 2]", key));
    std::vector<std::string> items;
    std::stringstream ss(raw.substr(1, raw.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

double parse_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(fmt::format("field '{}' must be a finite number (got '{}')", key, text));
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(fmt::format("field '{}' must be an integer (got '{}')", key, text));
}

}  // namespace

std::uint64_t parse_seed(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        if (!text.empty() && text.front() != '-') {
            const unsigned long long v = std::stoull(text, &used, 0);
            if (used == text.size()) return v;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError(fmt::format("field '{}' must be an unsigned 64-bit integer (got '{}')", field, text));
}

// ---- ConfigTable -----------------------------------------------------------

ConfigTable ConfigTable::parse(const std::string& text) {
    ConfigTable table;
    std::stringstream ss(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError(fmt::format("line {}: empty key or value", line_no));
        table.values_[section.empty() ? key : section + "." + key] = value;
    }
    return table;
}

void ConfigTable::merge(const ConfigTable& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
}

ConfigTable ConfigTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

const std::string& ConfigTable::require(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(fmt::format("missing required field '{}'", key));
    return it->second;
}

std::string ConfigTable::get_string(const std::string& key) const { return unquote(require(key)); }
double ConfigTable::get_double(const std::string& key) const { return parse_double(key, require(key)); }
std::int64_t ConfigTable::get_int(const std::string& key) const { return parse_int(key, require(key)); }

bool ConfigTable::get_bool(const std::string& key) const {
    const auto v = unquote(require(key));
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(fmt::format("field '{}' must be true or false (got '{}')", key, v));
}

std::vector<double> ConfigTable::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_array(key, require(key))) out.push_back(parse_double(key, item));
    return out;
}

std::vector<std::int64_t> ConfigTable::get_ints(const std::string& key) const {
    std::vector<std::int64_t> out;
    for (const auto& item : split_array(key, require(key))) out.push_back(parse_int(key, item));
    return out;
}

std::string ConfigTable::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}
double ConfigTable::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}
std::int64_t ConfigTable::get_int(const std::string& key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}
bool ConfigTable::get_bool(const std::string& key, bool fallback) const { return has(key) ? get_bool(key) : fallback; }

// ---- CampaignConfig ----------------------------------------------------------

OutputFormat format_from_string(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    if (name == "both") return OutputFormat::Both;
    throw ConfigError(fmt::format("field 'output.format' must be csv, json or both (got '{}')", name));
}

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Both: return "both";
    }
    return "both";
}

namespace {

DisorderLaw disorder_from_table(const ConfigTable& t) {
    const auto kind = t.get_string("disorder.kind");
    if (kind == "uniform") {
        const double a = t.get_double("disorder.a");
        const double b = t.get_double("disorder.b");
        if (!(a < b)) throw ConfigError(fmt::format("fields 'disorder.a' < 'disorder.b' required (got {} and {})", a, b));
        return DisorderLaw::uniform(a, b);
    }
    if (kind == "piecewise_linear") return DisorderLaw::piecewise_linear(t.get_doubles("disorder.x"), t.get_doubles("disorder.density"));
    throw ConfigError(fmt::format("field 'disorder.kind' must be uniform or piecewise_linear (got '{}')", kind));
}

ModelSpec model_from_table(const ConfigTable& t) {
    ModelSpec spec;
    spec.dim = static_cast<int>(t.get_int("dim"));
    spec.variant = variant_from_string(t.get_string("variant"));
    spec.hopping = t.get_double("hopping");
    spec.disorder = disorder_from_table(t);
    const auto rank = t.get_int("rank", 0);
    switch (spec.variant) {
        case Variant::RankOneSite:
        case Variant::Dimer: spec.block_param = 1; break;
        case Variant::MatrixValued:
        case Variant::Diagonal:
            if (rank < 1) throw ConfigError(fmt::format("field 'rank' must be >= 1 for {}", to_string(spec.variant)));
            spec.block_param = static_cast<int>(rank);
            break;
        case Variant::PolymerBlock:
            if (t.has("block_side")) {
                spec.block_param = static_cast<int>(t.get_int("block_side"));
            } else {
                if (rank < 1) throw ConfigError("polymer_block needs field 'block_side' or 'rank'");
                spec.block_param = static_cast<int>(std::lround(std::pow(static_cast<double>(rank), 1.0 / spec.dim)));
            }
            break;
    }
    spec.validate();
    if (rank != 0 && rank != spec.rank())
        throw ConfigError(fmt::format("field 'rank' = {} is inconsistent with variant {} (rank {})", rank,
                                      to_string(spec.variant), spec.rank()));
    return spec;
}

std::vector<int> to_ints(const std::vector<std::int64_t>& v) {
    std::vector<int> out;
    for (auto x : v) out.push_back(static_cast<int>(x));
    return out;
}

}  // namespace

CampaignConfig campaign_from_table(const ConfigTable& t) {
    CampaignConfig c;
    c.name = t.get_string("name", "campaign");
    c.model = model_from_table(t);

    c.center = t.get_double("window.center");
    c.a = t.get_double("window.a", -0.5);
    c.b = t.get_double("window.b", 0.5);
    c.lengths = t.has("window.lengths") ? t.get_doubles("window.lengths") : std::vector<double>{c.b - c.a};
    c.minami_lengths = t.has("minami.lengths") ? t.get_doubles("minami.lengths") : c.lengths;
    if (t.has("wegner.lengths"))
        c.wegner_lengths = t.get_doubles("wegner.lengths");
    else
        c.wegner_lengths = c.lengths.size() >= 2 ? c.lengths : c.minami_lengths;

    if (t.has("run.boxes"))
        c.boxes = to_ints(t.get_ints("run.boxes"));
    else
        c.boxes = {static_cast<int>(t.get_int("half_side"))};
    const auto realizations = t.get_int("run.realizations", 1000);
    if (realizations < 1) throw ConfigError("field 'run.realizations' must be positive");
    c.realizations = static_cast<std::size_t>(realizations);
    c.seed = t.has("seed") ? parse_seed("seed", t.get_string("seed")) : 1;
    c.workers = static_cast<int>(t.get_int("run.workers", 0));

    c.blocks_enabled = t.get_bool("blocks.enabled", false);
    c.blocks_epsilon = t.get_double("blocks.epsilon", 0.1);
    c.blocks_half_side = static_cast<int>(t.get_int("blocks.half_side", 0));

    c.dos_e_min = t.get_double("dos.e_min", c.model.disorder.support_min() - 2.0 * c.model.dim * c.model.hopping - 0.5);
    c.dos_e_max = t.get_double("dos.e_max", c.model.disorder.support_max() + 2.0 * c.model.dim * c.model.hopping + 0.5);
    c.dos_points = static_cast<int>(t.get_int("dos.points", 101));
    c.dos_bandwidth = t.get_double("dos.bandwidth", 2.0 * (c.dos_e_max - c.dos_e_min) / std::max(1, c.dos_points - 1));

    c.out_dir = t.get_string("output.dir", "levy_out");
    c.format = format_from_string(t.get_string("output.format", "both"));
    c.validate();
    return c;
}

void CampaignConfig::validate() const {
    model.validate();
    if (!(a <= b)) throw ConfigError(fmt::format("fields 'window.a' <= 'window.b' required (got {} and {})", a, b));
    if (boxes.empty()) throw ConfigError("field 'run.boxes' must list at least one half side");
    for (int L : boxes) {
        if (L < 1) throw ConfigError(fmt::format("field 'run.boxes' entries must be positive (got {})", L));
        (void)fit_box(model, L);
    }
    for (double len : lengths)
        if (!(len >= 0.0)) throw ConfigError(fmt::format("field 'window.lengths' entries must be >= 0 (got {})", len));
    for (double len : minami_lengths)
        if (!(len > 0.0)) throw ConfigError(fmt::format("field 'minami.lengths' entries must be > 0 (got {})", len));
    for (double len : wegner_lengths)
        if (!(len >= 0.0)) throw ConfigError(fmt::format("field 'wegner.lengths' entries must be >= 0 (got {})", len));
    if (lengths.empty()) throw ConfigError("field 'window.lengths' must not be empty");
    if (realizations == 0) throw ConfigError("field 'run.realizations' must be positive");
    if (workers < 0) throw ConfigError("field 'run.workers' must be >= 0");
    if (!(blocks_epsilon > 0.0 && blocks_epsilon < 1.0)) throw ConfigError("field 'blocks.epsilon' must lie in (0, 1)");
    if (blocks_half_side < 0) throw ConfigError("field 'blocks.half_side' must be >= 0");
    if (!(dos_e_min < dos_e_max)) throw ConfigError("fields 'dos.e_min' < 'dos.e_max' required");
    if (dos_points < 2) throw ConfigError("field 'dos.points' must be >= 2");
    if (!(dos_bandwidth > 0.0)) throw ConfigError("field 'dos.bandwidth' must be positive");
    if (out_dir.empty()) throw ConfigError("field 'output.dir' must not be empty");
}

std::string CampaignConfig::canonical() const {
    std::string disorder;
    if (const auto* u = std::get_if<UniformLaw>(&model.disorder.law())) {
        disorder = fmt::format("disorder.kind = \"uniform\"\ndisorder.a = {}\ndisorder.b = {}\n", u->a, u->b);
    } else {
        const auto& pl = std::get<PiecewiseLinearLaw>(model.disorder.law());
        disorder = fmt::format("disorder.kind = \"piecewise_linear\"\ndisorder.x = [{}]\ndisorder.density = [{}]\n",
                               fmt::join(pl.x, ", "), fmt::join(pl.y, ", "));
    }
    return fmt::format(
        "name = \"{}\"\ndim = {}\nvariant = \"{}\"\nrank = {}\nblock_side = {}\nhopping = {}\n{}"
        "seed = {}\nwindow.center = {}\nwindow.a = {}\nwindow.b = {}\nwindow.lengths = [{}]\n"
        "wegner.lengths = [{}]\nminami.lengths = [{}]\nrun.boxes = [{}]\nrun.realizations = {}\nblocks.enabled = {}\n"
        "blocks.epsilon = {}\nblocks.half_side = {}\ndos.e_min = {}\ndos.e_max = {}\ndos.points = {}\n"
        "dos.bandwidth = {}\noutput.format = \"{}\"\n",
        name, model.dim, to_string(model.variant), model.rank(), model.block_side(), model.hopping, disorder, seed,
        center, a, b, fmt::join(lengths, ", "), fmt::join(wegner_lengths, ", "),
        fmt::join(minami_lengths, ", "), fmt::join(boxes, ", "),
        realizations, blocks_enabled, blocks_epsilon, blocks_half_side, dos_e_min, dos_e_max, dos_points,
        dos_bandwidth, to_string(format));
}

// ---- presets ---------------------------------------------------------------

namespace {

struct Preset {
    const char* name;
    const char* text;
};

// h = 0 models localise at every energy; the d = 1 presets localise at all
// energies for any disorder strength.
constexpr Preset kPresets[] = {
    {"example1", R"(name = "example1"
# rank-2 projections with no kinetic term: every eigenvalue is doubly degenerate
dim = 1
half_side = 500
variant = "diagonal"
rank = 2
hopping = 0.0
seed = 20161
disorder.kind = "uniform"
disorder.a = 0.0
disorder.b = 1.0
window.center = 0.5
window.a = -0.5
window.b = 0.5
window.lengths = [0.25, 0.5, 1, 2]
minami.lengths = [0.5, 1, 2, 4]
run.realizations = 20000
dos.e_min = -0.25
dos.e_max = 1.25
dos.points = 61
dos.bandwidth = 0.05
)"},
    {"example2", R"(name = "example2"
# Laplacian (x) I_3 plus site disorder (x) I_3: uniform multiplicity 3
dim = 1
half_side = 250
variant = "matrix_valued"
rank = 3
hopping = 1.0
seed = 20162
disorder.kind = "uniform"
disorder.a = 0.0
disorder.b = 6.0
window.center = 3.0
window.a = -0.5
window.b = 0.5
window.lengths = [1]
run.realizations = 20000
)"},
    {"rank1-poisson", R"(name = "rank1-poisson"
# classical Anderson model at strong disorder
dim = 1
variant = "rank_one_site"
rank = 1
hopping = 1.0
seed = 20163
disorder.kind = "uniform"
disorder.a = 0.0
disorder.b = 5.0
window.center = 2.5
window.a = -0.5
window.b = 0.5
window.lengths = [1]
wegner.lengths = [0.25, 0.5, 1, 2]
minami.lengths = [0.5, 1, 2, 4]
run.boxes = [250, 1000]
run.realizations = 20000
)"},
    {"dimer-1d", R"(name = "dimer-1d"
# one coupling constant per pair of neighbouring sites
dim = 1
half_side = 209
variant = "dimer"
rank = 2
hopping = 1.0
seed = 20164
disorder.kind = "uniform"
disorder.a = 0.0
disorder.b = 6.0
window.center = 3.0
window.a = -0.5
window.b = 0.5
window.lengths = [1]
run.realizations = 5000
blocks.enabled = true
)"},
    {"polymer-2d", R"(name = "polymer-2d"
# 2x2 polymer blocks on the square lattice
dim = 2
half_side = 10
variant = "polymer_block"
block_side = 2
hopping = 1.0
seed = 20165
disorder.kind = "uniform"
disorder.a = 0.0
disorder.b = 12.0
window.center = 6.0
window.a = -0.5
window.b = 0.5
window.lengths = [1]
run.realizations = 2000
)"},
};

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : kPresets) names.emplace_back(p.name);
    return names;
}

std::optional<std::string> preset_text(const std::string& name) {
    for (const auto& p : kPresets)
        if (name == p.name) return std::string(p.text);
    return std::nullopt;
}

ConfigTable preset_table(const std::string& name) {
    const auto text = preset_text(name);
    if (!text) throw ConfigError(fmt::format("unknown preset '{}'", name));
    return ConfigTable::parse(*text);
}

CampaignConfig load_preset(const std::string& name) { return campaign_from_table(preset_table(name)); }

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return fmt::format("{:016x}", h);
}

}  // namespace levy_spectra
