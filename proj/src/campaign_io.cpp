#include "levy_spectra/campaign_io.hpp"

#include <fmt/format.h>
#include <fstream>
#include <sstream>

#include "levy_spectra/error.hpp"

namespace levy_spectra {

std::string artifact_name(const std::string& stat, int half_side, double length, const std::string& ext) {
    return fmt::format("{}_{}_{}.{}", stat, half_side, length, ext);
}

Json model_json(const ModelSpec& spec) {
    Json disorder;
    if (const auto* u = std::get_if<UniformLaw>(&spec.disorder.law())) {
        disorder = {{"kind", "uniform"}, {"a", u->a}, {"b", u->b}};
    } else {
        const auto& pl = std::get<PiecewiseLinearLaw>(spec.disorder.law());
        disorder = {{"kind", "piecewise_linear"}, {"x", pl.x}, {"density", pl.y}};
    }
    return {{"variant", to_string(spec.variant)}, {"dim", spec.dim},       {"rank", spec.rank()},
            {"block_side", spec.block_side()},     {"hopping", spec.hopping}, {"disorder", disorder}};
}

Json window_json(const EnergyWindow& w) {
    return {{"center", w.center()}, {"a", w.a()},       {"b", w.b()},
            {"length", w.length()}, {"scale", w.scale()}, {"left", w.left()}, {"right", w.right()}};
}

std::string pmf_csv(const EmpiricalPMF& pmf) {
    std::string out = "j,count,probability\n";
    for (const auto& [j, c] : pmf.counts()) out += fmt::format("{},{},{}\n", j, c, pmf.probability(j));
    return out;
}

Json pmf_json(const EmpiricalPMF& pmf, const ModelSpec& spec, const LatticeBox& box, int half_side,
              const EnergyWindow& window, std::uint64_t seed, std::size_t dropped) {
    Json counts = Json::object();
    for (const auto& [j, c] : pmf.counts()) counts[std::to_string(j)] = c;
    Json moments = {{"mean", pmf.mean()}, {"variance", pmf.variance()}};
    moments["poisson_index"] = pmf.mean() > 0.0 && pmf.realizations() >= 2 ? Json(poisson_index(pmf)) : Json(nullptr);
    return {{"model", model_json(spec)},
            {"window", window_json(window)},
            {"box", {{"half_side", half_side}, {"side", box.side()}, {"sites", box.site_count()}}},
            {"R", pmf.realizations()},
            {"seed", seed},
            {"pmf", counts},
            {"moments", moments},
            {"dropped", dropped}};
}

EmpiricalPMF pmf_from_json(const Json& doc) {
    if (!doc.contains("pmf") || !doc["pmf"].is_object()) throw Error("pmf document has no 'pmf' object");
    EmpiricalPMF pmf;
    for (const auto& [key, value] : doc["pmf"].items()) pmf.add(std::stoll(key), value.get<std::uint64_t>());
    return pmf;
}

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text, std::size_t columns) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    std::getline(ss, line);  // header
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::vector<std::string> f;
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (f.size() != columns) throw Error(fmt::format("malformed csv row '{}'", line));
        rows.push_back(std::move(f));
    }
    return rows;
}

}  // namespace

EmpiricalPMF pmf_from_csv(const std::string& text) {
    EmpiricalPMF pmf;
    for (const auto& f : csv_rows(text, 3)) pmf.add(std::stoll(f[0]), std::stoull(f[1]));
    return pmf;
}

std::string scaling_csv(const ScalingTable& table) {
    std::string out = "half_side,sites,length,value,std_error,ci_lo,ci_hi,realizations,seed\n";
    for (const auto& r : table.rows)
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.half_side, r.sites, r.length, r.value, r.std_error, r.ci_lo,
                           r.ci_hi, r.realizations, r.seed);
    return out;
}

ScalingTable scaling_from_csv(const std::string& text, const std::string& statistic) {
    ScalingTable table{statistic, {}};
    for (const auto& f : csv_rows(text, 9)) {
        ScalingRow r;
        r.half_side = std::stoi(f[0]);
        r.sites = std::stoull(f[1]);
        r.length = std::stod(f[2]);
        r.value = std::stod(f[3]);
        r.std_error = std::stod(f[4]);
        r.ci_lo = std::stod(f[5]);
        r.ci_hi = std::stod(f[6]);
        r.realizations = std::stoull(f[7]);
        r.seed = std::stoull(f[8]);
        table.rows.push_back(r);
    }
    return table;
}

Json scaling_json(const ScalingTable& table, const LinearFit& fit) {
    Json rows = Json::array();
    for (const auto& r : table.rows)
        rows.push_back({{"half_side", r.half_side}, {"sites", r.sites}, {"length", r.length}, {"value", r.value},
                        {"std_error", r.std_error}, {"ci_lo", r.ci_lo}, {"ci_hi", r.ci_hi},
                        {"realizations", r.realizations}, {"seed", r.seed}});
    return {{"statistic", table.statistic},
            {"rows", rows},
            {"fit", {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}}}};
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::string out = "energy,value,std_error\n";
    for (const auto& p : curve) out += fmt::format("{},{},{}\n", p.energy, p.value, p.std_error);
    return out;
}

std::vector<CurvePoint> curve_from_csv(const std::string& text) {
    std::vector<CurvePoint> curve;
    for (const auto& f : csv_rows(text, 3)) curve.push_back({std::stod(f[0]), std::stod(f[1]), std::stod(f[2])});
    return curve;
}

Json curve_json(const std::vector<CurvePoint>& curve) {
    Json energy = Json::array(), value = Json::array(), err = Json::array();
    for (const auto& p : curve) {
        energy.push_back(p.energy);
        value.push_back(p.value);
        err.push_back(p.std_error);
    }
    return {{"energy", energy}, {"value", value}, {"std_error", err}};
}

Json weights_json(const LevyWeights& w) { return Json(w.weights); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    out << text;
    if (!out) throw Error(fmt::format("failed writing '{}'", path.string()));
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot read '{}'", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace levy_spectra
