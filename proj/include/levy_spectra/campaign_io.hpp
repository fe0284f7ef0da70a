#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "levy_spectra/config.hpp"
#include "levy_spectra/engine.hpp"
#include "levy_spectra/levy.hpp"

namespace levy_spectra {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "levy_spectra";
inline constexpr const char* kToolVersion = "1.0.0";

// "{stat}_{L}_{I}.{ext}", e.g. xi_500_0.25.csv
std::string artifact_name(const std::string& stat, int half_side, double length, const std::string& ext);

Json model_json(const ModelSpec& spec);
Json window_json(const EnergyWindow& window);

// CSV columns: j,count,probability
std::string pmf_csv(const EmpiricalPMF& pmf);
// {model, window, box, R, seed, pmf: {j: count}, moments, dropped}
Json pmf_json(const EmpiricalPMF& pmf, const ModelSpec& spec, const LatticeBox& box, int half_side,
              const EnergyWindow& window, std::uint64_t seed, std::size_t dropped);
EmpiricalPMF pmf_from_json(const Json& doc);
EmpiricalPMF pmf_from_csv(const std::string& text);

// CSV columns: half_side,sites,length,value,std_error,ci_lo,ci_hi,realizations,seed
std::string scaling_csv(const ScalingTable& table);
ScalingTable scaling_from_csv(const std::string& text, const std::string& statistic);

// CSV columns: energy,value,std_error
std::string curve_csv(const std::vector<CurvePoint>& curve);
std::vector<CurvePoint> curve_from_csv(const std::string& text);
Json curve_json(const std::vector<CurvePoint>& curve);
Json scaling_json(const ScalingTable& table, const LinearFit& fit);

Json weights_json(const LevyWeights& w);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace levy_spectra
