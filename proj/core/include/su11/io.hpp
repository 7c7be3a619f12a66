#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "su11/jsa.hpp"
#include "su11/schmidt.hpp"
#include "su11/sweep.hpp"

namespace su11 {

// Shortest round-trip decimal form; "inf"/"nan" for non-finite values.
std::string format_double(double v);

void write_text(const std::filesystem::path& path, const std::string& text);

// Matrix dump: omega_s, omega_i, re, im. Antidiagonal JSAs list their support only.
void write_jsa_csv(const std::filesystem::path& path, const JointSpectralAmplitude& jsa);
nlohmann::json jsa_sidecar(const JointSpectralAmplitude& jsa);
std::string jsi_svg(const JointSpectralAmplitude& jsa, const std::string& title);

void write_eigenvalues_csv(const std::filesystem::path& path, const SchmidtDecomposition& dec);
void write_modes_csv(const std::filesystem::path& path, const SchmidtDecomposition& dec, std::size_t modes);
nlohmann::json schmidt_summary(const SchmidtDecomposition& dec, double G, double gamma);

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& res);
nlohmann::json sweep_summary(const SweepResult& res);
std::string sweep_svg(const SweepResult& res, const std::string& title, bool with_envelopes);

void write_gain_csv(const std::filesystem::path& path, const GainSweepResult& res);
nlohmann::json gain_summary(const GainSweepResult& res);
std::string gain_svg(const GainSweepResult& res, const std::string& title);

nlohmann::json metadata_json(const SweepMetadata& m);

}  // namespace su11
