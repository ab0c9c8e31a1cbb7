#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "warpcert/geometry.hpp"
#include "warpcert/glue.hpp"
#include "warpcert/slab.hpp"
#include "warpcert/spectral.hpp"
#include "warpcert/warp_ode.hpp"

namespace warpcert {

struct GlueConfig {
    double window = 0.15;      ///< requested blend half-width
    int flat_order = 4;
    double delta = 0.01;       ///< slope slack above cos(r2) for the matching time
    double cap_margin = 0.0;   ///< required cap coverage below r2
    int retry_budget = 6;
};

enum class SpectralModel { neck, sphere };

struct SpectralConfig {
    int k_max = 8;
    int modes_per_k = 12;
    int grid = 2001;           ///< radial cells; halved once for the error estimate
    Bc bc = Bc::neumann;
    SpectralModel model = SpectralModel::neck;
    int sphere_dim = 3;        ///< used when model = sphere
};

struct SweepConfig {
    std::vector<double> alpha, lambda0, eps, t1_slack;
    int max_runs = 256;
    bool empty() const {
        return alpha.empty() && lambda0.empty() && eps.empty() && t1_slack.empty();
    }
};

enum class OutputFormat { json, csv, both };

struct OutputConfig {
    std::string dir = "out";
    OutputFormat format = OutputFormat::both;
};

struct PipelineConfig {
    ConstructionParams construction;
    GlueConfig glue;
    SpectralConfig spectral;
    SweepConfig sweep;
    OutputConfig output;
    std::uint64_t seed = 0;
};

PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const PipelineConfig& cfg);
/// Reads a config file; // and /* */ comments are allowed.
PipelineConfig load_config(const std::string& path);
/// Complete commented template accepted by load_config.
std::string default_config_text();

/// Which stages run: construct = params/ode/glue; certify adds the curvature
/// and slab certifications; spectrum adds only the spectral stage; all runs
/// everything.
enum class PipelineScope { construct, certify, spectrum, all };

struct StageResult {
    std::string name;
    bool pass = false;
    std::vector<std::string> failures;
    nlohmann::ordered_json data;
};

struct CertificationReport {
    PipelineConfig config;
    std::vector<StageResult> stages;
    bool pass = false;
    bool numerical_error = false;   ///< a stage threw, as opposed to a failed check
    std::vector<std::string> failing_checks;

    // Artifacts and headline numbers for file outputs and sweep rows.
    std::optional<WarpProfile> final_profile;
    std::optional<CurvatureReport> final_curvature;
    std::optional<SpectrumResult> spectrum;
    double min_ric_core = 0.0;     ///< min Ricci before the flattening seam
    double r1_realized = 0.0;
    double lambda1_estimate = 0.0;
    int morse_index_at_eps = -1;

    nlohmann::ordered_json to_json() const;
};

/// Runs the requested stages in order, fail-closed: any tolerance violation
/// or stage exception makes the verdict fail; exceptions are recorded with
/// stage attribution and stop the run. Deterministic for fixed config+seed.
CertificationReport run_pipeline(const PipelineConfig& cfg,
                                 PipelineScope scope = PipelineScope::all);

struct SweepRow {
    double alpha = 0.0, lambda0 = 0.0, eps = 0.0, t1_slack = 0.0;
    bool pass = false;
    std::string error;
    double min_ric = 0.0;
    double r1_realized = 0.0;
    double lambda1 = 0.0;
    int index = -1;
};

/// Cartesian product over the non-empty sweep lists (empty lists pin the
/// base value). Runs are independent and execute in parallel; per-run
/// errors are recorded in the row and the sweep continues.
std::vector<SweepRow> run_sweep(const PipelineConfig& cfg);

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Writes report.json / profile.csv / curvature.csv / spectrum.csv into
/// out.dir according to out.format, creating the directory if needed.
void write_outputs(const CertificationReport& rep, const OutputConfig& out);

} // namespace warpcert
