#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "firecast/basis.hpp"
#include "firecast/eval.hpp"
#include "firecast/forecast.hpp"
#include "firecast/grid.hpp"
#include "firecast/inference.hpp"
#include "firecast/neighborhood.hpp"

// File formats. All tabular outputs are comma-delimited with a one-line
// header; time steps and cell indices are 1-based on disk (cell index =
// row * nx + col + 1, row 0 = southern edge). Doubles are written with 17
// significant digits so write -> read -> write is byte-identical.
namespace firecast::io {

std::string format_double(double v);
std::string hex64(std::uint64_t v);

void atomic_write_text(const std::filesystem::path& path,
                       const std::string& text);
std::uint64_t file_fnv1a64(const std::filesystem::path& path);

// --- state fields: "t,cell,state"
void write_statefield(const std::filesystem::path& path, const StateField& sf);
StateField read_statefield(const std::filesystem::path& path);

// --- winds: "t,u,v"
void write_winds(const std::filesystem::path& path,
                 const std::vector<WindRecord>& winds);
std::vector<WindRecord> read_winds(const std::filesystem::path& path);

// --- temperature rasters
// Long format: "t,row,col,temp". Manifest format: a text file listing one
// frame file per time step in order; each frame holds ny lines of nx
// delimited Kelvin values, first line = southern row.
TemperatureRaster read_raster_long(const std::filesystem::path& path);
void write_raster_long(const std::filesystem::path& path,
                       const TemperatureRaster& raster);
TemperatureRaster read_raster_manifest(const std::filesystem::path& path);

/// Flatten frames to a steps x cells matrix in cell-index order.
Eigen::MatrixXd raster_to_matrix(const TemperatureRaster& raster);

// --- spatial basis: one "# kind=<eof|bisquare> rank=<r> seed=<s>" header
// line, then n rows of r comma-separated values.
void write_basis(const std::filesystem::path& path, const BasisMatrix& basis);
BasisMatrix read_basis(const std::filesystem::path& path);

// --- posterior draws: one file per parameter block under `dir`, plus
// summary.csv with per-parameter means and MC standard errors.
void write_posterior(const std::filesystem::path& dir,
                     const PosteriorSamples& post);
PosteriorSamples read_posterior(const std::filesystem::path& dir);

// --- forecasts: "horizon,cell,state,mean,hpd_lo,hpd_hi"
void write_forecast(const std::filesystem::path& path,
                    const ForecastDistribution& fd);
ForecastDistribution read_forecast(const std::filesystem::path& path);
/// One plot-ready grid of mean probabilities per (horizon, state):
/// raster_h<k>_state<j>.csv with ny lines of nx values.
std::vector<std::filesystem::path> write_forecast_rasters(
    const std::filesystem::path& dir, const ForecastDistribution& fd,
    const GridSpec& grid);

// --- scores: "state,metric,value"
void write_score(const std::filesystem::path& path, const ScoreReport& report);
std::string format_score_table(const ScoreReport& report);

// --- run manifest
struct ManifestOutput {
  std::string path;  // relative to the manifest directory
  std::uint64_t bytes = 0;
  std::string fnv1a64_hex;
};

struct RunManifest {
  std::string command;
  std::string version;
  std::uint64_t seed = 0;
  std::string config_hash_hex;
  std::string effective_config_json;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::string> notes;
  std::vector<ManifestOutput> outputs;
};

void write_manifest(const std::filesystem::path& path,
                    const RunManifest& manifest);

}  // namespace firecast::io
