#pragma once

#include <filesystem>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "herzlab/atoms.hpp"
#include "herzlab/grandseq.hpp"
#include "herzlab/grid.hpp"
#include "herzlab/herz.hpp"
#include "herzlab/synth.hpp"

namespace herzlab {

using Json = nlohmann::ordered_json;

/// Rows separated by ';', entries by whitespace or ','; "2" is the 1x1 matrix.
/// Throws ConfigError.
Eigen::MatrixXd parse_matrix(const std::string& text);

/// Grid CSV: a "dim,half_width,resolution" header line, its values, then the
/// samples (one per line in 1-D, one grid row per line in 2-D). '#' starts a
/// comment line.
std::string grid_to_csv(const GridFunction& f);
GridFunction grid_from_csv(const std::string& text);
/// Throw IoError on filesystem failures.
void write_grid_csv(const GridFunction& f, const std::filesystem::path& path);
GridFunction read_grid_csv(const std::filesystem::path& path);

/// {"offset": k0, "values": [...]} plus an optional "index_set".
Json sequence_to_json(const Sequence& x);
Sequence sequence_from_json(const Json& j);

Json descriptor_to_json(const FunctionDescriptor& desc);
FunctionDescriptor descriptor_from_json(const Json& j);

Json params_to_json(const HerzSpaceParams& params);

/// One CSV per block (block_<k>.csv) plus manifest.json with the coefficients.
void write_decomposition(const BlockDecomposition& dec, const std::filesystem::path& dir);
/// Reads blocks and coefficients back; the parameter snapshot is not restored.
BlockDecomposition read_decomposition(const std::filesystem::path& dir);

/// <stem>.csv with the samples and <stem>.json with k, s and the report.
Json atom_report_to_json(const AtomReport& report);
void write_atom(const Atom& atom, const AtomReport& report, const std::filesystem::path& stem);
/// Returns the atom samples and the (k, s) recorded next to them.
Atom read_atom(const std::filesystem::path& stem);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace herzlab
