#pragma once

#include "graphsamp/graph.hpp"
#include "graphsamp/sample_set.hpp"
#include "graphsamp/types.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphsamp::io {

// Parse failures throw IoError with "<source>:<line>: <reason>". Graph validation
// failures from well-formed files surface as InvalidArgument.

/// Edge list: first line "n", then one "i j w" triple per line, 0-based,
/// whitespace separated. Blank lines are ignored.
Graph read_edge_list(std::istream& in, std::string_view source = "<stream>");
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g);

/// Comma-separated features, one row per point, no header.
FeatureMatrix read_features(std::istream& in, std::string_view source = "<stream>");
FeatureMatrix read_features(const std::filesystem::path& path);

/// One integer class id per line.
std::vector<int> read_labels(std::istream& in, std::string_view source = "<stream>");
std::vector<int> read_labels(const std::filesystem::path& path);

/// Observed values: one "node,value" line per sample.
struct Observations {
    SampleSet set;
    Vector values;  // aligned with set.members()
};
Observations read_observations(std::istream& in, Index n, std::string_view source = "<stream>");
Observations read_observations(const std::filesystem::path& path, Index n);

/// Known labels: one "node,class" line per labelled node.
std::vector<std::pair<Index, int>> read_node_labels(std::istream& in, std::string_view source = "<stream>");
std::vector<std::pair<Index, int>> read_node_labels(const std::filesystem::path& path);

/// Signals and coefficient vectors: single-column CSV.
Vector read_vector(std::istream& in, std::string_view source = "<stream>");
void write_vector(std::ostream& out, const Vector& v);
/// Comma-separated rows.
void write_matrix(std::ostream& out, const Matrix& m);

/// Shortest decimal text that parses back to the same double; "inf", "-inf", "nan"
/// for non-finite values.
std::string format_double(double x);
/// Inverse of format_double. Throws IoError on malformed text.
double parse_double(std::string_view text);

/// Opens a file for reading or writing, throwing IoError naming the path on failure.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace graphsamp::io
