#pragma once

// Plain-text data files and the trace CSV. Index-based files are 1-indexed on
// disk and 0-indexed in memory. Lines starting with '#' and blank lines are
// skipped.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fwkit/objective.hpp"
#include "fwkit/submodular.hpp"
#include "fwkit/types.hpp"

namespace fwkit {

struct SolveReport;

/// "u v" per line; n receives the largest vertex id.
std::vector<std::pair<Index, Index>> read_edge_list(const std::string& path, Index& n);
/// "u v weight" per line.
std::vector<WeightedEdge> read_weighted_edge_list(const std::string& path);
/// "i j value" per line.
std::vector<Observation> read_observations(const std::string& path);
/// One point per line, whitespace-separated coordinates of equal length.
std::vector<Vector> read_points(const std::string& path);
/// "label x1 x2 ..." per line with label in {-1, +1}.
void read_labeled_points(const std::string& path, std::vector<Vector>& points,
                         std::vector<int>& labels);
/// Dense matrix written row by row.
Matrix read_matrix(const std::string& path);

void write_edge_list(const std::string& path, const std::vector<std::pair<Index, Index>>& edges);
void write_observations(const std::string& path, const std::vector<Observation>& obs);
void write_points(const std::string& path, const std::vector<Vector>& points);
void write_matrix(const std::string& path, const Matrix& m);

/// Shortest-round-trip rendering with 17 significant digits.
std::string format_real(double v);

inline constexpr const char* kTraceHeader = "k,step_kind,alpha,f,h,gap,support_size,elapsed_ns";

/// One row per record; h is left empty when f_star is unknown and gap is
/// empty when it was not computed.
void write_trace_csv(std::ostream& out, const SolveReport& report, std::optional<double> f_star);
void write_trace_csv(const std::string& path, const SolveReport& report,
                     std::optional<double> f_star);

struct TraceRow {
  std::size_t k;
  std::string step_kind;
  double alpha, f;
  std::optional<double> h, gap;
  std::size_t support_size;
  std::int64_t elapsed_ns;
};
/// Parses a trace written by write_trace_csv; InputError on a malformed file.
std::vector<TraceRow> read_trace_csv(const std::string& path);

}  // namespace fwkit
