#include "fwkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fwkit/errors.hpp"
#include "fwkit/solver.hpp"

namespace fwkit {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

// Calls fn(fields, line_no) for each data line.
template <class Fn>
void for_each_line(const std::string& path, Fn&& fn) {
  std::ifstream in = open_in(path);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::vector<double> fields;
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw InputError(path + ":" + std::to_string(no) + ": not a number '" + tok + "'");
      }
      fields.push_back(v);
    }
    fn(fields, no);
  }
}

Index to_index(double v, const std::string& path, std::size_t no) {
  if (!(v >= 1.0) || v != std::floor(v)) {
    throw InputError(path + ":" + std::to_string(no) + ": indices are positive integers");
  }
  return static_cast<Index>(v) - 1;
}

void expect_fields(const std::vector<double>& f, std::size_t n, const std::string& path,
                   std::size_t no) {
  if (f.size() != n) {
    throw InputError(path + ":" + std::to_string(no) + ": expected " + std::to_string(n) +
                     " fields, got " + std::to_string(f.size()));
  }
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::vector<std::vector<double>> rows;
  for_each_line(path, [&](const std::vector<double>& f, std::size_t no) {
    if (!rows.empty() && f.size() != rows.front().size()) {
      throw InputError(path + ":" + std::to_string(no) + ": ragged row");
    }
    rows.push_back(f);
  });
  if (rows.empty()) throw InputError("'" + path + "' has no data rows");
  return rows;
}

}  // namespace

std::vector<std::pair<Index, Index>> read_edge_list(const std::string& path, Index& n) {
  std::vector<std::pair<Index, Index>> edges;
  n = 0;
  for_each_line(path, [&](const std::vector<double>& f, std::size_t no) {
    expect_fields(f, 2, path, no);
    const Index u = to_index(f[0], path, no), v = to_index(f[1], path, no);
    if (u == v) throw InputError(path + ":" + std::to_string(no) + ": self loop");
    edges.emplace_back(u, v);
    n = std::max({n, u + 1, v + 1});
  });
  return edges;
}

std::vector<WeightedEdge> read_weighted_edge_list(const std::string& path) {
  std::vector<WeightedEdge> edges;
  for_each_line(path, [&](const std::vector<double>& f, std::size_t no) {
    expect_fields(f, 3, path, no);
    if (f[2] < 0.0) throw InputError(path + ":" + std::to_string(no) + ": negative weight");
    edges.push_back({to_index(f[0], path, no), to_index(f[1], path, no), f[2]});
  });
  return edges;
}

std::vector<Observation> read_observations(const std::string& path) {
  std::vector<Observation> obs;
  for_each_line(path, [&](const std::vector<double>& f, std::size_t no) {
    expect_fields(f, 3, path, no);
    obs.push_back({to_index(f[0], path, no), to_index(f[1], path, no), f[2]});
  });
  return obs;
}

std::vector<Vector> read_points(const std::string& path) {
  std::vector<Vector> pts;
  for (const auto& r : read_rows(path)) {
    pts.push_back(Eigen::Map<const Vector>(r.data(), static_cast<Index>(r.size())));
  }
  return pts;
}

void read_labeled_points(const std::string& path, std::vector<Vector>& points,
                         std::vector<int>& labels) {
  points.clear();
  labels.clear();
  for (const auto& r : read_rows(path)) {
    if (r.size() < 2) throw InputError("'" + path + "': a label and at least one coordinate");
    if (r[0] != 1.0 && r[0] != -1.0) throw InputError("'" + path + "': labels must be +1 or -1");
    labels.push_back(static_cast<int>(r[0]));
    points.push_back(Eigen::Map<const Vector>(r.data() + 1, static_cast<Index>(r.size() - 1)));
  }
}

Matrix read_matrix(const std::string& path) {
  const auto rows = read_rows(path);
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_edge_list(const std::string& path, const std::vector<std::pair<Index, Index>>& edges) {
  auto out = open_out(path);
  for (const auto& [u, v] : edges) out << u + 1 << ' ' << v + 1 << '\n';
}

void write_observations(const std::string& path, const std::vector<Observation>& obs) {
  auto out = open_out(path);
  for (const auto& o : obs) out << o.i + 1 << ' ' << o.j + 1 << ' ' << format_real(o.value) << '\n';
}

void write_points(const std::string& path, const std::vector<Vector>& points) {
  auto out = open_out(path);
  for (const auto& p : points) {
    for (Index i = 0; i < p.size(); ++i) out << (i ? " " : "") << format_real(p[i]);
    out << '\n';
  }
}

void write_matrix(const std::string& path, const Matrix& m) {
  auto out = open_out(path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_real(m(i, j));
    out << '\n';
  }
}

void write_trace_csv(std::ostream& out, const SolveReport& report, std::optional<double> f_star) {
  out << kTraceHeader << '\n';
  for (const auto& r : report.records) {
    out << r.k << ',' << to_string(r.kind) << ',' << format_real(r.alpha) << ','
        << format_real(r.f) << ',';
    if (f_star) out << format_real(r.f - *f_star);
    out << ',';
    if (!std::isnan(r.gap)) out << format_real(r.gap);
    out << ',' << r.support_size << ',' << r.elapsed_ns << '\n';
  }
}

void write_trace_csv(const std::string& path, const SolveReport& report,
                     std::optional<double> f_star) {
  auto out = open_out(path);
  write_trace_csv(out, report, f_star);
}

std::vector<TraceRow> read_trace_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw InputError("'" + path + "' does not start with the trace header");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 8) throw InputError("'" + path + "': malformed trace row '" + line + "'");
    try {
      TraceRow r;
      r.k = std::stoull(cells[0]);
      r.step_kind = cells[1];
      r.alpha = std::stod(cells[2]);
      r.f = std::stod(cells[3]);
      if (!cells[4].empty()) r.h = std::stod(cells[4]);
      if (!cells[5].empty()) r.gap = std::stod(cells[5]);
      r.support_size = std::stoull(cells[6]);
      r.elapsed_ns = std::stoll(cells[7]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw InputError("'" + path + "': malformed trace row '" + line + "'");
    }
  }
  return rows;
}

}  // namespace fwkit
