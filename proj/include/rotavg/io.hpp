// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rotavg/certify.hpp"
#include "rotavg/graph.hpp"
#include "rotavg/solver.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotavg {

/// Typed parse failure carrying the 1-based line number (0 when the error
/// concerns the file as a whole).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ParseOptions {
  /// Use the rotational block of the information matrix as edge weight:
  /// the mean of its diagonal for EDGE_SE3:QUAT, the theta entry for
  /// EDGE_SE2. Off by default, when every weight is 1.
  bool weights_from_information = false;
};

struct ParsedGraph {
  PoseGraph graph;
  /// original_ids[v] is the file id of compact vertex v, in order of first
  /// appearance in edge lines.
  std::vector<long long> original_ids;
  /// Edge lines repeating an unordered vertex pair; the first is kept.
  int duplicates_dropped = 0;
};

/// Reads EDGE_SE3:QUAT and EDGE_SE2 lines. VERTEX_* and FIX lines, blank
/// lines and '#' comments are skipped; translations are read and discarded.
/// Throws ParseError on malformed lines, unknown tags, quaternions whose norm
/// is off by more than 1e-3, or files without edges. Topology violations
/// surface as GraphError.
ParsedGraph parse_g2o(std::istream& in, const ParseOptions& options = {});
ParsedGraph load_g2o(const std::string& path, const ParseOptions& options = {});

/// Edge lines with zero translation and identity information. Ids are
/// 0-based unless `ids` is given.
void write_g2o(std::ostream& out, const PoseGraph& g, const std::vector<long long>& ids = {});

/// Unit quaternion (x, y, z, w) with w >= 0; when w = 0 the first nonzero
/// vector component is positive.
Eigen::Vector4d rotation_to_quaternion(const Rotation& r);
/// Normalizes (x, y, z, w) first.
Rotation quaternion_to_rotation(const Eigen::Vector4d& q);

/// Text form of a solution: vertex rotations (quaternions for SO(3), angles
/// for SO(2)), an optional certificate and the iteration trace.
struct SolutionRecord {
  int dim = 3;
  std::vector<long long> ids;
  /// Per vertex: (x, y, z, w) for dim 3, (theta, 0, 0, 0) for dim 2.
  std::vector<Eigen::Vector4d> parameters;
  std::optional<Certificate> certificate;
  std::vector<TraceRecord> trace;

  RotationStack rotations() const;
};

/// Ids default to 0..n-1.
SolutionRecord make_solution_record(const RotationStack& r, const std::vector<long long>& ids = {},
                                    const std::optional<Certificate>& certificate = std::nullopt,
                                    const std::vector<TraceRecord>& trace = {});

/// Deterministic text with header "# rotavg-solution v1"; doubles use
/// 17 significant digits, so write -> read -> write is byte-identical.
void write_solution(std::ostream& out, const SolutionRecord& record);
SolutionRecord read_solution(std::istream& in);

/// write_solution(make_solution_record(r, ids, certificate, trace)).
void export_solution(std::ostream& out, const RotationStack& r, const std::optional<Certificate>& certificate,
                     const std::vector<TraceRecord>& trace, const std::vector<long long>& ids = {});

}  // namespace rotavg
