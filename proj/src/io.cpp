// Copyright 2026 The rotavg Authors
// SPDX-License-Identifier: Apache-2.0

#include "rotavg/io.hpp"

#include <Eigen/Geometry>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

namespace rotavg {

namespace {

constexpr std::string_view kSolutionHeader = "# rotavg-solution v1";

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos > start) out.push_back(line.substr(start, pos - start));
  }
  return out;
}

double to_double(std::string_view token, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw ParseError(line, "expected a finite number, got '" + std::string(token) + "'");
  }
  return v;
}

long long to_integer(std::string_view token, int line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Rotation unit_quaternion(const Eigen::Vector4d& q, int line) {
  const double norm = q.norm();
  if (!(std::abs(norm - 1.0) <= 1e-3)) {
    throw ParseError(line, "quaternion norm " + format_double(norm) + " deviates from 1 by more than 1e-3");
  }
  return quaternion_to_rotation(q);
}

// Compacts file ids in order of first appearance.
class IdMap {
 public:
  int intern(long long id) {
    const auto [it, inserted] = index_.emplace(id, static_cast<int>(ids_.size()));
    if (inserted) ids_.push_back(id);
    return it->second;
  }
  std::vector<long long> take() { return std::move(ids_); }
  int size() const { return static_cast<int>(ids_.size()); }

 private:
  std::map<long long, int> index_;
  std::vector<long long> ids_;
};

// Line reader that tracks the line number and expects exact keywords.
class SolutionReader {
 public:
  explicit SolutionReader(std::istream& in) : in_(in) {}

  std::vector<std::string_view> next(std::string_view keyword, std::size_t fields) {
    if (!std::getline(in_, text_)) throw ParseError(line_ + 1, "unexpected end of file, expected '" + std::string(keyword) + "'");
    ++line_;
    tokens_ = split(text_);
    if (tokens_.empty() || tokens_[0] != keyword) {
      throw ParseError(line_, "expected '" + std::string(keyword) + "'");
    }
    if (fields != 0 && tokens_.size() != fields + 1) {
      throw ParseError(line_, "'" + std::string(keyword) + "' expects " + std::to_string(fields) + " fields");
    }
    return {tokens_.begin() + 1, tokens_.end()};
  }
  int line() const { return line_; }
  std::istream& stream() { return in_; }
  void count_line() { ++line_; }

 private:
  std::istream& in_;
  std::string text_;
  std::vector<std::string_view> tokens_;
  int line_ = 0;
};

}  // namespace

Eigen::Vector4d rotation_to_quaternion(const Rotation& r) {
  if (r.dim() != 3) throw std::invalid_argument("quaternions represent SO(3) rotations only");
  const Eigen::Matrix3d m = r.matrix();
  Eigen::Quaterniond q(m);
  q.normalize();
  Eigen::Vector4d v(q.x(), q.y(), q.z(), q.w());
  bool flip = v[3] < 0.0;
  if (v[3] == 0.0) {
    for (int k = 0; k < 3; ++k) {
      if (v[k] != 0.0) {
        flip = v[k] < 0.0;
        break;
      }
    }
  }
  if (flip) v = -v;
  return v;
}

Rotation quaternion_to_rotation(const Eigen::Vector4d& q) {
  const Eigen::Quaterniond quat(q[3], q[0], q[1], q[2]);
  return Rotation::trusted(quat.normalized().toRotationMatrix());
}

ParsedGraph parse_g2o(std::istream& in, const ParseOptions& options) {
  PoseGraphBuilder builder;
  IdMap ids;
  std::string text;
  int line = 0;
  int dim = 0;
  while (std::getline(in, text)) {
    ++line;
    const auto tokens = split(text);
    if (tokens.empty() || tokens[0].front() == '#') continue;
    const std::string_view tag = tokens[0];
    if (tag.starts_with("VERTEX") || tag == "FIX") continue;

    int edge_dim = 0;
    std::size_t measurement_fields = 0;
    std::size_t info_fields = 0;
    if (tag == "EDGE_SE3:QUAT") {
      edge_dim = 3;
      measurement_fields = 7;
      info_fields = 21;
    } else if (tag == "EDGE_SE2") {
      edge_dim = 2;
      measurement_fields = 3;
      info_fields = 6;
    } else {
      throw ParseError(line, "unknown record type '" + std::string(tag) + "'");
    }
    const std::size_t base = 3 + measurement_fields;
    if (tokens.size() != base && tokens.size() != base + info_fields) {
      throw ParseError(line, std::string(tag) + " expects " + std::to_string(base - 1) + " or " +
                                 std::to_string(base - 1 + info_fields) + " fields");
    }
    if (dim != 0 && edge_dim != dim) throw ParseError(line, "mixed SE(2) and SE(3) edges");
    dim = edge_dim;

    const long long a = to_integer(tokens[1], line);
    const long long b = to_integer(tokens[2], line);
    if (a == b) throw ParseError(line, "self-loop edge");
    std::vector<double> values;
    values.reserve(tokens.size() - 3);
    for (std::size_t k = 3; k < tokens.size(); ++k) values.push_back(to_double(tokens[k], line));

    Rotation rotation;
    double weight = 1.0;
    const bool has_info = tokens.size() == base + info_fields;
    if (edge_dim == 3) {
      rotation = unit_quaternion(Eigen::Vector4d(values[3], values[4], values[5], values[6]), line);
      if (options.weights_from_information && has_info) {
        weight = (values[7 + 15] + values[7 + 18] + values[7 + 20]) / 3.0;
      }
    } else {
      rotation = rotation_2d(values[2]);
      if (options.weights_from_information && has_info) weight = values[3 + 5];
    }
    if (!(weight > 0.0)) throw ParseError(line, "information-derived weight must be positive");
    const int i = ids.intern(a);
    const int j = ids.intern(b);
    builder.add_edge({i, j, rotation, weight});
  }
  if (builder.edges().empty()) throw ParseError(0, "no edges in input");
  const int n = ids.size();
  return {builder.build(n), ids.take(), builder.num_dropped()};
}

ParsedGraph load_g2o(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_g2o(in, options);
}

void write_g2o(std::ostream& out, const PoseGraph& g, const std::vector<long long>& ids) {
  auto id = [&](int v) { return ids.empty() ? static_cast<long long>(v) : ids.at(v); };
  for (const Edge& e : g.edges()) {
    if (g.dim() == 3) {
      const Eigen::Vector4d q = rotation_to_quaternion(e.rotation);
      out << "EDGE_SE3:QUAT " << id(e.i) << ' ' << id(e.j) << " 0 0 0";
      for (int k = 0; k < 4; ++k) out << ' ' << format_double(q[k]);
      for (int r = 0; r < 6; ++r) {
        for (int c = r; c < 6; ++c) out << (r == c ? " 1" : " 0");
      }
    } else {
      out << "EDGE_SE2 " << id(e.i) << ' ' << id(e.j) << " 0 0 "
          << format_double(std::atan2(e.rotation(1, 0), e.rotation(0, 0))) << " 1 0 0 1 0 1";
    }
    out << '\n';
  }
}

RotationStack SolutionRecord::rotations() const {
  RotationStack out;
  out.reserve(parameters.size());
  for (const Eigen::Vector4d& v : parameters) {
    out.push_back(dim == 3 ? quaternion_to_rotation(v) : rotation_2d(v[0]));
  }
  return out;
}

SolutionRecord make_solution_record(const RotationStack& r, const std::vector<long long>& ids,
                                    const std::optional<Certificate>& certificate,
                                    const std::vector<TraceRecord>& trace) {
  if (r.empty()) throw std::invalid_argument("empty solution");
  if (!ids.empty() && ids.size() != r.size()) throw std::invalid_argument("id list size differs from solution");
  SolutionRecord out;
  out.dim = r.front().dim();
  for (std::size_t v = 0; v < r.size(); ++v) {
    out.ids.push_back(ids.empty() ? static_cast<long long>(v) : ids[v]);
    if (out.dim == 3) {
      out.parameters.push_back(rotation_to_quaternion(r[v]));
    } else {
      out.parameters.emplace_back(std::atan2(r[v](1, 0), r[v](0, 0)), 0.0, 0.0, 0.0);
    }
  }
  out.certificate = certificate;
  out.trace = trace;
  return out;
}

void write_solution(std::ostream& out, const SolutionRecord& record) {
  out << kSolutionHeader << '\n';
  out << "dim " << record.dim << '\n';
  out << "vertices " << record.parameters.size() << '\n';
  const int fields = record.dim == 3 ? 4 : 1;
  for (std::size_t v = 0; v < record.parameters.size(); ++v) {
    out << "vertex " << record.ids[v];
    for (int k = 0; k < fields; ++k) out << ' ' << format_double(record.parameters[v][k]);
    out << '\n';
  }
  if (record.certificate) {
    const Certificate& c = *record.certificate;
    out << "certificate 1\n";
    out << "certified " << (c.is_certified ? 1 : 0) << '\n';
    out << "epsilon " << format_double(c.epsilon) << '\n';
    out << "cost " << format_double(c.cost) << '\n';
    out << "duality_gap " << format_double(c.duality_gap) << '\n';
    out << "gap_lower_bound " << format_double(c.gap_lower_bound) << '\n';
    out << "kkt_residual " << format_double(c.kkt_residual) << '\n';
    out << "lambda_small " << c.lambda_small.size();
    for (Eigen::Index k = 0; k < c.lambda_small.size(); ++k) out << ' ' << format_double(c.lambda_small[k]);
    out << '\n';
  } else {
    out << "certificate 0\n";
  }
  out << "trace " << record.trace.size() << '\n';
  for (const TraceRecord& t : record.trace) {
    out << "step " << t.iteration << ' ' << format_double(t.cost) << ' ' << format_double(t.lambda_min) << ' '
        << t.wall_time_ns << '\n';
  }
}

SolutionRecord read_solution(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header != kSolutionHeader) {
    throw ParseError(1, "missing '" + std::string(kSolutionHeader) + "' header");
  }
  SolutionReader reader(in);
  reader.count_line();
  SolutionRecord out;
  auto f = reader.next("dim", 1);
  out.dim = static_cast<int>(to_integer(f[0], reader.line()));
  if (out.dim != 2 && out.dim != 3) throw ParseError(reader.line(), "dim must be 2 or 3");
  f = reader.next("vertices", 1);
  const long long n = to_integer(f[0], reader.line());
  if (n < 1) throw ParseError(reader.line(), "vertex count must be positive");
  const std::size_t fields = out.dim == 3 ? 4 : 1;
  for (long long v = 0; v < n; ++v) {
    f = reader.next("vertex", fields + 1);
    out.ids.push_back(to_integer(f[0], reader.line()));
    Eigen::Vector4d p = Eigen::Vector4d::Zero();
    for (std::size_t k = 0; k < fields; ++k) p[k] = to_double(f[k + 1], reader.line());
    if (out.dim == 3 && std::abs(p.norm() - 1.0) > 1e-6) {
      throw ParseError(reader.line(), "vertex quaternion is not unit");
    }
    out.parameters.push_back(p);
  }
  f = reader.next("certificate", 1);
  const long long has_cert = to_integer(f[0], reader.line());
  if (has_cert == 1) {
    Certificate c;
    c.is_certified = to_integer(reader.next("certified", 1)[0], reader.line()) != 0;
    c.epsilon = to_double(reader.next("epsilon", 1)[0], reader.line());
    c.cost = to_double(reader.next("cost", 1)[0], reader.line());
    c.duality_gap = to_double(reader.next("duality_gap", 1)[0], reader.line());
    c.gap_lower_bound = to_double(reader.next("gap_lower_bound", 1)[0], reader.line());
    c.kkt_residual = to_double(reader.next("kkt_residual", 1)[0], reader.line());
    f = reader.next("lambda_small", 0);
    if (f.empty()) throw ParseError(reader.line(), "lambda_small needs a count");
    const long long count = to_integer(f[0], reader.line());
    if (count < 0 || static_cast<std::size_t>(count) + 1 != f.size()) {
      throw ParseError(reader.line(), "lambda_small count does not match its values");
    }
    c.lambda_small.resize(count);
    for (long long k = 0; k < count; ++k) c.lambda_small[k] = to_double(f[k + 1], reader.line());
    out.certificate = c;
  } else if (has_cert != 0) {
    throw ParseError(reader.line(), "certificate flag must be 0 or 1");
  }
  f = reader.next("trace", 1);
  const long long rows = to_integer(f[0], reader.line());
  if (rows < 0) throw ParseError(reader.line(), "trace row count must be nonnegative");
  for (long long k = 0; k < rows; ++k) {
    f = reader.next("step", 4);
    TraceRecord t;
    t.iteration = static_cast<int>(to_integer(f[0], reader.line()));
    t.cost = to_double(f[1], reader.line());
    t.lambda_min = to_double(f[2], reader.line());
    t.wall_time_ns = to_integer(f[3], reader.line());
    out.trace.push_back(t);
  }
  return out;
}

void export_solution(std::ostream& out, const RotationStack& r, const std::optional<Certificate>& certificate,
                     const std::vector<TraceRecord>& trace, const std::vector<long long>& ids) {
  write_solution(out, make_solution_record(r, ids, certificate, trace));
}

}  // namespace rotavg
