#include "dfosc/segment.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dfosc {

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

Segment::Segment(int n) : n_(n), values_(static_cast<size_t>(n) + 1, 0.0) {
  if (n < 2) throw std::invalid_argument("segment: grid resolution must be >= 2");
}

Segment::Segment(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  if (n < 2) throw std::invalid_argument("segment: grid resolution must be >= 2");
  if (values_.size() != static_cast<size_t>(n) + 1) {
    throw std::invalid_argument("segment: need exactly n+1 values");
  }
}

Segment Segment::ramp(int n, double amplitude) {
  Segment s(n);
  for (int k = 0; k <= n; ++k) {
    s.values_[static_cast<size_t>(k)] = amplitude * (static_cast<double>(k) / n);
  }
  return s;
}

Segment Segment::constant(int n, double level) {
  Segment s(n);
  for (auto& v : s.values_) v = level;
  return s;
}

double Segment::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Segment::is_zero() const {
  for (double v : values_) {
    if (v != 0.0) return false;
  }
  return true;
}

double Segment::sup_distance(const Segment& other) const {
  if (other.n_ != n_) throw std::invalid_argument("segment: grid mismatch in sup_distance");
  double m = 0.0;
  for (size_t k = 0; k < values_.size(); ++k) {
    m = std::max(m, std::abs(values_[k] - other.values_[k]));
  }
  return m;
}

Segment::ConeCheck Segment::in_cone(double bound) const {
  if (values_.front() != 0.0) {
    return {false, "left endpoint phi(-1) is not zero"};
  }
  for (size_t k = 1; k < values_.size(); ++k) {
    if (values_[k] < values_[k - 1]) {
      return {false, "values are not nondecreasing"};
    }
  }
  if (values_.back() > bound) {
    return {false, "sup norm exceeds the feedback bound"};
  }
  return {true, {}};
}

std::string Segment::to_text() const {
  std::string out = "# segment v1\n";
  out += "n ";
  out += std::to_string(n_);
  out += '\n';
  for (double v : values_) {
    out += fmt_double(v);
    out += '\n';
  }
  return out;
}

Segment Segment::from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "# segment v1") {
    throw std::invalid_argument("segment file: missing '# segment v1' header");
  }
  if (!std::getline(in, line) || line.rfind("n ", 0) != 0) {
    throw std::invalid_argument("segment file: missing grid line");
  }
  const int n = std::stoi(line.substr(2));
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(n) + 1);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    vals.push_back(std::stod(line));
  }
  return Segment(n, std::move(vals));
}

}  // namespace dfosc
