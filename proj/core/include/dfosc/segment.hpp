#pragma once

#include <span>
#include <string>
#include <vector>

namespace dfosc {

/// A history function on [-1, 0] sampled on the uniform grid t_k = -1 + k/n,
/// k = 0..n.  The grid step is exactly 1/n so the unit delay is n grid steps.
class Segment {
 public:
  explicit Segment(int n);  // all-zero segment
  Segment(int n, std::vector<double> values);

  /// phi(t) = amplitude * (t + 1): vanishes at -1, rises linearly.
  static Segment ramp(int n, double amplitude);
  /// phi identically equal to `level` (including at -1).
  static Segment constant(int n, double level);

  int n() const { return n_; }
  double h() const { return 1.0 / n_; }
  double operator[](int k) const { return values_[static_cast<size_t>(k)]; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  double sup_norm() const;
  bool is_zero() const;

  /// Sup-distance to another segment on the same grid.
  double sup_distance(const Segment& other) const;

  struct ConeCheck {
    bool ok = true;
    std::string violation;  // names the failed cone condition when !ok
  };
  /// Membership in the cone: value 0 at the left endpoint, nondecreasing,
  /// bounded by `bound`.
  ConeCheck in_cone(double bound) const;

  /// Plain-text serialization; round-trips bit-exactly.
  std::string to_text() const;
  static Segment from_text(std::string_view text);

  friend bool operator==(const Segment&, const Segment&) = default;

 private:
  int n_;
  std::vector<double> values_;
};

}  // namespace dfosc
