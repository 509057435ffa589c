#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nps {

// Nonnegative extended real used for losses, costs, and objective values.
// Infinity absorbs addition and compares greater than every finite weight.
class Weight {
 public:
  constexpr Weight() = default;

  static Weight finite(double x) {
    if (!(x >= 0.0) || std::isinf(x))  // also rejects NaN
      throw std::invalid_argument("Weight::finite requires a nonnegative finite value");
    return Weight(x);
  }
  static constexpr Weight infinity() {
    return Weight(std::numeric_limits<double>::infinity());
  }

  bool is_finite() const { return std::isfinite(raw_); }
  bool is_infinite() const { return std::isinf(raw_); }

  // Finite payload; calling this on Infinity is a logic error.
  double value() const {
    if (is_infinite()) throw std::logic_error("Weight::value called on infinity");
    return raw_;
  }
  // Underlying double; +inf encodes Infinity.
  double raw() const { return raw_; }

  friend Weight operator+(Weight a, Weight b) { return Weight(a.raw_ + b.raw_); }
  Weight& operator+=(Weight o) {
    raw_ += o.raw_;
    return *this;
  }

  // k * w with k >= 0; Infinity is preserved for every k.
  friend Weight operator*(double k, Weight w) {
    if (!(k >= 0.0)) throw std::invalid_argument("weight scale must be nonnegative");
    if (w.is_infinite()) return infinity();
    return Weight(k * w.raw_);
  }

  friend bool operator==(Weight a, Weight b) { return a.raw_ == b.raw_; }
  friend bool operator!=(Weight a, Weight b) { return a.raw_ != b.raw_; }
  friend bool operator<(Weight a, Weight b) { return a.raw_ < b.raw_; }
  friend bool operator<=(Weight a, Weight b) { return a.raw_ <= b.raw_; }
  friend bool operator>(Weight a, Weight b) { return a.raw_ > b.raw_; }
  friend bool operator>=(Weight a, Weight b) { return a.raw_ >= b.raw_; }

  // Absolute-tolerance equality for real-valued weights; infinities only
  // match each other.
  bool approx_equal(Weight o, double tol = 1e-9) const {
    if (is_infinite() || o.is_infinite()) return raw_ == o.raw_;
    return std::fabs(raw_ - o.raw_) <= tol;
  }

 private:
  explicit constexpr Weight(double raw) : raw_(raw) {}
  double raw_ = 0.0;
};

// "inf" or a shortest-form decimal rendering.
std::string to_string(Weight w);

}  // namespace nps
