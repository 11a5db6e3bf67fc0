#pragma once

/// \file opcount.hpp
/// \brief A double wrapper that tallies arithmetic operations.
///
/// Kernels templated on their scalar type can be run once with `Counted` to
/// obtain a hardware-independent operation count.

#include <cmath>

namespace atweno {

struct OpTally {
  long long additions = 0;        // + and -
  long long multiplications = 0;  // * and /
  long long total() const { return additions + multiplications; }
};

inline OpTally& op_tally() {
  thread_local OpTally tally;
  return tally;
}

class Counted {
 public:
  Counted() = default;
  Counted(double v) : v_(v) {}  // NOLINT(google-explicit-constructor)

  double value() const { return v_; }

  friend Counted operator+(Counted a, Counted b) {
    ++op_tally().additions;
    return a.v_ + b.v_;
  }
  friend Counted operator-(Counted a, Counted b) {
    ++op_tally().additions;
    return a.v_ - b.v_;
  }
  friend Counted operator*(Counted a, Counted b) {
    ++op_tally().multiplications;
    return a.v_ * b.v_;
  }
  friend Counted operator/(Counted a, Counted b) {
    ++op_tally().multiplications;
    return a.v_ / b.v_;
  }
  Counted operator-() const { return -v_; }
  Counted& operator+=(Counted o) { return *this = *this + o; }
  Counted& operator-=(Counted o) { return *this = *this - o; }
  Counted& operator*=(Counted o) { return *this = *this * o; }

 private:
  double v_ = 0.0;
};

/// Counts the operations performed by `fn()`.
template <class Fn>
OpTally count_operations(Fn&& fn) {
  const OpTally before = op_tally();
  fn();
  const OpTally after = op_tally();
  return {after.additions - before.additions, after.multiplications - before.multiplications};
}

}  // namespace atweno
