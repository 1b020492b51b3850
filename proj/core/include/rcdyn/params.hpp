#pragma once

#include <stdexcept>

namespace rcdyn {

// Model parameters. The monotone coupling machinery requires q >= 1, so
// smaller q is rejected outright.
struct RcParams {
  double p;
  double q;

  RcParams(double p_, double q_) : p(p_), q(q_) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("need 0 < p < 1");
    if (!(q >= 1.0)) throw std::invalid_argument("need q >= 1");
  }
};

// heat-bath open probability for a cut edge; non-cut edges use p
inline double cut_open_prob(const RcParams& params) {
  return params.p / (params.p + params.q * (1.0 - params.p));
}

inline double open_prob(const RcParams& params, bool cut) {
  return cut ? cut_open_prob(params) : params.p;
}

}  // namespace rcdyn
