#ifndef L0SPIKE_ARP_COST_HPP
#define L0SPIKE_ARP_COST_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <vector>

#include "l0spike/errors.hpp"

namespace l0spike {

// Coefficients gamma_1..gamma_p of the order-p decay recursion
// c_t = sum_i gamma_i c_{t-i}. Stability of the recursion is the caller's
// responsibility; the cost state only guards against overflow.
class ArpParams {
 public:
  explicit ArpParams(std::vector<double> gammas) : gammas_(std::move(gammas)) {
    if (gammas_.empty()) throw Error("AR(p) model requires p >= 1 coefficients");
    for (double g : gammas_) {
      if (!std::isfinite(g)) throw Error("AR(p) coefficients must be finite");
    }
  }
  int p() const { return static_cast<int>(gammas_.size()); }
  const std::vector<double>& gammas() const { return gammas_; }

 private:
  std::vector<double> gammas_;
};

// Segment cost for the order-p decay model with the first p calcium values
// free. Fitted values are linear in the free head x = (c_a, .., c_{a+p-1})
// through the impulse-response vectors phi_t (standard basis for the first
// p positions, then the decay recursion), so the least squares problem is
// captured by the Gram matrix and moment vector of the phi sequence.
struct ArpCostState {
  long long n = 0;
  double sum_half_ysq = 0.0;
  Eigen::MatrixXd phi_ring;  // p x p; column (t - a) mod p holds phi_t
  Eigen::MatrixXd gram;      // sum phi phi^T
  Eigen::VectorXd moment;    // sum y_t phi_t
};

struct ArpFitValues {
  double cost;
  Eigen::VectorXd init_calcium;  // fitted c_a..c_{a+p-1}
};

class ArpCost {
 public:
  using State = ArpCostState;

  explicit ArpCost(ArpParams params) : params_(std::move(params)) {}

  State init(double y) const {
    if (!std::isfinite(y)) throw NonFiniteValueError(1);
    const int p = params_.p();
    State st;
    st.phi_ring = Eigen::MatrixXd::Zero(p, p);
    st.gram = Eigen::MatrixXd::Zero(p, p);
    st.moment = Eigen::VectorXd::Zero(p);
    extend(st, y);
    return st;
  }

  void extend(State& st, double y) const {
    if (!std::isfinite(y)) throw NonFiniteValueError(static_cast<std::size_t>(st.n) + 1);
    const int p = params_.p();
    const long long idx = st.n;  // 0-based offset of the new sample
    Eigen::VectorXd phi;
    if (idx < p) {
      phi = Eigen::VectorXd::Unit(p, static_cast<int>(idx));
    } else {
      phi = Eigen::VectorXd::Zero(p);
      for (int i = 1; i <= p; ++i) {
        phi += params_.gammas()[i - 1] * st.phi_ring.col(static_cast<int>((idx - i) % p));
      }
      if (phi.lpNorm<Eigen::Infinity>() > 1e150) {
        throw UnstableRecursionError("impulse response overflow; decay coefficients are unstable");
      }
    }
    st.gram.selfadjointView<Eigen::Lower>().rankUpdate(phi);
    st.moment += y * phi;
    st.sum_half_ysq += 0.5 * y * y;
    st.phi_ring.col(static_cast<int>(idx % p)) = phi;
    st.n += 1;
  }

  ArpFitValues fit(const State& st) const {
    const int p = params_.p();
    if (st.n <= p) {
      // Underdetermined: the Gram matrix is the identity on the first n
      // coordinates, so the minimum-norm solution repeats the observed
      // values and fits exactly.
      Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
      x.head(static_cast<int>(st.n)) = st.moment.head(static_cast<int>(st.n));
      return ArpFitValues{0.0, std::move(x)};
    }
    const Eigen::MatrixXd gram = st.gram.selfadjointView<Eigen::Lower>();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    Eigen::VectorXd x = ldlt.solve(st.moment);
    const double scale = std::max(1.0, st.moment.lpNorm<Eigen::Infinity>());
    if (!x.allFinite() || (gram * x - st.moment).lpNorm<Eigen::Infinity>() > 1e-10 * scale) {
      throw SingularGramError("rank-deficient Gram matrix for a segment longer than p");
    }
    double d = st.sum_half_ysq - x.dot(st.moment) + 0.5 * x.dot(gram * x);
    if (d < 0.0) {
      const double tol = 1e-12 * std::max(1.0, st.sum_half_ysq);
      if (d < -tol) {
        throw InternalConsistencyError("negative segment cost beyond rounding tolerance");
      }
      d = 0.0;
    }
    return ArpFitValues{d, std::move(x)};
  }

  double value(const State& st) const { return fit(st).cost; }

  const ArpParams& params() const { return params_; }

 private:
  ArpParams params_;
};

}  // namespace l0spike

#endif  // L0SPIKE_ARP_COST_HPP
