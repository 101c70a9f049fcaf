#ifndef L0SPIKE_SIMULATE_HPP
#define L0SPIKE_SIMULATE_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "l0spike/metrics.hpp"
#include "l0spike/trace.hpp"

namespace l0spike {

// Names the exact random stack used by simulate(), for provenance metadata:
// uniforms from mt19937_64 (top 53 bits), normals via Box-Muller, Poisson
// counts via Knuth's product method. All three are fully specified, so a
// trace is reproducible from the seed outside this library.
extern const char* const kRngDescription;

class SimRng {
 public:
  explicit SimRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  int poisson(double theta) {
    if (theta <= 0.0) return 0;
    const double limit = std::exp(-theta);
    int count = 0;
    double product = uniform();
    while (product > limit) {
      ++count;
      product *= uniform();
    }
    return count;
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

struct SimConfig {
  int t_len = 0;               // number of timesteps T
  std::vector<double> gammas;  // one entry for AR(1), p entries for AR(p)
  double sigma = 0.0;          // observation noise SD
  double theta = 0.0;          // Poisson firing rate per timestep
  double beta0 = 0.0;
  double beta1 = 1.0;
  std::uint64_t seed = 0;
  double c_init = 0.0;
};

struct SimulatedTrace {
  FluorescenceTrace trace;
  std::vector<double> true_calcium;
  std::vector<int> true_spike_counts;  // z_1..z_T
  SpikeTrain true_spike_train;         // timesteps with z_t > 0
};

// Draws z_t ~ Poisson(theta) i.i.d., runs the decay recursion with
// c_1 = c_init + z_1, and observes y_t = beta0 + beta1*c_t + sigma*N(0,1).
// Spike counts are drawn before the noise, so the latent spike pattern for
// a given seed does not depend on sigma.
SimulatedTrace simulate(const SimConfig& config);

}  // namespace l0spike

#endif  // L0SPIKE_SIMULATE_HPP
