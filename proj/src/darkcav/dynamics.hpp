#pragma once

#include "darkcav/model.hpp"

#include <string>
#include <vector>

namespace darkcav {

/// Cavity annihilation operator on a ladder basis: |m, c> -> sqrt(m) |m-1, c>.
ComplexMatrix annihilation_operator(const LadderBasis& ladder);

/// Diagonal total excitation number operator a^dag a + sum_j sigma_j^+ sigma_j^-.
RealVector excitation_numbers(const LadderBasis& ladder);

/// Master equation with a single collapse operator sqrt(kappa) a:
///   d(rho)/dt = -i[H, rho] + kappa/2 (2 a rho a^dag - a^dag a rho - rho a^dag a)
class Liouvillian {
 public:
  Liouvillian(const SystemParams& params, const LadderBasis& ladder);

  ComplexMatrix apply(const ComplexMatrix& rho) const;

  /// Promise that rho has no coherences between different excitation numbers
  /// (true for any initial state inside one subspace, since neither H nor the
  /// dissipator creates them). apply() then only works on the diagonal blocks.
  void set_block_diagonal(bool on) { block_diagonal_ = on; }
  bool block_diagonal() const { return block_diagonal_; }

  const ComplexMatrix& hamiltonian() const { return h_; }
  std::size_t dim() const { return static_cast<std::size_t>(h_.rows()); }
  double kappa() const { return kappa_; }
  /// max(kappa, |H|_max), the rate entering the step-size bound.
  double stiffness() const;

 private:
  ComplexMatrix h_;
  RealMatrix h_real_;   // H is real in this model
  struct Block {
    Eigen::Index offset;
    Eigen::Index size;
  };
  std::vector<Block> blocks_;   // excitation subspaces of the ladder
  bool block_diagonal_ = false;
  // a has at most one entry per column: a(lower_[k], k) = amp_[k], lower_[k] = -1 if none.
  std::vector<Eigen::Index> lower_;
  RealVector amp_;
  RealVector photons_;
  double kappa_;
};

ComplexMatrix liouvillian_apply(const SystemParams& params, const LadderBasis& ladder,
                                const ComplexMatrix& rho);

struct PopulationReading {
  double value = 0.0;
  bool clipped = false;   // raw value was in [-1e-9, 0) and was reported as 0
};

/// <psi|rho|psi>. Throws InvalidArgument for an unnormalized psi (1e-10) or a
/// dimension mismatch.
PopulationReading population(const ComplexMatrix& rho, const ComplexVector& psi);

struct WatchState {
  std::string name;
  ComplexVector psi;   // ladder coordinates, normalized
  std::string role;    // free-form tag ("dark", "bright", "ground", ...)
};

constexpr double kMaxStepProduct = 0.05;

struct SimulationConfig {
  SystemParams params;
  unsigned n0 = 1;                  // top of the ladder
  ComplexVector initial;            // ladder coordinates, normalized
  std::vector<WatchState> watch;
  double t_max = 30.0;
  double dt = 0.0;                  // <= 0 selects default_dt()
  bool convergence_check = true;    // rerun at dt/2 and compare populations
};

/// Step used when none is given: 0.004 / max(kappa, |H|_max, 1). Small enough that
/// RK4 keeps the eigenvalues of rho above -1e-9 on the figure presets.
double default_dt(const Liouvillian& l);

struct Trajectory {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::string> roles;
  std::vector<std::vector<double>> populations;   // [watch index][step]
  std::vector<double> excitation;                 // <N> per step
  std::vector<double> purity;                     // tr(rho^2) per step
  double dt = 0.0;
  double trace_drift = 0.0;          // max |tr rho - 1|
  double hermiticity_error = 0.0;    // max |rho - rho^dag|
  double min_eigenvalue = 0.0;       // smallest eigenvalue seen over the run
  double max_excitation_rise = 0.0;  // largest step-to-step increase of <N>
  std::size_t clipped = 0;           // population readings clipped to 0
  double convergence_error = 0.0;    // max population difference vs dt/2 run
  ComplexMatrix final_rho;

  /// Header "t,<name>...", one row per step, %.17g numbers, LF endings.
  std::string to_csv() const;
};

/// Integrates the master equation with fixed-step RK4 on t = k*dt. Throws
/// InvalidArgument for a step violating dt * max(kappa, |H|_max) <= 0.05 and
/// NumericError on a non-finite state (with the time stamp) or when the dt/2
/// rerun disagrees by more than 1e-6.
Trajectory simulate(const SimulationConfig& config);

}  // namespace darkcav
