#include "darkcav/dynamics.hpp"

#include "darkcav/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace darkcav {

ComplexMatrix annihilation_operator(const LadderBasis& ladder) {
  const auto total = static_cast<Eigen::Index>(ladder.total);
  ComplexMatrix a = ComplexMatrix::Zero(total, total);
  for (std::size_t col = 0; col < ladder.total; ++col) {
    const BasisState& s = ladder.state(col);
    if (s.photons == 0) continue;
    BasisState lowered = s;
    lowered.photons -= 1;
    const std::size_t row = ladder.global_index(lowered);
    a(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
        std::sqrt(static_cast<double>(s.photons));
  }
  return a;
}

RealVector excitation_numbers(const LadderBasis& ladder) {
  RealVector n(static_cast<Eigen::Index>(ladder.total));
  for (std::size_t i = 0; i < ladder.total; ++i) {
    n(static_cast<Eigen::Index>(i)) = ladder.state(i).excitations();
  }
  return n;
}

Liouvillian::Liouvillian(const SystemParams& params, const LadderBasis& ladder)
    : h_(build_ladder_hamiltonian(params, ladder)), kappa_(params.kappa) {
  h_real_ = h_.real();
  for (std::size_t n = 0; n < ladder.spaces.size(); ++n) {
    blocks_.push_back({static_cast<Eigen::Index>(ladder.offsets[n]),
                       static_cast<Eigen::Index>(ladder.spaces[n].dim())});
  }
  const auto dim = static_cast<Eigen::Index>(ladder.total);
  lower_.assign(ladder.total, -1);
  amp_ = RealVector::Zero(dim);
  photons_ = RealVector::Zero(dim);
  for (std::size_t k = 0; k < ladder.total; ++k) {
    const BasisState& s = ladder.state(k);
    photons_(static_cast<Eigen::Index>(k)) = s.photons;
    if (s.photons == 0) continue;
    BasisState lowered = s;
    lowered.photons -= 1;
    lower_[k] = static_cast<Eigen::Index>(ladder.global_index(lowered));
    amp_(static_cast<Eigen::Index>(k)) = std::sqrt(static_cast<double>(s.photons));
  }
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != h_.rows() || rho.cols() != h_.cols()) {
    std::ostringstream os;
    os << "density matrix is " << rho.rows() << "x" << rho.cols() << ", ladder dimension is "
       << h_.rows();
    throw DimensionMismatch(os.str());
  }
  // With rho = R + iI and real H, -i[H, rho] = [H, I] - i[H, R]; the
  // dissipator maps real parts to real parts.
  const RealMatrix re = rho.real();
  const RealMatrix im = rho.imag();
  const Eigen::Index dim = rho.rows();
  RealMatrix out_re;
  RealMatrix out_im;
  // Index ranges the dissipator loops run over: the whole matrix, or each
  // diagonal block in turn.
  std::vector<Block> ranges;
  if (block_diagonal_) {
    out_re = RealMatrix::Zero(dim, dim);
    out_im = RealMatrix::Zero(dim, dim);
    for (const auto& b : blocks_) {
      const auto h = h_real_.block(b.offset, b.offset, b.size, b.size);
      const auto r = re.block(b.offset, b.offset, b.size, b.size);
      const auto i = im.block(b.offset, b.offset, b.size, b.size);
      out_re.block(b.offset, b.offset, b.size, b.size).noalias() = h * i;
      out_re.block(b.offset, b.offset, b.size, b.size).noalias() -= i * h;
      out_im.block(b.offset, b.offset, b.size, b.size).noalias() = r * h;
      out_im.block(b.offset, b.offset, b.size, b.size).noalias() -= h * r;
    }
    ranges = blocks_;
  } else {
    out_re = h_real_ * im - im * h_real_;
    out_im = re * h_real_ - h_real_ * re;
    ranges.push_back({0, dim});
  }
  if (kappa_ != 0.0) {
    for (const auto& b : ranges) {
      const Eigen::Index end = b.offset + b.size;
      for (Eigen::Index c = b.offset; c < end; ++c) {
        for (Eigen::Index r = b.offset; r < end; ++r) {
          const double w = 0.5 * kappa_ * (photons_(r) + photons_(c));
          out_re(r, c) -= w * re(r, c);
          out_im(r, c) -= w * im(r, c);
        }
      }
      for (Eigen::Index l = b.offset; l < end; ++l) {
        const Eigen::Index cl = lower_[static_cast<std::size_t>(l)];
        if (cl < 0) continue;
        for (Eigen::Index k = b.offset; k < end; ++k) {
          const Eigen::Index rk = lower_[static_cast<std::size_t>(k)];
          if (rk < 0) continue;
          const double w = kappa_ * amp_(k) * amp_(l);
          out_re(rk, cl) += w * re(k, l);
          out_im(rk, cl) += w * im(k, l);
        }
      }
    }
  }
  ComplexMatrix out(rho.rows(), rho.cols());
  out.real() = out_re;
  out.imag() = out_im;
  return out;
}

double Liouvillian::stiffness() const { return std::max(kappa_, numerics::max_abs(h_)); }

ComplexMatrix liouvillian_apply(const SystemParams& params, const LadderBasis& ladder,
                                const ComplexMatrix& rho) {
  return Liouvillian(params, ladder).apply(rho);
}

PopulationReading population(const ComplexMatrix& rho, const ComplexVector& psi) {
  if (psi.size() != rho.rows() || rho.rows() != rho.cols()) {
    throw DimensionMismatch("population: state and density matrix dimensions differ");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "population: state is not normalized (norm " << psi.norm() << ")";
    throw InvalidArgument(os.str());
  }
  PopulationReading r;
  r.value = psi.dot(rho * psi).real();
  if (r.value < 0.0 && r.value >= -1e-9) {
    r.value = 0.0;
    r.clipped = true;
  }
  return r;
}

double default_dt(const Liouvillian& l) {
  return 0.004 / std::max(1.0, l.stiffness());
}

namespace {

Trajectory integrate(const SimulationConfig& cfg, const Liouvillian& l, const LadderBasis& ladder,
                     const RealVector& nhat,
                     std::size_t steps, double dt, std::size_t record_stride, bool diagnostics) {
  Trajectory t;
  t.dt = dt;
  for (const auto& w : cfg.watch) {
    t.names.push_back(w.name);
    t.roles.push_back(w.role);
  }
  t.populations.assign(cfg.watch.size(), {});
  ComplexMatrix rho = cfg.initial * cfg.initial.adjoint();
  const numerics::LinearMap deriv = [&l](const ComplexMatrix& r) { return l.apply(r); };
  double prev_n = 0.0;
  t.min_eigenvalue = 1.0;

  for (std::size_t k = 0; k <= steps; ++k) {
    if (k > 0) {
      try {
        rho = numerics::rk4_step(deriv, rho, dt, k);
      } catch (const NumericError& e) {
        std::ostringstream os;
        os << e.what() << " (t = " << static_cast<double>(k) * dt << ")";
        throw NumericError(os.str());
      }
    }
    if (k % record_stride != 0) continue;
    const double time = static_cast<double>(k) * dt;
    t.times.push_back(time);
    for (std::size_t w = 0; w < cfg.watch.size(); ++w) {
      const auto r = population(rho, cfg.watch[w].psi);
      if (r.clipped) ++t.clipped;
      t.populations[w].push_back(r.value);
    }
    if (!diagnostics) continue;
    const double tr = rho.trace().real();
    t.trace_drift = std::max(t.trace_drift, std::abs(tr - 1.0));
    t.hermiticity_error = std::max(t.hermiticity_error, numerics::hermitian_asymmetry(rho));
    const ComplexMatrix sym = 0.5 * (rho + rho.adjoint());
    if (l.block_diagonal()) {
      for (std::size_t n = 0; n < ladder.spaces.size(); ++n) {
        const auto off = static_cast<Eigen::Index>(ladder.offsets[n]);
        const auto sz = static_cast<Eigen::Index>(ladder.spaces[n].dim());
        const ComplexMatrix blk = sym.block(off, off, sz, sz);
        const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(blk, Eigen::EigenvaluesOnly);
        t.min_eigenvalue = std::min(t.min_eigenvalue, es.eigenvalues()(0));
      }
    } else {
      const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
      t.min_eigenvalue = std::min(t.min_eigenvalue, es.eigenvalues()(0));
    }
    const double n_exp = (rho.diagonal().real().array() * nhat.array()).sum();
    if (!t.excitation.empty()) t.max_excitation_rise = std::max(t.max_excitation_rise, n_exp - prev_n);
    prev_n = n_exp;
    t.excitation.push_back(n_exp);
    t.purity.push_back(rho.cwiseAbs2().sum());  // tr(rho^2) for Hermitian rho
  }
  t.final_rho = rho;
  return t;
}

}  // namespace

Trajectory simulate(const SimulationConfig& cfg) {
  cfg.params.validate();
  if (!(cfg.t_max >= 0.0) || !std::isfinite(cfg.t_max)) {
    throw InvalidArgument("t_max must be finite and non-negative");
  }
  const LadderBasis ladder = ladder_spaces(cfg.params.n_atoms, cfg.n0);
  if (cfg.initial.size() != static_cast<Eigen::Index>(ladder.total)) {
    std::ostringstream os;
    os << "initial state has " << cfg.initial.size() << " components, ladder has "
       << ladder.total;
    throw DimensionMismatch(os.str());
  }
  if (std::abs(cfg.initial.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("initial state must be normalized");
  }
  for (const auto& w : cfg.watch) {
    if (w.psi.size() != cfg.initial.size()) {
      throw DimensionMismatch("watch state '" + w.name + "' has the wrong dimension");
    }
  }
  Liouvillian l(cfg.params, ladder);
  // Support of the initial state within a single subspace keeps rho block diagonal.
  std::size_t occupied = 0;
  for (std::size_t n = 0; n < ladder.spaces.size(); ++n) {
    const auto seg = cfg.initial.segment(static_cast<Eigen::Index>(ladder.offsets[n]),
                                         static_cast<Eigen::Index>(ladder.spaces[n].dim()));
    if (seg.cwiseAbs().maxCoeff() > 0.0) ++occupied;
  }
  l.set_block_diagonal(occupied <= 1);
  const double stiff = l.stiffness();
  double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(l);
  if (dt * stiff > kMaxStepProduct * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << dt << " violates dt * max(kappa, |H|_max) <= " << kMaxStepProduct
       << " (max(kappa, |H|_max) = " << stiff << ")";
    throw InvalidArgument(os.str());
  }
  // Land exactly on t_max; the adjusted step is never larger than requested.
  std::size_t steps = 0;
  if (cfg.t_max > 0.0) {
    steps = static_cast<std::size_t>(std::ceil(cfg.t_max / dt - 1e-9));
    dt = cfg.t_max / static_cast<double>(steps);
  }
  const RealVector nhat = excitation_numbers(ladder);
  Trajectory traj = integrate(cfg, l, ladder, nhat, steps, dt, 1, true);

  if (cfg.convergence_check && steps > 0) {
    const Trajectory fine = integrate(cfg, l, ladder, nhat, 2 * steps, 0.5 * dt, 2, false);
    double err = 0.0;
    for (std::size_t w = 0; w < traj.populations.size(); ++w) {
      for (std::size_t k = 0; k < traj.populations[w].size(); ++k) {
        err = std::max(err, std::abs(traj.populations[w][k] - fine.populations[w][k]));
      }
    }
    err = std::max(err, numerics::max_abs(traj.final_rho - fine.final_rho));
    traj.convergence_error = err;
    if (err > 1e-6) {
      std::ostringstream os;
      os << "step-halving check failed: populations differ by " << err << " at dt = " << dt;
      throw NumericError(os.str());
    }
  }
  return traj;
}

std::string Trajectory::to_csv() const {
  std::string out = "t";
  for (const auto& n : names) {
    out += ',';
    out += n;
  }
  out += '\n';
  char buf[32];
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", times[k]);
    out += buf;
    for (const auto& series : populations) {
      std::snprintf(buf, sizeof buf, ",%.17g", series[k]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace darkcav
