#include "darkcav/arrowhead.hpp"
#include "darkcav/error.hpp"
#include "darkcav/model.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace darkcav;
using testing::max_diff;
using testing::rows;

namespace {

const double kS2 = std::sqrt(2.0);
const double kS3 = std::sqrt(3.0);
const double kS6 = std::sqrt(6.0);

SystemParams random_params(std::mt19937_64& rng, std::size_t N, bool uniform_v) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  SystemParams p;
  p.n_atoms = N;
  p.delta_a = u(rng);
  for (std::size_t j = 0; j < N; ++j) p.g.push_back(u(rng));
  const double v = u(rng);
  p.V = RealMatrix::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
  for (Eigen::Index j = 0; j < p.V.rows(); ++j) {
    for (Eigen::Index k = j + 1; k < p.V.cols(); ++k) p.V(j, k) = p.V(k, j) = uniform_v ? v : u(rng);
  }
  return p;
}

void check_form(const SubspaceHamiltonian& h, const ArrowheadForm& f) {
  const ComplexMatrix lt = f.S_l * h.L() * f.S_l.adjoint();
  const ComplexMatrix diag = f.L_tilde.cast<Complex>().asDiagonal();
  CHECK(max_diff(lt, diag) <= 1e-10 * std::max(1.0, numerics::max_abs(h.L())));
  CHECK(max_diff(f.C_tilde, h.C() * f.S_l.adjoint()) <= 1e-12 * std::max(1.0, numerics::max_abs(h.H)));
  for (Eigen::Index i = 1; i < f.L_tilde.size(); ++i) CHECK(f.L_tilde(i - 1) <= f.L_tilde(i));
  const RealVector a = numerics::eigvalsh(h.H);
  const RealVector b = numerics::eigvalsh(f.matrix());
  CHECK((a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff()) <= 1e-9 * std::max(1.0, numerics::max_abs(h.H)));
}

// Compares two rows up to an overall sign.
double row_distance(const RealVector& a, const RealVector& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

}  // namespace

TEST_CASE("two atoms: lower eigenvalues -V, +V and collective couplings") {
  const double g1 = 0.7, g2 = 1.3;
  const auto h = build_hamiltonian(SystemParams::uniform({g1, g2}, 0.5), enumerate_subspace(2, 1));
  const auto f = to_arrowhead(h);
  check_form(h, f);
  CHECK(std::abs(f.L_tilde(0) + 0.5) <= 1e-12);
  CHECK(std::abs(f.L_tilde(1) - 0.5) <= 1e-12);
  CHECK(std::abs(std::abs(f.C_tilde(0, 0)) - std::abs(-g1 + g2) / kS2) <= 1e-12);
  CHECK(std::abs(std::abs(f.C_tilde(0, 1)) - std::abs(g1 + g2) / kS2) <= 1e-12);
}

TEST_CASE("no lower coupling: zero lower eigenvalues and unchanged coupling span") {
  const auto h = build_hamiltonian(SystemParams::uniform({0.4, 1.1, -0.3}, 0.0), enumerate_subspace(3, 1));
  const auto f = to_arrowhead(h);
  check_form(h, f);
  CHECK(f.L_tilde.cwiseAbs().maxCoeff() <= 1e-14);
  // C~ = C S^dagger with S unitary keeps the row norm.
  CHECK(std::abs(f.C_tilde.norm() - h.C().norm()) <= 1e-12);
}

TEST_CASE("four atoms, two excitations: lower spectrum 4V, -2V, -2V, 0, 0, 0") {
  const double v = 0.5;
  const auto h = build_hamiltonian(SystemParams::uniform({1, 2, 2, -1}, v), enumerate_subspace(4, 2));
  const auto f = to_arrowhead(h);
  check_form(h, f);
  std::vector<double> got(f.L_tilde.data(), f.L_tilde.data() + f.L_tilde.size());
  std::vector<double> want{-2 * v, -2 * v, 0, 0, 0, 4 * v};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-12);
}

TEST_CASE("four atoms, three excitations: lower spectrum delta+3V and delta-V") {
  const double v = 0.5, d = 0.3;
  const auto h = build_hamiltonian(SystemParams::uniform({1, 0.8, 1.5, 1.2}, v, d), enumerate_subspace(4, 3));
  const auto f = to_arrowhead(h);
  check_form(h, f);
  CHECK(std::abs(f.L_tilde(0) - (d - v)) <= 1e-12);
  CHECK(std::abs(f.L_tilde(2) - (d - v)) <= 1e-12);
  CHECK(std::abs(f.L_tilde(3) - (d + 3 * v)) <= 1e-12);
}

TEST_CASE("no lower states above the all-excited level") {
  const auto h = build_hamiltonian(SystemParams::uniform({1, 1}, 0.5), enumerate_subspace(2, 3));
  const auto f = to_arrowhead(h);
  CHECK_FALSE(f.has_lower);
  CHECK(f.L_tilde.size() == 0);
  CHECK(f.n_upper() == h.basis.dim());
}

TEST_CASE("arrowhead form is unitarily equivalent for random systems") {
  std::mt19937_64 rng(5);
  for (std::size_t N = 1; N <= 5; ++N) {
    for (unsigned n = 0; n <= N; ++n) {
      for (bool uniform_v : {true, false}) {
        CAPTURE(N);
        CAPTURE(n);
        const auto h = build_hamiltonian(random_params(rng, N, uniform_v), enumerate_subspace(N, n));
        check_form(h, to_arrowhead(h));
      }
    }
  }
}

TEST_CASE("collective basis matches the printed two-, three- and four-atom matrices") {
  const RealMatrix s2 = collective_basis(2);
  RealMatrix want2(2, 2);
  want2 << 1 / kS2, 1 / kS2, -1 / kS2, 1 / kS2;
  for (Eigen::Index r = 0; r < 2; ++r) CHECK(row_distance(s2.row(r), want2.row(r)) <= 1e-15);

  const RealMatrix s3 = collective_basis(3);
  RealMatrix want3(3, 3);
  want3 << 1 / kS3, 1 / kS3, 1 / kS3, -1 / kS2, 1 / kS2, 0, -1 / kS6, -1 / kS6, 2 / kS6;
  for (Eigen::Index r = 0; r < 3; ++r) CHECK(row_distance(s3.row(r), want3.row(r)) <= 1e-15);

  const RealMatrix s4 = collective_basis(4);
  RealMatrix want4(4, 4);
  want4 << 0.5, 0.5, 0.5, 0.5, -1 / kS2, 1 / kS2, 0, 0, -1 / kS6, -1 / kS6, 2 / kS6, 0, -kS3 / 6,
      -kS3 / 6, -kS3 / 6, kS3 / 2;
  for (Eigen::Index r = 0; r < 4; ++r) CHECK(row_distance(s4.row(r), want4.row(r)) <= 1e-15);
  CHECK_THROWS_AS(collective_basis(1), InvalidArgument);
}

TEST_CASE("collective basis is orthonormal and diagonalizes equal-V lower blocks") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t N = 2; N <= 8; ++N) {
    const RealMatrix s = collective_basis(N);
    const auto n = static_cast<Eigen::Index>(N);
    CHECK((s * s.transpose() - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-14);
    const auto p = SystemParams::uniform(std::vector<double>(N, 1.0), u(rng), u(rng));
    const auto h = build_hamiltonian(p, enumerate_subspace(N, 1));
    const ComplexMatrix d = s.cast<Complex>() * h.L() * s.transpose().cast<Complex>();
    const ComplexMatrix off = d - ComplexMatrix(d.diagonal().asDiagonal());
    CHECK(off.cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("collective couplings: printed examples") {
  auto c = collective_couplings({1, 1}, 0.0, 0.5);
  CHECK(std::abs(c.G(0) - kS2) <= 1e-15);
  CHECK(std::abs(c.G(1)) <= 1e-15);

  c = collective_couplings({1, 0.9, -1.9}, 0.0, 0.5);
  CHECK(std::abs(c.G(0)) <= 1e-15);

  c = collective_couplings({1, 1, 1}, 0.0, 0.5);
  CHECK(std::abs(c.G(0) - kS3) <= 1e-15);
  CHECK(std::abs(c.G(1)) <= 1e-15);
  CHECK(std::abs(c.G(2)) <= 1e-15);

  const double g1 = 0.9, g2 = -1.3, g3 = 0.45, g4 = 1.7;
  c = collective_couplings({g1, g2}, 0.0, 0.5);
  CHECK(std::abs(c.G(0) - (g1 + g2) / kS2) <= 1e-15);
  CHECK(std::abs(c.G(1) - (-g1 + g2) / kS2) <= 1e-15);
  c = collective_couplings({g1, g2, g3}, 0.0, 0.5);
  CHECK(std::abs(c.G(0) - (g1 + g2 + g3) / kS3) <= 1e-15);
  CHECK(std::abs(c.G(1) - (-g1 + g2) / kS2) <= 1e-15);
  CHECK(std::abs(c.G(2) + (g1 + g2 - 2 * g3) / kS6) <= 1e-15);
  c = collective_couplings({g1, g2, g3, g4}, 0.2, 0.5);
  CHECK(std::abs(c.G(0) - (g1 + g2 + g3 + g4) / 2) <= 1e-15);
  CHECK(std::abs(c.G(1) - (-g1 + g2) / kS2) <= 1e-15);
  CHECK(std::abs(c.G(2) - (-g1 - g2 + 2 * g3) / kS6) <= 1e-15);
  CHECK(std::abs(c.G(3) - (-g1 - g2 - g3 + 3 * g4) / (2 * kS3)) <= 1e-15);
  // Four atoms: lower energies -delta + 3V and -delta - V.
  CHECK(std::abs(c.lambda0 - (-0.2 + 1.5)) <= 1e-15);
  CHECK(std::abs(c.lambda1 - (-0.2 - 0.5)) <= 1e-15);
}

TEST_CASE("collective couplings agree with the numeric transform and keep the norm") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t N = 2; N <= 8; ++N) {
    std::vector<double> g;
    for (std::size_t j = 0; j < N; ++j) g.push_back(u(rng));
    const double d = u(rng), v = u(rng);
    const auto c = collective_couplings(g, d, v);
    const auto h = build_hamiltonian(SystemParams::uniform(g, v, d), enumerate_subspace(N, 1));
    const ComplexMatrix ct = h.C() * collective_basis(N).transpose().cast<Complex>();
    for (std::size_t s = 0; s < N; ++s) {
      CHECK(std::abs(ct(0, static_cast<Eigen::Index>(s)) - c.G(static_cast<Eigen::Index>(s))) <= 1e-12);
    }
    double gg = 0;
    for (double x : g) gg += x * x;
    CHECK(std::abs(c.G.squaredNorm() - gg) <= 1e-12);
    // Dressed energies match the numeric lower spectrum.
    const auto f = to_arrowhead(h);
    const double n = static_cast<double>(N);
    CHECK(std::abs(c.lambda0 - (-(n - 2) * d / 2 + (n - 1) * v)) <= 1e-12);
    CHECK(std::abs(c.lambda1 - (-(n - 2) * d / 2 - v)) <= 1e-12);
    const double lo = std::min(c.lambda0, c.lambda1), hi = std::max(c.lambda0, c.lambda1);
    CHECK(std::abs(f.L_tilde(0) - lo) <= 1e-12);
    CHECK(std::abs(f.L_tilde(f.L_tilde.size() - 1) - hi) <= 1e-12);
    // The symmetric dressed state is non-degenerate: its numeric coupling is G1 up to sign.
    const Eigen::Index sym = c.lambda0 > c.lambda1 ? f.L_tilde.size() - 1 : 0;
    CHECK(std::abs(std::abs(f.C_tilde(0, sym)) - std::abs(c.G(0))) <= 1e-12);
  }
}
