#include "darkcav/error.hpp"
#include "darkcav/model.hpp"
#include "model_oracles.hpp"
#include "support.hpp"

#include <doctest.h>

#include <random>

using namespace darkcav;
using testing::max_diff;

namespace oracles = testing::oracles;

TEST_CASE("two atoms, single excitation: exact matrix") {
  const oracles::Values v{0.37, {0.9, -1.3}, 0.6};
  const auto h = build_hamiltonian(v.params(), enumerate_subspace(2, 1));
  CHECK(max_diff(h.H, oracles::two_atom_single(v)) <= 1e-12);
}

TEST_CASE("three atoms, single excitation: exact matrix") {
  const oracles::Values v{0.37, {0.9, -1.3, 0.45}, 0.6};
  const auto h = build_hamiltonian(v.params(), enumerate_subspace(3, 1));
  CHECK(max_diff(h.H, oracles::three_atom_single(v)) <= 1e-12);
}

TEST_CASE("three atoms, double excitation: exact matrix with sqrt2 photon factors") {
  const oracles::Values v{0.37, {0.9, -1.3, 0.45}, 0.6};
  const auto h = build_hamiltonian(v.params(), enumerate_subspace(3, 2));
  CHECK(max_diff(h.H, oracles::three_atom_double(v)) <= 1e-12);
}

TEST_CASE("four atoms, single excitation: exact matrix") {
  const oracles::Values v{0.37, {0.9, -1.3, 0.45, 1.7}, 0.6};
  const auto h = build_hamiltonian(v.params(), enumerate_subspace(4, 1));
  CHECK(max_diff(h.H, oracles::four_atom_single(v)) <= 1e-12);
}

TEST_CASE("four atoms, double excitation: U, C and L blocks") {
  const oracles::Values v{0.37, {0.9, -1.3, 0.45, 1.7}, 0.6};
  const auto h = build_hamiltonian(v.params(), enumerate_subspace(4, 2));
  const auto blocks = oracles::four_atom_double(v);
  CHECK(max_diff(h.U(), blocks.U) <= 1e-12);
  CHECK(max_diff(h.C(), blocks.C) <= 1e-12);
  CHECK(max_diff(h.L(), blocks.L) <= 1e-12);
}

TEST_CASE("four atoms, triple excitation: C and L blocks") {
  const oracles::Values v{0.37, {0.9, -1.3, 0.45, 1.7}, 0.6};
  const auto h = build_hamiltonian(v.params(), enumerate_subspace(4, 3));
  const auto blocks = oracles::four_atom_triple(v);
  REQUIRE(h.C().rows() == 11);
  REQUIRE(h.C().cols() == 4);
  CHECK(max_diff(h.C(), blocks.C) <= 1e-12);
  CHECK(max_diff(h.L(), blocks.L) <= 1e-12);
}

TEST_CASE("zero couplings and detuning give the zero matrix") {
  const auto p = SystemParams::uniform({0.0, 0.0, 0.0}, 0.0);
  for (unsigned n = 0; n <= 4; ++n) {
    const auto h = build_hamiltonian(p, enumerate_subspace(3, n));
    CHECK(h.H.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  const auto p = SystemParams::uniform({1.0, 1.0}, 0.5);
  CHECK_THROWS_AS(build_hamiltonian(p, enumerate_subspace(3, 1)), DimensionMismatch);
}

TEST_CASE("parameter validation") {
  auto p = SystemParams::uniform({1.0, 1.0}, 0.5);
  p.V(0, 1) = 0.4;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = SystemParams::uniform({1.0, 1.0}, 0.5);
  p.V(0, 0) = 0.1;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = SystemParams::uniform({1.0, 1.0}, 0.5, 0.0, -0.1);
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p = SystemParams::uniform({1.0, std::nan("")}, 0.5);
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("excitation operator audit") {
  CHECK(excitation_operator_check(enumerate_subspace(3, 2)));
  const auto b43 = enumerate_subspace(4, 3);
  CHECK(b43.dim() == 15);
  CHECK(excitation_operator_check(b43));
  auto mixed = enumerate_subspace(2, 1);
  mixed.states.push_back(parse_state("|0,e,e>", 2));
  CHECK_FALSE(excitation_operator_check(mixed));
}

TEST_CASE("random parameters give exactly symmetric real matrices") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t N = 1; N <= 6; ++N) {
    for (unsigned n = 0; n <= N; ++n) {
      SystemParams p;
      p.n_atoms = N;
      p.delta_a = u(rng);
      for (std::size_t j = 0; j < N; ++j) p.g.push_back(u(rng));
      p.V = RealMatrix::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
      for (Eigen::Index j = 0; j < p.V.rows(); ++j) {
        for (Eigen::Index k = j + 1; k < p.V.cols(); ++k) p.V(j, k) = p.V(k, j) = u(rng);
      }
      const auto h = build_hamiltonian(p, enumerate_subspace(N, n));
      CHECK(h.H.imag().cwiseAbs().maxCoeff() == 0.0);
      CHECK((h.H - h.H.transpose()).cwiseAbs().maxCoeff() == 0.0);
      CHECK(excitation_operator_check(h.basis));
    }
  }
}

TEST_CASE("ladder Hamiltonian has no elements between different excitation numbers") {
  const auto p = SystemParams::uniform({1.0, 0.8, 1.5}, 0.5, 0.2);
  const auto ladder = ladder_spaces(3, 3);
  const auto H = build_ladder_hamiltonian(p, ladder);
  for (std::size_t a = 0; a < ladder.total; ++a) {
    for (std::size_t b = 0; b < ladder.total; ++b) {
      if (ladder.state(a).excitations() != ladder.state(b).excitations()) {
        CHECK(H(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) == Complex(0.0));
      }
    }
  }
}

TEST_CASE("lab frame minus omega_c (n - N/2) equals the rotating frame") {
  auto p = SystemParams::uniform({0.9, -1.3, 0.45}, 0.6);
  p.set_frequencies(17.25, 16.5);
  CHECK(p.delta_a == doctest::Approx(0.75));
  for (unsigned n = 0; n <= 4; ++n) {
    const auto b = enumerate_subspace(3, n);
    const auto lab = build_lab_hamiltonian(p, b);
    const auto rot = build_hamiltonian(p, b);
    const auto dim = lab.H.rows();
    const double shift = 16.5 * (static_cast<double>(n) - 1.5);
    CHECK(max_diff(lab.H - shift * ComplexMatrix::Identity(dim, dim), rot.H) <= 1e-12);
  }
  const auto plain = SystemParams::uniform({1.0}, 0.0);
  CHECK_THROWS_AS(build_lab_hamiltonian(plain, enumerate_subspace(1, 1)), InvalidArgument);
}
