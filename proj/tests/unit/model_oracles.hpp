#pragma once
// Hand-transcribed subspace matrices for equal dipole coupling, used as
// oracles for build_hamiltonian. Rows and columns follow the basis order of
// enumerate_subspace.

#include "darkcav/model.hpp"
#include "support.hpp"

#include <cmath>
#include <vector>

namespace testing::oracles {

struct Values {
  double da;                // detuning
  std::vector<double> g;
  double v;                 // equal dipole coupling

  darkcav::SystemParams params() const { return darkcav::SystemParams::uniform(g, v, da); }
};

inline ComplexMatrix two_atom_single(const Values& x) {
  const double d = x.da, v = x.v, g1 = x.g[0], g2 = x.g[1];
  return rows({{-d, g1, g2},
               {g1, 0, v},
               {g2, v, 0}});
}

inline ComplexMatrix three_atom_single(const Values& x) {
  const double d = x.da, v = x.v, g1 = x.g[0], g2 = x.g[1], g3 = x.g[2];
  return rows({{-1.5 * d, g1, g2, g3},
               {g1, -0.5 * d, v, v},
               {g2, v, -0.5 * d, v},
               {g3, v, v, -0.5 * d}});
}

inline ComplexMatrix three_atom_double(const Values& x) {
  const double d = x.da, v = x.v, g1 = x.g[0], g2 = x.g[1], g3 = x.g[2];
  const double s = std::sqrt(2.0);
  return rows({{-1.5 * d, s * g1, s * g2, s * g3, 0, 0, 0},
               {s * g1, -0.5 * d, v, v, g2, g3, 0},
               {s * g2, v, -0.5 * d, v, g1, 0, g3},
               {s * g3, v, v, -0.5 * d, 0, g1, g2},
               {0, g2, g1, 0, 0.5 * d, v, v},
               {0, g3, 0, g1, v, 0.5 * d, v},
               {0, 0, g3, g2, v, v, 0.5 * d}});
}

inline ComplexMatrix four_atom_single(const Values& x) {
  const double d = x.da, v = x.v, g1 = x.g[0], g2 = x.g[1], g3 = x.g[2], g4 = x.g[3];
  return rows({{-2 * d, g1, g2, g3, g4},
               {g1, -d, v, v, v},
               {g2, v, -d, v, v},
               {g3, v, v, -d, v},
               {g4, v, v, v, -d}});
}

struct Blocks {
  ComplexMatrix U;
  ComplexMatrix C;
  ComplexMatrix L;
};

inline Blocks four_atom_double(const Values& x) {
  const double d = x.da, v = x.v, g1 = x.g[0], g2 = x.g[1], g3 = x.g[2], g4 = x.g[3];
  const double s = std::sqrt(2.0);
  Blocks b;
  b.U = rows({{-2 * d, s * g1, s * g2, s * g3, s * g4},
              {s * g1, -d, v, v, v},
              {s * g2, v, -d, v, v},
              {s * g3, v, v, -d, v},
              {s * g4, v, v, v, -d}});
  b.L = rows({{0, v, v, v, v, 0},
              {v, 0, v, v, 0, v},
              {v, v, 0, 0, v, v},
              {v, v, 0, 0, v, v},
              {v, 0, v, v, 0, v},
              {0, v, v, v, v, 0}});
  b.C = rows({{0, 0, 0, 0, 0, 0},
              {g2, g3, g4, 0, 0, 0},
              {g1, 0, 0, g3, g4, 0},
              {0, g1, 0, g2, 0, g4},
              {0, 0, g1, 0, g2, g3}});
  return b;
}

inline Blocks four_atom_triple(const Values& x) {
  const double d = x.da, v = x.v, g1 = x.g[0], g2 = x.g[1], g3 = x.g[2], g4 = x.g[3];
  Blocks b;
  b.L = rows({{d, v, v, v},
              {v, d, v, v},
              {v, v, d, v},
              {v, v, v, d}});
  const ComplexMatrix ct = rows({{0, 0, 0, 0, 0, g3, g2, 0, g1, 0, 0},
                                 {0, 0, 0, 0, 0, g4, 0, g2, 0, g1, 0},
                                 {0, 0, 0, 0, 0, 0, g4, g3, 0, 0, g1},
                                 {0, 0, 0, 0, 0, 0, 0, 0, g4, g3, g2}});
  b.C = ct.transpose();
  return b;
}

}  // namespace testing::oracles
