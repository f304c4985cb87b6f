#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace darkcav {

constexpr std::size_t kMaxAtoms = 16;

// |m; excited set>, the excited set stored as a bitmask (bit j = atom j+1).
struct BasisState {
  unsigned photons = 0;
  std::uint16_t excited = 0;

  unsigned excitations() const;
  unsigned atomic_excitations() const;
  bool is_excited(std::size_t atom) const { return (excited >> atom) & 1u; }

  friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// "|m,e,g,...>" with one letter per atom.
std::string format_state(const BasisState& s, std::size_t n_atoms);

/// Parses "|1,g,e>", "1,g,e" or "|1;ge>"-style labels. Throws InvalidArgument
/// when the atom count does not match or a token is malformed.
BasisState parse_state(std::string_view label, std::size_t n_atoms);

struct SubspaceBasis {
  std::size_t n_atoms = 0;
  unsigned excitation = 0;
  std::vector<BasisState> states;
  std::size_t n_upper = 0;
  std::size_t n_lower = 0;

  std::size_t dim() const { return states.size(); }
  const BasisState& operator[](std::size_t i) const { return states[i]; }
};

/// Ordered basis of the n-excitation subspace: descending photon number, then
/// lexicographic by the tuple of excited-atom indices. Upper states (photons
/// > 0) occupy [0, n_upper), lower states [n_upper, dim).
SubspaceBasis enumerate_subspace(std::size_t n_atoms, unsigned n);

/// Index of `s` in `basis`; throws NotFound if absent.
std::size_t index_of(const SubspaceBasis& basis, const BasisState& s);

/// Binomial coefficient as size_t (exact for the ranges used here).
std::size_t binomial(std::size_t n, std::size_t k);

/// Direct sum of the subspaces n = 0..n_max with a global index.
struct LadderBasis {
  std::size_t n_atoms = 0;
  std::vector<SubspaceBasis> spaces;
  std::vector<std::size_t> offsets;  // offsets[n] = global index of spaces[n][0]
  std::size_t total = 0;

  unsigned max_excitation() const {
    return static_cast<unsigned>(spaces.size()) - 1;
  }
  std::size_t global_index(const BasisState& s) const;
  const BasisState& state(std::size_t global) const;
};

LadderBasis ladder_spaces(std::size_t n_atoms, unsigned n_max);

}  // namespace darkcav
