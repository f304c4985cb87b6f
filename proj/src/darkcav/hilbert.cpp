#include "darkcav/hilbert.hpp"

#include "darkcav/error.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace darkcav {

unsigned BasisState::atomic_excitations() const {
  return static_cast<unsigned>(std::popcount(excited));
}

unsigned BasisState::excitations() const { return photons + atomic_excitations(); }

std::string format_state(const BasisState& s, std::size_t n_atoms) {
  std::string out = "|" + std::to_string(s.photons);
  for (std::size_t j = 0; j < n_atoms; ++j) {
    out += ',';
    out += s.is_excited(j) ? 'e' : 'g';
  }
  out += '>';
  return out;
}

BasisState parse_state(std::string_view label, std::size_t n_atoms) {
  auto fail = [&](const std::string& why) {
    throw InvalidArgument("bad state label '" + std::string(label) + "': " + why);
  };
  std::string body;
  for (char c : label) {
    if (c == '|' || c == '>' || std::isspace(static_cast<unsigned char>(c))) continue;
    body += c;
  }
  std::size_t pos = 0;
  while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) ++pos;
  if (pos == 0) fail("missing photon number");
  BasisState s;
  s.photons = static_cast<unsigned>(std::stoul(body.substr(0, pos)));
  std::size_t atom = 0;
  for (; pos < body.size(); ++pos) {
    const char c = body[pos];
    if (c == ',' || c == ';') continue;
    if (c != 'e' && c != 'g') fail(std::string("unexpected character '") + c + "'");
    if (atom >= n_atoms || atom >= kMaxAtoms) fail("too many atoms");
    if (c == 'e') s.excited |= static_cast<std::uint16_t>(1u << atom);
    ++atom;
  }
  if (atom != n_atoms) {
    fail("expected " + std::to_string(n_atoms) + " atoms, got " + std::to_string(atom));
  }
  return s;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

// All k-subsets of {0..n-1} in lexicographic order of their sorted index tuple.
void append_combinations(std::size_t n, std::size_t k, unsigned photons,
                         std::vector<BasisState>& out) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    BasisState s;
    s.photons = photons;
    for (std::size_t i : idx) s.excited |= static_cast<std::uint16_t>(1u << i);
    out.push_back(s);
    // advance
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SubspaceBasis enumerate_subspace(std::size_t n_atoms, unsigned n) {
  if (n_atoms < 1 || n_atoms > kMaxAtoms) {
    throw InvalidArgument("atom count must lie in [1, " + std::to_string(kMaxAtoms) + "]");
  }
  SubspaceBasis basis;
  basis.n_atoms = n_atoms;
  basis.excitation = n;
  const std::size_t kmax = std::min<std::size_t>(n, n_atoms);
  for (std::size_t k = 0; k <= kmax; ++k) {
    append_combinations(n_atoms, k, n - static_cast<unsigned>(k), basis.states);
  }
  for (const auto& s : basis.states) {
    if (s.photons > 0) ++basis.n_upper;
    else ++basis.n_lower;
  }
  return basis;
}

std::size_t index_of(const SubspaceBasis& basis, const BasisState& s) {
  const auto it = std::find(basis.states.begin(), basis.states.end(), s);
  if (it == basis.states.end()) {
    throw NotFound("state " + format_state(s, basis.n_atoms) + " is not in the " +
                   std::to_string(basis.excitation) + "-excitation subspace");
  }
  return static_cast<std::size_t>(it - basis.states.begin());
}

LadderBasis ladder_spaces(std::size_t n_atoms, unsigned n_max) {
  LadderBasis ladder;
  ladder.n_atoms = n_atoms;
  for (unsigned n = 0; n <= n_max; ++n) {
    ladder.offsets.push_back(ladder.total);
    ladder.spaces.push_back(enumerate_subspace(n_atoms, n));
    ladder.total += ladder.spaces.back().dim();
  }
  return ladder;
}

std::size_t LadderBasis::global_index(const BasisState& s) const {
  const unsigned n = s.excitations();
  if (n >= spaces.size()) {
    throw NotFound("state " + format_state(s, n_atoms) + " lies above the ladder top n=" +
                   std::to_string(spaces.size() - 1));
  }
  return offsets[n] + index_of(spaces[n], s);
}

const BasisState& LadderBasis::state(std::size_t global) const {
  if (global >= total) throw NotFound("global index out of range");
  const auto it = std::upper_bound(offsets.begin(), offsets.end(), global);
  const std::size_t n = static_cast<std::size_t>(it - offsets.begin()) - 1;
  return spaces[n].states[global - offsets[n]];
}

}  // namespace darkcav
