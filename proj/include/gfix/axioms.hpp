#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfix/core.hpp"

namespace gfix {

enum class Axiom { G1, G2, G3, G4, G5 };

std::string_view axiom_name(Axiom a);

// Outcome for one axiom. `worst` is the most adverse quantity seen:
//   G1: max G(x,x,x)
//   G2: min G(x,x,y) over distinct pairs (fails when <= abs_tol)
//   G3: max G(x,x,y) - G(x,y,z) over z != y
//   G4: max spread of G over the six permutations
//   G5: max G(x,y,z) - G(x,a,a) - G(a,y,z)
struct AxiomStatus {
  Axiom axiom = Axiom::G1;
  bool passed = true;
  double worst = 0.0;
  std::vector<Point> witness;  // (x), (x,y), (x,y,z) or (x,y,z,a)
  std::size_t checked = 0;
};

struct AxiomReport {
  std::array<AxiomStatus, 5> axioms;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;

  bool all_passed() const;
  const AxiomStatus& operator[](Axiom a) const { return axioms[static_cast<std::size_t>(a)]; }
};

// Tabulated and grid spaces with at most this many points are enumerated exhaustively.
inline constexpr std::size_t kExhaustiveAxiomPoints = 30;

AxiomReport check_axioms(const GSpace& space, std::size_t sample_count, std::uint64_t seed);

// True when re-evaluating the witness on `space` violates the axiom beyond tolerance.
bool witness_violates(const GSpace& space, const AxiomStatus& status);

struct SymmetryReport {
  bool symmetric = true;
  double worst = 0.0;          // max |G(x,y,y) - G(x,x,y)|
  std::vector<Point> witness;  // (x, y)
  std::size_t checked = 0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
};

SymmetryReport check_symmetry(const GSpace& space, std::size_t sample_count, std::uint64_t seed);

// The four numerically checkable characterizations of G-convergence to `limit`.
enum class Characterization { PairTail, InducedMetric, LimitFirst, LimitRepeated };

std::string_view characterization_name(Characterization c);

struct CharacterizationTail {
  Characterization which = Characterization::PairTail;
  bool converges = false;
  // Smallest N with every value from N on at or below abs_tol.
  std::optional<std::size_t> settles_at;
  double window_max = 0.0;
};

struct ConvergenceReport {
  std::array<CharacterizationTail, 4> tails;
  std::size_t window_start = 0;  // the last 25% of the sequence is the tail window
  bool agree = true;
  bool converges = false;
  std::optional<std::size_t> common_index;
};

ConvergenceReport check_convergence_equivalence(const GSpace& space, std::span<const Point> sequence,
                                                const Point& limit);

}  // namespace gfix
