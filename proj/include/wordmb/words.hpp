// Free-group word data model: parsing and canonical text, multiplicities,
// variations with occurrence indices, symmetry operations, the syntactic
// certifier for the "very strongly multiplicity-bounding" property, and the
// canonical two-variable enumeration with its composition combinatorics.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wordmb {

struct Letter {
  int var;   // 0-based variable id ('a' = 0)
  int sign;  // +1 or -1
  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};

struct Run {
  int var;
  long long exp;  // nonzero
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);  // freely reduces

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  int length() const { return static_cast<int>(letters_.size()); }

  std::vector<Run> runs() const;
  int run_count() const;              // number of variable-power factors
  std::vector<int> variables() const;  // sorted distinct ids
  int distinct_count() const;
  int multiplicity(int var) const;
  int max_multiplicity() const;
  bool is_power_word() const;        // nonempty, single variable
  long long power_exponent() const;  // signed exponent of a power word

  // Relabel variables by first occurrence (a, b, c, ...); the canonical
  // representative of the renaming orbit.
  Word canonical_labels() const;

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

// Grammar: lowercase letter = variable, uppercase = its inverse, optional
// ^n with a signed integer exponent ("abAB", "a^3B^2"). Throws error with a
// position on malformed input. format_word emits run-length canonical text;
// parse(format(w)) == w.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

Word inverse(const Word& w);
Word mirror(const Word& w);  // read in reverse order, signs kept

// x_i -> x_{perm[i]}^{signs[i]}; ids missing from the maps stay fixed.
Word substitute(const Word& w, const std::map<int, int>& perm, const std::map<int, int>& signs);

Word concat(const Word& a, const Word& b);
Word gamma_word(int n);   // recursively nested commutator words; n >= 1
Word power_word(long long e);  // x^e; e may be negative

// A variation tags each occurrence of a variable with an occurrence index in
// [1, multiplicity]; variations are always reduced and of the same length.
struct VarLetter {
  int var;
  int occ;  // 1-based
  int sign;
  bool operator==(const VarLetter&) const = default;
  auto operator<=>(const VarLetter&) const = default;
};

struct Variation {
  std::vector<VarLetter> letters;
  Word to_word() const;  // relabel (var, occ) pairs by first occurrence
  bool operator==(const Variation&) const = default;
  auto operator<=>(const Variation&) const = default;
};

std::vector<Variation> variations(const Word& w);
mpz_class variation_count(const Word& w);  // product of mu^mu over variables

// One representative per class under renaming of the tagged variables,
// as first-occurrence-relabeled words.
std::vector<Word> variations_up_to_equivalence(const Word& w);

// Compositions of n into k positive parts, plus representatives of the
// classes under reversal.
struct CompositionSet {
  int n = 0, k = 0;
  std::vector<std::vector<int>> all;       // lexicographic
  std::vector<std::vector<int>> reversal;  // representatives, lexicographic
};
CompositionSet compositions(int n, int k);

// --- syntactic certifier ---------------------------------------------------

// Rules, in the order they are attempted:
//   R1 single-occurrence variable
//   R2 a variable occurring exactly twice with the same sign
//   R3 a variable occurring exactly twice with opposite signs and a
//      certified middle segment
//   R4 a certified segment whose variables are disjoint from the rest
//   R5 a variable of multiplicity <= 2 with the middle segment covered by
//      the certified-lengths hypothesis
//   R6 enough distinct variables (floor(l/3)+1) force a multiplicity <= 2
//   R7 power words of admissible exponent (|e| <= 7), via the power-word
//      corollaries plus the length-class lift
// R5-R7 consume the hypothesis that every shorter length is fully certified
// (power words of length 8 excepted); R1-R4 are self-contained.
struct Derivation {
  std::string rule;
  std::string detail;
  std::vector<Derivation> children;
};

// certified_upto = t means: every nonempty reduced word of length <= t is
// known very strongly multiplicity-bounding, except the two power words of
// length 8. Pass 0 for no hypothesis.
std::optional<Derivation> syntactic_vsmb(const Word& w, int certified_upto);

// --- canonical enumeration -------------------------------------------------

struct CanonicalCell {
  int length, runs, mu_x;
  std::vector<Word> words;
};

// Two-variable words with >= 4 variable-power factors, first two exponents
// positive, run magnitudes drawn from the composition tables, interior signs
// free. Defined for lengths 6, 7, 8.
std::vector<CanonicalCell> enumerate_canonical(int length);

// Reference count per cell from the published enumeration table.
int table_count(int length, int runs, int mu_x);

// All freely reduced words of the given length over at most d variables.
std::vector<Word> enumerate_all(int length, int d);

// Orbit of w under inverse / mirror / variable swap / sign flips, with
// first-occurrence relabeling applied throughout.
std::set<Word> symmetry_orbit(const Word& w);

// Verifies the canonical set covers, up to symmetry, every two-variable
// word of the given length with >= 4 runs and both multiplicities >= 3, and
// that every other two-variable word of that length is syntactically
// certified (given all shorter lengths). Power words are accounted
// separately. Returns false with nothing else if any word escapes.
bool coverage_check(int length);

}  // namespace wordmb
