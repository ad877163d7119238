#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "freesplit/numeric.hpp"

namespace freesplit {

// Exact words in G = G_1 * ... * G_k * F_N, where each G_i is finite cyclic
// or infinite cyclic and F_N is free of rank N. Peripheral factor generators
// print as g1..gk, free basis letters as x1..xN. Everything here is a pure
// function of its arguments; Words are immutable values.

enum class FactorKind { FiniteCyclic, InfiniteCyclic };

struct FactorSpec {
  FactorKind kind = FactorKind::FiniteCyclic;
  Int order = 0;  // >= 2 when finite, ignored otherwise
};

class FreeProductSignature {
 public:
  FreeProductSignature() = default;
  FreeProductSignature(std::vector<FactorSpec> factors, int free_rank);

  int num_factors() const { return static_cast<int>(factors_.size()); }
  int free_rank() const { return free_rank_; }
  int kurosh_rank() const { return num_factors() + free_rank_; }
  const FactorSpec& factor(int i) const { return factors_.at(i); }
  bool factor_is_finite(int i) const {
    return factors_.at(i).kind == FactorKind::FiniteCyclic;
  }

  bool operator==(const FreeProductSignature& o) const;
  bool operator!=(const FreeProductSignature& o) const { return !(*this == o); }

  /// Text form: `freeproduct k=<k> orders=<p1,...,pk|inf> N=<N>`.
  std::string to_string() const;
  static FreeProductSignature from_string(const std::string& line);

 private:
  std::vector<FactorSpec> factors_;
  int free_rank_ = 0;
};

struct Syllable {
  bool peripheral = false;  // true: factor index; false: free basis index
  int index = 0;            // 0-based
  Int exp = 0;              // nonzero; finite factors: reduced into [1, p-1]

  bool same_slot(const Syllable& o) const {
    return peripheral == o.peripheral && index == o.index;
  }
  bool operator==(const Syllable& o) const {
    return peripheral == o.peripheral && index == o.index && exp == o.exp;
  }
  // Canonical total order: Peripheral < FreeLetter, then index, then exponent.
  bool operator<(const Syllable& o) const;
};

class Word {
 public:
  Word() = default;  // identity
  explicit Word(std::vector<Syllable> syls) : syls_(std::move(syls)) {}

  bool is_identity() const { return syls_.empty(); }
  int length() const { return static_cast<int>(syls_.size()); }
  const std::vector<Syllable>& syllables() const { return syls_; }
  const Syllable& at(int i) const { return syls_.at(i); }

  bool operator==(const Word& o) const { return syls_ == o.syls_; }
  bool operator!=(const Word& o) const { return !(*this == o); }
  bool operator<(const Word& o) const;  // length, then lexicographic

  std::string to_string() const;  // whitespace-separated tokens; "1" = identity

 private:
  std::vector<Syllable> syls_;
};

std::size_t hash_word(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const { return hash_word(w); }
};

/// Brings a raw syllable sequence into alternating normal form: merges
/// adjacent same-slot syllables, reduces finite-factor exponents mod p,
/// drops zero exponents. Throws std::out_of_range on bad indices.
Word normalize(const FreeProductSignature& sig, const std::vector<Syllable>& raw);

Word multiply(const FreeProductSignature& sig, const Word& u, const Word& v);
Word invert(const FreeProductSignature& sig, const Word& w);
Word power(const FreeProductSignature& sig, const Word& w, const Int& n);
Word conjugate(const FreeProductSignature& sig, const Word& w, const Word& by);

inline Word word_g(const FreeProductSignature& sig, int i, Int e = 1) {
  return normalize(sig, {Syllable{true, i, std::move(e)}});
}
inline Word word_x(const FreeProductSignature& sig, int j, Int e = 1) {
  return normalize(sig, {Syllable{false, j, std::move(e)}});
}

/// Conjugacy class representative: cyclically reduced and rotated to the
/// lexicographically minimal position under the syllable order.
struct ConjClassRep {
  Word rep;
  bool operator==(const ConjClassRep& o) const { return rep == o.rep; }
  bool operator<(const ConjClassRep& o) const { return rep < o.rep; }
};

struct CyclicReduction {
  ConjClassRep rep;
  Word conjugator;  // w = conjugator * rep * conjugator^-1
};

CyclicReduction cyclic_reduce(const FreeProductSignature& sig, const Word& w);

/// Some(i) iff w is conjugate into factor G_i. The identity reports nullopt
/// with *is_identity set when requested.
std::optional<int> is_peripheral(const FreeProductSignature& sig, const Word& w,
                                 bool* is_identity = nullptr);

struct PrimitiveRoot {
  Word root;  // exact root: w == root^m (not canonicalized)
  Int m;
};

/// Maximal root decomposition of a nontrivial nonperipheral word.
/// Throws std::invalid_argument on peripheral or trivial input.
PrimitiveRoot primitive_root(const FreeProductSignature& sig, const Word& w);

/// h in <w>? Returns the exponent j with h == w^j. w must be nontrivial.
std::optional<Int> cyclic_member(const FreeProductSignature& sig, const Word& h,
                                 const Word& w);

/// Solves u = x v x^-1 for x; nullopt if u, v are not conjugate.
std::optional<Word> find_conjugator(const FreeProductSignature& sig,
                                    const Word& u, const Word& v);

/// Generator of the centralizer of a nontrivial w. For w conjugate into a
/// peripheral factor this is the conjugated factor generator; otherwise the
/// primitive root.
Word centralizer_generator(const FreeProductSignature& sig, const Word& w);

struct TestSetOptions {
  bool include_pure_peripheral = false;  // single-syllable peripheral classes
  std::size_t max_size = 2'000'000;
};

/// The canonical conjugacy test set at letter-weight budget B: all canonical
/// cyclic words whose total letter weight is <= B. The weight of a syllable
/// is |e| for free letters and infinite-cyclic factors, and min(e, p-e) for
/// finite factors. Deterministic given (sig, B).
std::vector<ConjClassRep> canonical_test_set(const FreeProductSignature& sig,
                                             int budget,
                                             const TestSetOptions& opts = {});

/// Word token parsing: whitespace- or '.'-separated tokens `g<i>^<e>`,
/// `x<j>^<e>` (`^1` may be omitted); "1" denotes the identity.
Word parse_word(const FreeProductSignature& sig, const std::string& text);

}  // namespace freesplit
