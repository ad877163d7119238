#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freesplit/freeprod.hpp"

using namespace freesplit;

namespace {

FreeProductSignature sig_f2() { return FreeProductSignature({}, 2); }
FreeProductSignature sig_z5z() {
  return FreeProductSignature({{FactorKind::FiniteCyclic, 5}}, 1);
}
FreeProductSignature sig_z2z3z() {
  return FreeProductSignature(
      {{FactorKind::FiniteCyclic, 2}, {FactorKind::FiniteCyclic, 3}}, 1);
}

Word W(const FreeProductSignature& sig, const std::string& s) {
  return parse_word(sig, s);
}

// Random words for property tests.
Word random_word(const FreeProductSignature& sig, std::mt19937_64& rng,
                 int max_len) {
  std::uniform_int_distribution<int> len_d(0, max_len);
  std::uniform_int_distribution<int> exp_d(-3, 3);
  int n = len_d(rng);
  std::vector<Syllable> raw;
  int slots = sig.num_factors() + sig.free_rank();
  std::uniform_int_distribution<int> slot_d(0, slots - 1);
  for (int i = 0; i < n; ++i) {
    int s = slot_d(rng);
    int e = exp_d(rng);
    if (e == 0) e = 1;
    if (s < sig.num_factors())
      raw.push_back(Syllable{true, s, e});
    else
      raw.push_back(Syllable{false, s - sig.num_factors(), e});
  }
  return normalize(sig, raw);
}

// Independent oracle: search conjugators over all words of syllable length
// <= max_syl with exponents in [-2, 2], checking x^-1 w x cyclically reduced
// and of minimal length.
std::optional<Word> brute_conjugator_to_reduced(const FreeProductSignature& sig,
                                                const Word& w, int max_syl) {
  std::vector<Word> all{Word()};
  std::vector<Word> frontier{Word()};
  for (int d = 0; d < max_syl; ++d) {
    std::vector<Word> next;
    for (const auto& u : frontier) {
      for (int s = 0; s < sig.num_factors() + sig.free_rank(); ++s) {
        for (int e = -2; e <= 2; ++e) {
          if (e == 0) continue;
          Syllable syl = s < sig.num_factors()
                             ? Syllable{true, s, e}
                             : Syllable{false, s - sig.num_factors(), e};
          Word cand = multiply(sig, u, normalize(sig, {syl}));
          if (cand.length() == d + 1) next.push_back(cand);
        }
      }
    }
    for (auto& u : next) all.push_back(u);
    frontier = std::move(next);
  }
  // Find the conjugate of shortest length.
  Word best;
  int best_len = -1;
  std::optional<Word> best_x;
  for (const auto& x : all) {
    Word c = multiply(sig, multiply(sig, invert(sig, x), w), x);
    if (best_len < 0 || c.length() < best_len) {
      best_len = c.length();
      best = c;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

TEST_CASE("signature text round trip") {
  auto s = sig_z2z3z();
  CHECK(s.to_string() == "freeproduct k=2 orders=2,3 N=1");
  CHECK(FreeProductSignature::from_string(s.to_string()) == s);
  auto f2 = sig_f2();
  CHECK(f2.to_string() == "freeproduct k=0 orders= N=2");
  CHECK(FreeProductSignature::from_string(f2.to_string()) == f2);
  CHECK(f2.kurosh_rank() == 2);
  CHECK(sig_z2z3z().kurosh_rank() == 3);
}

TEST_CASE("normalize basics") {
  auto sig = sig_z5z();
  CHECK(normalize(sig, {}).is_identity());
  // g1^7 -> g1^2 in Z/5 * Z
  CHECK(W(sig, "g1^7") == W(sig, "g1^2"));
  // x1 * x1^-1 -> identity
  auto f2 = sig_f2();
  CHECK(multiply(f2, W(f2, "x1"), W(f2, "x1^-1")).is_identity());
  // idempotence on the raw syllables of already-normalized words
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word w = random_word(f2, rng, 8);
    CHECK(normalize(f2, w.syllables()) == w);
    Word v = random_word(sig, rng, 8);
    CHECK(normalize(sig, v.syllables()) == v);
  }
  CHECK_THROWS_AS(W(sig, "g2"), std::out_of_range);
}

TEST_CASE("multiply") {
  auto sig = sig_z5z();
  // (g1 x1) * (x1^-1 g1) = g1^2
  CHECK(multiply(sig, W(sig, "g1 x1"), W(sig, "x1^-1 g1")) == W(sig, "g1^2"));
  auto f2 = sig_f2();
  // (x1 x2) * x2 = x1 x2^2
  CHECK(multiply(f2, W(f2, "x1 x2"), W(f2, "x2")) == W(f2, "x1 x2^2"));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Word u = random_word(f2, rng, 6), v = random_word(f2, rng, 6),
         w = random_word(f2, rng, 6);
    CHECK(multiply(f2, u, invert(f2, u)).is_identity());
    CHECK(multiply(f2, multiply(f2, u, v), w) ==
          multiply(f2, u, multiply(f2, v, w)));
  }
}

TEST_CASE("cyclic_reduce") {
  auto f2 = sig_f2();
  // x1 x2 x1^-1 -> (x2, conj x1)
  auto r = cyclic_reduce(f2, W(f2, "x1 x2 x1^-1"));
  CHECK(r.rep.rep == W(f2, "x2"));
  CHECK(conjugate(f2, r.rep.rep, r.conjugator) == W(f2, "x1 x2 x1^-1"));
  // already cyclically reduced words keep themselves (up to rotation)
  auto r2 = cyclic_reduce(f2, W(f2, "x1 x2"));
  CHECK(r2.rep.rep == W(f2, "x1 x2"));
  CHECK(r2.conjugator.is_identity());

  // Oracle check: brute-force conjugator search over words of length <= 4.
  auto sig = sig_z5z();
  Word w = W(sig, "x1^-1 g1 x1 g1^-1 x1");
  auto red = cyclic_reduce(sig, w);
  auto oracle_x = brute_conjugator_to_reduced(sig, w, 4);
  REQUIRE(oracle_x.has_value());
  Word oracle_core =
      multiply(sig, multiply(sig, invert(sig, *oracle_x), w), *oracle_x);
  CHECK(red.rep.rep.length() == oracle_core.length());
  CHECK(cyclic_reduce(sig, oracle_core).rep == red.rep);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    Word g = random_word(sig, rng, 6), x = random_word(sig, rng, 4);
    CHECK(cyclic_reduce(sig, conjugate(sig, g, x)).rep ==
          cyclic_reduce(sig, g).rep);
  }
}

TEST_CASE("is_peripheral") {
  auto sig = sig_z5z();
  bool ident = false;
  auto p0 = is_peripheral(sig, W(sig, "g1"), &ident);
  CHECK(p0 == std::optional<int>(0));
  auto p1 = is_peripheral(sig, W(sig, "x1 g1 x1^-1"));
  CHECK(p1 == std::optional<int>(0));
  CHECK_FALSE(is_peripheral(sig, W(sig, "x1")).has_value());
  CHECK_FALSE(is_peripheral(sig, Word(), &ident).has_value());
  CHECK(ident);
  // conjugation invariance
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Word g = random_word(sig, rng, 5), x = random_word(sig, rng, 4);
    CHECK(is_peripheral(sig, g) == is_peripheral(sig, conjugate(sig, g, x)));
  }
}

TEST_CASE("primitive_root") {
  auto f2 = sig_f2();
  auto r = primitive_root(f2, W(f2, "x1^2"));
  CHECK(r.root == W(f2, "x1"));
  CHECK(r.m == 2);

  // Oracle: period search on the cyclic word confirms x1 x2 is not a proper
  // power: no rotation by 0 < d < len matches.
  Word ab = W(f2, "x1 x2");
  auto r2 = primitive_root(f2, ab);
  CHECK(r2.root == ab);
  CHECK(r2.m == 1);

  auto sig = sig_z5z();
  Word g1a = W(sig, "g1 x1");
  auto r3 = primitive_root(sig, power(sig, g1a, 3));
  CHECK(r3.m == 3);
  CHECK(r3.root == g1a);

  CHECK_THROWS_AS(primitive_root(sig, W(sig, "g1^2")), std::invalid_argument);
  CHECK_THROWS_AS(primitive_root(sig, Word()), std::invalid_argument);

  // primitive_root(w^m) = (root(w), m*m_w)
  std::mt19937_64 rng(13);
  int done = 0;
  while (done < 100) {
    Word w = random_word(f2, rng, 4);
    bool ident;
    if (is_peripheral(f2, w, &ident) || ident) continue;
    auto rw = primitive_root(f2, w);
    for (int m = 2; m <= 3; ++m) {
      auto rm = primitive_root(f2, power(f2, w, m));
      CHECK(rm.root == rw.root);
      CHECK(rm.m == rw.m * m);
    }
    ++done;
  }
}

TEST_CASE("cyclic membership and conjugators") {
  auto sig = sig_z2z3z();
  Word w = W(sig, "g1 x1");
  CHECK(cyclic_member(sig, power(sig, w, 4), w) == Int(4));
  CHECK(cyclic_member(sig, power(sig, w, -2), w) == Int(-2));
  CHECK_FALSE(cyclic_member(sig, W(sig, "g2 x1"), w).has_value());
  CHECK(cyclic_member(sig, Word(), w) == Int(0));

  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    Word u = random_word(sig, rng, 5), x = random_word(sig, rng, 4);
    Word v = conjugate(sig, u, x);
    auto c = find_conjugator(sig, v, u);
    REQUIRE(c.has_value());
    CHECK(conjugate(sig, u, *c) == v);
  }
}

TEST_CASE("centralizer generator") {
  auto sig = sig_z5z();
  CHECK(centralizer_generator(sig, W(sig, "g1^3")) == W(sig, "g1"));
  CHECK(centralizer_generator(sig, W(sig, "x1 g1^2 x1^-1")) ==
        W(sig, "x1 g1 x1^-1"));
  CHECK(centralizer_generator(sig, W(sig, "x1^3")) == W(sig, "x1"));
}

TEST_CASE("canonical test set") {
  auto f2 = sig_f2();
  auto ts1 = canonical_test_set(f2, 1);
  // Budget 1 over F2: x1, x1^-1, x2, x2^-1 up to rotation; conjugacy classes
  // of one-letter words are just themselves.
  CHECK(ts1.size() == 4);
  auto ts3 = canonical_test_set(f2, 3);
  for (const auto& c : ts3) {
    // All entries are canonical: re-canonicalizing is the identity.
    CHECK(cyclic_reduce(f2, c.rep).rep == c);
  }
  // Deterministic: repeated call gives identical output.
  auto again = canonical_test_set(f2, 3);
  CHECK(again.size() == ts3.size());
  for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i] == ts3[i]);

  auto sig = sig_z5z();
  auto ts = canonical_test_set(sig, 2);
  // Pure peripheral classes are excluded by default.
  for (const auto& c : ts) {
    bool pure_peripheral = c.rep.length() == 1 && c.rep.at(0).peripheral;
    CHECK_FALSE(pure_peripheral);
  }
}

TEST_CASE("word parse/print round trip") {
  auto sig = sig_z2z3z();
  Word w = W(sig, "g2^2 x1^-3 g1");
  CHECK(parse_word(sig, w.to_string()) == w);
  CHECK(Word().to_string() == "1");
  CHECK(parse_word(sig, "1").is_identity());
  CHECK(parse_word(sig, "g2^2.x1^-3.g1") == w);  // dot-separated form
  CHECK_THROWS_AS(parse_word(sig, "q1"), std::invalid_argument);
}
