#include "freesplit/freeprod.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace freesplit {

std::string rat_to_string(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  return num.str() + "/" + den.str();
}

Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

FreeProductSignature::FreeProductSignature(std::vector<FactorSpec> factors,
                                           int free_rank)
    : factors_(std::move(factors)), free_rank_(free_rank) {
  for (const auto& f : factors_) {
    if (f.kind == FactorKind::FiniteCyclic && f.order < 2)
      throw std::invalid_argument("finite factor order must be >= 2");
  }
  if (free_rank_ < 0) throw std::invalid_argument("negative free rank");
  if (factors_.empty() && free_rank_ == 0)
    throw std::invalid_argument("degenerate signature: k + N == 0");
}

bool FreeProductSignature::operator==(const FreeProductSignature& o) const {
  if (free_rank_ != o.free_rank_ || factors_.size() != o.factors_.size())
    return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].kind != o.factors_[i].kind) return false;
    if (factors_[i].kind == FactorKind::FiniteCyclic &&
        factors_[i].order != o.factors_[i].order)
      return false;
  }
  return true;
}

std::string FreeProductSignature::to_string() const {
  std::ostringstream os;
  os << "freeproduct k=" << num_factors() << " orders=";
  for (int i = 0; i < num_factors(); ++i) {
    if (i) os << ",";
    if (factors_[i].kind == FactorKind::FiniteCyclic)
      os << factors_[i].order.str();
    else
      os << "inf";
  }
  os << " N=" << free_rank_;
  return os.str();
}

FreeProductSignature FreeProductSignature::from_string(const std::string& line) {
  std::istringstream is(line);
  std::string head, kkv, okv, nkv;
  is >> head >> kkv >> okv >> nkv;
  if (head != "freeproduct" || kkv.rfind("k=", 0) != 0 ||
      okv.rfind("orders=", 0) != 0 || nkv.rfind("N=", 0) != 0)
    throw std::invalid_argument("malformed signature line: '" + line + "'");
  int k = std::stoi(kkv.substr(2));
  int n = std::stoi(nkv.substr(2));
  std::vector<FactorSpec> factors;
  std::string orders = okv.substr(7);
  if (!orders.empty()) {
    std::istringstream os(orders);
    std::string tok;
    while (std::getline(os, tok, ',')) {
      if (tok.empty()) continue;
      if (tok == "inf")
        factors.push_back({FactorKind::InfiniteCyclic, 0});
      else
        factors.push_back({FactorKind::FiniteCyclic, Int(tok)});
    }
  }
  if (static_cast<int>(factors.size()) != k)
    throw std::invalid_argument("signature k does not match orders list");
  return FreeProductSignature(std::move(factors), n);
}

bool Syllable::operator<(const Syllable& o) const {
  if (peripheral != o.peripheral) return peripheral;  // Peripheral < FreeLetter
  if (index != o.index) return index < o.index;
  return exp < o.exp;
}

bool Word::operator<(const Word& o) const {
  if (syls_.size() != o.syls_.size()) return syls_.size() < o.syls_.size();
  for (std::size_t i = 0; i < syls_.size(); ++i) {
    if (syls_[i] < o.syls_[i]) return true;
    if (o.syls_[i] < syls_[i]) return false;
  }
  return false;
}

std::string Word::to_string() const {
  if (syls_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < syls_.size(); ++i) {
    if (i) os << " ";
    os << (syls_[i].peripheral ? "g" : "x") << (syls_[i].index + 1);
    if (syls_[i].exp != 1) os << "^" << syls_[i].exp.str();
  }
  return os.str();
}

std::size_t hash_word(const Word& w) {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& s : w.syllables()) {
    h = hash_combine(h, s.peripheral ? 17 : 31);
    h = hash_combine(h, std::hash<int>{}(s.index));
    h = hash_combine(h, hash_int(s.exp));
  }
  return h;
}

namespace {

// Reduces one exponent for its slot; returns 0 exponent if it vanishes.
Int reduce_exp(const FreeProductSignature& sig, const Syllable& s) {
  if (s.peripheral && sig.factor_is_finite(s.index)) {
    return int_mod(s.exp, sig.factor(s.index).order);
  }
  return s.exp;
}

void check_slot(const FreeProductSignature& sig, const Syllable& s) {
  if (s.peripheral) {
    if (s.index < 0 || s.index >= sig.num_factors())
      throw std::out_of_range("peripheral factor index out of range");
  } else {
    if (s.index < 0 || s.index >= sig.free_rank())
      throw std::out_of_range("free letter index out of range");
  }
}

}  // namespace

Word normalize(const FreeProductSignature& sig,
               const std::vector<Syllable>& raw) {
  std::vector<Syllable> out;
  out.reserve(raw.size());
  for (const auto& s : raw) {
    check_slot(sig, s);
    Syllable cur{s.peripheral, s.index, reduce_exp(sig, s)};
    if (cur.exp == 0) continue;
    if (!out.empty() && out.back().same_slot(cur)) {
      out.back().exp = reduce_exp(
          sig, Syllable{cur.peripheral, cur.index, out.back().exp + cur.exp});
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(std::move(cur));
    }
  }
  return Word(std::move(out));
}

Word multiply(const FreeProductSignature& sig, const Word& u, const Word& v) {
  std::vector<Syllable> raw = u.syllables();
  raw.insert(raw.end(), v.syllables().begin(), v.syllables().end());
  return normalize(sig, raw);
}

Word invert(const FreeProductSignature& sig, const Word& w) {
  std::vector<Syllable> raw;
  raw.reserve(w.length());
  for (auto it = w.syllables().rbegin(); it != w.syllables().rend(); ++it)
    raw.push_back(Syllable{it->peripheral, it->index, -it->exp});
  return normalize(sig, raw);
}

Word power(const FreeProductSignature& sig, const Word& w, const Int& n) {
  if (n == 0) return Word();
  Word base = n < 0 ? invert(sig, w) : w;
  Int cnt = n < 0 ? -n : n;
  // Syllable-level fast path for single syllables.
  if (base.length() == 1) {
    Syllable s = base.at(0);
    s.exp *= cnt;
    return normalize(sig, {s});
  }
  Word acc;
  for (Int i = 0; i < cnt; ++i) acc = multiply(sig, acc, base);
  return acc;
}

Word conjugate(const FreeProductSignature& sig, const Word& w, const Word& by) {
  return multiply(sig, multiply(sig, by, w), invert(sig, by));
}

namespace {

// All rotations of a cyclically reduced word are again normal forms; picks
// the lexicographically minimal one and the rotation prefix realizing it.
void minimal_rotation(const FreeProductSignature& sig, const Word& cyc,
                      Word* best, Word* prefix) {
  *best = cyc;
  *prefix = Word();
  const int n = cyc.length();
  for (int r = 1; r < n; ++r) {
    std::vector<Syllable> rot;
    rot.reserve(n);
    for (int i = 0; i < n; ++i) rot.push_back(cyc.at((r + i) % n));
    Word cand(std::move(rot));
    if (cand < *best) {
      *best = cand;
      std::vector<Syllable> pre(cyc.syllables().begin(),
                                cyc.syllables().begin() + r);
      *prefix = Word(std::move(pre));
    }
  }
}

}  // namespace

CyclicReduction cyclic_reduce(const FreeProductSignature& sig, const Word& w) {
  Word cur = w;
  Word conj;  // w = conj * cur * conj^-1
  while (cur.length() >= 2 && cur.at(0).same_slot(cur.at(cur.length() - 1))) {
    // Merge the seam: last * cur * last^-1 glues the last syllable into the
    // first and strictly shortens the word.
    Syllable last = cur.at(cur.length() - 1);
    Word lastw = normalize(sig, {last});
    conj = multiply(sig, conj, invert(sig, lastw));
    cur = multiply(sig, multiply(sig, lastw, cur), invert(sig, lastw));
  }
  // A 1-syllable word is cyclically reduced; so is any length >= 2 word whose
  // first/last slots differ.
  CyclicReduction out;
  if (cur.length() <= 1) {
    out.rep = ConjClassRep{cur};
    out.conjugator = conj;
    return out;
  }
  Word best, prefix;
  minimal_rotation(sig, cur, &best, &prefix);
  // cur = prefix * best * prefix^-1; so w = (conj*prefix) best (conj*prefix)^-1.
  out.rep = ConjClassRep{best};
  out.conjugator = multiply(sig, conj, prefix);
  return out;
}

std::optional<int> is_peripheral(const FreeProductSignature& sig, const Word& w,
                                 bool* is_identity) {
  auto red = cyclic_reduce(sig, w);
  if (is_identity) *is_identity = red.rep.rep.is_identity();
  if (red.rep.rep.length() == 1 && red.rep.rep.at(0).peripheral)
    return red.rep.rep.at(0).index;
  return std::nullopt;
}

PrimitiveRoot primitive_root(const FreeProductSignature& sig, const Word& w) {
  bool ident = false;
  if (is_peripheral(sig, w, &ident) || ident)
    throw std::invalid_argument("primitive_root: peripheral or trivial input");
  auto red = cyclic_reduce(sig, w);
  const Word& cyc = red.rep.rep;
  const int n = cyc.length();
  Word cyc_root;
  Int m;
  if (n == 1) {
    // Single free letter or infinite-cyclic peripheral syllable x^e.
    Syllable s = cyc.at(0);
    m = s.exp < 0 ? -s.exp : s.exp;
    s.exp = s.exp < 0 ? -1 : 1;
    cyc_root = normalize(sig, {s});
  } else {
    int period = n;
    for (int d = 1; d < n; ++d) {
      if (n % d != 0) continue;
      bool ok = true;
      for (int i = 0; ok && i < n; ++i)
        if (!(cyc.at(i) == cyc.at((i + d) % n))) ok = false;
      if (ok) {
        period = d;
        break;
      }
    }
    m = n / period;
    std::vector<Syllable> pre(cyc.syllables().begin(),
                              cyc.syllables().begin() + period);
    cyc_root = Word(std::move(pre));
  }
  PrimitiveRoot out;
  out.root = conjugate(sig, cyc_root, red.conjugator);
  out.m = m;
  return out;
}

std::optional<Int> cyclic_member(const FreeProductSignature& sig, const Word& h,
                                 const Word& w) {
  if (w.is_identity())
    throw std::invalid_argument("cyclic_member: trivial generator");
  if (h.is_identity()) return Int(0);
  // Peripheral generators: h must be a power of the same conjugated syllable.
  bool ident = false;
  auto wp = is_peripheral(sig, w, &ident);
  auto hp = is_peripheral(sig, h, &ident);
  if (wp.has_value() != hp.has_value()) return std::nullopt;
  if (wp.has_value()) {
    // w = c g_i^a c^-1; try exponents up to the factor order (finite) or
    // solve a = j*b directly (infinite).
    if (*wp != *hp) return std::nullopt;
    if (sig.factor_is_finite(*wp)) {
      const Int p = sig.factor(*wp).order;
      for (Int j = 1; j < p; ++j)
        if (power(sig, w, j) == h) return j;
      return std::nullopt;
    }
    // Infinite cyclic peripheral: exponents scale linearly.
    auto redw = cyclic_reduce(sig, w), redh = cyclic_reduce(sig, h);
    Int a = redw.rep.rep.at(0).exp, b = redh.rep.rep.at(0).exp;
    if (a == 0 || b % a != 0) return std::nullopt;
    Int j = b / a;
    return power(sig, w, j) == h ? std::optional<Int>(j) : std::nullopt;
  }
  auto rw = primitive_root(sig, w);
  auto rh = primitive_root(sig, h);
  Word rw_inv = invert(sig, rw.root);
  Int j;
  if (rh.root == rw.root)
    j = rh.m;
  else if (rh.root == rw_inv)
    j = -rh.m;
  else
    return std::nullopt;
  if (j % rw.m != 0) return std::nullopt;
  j /= rw.m;
  return power(sig, w, j) == h ? std::optional<Int>(j) : std::nullopt;
}

std::optional<Word> find_conjugator(const FreeProductSignature& sig,
                                    const Word& u, const Word& v) {
  auto ru = cyclic_reduce(sig, u);
  auto rv = cyclic_reduce(sig, v);
  if (!(ru.rep == rv.rep)) return std::nullopt;
  // u = cu rep cu^-1, v = cv rep cv^-1  =>  u = (cu cv^-1) v (cu cv^-1)^-1.
  return multiply(sig, ru.conjugator, invert(sig, rv.conjugator));
}

Word centralizer_generator(const FreeProductSignature& sig, const Word& w) {
  if (w.is_identity())
    throw std::invalid_argument("centralizer of the identity is all of G");
  bool ident = false;
  auto p = is_peripheral(sig, w, &ident);
  if (p) {
    auto red = cyclic_reduce(sig, w);
    return conjugate(sig, word_g(sig, *p), red.conjugator);
  }
  return primitive_root(sig, w).root;
}

namespace {

struct SlotChoice {
  Syllable syl;
  int weight;
};

void slot_choices(const FreeProductSignature& sig, int budget,
                  std::vector<SlotChoice>* out) {
  out->clear();
  for (int i = 0; i < sig.num_factors(); ++i) {
    if (sig.factor_is_finite(i)) {
      const Int p = sig.factor(i).order;
      for (Int e = 1; e < p; ++e) {
        Int w = Int(p - e) < e ? Int(p - e) : e;
        if (w <= budget)
          out->push_back({Syllable{true, i, e}, static_cast<int>(w)});
      }
    } else {
      for (int a = 1; a <= budget; ++a) {
        out->push_back({Syllable{true, i, Int(a)}, a});
        out->push_back({Syllable{true, i, Int(-a)}, a});
      }
    }
  }
  for (int j = 0; j < sig.free_rank(); ++j) {
    for (int a = 1; a <= budget; ++a) {
      out->push_back({Syllable{false, j, Int(a)}, a});
      out->push_back({Syllable{false, j, Int(-a)}, a});
    }
  }
}

}  // namespace

std::vector<ConjClassRep> canonical_test_set(const FreeProductSignature& sig,
                                             int budget,
                                             const TestSetOptions& opts) {
  std::vector<SlotChoice> choices;
  slot_choices(sig, budget, &choices);

  std::unordered_set<Word, WordHash> seen;
  std::vector<ConjClassRep> out;
  std::vector<Syllable> cur;

  auto emit = [&](const Word& w) {
    auto red = cyclic_reduce(sig, w);
    if (red.rep.rep.is_identity()) return;
    if (!opts.include_pure_peripheral && red.rep.rep.length() == 1 &&
        red.rep.rep.at(0).peripheral)
      return;
    if (seen.insert(red.rep.rep).second) out.push_back(red.rep);
    if (seen.size() > opts.max_size)
      throw std::length_error("canonical_test_set: budget too large");
  };

  std::function<void(int)> dfs = [&](int remaining) {
    for (const auto& c : choices) {
      if (c.weight > remaining) continue;
      if (!cur.empty() && cur.back().same_slot(c.syl)) continue;
      // Keep cyclic normal form: first and last slots must differ for
      // length >= 2 (single syllables are fine).
      cur.push_back(c.syl);
      if (cur.size() == 1 || !cur.front().same_slot(cur.back()))
        emit(Word(cur));
      dfs(remaining - c.weight);
      cur.pop_back();
    }
  };
  dfs(budget);

  std::sort(out.begin(), out.end());
  return out;
}

Word parse_word(const FreeProductSignature& sig, const std::string& text) {
  std::string norm = text;
  std::replace(norm.begin(), norm.end(), '.', ' ');
  std::istringstream is(norm);
  std::string tok;
  std::vector<Syllable> raw;
  while (is >> tok) {
    if (tok == "1") continue;
    char kind = tok[0];
    if (kind != 'g' && kind != 'x')
      throw std::invalid_argument("bad word token '" + tok + "'");
    auto caret = tok.find('^');
    std::string idx_s = tok.substr(1, caret == std::string::npos
                                          ? std::string::npos
                                          : caret - 1);
    std::string exp_s =
        caret == std::string::npos ? "1" : tok.substr(caret + 1);
    if (idx_s.empty() || exp_s.empty())
      throw std::invalid_argument("bad word token '" + tok + "'");
    int idx = std::stoi(idx_s) - 1;
    Int e;
    try {
      e = Int(exp_s);
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("bad exponent in token '" + tok + "'");
    }
    raw.push_back(Syllable{kind == 'g', idx, e});
  }
  return normalize(sig, raw);
}

}  // namespace freesplit
