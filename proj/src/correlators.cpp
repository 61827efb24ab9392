#include "netbound/correlators.hpp"

namespace netbound {

std::string TriangleOutcome::label() const {
  std::string s;
  for (int v : {a, b, c}) s += v > 0 ? '+' : '-';
  return s;
}

std::size_t HexagonOutcome::index() const {
  std::size_t idx = 0;
  for (int s : signs) idx = idx * 2 + (s < 0 ? 1 : 0);
  return idx;
}

HexagonOutcome HexagonOutcome::flipped() const {
  HexagonOutcome o = *this;
  for (int& s : o.signs) s = -s;
  return o;
}

const std::array<TriangleOutcome, 8>& triangle_outcomes() {
  static const std::array<TriangleOutcome, 8> outcomes = [] {
    std::array<TriangleOutcome, 8> out{};
    for (std::size_t i = 0; i < 8; ++i) {
      out[i] = TriangleOutcome{(i & 4) ? -1 : 1, (i & 2) ? -1 : 1, (i & 1) ? -1 : 1};
    }
    return out;
  }();
  return outcomes;
}

const std::array<HexagonOutcome, 64>& hexagon_outcomes() {
  static const std::array<HexagonOutcome, 64> outcomes = [] {
    std::array<HexagonOutcome, 64> out{};
    for (std::size_t i = 0; i < 64; ++i) {
      for (std::size_t k = 0; k < 6; ++k) out[i].signs[k] = (i >> (5 - k)) & 1 ? -1 : 1;
    }
    return out;
  }();
  return outcomes;
}

HexagonOutcome make_hexagon_outcome(int a, int b, int c, int ap, int bp, int cp) {
  HexagonOutcome o{{a, b, c, ap, bp, cp}};
  for (int s : o.signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("hexagon outcome components must be +1 or -1");
  }
  return o;
}

const char* correlator_key(Correlator c) {
  switch (c) {
    case Correlator::A: return "EA";
    case Correlator::B: return "EB";
    case Correlator::C: return "EC";
    case Correlator::AB: return "EAB";
    case Correlator::BC: return "EBC";
    case Correlator::AC: return "EAC";
    case Correlator::ABC: return "EABC";
  }
  return "?";
}

std::optional<Correlator> correlator_from_key(std::string_view key) {
  for (Correlator c : kAllCorrelators) {
    if (key == correlator_key(c)) return c;
  }
  return std::nullopt;
}

const char* free_var_name(FreeVar v) {
  static constexpr std::array<const char*, kNumFreeVars> names = {"F3", "F3p", "F3pp", "F4", "F4p",
                                                                   "F4pp", "F5", "F5p", "F5pp", "F6"};
  return names[static_cast<std::size_t>(v)];
}

namespace hexagon {

namespace {

constexpr std::array<std::uint8_t, kNumKnown> powers(std::initializer_list<KnownFactor> factors) {
  std::array<std::uint8_t, kNumKnown> p{};
  for (KnownFactor f : factors) ++p[f];
  return p;
}

Term term(std::initializer_list<std::uint8_t> monomials, std::initializer_list<KnownFactor> known,
          int free_var = -1) {
  Term t{};
  for (std::uint8_t m : monomials) t.monomials[t.num_monomials++] = m;
  t.power = powers(known);
  t.free_var = free_var;
  return t;
}

constexpr int fv(FreeVar v) { return static_cast<int>(v); }

}  // namespace

const std::vector<Term>& expansion() {
  static const std::vector<Term> terms = {
      term({0}, {}),
      // single-party marginals
      term({kA, kAp}, {kEA}),
      term({kB, kBp}, {kEB}),
      term({kC, kCp}, {kEC}),
      // independent pairs
      term({kA | kBp, kAp | kB}, {kEA, kEB}),
      term({kB | kCp, kBp | kC}, {kEB, kEC}),
      term({kA | kC, kAp | kCp}, {kEA, kEC}),
      term({kA | kAp}, {kEA, kEA}),
      term({kB | kBp}, {kEB, kEB}),
      term({kC | kCp}, {kEC, kEC}),
      term({kA | kBp | kC, kAp | kB | kCp}, {kEA, kEB, kEC}),
      // connected pairs
      term({kA | kB, kAp | kBp}, {kEAB}),
      term({kB | kC, kBp | kCp}, {kEBC}),
      term({kC | kAp, kCp | kA}, {kEAC}),
      // pair times an independent single
      term({kA | kAp | kB, kA | kAp | kBp}, {kEA, kEAB}),
      term({kA | kAp | kC, kA | kAp | kCp}, {kEA, kEAC}),
      term({kB | kBp | kA, kB | kBp | kAp}, {kEB, kEAB}),
      term({kB | kBp | kC, kB | kBp | kCp}, {kEB, kEBC}),
      term({kC | kCp | kA, kC | kCp | kAp}, {kEC, kEAC}),
      term({kC | kCp | kB, kC | kCp | kBp}, {kEC, kEBC}),
      // two opposite pairs
      term({kA | kAp | kB | kBp}, {kEAB, kEAB}),
      term({kB | kBp | kC | kCp}, {kEBC, kEBC}),
      term({kA | kAp | kC | kCp}, {kEAC, kEAC}),
      // three-chain times an independent single
      term({kA | kAp | kC | kBp, kA | kAp | kB | kCp}, {kEA}, fv(FreeVar::F3pp)),
      term({kB | kBp | kA | kC, kB | kBp | kAp | kCp}, {kEB}, fv(FreeVar::F3)),
      term({kC | kCp | kB | kAp, kC | kCp | kBp | kA}, {kEC}, fv(FreeVar::F3p)),
      // chains
      term({kA | kB | kC, kAp | kBp | kCp}, {}, fv(FreeVar::F3)),
      term({kB | kC | kAp, kBp | kCp | kA}, {}, fv(FreeVar::F3p)),
      term({kC | kAp | kBp, kCp | kA | kB}, {}, fv(FreeVar::F3pp)),
      term({kA | kAp | kB | kC, kA | kAp | kBp | kCp}, {}, fv(FreeVar::F4)),
      term({kB | kBp | kC | kAp, kB | kBp | kCp | kA}, {}, fv(FreeVar::F4p)),
      term({kC | kCp | kA | kB, kC | kCp | kAp | kBp}, {}, fv(FreeVar::F4pp)),
      term({kA | kAp | kB | kBp | kC, kA | kAp | kB | kBp | kCp}, {}, fv(FreeVar::F5)),
      term({kB | kBp | kC | kCp | kA, kB | kBp | kC | kCp | kAp}, {}, fv(FreeVar::F5p)),
      term({kA | kAp | kC | kCp | kB, kA | kAp | kC | kCp | kBp}, {}, fv(FreeVar::F5pp)),
      term({kA | kAp | kB | kBp | kC | kCp}, {}, fv(FreeVar::F6)),
  };
  return terms;
}

}  // namespace hexagon

}  // namespace netbound
