#include "rdf/affine.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

namespace rdf {

Grade Gen::degree() const noexcept {
  if (letter == Letter::C) return {0, 0};
  const int m = -tpow;
  const int w = letter == Letter::F ? 1 : (letter == Letter::E ? -1 : 0);
  return {m + w, m};
}

bool Gen::is_lowering() const noexcept {
  if (letter == Letter::C) return false;
  const Grade d = degree();
  return d.p1 >= 0 && d.p2 >= 0 && d.p1 + d.p2 > 0;
}

std::string to_string(const Gen& g) {
  if (g.letter == Letter::C) return "c";
  std::string s = g.letter == Letter::E ? "e" : (g.letter == Letter::F ? "f" : "h");
  if (g.tpow == 1) return s + "*T";
  if (g.tpow > 1) return s + "*T^" + std::to_string(g.tpow);
  if (g.tpow == -1) return s + "/T";
  if (g.tpow < -1) return s + "/T^" + std::to_string(-g.tpow);
  return s;
}

namespace {

// Coefficient of [x, y] in sl2 for x, y in {e, f, h}.
GenTerm sl2_bracket(Letter x, Letter y, int tpow) {
  using L = Letter;
  if (x == y) return {Gen::c(), 0};
  if (x == L::E && y == L::F) return {Gen::h(tpow), 1};
  if (x == L::F && y == L::E) return {Gen::h(tpow), -1};
  if (x == L::H && y == L::E) return {Gen::e(tpow), 2};
  if (x == L::E && y == L::H) return {Gen::e(tpow), -2};
  if (x == L::H && y == L::F) return {Gen::f(tpow), -2};
  return {Gen::f(tpow), 2};  // [f, h]
}

long killing(Letter x, Letter y) {
  if ((x == Letter::E && y == Letter::F) || (x == Letter::F && y == Letter::E)) return 1;
  if (x == Letter::H && y == Letter::H) return 2;
  return 0;
}

}  // namespace

std::vector<GenTerm> bracket(const Gen& a, const Gen& b) {
  std::vector<GenTerm> out;
  if (a.is_central() || b.is_central()) return out;
  GenTerm main = sl2_bracket(a.letter, b.letter, a.tpow + b.tpow);
  if (main.coeff != 0) out.push_back(main);
  if (a.tpow + b.tpow == 0) {
    long central = a.tpow * killing(a.letter, b.letter);
    if (central != 0) out.push_back({Gen::c(), central});
  }
  return out;
}

GenTerm pi_twist(const Gen& g) {
  switch (g.letter) {
    case Letter::E:
      return {Gen::f(g.tpow), 1};
    case Letter::F:
      return {Gen::e(g.tpow), 1};
    case Letter::H:
      return {g, -1};
    case Letter::C:
      break;
  }
  return {g, 1};
}

Ordering ordering_for(Grade g) noexcept { return g.p1 >= g.p2 ? Ordering::FHE : Ordering::EHF; }

Grade PBWMonomial::grade() const noexcept {
  Grade g;
  for (int i : fs) g = g + Grade{i + 1, i};
  for (int j : hs) g = g + Grade{j, j};
  for (int l : es) g = g + Grade{l - 1, l};
  return g;
}

std::vector<Gen> PBWMonomial::word(Ordering o) const {
  std::vector<Gen> w;
  w.reserve(length());
  auto push_f = [&] {
    for (int i : fs) w.push_back(Gen::f(-i));
  };
  auto push_e = [&] {
    for (int l : es) w.push_back(Gen::e(-l));
  };
  if (o == Ordering::FHE) {
    push_f();
  } else {
    push_e();
  }
  for (int j : hs) w.push_back(Gen::h(-j));
  if (o == Ordering::FHE) {
    push_e();
  } else {
    push_f();
  }
  return w;
}

void PBWMonomial::canonicalize() {
  std::sort(fs.begin(), fs.end(), std::greater<>());
  std::sort(hs.begin(), hs.end(), std::greater<>());
  std::sort(es.begin(), es.end(), std::greater<>());
}

bool operator<(const PBWMonomial& a, const PBWMonomial& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return std::tie(a.fs, a.hs, a.es) < std::tie(b.fs, b.hs, b.es);
}

std::size_t PBWMonomialHash::operator()(const PBWMonomial& m) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (int i : m.fs) mix(static_cast<std::size_t>(i) * 3 + 0);
  mix(0xff);
  for (int j : m.hs) mix(static_cast<std::size_t>(j) * 3 + 1);
  mix(0xfff);
  for (int l : m.es) mix(static_cast<std::size_t>(l) * 3 + 2);
  return h;
}

std::string to_string(const PBWMonomial& m) {
  if (m.is_vacuum()) return "v";
  auto factor = [](const Gen& g) {
    std::string s = to_string(g);
    return g.tpow == 0 ? s : "(" + s + ")";
  };
  std::ostringstream out;
  const auto w = m.word();
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    out << factor(w[i]);
    if (j - i > 1) out << '^' << (j - i);
    out << '*';
    i = j;
  }
  out << 'v';
  return out.str();
}

const std::vector<PBWMonomial>& component_basis(Grade g) {
  static std::shared_mutex mutex;
  static std::map<Grade, std::vector<PBWMonomial>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(g);
    if (it != cache.end()) return it->second;
  }
  std::vector<PBWMonomial> out;
  if (g.valid()) {
    std::vector<Gen> gens;
    for (int i = 0; i + 1 <= g.p1 && i <= g.p2; ++i) gens.push_back(Gen::f(-i));
    for (int j = 1; j <= std::min(g.p1, g.p2); ++j) gens.push_back(Gen::h(-j));
    for (int l = 1; l - 1 <= g.p1 && l <= g.p2; ++l) gens.push_back(Gen::e(-l));
    PBWMonomial cur;
    std::function<void(std::size_t, Grade)> rec = [&](std::size_t idx, Grade left) {
      if (left == Grade{0, 0}) {
        PBWMonomial m = cur;
        m.canonicalize();
        out.push_back(std::move(m));
        return;
      }
      if (idx == gens.size()) return;
      rec(idx + 1, left);
      const Gen& gen = gens[idx];
      const Grade d = gen.degree();
      auto& list = gen.letter == Letter::F ? cur.fs : (gen.letter == Letter::H ? cur.hs : cur.es);
      int pushed = 0;
      Grade rem = left - d;
      while (rem.valid()) {
        list.push_back(-gen.tpow);
        ++pushed;
        rec(idx + 1, rem);
        rem = rem - d;
      }
      list.resize(list.size() - static_cast<std::size_t>(pushed));
    };
    rec(0, g);
    std::sort(out.begin(), out.end());
  }
  std::unique_lock lock(mutex);
  return cache.try_emplace(g, std::move(out)).first->second;
}

std::size_t basis_index(const PBWMonomial& m) {
  const auto& basis = component_basis(m.grade());
  auto it = std::lower_bound(basis.begin(), basis.end(), m);
  if (it == basis.end() || !(*it == m)) throw std::invalid_argument("monomial not in its component basis");
  return static_cast<std::size_t>(it - basis.begin());
}

const Alphabet& universal_alphabet() {
  static const Alphabet alphabet({"M", "k"});
  return alphabet;
}

namespace {

void add_scaled(UniversalCombination& acc, const UniversalCombination& x, const Poly& s) {
  for (const auto& [m, p] : x) {
    auto [it, inserted] = acc.try_emplace(m, Poly());
    it->second += p * s;
    if (it->second.is_zero()) acc.erase(it);
  }
}

void add_term(UniversalCombination& acc, const PBWMonomial& m, const Poly& s) {
  if (s.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(m, Poly());
  it->second += s;
  if (it->second.is_zero()) acc.erase(it);
}

struct ActKeyU {
  Gen gen;
  PBWMonomial mono;
  friend bool operator==(const ActKeyU&, const ActKeyU&) = default;
};

struct ActKeyUHash {
  std::size_t operator()(const ActKeyU& k) const noexcept {
    std::size_t h = PBWMonomialHash()(k.mono);
    return h * 31 + static_cast<std::size_t>(k.gen.letter) * 1009 + static_cast<std::size_t>(k.gen.tpow + 512);
  }
};

template <typename Key, typename Value, typename Hash = std::hash<Key>>
class Memo {
 public:
  const Value* find(const Key& k) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }
  const Value& insert(const Key& k, Value v) {
    std::unique_lock lock(mutex_);
    return map_.try_emplace(k, std::move(v)).first->second;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, Value, Hash> map_;
};

// Normal ordering into the fixed FHE ordering. Within a block, larger
// T-exponents in absolute value come first.
class Engine {
 public:
  const UniversalCombination& insert(const Gen& g, const PBWMonomial& n) {
    ActKeyU key{g, n};
    if (const auto* hit = insert_memo_.find(key)) return *hit;
    return insert_memo_.insert(key, compute_insert(g, n));
  }

  UniversalCombination straighten(const std::vector<Gen>& word) {
    UniversalCombination comb{{PBWMonomial{}, Poly(1)}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      UniversalCombination next;
      for (const auto& [m, p] : comb) add_scaled(next, insert(*it, m), p);
      comb = std::move(next);
    }
    return comb;
  }

  // Basis vector of the grade's own ordering, expanded in FHE monomials.
  const UniversalCombination& to_internal(const PBWMonomial& m) {
    if (const auto* hit = internal_memo_.find(m)) return *hit;
    UniversalCombination out;
    if (m.ordering() == Ordering::FHE) {
      out.emplace(m, Poly(1));
    } else {
      out = straighten(m.word(Ordering::EHF));
    }
    return internal_memo_.insert(m, std::move(out));
  }

  // FHE monomial expanded in the basis of its grade's ordering.
  const UniversalCombination& to_public(const PBWMonomial& s) {
    if (const auto* hit = public_memo_.find(s)) return *hit;
    UniversalCombination out{{s, Poly(1)}};
    if (s.ordering() == Ordering::EHF) {
      // EHF(s) = FHE(s) + shorter FHE terms.
      UniversalCombination diff = straighten(s.word(Ordering::EHF));
      add_term(diff, s, Poly(-1));
      for (const auto& [u, p] : diff) add_scaled(out, to_public(u), -p);
    }
    return public_memo_.insert(s, std::move(out));
  }

  const UniversalCombination& act(const Gen& g, const PBWMonomial& m) {
    ActKeyU key{g, m};
    if (const auto* hit = act_memo_.find(key)) return *hit;
    UniversalCombination internal;
    for (const auto& [u, p] : to_internal(m)) add_scaled(internal, insert(g, u), p);
    UniversalCombination out;
    const Grade target = m.grade() + g.degree();
    if (target.valid() && ordering_for(target) == Ordering::EHF) {
      for (const auto& [u, p] : internal) add_scaled(out, to_public(u), p);
    } else {
      out = std::move(internal);
    }
    return act_memo_.insert(key, std::move(out));
  }

 private:
  static int block(Letter l) { return l == Letter::F ? 0 : (l == Letter::H ? 1 : 2); }

  static bool fits_before(const Gen& g, const Gen& a) {
    return std::make_pair(block(g.letter), g.tpow) <= std::make_pair(block(a.letter), a.tpow);
  }

  static Gen first(const PBWMonomial& n) {
    if (!n.fs.empty()) return Gen::f(-n.fs.front());
    if (!n.hs.empty()) return Gen::h(-n.hs.front());
    return Gen::e(-n.es.front());
  }

  static PBWMonomial rest(const PBWMonomial& n) {
    PBWMonomial r = n;
    if (!r.fs.empty()) {
      r.fs.erase(r.fs.begin());
    } else if (!r.hs.empty()) {
      r.hs.erase(r.hs.begin());
    } else {
      r.es.erase(r.es.begin());
    }
    return r;
  }

  static PBWMonomial prepend(const Gen& g, const PBWMonomial& n) {
    PBWMonomial r = n;
    auto& list = g.letter == Letter::F ? r.fs : (g.letter == Letter::H ? r.hs : r.es);
    list.insert(list.begin(), -g.tpow);
    return r;
  }

  static Poly weight(Grade g) { return Poly::variable(0) - Poly(2L * (g.p1 - g.p2)); }

  UniversalCombination compute_insert(const Gen& g, const PBWMonomial& n) {
    if (g.is_central()) return {{n, Poly::variable(1)}};
    if (g.is_cartan_zero()) {
      Poly w = weight(n.grade());
      if (w.is_zero()) return {};
      return {{n, w}};
    }
    if (n.is_vacuum()) {
      if (!g.is_lowering()) return {};
      return {{prepend(g, n), Poly(1)}};
    }
    const Gen a = first(n);
    if (g.is_lowering() && fits_before(g, a)) return {{prepend(g, n), Poly(1)}};
    const PBWMonomial r = rest(n);
    UniversalCombination out;
    // g a R = a (g R) + [g, a] R
    const UniversalCombination gr = insert(g, r);
    for (const auto& [t, p] : gr) add_scaled(out, insert(a, t), p);
    for (const auto& term : bracket(g, a)) add_scaled(out, insert(term.gen, r), Poly(term.coeff));
    return out;
  }

  Memo<ActKeyU, UniversalCombination, ActKeyUHash> insert_memo_;
  Memo<ActKeyU, UniversalCombination, ActKeyUHash> act_memo_;
  Memo<PBWMonomial, UniversalCombination, PBWMonomialHash> internal_memo_;
  Memo<PBWMonomial, UniversalCombination, PBWMonomialHash> public_memo_;
};

Engine& engine() {
  static Engine e;
  return e;
}

}  // namespace

const UniversalCombination& universal_act(const Gen& g, const PBWMonomial& m) { return engine().act(g, m); }

UniversalCombination universal_word(std::span<const Gen> word) {
  UniversalCombination comb{{PBWMonomial{}, Poly(1)}};
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    UniversalCombination next;
    for (const auto& [m, p] : comb) add_scaled(next, universal_act(*it, m), p);
    comb = std::move(next);
  }
  return comb;
}

std::string format_terms(const std::map<PBWMonomial, RatFunc>& coeffs, const Alphabet& alphabet, bool dual) {
  if (coeffs.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : coeffs) {
    if (!out.empty()) out += " + ";
    std::string name = to_string(m);
    if (dual) name = "(" + name + ")*";
    out += "(" + alphabet.format(c) + ")*[" + name + "]";
  }
  return out;
}

VermaModule::VermaModule(RatFunc m, RatFunc k) : m_(std::move(m)), k_(std::move(k)) {}

VermaVector VermaModule::vacuum() const { return basis_vector(PBWMonomial{}); }

VermaVector VermaModule::basis_vector(const PBWMonomial& m) const { return VermaVector::basis(m); }

RatFunc VermaModule::eval(const Poly& p) const {
  const RatFunc vals[2] = {m_, k_};
  return evaluate(p, vals);
}

const RatMatrix& VermaModule::act_matrix(const Gen& g, Grade from) const {
  ActKey key{g, from};
  {
    std::shared_lock lock(mutex_);
    auto it = matrices_.find(key);
    if (it != matrices_.end()) return *it->second;
  }
  const Grade to = from + g.degree();
  const auto& src = component_basis(from);
  const std::size_t rows = to.valid() ? component_basis(to).size() : 0;
  auto mat = std::make_unique<RatMatrix>(RatMatrix::Constant(static_cast<Eigen::Index>(rows),
                                                              static_cast<Eigen::Index>(src.size()), RatFunc()));
  if (rows > 0) {
    for (std::size_t c = 0; c < src.size(); ++c) {
      for (const auto& [u, p] : universal_act(g, src[c])) {
        (*mat)(static_cast<Eigen::Index>(basis_index(u)), static_cast<Eigen::Index>(c)) = eval(p);
      }
    }
  }
  std::unique_lock lock(mutex_);
  return *matrices_.try_emplace(key, std::move(mat)).first->second;
}

VermaVector VermaModule::act(const Gen& g, const VermaVector& x) const {
  VermaVector out{x.grade + g.degree(), {}};
  if (x.is_zero() || !out.grade.valid()) return out;
  const auto& mat = act_matrix(g, x.grade);
  const auto& target = component_basis(out.grade);
  for (const auto& [m, c] : x.coeffs) {
    const auto col = static_cast<Eigen::Index>(basis_index(m));
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
      if (!mat(r, col).is_zero()) out.add(target[static_cast<std::size_t>(r)], c * mat(r, col));
    }
  }
  return out;
}

VermaVector VermaModule::act_word(std::span<const Gen> word, const VermaVector& x) const {
  VermaVector cur = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = act(*it, cur);
  return cur;
}

std::map<PBWMonomial, RatFunc> coordinates_in_order(const VermaModule& v, const VermaVector& x, Ordering o) {
  std::map<PBWMonomial, RatFunc> out;
  if (x.is_zero()) return out;
  const auto& basis = component_basis(x.grade);
  const auto n = static_cast<Eigen::Index>(basis.size());
  RatMatrix change = RatMatrix::Constant(n, n, RatFunc());
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto word = basis[static_cast<std::size_t>(c)].word(o);
    for (const auto& [m, p] : universal_word(word)) change(static_cast<Eigen::Index>(basis_index(m)), c) = v.eval(p);
  }
  const LinearSolution sol = solve_linear(change, x.coordinates());
  if (sol.status != LinearSolution::Status::Solved) throw std::logic_error("reordered PBW family is not a basis");
  for (Eigen::Index c = 0; c < n; ++c) {
    if (!sol.x(c).is_zero()) out.emplace(basis[static_cast<std::size_t>(c)], sol.x(c));
  }
  return out;
}

Poly KacKazhdanLine::form() const {
  const Poly m = Poly::variable(0);
  const Poly kappa = Poly::variable(1) + Poly(2);
  switch (type) {
    case Type::A:
      return m - Poly(l - 1) + kappa * mpz_class(a - 1);
    case Type::B:
      return m + Poly(l + 1) - kappa * mpz_class(a);
    case Type::KappaZero:
      break;
  }
  return kappa;
}

std::vector<KacKazhdanLine> kac_kazhdan_lines(int l_max, int a_max) {
  std::vector<KacKazhdanLine> out;
  for (int l = 1; l <= l_max; ++l) {
    for (int a = 1; a <= a_max; ++a) {
      out.push_back({KacKazhdanLine::Type::A, l, a, {l * a, l * (a - 1)}});
      out.push_back({KacKazhdanLine::Type::B, l, a, {l * (a - 1), l * a}});
    }
  }
  out.push_back({KacKazhdanLine::Type::KappaZero, 0, 0, {0, 0}});
  return out;
}

}  // namespace rdf
