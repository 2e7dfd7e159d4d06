#include "rsd/moves.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace rsd {

namespace {

using detail::checked_add;
using detail::checked_mul;
using detail::checked_sub;

template <class... T> Integer add(Integer a, T... rest) {
  ((a = checked_add(a, rest)), ...);
  return a;
}

Integer twice(Integer a) { return checked_mul(2, a); }

const JointPair &pair_at(const RoundDiagram &r, std::size_t i) {
  if (i >= r.pairs.size())
    throw DiagramError("pair index " + std::to_string(i) + " out of range (diagram has " +
                       std::to_string(r.pairs.size()) + " pairs)");
  return r.pairs[i];
}

std::set<std::string> taken_names(const RoundDiagram &r) {
  std::set<std::string> taken;
  for (const auto &id : r.component_ids())
    taken.insert(id.str());
  return taken;
}

/// lk(a, x) += lk(b, x) for x outside {a, b}; lk(a, b) += framing_b.
void slide_linking(LinkingMatrix &lk, std::span<const ComponentId> all, const ComponentId &a,
                   const ComponentId &b, Integer framing_b) {
  LinkingMatrix before = lk;
  for (const auto &x : all) {
    if (x == a || x == b)
      continue;
    lk.set(a, x, checked_add(before.get(a, x), before.get(b, x)));
  }
  lk.set(a, b, checked_add(before.get(a, b), framing_b));
}

FramedComponent &component_ref(RoundDiagram &r, const ComponentId &id) {
  for (auto &p : r.pairs) {
    if (p.c1.id == id)
      return p.c1;
    if (p.c2.id == id)
      return p.c2;
  }
  for (auto &k : r.loose)
    if (k.component.id == id)
      return k.component;
  throw DiagramError("unknown component '" + id.str() + "'");
}

} // namespace

// ---- names --------------------------------------------------------------------

bool is_two_pair(Eq4Variant v) noexcept {
  return v != Eq4Variant::V11over12 && v != Eq4Variant::V12over11;
}

std::string_view to_string(Eq4Variant v) noexcept {
  switch (v) {
  case Eq4Variant::V11over12: return "11over12";
  case Eq4Variant::V12over11: return "12over11";
  case Eq4Variant::V11over21: return "11over21";
  case Eq4Variant::V11over22: return "11over22";
  case Eq4Variant::V12over21: return "12over21";
  case Eq4Variant::V12over22: return "12over22";
  }
  return "?";
}

std::optional<Eq4Variant> parse_eq4_variant(std::string_view s) noexcept {
  for (auto v : kEq4Variants)
    if (to_string(v) == s)
      return v;
  return std::nullopt;
}

namespace {
constexpr MoveKind kAllKinds[] = {MoveKind::Kirby1Add,  MoveKind::Kirby1Del, MoveKind::Kirby2Slide,
                                  MoveKind::EqMove1,    MoveKind::ShuffleA,  MoveKind::ShuffleB,
                                  MoveKind::EqMove3Add, MoveKind::EqMove3Del, MoveKind::EqMove4};
}

std::string_view to_string(MoveKind k) noexcept {
  switch (k) {
  case MoveKind::Kirby1Add: return "kirby1-add";
  case MoveKind::Kirby1Del: return "kirby1-del";
  case MoveKind::Kirby2Slide: return "kirby2-slide";
  case MoveKind::EqMove1: return "eq1";
  case MoveKind::ShuffleA: return "shuffle-a";
  case MoveKind::ShuffleB: return "shuffle-b";
  case MoveKind::EqMove3Add: return "eq3-add";
  case MoveKind::EqMove3Del: return "eq3-del";
  case MoveKind::EqMove4: return "eq4";
  }
  return "?";
}

std::optional<MoveKind> parse_move_kind(std::string_view s) noexcept {
  for (auto k : kAllKinds)
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

std::string to_string(const MoveDescriptor &m) {
  std::ostringstream os;
  os << to_string(m.kind);
  switch (m.kind) {
  case MoveKind::Kirby1Add: os << " sign=" << m.sign; break;
  case MoveKind::Kirby1Del: os << " comp=" << m.components.at(0).str(); break;
  case MoveKind::Kirby2Slide:
    os << " a=" << m.components.at(0).str() << " b=" << m.components.at(1).str();
    break;
  case MoveKind::EqMove1:
  case MoveKind::ShuffleA: os << " pair=" << m.i << " k=" << m.k; break;
  case MoveKind::ShuffleB:
    os << " i=" << m.i << " j=" << m.j << " k1=" << m.k1 << " k2=" << m.k2;
    break;
  case MoveKind::EqMove3Add: os << " k=" << m.k << " delta=" << m.delta << " sign=" << m.sign; break;
  case MoveKind::EqMove3Del: os << " pair=" << m.i; break;
  case MoveKind::EqMove4:
    os << " variant=" << to_string(m.variant.value()) << " i=" << m.i;
    if (is_two_pair(*m.variant))
      os << " j=" << m.j;
    os << " k=" << m.k;
    break;
  }
  return os.str();
}

MoveDescriptor parse_move(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::string word;
  if (!(is >> word))
    throw DiagramError("empty move");
  auto kind = parse_move_kind(word);
  if (!kind)
    throw DiagramError("unknown move kind '" + word + "'");

  std::map<std::string, std::string> args;
  while (is >> word) {
    auto eq = word.find('=');
    if (eq == std::string::npos || eq == 0)
      throw DiagramError("move argument '" + word + "' is not key=value");
    if (!args.emplace(word.substr(0, eq), word.substr(eq + 1)).second)
      throw DiagramError("move argument '" + word.substr(0, eq) + "' given twice");
  }

  std::set<std::string> used;
  auto raw = [&](const std::string &key) -> const std::string & {
    auto it = args.find(key);
    if (it == args.end())
      throw DiagramError(std::string(to_string(*kind)) + " needs argument '" + key + "'");
    used.insert(key);
    return it->second;
  };
  auto integer = [&](const std::string &key) {
    const auto &s = raw(key);
    Integer v = 0;
    const char *first = s.data();
    if (!s.empty() && s[0] == '+')
      ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || first == s.data() + s.size())
      throw DiagramError("argument " + key + "=" + s + " is not an integer");
    return v;
  };
  auto index = [&](const std::string &key) {
    Integer v = integer(key);
    if (v < 0)
      throw DiagramError("argument " + key + " must be a non-negative pair index");
    return static_cast<std::size_t>(v);
  };
  auto sign = [&](const std::string &key) {
    Integer v = integer(key);
    if (v != 1 && v != -1)
      throw DiagramError("argument " + key + " must be +1 or -1");
    return static_cast<int>(v);
  };

  MoveDescriptor m;
  m.kind = *kind;
  switch (*kind) {
  case MoveKind::Kirby1Add: m.sign = sign("sign"); break;
  case MoveKind::Kirby1Del: m.components = {ComponentId{raw("comp")}}; break;
  case MoveKind::Kirby2Slide: m.components = {ComponentId{raw("a")}, ComponentId{raw("b")}}; break;
  case MoveKind::EqMove1:
  case MoveKind::ShuffleA:
    m.i = index("pair");
    m.k = integer("k");
    break;
  case MoveKind::ShuffleB:
    m.i = index("i");
    m.j = index("j");
    m.k1 = integer("k1");
    m.k2 = integer("k2");
    break;
  case MoveKind::EqMove3Add:
    m.k = integer("k");
    m.delta = integer("delta");
    m.sign = sign("sign");
    break;
  case MoveKind::EqMove3Del: m.i = index("pair"); break;
  case MoveKind::EqMove4: {
    const auto &name = raw("variant");
    m.variant = parse_eq4_variant(name);
    if (!m.variant)
      throw DiagramError("unknown eq4 variant '" + name + "'");
    m.i = index("i");
    if (is_two_pair(*m.variant))
      m.j = index("j");
    m.k = integer("k");
    break;
  }
  }
  for (const auto &[key, value] : args)
    if (!used.contains(key))
      throw DiagramError(std::string(to_string(*kind)) + " does not take argument '" + key + "'");
  return m;
}

// ---- Kirby moves --------------------------------------------------------------

DehnDiagram kirby1_add(const DehnDiagram &d, int sign) {
  if (sign != 1 && sign != -1)
    throw DiagramError("Kirby move 1 adds a +1 or -1 framed unknot");
  std::set<std::string> taken;
  for (const auto &c : d.components)
    taken.insert(c.id.str());
  DehnDiagram out = d;
  FramedComponent u{fresh_id(taken, "U"), KnotExpr::unknot(), false};
  out.framing[u.id] = sign;
  out.components.push_back(std::move(u));
  return out;
}

DehnDiagram kirby1_del(const DehnDiagram &d, const ComponentId &c) {
  const auto &comp = d.component(c);
  if (!comp.knot.is_unknot())
    throw DiagramError("'" + c.str() + "' is not an unknot");
  Integer f = d.framing_of(c);
  if (f != 1 && f != -1)
    throw DiagramError("'" + c.str() + "' has framing " + std::to_string(f) + ", not +1 or -1");
  for (const auto &x : d.components)
    if (x.id != c && (d.lk.get(c, x.id) != 0 || d.lk.get(x.id, c) != 0))
      throw DiagramError("'" + c.str() + "' links '" + x.id.str() + "'");
  DehnDiagram out = d;
  std::erase_if(out.components, [&](const FramedComponent &x) { return x.id == c; });
  out.framing.erase(c);
  out.lk.erase(c);
  return out;
}

DehnDiagram kirby2_slide(const DehnDiagram &d, const ComponentId &a, const ComponentId &b) {
  if (a == b)
    throw DiagramError("cannot slide '" + a.str() + "' over itself");
  const auto &over = d.component(b);
  d.component(a);
  Integer na = d.framing_of(a);
  Integer nb = d.framing_of(b);
  Integer l = d.lk.get(a, b);

  DehnDiagram out = d;
  for (auto &c : out.components)
    if (c.id == a)
      c.knot = KnotExpr::band_sum(c.knot, over.knot, nb);
  out.framing[a] = add(na, nb, twice(l));
  std::vector<ComponentId> ids;
  for (const auto &c : d.components)
    ids.push_back(c.id);
  slide_linking(out.lk, ids, a, b, nb);
  return out;
}

// ---- equivalence moves --------------------------------------------------------

RoundDiagram eq_move1(const RoundDiagram &r, std::size_t pair, Integer k) {
  const auto &p = pair_at(r, pair);
  integral_m(p, pair);
  RoundDiagram out = r;
  auto &q = out.pairs[pair];
  q.n1 = add(checked_sub(p.n1, p.n2), k);
  q.n2 = k;
  return out;
}

RoundDiagram shuffle_a(const RoundDiagram &r, std::size_t pair, Integer k) {
  const auto &p = pair_at(r, pair);
  Integer m = integral_m(p, pair);
  RoundDiagram out = r;
  auto &q = out.pairs[pair];
  q.c1 = p.c2;
  q.c2 = p.c1;
  q.n1 = add(checked_sub(k, p.n1), p.n2);
  q.n2 = k;
  q.m = Rational::integer(add(checked_sub(p.n1, p.n2), m));
  return out;
}

RoundDiagram shuffle_b(const RoundDiagram &r, std::size_t i, std::size_t j, Integer k1, Integer k2) {
  if (i == j)
    throw DiagramError("shuffle move B needs two distinct pairs");
  const auto &p = pair_at(r, i);
  const auto &q = pair_at(r, j);
  Integer mi = integral_m(p, i);
  Integer mj = integral_m(q, j);

  RoundDiagram out = r;
  auto &np = out.pairs[i];
  auto &nq = out.pairs[j];
  np.c2 = q.c2;
  np.n1 = add(checked_sub(p.n1, p.n2), checked_sub(mi, mj), k1);
  np.n2 = k2;
  np.m = Rational::integer(mi);
  nq.c2 = p.c2;
  nq.n1 = add(checked_sub(q.n1, q.n2), checked_sub(mj, mi), k2);
  nq.n2 = k1;
  nq.m = Rational::integer(mj);
  return out;
}

std::pair<ComponentId, ComponentId> eq_move3_ids(const RoundDiagram &r) {
  auto taken = taken_names(r);
  for (std::size_t n = 1;; ++n) {
    std::string first = "U" + std::to_string(n) + "_1";
    std::string second = "U" + std::to_string(n) + "_2";
    if (!taken.contains(first) && !taken.contains(second))
      return {ComponentId{first}, ComponentId{second}};
  }
}

RoundDiagram eq_move3_add(const RoundDiagram &r, Integer k, Integer delta, int sign) {
  if (sign != 1 && sign != -1)
    throw DiagramError("equivalence move 3 uses round 2-surgery coefficient +1 or -1");
  if (delta != 0 && delta != -2 * sign)
    throw DiagramError("equivalence move 3 with coefficient " + std::to_string(sign) +
                       " needs delta 0 or " + std::to_string(-2 * sign) + ", got " +
                       std::to_string(delta));
  auto [u1, u2] = eq_move3_ids(r);
  RoundDiagram out = r;
  out.pairs.push_back({{u1, KnotExpr::unknot(), false}, add(k, delta),
                       {u2, KnotExpr::unknot(), false}, k, Rational::integer(sign)});
  return out;
}

bool eq_move3_deletable(const RoundDiagram &r, std::size_t pair) {
  if (pair >= r.pairs.size())
    return false;
  const auto &p = r.pairs[pair];
  if (!p.c1.knot.is_unknot() || !p.c2.knot.is_unknot() || !p.m || !p.m->is_integer())
    return false;
  Integer m = p.m->p;
  if (m != 1 && m != -1)
    return false;
  Integer delta = p.n1 - p.n2;
  if (delta != 0 && delta != -2 * m)
    return false;
  for (const auto &[key, v] : r.lk.entries())
    if (key.first == p.c1.id || key.first == p.c2.id || key.second == p.c1.id ||
        key.second == p.c2.id)
      return false;
  return true;
}

RoundDiagram eq_move3_del(const RoundDiagram &r, std::size_t pair) {
  const auto &p = pair_at(r, pair);
  if (!eq_move3_deletable(r, pair))
    throw DiagramError("pair " + std::to_string(pair) + " (" + p.c1.id.str() + ", " + p.c2.id.str() +
                       ") is not an unlinked unknot pair with coefficients (k, k, +-1) or "
                       "(k-+2, k, +-1)");
  RoundDiagram out = r;
  out.lk.erase(p.c1.id);
  out.lk.erase(p.c2.id);
  out.pairs.erase(out.pairs.begin() + static_cast<std::ptrdiff_t>(pair));
  return out;
}

RoundDiagram eq_move4(const RoundDiagram &r, Eq4Variant variant, std::size_t i, std::size_t j,
                      Integer k) {
  const auto &p = pair_at(r, i);
  Integer mi = integral_m(p, i);
  Integer fi = add(checked_sub(p.n1, p.n2), mi);

  const JointPair *q = nullptr;
  Integer mj = 0, fj = 0;
  if (is_two_pair(variant)) {
    if (i == j)
      throw DiagramError(std::string("eq4 variant ") + std::string(to_string(variant)) +
                         " needs two distinct pairs");
    q = &pair_at(r, j);
    mj = integral_m(*q, j);
    fj = add(checked_sub(q->n1, q->n2), mj);
  }

  // slid component, the component it slides over, and that component's
  // Dehn framing
  const FramedComponent *slid = nullptr, *over = nullptr;
  Integer over_framing = 0;
  switch (variant) {
  case Eq4Variant::V11over12: slid = &p.c1, over = &p.c2, over_framing = mi; break;
  case Eq4Variant::V12over11: slid = &p.c2, over = &p.c1, over_framing = fi; break;
  case Eq4Variant::V11over21: slid = &p.c1, over = &q->c1, over_framing = fj; break;
  case Eq4Variant::V11over22: slid = &p.c1, over = &q->c2, over_framing = mj; break;
  case Eq4Variant::V12over21: slid = &p.c2, over = &q->c1, over_framing = fj; break;
  case Eq4Variant::V12over22: slid = &p.c2, over = &q->c2, over_framing = mj; break;
  }
  Integer l = r.lk.get(slid->id, over->id);
  Integer d1 = checked_sub(p.n1, p.n2);

  Integer n1 = 0;
  Integer m = mi;
  switch (variant) {
  case Eq4Variant::V11over12: n1 = add(d1, mi, twice(l), k); break;
  case Eq4Variant::V12over11:
    n1 = add(checked_sub(0, mi), checked_sub(0, twice(l)), k);
    m = add(twice(mi), d1, twice(l));
    break;
  case Eq4Variant::V11over21:
    n1 = add(checked_sub(add(p.n1, q->n1), add(p.n2, q->n2)), mj, twice(l), k);
    break;
  case Eq4Variant::V11over22: n1 = add(d1, mj, twice(l), k); break;
  case Eq4Variant::V12over21:
    n1 = add(checked_sub(d1, checked_sub(q->n1, q->n2)), checked_sub(0, mj),
             checked_sub(0, twice(l)), k);
    m = add(mi, mj, checked_sub(q->n1, q->n2), twice(l));
    break;
  case Eq4Variant::V12over22:
    n1 = add(d1, checked_sub(0, mj), checked_sub(0, twice(l)), k);
    m = add(mi, mj, twice(l));
    break;
  }

  ComponentId a = slid->id, b = over->id;
  KnotExpr new_knot = KnotExpr::band_sum(slid->knot, over->knot, over_framing);

  RoundDiagram out = r;
  auto &np = out.pairs[i];
  np.n1 = n1;
  np.n2 = k;
  np.m = Rational::integer(m);
  component_ref(out, a).knot = std::move(new_knot);
  auto ids = r.component_ids();
  slide_linking(out.lk, ids, a, b, over_framing);
  return out;
}

RoundDiagram normalize_k(const RoundDiagram &r, std::span<const Integer> ks) {
  if (ks.size() != r.pairs.size())
    throw DiagramError("expected " + std::to_string(r.pairs.size()) + " k values, got " +
                       std::to_string(ks.size()));
  RoundDiagram out = r;
  for (std::size_t i = 0; i < ks.size(); ++i)
    out = eq_move1(out, i, ks[i]);
  return out;
}

RoundDiagram apply_move(const RoundDiagram &r, const MoveDescriptor &m) {
  switch (m.kind) {
  case MoveKind::EqMove1: return eq_move1(r, m.i, m.k);
  case MoveKind::ShuffleA: return shuffle_a(r, m.i, m.k);
  case MoveKind::ShuffleB: return shuffle_b(r, m.i, m.j, m.k1, m.k2);
  case MoveKind::EqMove3Add: return eq_move3_add(r, m.k, m.delta, m.sign);
  case MoveKind::EqMove3Del: return eq_move3_del(r, m.i);
  case MoveKind::EqMove4:
    if (!m.variant)
      throw DiagramError("eq4 move without variant");
    return eq_move4(r, *m.variant, m.i, m.j, m.k);
  default:
    throw DiagramError(std::string(to_string(m.kind)) + " applies to Dehn diagrams, not round diagrams");
  }
}

DehnDiagram apply_move(const DehnDiagram &d, const MoveDescriptor &m) {
  switch (m.kind) {
  case MoveKind::Kirby1Add: return kirby1_add(d, m.sign);
  case MoveKind::Kirby1Del:
    if (m.components.size() != 1)
      throw DiagramError("kirby1-del needs one component");
    return kirby1_del(d, m.components[0]);
  case MoveKind::Kirby2Slide:
    if (m.components.size() != 2)
      throw DiagramError("kirby2-slide needs two components");
    return kirby2_slide(d, m.components[0], m.components[1]);
  default:
    throw DiagramError(std::string(to_string(m.kind)) + " applies to round diagrams, not Dehn diagrams");
  }
}

RoundDiagram apply_sequence(RoundDiagram r, const MoveSequence &seq) {
  for (const auto &m : seq)
    r = apply_move(r, m);
  return r;
}

bool structurally_equal(const RoundDiagram &a, const RoundDiagram &b) {
  return canonicalize(a) == canonicalize(b);
}

} // namespace rsd
