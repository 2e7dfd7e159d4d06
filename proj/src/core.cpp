#include "rsd/core.hpp"

#include <algorithm>
#include <numeric>

namespace rsd {

namespace detail {

Integer checked_add(Integer a, Integer b) {
  Integer r;
  if (__builtin_add_overflow(a, b, &r))
    throw DiagramError("integer overflow in coefficient arithmetic");
  return r;
}

Integer checked_sub(Integer a, Integer b) {
  Integer r;
  if (__builtin_sub_overflow(a, b, &r))
    throw DiagramError("integer overflow in coefficient arithmetic");
  return r;
}

Integer checked_mul(Integer a, Integer b) {
  Integer r;
  if (__builtin_mul_overflow(a, b, &r))
    throw DiagramError("integer overflow in coefficient arithmetic");
  return r;
}

} // namespace detail

// ---- KnotExpr ---------------------------------------------------------------

KnotExpr KnotExpr::atom(std::string label) {
  KnotExpr k;
  k.node_ = Atom{std::move(label)};
  return k;
}

KnotExpr KnotExpr::band_sum(KnotExpr left, KnotExpr cable_of, Integer framing) {
  KnotExpr k;
  k.node_ = BandSum{std::make_shared<const KnotExpr>(std::move(left)),
                    std::make_shared<const KnotExpr>(std::move(cable_of)), framing};
  return k;
}

bool KnotExpr::is_unknot() const noexcept {
  return is_atom() && as_atom().label == "unknot";
}

bool operator==(const KnotExpr &a, const KnotExpr &b) {
  if (a.node_.index() != b.node_.index())
    return false;
  if (a.is_atom())
    return a.as_atom().label == b.as_atom().label;
  const auto &x = a.as_band_sum();
  const auto &y = b.as_band_sum();
  if (x.cable_framing != y.cable_framing)
    return false;
  return (x.left == y.left || *x.left == *y.left) &&
         (x.cable_of == y.cable_of || *x.cable_of == *y.cable_of);
}

// ---- Rational ---------------------------------------------------------------

Rational Rational::reduced(Integer p, Integer q) {
  if (q == 0) {
    if (p == 0)
      throw DiagramError("0/0 is not a slope");
    return infinity();
  }
  if (q < 0) {
    p = detail::checked_sub(0, p);
    q = detail::checked_sub(0, q);
  }
  Integer g = std::gcd(p, q);
  return {p / g, q / g};
}

bool Rational::is_canonical() const noexcept {
  if (q < 0)
    return false;
  if (q == 0)
    return p == 1;
  return std::gcd(p, q) == 1;
}

std::string to_string(const Rational &r) {
  if (r.q == 1)
    return std::to_string(r.p);
  return std::to_string(r.p) + "/" + std::to_string(r.q);
}

// ---- LinkingMatrix ----------------------------------------------------------

Integer LinkingMatrix::get(const ComponentId &a, const ComponentId &b) const {
  auto it = entries_.find({a, b});
  return it == entries_.end() ? 0 : it->second;
}

void LinkingMatrix::set(const ComponentId &a, const ComponentId &b, Integer value) {
  set_directed(a, b, value);
  set_directed(b, a, value);
}

void LinkingMatrix::set_directed(const ComponentId &a, const ComponentId &b, Integer value) {
  if (value == 0)
    entries_.erase({a, b});
  else
    entries_[{a, b}] = value;
}

void LinkingMatrix::erase(const ComponentId &c) {
  std::erase_if(entries_, [&](const auto &e) { return e.first.first == c || e.first.second == c; });
}

LinkingMatrix LinkingMatrix::restricted_to(const std::set<ComponentId> &ids) const {
  LinkingMatrix out;
  for (const auto &[key, v] : entries_)
    if (ids.contains(key.first) && ids.contains(key.second))
      out.entries_.emplace(key, v);
  return out;
}

// ---- diagrams -----------------------------------------------------------------

const FramedComponent &DehnDiagram::component(const ComponentId &id) const {
  for (const auto &c : components)
    if (c.id == id)
      return c;
  throw DiagramError("unknown component '" + id.str() + "'");
}

bool DehnDiagram::contains(const ComponentId &id) const {
  return std::any_of(components.begin(), components.end(),
                     [&](const FramedComponent &c) { return c.id == id; });
}

Integer DehnDiagram::framing_of(const ComponentId &id) const {
  auto it = framing.find(id);
  if (it == framing.end())
    throw DiagramError("component '" + id.str() + "' has no framing");
  return it->second;
}

std::vector<ComponentId> RoundDiagram::component_ids() const {
  std::vector<ComponentId> ids;
  for (const auto &p : pairs) {
    ids.push_back(p.c1.id);
    ids.push_back(p.c2.id);
  }
  for (const auto &k : loose)
    ids.push_back(k.component.id);
  return ids;
}

bool RoundDiagram::contains(const ComponentId &id) const {
  auto ids = component_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

// ---- validation -------------------------------------------------------------

namespace {

void check_linking(const LinkingMatrix &lk, const std::set<ComponentId> &known,
                   std::vector<Violation> &out) {
  for (const auto &[key, v] : lk.entries()) {
    const auto &[a, b] = key;
    if (a == b) {
      out.push_back({{a}, std::nullopt,
                     "linking matrix has a diagonal entry for '" + a.str() + "'"});
      continue;
    }
    if (!known.contains(a) || !known.contains(b)) {
      out.push_back({{a, b}, std::nullopt,
                     "linking entry lk(" + a.str() + ", " + b.str() + ") names an unknown component"});
      continue;
    }
    // report each asymmetric unordered pair once
    if (a < b && lk.get(b, a) != v)
      out.push_back({{a, b}, std::nullopt,
                     "linking numbers are not symmetric: lk(" + a.str() + ", " + b.str() +
                         ") = " + std::to_string(v) + " but lk(" + b.str() + ", " + a.str() +
                         ") = " + std::to_string(lk.get(b, a))});
    else if (b < a && !lk.entries().contains({b, a}))
      out.push_back({{b, a}, std::nullopt,
                     "linking numbers are not symmetric: lk(" + b.str() + ", " + a.str() +
                         ") = 0 but lk(" + a.str() + ", " + b.str() + ") = " + std::to_string(v)});
  }
}

void note_id(const ComponentId &id, std::set<ComponentId> &seen, std::vector<Violation> &out,
             std::optional<std::size_t> pair) {
  if (id.str().empty())
    out.push_back({{id}, pair, "component id is empty"});
  else if (!seen.insert(id).second)
    out.push_back({{id}, pair, "duplicate component id '" + id.str() + "'"});
}

} // namespace

std::vector<Violation> validate_diagram(const DehnDiagram &d) {
  std::vector<Violation> out;
  std::set<ComponentId> seen;
  for (const auto &c : d.components) {
    note_id(c.id, seen, out, std::nullopt);
    if (!d.framing.contains(c.id))
      out.push_back({{c.id}, std::nullopt, "component '" + c.id.str() + "' has no framing"});
  }
  for (const auto &[id, f] : d.framing)
    if (!seen.contains(id))
      out.push_back({{id}, std::nullopt, "framing given for unknown component '" + id.str() + "'"});
  check_linking(d.lk, seen, out);
  return out;
}

std::vector<Violation> validate_diagram(const RoundDiagram &d) {
  std::vector<Violation> out;
  std::set<ComponentId> seen;
  for (std::size_t i = 0; i < d.pairs.size(); ++i) {
    const auto &p = d.pairs[i];
    note_id(p.c1.id, seen, out, i);
    note_id(p.c2.id, seen, out, i);
    if (p.m && !p.m->is_canonical())
      out.push_back({{p.c2.id}, i,
                     "round 2-surgery coefficient " + to_string(*p.m) + " on pair " +
                         std::to_string(i) + " is not in lowest terms"});
  }
  for (const auto &k : d.loose) {
    note_id(k.component.id, seen, out, std::nullopt);
    if (!k.m.is_canonical())
      out.push_back({{k.component.id}, std::nullopt,
                     "round 2-surgery coefficient " + to_string(k.m) + " on '" +
                         k.component.id.str() + "' is not in lowest terms"});
  }
  check_linking(d.lk, seen, out);
  return out;
}

Integer linking_number(const DehnDiagram &d, const ComponentId &a, const ComponentId &b) {
  if (a == b)
    throw DiagramError("linking number of '" + a.str() + "' with itself is a framing");
  if (!d.contains(a))
    throw DiagramError("unknown component '" + a.str() + "'");
  if (!d.contains(b))
    throw DiagramError("unknown component '" + b.str() + "'");
  return d.lk.get(a, b);
}

Integer linking_number(const RoundDiagram &d, const ComponentId &a, const ComponentId &b) {
  if (a == b)
    throw DiagramError("linking number of '" + a.str() + "' with itself is undefined");
  if (!d.contains(a))
    throw DiagramError("unknown component '" + a.str() + "'");
  if (!d.contains(b))
    throw DiagramError("unknown component '" + b.str() + "'");
  return d.lk.get(a, b);
}

// ---- torus coordinates ------------------------------------------------------

Integer Matrix2::det() const {
  using namespace detail;
  return checked_sub(checked_mul(a, d), checked_mul(b, c));
}

Matrix2 operator*(const Matrix2 &x, const Matrix2 &y) {
  using namespace detail;
  return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
          checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
          checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
          checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}

TorusSlope change_coordinates(const Matrix2 &mat, const TorusSlope &s) {
  using namespace detail;
  Integer det = mat.det();
  if (det != 1 && det != -1)
    throw DiagramError("coordinate change must be unimodular (det = " + std::to_string(det) + ")");
  if (std::gcd(s.a, s.b) != 1)
    throw DiagramError("slope (" + std::to_string(s.a) + ", " + std::to_string(s.b) +
                       ") is not primitive");
  // unimodular maps preserve primitivity, so the image needs no reduction
  return {checked_add(checked_mul(mat.a, s.a), checked_mul(mat.b, s.b)),
          checked_add(checked_mul(mat.c, s.a), checked_mul(mat.d, s.b))};
}

// ---- canonical forms / helpers ----------------------------------------------

DehnDiagram canonicalize(DehnDiagram d) {
  std::sort(d.components.begin(), d.components.end(),
            [](const FramedComponent &x, const FramedComponent &y) { return x.id < y.id; });
  return d;
}

RoundDiagram canonicalize(RoundDiagram r) {
  std::sort(r.pairs.begin(), r.pairs.end(),
            [](const JointPair &x, const JointPair &y) { return x.c1.id < y.c1.id; });
  std::sort(r.loose.begin(), r.loose.end(), [](const LooseKnot &x, const LooseKnot &y) {
    return x.component.id < y.component.id;
  });
  return r;
}

ComponentId fresh_id(const std::set<std::string> &taken, const std::string &base) {
  if (!taken.contains(base))
    return ComponentId{base};
  for (std::size_t n = 1;; ++n) {
    std::string candidate = base + std::to_string(n);
    if (!taken.contains(candidate))
      return ComponentId{candidate};
  }
}

Integer integral_m(const JointPair &p, std::size_t index) {
  if (!p.m)
    throw DiagramError("pair " + std::to_string(index) + " is not a joint pair");
  if (p.m->is_infinite())
    throw DiagramError("pair " + std::to_string(index) +
                       " has round 2-surgery coefficient 1/0 (trivial pair)");
  if (!p.m->is_integer())
    throw DiagramError("pair " + std::to_string(index) + " has non-integral round 2-surgery coefficient " +
                       to_string(*p.m));
  return p.m->p;
}

} // namespace rsd
