#include "rsd/bridge.hpp"

namespace rsd {

using detail::checked_add;
using detail::checked_mul;
using detail::checked_sub;

std::vector<Violation> validate_diagram(const KirbyDiagram &k) {
  std::vector<Violation> out;
  std::set<std::string> names;
  std::set<HandleId> handles;
  for (const auto &h : k.one_handles) {
    if (!names.insert(h.str()).second)
      out.push_back({{ComponentId{h.str()}}, std::nullopt, "duplicate id '" + h.str() + "'"});
    handles.insert(h);
  }
  std::set<ComponentId> circles;
  for (const auto &t : k.two_handles) {
    if (!names.insert(t.attaching.id.str()).second)
      out.push_back({{t.attaching.id}, std::nullopt, "duplicate id '" + t.attaching.id.str() + "'"});
    circles.insert(t.attaching.id);
    for (const auto &[h, count] : t.runs_over)
      if (!handles.contains(h))
        out.push_back({{t.attaching.id}, std::nullopt,
                       "2-handle '" + t.attaching.id.str() + "' runs over unknown 1-handle '" +
                           h.str() + "'"});
  }
  for (const auto &[key, v] : k.lk.entries()) {
    const auto &[a, b] = key;
    if (a == b)
      out.push_back({{a}, std::nullopt, "linking matrix has a diagonal entry for '" + a.str() + "'"});
    else if (!circles.contains(a) || !circles.contains(b))
      out.push_back({{a, b}, std::nullopt,
                     "linking entry lk(" + a.str() + ", " + b.str() + ") names an unknown 2-handle"});
    else if (k.lk.get(b, a) != v && a < b)
      out.push_back({{a, b}, std::nullopt,
                     "linking numbers are not symmetric for (" + a.str() + ", " + b.str() + ")"});
    else if (b < a && !k.lk.entries().contains({b, a}))
      out.push_back({{b, a}, std::nullopt,
                     "linking numbers are not symmetric for (" + b.str() + ", " + a.str() + ")"});
  }
  return out;
}

DehnDiagram joint_pair_to_dehn(const RoundDiagram &r) {
  if (!r.loose.empty())
    throw DiagramError("round diagram has standalone round 2-surgery knot '" +
                       r.loose.front().component.id.str() +
                       "'; surgery on it disconnects the manifold");
  DehnDiagram d;
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    const auto &p = r.pairs[i];
    Integer m = integral_m(p, i);
    d.components.push_back(p.c1);
    d.components.push_back(p.c2);
    d.framing[p.c1.id] = checked_add(checked_sub(p.n1, p.n2), m);
    d.framing[p.c2.id] = m;
  }
  d.lk = r.lk;
  return d;
}

std::size_t joint_pair_count(const DehnDiagram &d) { return (d.components.size() + 1) / 2; }

RoundDiagram dehn_to_joint_pairs(const DehnDiagram &d, std::span<const Integer> k_choices,
                                 int pad_sign) {
  if (pad_sign != 1 && pad_sign != -1)
    throw DiagramError("padding sign must be +1 or -1");
  if (k_choices.size() != joint_pair_count(d))
    throw DiagramError("expected " + std::to_string(joint_pair_count(d)) + " k choices, got " +
                       std::to_string(k_choices.size()));

  std::vector<FramedComponent> comps = d.components;
  std::map<ComponentId, Integer> framing;
  for (const auto &c : comps)
    framing[c.id] = d.framing_of(c.id);
  if (comps.size() % 2 == 1) {
    std::set<std::string> taken;
    for (const auto &c : comps)
      taken.insert(c.id.str());
    FramedComponent pad{fresh_id(taken, "pad"), KnotExpr::unknot(), false};
    framing[pad.id] = pad_sign;
    comps.push_back(pad);
  }

  RoundDiagram r;
  for (std::size_t i = 0; i + 1 < comps.size(); i += 2) {
    Integer k = k_choices[i / 2];
    Integer first = framing[comps[i].id];
    Integer second = framing[comps[i + 1].id];
    r.pairs.push_back({comps[i], checked_add(checked_sub(first, second), k), comps[i + 1], k,
                       Rational::integer(second)});
  }
  r.lk = d.lk;
  return r;
}

KirbyDiagram round1_to_kirby(const RoundDiagram &r) {
  if (r.pairs.size() != 1 || !r.loose.empty())
    throw DiagramError("Kirby export needs exactly one round 1-surgery pair and nothing else");
  const auto &p = r.pairs.front();
  if (p.m)
    throw DiagramError("pair carries a round 2-surgery coefficient; use to-dehn for joint pairs");

  Integer lk = r.lk.get(p.c1.id, p.c2.id);
  std::set<std::string> taken{p.c1.id.str(), p.c2.id.str()};
  HandleId handle{fresh_id(taken, "h").str()};

  KirbyDiagram k;
  k.one_handles.push_back(handle);
  TwoHandle t;
  t.attaching = {p.c1.id, KnotExpr::band_sum(p.c1.knot, p.c2.knot, p.n2), false};
  t.framing = checked_add(checked_add(p.n1, p.n2), checked_mul(2, lk));
  // one strand through each ball of the 1-handle, both following the
  // orientations of c1 and c2
  t.runs_over.emplace_back(handle, 2);
  k.two_handles.push_back(std::move(t));
  return k;
}

RoundDiagram kirby_to_round1(const KirbyDiagram &k) {
  if (k.one_handles.size() != 1 || k.two_handles.size() != 1)
    throw DiagramError("Kirby import needs exactly one 1-handle and one 2-handle");
  const auto &t = k.two_handles.front();
  for (const auto &[h, count] : t.runs_over)
    if (count != 0)
      throw DiagramError("2-handle '" + t.attaching.id.str() +
                         "' runs over the 1-handle; it must be attached independently");

  std::set<std::string> taken{t.attaching.id.str()};
  FramedComponent unknot{fresh_id(taken, k.one_handles.front().str()), KnotExpr::unknot(), false};
  RoundDiagram r;
  r.pairs.push_back({unknot, 0, t.attaching, t.framing, std::nullopt});
  return r;
}

} // namespace rsd
