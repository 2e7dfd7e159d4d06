// Diagram data model: framed components, linking data, Dehn and round
// surgery diagrams.

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace rsd {

using Integer = std::int64_t;

/// Raised when an operation's precondition does not hold for its input.
class DiagramError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {
Integer checked_add(Integer a, Integer b);
Integer checked_sub(Integer a, Integer b);
Integer checked_mul(Integer a, Integer b);
} // namespace detail

template <class Tag> class StrongId {
public:
  StrongId() = default;
  explicit StrongId(std::string name) : name_(std::move(name)) {}

  const std::string &str() const noexcept { return name_; }

  friend auto operator<=>(const StrongId &, const StrongId &) = default;
  friend bool operator==(const StrongId &, const StrongId &) = default;

private:
  std::string name_;
};

struct ComponentTag {};
struct HandleTag {};
using ComponentId = StrongId<ComponentTag>;
using HandleId = StrongId<HandleTag>;

/// Opaque knot expression. Either an atom naming a knot type, or the band
/// connected sum of a knot with a framing curve (cable) of another knot.
/// Nodes are immutable and shared; equality is structural.
class KnotExpr {
public:
  struct Atom {
    std::string label;
  };
  struct BandSum {
    std::shared_ptr<const KnotExpr> left;
    std::shared_ptr<const KnotExpr> cable_of;
    Integer cable_framing;
  };

  KnotExpr() : node_(Atom{"unknot"}) {}
  static KnotExpr atom(std::string label);
  static KnotExpr unknot() { return atom("unknot"); }
  /// left #_b cable_of(framing)
  static KnotExpr band_sum(KnotExpr left, KnotExpr cable_of, Integer framing);

  bool is_atom() const noexcept { return std::holds_alternative<Atom>(node_); }
  bool is_unknot() const noexcept;
  const Atom &as_atom() const { return std::get<Atom>(node_); }
  const BandSum &as_band_sum() const { return std::get<BandSum>(node_); }

  friend bool operator==(const KnotExpr &a, const KnotExpr &b);

private:
  std::variant<Atom, BandSum> node_;
};

/// p/q with q >= 0. Values are not normalized on construction so that
/// malformed input can be reported by validation; use reduced() to build
/// canonical values.
struct Rational {
  Integer p = 0;
  Integer q = 1;

  static Rational integer(Integer n) { return {n, 1}; }
  static Rational infinity() { return {1, 0}; }
  /// Canonical p/q; throws DiagramError when q == 0 and p == 0.
  static Rational reduced(Integer p, Integer q);

  bool is_infinite() const noexcept { return q == 0; }
  bool is_integer() const noexcept { return q == 1; }
  bool is_canonical() const noexcept;

  friend bool operator==(const Rational &, const Rational &) = default;
};

std::string to_string(const Rational &r);

struct FramedComponent {
  ComponentId id;
  KnotExpr knot;
  bool fibred = false;

  friend bool operator==(const FramedComponent &, const FramedComponent &) = default;
};

/// Pairwise linking numbers. Entries are stored per ordered pair so that
/// asymmetric input can be represented and rejected by validation; set()
/// always writes both orders. Absent entries read as zero.
class LinkingMatrix {
public:
  Integer get(const ComponentId &a, const ComponentId &b) const;
  void set(const ComponentId &a, const ComponentId &b, Integer value);
  void set_directed(const ComponentId &a, const ComponentId &b, Integer value);
  /// Removes every entry touching c.
  void erase(const ComponentId &c);
  LinkingMatrix restricted_to(const std::set<ComponentId> &ids) const;

  using Entries = std::map<std::pair<ComponentId, ComponentId>, Integer>;
  const Entries &entries() const noexcept { return entries_; }

  friend bool operator==(const LinkingMatrix &, const LinkingMatrix &) = default;

private:
  Entries entries_;
};

struct DehnDiagram {
  std::vector<FramedComponent> components;
  std::map<ComponentId, Integer> framing;
  LinkingMatrix lk;

  const FramedComponent &component(const ComponentId &id) const;
  bool contains(const ComponentId &id) const;
  Integer framing_of(const ComponentId &id) const;

  friend bool operator==(const DehnDiagram &, const DehnDiagram &) = default;
};

/// Two components joined by a round 1-surgery. When m is present the pair is
/// a joint pair and m is the round 2-surgery coefficient carried by c2.
struct JointPair {
  FramedComponent c1;
  Integer n1 = 0;
  FramedComponent c2;
  Integer n2 = 0;
  std::optional<Rational> m;

  bool is_joint() const noexcept { return m.has_value(); }

  friend bool operator==(const JointPair &, const JointPair &) = default;
};

struct LooseKnot {
  FramedComponent component;
  Rational m;

  friend bool operator==(const LooseKnot &, const LooseKnot &) = default;
};

struct RoundDiagram {
  std::vector<JointPair> pairs;
  std::vector<LooseKnot> loose;
  LinkingMatrix lk;

  std::vector<ComponentId> component_ids() const;
  bool contains(const ComponentId &id) const;

  friend bool operator==(const RoundDiagram &, const RoundDiagram &) = default;
};

/// Primitive curve class a*(1,0) + b*(0,1) on a torus.
struct TorusSlope {
  Integer a = 1;
  Integer b = 0;

  friend bool operator==(const TorusSlope &, const TorusSlope &) = default;
};

/// Row-major [[a, b], [c, d]].
struct Matrix2 {
  Integer a = 1, b = 0, c = 0, d = 1;

  Integer det() const;
  friend Matrix2 operator*(const Matrix2 &x, const Matrix2 &y);
  friend bool operator==(const Matrix2 &, const Matrix2 &) = default;
};

struct Violation {
  std::vector<ComponentId> components;
  std::optional<std::size_t> pair;
  std::string message;
};

std::vector<Violation> validate_diagram(const DehnDiagram &d);
std::vector<Violation> validate_diagram(const RoundDiagram &d);

Integer linking_number(const DehnDiagram &d, const ComponentId &a, const ComponentId &b);
Integer linking_number(const RoundDiagram &d, const ComponentId &a, const ComponentId &b);

TorusSlope change_coordinates(const Matrix2 &mat, const TorusSlope &s);

/// Equal-as-sets normal forms: components (Dehn) or pairs and loose knots
/// (round) sorted by id. Two diagrams present the same data iff their
/// canonical forms compare equal.
DehnDiagram canonicalize(DehnDiagram d);
RoundDiagram canonicalize(RoundDiagram r);

/// First of `base`, `base1`, `base2`, ... not contained in `taken`.
ComponentId fresh_id(const std::set<std::string> &taken, const std::string &base);

/// The integer round 2-surgery coefficient of a joint pair; throws when the
/// pair has none or it is not integral.
Integer integral_m(const JointPair &p, std::size_t index);

} // namespace rsd
