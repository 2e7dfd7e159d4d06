// Line-oriented diagram format.
//
//   ROUND | DEHN | KIRBY                      header, first statement
//   COMP id knot=EXPR [framing=INT] [fibred]  framing only (and always) in DEHN
//   PAIR id id n1=INT n2=INT [m=RAT]          ROUND
//   LOOSE id m=RAT                            ROUND
//   HANDLE1 id                                KIRBY
//   HANDLE2 id framing=INT [over=id:INT,...]  KIRBY, id names a COMP
//   LK id id INT
//
//   EXPR := NAME | band(EXPR,cable(EXPR,INT))
//   RAT  := INT | INT/NAT
//
// `#` starts a comment. Canonical output lists COMP lines sorted by id
// (DEHN keeps list order, which determines pairing), then PAIR/LOOSE or
// HANDLE lines in diagram order, then one LK line per nonzero unordered
// pair sorted by id.

#pragma once

#include "rsd/bridge.hpp"
#include "rsd/core.hpp"

#include <string_view>

namespace rsd {

enum class DocumentKind { Round, Dehn, Kirby };

struct Document {
  DocumentKind kind = DocumentKind::Round;
  std::variant<RoundDiagram, DehnDiagram, KirbyDiagram> diagram;

  friend bool operator==(const Document &, const Document &) = default;
};

struct Diagnostic {
  std::size_t line = 0; // 1-based; 0 when no position applies
  std::size_t column = 0;
  std::string message;
};

std::string to_string(const Diagnostic &d);

struct ParseResult {
  std::optional<Document> document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return document.has_value(); }
};

ParseResult parse(std::string_view text);

std::string print(const RoundDiagram &r);
std::string print(const DehnDiagram &d);
std::string print(const KirbyDiagram &k);
std::string print(const Document &doc);

std::string print_knot(const KnotExpr &k);

} // namespace rsd
