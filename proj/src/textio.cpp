#include "rsd/textio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>

namespace rsd {

std::string to_string(const Diagnostic &d) {
  if (d.line == 0)
    return "error: " + d.message;
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": error: " + d.message;
}

// ---- printing -------------------------------------------------------------------

namespace {

void print_knot_to(std::ostream &os, const KnotExpr &k) {
  if (k.is_atom()) {
    os << k.as_atom().label;
    return;
  }
  const auto &b = k.as_band_sum();
  os << "band(";
  print_knot_to(os, *b.left);
  os << ",cable(";
  print_knot_to(os, *b.cable_of);
  os << "," << b.cable_framing << "))";
}

void print_comp(std::ostream &os, const FramedComponent &c, std::optional<Integer> framing) {
  os << "COMP " << c.id.str() << " knot=";
  print_knot_to(os, c.knot);
  if (framing)
    os << " framing=" << *framing;
  if (c.fibred)
    os << " fibred";
  os << '\n';
}

void print_lk(std::ostream &os, const LinkingMatrix &lk) {
  for (const auto &[key, v] : lk.entries())
    if (key.first < key.second)
      os << "LK " << key.first.str() << ' ' << key.second.str() << ' ' << v << '\n';
}

} // namespace

std::string print_knot(const KnotExpr &k) {
  std::ostringstream os;
  print_knot_to(os, k);
  return os.str();
}

std::string print(const RoundDiagram &r) {
  std::ostringstream os;
  os << "ROUND\n";
  std::vector<const FramedComponent *> comps;
  for (const auto &p : r.pairs) {
    comps.push_back(&p.c1);
    comps.push_back(&p.c2);
  }
  for (const auto &k : r.loose)
    comps.push_back(&k.component);
  std::sort(comps.begin(), comps.end(), [](auto *a, auto *b) { return a->id < b->id; });
  for (const auto *c : comps)
    print_comp(os, *c, std::nullopt);
  for (const auto &p : r.pairs) {
    os << "PAIR " << p.c1.id.str() << ' ' << p.c2.id.str() << " n1=" << p.n1 << " n2=" << p.n2;
    if (p.m)
      os << " m=" << to_string(*p.m);
    os << '\n';
  }
  for (const auto &k : r.loose)
    os << "LOOSE " << k.component.id.str() << " m=" << to_string(k.m) << '\n';
  print_lk(os, r.lk);
  return os.str();
}

std::string print(const DehnDiagram &d) {
  std::ostringstream os;
  os << "DEHN\n";
  for (const auto &c : d.components) {
    auto it = d.framing.find(c.id);
    print_comp(os, c, it == d.framing.end() ? Integer{0} : it->second);
  }
  print_lk(os, d.lk);
  return os.str();
}

std::string print(const KirbyDiagram &k) {
  std::ostringstream os;
  os << "KIRBY\n";
  std::vector<const FramedComponent *> comps;
  for (const auto &t : k.two_handles)
    comps.push_back(&t.attaching);
  std::sort(comps.begin(), comps.end(), [](auto *a, auto *b) { return a->id < b->id; });
  for (const auto *c : comps)
    print_comp(os, *c, std::nullopt);
  for (const auto &h : k.one_handles)
    os << "HANDLE1 " << h.str() << '\n';
  for (const auto &t : k.two_handles) {
    os << "HANDLE2 " << t.attaching.id.str() << " framing=" << t.framing;
    if (!t.runs_over.empty()) {
      os << " over=";
      for (std::size_t i = 0; i < t.runs_over.size(); ++i)
        os << (i ? "," : "") << t.runs_over[i].first.str() << ':' << t.runs_over[i].second;
    }
    os << '\n';
  }
  print_lk(os, k.lk);
  return os.str();
}

std::string print(const Document &doc) {
  return std::visit([](const auto &d) { return print(d); }, doc.diagram);
}

// ---- parsing ----------------------------------------------------------------------

namespace {

struct Token {
  std::string_view text;
  std::size_t column; // 1-based
};

struct ParseFailure {
  std::size_t column;
  std::string message;
};

bool is_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::optional<Integer> to_integer(std::string_view s) {
  if (s.empty())
    return std::nullopt;
  std::string_view digits = (s[0] == '+') ? s.substr(1) : s;
  if (digits.empty() || digits == "-")
    return std::nullopt;
  Integer v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    return std::nullopt;
  return v;
}

/// Recursive-descent parser for EXPR over one token.
class KnotParser {
public:
  KnotParser(std::string_view text, std::size_t column) : text_(text), column_(column) {}

  KnotExpr parse() {
    KnotExpr k = expr();
    if (pos_ != text_.size())
      fail("unexpected '" + std::string(text_.substr(pos_, 1)) + "' in knot expression");
    return k;
  }

private:
  [[noreturn]] void fail(std::string message) { throw ParseFailure{column_ + pos_, std::move(message)}; }

  std::string_view name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    auto n = text_.substr(start, pos_ - start);
    if (!is_name(n)) {
      pos_ = start;
      fail("expected a knot name");
    }
    return n;
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "' in knot expression");
    ++pos_;
  }

  KnotExpr expr() {
    auto n = name();
    if (n != "band" || pos_ >= text_.size() || text_[pos_] != '(')
      return KnotExpr::atom(std::string(n));
    expect('(');
    KnotExpr left = expr();
    expect(',');
    std::size_t cable_at = pos_;
    if (name() != "cable") {
      pos_ = cable_at;
      fail("second argument of band must be cable(EXPR,INT)");
    }
    expect('(');
    KnotExpr of = expr();
    expect(',');
    std::size_t int_at = pos_;
    while (pos_ < text_.size() && text_[pos_] != ')')
      ++pos_;
    auto framing = to_integer(text_.substr(int_at, pos_ - int_at));
    if (!framing) {
      pos_ = int_at;
      fail("cable framing must be an integer");
    }
    expect(')');
    expect(')');
    return KnotExpr::band_sum(std::move(left), std::move(of), *framing);
  }

  std::string_view text_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

struct CompDecl {
  FramedComponent comp;
  std::optional<Integer> framing;
  std::size_t line;
  std::size_t column;
  bool used = false;
};

class DocumentParser {
public:
  explicit DocumentParser(std::string_view text) : text_(text) {}

  ParseResult run();

private:
  void error(std::size_t line, std::size_t column, std::string message) {
    diags_.push_back({line, column, std::move(message)});
  }

  void statement(std::size_t line, const std::vector<Token> &tokens);
  void comp(std::size_t line, const std::vector<Token> &tokens);
  void pair(std::size_t line, const std::vector<Token> &tokens);
  void loose(std::size_t line, const std::vector<Token> &tokens);
  void lk(std::size_t line, const std::vector<Token> &tokens);
  void handle1(std::size_t line, const std::vector<Token> &tokens);
  void handle2(std::size_t line, const std::vector<Token> &tokens);

  std::optional<Document> assemble();
  const FramedComponent *use(std::size_t line, const Token &t);
  void map_violations(const std::vector<Violation> &violations);

  // key=value arguments after a fixed prefix of positional tokens
  std::map<std::string, Token> keyed(std::size_t line, const std::vector<Token> &tokens,
                                     std::size_t from, std::initializer_list<std::string_view> keys,
                                     std::vector<Token> *flags = nullptr);
  std::optional<Integer> integer(std::size_t line, const Token &t, std::string_view what);
  std::optional<Rational> rational(std::size_t line, const Token &t);
  bool name(std::size_t line, const Token &t, std::string_view what);

  std::string_view text_;
  std::vector<Diagnostic> diags_;
  std::optional<DocumentKind> kind_;

  std::map<ComponentId, CompDecl> comps_;
  std::vector<ComponentId> comp_order_;
  struct PairDecl {
    ComponentId a, b;
    Integer n1, n2;
    std::optional<Rational> m;
    std::size_t line;
  };
  std::vector<PairDecl> pairs_;
  struct LooseDecl {
    ComponentId a;
    Rational m;
    std::size_t line;
  };
  std::vector<LooseDecl> loose_;
  struct Handle2Decl {
    ComponentId a;
    Integer framing;
    std::vector<std::pair<HandleId, Integer>> over;
    std::vector<std::size_t> over_columns;
    std::size_t line;
  };
  std::vector<Handle2Decl> handle2_;
  std::vector<std::pair<HandleId, std::size_t>> handle1_;
  struct LkDecl {
    ComponentId a, b;
    Integer value;
    std::size_t line, column;
  };
  std::vector<LkDecl> lks_;
};

ParseResult DocumentParser::run() {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text_.size()) {
    std::size_t end = text_.find('\n', start);
    if (end == std::string_view::npos)
      end = text_.size();
    ++line_no;
    std::string_view line = text_.substr(start, end - start);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::vector<Token> tokens;
    for (std::size_t i = 0; i < line.size();) {
      if (line[i] == ' ' || line[i] == '\t') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t')
        ++j;
      tokens.push_back({line.substr(i, j - i), i + 1});
      i = j;
    }
    if (!tokens.empty())
      statement(line_no, tokens);
    if (end == text_.size())
      break;
    start = end + 1;
  }
  if (!kind_ && diags_.empty())
    error(0, 0, "empty document: expected a ROUND, DEHN or KIRBY header");

  ParseResult result;
  if (diags_.empty()) {
    auto doc = assemble();
    if (diags_.empty())
      result.document = std::move(doc);
  }
  std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic &a, const Diagnostic &b) {
    return std::tie(a.line, a.column) < std::tie(b.line, b.column);
  });
  result.diagnostics = std::move(diags_);
  return result;
}

void DocumentParser::statement(std::size_t line, const std::vector<Token> &tokens) {
  std::string_view head = tokens[0].text;
  if (!kind_) {
    if (head == "ROUND")
      kind_ = DocumentKind::Round;
    else if (head == "DEHN")
      kind_ = DocumentKind::Dehn;
    else if (head == "KIRBY")
      kind_ = DocumentKind::Kirby;
    else {
      error(line, tokens[0].column, "expected a ROUND, DEHN or KIRBY header, found '" +
                                        std::string(head) + "'");
      kind_ = DocumentKind::Round; // keep going to report more
      return;
    }
    if (tokens.size() > 1)
      error(line, tokens[1].column, "unexpected text after header");
    return;
  }

  auto allowed = [&](std::initializer_list<DocumentKind> kinds) {
    if (std::find(kinds.begin(), kinds.end(), *kind_) != kinds.end())
      return true;
    error(line, tokens[0].column, "'" + std::string(head) + "' is not allowed in this document");
    return false;
  };

  if (head == "COMP")
    comp(line, tokens);
  else if (head == "PAIR") {
    if (allowed({DocumentKind::Round}))
      pair(line, tokens);
  } else if (head == "LOOSE") {
    if (allowed({DocumentKind::Round}))
      loose(line, tokens);
  } else if (head == "LK")
    lk(line, tokens);
  else if (head == "HANDLE1") {
    if (allowed({DocumentKind::Kirby}))
      handle1(line, tokens);
  } else if (head == "HANDLE2") {
    if (allowed({DocumentKind::Kirby}))
      handle2(line, tokens);
  } else if (head == "ROUND" || head == "DEHN" || head == "KIRBY")
    error(line, tokens[0].column, "duplicate header");
  else
    error(line, tokens[0].column, "unknown statement '" + std::string(head) + "'");
}

bool DocumentParser::name(std::size_t line, const Token &t, std::string_view what) {
  if (is_name(t.text))
    return true;
  error(line, t.column, "invalid " + std::string(what) + " '" + std::string(t.text) + "'");
  return false;
}

std::optional<Integer> DocumentParser::integer(std::size_t line, const Token &t,
                                               std::string_view what) {
  auto v = to_integer(t.text);
  if (!v)
    error(line, t.column, std::string(what) + " must be an integer, found '" + std::string(t.text) + "'");
  return v;
}

std::optional<Rational> DocumentParser::rational(std::size_t line, const Token &t) {
  auto slash = t.text.find('/');
  if (slash == std::string_view::npos) {
    if (auto p = to_integer(t.text))
      return Rational::integer(*p);
  } else {
    auto p = to_integer(t.text.substr(0, slash));
    auto den = t.text.substr(slash + 1);
    auto q = to_integer(den);
    if (p && q && !den.empty() && std::isdigit(static_cast<unsigned char>(den[0])))
      return Rational{*p, *q};
  }
  error(line, t.column, "expected a rational coefficient INT or INT/NAT, found '" +
                            std::string(t.text) + "'");
  return std::nullopt;
}

std::map<std::string, Token>
DocumentParser::keyed(std::size_t line, const std::vector<Token> &tokens, std::size_t from,
                      std::initializer_list<std::string_view> keys, std::vector<Token> *flags) {
  std::map<std::string, Token> out;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    const auto &t = tokens[i];
    auto eq = t.text.find('=');
    if (eq == std::string_view::npos) {
      if (flags && t.text == "fibred") {
        flags->push_back(t);
        continue;
      }
      error(line, t.column, "unexpected '" + std::string(t.text) + "'");
      continue;
    }
    std::string key(t.text.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      error(line, t.column, "unknown argument '" + key + "'");
      continue;
    }
    Token value{t.text.substr(eq + 1), t.column + eq + 1};
    if (!out.emplace(key, value).second)
      error(line, t.column, "argument '" + key + "' given twice");
  }
  return out;
}

void DocumentParser::comp(std::size_t line, const std::vector<Token> &tokens) {
  if (tokens.size() < 2) {
    error(line, tokens[0].column + 4, "COMP needs an id");
    return;
  }
  if (!name(line, tokens[1], "component id"))
    return;
  std::vector<Token> flags;
  auto args = keyed(line, tokens, 2, {"knot", "framing"}, &flags);
  if (flags.size() > 1)
    error(line, flags[1].column, "'fibred' given twice");

  auto knot_arg = args.find("knot");
  if (knot_arg == args.end()) {
    error(line, tokens[1].column, "COMP '" + std::string(tokens[1].text) + "' needs knot=EXPR");
    return;
  }
  CompDecl decl;
  decl.line = line;
  decl.column = tokens[1].column;
  decl.comp.id = ComponentId{std::string(tokens[1].text)};
  decl.comp.fibred = !flags.empty();
  try {
    decl.comp.knot = KnotParser(knot_arg->second.text, knot_arg->second.column).parse();
  } catch (const ParseFailure &f) {
    error(line, f.column, f.message);
    return;
  }
  auto framing_arg = args.find("framing");
  if (*kind_ == DocumentKind::Dehn) {
    if (framing_arg == args.end()) {
      error(line, tokens[1].column, "DEHN component '" + decl.comp.id.str() + "' needs framing=INT");
      return;
    }
    decl.framing = integer(line, framing_arg->second, "framing");
    if (!decl.framing)
      return;
  } else if (framing_arg != args.end()) {
    error(line, framing_arg->second.column - 8,
          "framing belongs on " +
              std::string(*kind_ == DocumentKind::Round ? "PAIR" : "HANDLE2") + " lines here");
    return;
  }
  if (comps_.contains(decl.comp.id)) {
    error(line, tokens[1].column, "component '" + decl.comp.id.str() + "' declared twice (first on line " +
                                      std::to_string(comps_.at(decl.comp.id).line) + ")");
    return;
  }
  comp_order_.push_back(decl.comp.id);
  comps_.emplace(decl.comp.id, std::move(decl));
}

void DocumentParser::pair(std::size_t line, const std::vector<Token> &tokens) {
  if (tokens.size() < 3) {
    error(line, tokens.back().column, "PAIR needs two component ids");
    return;
  }
  bool ok = name(line, tokens[1], "component id") & name(line, tokens[2], "component id");
  auto args = keyed(line, tokens, 3, {"n1", "n2", "m"});
  auto n1 = args.find("n1"), n2 = args.find("n2"), m = args.find("m");
  if (n1 == args.end() || n2 == args.end()) {
    error(line, tokens[0].column, "PAIR needs n1=INT and n2=INT");
    return;
  }
  auto v1 = integer(line, n1->second, "n1");
  auto v2 = integer(line, n2->second, "n2");
  std::optional<Rational> mv;
  if (m != args.end()) {
    mv = rational(line, m->second);
    if (!mv)
      ok = false;
  }
  if (!ok || !v1 || !v2)
    return;
  ComponentId a{std::string(tokens[1].text)}, b{std::string(tokens[2].text)};
  if (a == b) {
    error(line, tokens[2].column, "a pair needs two distinct components");
    return;
  }
  pairs_.push_back({a, b, *v1, *v2, mv, line});
}

void DocumentParser::loose(std::size_t line, const std::vector<Token> &tokens) {
  if (tokens.size() < 2 || !name(line, tokens[1], "component id"))
    return;
  auto args = keyed(line, tokens, 2, {"m"});
  auto m = args.find("m");
  if (m == args.end()) {
    error(line, tokens[0].column, "LOOSE needs m=RAT");
    return;
  }
  auto mv = rational(line, m->second);
  if (mv)
    loose_.push_back({ComponentId{std::string(tokens[1].text)}, *mv, line});
}

void DocumentParser::lk(std::size_t line, const std::vector<Token> &tokens) {
  if (tokens.size() != 4) {
    error(line, tokens[0].column, "LK needs two component ids and an integer");
    return;
  }
  bool ok = name(line, tokens[1], "component id") & name(line, tokens[2], "component id");
  auto v = integer(line, tokens[3], "linking number");
  if (!ok || !v)
    return;
  ComponentId a{std::string(tokens[1].text)}, b{std::string(tokens[2].text)};
  if (a == b) {
    error(line, tokens[2].column, "LK of '" + a.str() + "' with itself; framings are not linking numbers");
    return;
  }
  lks_.push_back({a, b, *v, line, tokens[1].column});
}

void DocumentParser::handle1(std::size_t line, const std::vector<Token> &tokens) {
  if (tokens.size() != 2) {
    error(line, tokens[0].column, "HANDLE1 takes exactly one id");
    return;
  }
  if (name(line, tokens[1], "handle id"))
    handle1_.emplace_back(HandleId{std::string(tokens[1].text)}, line);
}

void DocumentParser::handle2(std::size_t line, const std::vector<Token> &tokens) {
  if (tokens.size() < 2 || !name(line, tokens[1], "component id"))
    return;
  auto args = keyed(line, tokens, 2, {"framing", "over"});
  auto fr = args.find("framing");
  if (fr == args.end()) {
    error(line, tokens[0].column, "HANDLE2 needs framing=INT");
    return;
  }
  auto f = integer(line, fr->second, "framing");
  if (!f)
    return;
  Handle2Decl decl{ComponentId{std::string(tokens[1].text)}, *f, {}, {}, line};
  if (auto ov = args.find("over"); ov != args.end()) {
    std::string_view list = ov->second.text;
    std::size_t col = ov->second.column;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = list.find(',', pos);
      std::string_view item = list.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
      auto colon = item.find(':');
      std::optional<Integer> count;
      if (colon != std::string_view::npos)
        count = to_integer(item.substr(colon + 1));
      if (colon == std::string_view::npos || !is_name(item.substr(0, colon)) || !count) {
        error(line, col + pos, "expected HANDLE:INT in over= list, found '" + std::string(item) + "'");
        return;
      }
      decl.over.emplace_back(HandleId{std::string(item.substr(0, colon))}, *count);
      decl.over_columns.push_back(col + pos);
      if (comma == std::string_view::npos)
        break;
      pos = comma + 1;
    }
  }
  handle2_.push_back(std::move(decl));
}

const FramedComponent *DocumentParser::use(std::size_t line, const Token &t) {
  ComponentId id{std::string(t.text)};
  auto it = comps_.find(id);
  if (it == comps_.end()) {
    error(line, t.column, "undeclared component '" + id.str() + "'");
    return nullptr;
  }
  if (it->second.used) {
    error(line, t.column, "component '" + id.str() + "' is used more than once");
    return nullptr;
  }
  it->second.used = true;
  return &it->second.comp;
}

std::optional<Document> DocumentParser::assemble() {
  auto column_of = [&](std::size_t line, const ComponentId &id, std::size_t nth) -> std::size_t {
    // locate the nth occurrence of id on the line for diagnostics
    std::size_t start = 0;
    for (std::size_t l = 1; l < line; ++l)
      start = text_.find('\n', start) + 1;
    std::string_view body = text_.substr(start, text_.find('\n', start) - start);
    std::size_t pos = 0, seen = 0;
    while ((pos = body.find(id.str(), pos)) != std::string_view::npos) {
      bool left_ok = pos == 0 || body[pos - 1] == ' ' || body[pos - 1] == '\t';
      std::size_t end = pos + id.str().size();
      bool right_ok = end == body.size() || body[end] == ' ' || body[end] == '\t';
      if (left_ok && right_ok && seen++ == nth)
        return pos + 1;
      pos = end;
    }
    return 1;
  };
  auto use_id = [&](std::size_t line, const ComponentId &id, std::size_t nth) {
    return use(line, Token{id.str(), column_of(line, id, nth)});
  };

  Document doc;
  doc.kind = *kind_;
  switch (*kind_) {
  case DocumentKind::Round: {
    RoundDiagram r;
    for (const auto &p : pairs_) {
      const auto *a = use_id(p.line, p.a, 0);
      const auto *b = use_id(p.line, p.b, p.a == p.b ? 1 : 0);
      if (a && b)
        r.pairs.push_back({*a, p.n1, *b, p.n2, p.m});
    }
    for (const auto &k : loose_)
      if (const auto *a = use_id(k.line, k.a, 0))
        r.loose.push_back({*a, k.m});
    doc.diagram = std::move(r);
    break;
  }
  case DocumentKind::Dehn: {
    DehnDiagram d;
    for (const auto &id : comp_order_) {
      auto &decl = comps_.at(id);
      decl.used = true;
      d.components.push_back(decl.comp);
      d.framing[id] = *decl.framing;
    }
    doc.diagram = std::move(d);
    break;
  }
  case DocumentKind::Kirby: {
    KirbyDiagram k;
    std::set<HandleId> handles;
    for (const auto &[h, line] : handle1_) {
      if (comps_.contains(ComponentId{h.str()}) || !handles.insert(h).second) {
        error(line, 9, "id '" + h.str() + "' is already in use");
        continue;
      }
      k.one_handles.push_back(h);
    }
    for (const auto &t : handle2_) {
      const auto *a = use_id(t.line, t.a, 0);
      for (std::size_t i = 0; i < t.over.size(); ++i)
        if (!handles.contains(t.over[i].first))
          error(t.line, t.over_columns[i], "unknown 1-handle '" + t.over[i].first.str() + "'");
      if (a)
        k.two_handles.push_back({*a, t.framing, t.over});
    }
    doc.diagram = std::move(k);
    break;
  }
  }

  for (const auto &id : comp_order_) {
    const auto &decl = comps_.at(id);
    if (!decl.used)
      error(decl.line, decl.column,
            "component '" + id.str() + "' is declared but not used by any " +
                (*kind_ == DocumentKind::Round ? "PAIR or LOOSE" : "HANDLE2") + " statement");
  }

  LinkingMatrix lk;
  std::map<std::pair<ComponentId, ComponentId>, const LkDecl *> first_seen;
  for (const auto &e : lks_) {
    bool known = true;
    for (const auto &id : {e.a, e.b})
      if (!comps_.contains(id)) {
        error(e.line, column_of(e.line, id, 0), "undeclared component '" + id.str() + "'");
        known = false;
      }
    if (!known)
      continue;
    auto key = std::minmax(e.a, e.b);
    auto [it, inserted] = first_seen.emplace(key, &e);
    if (!inserted) {
      if (it->second->value != e.value)
        error(e.line, e.column,
              "linking number conflict: lk(" + e.a.str() + ", " + e.b.str() + ") = " +
                  std::to_string(e.value) + " but line " + std::to_string(it->second->line) +
                  " gives " + std::to_string(it->second->value) + " (linking numbers are symmetric)");
      continue;
    }
    lk.set(e.a, e.b, e.value);
  }
  std::visit([&](auto &d) { d.lk = lk; }, doc.diagram);
  if (!diags_.empty())
    return std::nullopt;

  std::visit([&](const auto &d) { map_violations(validate_diagram(d)); }, doc.diagram);
  return doc;
}

void DocumentParser::map_violations(const std::vector<Violation> &violations) {
  for (const auto &v : violations) {
    std::size_t line = 0, column = 0;
    if (v.pair && *v.pair < pairs_.size()) {
      line = pairs_[*v.pair].line;
      column = 1;
    } else if (!v.components.empty()) {
      if (auto it = comps_.find(v.components.front()); it != comps_.end()) {
        line = it->second.line;
        column = it->second.column;
      }
    }
    for (const auto &l : loose_)
      if (!v.pair && !v.components.empty() && l.a == v.components.front())
        line = l.line, column = 1;
    error(line, column, v.message);
  }
}

} // namespace

ParseResult parse(std::string_view text) { return DocumentParser(text).run(); }

} // namespace rsd
