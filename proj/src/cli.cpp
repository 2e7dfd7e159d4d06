#include "rsd/cli.hpp"

#include "rsd/analysis.hpp"
#include "rsd/bridge.hpp"
#include "rsd/homology.hpp"
#include "rsd/moves.hpp"
#include "rsd/textio.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rsd {

namespace {

/// Diagnostics already reported; carries the exit code.
struct Reported {
  int code;
};

std::string read_input(const std::string &path, std::istream &in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file)
    throw DiagramError("cannot open '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

class Session {
public:
  Session(std::istream &in, std::ostream &out, std::ostream &err) : in_(in), out_(out), err_(err) {}

  Document load(const std::string &path) {
    auto result = parse(read_input(path, in_));
    if (!result.ok()) {
      for (const auto &d : result.diagnostics)
        err_ << (path == "-" ? "<stdin>" : path) << ':' << to_string(d) << '\n';
      throw Reported{kExitDiagnostics};
    }
    return std::move(*result.document);
  }

  template <class T> T load_as(const std::string &path, DocumentKind kind, const char *name) {
    Document doc = load(path);
    if (doc.kind != kind)
      throw DiagramError(path + ": expected a " + name + " document");
    return std::get<T>(std::move(doc.diagram));
  }

  RoundDiagram round(const std::string &path) {
    return load_as<RoundDiagram>(path, DocumentKind::Round, "ROUND");
  }

  std::ostream &out() { return out_; }
  std::ostream &err() { return err_; }

private:
  std::istream &in_;
  std::ostream &out_;
  std::ostream &err_;
};

Integer parse_integer(const std::string &s, const std::string &what) {
  Integer v = 0;
  const char *first = s.data() + (!s.empty() && s[0] == '+');
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw DiagramError(what + " '" + s + "' is not an integer");
  return v;
}

IntRange parse_range(const std::string &s, const std::string &what) {
  auto dots = s.find("..");
  if (dots == std::string::npos)
    throw DiagramError(what + " must look like A..B, got '" + s + "'");
  IntRange r{parse_integer(s.substr(0, dots), what), parse_integer(s.substr(dots + 2), what)};
  if (r.lo > r.hi)
    throw DiagramError(what + " " + s + " is empty");
  return r;
}

std::vector<Integer> parse_list(const std::string &s, const std::string &what) {
  std::vector<Integer> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = s.find(',', pos);
    out.push_back(parse_integer(s.substr(pos, comma == std::string::npos ? comma : comma - pos), what));
    if (comma == std::string::npos)
      return out;
    pos = comma + 1;
  }
}

void print_group(std::ostream &os, const AbelianGroup &g) {
  os << "h1: " << to_string(g) << '\n';
  os << "free_rank: " << g.free_rank << '\n';
  os << "torsion: [";
  for (std::size_t i = 0; i < g.torsion.size(); ++i)
    os << (i ? ", " : "") << g.torsion[i].get_str();
  os << "]\n";
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Round and Dehn surgery diagram calculus", "rsd"};
  app.require_subcommand(1);
  Session session(in, out, err);
  std::function<void()> action;

  std::string file, file2;
  auto add_file = [&](CLI::App *cmd) {
    cmd->add_option("FILE", file, "diagram file, - for standard input")->required();
  };

  auto *validate = app.add_subcommand("validate", "check a diagram file");
  add_file(validate);
  validate->callback([&] {
    action = [&] {
      session.load(file);
      session.out() << "valid: true\n";
    };
  });

  auto *to_dehn = app.add_subcommand("to-dehn", "joint-pair round diagram to integral Dehn diagram");
  add_file(to_dehn);
  to_dehn->callback([&] {
    action = [&] { session.out() << print(joint_pair_to_dehn(session.round(file))); };
  });

  std::string ks;
  int pad_sign = 1;
  auto *to_round = app.add_subcommand("to-round", "integral Dehn diagram to joint pairs");
  add_file(to_round);
  to_round->add_option("--k", ks, "k choices, one per resulting pair (comma separated)")->required();
  to_round->add_option("--pad-sign", pad_sign, "framing of the padding unknot for odd counts")
      ->check(CLI::IsMember({-1, 1}));
  to_round->callback([&] {
    action = [&] {
      auto d = session.load_as<DehnDiagram>(file, DocumentKind::Dehn, "DEHN");
      auto k = parse_list(ks, "k choice");
      session.out() << print(dehn_to_joint_pairs(d, k, pad_sign));
    };
  });

  auto *kexport = app.add_subcommand("kirby-export", "round 1-surgery pair to a Kirby diagram");
  add_file(kexport);
  kexport->callback([&] {
    action = [&] { session.out() << print(round1_to_kirby(session.round(file))); };
  });

  auto *kimport = app.add_subcommand("kirby-import", "Kirby diagram to a round 1-surgery pair");
  add_file(kimport);
  kimport->callback([&] {
    action = [&] {
      session.out() << print(kirby_to_round1(
          session.load_as<KirbyDiagram>(file, DocumentKind::Kirby, "KIRBY")));
    };
  });

  std::string kind;
  std::vector<std::string> move_args;
  auto *move = app.add_subcommand("move", "apply one move");
  add_file(move);
  move->add_option("--kind", kind, "move name, e.g. eq1, shuffle-b, eq4, kirby2-slide")->required();
  move->add_option("--args", move_args, "key=value arguments, e.g. pair=0 k=5")->expected(0, -1);
  move->callback([&] {
    action = [&] {
      std::string line = kind;
      for (const auto &a : move_args)
        line += " " + a;
      MoveDescriptor m = parse_move(line);
      Document doc = session.load(file);
      if (doc.kind == DocumentKind::Round)
        session.out() << print(apply_move(std::get<RoundDiagram>(doc.diagram), m));
      else if (doc.kind == DocumentKind::Dehn)
        session.out() << print(apply_move(std::get<DehnDiagram>(doc.diagram), m));
      else
        throw DiagramError("moves do not apply to KIRBY documents");
    };
  });

  auto *homology = app.add_subcommand("homology", "first homology group");
  add_file(homology);
  homology->callback([&] {
    action = [&] {
      Document doc = session.load(file);
      if (doc.kind == DocumentKind::Dehn)
        print_group(session.out(), first_homology(std::get<DehnDiagram>(doc.diagram)));
      else if (doc.kind == DocumentKind::Round)
        print_group(session.out(), first_homology_round(std::get<RoundDiagram>(doc.diagram)));
      else
        throw DiagramError("homology of Kirby diagrams with 1-handles is not supported");
    };
  });

  auto *trivial = app.add_subcommand("is-trivial", "every joint pair has coefficient 1/0");
  add_file(trivial);
  trivial->callback([&] {
    action = [&] {
      session.out() << "trivial: " << (is_trivial(session.round(file)) ? "true" : "false") << '\n';
    };
  });

  auto *split = app.add_subcommand("split", "split into linking-connected blocks");
  add_file(split);
  split->callback([&] {
    action = [&] {
      auto blocks = split_connected_sum(session.round(file));
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        session.out() << "# block " << i << (blocks[i].disconnected ? " disconnected" : "") << '\n';
        session.out() << print(blocks[i].diagram);
      }
    };
  });

  std::size_t pair = 0;
  auto *suture = app.add_subcommand("suture", "suture slope of a pair");
  add_file(suture);
  suture->add_option("--pair", pair, "pair index")->required();
  suture->callback([&] {
    action = [&] {
      auto w = suture_slope(session.round(file), pair);
      session.out() << "pair: " << w.pair << "\nn: " << w.n << "\nslope: " << w.slope << '\n';
    };
  });

  std::string range;
  auto *foliations = app.add_subcommand("foliations", "taut foliation witnesses for a pair");
  add_file(foliations);
  foliations->add_option("--pair", pair, "pair index")->required();
  foliations->add_option("--range", range, "range of n, A..B")->required();
  foliations->callback([&] {
    action = [&] {
      auto r = session.round(file);
      auto family = taut_foliation_family(r, pair, parse_range(range, "range"));
      if (const auto *refusal = std::get_if<Refusal>(&family)) {
        session.out() << "refused: " << refusal->reason << '\n';
        return;
      }
      for (const auto &w : std::get<std::vector<FoliationWitness>>(family))
        session.out() << "foliation: pair=" << w.pair << " n=" << w.n << " slope=" << w.slope << '\n';
      session.out() << "tight_contact: " << (tight_contact_exists(r, pair) ? "true" : "false") << '\n';
    };
  });

  std::size_t depth = 1;
  std::string k_range = "0..0";
  auto *search = app.add_subcommand("search", "bounded search for a move sequence");
  search->add_option("FILE1", file, "start diagram")->required();
  search->add_option("FILE2", file2, "target diagram")->required();
  search->add_option("--depth", depth, "maximum number of moves")->required();
  search->add_option("--k-range", k_range, "free parameter range, A..B")->required();
  search->callback([&] {
    action = [&] {
      auto r1 = session.round(file);
      auto r2 = session.round(file2);
      auto found = bounded_equivalence_search(r1, r2, depth, parse_range(k_range, "k range"));
      if (!found) {
        session.err() << "no move sequence of length <= " << depth << " found\n";
        throw Reported{kExitSearchExhausted};
      }
      for (const auto &m : *found)
        session.out() << to_string(m) << '\n';
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    if (code == 0)
      return kExitOk;
    return kExitDiagnostics;
  }

  try {
    if (action)
      action();
    return kExitOk;
  } catch (const Reported &r) {
    return r.code;
  } catch (const DiagramError &e) {
    err << "rsd: " << e.what() << '\n';
    return kExitPrecondition;
  }
}

} // namespace rsd
