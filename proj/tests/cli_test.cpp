#include "rsd/analysis.hpp"
#include "rsd/cli.hpp"
#include "rsd/homology.hpp"
#include "rsd/textio.hpp"

#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace rsd;
using namespace rsd::test;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string &stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string &name) { return std::string(RSD_CORPUS_DIR) + "/" + name; }

template <class T> T load(const std::string &name) {
  auto parsed = parse(read_file(corpus(name)));
  REQUIRE(parsed.ok());
  return std::get<T>(parsed.document->diagram);
}

std::string temp_file(const std::string &name, const std::string &text) {
  auto dir = std::filesystem::temp_directory_path() / "rsd_cli_test";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

} // namespace

TEST_CASE("validate") {
  auto ok = run({"validate", corpus("joint_312.rsd")});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out == "valid: true\n");

  auto bad = temp_file("asym.rsd", "ROUND\nCOMP a knot=unknot\nCOMP b knot=unknot\n"
                                   "PAIR a b n1=0 n2=0\nLK a b 1\nLK b a 2\n");
  auto r = run({"validate", bad});
  CHECK(r.code == kExitDiagnostics);
  CHECK(r.err.find(bad + ":6:") == 0);
  CHECK(r.err.find("symmetric") != std::string::npos);

  auto missing = run({"validate", "/nonexistent/file.rsd"});
  CHECK(missing.code == kExitPrecondition);
}

TEST_CASE("standard input") {
  auto r = run({"homology", "-"}, "DEHN\nCOMP K knot=unknot framing=5\n");
  CHECK(r.code == kExitOk);
  CHECK(r.out == "h1: Z/5\nfree_rank: 0\ntorsion: [5]\n");
  auto bad = run({"validate", "-"}, "ROUND\nWAT\n");
  CHECK(bad.code == kExitDiagnostics);
  CHECK(bad.err.find("<stdin>:2:1: error:") == 0);
}

TEST_CASE("to-dehn matches the library") {
  auto r = run({"to-dehn", corpus("joint_312.rsd")});
  CHECK(r.code == kExitOk);
  CHECK(r.out == print(joint_pair_to_dehn(load<RoundDiagram>("joint_312.rsd"))));
  CHECK(r.out.find("COMP L11 knot=unknot framing=4\n") != std::string::npos);
  CHECK(r.out.find("COMP L12 knot=unknot framing=2\n") != std::string::npos);

  auto kirby = run({"to-dehn", corpus("kirby_trefoil.rsd")});
  CHECK(kirby.code == kExitPrecondition);
}

TEST_CASE("to-round matches the library") {
  auto r = run({"to-round", corpus("dehn_42.rsd"), "--k", "5"});
  CHECK(r.code == kExitOk);
  std::vector<Integer> ks{5};
  CHECK(r.out == print(dehn_to_joint_pairs(load<DehnDiagram>("dehn_42.rsd"), ks)));
  CHECK(r.out.find("PAIR L11 L12 n1=7 n2=5 m=2\n") != std::string::npos);

  auto padded = run({"to-round", corpus("dehn_lens5.rsd"), "--k", "0", "--pad-sign", "-1"});
  CHECK(padded.code == kExitOk);
  CHECK(padded.out.find("m=-1") != std::string::npos);

  CHECK(run({"to-round", corpus("dehn_42.rsd"), "--k", "1,2"}).code == kExitPrecondition);
  CHECK(run({"to-round", corpus("dehn_42.rsd"), "--k", "x"}).code == kExitPrecondition);
  CHECK(run({"to-round", corpus("dehn_42.rsd"), "--k", "1", "--pad-sign", "3"}).code ==
        kExitDiagnostics);
}

TEST_CASE("kirby-export and kirby-import") {
  auto r = run({"kirby-export", corpus("round1_hopf.rsd")});
  CHECK(r.code == kExitOk);
  CHECK(r.out == print(round1_to_kirby(load<RoundDiagram>("round1_hopf.rsd"))));
  CHECK(r.out.find("framing=2") != std::string::npos);

  auto i = run({"kirby-import", corpus("kirby_trefoil.rsd")});
  CHECK(i.code == kExitOk);
  CHECK(i.out == print(kirby_to_round1(load<KirbyDiagram>("kirby_trefoil.rsd"))));

  CHECK(run({"kirby-import", corpus("kirby_hopf_export.rsd")}).code == kExitPrecondition);
}

TEST_CASE("move") {
  auto r = run({"move", corpus("joint_312.rsd"), "--kind", "eq1", "--args", "pair=0", "k=0"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == print(eq_move1(load<RoundDiagram>("joint_312.rsd"), 0, 0)));

  auto slide = run({"move", corpus("dehn_slide3.rsd"), "--kind", "kirby2-slide", "--args", "a=a", "b=b"});
  CHECK(slide.code == kExitOk);
  CHECK(slide.out == print(kirby2_slide(load<DehnDiagram>("dehn_slide3.rsd"), id("a"), id("b"))));

  CHECK(run({"move", corpus("joint_312.rsd"), "--kind", "eq1", "--args", "pair=3", "k=0"}).code ==
        kExitPrecondition);
  CHECK(run({"move", corpus("joint_312.rsd"), "--kind", "nope"}).code == kExitPrecondition);
  CHECK(run({"move", corpus("joint_312.rsd"), "--kind", "eq3-add", "--args", "k=0", "delta=2",
             "sign=1"})
            .code == kExitPrecondition);
}

TEST_CASE("homology") {
  CHECK(run({"homology", corpus("dehn_lens5.rsd")}).out == "h1: Z/5\nfree_rank: 0\ntorsion: [5]\n");
  CHECK(run({"homology", corpus("dehn_s1s2.rsd")}).out == "h1: Z\nfree_rank: 1\ntorsion: []\n");
  auto j = run({"homology", corpus("joint_312.rsd")});
  CHECK(j.out.starts_with("h1: Z/2 + Z/4\n"));
  CHECK(j.out.find("torsion: [2, 4]") != std::string::npos);
  CHECK(run({"homology", corpus("kirby_trefoil.rsd")}).code == kExitPrecondition);
}

TEST_CASE("is-trivial and split") {
  CHECK(run({"is-trivial", corpus("trivial_two_pairs.rsd")}).out == "trivial: true\n");
  CHECK(run({"is-trivial", corpus("joint_312.rsd")}).out == "trivial: false\n");
  CHECK(run({"is-trivial", corpus("round1_hopf.rsd")}).code == kExitPrecondition);

  auto s = run({"split", corpus("loose_s1s2.rsd")});
  CHECK(s.code == kExitOk);
  std::string expected;
  auto blocks = split_connected_sum(load<RoundDiagram>("loose_s1s2.rsd"));
  for (std::size_t i = 0; i < blocks.size(); ++i)
    expected += "# block " + std::to_string(i) + (blocks[i].disconnected ? " disconnected" : "") +
                "\n" + print(blocks[i].diagram);
  CHECK(s.out == expected);
  CHECK(s.out.find("# block 1 disconnected\n") != std::string::npos);
}

TEST_CASE("suture and foliations") {
  CHECK(run({"suture", corpus("fibred_hopf.rsd"), "--pair", "0"}).out == "pair: 0\nn: 0\nslope: 1\n");
  CHECK(run({"suture", corpus("round1_unequal.rsd"), "--pair", "0"}).code == kExitPrecondition);

  auto f = run({"foliations", corpus("fibred_hopf.rsd"), "--pair", "0", "--range=-1..1"});
  CHECK(f.code == kExitOk);
  CHECK(f.out == "foliation: pair=0 n=-1 slope=2\nfoliation: pair=0 n=0 slope=1\n"
                 "foliation: pair=0 n=1 slope=0\ntight_contact: true\n");
  auto refused = run({"foliations", corpus("round1_hopf.rsd"), "--pair", "0", "--range", "0..2"});
  CHECK(refused.code == kExitOk);
  CHECK(refused.out == "refused: not fibred\n");
  CHECK(run({"foliations", corpus("fibred_hopf.rsd"), "--pair", "0", "--range", "2..1"}).code ==
        kExitPrecondition);
}

TEST_CASE("search") {
  auto start = load<RoundDiagram>("joint_312.rsd");
  auto target = temp_file("target.rsd", print(eq_move1(start, 0, 5)));
  auto r = run({"search", corpus("joint_312.rsd"), target, "--depth", "1", "--k-range", "0..5"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "eq1 pair=0 k=5\n");

  auto negative = run({"search", corpus("joint_312.rsd"), target, "--depth", "1", "--k-range=-5..5"});
  CHECK(negative.code == kExitOk);
  CHECK(negative.out == "eq1 pair=0 k=5\n");

  auto none = run({"search", corpus("joint_312.rsd"), corpus("joint_m1.rsd"), "--depth", "1",
                   "--k-range", "0..0"});
  CHECK(none.code == kExitSearchExhausted);
  CHECK(none.out.empty());
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitDiagnostics);
  CHECK(run({"frobnicate"}).code == kExitDiagnostics);
  CHECK(run({"validate"}).code == kExitDiagnostics);
  auto help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("search") != std::string::npos);
}
