#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "omegact/cli.hpp"
#include "omegact/parse.hpp"

using namespace omegact;
namespace fs = std::filesystem;

namespace
{
  struct Run
  {
    int code;
    std::string out, err;
  };

  Run cli(std::vector<std::string> args)
  {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

  fs::path scratch()
  {
    const fs::path dir = fs::temp_directory_path() / "omegact_cli_test";
    fs::create_directories(dir);
    return dir;
  }

  std::string write(const std::string& name, const std::string& text)
  {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string read(const std::string& path)
  {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
}

TEST_CASE("cli: prove the prefix-shift example and check the certificate")
{
  const std::string cert = (scratch() / "shift.cert").string();
  const Run r = cli({"prove", "(q . p/q)^w |- q . p^w", "--depth", "8", "-o", cert});
  CHECK(r.code == kYes);
  CHECK(first_line(r.out) == "provable");
  CHECK(r.out.find("certificate: " + cert) != std::string::npos);
  CHECK(read(cert).find("(rule ") == 0);

  const Run c = cli({"check", cert});
  CHECK(c.code == kYes);
  CHECK(first_line(c.out) == "FullyChecked");
}

TEST_CASE("cli: include")
{
  const Run no = cli({"include", "a^w", "b^w"});
  CHECK(no.code == kNo);
  CHECK(first_line(no.out) == "counterexample: (a)^w");

  const Run yes = cli({"include", "(a . b)^w", "a . (b . a)^w"});
  CHECK(yes.code == kYes);
  CHECK(first_line(yes.out) == "HOLDS");

  const Run fin = cli({"include", "a*", "a . a*"});
  CHECK(fin.code == kNo);
  CHECK(first_line(fin.out) == "counterexample: \"\"");

  CHECK(cli({"include", "a \\ b", "b"}).code == kBadInput);
  CHECK(cli({"include", "a", "a^w"}).code == kBadInput);
  CHECK(cli({"include", "a . (", "a"}).code == kBadInput);
}

TEST_CASE("cli: counterexample sequent is unknown within the bound")
{
  const Run r = cli({"prove", "q . (q \\ (p . q))^w |- p^w", "--depth", "12"});
  CHECK(r.code == kUnknown);
  CHECK(first_line(r.out) == "unknown");
  CHECK(r.out.find("result: NotFoundWithin(12)") != std::string::npos);
}

TEST_CASE("cli: prove uses decision procedures when they apply")
{
  const Run word = cli({"prove", "a, {b} |- a . b^w"});
  CHECK(word.code == kYes);
  CHECK(word.out.find("method: membership") != std::string::npos);

  const Run nonmember = cli({"prove", "{b} |- a^w"});
  CHECK(nonmember.code == kNo);
  CHECK(nonmember.out.find("counterexample: (b)^w") != std::string::npos);

  const Run incl = cli({"prove", "(a . b)^w |- a . (b . a)^w", "--depth", "10"});
  CHECK(incl.code == kYes);
  CHECK(incl.out.find("method: inclusion") != std::string::npos);

  const Run bad = cli({"prove", "a^w |- b^w"});
  CHECK(bad.code == kNo);
  CHECK(bad.out.find("counterexample: (a)^w") != std::string::npos);
}

TEST_CASE("cli: member and parse")
{
  CHECK(cli({"member", "ab", "ab", "(a . b)^w"}).code == kYes);
  CHECK(cli({"member", "", "ba", "(a . b)^w"}).code == kNo);
  CHECK(cli({"member", "x y", "y", "x . y^w"}).code == kYes);
  CHECK(cli({"member", "a", "", "a^w"}).code == kBadInput);

  const Run p = cli({"parse", "(a . (b . c))"});
  CHECK(p.code == kYes);
  CHECK(first_line(p.out) == parse_formula("a . b . c").str());
  CHECK(first_line(cli({"parse", "--sequent", "a, {b, b} |- c^w"}).out) == "a, {b} |- c^w");
  CHECK(cli({"parse", "a |- b"}).code == kBadInput);
}

TEST_CASE("cli: check rejects a broken certificate and reads the schema bound")
{
  const std::string bad = write("bad.cert", "(rule Ax (seq \"p |- q\"))\n");
  const Run r = cli({"check", bad});
  CHECK(r.code == kNo);
  CHECK(first_line(r.out).find("Rejected") == 0);

  CHECK(cli({"check", write("garbage.cert", "(rule")}).code == kBadInput);
  CHECK(cli({"check", (scratch() / "missing.cert").string()}).code == kBadInput);

  const std::string cert = (scratch() / "star.cert").string();
  CHECK(cli({"prove", "a*, a* |- a*", "-o", cert}).code == kUnknown);
  const Run k3 = cli({"check", cert, "--schema-bound", "3"});
  CHECK(k3.code == kUnknown);
  CHECK(first_line(k3.out) == "SchemaChecked(3)");

  ::setenv("OMEGACT_SCHEMA_BOUND", "5", 1);
  const Run env = cli({"check", cert});
  ::unsetenv("OMEGACT_SCHEMA_BOUND");
  CHECK(first_line(env.out) == "SchemaChecked(5)");
}

TEST_CASE("cli: reduce and verify-encoding")
{
  const std::string g1 = write("g1.cfg", "S -> a\n");
  const std::string g2 = write("g2.cfg", "T -> b\n");
  const std::string seq = (scratch() / "total.seq").string();
  const Run r = cli({"reduce", g1, g2, "-o", seq});
  CHECK(r.code == kYes);
  const std::string text = read(seq);
  CHECK(parse_sequent(text.substr(0, text.find('\n'))).str() == "(S_1 | T_2)^w |- S_1 . T_2^w");
  CHECK(cli({"reduce", g1}).code == kBadInput);

  const std::string anbn = write("anbn.cfg", "S -> a S b | a b\n");
  const Run v = cli({"verify-encoding", anbn, "--max-len", "4"});
  CHECK(v.code == kYes);
  CHECK(first_line(v.out) == "agree");
  CHECK(v.out.find("30 words checked, 0 disagreements") != std::string::npos);
  CHECK(cli({"verify-encoding", write("eps.cfg", "S -> a S | eps\n")}).code == kBadInput);
}

TEST_CASE("cli: emitted certificates never check as rejected; exit codes are stable")
{
  for (const char* seq : {"p |- p", "p, p |- p^w / p^w", "a, a, a |- a*", "a*, a* |- a*", "a | b |- b | a",
                          "(a . b)^w |- a . (b . a)^w", "a . b |- a . c"}) {
    CAPTURE(seq);
    const std::string cert = (scratch() / "prop.cert").string();
    fs::remove(cert);
    const Run first = cli({"prove", seq, "--depth", "10", "-o", cert});
    const Run second = cli({"prove", seq, "--depth", "10", "-o", cert});
    CHECK(first.code == second.code);
    CHECK(first.out == second.out);
    if (fs::exists(cert))
      CHECK(cli({"check", cert}).code != kNo);
  }
}

TEST_CASE("cli: usage errors")
{
  CHECK(cli({}).code == kBadInput);
  CHECK(cli({"frobnicate"}).code == kBadInput);
  CHECK(cli({"prove"}).code == kBadInput);
  CHECK(cli({"prove", "p |- p", "--depth", "x"}).code == kBadInput);
  CHECK(cli({"--help"}).code == kYes);
}
