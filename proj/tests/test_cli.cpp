#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "upcycle/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = upcycle::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(UPCYCLE_DATA_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::string payload(const std::string& s) {
  std::string out;
  for (const auto& l : lines(s)) {
    if (!l.starts_with("#")) out += l + "\n";
  }
  return out;
}

}  // namespace

TEST(Cli, VerifySevenUpcycles) {
  auto r = run({"verify", "--cyclic", "--n", "8", data("binary8.txt")});
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 7u);
  for (const auto& l : ls) EXPECT_EQ(l, "VALID a=2 n=8 d=1");
}

TEST(Cli, VerifyInvalid) {
  auto r = run({"verify", "--cyclic", "--n", "4"}, "(001*100*)\n");
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.starts_with("INVALID"));
}

TEST(Cli, VerifyNecklaceWithHeader) {
  auto r = run({"verify", "--n", "1", data("filler_0011.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "VALID NECKLACE a=2 n=1 t=2\n");
}

TEST(Cli, VerifyAcceptsDiamondGlyph) {
  auto r = run({"verify", "--n", "4"}, "(001\xE2\x8B\x84" "110\xE2\x8B\x84)\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "VALID a=2 n=4 d=1\n");
}

TEST(Cli, DnTable) {
  auto r = run({"dn", "--max", "16"});
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 17u);
  EXPECT_EQ(ls[0], "n\tD(n)");
  const std::vector<int> want = {1, 1, 1, 2, 2, 3, 4, 4, 5, 6, 6, 7, 8, 9, 9, 10};
  for (std::size_t n = 1; n <= 16; ++n) EXPECT_EQ(ls[n], std::to_string(n) + "\t" + std::to_string(want[n - 1]));
}

TEST(Cli, SearchExhaustive) {
  auto r = run({"search", "--a", "2", "--n", "4", "--d", "1", "--exhaustive"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "(001*110*)\n(00*011*1)\n");
}

TEST(Cli, SearchRuledOut) {
  auto r = run({"search", "--a", "2", "--n", "2", "--d", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("ruled out"), std::string::npos);
}

TEST(Cli, SearchThreadsEnvOverride) {
  ::setenv("UPCYCLE_THREADS", "2", 1);
  auto r = run({"search", "--a", "2", "--n", "4", "--d", "1", "--exhaustive", "--threads", "1"});
  ::unsetenv("UPCYCLE_THREADS");
  EXPECT_EQ(r.out, "(001*110*)\n(00*011*1)\n");
  ::setenv("UPCYCLE_THREADS", "many", 1);
  auto bad = run({"search", "--a", "2", "--n", "4", "--d", "1"});
  ::unsetenv("UPCYCLE_THREADS");
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, SearchLimit) {
  auto r = run({"search", "--a", "2", "--n", "4", "--d", "1", "--limit", "1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 2u);
  EXPECT_EQ(lines(r.out).back(), "# incomplete: stopped at the limit");
}

TEST(Cli, MultiplyReproducesProduct) {
  auto r = run({"multiply", "--n", "4", "--k", "2", data("u4.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.starts_with("# provenance: "));
  std::ifstream f(data("alphmult.txt"));
  std::string want;
  for (std::string l; std::getline(f, l);) {
    if (!l.starts_with("#")) want += l + "\n";
  }
  EXPECT_EQ(payload(r.out), want);
}

TEST(Cli, LiftAndFold) {
  auto e = run({"lift", "--n", "4", "--enumerate", data("u4.txt")});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(payload(e.out), "(0000101101001111)\n(0000111101001011)\n");
  auto l = run({"lift", "--n", "4", "--necklace", data("filler_0011.txt"), "--offsets", "0", data("u4.txt")});
  EXPECT_EQ(payload(l.out), "(0010110000111101)\n");
  auto f = run({"fold", "--n", "4", "--delta", "1", "--offsets", "0"}, "(0010110000111101)\n");
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(payload(f.out), "(001*110*)\n");
  auto nf = run({"fold", "--n", "4", "--delta", "1", "--offsets", "0"}, "(0010111101001100)\n");
  EXPECT_EQ(nf.code, 1);
}

TEST(Cli, NecklaceLex) {
  auto r = run({"necklace", "--method", "lex", "--a", "2", "--n", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(payload(r.out), "NECKLACE a=2 n=3 t=3\n(000001010011100101110111)\n");
}

TEST(Cli, Feasible) {
  auto r = run({"feasible", "--a", "3", "--n", "6", "--d", "1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("ruled-out\tframe-period"), std::string::npos);
  auto ok = run({"feasible", "--a", "2", "--n", "4", "--d", "1"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("known-to-exist"), std::string::npos);
  auto table = run({"feasible", "--from", "4", "--to", "5"});
  EXPECT_EQ(lines(table.out).size(), 3u);
  EXPECT_TRUE(lines(table.out)[1].starts_with("4\t2k\t1\t"));
}

TEST(Cli, Analyze) {
  auto r = run({"analyze", "--n", "4", data("u4.txt")});
  EXPECT_EQ(r.code, 0);
  auto ls = lines(r.out);
  EXPECT_NE(std::find(ls.begin(), ls.end(), "runs\t0\t4\t2\t1\t1/2"), ls.end());
  EXPECT_NE(std::find(ls.begin(), ls.end(), "balance\t3\t3\tbalanced"), ls.end());
  auto db = run({"analyze", "--n", "4"}, "(0010110000111101)\n");
  auto dl = lines(db.out);
  EXPECT_NE(std::find(dl.begin(), dl.end(), "r3\tfails\t4 5 7 8 10 11"), dl.end());
}

TEST(Cli, GraphOutputs) {
  auto f = run({"graph", "--n", "4", "--factor", data("u4.txt")});
  EXPECT_EQ(payload(f.out), "(00101100)\n(00111101)\n");
  auto t = run({"graph", "--n", "4", "--model", "t", data("u4.txt")});
  EXPECT_NE(t.out.find("\"001\" [shape=diamond];"), std::string::npos);
  auto path = std::filesystem::temp_directory_path() / "upcycle_cli_test.dot";
  auto s = run({"graph", "--n", "4", "--model", "s", "--out", path.string(), data("u4.txt")});
  EXPECT_EQ(s.code, 0);
  std::ifstream dot(path);
  std::stringstream buf;
  buf << dot.rdbuf();
  EXPECT_TRUE(buf.str().starts_with("digraph S {"));
  std::filesystem::remove(path);
}

TEST(Cli, CrossJoin) {
  auto r = run({"crossjoin", "--n", "4", "--x", "3*1", "--y", "21*", "--at", "11,18,27,50", data("alphmult.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(payload(r.out), "(001*110*003*132*201*310*203*312*221*130*023*112*021*330*223*332*)\n");
  auto c = run({"crossjoin", "--n", "4", "--candidates", data("u4.txt")});
  EXPECT_EQ(lines(c.out).size(), 1u);
}

TEST(Cli, UsageErrors) {
  auto r = run({"verify", "--n", "4", "--bogus", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--bogus"), std::string::npos);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "4", "/nonexistent/file"}).code, 2);
  EXPECT_EQ(run({"verify", "--n", "4"}, "(0120)\n").code, 1);
  EXPECT_EQ(run({"verify", "--n", "4", "--a", "2"}, "(0120)\n").code, 2);
}

TEST(Cli, Help) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}
