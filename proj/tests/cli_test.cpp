#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#ifndef EXTISO_BIN
#error "EXTISO_BIN must point at the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(EXTISO_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int st = pclose(p);
  r.rc = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch() {
  auto d = fs::temp_directory_path() / ("extiso_cli_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string write(const fs::path& p, const std::string& s) {
  std::ofstream(p) << s;
  return p.string();
}

}  // namespace

TEST(Cli, GenOutputRoundTripsThroughValidate) {
  auto d = scratch();
  const char* specs[] = {"cyclic 9", "dihedral 6", "symmetric 4", "alternating 5", "from-generators sl25",
                         "from-generators heisenberg 3"};
  for (const char* s : specs) {
    auto g = run(std::string("gen ") + s);
    if (g.rc != 0) {
      ADD_FAILURE() << s << " rc " << g.rc;
      continue;
    }
    auto f = write(d / "g.cayley", g.out);
    auto v = run("validate " + f);
    EXPECT_EQ(v.rc, 0) << s;
    EXPECT_NE(v.out.find("VERDICT: ok"), std::string::npos) << s;
  }
  auto z2 = write(d / "z2.cayley", run("gen cyclic 2").out);
  auto a5 = write(d / "a5.cayley", run("gen alternating 5").out);
  auto dp = write(d / "dp.cayley", run("gen direct-product " + z2 + " " + a5).out);
  auto v = run("validate " + dp);
  EXPECT_EQ(v.rc, 0);
  EXPECT_NE(v.out.find("order: 120"), std::string::npos);
  fs::remove_all(d);
}

TEST(Cli, ByteStable) {
  auto d = scratch();
  auto a = run("gen from-generators sl25");
  auto b = run("gen from-generators sl25");
  EXPECT_EQ(a.out, b.out);
  auto f = write(d / "sl.cayley", a.out);
  auto r = write(d / "r.cayley", run("gen relabel " + f + " 3").out);
  auto i1 = run("iso " + f + " " + r);
  auto i2 = run("iso " + f + " " + r);
  EXPECT_EQ(i1.out, i2.out);
  EXPECT_EQ(run("invariants " + f).out, run("invariants " + f).out);
  fs::remove_all(d);
}

TEST(Cli, ExitCodes) {
  auto d = scratch();
  auto z4 = write(d / "z4.cayley", run("gen cyclic 4").out);
  auto v4 = write(d / "v4.cayley", run("gen elem-abelian 2 2").out);
  auto s4 = write(d / "s4.cayley", run("gen symmetric 4").out);
  EXPECT_EQ(run("iso " + z4 + " " + z4).rc, 0);
  auto no = run("iso " + z4 + " " + v4);
  EXPECT_EQ(no.rc, 1);
  EXPECT_NE(no.out.find("VERDICT: not-isomorphic"), std::string::npos);
  EXPECT_EQ(run("iso --strategy central-radical " + s4 + " " + s4).rc, 2);
  auto bad = write(d / "bad.cayley", "2\n0 1\n1 1\n");
  auto nb = run("validate " + bad);
  EXPECT_EQ(nb.rc, 3);
  EXPECT_NE(nb.out.find("not-a-group"), std::string::npos);
  auto garbled = write(d / "garbled.cayley", "2\n0 x\n");
  EXPECT_EQ(run("validate " + garbled).rc, 3);
  EXPECT_EQ(run("iso --oracle-check " + z4 + " " + z4).rc, 0);
  fs::remove_all(d);
}

TEST(Cli, Invariants) {
  auto d = scratch();
  auto f = write(d / "sl.cayley", run("gen from-generators sl25").out);
  auto r = run("invariants " + f);
  EXPECT_EQ(r.rc, 0);
  EXPECT_NE(r.out.find("order: 120"), std::string::npos);
  fs::remove_all(d);
}

TEST(Cli, ShippedCorpusValidates) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(EXTISO_CORPUS)) {
    if (e.path().extension() != ".cayley") continue;
    ++n;
    EXPECT_EQ(run("validate " + e.path().string()).rc, 0) << e.path();
  }
  EXPECT_GE(n, 30u);
}
