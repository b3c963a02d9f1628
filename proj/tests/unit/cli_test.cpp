#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hsembed_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path file(const std::string& name, const std::string& text = {}) {
    const auto p = dir_ / name;
    if (!text.empty()) std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  Result run(const std::string& args) {
    const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string(HSEMBED_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, EmbedPathThree) {
  const auto g = file("path.txt", "a b\nb c\n");
  const auto r = run("embed " + g.string() + " --alpha 1 --dim 1 --out " + (dir_ / "p").string());
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = slurp(dir_ / "p.coords.csv");
  EXPECT_NE(csv.find("node_label,c_1\na,0.7071067811865"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\nb,"), std::string::npos);
  EXPECT_NE(csv.find("\nc,-0.7071067811865"), std::string::npos);
  EXPECT_NE(csv.find("# seed=1\n"), std::string::npos);
  EXPECT_NE(csv.find("# hiddenspace_version="), std::string::npos);
  const auto json = slurp(dir_ / "p.eigenvalues.json");
  EXPECT_NE(json.find("\"eigenvalues\""), std::string::npos);
  EXPECT_EQ(slurp(dir_ / "p.nodemap.csv"), "original_label,compact_id\na,0\nb,1\nc,2\n");
}

TEST_F(Cli, MissingFileIsUsageError) {
  const auto r = run("embed " + (dir_ / "nope.txt").string() + " --out " + (dir_ / "x").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("nope.txt"), std::string::npos) << r.err;
}

TEST_F(Cli, BadFlagsAreUsageErrors) {
  EXPECT_EQ(run("embed").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("theory --gamma 1.5").code, 2);
}

TEST_F(Cli, UnknownMethodListsValidNames) {
  const auto g = file("g.txt", "1 2\n2 3\n3 4\n4 1\n1 3\n");
  const auto r = run("evaluate " + g.string() + " --methods CN,PageRank");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("PageRank"), std::string::npos);
  EXPECT_NE(r.err.find("Jaccard"), std::string::npos);
}

TEST_F(Cli, ComputationalFailureExitsOne) {
  // Four nodes cannot carry five coordinates plus the discarded leading vector.
  const auto g = file("g.txt", "1 2\n2 3\n3 4\n");
  const auto r = run("embed " + g.string() + " --dim 5 --out " + (dir_ / "x").string());
  EXPECT_EQ(r.code, 2);
  const auto t = run("embed " + g.string() + " --dim 1 --route iterative --eig-tol 1e-300 --out " + (dir_ / "y").string());
  EXPECT_EQ(t.code, 1) << t.err;
}

TEST_F(Cli, ConfigFilePrecedence) {
  const auto g = file("path.txt", "a b\nb c\nc d\n");
  const auto cfg = file("run.cfg", "alpha=0.5\ndim=2\nseed=9\n");
  ASSERT_EQ(run("embed " + g.string() + " --config " + cfg.string() + " --alpha 0.75 --out " +
                (dir_ / "c").string())
                .code,
            0);
  const auto csv = slurp(dir_ / "c.coords.csv");
  EXPECT_NE(csv.find("# alpha=0.75\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("# dim=2\n"), std::string::npos);
  EXPECT_NE(csv.find("# seed=9\n"), std::string::npos);
}

TEST_F(Cli, TheoryPrintsCurve) {
  const auto r = run("theory --panels 128 --beta-grid 2,3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("beta,auc,link_probability\n2,0."), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\n3,0."), std::string::npos);
}

TEST_F(Cli, CorrelateAgainstOwnEmbeddingIsPerfect) {
  const auto g = file("g.txt", "1 2\n2 3\n3 4\n4 5\n5 1\n1 3\n2 6\n6 7\n7 3\n4 8\n8 5\n");
  ASSERT_EQ(run("embed " + g.string() + " --alpha 0.8 --dim 3 --out " + (dir_ / "e").string()).code, 0);
  const auto r = run("correlate " + g.string() + " " + (dir_ / "e.coords.csv").string() + " --alpha 0.8 --dim 3");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\n0.8,1\n"), std::string::npos) << r.out;
}

TEST_F(Cli, EveryCommandIsByteDeterministic) {
  const auto model = (dir_ / "m").string();
  ASSERT_EQ(run("generate --nodes 200 --mean-degree 40 --seed 4 --out " + model).code, 0);
  const auto edges = slurp(model + ".edges"), coords = slurp(model + ".coords.csv");
  ASSERT_EQ(run("generate --nodes 200 --mean-degree 40 --seed 4 --out " + model).code, 0);
  EXPECT_EQ(slurp(model + ".edges"), edges);
  EXPECT_EQ(slurp(model + ".coords.csv"), coords);

  const std::vector<std::string> commands = {
      "embed " + model + ".edges --alpha 0.9 --dim 3 --out " + (dir_ / "emb").string(),
      "evaluate " + model + ".edges --methods CN,RA,HS,hybrid:CN --reps 3 --seed 2 --format json --out " +
          (dir_ / "eval.json").string(),
      "evaluate " + model + ".edges --methods AA,Katz --reps 2 --out " + (dir_ / "eval.csv").string(),
      "correlate " + model + ".edges " + model + ".coords.csv --alpha 0.5,1 --dim 1:1:3 --out " +
          (dir_ / "corr.csv").string(),
      "theory --panels 64 --out " + (dir_ / "theory.csv").string(),
      "tune " + model + ".edges --alpha 0.5,1 --dim 2,3 --format json --out " + (dir_ / "tune.json").string(),
  };
  const std::vector<std::string> outputs = {"emb.coords.csv", "emb.eigenvalues.json", "eval.json", "eval.csv",
                                            "corr.csv",       "theory.csv",           "tune.json"};
  std::vector<std::string> first;
  for (const auto& c : commands) ASSERT_EQ(run(c).code, 0) << c;
  for (const auto& o : outputs) first.push_back(slurp(dir_ / o));
  for (const auto& c : commands) ASSERT_EQ(run(c).code, 0) << c;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    EXPECT_FALSE(first[i].empty()) << outputs[i];
    EXPECT_EQ(slurp(dir_ / outputs[i]), first[i]) << outputs[i];
  }
}
