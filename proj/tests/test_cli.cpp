#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("agt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(AGT_CLI_PATH) + " " + args + " >" + path("stdout.txt") + " 2>" + path("stderr.txt");
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, VerifyBsCertificate) {
  ASSERT_EQ(run("build bs --bs-m 2 --out " + path("bs2.json") + " --cert " + path("bs2_cert.json")), 0);
  EXPECT_EQ(run("verify --group " + path("bs2.json") + " --cert " + path("bs2_cert.json")), 0);
  const auto cert = Json::parse(read("bs2_cert.json"));
  EXPECT_EQ(cert.at("conjugators").size(), 2u);
}

TEST_F(Cli, VerifyGammaWitnesses) {
  ASSERT_EQ(run("build gamma --which beta --out " + path("gamma_beta.json")), 0);
  EXPECT_EQ(run("verify --free --ncl " + path("gamma_beta.json")), 0);
  ASSERT_EQ(run("build gamma --which alpha --out " + path("gamma_alpha.json")), 0);
  EXPECT_EQ(run("verify --free --ncl " + path("gamma_alpha.json")), 0);

  auto j = Json::parse(read("gamma_beta.json"));
  j["terms"][0]["sign"] = -j["terms"][0]["sign"].get<int>();
  write("bad.json", j.dump());
  EXPECT_EQ(run("verify --free --ncl " + path("bad.json")), 1);
}

TEST_F(Cli, TrivialCertificateIsRefuted) {
  write("free2.json", R"({"type": "free", "generators": ["a", "b"]})");
  write("cert.json", R"({"base": "a", "conjugators": ["1"]})");
  EXPECT_EQ(run("verify --group " + path("free2.json") + " --cert " + path("cert.json")), 1);
}

TEST_F(Cli, ParseFailures) {
  EXPECT_EQ(run("verify --group " + path("missing.json") + " --cert " + path("missing.json")), 2);
  write("broken.json", "{ not json");
  EXPECT_EQ(run("abelianize --group " + path("broken.json")), 2);
  EXPECT_EQ(run("--no-such-flag"), 2);
  EXPECT_EQ(run("search gt --group " + path("broken.json")), 2);
}

TEST_F(Cli, SearchBsThree) {
  ASSERT_EQ(run("build bs --bs-m 3 --out " + path("bs3.json")), 0);
  EXPECT_EQ(run("search gt --group " + path("bs3.json") + " --elem \"[a,b]\" --max-n 3 --radius 2 --out " +
                path("found.json")),
            1);
  const auto out = Json::parse(read("found.json"));
  EXPECT_EQ(out.at("status"), "found");
  EXPECT_EQ(out.at("certificate").at("conjugators").size(), 3u);
  EXPECT_EQ(out.at("n"), 3);
}

TEST_F(Cli, SearchFreeGroupFindsNothing) {
  write("free2.json", R"({"type": "free", "generators": ["a", "b"]})");
  EXPECT_EQ(run("search gt --group " + path("free2.json") + " --elem a --max-n 4 --radius 2"), 0);
  EXPECT_EQ(run("search gt --group " + path("free2.json") + " --elem a --max-n 4 --radius 3 --node-cap 50"), 2);
}

TEST_F(Cli, SearchRtfOnCaseStudy) {
  ASSERT_EQ(run("build nonlo --s 10 --m 8 --seed 0 --out " + path("nonlo.json")), 0);
  EXPECT_EQ(run("search rtf --group " + path("nonlo.json") + " --radius 3 --max-k 3"), 0);
}

TEST_F(Cli, BuildWIsPerfect) {
  ASSERT_EQ(run("build w --out " + path("w.json")), 0);
  ASSERT_EQ(run("abelianize --group " + path("w.json") + " --out " + path("ab.json")), 0);
  const auto ab = Json::parse(read("ab.json"));
  EXPECT_EQ(ab.at("free_rank"), 0);
  EXPECT_TRUE(ab.at("trivial").get<bool>());
}

TEST_F(Cli, BuildNonloBounds) {
  EXPECT_EQ(run("build nonlo --s 10 --m 8 --seed 0 --out " + path("a.json")), 0);
  EXPECT_EQ(run("build nonlo --s 10 --m 8 --seed 0 --out " + path("b.json")), 0);
  EXPECT_EQ(read("a.json"), read("b.json"));
  EXPECT_EQ(run("build nonlo --s 5"), 2);
  EXPECT_EQ(run("build nosuch"), 2);
}

TEST_F(Cli, Suites) {
  EXPECT_EQ(run("suite lemma_small_cancellation --s 10 --m 8"), 0);
  EXPECT_EQ(run("suite nosuch"), 2);
  EXPECT_EQ(run("suite lemma_K_beta_h --trials 200 --seed 4 --out " + path("r1.json")), 0);
  EXPECT_EQ(run("suite lemma_K_beta_h --trials 200 --seed 4 --out " + path("r2.json")), 0);
  EXPECT_EQ(read("r1.json"), read("r2.json"));
  EXPECT_NE(read("r1.json").find("\"seed\""), std::string::npos);
}

TEST_F(Cli, SuiteAll) { EXPECT_EQ(run("suite all --trials 500 --seed 1"), 0) << read("stderr.txt"); }
