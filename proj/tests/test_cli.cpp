#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pisot/pisot.hpp"

using namespace pisot;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + PISOT_CLI + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) { return std::string(::testing::TempDir()) + name; }

}  // namespace

TEST(Config, KeyValueFile) {
  Config c;
  std::istringstream in("# comment\nprecision = 256\n\nseed=7  # trailing\nformat = json\n");
  c.load(in);
  EXPECT_EQ(c.precision, 256u);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.format, "json");
  EXPECT_THROW(c.set("nope", "1"), ParseError);
  EXPECT_THROW(c.set("seed", "-1"), ParseError);
  EXPECT_THROW(c.set("seed", "12x"), ParseError);
  c.set("height", "0");
  EXPECT_THROW(c.validate(), ParseError);
}

TEST(Config, SerializedIntoReports) {
  Config c;
  c.seed = 99;
  const Json j = report("x", c, Json::object());
  EXPECT_EQ(j["config"]["seed"], 99);
  EXPECT_EQ(j["config"]["orbit_cap"], 1000000);
  EXPECT_EQ(j["config"]["wf_depth"], 30);
  EXPECT_EQ(j["config"]["height"], 100);
  EXPECT_EQ(j["config"]["period_cap"], 40);
  EXPECT_EQ(j["config"]["precision"], 128);
}

TEST(Serialization, CertificateRoundTrip) {
  const NumberField e4 = NumberField::make(parse_recurrence("1,0,0,1"));
  const ZBetaResult z = enumerate_z_beta(e4);
  const WeakFinitaryCertificate c = check_weak_finitarity(e4, z);
  const std::string text = to_json(c).dump();
  const WeakFinitaryCertificate back = certificate_from_json(e4, Json::parse(text));
  EXPECT_EQ(to_json(back).dump(), text);
  EXPECT_EQ(validate_certificate(e4, back, &z), "");
  EXPECT_EQ(back.eta, c.eta);
  EXPECT_EQ(back.L2, c.L2);
  const NumberField g = NumberField::make(parse_recurrence("1,1"));
  EXPECT_THROW(certificate_from_json(g, Json::parse(text)), ParseError);
}

TEST(Serialization, ElementRoundTrip) {
  const NumberField t = NumberField::make(parse_recurrence("1,1,1"));
  const FieldElement x = t.xi0();
  EXPECT_EQ(element_from_json(t, to_json(x)), x);
}

TEST(Cli, PaperExamples) {
  CliResult r = run("field 1,1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("xi0: (-1 + 2b)/5"), std::string::npos);
  r = run("field 1,1,1");
  EXPECT_NE(r.out.find("xi0: (1 + 9b - 4b^2)/22"), std::string::npos);
  r = run("expand 3,-1 '1-1/\xCE\xB2'");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "|1\n");
  r = run("zbeta 1,0,0,1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("6 elements", 0), 0u);
  r = run("form 1,1,0/2,3,1/1,1,1 --search 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("  (1,0,0) -> -1"), std::string::npos);
  EXPECT_NE(r.out.find("certificate B_M(1,0,0)"), std::string::npos);
  r = run("field 3,4,1 --unit '3+1/b' --unit 1+b");
  EXPECT_EQ(r.code, 0);
  r = run("field 3,4,1 --unit 2");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("field").code, 64);
  EXPECT_EQ(run("expand 1,1 '1+'").code, 64);
  EXPECT_EQ(run("field 1,2,3").code, 2);   // not Pisot
  EXPECT_EQ(run("field 0,1").code, 2);     // reducible
  EXPECT_EQ(run("expand 1,1 2").code, 2);  // outside [0,1)
  EXPECT_EQ(run("coding 2,2").code, 2);    // not a unit
  EXPECT_EQ(run("--set seed=-3 field 1,1").code, 64);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, JsonIsDeterministic) {
  const CliResult a = run("--json --seed 4 sample 1,0,0,1 -n 40");
  const CliResult b = run("--json --seed 4 sample 1,0,0,1 -n 40");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_EQ(j["config"]["seed"], 4);
  EXPECT_EQ(j["result"]["digits"].size(), 40u);
  const CliResult c = run("--json sample 1,0,0,1 -n 40", "PISOT_SEED=4");
  EXPECT_EQ(c.out, a.out);
  const CliResult d = run("--json --seed 5 sample 1,0,0,1 -n 40", "PISOT_SEED=4");
  EXPECT_NE(d.out, a.out);
  const CliResult e = run("--json coding 1,1 --simulate --trials 300");
  EXPECT_EQ(e.out, run("--json coding 1,1 --simulate --trials 300").out);
}

TEST(Cli, ConfigFile) {
  const std::string path = temp_path("pisot_test.cfg");
  {
    std::ofstream o(path);
    o << "seed = 4\nformat = json\n";
  }
  const CliResult a = run("--config " + path + " sample 1,0,0,1 -n 40");
  EXPECT_EQ(a.out, run("--json --seed 4 sample 1,0,0,1 -n 40").out);
  EXPECT_EQ(run("--config /nonexistent/x.cfg field 1,1").code, 64);
}

TEST(Cli, CertificateFileRoundTrip) {
  const std::string path = temp_path("pisot_cert.json");
  EXPECT_EQ(run("wf-check 1,0,0,1 --out " + path).code, 0);
  const CliResult v = run("wf-check 1,0,0,1 --verify " + path);
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.out, "valid\n");
  // A tampered witness is rejected.
  std::ifstream in(path);
  Json j = Json::parse(in);
  j["records"][0]["f"] = "1|";
  {
    std::ofstream o(path);
    o << j.dump(2);
  }
  EXPECT_EQ(run("wf-check 1,0,0,1 --verify " + path).code, 2);
}
