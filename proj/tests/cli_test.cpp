#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "endokit/cli.hpp"

using namespace endokit;

namespace {

const std::string specs = ENDOKIT_SPEC_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Spec, Builtin) {
  auto s = parse_spec("# comment\nname = mine\nbuiltin = GL 3\n");
  EXPECT_EQ(s.name, "mine");
  EXPECT_EQ(s.form.datum().rank(), 3u);
  EXPECT_EQ(s.form.order(), 1u);
}

TEST(Spec, ExplicitRootsMatchBuiltin) {
  auto s = parse_spec_file(specs + "/gl2_explicit.spec");
  auto b = parse_spec_file(specs + "/gl2.spec");
  EXPECT_EQ(s.form.datum().num_roots(), b.form.datum().num_roots());
  EXPECT_EQ(enumerate_elliptic(s.form, 2).size(), enumerate_elliptic(b.form, 2).size());
}

TEST(Spec, DefaultBase) {
  auto s = parse_spec("rank = 3\nroot = 1 -1 0 | 1 -1 0\nroot = -1 1 0 | -1 1 0\nroot = 0 1 -1 | 0 1 -1\n"
                      "root = 0 -1 1 | 0 -1 1\nroot = 1 0 -1 | 1 0 -1\nroot = -1 0 1 | -1 0 1\n");
  EXPECT_EQ(s.form.datum().base().size(), 2u);
  EXPECT_EQ(WeylGroup(s.form.datum()).size(), 6u);
}

TEST(Spec, Flip) {
  auto s = parse_spec_file(specs + "/u3.spec");
  EXPECT_EQ(s.form.order(), 2u);
  EXPECT_EQ(relative_roots(s.form).count(), 1u);
}

TEST(Spec, ErrorsCarryLine) {
  try {
    parse_spec("name = x\nbuiltin = GL 2\ngamma = 2 : 1 0 ; 0 x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  try {
    parse_spec("rank = 2\nroot = 1 -1 | 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(parse_spec("bogus = 1\n"), ParseError);
  EXPECT_THROW(parse_spec_file(specs + "/missing.spec"), UsageError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"validate", specs + "/gl3.spec"}).code, 0);
  EXPECT_EQ(run({"acceptable", specs + "/gl2.spec", "--nu", "1/2,-1/2", "--w", "5,0"}).code, 0);
  EXPECT_EQ(run({"acceptable", specs + "/gl2.spec", "--nu", "1/2,-1/2", "--w", "0,0"}).code, 1);
  EXPECT_EQ(run({"validate", specs + "/gl3.spec", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"kottwitz", specs + "/gl3.spec", "--mu", "1,0"}).code, 2);
  EXPECT_EQ(run({"kottwitz", specs + "/gl3.spec", "--mu", "0,0,1"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"kottwitz", specs + "/nope.spec", "--mu", "1,0"}).code, 2);
}

TEST(Cli, Listings) {
  auto r = run({"endoscopy", specs + "/u3.spec"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
  auto k = run({"kottwitz", specs + "/gl3.spec", "--mu", "1,0,0", "--format", "json"});
  ASSERT_EQ(k.code, 0);
  EXPECT_EQ(nlohmann::json::parse(k.out)["rows"].size(), 3u);
  auto s = run({"sum-check", specs + "/u3.spec", "--mu", "1,0,0"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out.find("residual"), std::string::npos);
  auto i = run({"induction-check", specs + "/gl3.spec", "--levi", "0", "--mu", "1,0,0", "--b", "1"});
  EXPECT_EQ(i.code, 0) << i.err;
  auto f = run({"fiber", specs + "/gl3.spec", "--levi", "-", "--class", "0"});
  EXPECT_EQ(f.code, 0) << f.err;
}

TEST(Cli, JobsDoNotChangeOutput) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sum-check", specs + "/gl4.spec", "--mu", "1,1,0,0", "--all"},
           {"endoscopy", specs + "/gl4.spec", "--all"},
           {"kottwitz", specs + "/u3.spec", "--mu", "1,1,0"}}) {
    auto a = args, b = args;
    a.insert(a.end(), {"--jobs", "1"});
    b.insert(b.end(), {"--jobs", "8"});
    auto ra = run(a), rb = run(b);
    EXPECT_EQ(ra.code, rb.code);
    EXPECT_EQ(ra.out, rb.out);
  }
}

TEST(Cli, Binary) {
  std::string tmp = ::testing::TempDir() + "endokit_cli_out.txt";
  std::string cmd = std::string("\"") + ENDOKIT_CLI + "\" kottwitz " + specs + "/gl2.spec --mu 1,0 > " + tmp;
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run({"kottwitz", specs + "/gl2.spec", "--mu", "1,0"}).out);
  std::remove(tmp.c_str());
}
