#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

namespace {

struct Result {
  int status;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

// Runs the CLI with `args` (already quoted), capturing stdout.
Result vptk(const std::string& args) {
  const std::string cmd = quote(VPTK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string model(const char* name) { return quote(std::string(VPTK_MODELS_DIR) + "/" + name); }

}  // namespace

TEST_CASE("cli run") {
  auto r = vptk("run " + model("mirror.h2s") + " 'a b'");
  CHECK(r.status == 0);
  CHECK(r.out == "b a\n");

  r = vptk("run " + model("t2.h2s") + " 'f(a b c d)'");
  CHECK(r.status == 0);
  CHECK(r.out.find("c_f c_a r_a c_# c_b r_b c_c r_c r_# c_d r_d r_f\n") != std::string::npos);
  CHECK(r.out.find("c_f c_# c_a r_a c_b r_b r_# c_# c_c r_c c_d r_d r_# r_f\n") !=
        std::string::npos);

  r = vptk("run " + model("copy.vpt") + " 'c_a r_b'");
  CHECK(r.status == 1);
  CHECK(r.out.empty());

  CHECK(vptk("run " + model("copy.vpt") + " 'zz'").status == 2);
  CHECK(vptk("run " + model("mirror.h2s") + " 'a(b'").status == 2);
  CHECK(vptk("run builtin:mirror:a,b 'a a b'").out == "b a a\n");
  CHECK(vptk("run " + model("mirror.h2s") + " --as-word 'c_a r_a c_b r_b'").out == "b a\n");
}

TEST_CASE("cli translate and check") {
  const auto dir = std::filesystem::temp_directory_path() / "vptk_cli_test";
  std::filesystem::create_directories(dir);
  const std::string out_vpt = quote((dir / "out.vpt").string());
  const std::string out_h2s = quote((dir / "out.h2s").string());

  CHECK(vptk("translate 'h2s→vpt' " + model("mirror.h2s") + " " + out_vpt).status == 2);
  CHECK(vptk("translate 'h2s→vpt⊥' " + model("mirror.h2s") + " " + out_vpt).status == 0);
  auto r = vptk("equiv " + out_vpt + " " + model("mirror.h2s") + " --fcns --bound 6");
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("equivalent up to bound"));

  CHECK(vptk("translate 'vpt→h2s' " + model("copy.vpt") + " " + out_h2s).status == 0);
  r = vptk("check tr " + out_h2s);
  CHECK(r.status == 0);
  CHECK(r.out == "yes\n");

  r = vptk("check h2h " + model("t2.h2s"));
  CHECK(r.status == 1);
  CHECK(r.out == "no\n");
  CHECK(vptk("check tr " + model("mirror.h2s")).out == "no\n");
  CHECK(vptk("check wn " + model("copy.vpt")).out == "yes\n");
  CHECK(vptk("check h2b " + model("t2.h2s")).status == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("cli equiv") {
  auto r = vptk("equiv " + model("mirror.h2s") + " " + model("flatten.h2s") + " --bound 3");
  CHECK(r.status == 3);
  CHECK(r.out.find("input: a\n") != std::string::npos);
  r = vptk("equiv " + model("mirror.h2s") + " builtin:mirror:a,b --bound 2 --format records");
  CHECK(r.status == 0);
  CHECK(r.out.starts_with("ε\t1\t1\tmatch\n"));
}

TEST_CASE("cli encode") {
  CHECK(vptk("encode fcns 'c r'").out == "c ⊥c ⊥r ⊥c ⊥r r\n");
  CHECK(vptk("encode fcns-inv 'c ⊥c ⊥r ⊥c ⊥r r'").out == "c r\n");
  CHECK(vptk("encode lin 'a(b) c'").out == "c_a c_b r_b r_a c_c r_c\n");
  CHECK(vptk("encode hedge 'c r'").out == "c/r\n");
  CHECK(vptk("encode hedge 'x y' --calls x --returns y").out == "x/y\n");
  CHECK(vptk("encode fcns-tree 'a b'").out == "a(_ b(_ _))\n");
  CHECK(vptk("encode fcns 'c'").status == 2);
}

TEST_CASE("cli witness and enum") {
  auto r = vptk("witness --max-n 8");
  CHECK(r.status == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 9);
  CHECK(vptk("witness --max-n 3 --format records").out.starts_with("1\t1\t2\t4\t3\t3\n"));

  CHECK(vptk("enum hedges --labels a --bound 2").out == "ε\na\na a\na(a)\n");
  CHECK(vptk("enum words --bound 4").out == "ε\nc r\nc r c r\nc c r r\n");
  const auto a = vptk("enum random-vpt --seed 5");
  CHECK(a.out == vptk("enum random-vpt --seed 5").out);
  CHECK(a.out.starts_with("vpt\n"));
  CHECK(vptk("enum random-h2s --flavor h2b --seed 1").out.starts_with("h2s extended\n"));
}

TEST_CASE("cli usage errors") {
  CHECK(vptk("").status == 2);
  CHECK(vptk("frobnicate").status == 2);
  CHECK(vptk("translate sideways " + model("mirror.h2s") + " -").status == 2);
  CHECK(vptk("--help").status == 0);
}
