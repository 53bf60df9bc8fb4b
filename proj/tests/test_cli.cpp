#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "satset/bounds.hpp"
#include "satset/cli.hpp"
#include "satset/matrix_io.hpp"

using namespace satset;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "satset_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("construct writes verified files") {
    const fs::path prefix = scratch("r3q5");
    const Run r = invoke({"construct", "--R", "3", "--q", "5", "--out", prefix.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("saturation=2 radius=3") != std::string::npos);
    const auto record = nlohmann::json::parse(slurp(prefix.string() + ".json"));
    CHECK(record["schema"] == 1);
    CHECK(record["config"]["q"] == 5);
    CHECK(record["certificate"]["covering_radius"] == 3);
    CHECK(record["points"].size() == record["n"]);
    CHECK(record["invariants"]["violations"].empty());
    CHECK(record.contains("monitoring"));

    const Run v = invoke({"verify", prefix.string() + ".pchk", "--amds", "--covering-radius", "3", "--saturation", "2"});
    CHECK(v.code == 0);
    const Run d = invoke({"verify", prefix.string() + ".pchk", "--distance", "3"});
    CHECK(d.code == 3);
    CHECK(d.err.find("dependent columns") != std::string::npos);
  }

  TEST_CASE("construct preconditions") {
    const Run q6 = invoke({"construct", "--R", "3", "--q", "6", "--out", scratch("x").string()});
    CHECK(q6.code == 2);
    CHECK(q6.err.find("not a prime power") != std::string::npos);
    const Run r2 = invoke({"construct", "--R", "2", "--q", "5", "--out", scratch("x").string()});
    CHECK(r2.code == 2);
    CHECK(r2.err.find("R >= 3 required") != std::string::npos);
    const Run big = invoke({"construct", "--R", "6", "--q", "64", "--out", scratch("x").string()});
    CHECK(big.code == 4);
    const Run capped = invoke({"construct", "--R", "3", "--q", "13", "--max-steps", "1", "--out", scratch("x").string()});
    CHECK(capped.code == 4);
    CHECK(invoke({"construct", "--leading", "best"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
  }

  TEST_CASE("output is independent of thread count and repeatable") {
    const fs::path a = scratch("t1"), b = scratch("t4"), c = scratch("t1again");
    REQUIRE(invoke({"construct", "--R", "3", "--q", "9", "--threads", "1", "--out", a.string()}).code == 0);
    REQUIRE(invoke({"construct", "--R", "3", "--q", "9", "--threads", "4", "--out", b.string()}).code == 0);
    REQUIRE(invoke({"construct", "--R", "3", "--q", "9", "--threads", "1", "--out", c.string()}).code == 0);
    CHECK(slurp(a.string() + ".pchk") == slurp(b.string() + ".pchk"));
    CHECK(slurp(a.string() + ".pchk") == slurp(c.string() + ".pchk"));
  }

  TEST_CASE("verify expectations on the binary repetition code") {
    const fs::path p = scratch("rep.pchk");
    write(p, "# [3,1,3] binary\n2 3 2\n-\n1 0 1\n0 1 1\n");
    CHECK(invoke({"verify", p.string(), "--covering-radius", "1"}).code == 0);
    const Run bad = invoke({"verify", p.string(), "--covering-radius", "2"});
    CHECK(bad.code == 3);
    CHECK(bad.err.find("syndrome") != std::string::npos);
    CHECK(invoke({"verify", p.string(), "--amds"}).code == 3);
    CHECK(invoke({"verify", p.string(), "--distance", "3", "--saturation", "0"}).code == 0);
  }

  TEST_CASE("parse errors carry line and column") {
    const fs::path p = scratch("broken.pchk");
    write(p, "5 3 2\n-\n1 0 1\n0 7 1\n");
    const Run r = invoke({"verify", p.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 4, column 3") != std::string::npos);
    CHECK_THROWS_AS((void)io::parse_pchk("4 2 1\n-\n1 2\n"), io::ParseError);
    CHECK_THROWS_AS((void)io::parse_pchk("4 2 1\n1 1 0\n1 2\n"), io::ParseError);
    CHECK_THROWS_AS((void)io::parse_pchk("6 2 1\n-\n1 2\n"), io::ParseError);
    CHECK_THROWS_AS((void)io::parse_pchk("5 2 2\n-\n1 2\n"), io::ParseError);
    CHECK_THROWS_AS((void)io::parse_pchk("5 2 1\n-\n1 2\n3 3\n"), io::ParseError);
    CHECK_THROWS_AS((void)io::parse_pchk("5 2 1\n# late\n-\n1 2\n"), io::ParseError);
    try {
      (void)io::parse_pchk("5 2 1\n-\n1 x\n");
    } catch (const io::ParseError& e) {
      CHECK(e.line == 3);
      CHECK(e.column == 3);
    }
    CHECK(invoke({"verify", scratch("missing.pchk").string()}).code == 2);
  }

  TEST_CASE("matrix text round-trips") {
    const std::string text = "# c\n4 3 2\n1 1 1\n1 0 3\n0 1 2\n";
    const auto H = io::parse_pchk(text);
    CHECK(H.q == 4);
    CHECK(H.at(1, 2) == 2);
    CHECK(io::write_pchk(H, {"c"}) == text);
    CHECK(io::parse_pchk(io::write_pchk(H)) == H);
    const fs::path prefix = scratch("rt");
    REQUIRE(invoke({"construct", "--R", "4", "--q", "4", "--out", prefix.string()}).code == 0);
    const std::string written = slurp(prefix.string() + ".pchk");
    const auto parsed = io::parse_pchk(written);
    const std::string header = written.substr(0, written.find('\n') + 1);
    CHECK(io::write_pchk(parsed, {header.substr(2, header.size() - 3)}) == written);
  }

  TEST_CASE("bounds command") {
    const Run t1 = invoke({"bounds", "--table1"});
    CHECK(t1.code == 0);
    CHECK(t1.out == bounds::emit_table1());
    const Run t2 = invoke({"bounds", "--table2"});
    CHECK(t2.out.find("10,0.7178,") != std::string::npos);
    const Run rep = invoke({"bounds", "--report", "--R", "3", "--q", "5", "--t", "2"});
    CHECK(rep.code == 0);
    const auto j = nlohmann::json::parse(rep.out);
    CHECK(j["length_bound"].get<double>() > 0);
    CHECK(invoke({"bounds"}).code == 2);
    CHECK(invoke({"bounds", "--report", "--R", "2"}).code == 2);
    const fs::path out = scratch("t1.csv");
    CHECK(invoke({"bounds", "--table1", "--out", out.string()}).code == 0);
    CHECK(slurp(out) == bounds::emit_table1());
  }

  TEST_CASE("lift command") {
    const Run one = invoke({"lift", "--n0", "5", "--r0", "4", "--q", "4", "--R", "3", "--m", "1"});
    CHECK(one.code == 0);
    const auto j = nlohmann::json::parse(one.out);
    CHECK(j["n"] == 35);
    CHECK(j["r"] == 7);
    const Run bad = invoke({"lift", "--n0", "9", "--r0", "4", "--q", "7", "--R", "3", "--m", "1"});
    CHECK(bad.code != 0);
    CHECK(bad.err.find("q+1") != std::string::npos);
    CHECK(invoke({"lift", "--n0", "5"}).code == 2);

    const fs::path prefix = scratch("base13");
    REQUIRE(invoke({"construct", "--R", "3", "--q", "13", "--out", prefix.string()}).code == 0);
    const Run fam = invoke({"lift", "--base", prefix.string() + ".pchk", "--t-max", "4"});
    CHECK(fam.code == 0);
    const auto f = nlohmann::json::parse(fam.out);
    REQUIRE(f["entries"].size() == 3);
    CHECK(f["entries"][2]["r"] == 13);

    const fs::path small = scratch("base5");
    REQUIRE(invoke({"construct", "--R", "3", "--q", "5", "--out", small.string()}).code == 0);
    const Run none = invoke({"lift", "--base", small.string() + ".pchk", "--t-max", "4"});
    CHECK(none.code == 2);
    CHECK(nlohmann::json::parse(none.out)["entries"].empty());
  }
}
