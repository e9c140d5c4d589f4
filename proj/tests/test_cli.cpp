#include <doctest.h>

#include <sstream>

#include "nilzeta/cli.hpp"

using namespace nilzeta;

namespace {

std::string fixture(const std::string& name) { return std::string(NILZETA_FIXTURES) + "/" + name; }

struct Run {
    int rc;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

} // namespace

TEST_CASE("oracle on an abelian ring") {
    auto r = run({"oracle", fixture("abelian3.json"), "-p", "2", "-K", "3"});
    CHECK(r.rc == kExitOk);
    CHECK(r.out.find("\n1\t7\n") != std::string::npos);
    CHECK(r.out.find("\n3\t155\n") != std::string::npos);
}

TEST_CASE("oracle budget exit code") {
    auto r = run({"oracle", fixture("block_odd1.json"), "-p", "2", "-K", "4", "--budget", "5"});
    CHECK(r.rc == kExitBudget);
}

TEST_CASE("walk on the conic agrees with the curve formula") {
    auto r = run({"compare", fixture("conic.json"), "-p", "5", "-K", "6", "--paths", "walk,formula"});
    CHECK(r.rc == kExitOk);
    CHECK(r.out.find("MISMATCH") == std::string::npos);
    auto w = run({"walk", fixture("conic.json"), "-p", "5", "-K", "2"});
    CHECK(w.rc == kExitOk);
    CHECK(w.out.find("# walk p=5") == 0);
}

TEST_CASE("compare on du Sautoy's curve") {
    auto r = run({"compare", fixture("dusautoy_D1.json"), "-p", "5", "-K", "7", "--paths", "walk,formula"});
    CHECK(r.rc == kExitOk);
    CHECK(r.out.find("MISMATCH") == std::string::npos);
}

TEST_CASE("three paths on the odd block and the corrupted formula") {
    auto ok = run({"compare", fixture("block_odd1.json"), "-p", "2", "-p", "3", "-K", "3"});
    CHECK(ok.rc == kExitOk);
    CHECK(ok.out.find("1\t7\t7\t7\tok") != std::string::npos);
    auto bad = run({"compare", fixture("corrupted_prop32.json"), "-p", "2", "-K", "3"});
    CHECK(bad.rc == kExitMismatch);
    CHECK(bad.out.find("MISMATCH") != std::string::npos);
}

TEST_CASE("funeq") {
    auto r = run({"funeq", fixture("block_odd1.json")});
    CHECK(r.rc == kExitOk);
    CHECK(r.out.find("A: -X^1 Y^0") != std::string::npos);
    auto c = run({"funeq", fixture("dusautoy_D1.json")});
    CHECK(c.out.find("A_1: +X^3 Y^0") != std::string::npos);
    CHECK(c.out.find("A_2: +X^4 Y^0") != std::string::npos);
    CHECK(c.out.find("zeta (|C| -> p^-1 |C|): -p^(36 - 15s)") != std::string::npos);
}

TEST_CASE("csv output and determinism") {
    auto a = run({"walk", fixture("block_even_t.json"), "-p", "3", "-K", "4", "--format", "csv", "--jobs", "1"});
    auto b = run({"walk", fixture("block_even_t.json"), "-p", "3", "-K", "4", "--format", "csv", "--jobs", "4"});
    CHECK(a.rc == kExitOk);
    CHECK(a.out.find("p,k,A,zeta\n3,0,1,1\n") == 0);
    CHECK(a.out == b.out);
    auto c = run({"curve", fixture("conic.json"), "-p", "7", "--format", "csv"});
    CHECK(c.out == "p,points,smooth\n7,8,yes\n");
}

TEST_CASE("error exit codes") {
    CHECK(run({"oracle", fixture("malformed.json"), "-p", "2"}).rc == kExitInvalid);
    CHECK(run({"formula", fixture("raw_matrix.json"), "-p", "3"}).rc == kExitUnsupported);
    CHECK(run({"curve", fixture("r1.json"), "-p", "3"}).rc == kExitInvalid);
    CHECK(run({"nonsense"}).rc == kExitInvalid);
    CHECK(run({"oracle", fixture("missing.json"), "-p", "2"}).rc == kExitInvalid);
    CHECK(run({"--help"}).rc == kExitOk);
}
