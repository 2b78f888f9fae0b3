#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

#ifndef QUATLAT_CLI
#error "QUATLAT_CLI must point at the built binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(QUATLAT_CLI) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

} // namespace

TEST_CASE("verify: match, mismatch and usage exit codes") {
    CHECK(run("verify --case 3,6 --p 2").exit_code == 0);
    CHECK(run("verify --case 5 --p 5").exit_code == 0);
    CHECK(run("verify --case 12 --p 3").exit_code == 0);
    auto mism = run("verify --case 3,6 --p 2 --expect 7");
    CHECK(mism.exit_code == 1);
    CHECK(mism.output.find("MISMATCH") != std::string::npos);
    CHECK(run("verify --case 7 --p 2").exit_code == 2);
    CHECK(run("verify --case 3 --p 11").exit_code == 2);
}

TEST_CASE("verify accepts fixture cases against the published row") {
    CHECK(run("verify --case 8 --p 3").exit_code == 0);   // fixture 4
    CHECK(run("verify --case 2,4 --p 5").exit_code == 0); // fixture 0
}

TEST_CASE("symmetry aliases resolve to canonical columns") {
    CHECK(run("verify --case 6 --p 3").exit_code == 0);    // o(6) = o(3) = 2
    CHECK(run("verify --case 1,6 --p 3").exit_code == 0);  // o(1,6) = o(2,3) = 1
}

TEST_CASE("table: totals and determinism of the machine format") {
    auto a = run("table --format json");
    CHECK(a.exit_code == 0);
    CHECK(a.output.find("\"schema_version\": \"1\"") != std::string::npos);
    CHECK(a.output.find("\"2\": 49") != std::string::npos);
    CHECK(a.output.find("\"3\": 45") != std::string::npos);
    CHECK(a.output.find("\"5\": 47") != std::string::npos);
    auto b = run("table --format json");
    CHECK(a.output == b.output);  // byte-identical
}

TEST_CASE("count emits a derivation trace") {
    auto r = run("count --case 2,6 --p 3 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"o\": 3") != std::string::npos);
    CHECK(r.output.find("double coset") != std::string::npos);
    CHECK(r.output.find("\"provenance\": \"computed\"") != std::string::npos);
}

TEST_CASE("units output") {
    auto r = run("units --p 2 --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"unit_order\": 24") != std::string::npos);
    CHECK(r.output.find("\"surjective\": true") != std::string::npos);
    auto r5 = run("units --p 5");
    CHECK(r5.exit_code == 0);
    CHECK(r5.output.find("order 6") != std::string::npos);
}

TEST_CASE("hilbert subcommand") {
    CHECK(run("hilbert -- -1 -3 3").output == "-1\n");
    CHECK(run("hilbert -- -1 -3 5").output == "1\n");
    CHECK(run("hilbert -- -1 -1 inf").output == "-1\n");
    CHECK(run("hilbert -- 0 1 2").exit_code == 2);
}

TEST_CASE("precision flag threads through") {
    CHECK(run("verify --case 3 --p 3 --precision 5").exit_code == 0);
    CHECK(run("count --case 4 --p 2 --precision 6").exit_code == 0);
}

TEST_CASE("malformed invocations are usage errors, help is not") {
    CHECK(run("").exit_code == 2);                    // missing subcommand
    CHECK(run("verify --p 2").exit_code == 2);        // missing --case
    CHECK(run("frobnicate").exit_code == 2);          // unknown subcommand
    CHECK(run("verify --case x,y --p 2").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}

TEST_CASE("verify emits the full trace before the verdict") {
    auto r = run("verify --case 2,6 --p 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("genera") != std::string::npos);
    CHECK(r.output.find("trace") != std::string::npos);
    CHECK(r.output.find("matches expected 3") != std::string::npos);
}

TEST_CASE("table values are stable under a precision bump") {
    auto a = run("table --format json --precision 4");
    auto b = run("table --format json --precision 5");
    auto ja = nlohmann::json::parse(a.output);
    auto jb = nlohmann::json::parse(b.output);
    CHECK(ja["rows"] == jb["rows"]);
    CHECK(ja["totals"] == jb["totals"]);
}

TEST_CASE("machine reports round-trip losslessly") {
    auto r = run("count --case 1,2 --p 2 --format json");
    auto j = nlohmann::json::parse(r.output);
    CHECK(nlohmann::json::parse(j.dump()) == j);
    CHECK(j["schema_version"] == "1");
}
