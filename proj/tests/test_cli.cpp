#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    // A small sieve keeps the suite fast; every x below stays under it.
    setenv("CAREFREE_SIEVE_LIMIT", "200000", 1);
    args.insert(args.begin(), "carefree");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = carefree::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string temp_path(const char* name)
{
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("constants")
{
    const auto k1 = run({"constants", "--id", "K1", "--digits", "20", "--method", "zeta"});
    CHECK(k1.code == 0);
    CHECK(k1.out.find("0.42824950567709444022") != std::string::npos);

    const auto k3 = run({"constants", "--id", "K3", "--digits", "10"});
    CHECK(k3.code == 0);
    CHECK(k3.out.find("0.5697515829") != std::string::npos);

    const auto all = run({"constants", "--digits", "12", "--format", "json"});
    REQUIRE(all.code == 0);
    const auto j = nlohmann::json::parse(all.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 4);

    const auto pair = run({"constants", "--id", "K1,K2", "--digits", "8"});
    CHECK(pair.code == 0);
    CHECK(pair.out.find("K1 = 0.42824951") != std::string::npos);
    CHECK(pair.out.find("K2 = 0.28674743") != std::string::npos);
    CHECK(run({"constants", "--format", "csv"}).code == 1);
}

TEST_CASE("constants usage errors")
{
    CHECK(run({"constants", "--digits", "99"}).code == 1);
    CHECK(run({"constants", "--id", "K7"}).code == 1);
    CHECK(run({"constants", "--method", "guess"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("count")
{
    CHECK(run({"count", "--kind", "C1", "--x", "4", "--method", "brute"}).out == "9\n");
    CHECK(run({"count", "--kind", "C1", "--x", "4"}).out == "9\n");
    CHECK(run({"count", "--kind", "I3", "--x", "3"}).out == "13\n");
    CHECK(run({"count", "--kind", "I3", "--x", "3", "--method", "recursion"}).out == "13\n");
    CHECK(run({"count", "--kind", "C1", "--x", "0"}).out == "0\n");
    CHECK(run({"count", "--kind", "T", "--x", "20", "--d", "6"}).out == "7\n");
    CHECK(run({"count", "--kind", "Kernel", "--x", "10"}).out == "41\n");
    CHECK(run({"count", "--kind", "IkU", "--x", "3", "--k", "3"}).out == "13\n");

    const auto lemma = run({"count", "--kind", "Lemma2", "--x", "4"});
    CHECK(lemma.code == 0);
    CHECK(lemma.out.find("19/6") != std::string::npos);
    CHECK(lemma.out.find("16/3") != std::string::npos);

    CHECK(run({"count", "--kind", "C1"}).code == 1);
    CHECK(run({"count", "--kind", "C9", "--x", "4"}).code == 1);
    CHECK(run({"count", "--kind", "I3", "--x", "5000"}).code == 2);  // over the formula cap
    CHECK(run({"count", "--kind", "C1", "--x", "300000"}).code == 2); // over the sieve limit
}

TEST_CASE("scan")
{
    const auto csv = run({"scan", "--kind", "C1", "--from", "1000", "--to", "100000", "--points", "5", "--format",
                          "csv"});
    REQUIRE(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "kind,x,count,density,target,abs_error,scaled_error,method");
    int rows = 0;
    while (std::getline(lines, line))
        ++rows;
    CHECK(rows == 5);

    const auto text = run({"scan", "--kind", "I2", "--from", "100", "--to", "10000", "--points", "3"});
    CHECK(text.code == 0);
    CHECK(text.out.find("slope") != std::string::npos);

    const auto failed = run({"scan", "--kind", "I3", "--from", "1000", "--to", "3000", "--points", "2", "--format",
                             "csv"});
    CHECK(failed.code == 2);
    CHECK(failed.out.find("failed") != std::string::npos);
}

TEST_CASE("scan to a file as JSON")
{
    const std::string path = temp_path("carefree_cli_scan.json");
    const auto r = run({"scan", "--kind", "C2", "--from", "10", "--to", "1000", "--points", "3", "--format", "json",
                        "--output", path});
    REQUIRE(r.code == 0);
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    REQUIRE(j.size() == 3);
    CHECK(j[0]["kind"] == "C2");
    std::filesystem::remove(path);
}

TEST_CASE("montecarlo")
{
    const std::vector<std::string> args{"montecarlo", "--event", "carefree", "--range", "1000000",
                                        "--samples", "20000", "--seed", "5"};
    const auto a = run(args);
    REQUIRE(a.code == 0);
    auto b_args = args;
    b_args.insert(b_args.end(), {"--threads", "3"});
    CHECK(run(b_args).out == a.out);

    CHECK(run({"montecarlo", "--event", "dice"}).code == 1);
    CHECK(run({"montecarlo", "--event", "coprime", "--samples", "0"}).code == 1);
    CHECK(run({"montecarlo", "--event", "carefree", "--range", "100000001", "--samples", "10"}).code == 2);

    const auto j = run({"montecarlo", "--event", "coprime", "--samples", "1000", "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["samples"] == 1000);
}

TEST_CASE("repeated runs give identical bytes")
{
    const std::vector<std::string> scan{"scan", "--kind", "C3", "--from", "100", "--to", "20000", "--points", "4",
                                        "--format", "csv"};
    CHECK(run(scan).out == run(scan).out);
    const std::vector<std::string> consts{"constants", "--digits", "25", "--format", "json"};
    CHECK(run(consts).out == run(consts).out);
}

TEST_CASE("selftest with a corrupt sieve cache fails with a computation error")
{
    const std::string path = temp_path("carefree_cli_bad_cache.bin");
    {
        std::ofstream f(path, std::ios::binary);
        f << "not a sieve";
    }
    const auto r = run({"selftest", "--quick", "--sieve-cache", path});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    std::filesystem::remove(path);
}

TEST_CASE("invalid sieve limit in the environment")
{
    setenv("CAREFREE_SIEVE_LIMIT", "12abc", 1);
    const char* argv[] = {"carefree", "count", "--kind", "C1", "--x", "10"};
    std::ostringstream out, err;
    CHECK(carefree::cli::run(6, argv, out, err) == 1);
    setenv("CAREFREE_SIEVE_LIMIT", "200000", 1);
}
