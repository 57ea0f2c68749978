#include "zerolab/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = zerolab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string measure(const std::string& name) { return std::string(ZEROLAB_DATA_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

std::vector<std::string> fields(const std::string& line)
{
    std::vector<std::string> v;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) v.push_back(f);
    if (!line.empty() && line.back() == ',') v.emplace_back();
    return v;
}

std::vector<std::vector<std::string>> data_rows(const std::string& csv)
{
    std::vector<std::vector<std::string>> rows;
    bool header = false;
    for (const auto& l : lines(csv)) {
        if (l.empty() || l[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        rows.push_back(fields(l));
    }
    return rows;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("zerolab_cli_" + std::to_string(::getpid())))
    {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("zeros of a pure tone")
{
    const auto r = run({"zeros", "--measure", measure("tone.json"), "--T", "100", "--samples", "10", "--seed", "1"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).front() == "seed,T,N,N_over_T");
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 10);
    for (const auto& row : rows) {
        REQUIRE(row.size() == 4);
        const long n = std::stol(row[2]);
        CHECK((n == 31 || n == 32));
    }
}

TEST_CASE("runs are deterministic")
{
    const std::vector<std::string> args{"zeros", "--measure", measure("uniform01.json"), "--T", "40",
                                        "--samples", "20", "--seed", "7"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto w = args;
    w.insert(w.end(), {"--workers", "3"});
    CHECK(run(w).out == a.out);
    auto other = args;
    other[8] = "8";
    CHECK(run(other).out != a.out);
}

TEST_CASE("validation errors exit with 2")
{
    const auto bad = run({"zeros", "--measure", R"({"atoms":[{"lambda":1,"mass":0.7}],"normalize":false})", "--T",
                          "10", "--samples", "3", "--seed", "1"});
    CHECK(bad.code == 2);
    const auto err = json::parse(bad.err);
    CHECK(err.at("exit_code") == 2);
    CHECK(err.at("error") == "InvalidMeasure");
    CHECK(err.at("message").get<std::string>().find("total mass") != std::string::npos);

    const auto fixed = run({"zeros", "--measure", R"({"atoms":[{"lambda":1,"mass":0.7}],"normalize":true})", "--T",
                            "10", "--samples", "3", "--seed", "1"});
    CHECK(fixed.code == 0);

    CHECK(run({"zeros", "--measure", measure("tone.json"), "--T", "10", "--samples", "3"}).code == 2);
    CHECK(run({"zeros", "--measure", measure("missing.json"), "--T", "10", "--samples", "3", "--seed", "1"}).code
          == 2);
    CHECK(run({"jensen", "--measure", measure("tone.json"), "--T", "5", "--paths", "1", "--seed", "1"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("scan header markers")
{
    const auto r = run({"scan", "--measure", measure("uniform12.json"), "--T", "10", "--eta", "0.2,0.5",
                        "--samples", "100", "--seed", "1"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() >= 5);
    CHECK(l[0] == "# zerolab-csv/1");
    auto marker = [&](const std::string& line, const std::string& key) {
        REQUIRE(line.rfind("# " + key + "=", 0) == 0);
        return std::stod(line.substr(key.size() + 3));
    };
    CHECK(marker(l[1], "B/pi") == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(marker(l[2], "gamma/pi") == doctest::Approx(std::sqrt(7.0 / 3.0) / std::numbers::pi).epsilon(1e-12));
    CHECK(marker(l[3], "A/pi") == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(data_rows(r.out).size() == 2);

    const auto empty = run({"scan", "--measure", measure("uniform12.json"), "--T", "10", "--eta", "", "--samples",
                            "100", "--seed", "1"});
    CHECK(empty.code == 2);
    const auto outside = run({"scan", "--measure", measure("uniform12.json"), "--T", "10", "--eta", "1.5",
                              "--samples", "100", "--seed", "1"});
    CHECK(outside.code == 2);
}

TEST_CASE("pure tone scan is a step")
{
    const auto r = run({"scan", "--measure", measure("tone.json"), "--T", "100", "--eta", "0.1,0.2,0.3,0.35,0.5,0.6",
                        "--samples", "100", "--seed", "3"});
    REQUIRE(r.code == 0);
    const auto rows = data_rows(r.out);
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        const double eta = std::stod(row[1]);
        const double p = std::stod(row[5]);
        // 31 or 32 zeros on [0, 100].
        CHECK(p == (eta * 100.0 <= 31.0 ? 1.0 : 0.0));
    }
}

TEST_CASE("other subcommands")
{
    const auto spec = run({"spec", "--measure", measure("gap_mixed.json")});
    REQUIRE(spec.code == 0);
    const auto j = json::parse(spec.out);
    CHECK(j.at("support").at("A").get<double>() == doctest::Approx(2.5));
    CHECK(j.at("support").at("B").get<double>() == doctest::Approx(1.0));

    const auto sample = run({"sample", "--measure", measure("uniform01.json"), "--T", "5", "--points", "11",
                             "--seed", "2"});
    REQUIRE(sample.code == 0);
    CHECK(data_rows(sample.out).size() == 11);

    const auto couple = run({"couple", "--measure", measure("uniform12.json"), "--T", "30", "--triples", "5",
                             "--seed", "2"});
    REQUIRE(couple.code == 0);
    for (const auto& row : data_rows(couple.out)) {
        CHECK(std::stod(row[1]) < 1e-9);
        CHECK(std::stod(row[2]) < 1e-9);
        CHECK(std::stol(row[7]) >= 0);
    }

    const auto jensen = run({"jensen", "--measure", measure("uniform01.json"), "--T", "20", "--eps", "0.3",
                             "--paths", "2", "--seed", "2"});
    REQUIRE(jensen.code == 0);
    for (const auto& row : data_rows(jensen.out)) CHECK(std::stod(row[4]) >= std::stod(row[3]));

    const auto tails = run({"tails", "--measure", measure("uniform01.json"), "--T", "10,20", "--eta", "0.2",
                            "--samples", "100", "--seed", "2"});
    REQUIRE(tails.code == 0);
    CHECK(data_rows(tails.out).size() == 2);
}

TEST_CASE("manifest replay round trip")
{
    TempDir dir;
    const auto out = (dir.path / "zeros.csv").string();
    const auto summary = (dir.path / "summary.csv").string();
    const auto r = run({"zeros", "--measure", measure("uniform01.json"), "--T", "30", "--samples", "8", "--seed",
                        "11", "--out", out, "--summary", summary});
    REQUIRE(r.code == 0);
    const auto manifest_path = out + ".manifest.json";
    REQUIRE(fs::exists(manifest_path));
    const auto m = json::parse(slurp(manifest_path));
    CHECK(m.at("schema") == zerolab::cli::kManifestSchema);
    CHECK(m.at("subcommand") == "zeros");
    CHECK(m.at("seed") == 11);
    CHECK(m.contains("versions"));
    CHECK(m.contains("wall_time_seconds"));

    const auto first = slurp(out);
    const auto first_summary = slurp(summary);
    fs::remove(out);
    const auto again = run({"replay", "--manifest", manifest_path});
    REQUIRE(again.code == 0);
    CHECK(slurp(out) == first);
    CHECK(slurp(summary) == first_summary);

    const auto copy = (dir.path / "copy.csv").string();
    REQUIRE(run({"replay", "--manifest", manifest_path, "--out", copy}).code == 0);
    CHECK(slurp(copy) == first);

    CHECK(run({"replay", "--manifest", (dir.path / "none.json").string()}).code == 2);
}
