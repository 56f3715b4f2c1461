#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>
#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(GDISC_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    const int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path work_dir() {
    const fs::path d = fs::temp_directory_path() / "gdisc_cli_tests";
    fs::create_directories(d);
    return d;
}

std::string write(const std::string& name, const std::string& text) {
    const fs::path p = work_dir() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string state(const std::string& cov, const std::string& mean = "[0,0]") {
    return R"({"version":"v1","modes":1,"mean":)" + mean + R"(,"cov":)" + cov + "}";
}

}  // namespace

TEST_CASE("report on vacuum against a thermal state") {
    const std::string rho = write("vac.json", state("[[1,0],[0,1]]"));
    const std::string sig = write("th1.json", state("[[3,0],[0,3]]"));
    const Run r = run("report " + rho + " " + sig);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["case"] == "AchievableFinite");
    CHECK(j["dgmax"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(j["dmax"].get<double>() == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const Run c = run("report --format csv " + rho + " " + sig);
    CHECK(c.code == 0);
    CHECK(c.out.rfind("field,value\n", 0) == 0);
}

TEST_CASE("report on a gap pair") {
    const std::string rho = write("sq.json", state("[[4.8,0],[0,1.875]]"));
    const std::string sig = write("th2.json", state("[[5,0],[0,5]]"));
    const Run r = run("report " + rho + " " + sig);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["case"] == "Gap");
    CHECK(j["gap"].get<double>() > 0);
}

TEST_CASE("exit codes") {
    const std::string good = write("good.json", state("[[1,0],[0,1]]"));
    const std::string bad_row = write("badrow.json", state("[[1,0],[0]]"));
    const std::string sig = write("th3.json", state("[[3,0],[0,1]]"));
    const Run parse = run("report " + bad_row + " " + good);
    CHECK(parse.code == 1);
    CHECK(run("report /nonexistent.json " + good).code == 1);
    CHECK(run("report " + good + " " + good + " --tol-override bogus=1").code == 1);

    const Run dom = run("report " + good + " " + sig);
    CHECK(dom.code == 2);
    const auto j = nlohmann::json::parse(dom.out);
    CHECK(j["status"] == "domain_violation");
    CHECK(j.contains("offending_value"));

    CHECK(run("").code != 0);
    CHECK(run("datahide --eps 1e-4,abc").code == 1);
}

TEST_CASE("scan output is byte-identical across runs and thread caps") {
    const std::string a = (work_dir() / "scan_a.csv").string();
    const std::string b = (work_dir() / "scan_b.csv").string();
    REQUIRE(run("scan --n 2 --r-steps 31 --m-steps 17 --out " + a).code == 0);
    REQUIRE(run("scan --n 2 --r-steps 31 --m-steps 17 --out " + b).code == 0);
    const std::string cmd = std::string("GDISC_THREADS=3 ") + GDISC_CLI + " scan --n 2 --r-steps 31 --m-steps 17";
    FILE* p = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(p != nullptr);
    std::string threaded;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) threaded.append(buf.data(), n);
    CHECK(pclose(p) == 0);
    auto slurp = [](const std::string& path) {
        std::ifstream in(path);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == threaded);
    CHECK(slurp(a).rfind("r,m,n,a,b,mu,case,dgmax,dmax,gap,margin,interval_case\n", 0) == 0);

    const Run js = run("scan --n 0.5 --r-steps 3 --m-steps 2 --format json");
    REQUIRE(js.code == 0);
    CHECK(nlohmann::json::parse(js.out).size() == 6);
}

TEST_CASE("datahide rows") {
    const Run r = run("datahide --eps 1e-4 --kappa 100,1");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("identical_states") != std::string::npos);
    const Run j = run("datahide --eps 1e-4 --kappa 100 --format json");
    REQUIRE(j.code == 0);
    const auto rows = nlohmann::json::parse(j.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0]["gap"].get<double>() >= 2.2);
    CHECK(rows[0]["dgmax"].get<double>() <= 0.01);
}

TEST_CASE("certify exit status follows the checks") {
    CHECK(run("certify --cutoff 80").code == 0);
    const Run small = run("certify --cutoff 20");
    CHECK(small.code == 1);
    CHECK(small.out.find("hint") != std::string::npos);
}
