#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string command = std::string(VAXFRONT_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("compute")
    {
        const Run full = run("compute --model cycle12 --eta 1,1,1,1,1,1,1,1,1,1,1,1");
        REQUIRE(full.code == 0);
        CHECK(nlohmann::json::parse(full.out).at("re").get<double>() == doctest::Approx(2.0));

        const Run cordon = run("compute --model cycle12 --eta 1,1,1,0,1,1,1,0,1,1,1,0");
        REQUIRE(cordon.code == 0);
        const auto doc = nlohmann::json::parse(cordon.out);
        CHECK(doc.at("re").get<double>() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(doc.at("cost").get<double>() == doctest::Approx(0.25));
        CHECK(run("compute --model cycle12 --eta 1,1,1,0,1,1,1,0,1,1,1,0").out == cordon.out);
    }

    TEST_CASE("input errors exit with 2")
    {
        CHECK(run("compute --model cycle12 --eta 1,1").code == 2);
        CHECK(run("compute --model cycle12 --eta 1,x,1").code == 2);
        CHECK(run("compute --model no-such-model --eta 1").code == 2);
        CHECK(run("frontier --model cycle12 --resolution 1").code == 2);
        CHECK(run("no-such-command").code == 2);
        CHECK(run("cstar --model two-block --cost affine --coefficients 1").code == 2);
    }

    TEST_CASE("structure commands")
    {
        const auto cstar = nlohmann::json::parse(run("cstar --model cycle12").out);
        CHECK(cstar.at("cstar").get<double>() == doctest::Approx(0.5));
        CHECK(cstar.at("set").size() == 6);

        const auto dec = nlohmann::json::parse(run("decompose --model two-block").out);
        CHECK(dec.at("atoms").size() == 2);

        const auto cls = nlohmann::json::parse(run("classify --model positive-definite").out);
        CHECK(cls.at("verdict") == "Convex");
        CHECK(cls.at("inertia") == nlohmann::json::array({3, 0}));
    }

    TEST_CASE("frontier csv")
    {
        const auto path = std::filesystem::temp_directory_path() / "vaxfront_frontier.csv";
        REQUIRE(run("frontier --model two-block --resolution 4 --kind pareto --out " + path.string()).code == 0);
        FILE* f = std::fopen(path.c_str(), "r");
        REQUIRE(f != nullptr);
        std::array<char, 256> line{};
        REQUIRE(std::fgets(line.data(), line.size(), f) != nullptr);
        CHECK(std::string(line.data()).rfind("# seed=0 resolution=4", 0) == 0);
        REQUIRE(std::fgets(line.data(), line.size(), f) != nullptr);
        CHECK(std::string(line.data()) == "cost,loss,strategy,kind,status\n");
        REQUIRE(std::fgets(line.data(), line.size(), f) != nullptr);
        CHECK(std::string(line.data()).rfind("0,3,1;1,pareto,", 0) == 0);
        std::fclose(f);
        std::filesystem::remove(path);
    }

    TEST_CASE("verify-paper")
    {
        const Run subset = run("verify-paper --only eigen,cycle");
        CHECK(subset.code == 0);
        CHECK(subset.out.find("PASS  1 eigen") != std::string::npos);
        CHECK(subset.out.find("PASS  3 cycle") != std::string::npos);
        CHECK(subset.out.find("saddle") == std::string::npos);

        const Run faulty = run("verify-paper --only eigen,cycle --inject-fault");
        CHECK(faulty.code == 1);
        CHECK(faulty.out.find("FAIL") != std::string::npos);

        CHECK(run("verify-paper --only bogus").code == 2);
    }
}
