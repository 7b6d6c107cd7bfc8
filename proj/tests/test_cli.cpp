#include "dnls/io.hpp"
#include "dnls/soliton.hpp"
#include "support.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace dnls;
using namespace dnls::test;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir;

    Sandbox()
    {
        dir = fs::temp_directory_path() / ("dnls_cli_" + std::to_string(lab_seed()) + "_" + std::to_string(rng()()));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    // exit status of dnls_lab; stdout and stderr land in out.txt and err.txt
    int run(const std::string& args) const
    {
        std::string cmd = std::string("\"") + DNLS_LAB_BIN + "\" " + args + " > \"" + path("out.txt") + "\" 2> \""
            + path("err.txt") + "\"";
        int st = std::system(cmd.c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    }
    std::string out() const { return read_file(path("out.txt")); }
    std::string err() const { return read_file(path("err.txt")); }
};

std::string two_solitons()
{
    return serialize(ScatteringData::reflectionless(1, {{1.0 + I, 1.0}, {-1.0 + I, 0.5 + 0.3 * I}}));
}

} // namespace

TEST_CASE("verify plancherel succeeds")
{
    Sandbox s;
    CHECK(s.run("verify plancherel") == 0);
    CHECK(s.out().find("PASS") != std::string::npos);
}

TEST_CASE("reconstruct with no solitons gives a zero field")
{
    Sandbox s;
    write_file(s.path("d.json"), serialize(ScatteringData::reflectionless(1, {})));
    REQUIRE(s.run("reconstruct --input " + s.path("d.json") + " --grid -5,5,11") == 0);
    std::string csv = s.out();
    std::size_t rows = 0;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        ++rows;
        auto a = line.find(','), b = line.find(',', a + 1);
        CHECK(std::stod(line.substr(a + 1, b - a - 1)) == 0.0);
        CHECK(std::stod(line.substr(b + 1)) == 0.0);
    }
    CHECK(rows == 11);
}

TEST_CASE("reconstruct matches the library and is deterministic")
{
    Sandbox s;
    write_file(s.path("d.json"), two_solitons());
    REQUIRE(s.run("reconstruct --threads 1 --input " + s.path("d.json") + " --grid -4,4,9 --times 0.5") == 0);
    std::string first = s.out();
    REQUIRE(s.run("reconstruct --threads 1 --input " + s.path("d.json") + " --grid -4,4,9 --times 0.5") == 0);
    CHECK(s.out() == first);
    std::istringstream in(first);
    std::string line;
    std::getline(in, line);
    Pairs p{{1.0 + I, 1.0}, {-1.0 + I, 0.5 + 0.3 * I}};
    for (int j = 0; std::getline(in, line); ++j) {
        auto a = line.find(','), b = line.find(',', a + 1);
        cplx got(std::stod(line.substr(a + 1, b - a - 1)), std::stod(line.substr(b + 1)));
        CHECK(std::abs(got - q_sol_at(1, p, -4.0 + j, 0.5)) < 1e-12);
    }
}

TEST_CASE("asymptote outside the cone is rejected")
{
    Sandbox s;
    write_file(s.path("d.json"), two_solitons());
    CHECK(s.run("asymptote q --input " + s.path("d.json") + " --cone -1,1,-1,1 --times 10 --grid 30,40,11") == 1);
    CHECK(s.err().find("[x1, x2]") != std::string::npos);
}

TEST_CASE("bad arguments exit with status 1")
{
    Sandbox s;
    CHECK(s.run("scatter --no-such-flag") == 1);
    CHECK(s.run("frobnicate") == 1);
    write_file(s.path("d.json"), two_solitons());
    CHECK(s.run("reconstruct --input " + s.path("d.json") + " --grid -4,4") == 1);
    CHECK(s.run("evolve --input " + s.path("missing.json") + " --times 1") != 0);
    CHECK(s.run("--help") == 0);
}

TEST_CASE("scatter, evolve and phase-shifts")
{
    Sandbox s;
    FieldGrid q = q_sol(1, {{I, 2.0 * I}}, -20.0, 40.0 / 1023, 1024, 0.0);
    write_file(s.path("q.json"), serialize(q));
    REQUIRE(s.run("scatter --input " + s.path("q.json") + " --out " + s.path("d.json") + " --lambda-grid -2,2,5") == 0);
    ScatteringData d = deserialize_scattering(read_file(s.path("d.json")));
    REQUIRE(d.discrete().size() == 1);
    CHECK(std::abs(d.discrete()[0].lambda - I) < 1e-6);
    CHECK(std::abs(d.discrete()[0].c() - 2.0 * I) < 1e-5);

    REQUIRE(s.run("evolve --input " + s.path("d.json") + " --times 0.25,0.5") == 0);
    auto ev = nlohmann::json::parse(s.out());
    CHECK(ev.is_array());
    CHECK(ev.size() == 2);

    write_file(s.path("two.json"), two_solitons());
    REQUIRE(s.run("phase-shifts --input " + s.path("two.json")) == 0);
    auto ps = nlohmann::json::parse(s.out());
    CHECK(!ps.empty());
}
