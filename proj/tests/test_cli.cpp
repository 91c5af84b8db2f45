#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("hcg_cli_" + std::to_string(::getpid()));
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int cli(const std::string& args) {
    const std::string cmd = std::string("\"") + HCG_CLI_PATH + "\" " + args + " > \"" +
                            (work_dir() / "stdout.txt").string() + "\" 2> \"" + (work_dir() / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string stderr_text() { return slurp(work_dir() / "stderr.txt"); }

const std::string tiny = "--agents 6 --steps 30 --labels 3 --checkpoint-every 10 ";

} // namespace

TEST_CASE("run writes one time series and a summary") {
    const fs::path out = work_dir() / "run";
    CHECK(cli("run " + tiny + "--pp 0.55 --regime expansion --seed 3 --out " + out.string()) == 0);
    CHECK(fs::exists(out / "summary.csv"));
    CHECK(fs::exists(out / "manifest.json"));
    CHECK(fs::exists(out / "runs" / "expansion_pp0.550_r0.csv"));
    const std::string ts = slurp(out / "runs" / "expansion_pp0.550_r0.csv");
    CHECK(ts.rfind("round,apd,alo\n0,", 0) == 0);
    CHECK(std::count(ts.begin(), ts.end(), '\n') == 5);
    const std::string summary = slurp(out / "summary.csv");
    CHECK(summary.find("\n0.55,expansion,0.1,0.2,0.7,0,3,") != std::string::npos);
}

TEST_CASE("sweep from flags and from its own manifest agree") {
    const fs::path a = work_dir() / "sweep_a";
    const fs::path b = work_dir() / "sweep_b";
    CHECK(cli("sweep " + tiny + "--pp 0.45 0.55 --seeds 2 --workers 2 --out " + a.string()) == 0);
    const std::string summary = slurp(a / "summary.csv");
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 1 + 2 * 3 * 2);
    CHECK(cli("sweep --config " + (a / "manifest.json").string() + " --workers 1 --out " + b.string()) == 0);
    CHECK(slurp(b / "summary.csv") == summary);
    CHECK(slurp(b / "runs" / "contraction_pp0.450_r1.csv") == slurp(a / "runs" / "contraction_pp0.450_r1.csv"));
}

TEST_CASE("configuration errors exit with 2") {
    const fs::path out = work_dir() / "bad";
    CHECK(cli("run --agents 7 --steps 30 --labels 3 --out " + out.string()) == 2);
    CHECK(stderr_text().find("error[config]") != std::string::npos);
    CHECK(stderr_text().find("even") != std::string::npos);
    CHECK_FALSE(fs::exists(out / "summary.csv"));

    CHECK(cli("sweep --regime sideways") == 2);
    CHECK(cli("sweep --agents lots") == 2);
    CHECK(stderr_text().find("error[config]") != std::string::npos);
    CHECK(cli("") == 2);
    CHECK(cli("run " + tiny + "--regime custom --pv 0.7 --pq 0.7 --out " + out.string()) == 2);
    CHECK(cli("run " + tiny + "--pp 0.4 0.5 --out " + out.string()) == 2);

    std::ofstream(work_dir() / "unknown.json") << R"({"agentz": 4})";
    CHECK(cli("sweep --config " + (work_dir() / "unknown.json").string()) == 2);
}

TEST_CASE("I/O errors exit with 3") {
    std::ofstream(work_dir() / "plain_file") << "x";
    CHECK(cli("run " + tiny + "--out " + (work_dir() / "plain_file" / "out").string()) == 3);
    CHECK(stderr_text().find("error[io]") != std::string::npos);
    CHECK(cli("sweep --config " + (work_dir() / "no_such.json").string()) == 3);
}

TEST_CASE("help exits with 0") {
    CHECK(cli("--help") == 0);
    CHECK(cli("sweep --help") == 0);
}
