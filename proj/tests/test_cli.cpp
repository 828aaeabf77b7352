#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code;
    std::string stdout_text;
};

fs::path work_dir() {
    static fs::path dir = [] {
        auto p = fs::temp_directory_path() / "shiftlab_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

CliResult run(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    std::string cmd = std::string(SHIFTLAB_BIN) + " " + args + " > " + out.string() + " 2> " +
                      (work_dir() / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return {code, buffer.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("gen requires a seed for sampling sources") {
    auto out = work_dir() / "noseed.txt";
    CHECK(run("gen --source bernoulli:0.5 --n 10 --out " + q(out)).exit_code == 2);
}

TEST_CASE("gen is reproducible byte-for-byte") {
    auto a = work_dir() / "coin_a.txt";
    auto b = work_dir() / "coin_b.txt";
    CHECK(run("gen --source bernoulli:0.5 --n 1000 --seed 7 --out " + q(a)).exit_code == 0);
    CHECK(run("gen --source bernoulli:0.5 --n 1000 --seed 7 --out " + q(b)).exit_code == 0);
    auto text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.rfind("# manifest=", 0) == 0);
    CHECK(fs::exists(a.string() + ".manifest.json"));
}

TEST_CASE("gen bfree characteristic") {
    auto out = work_dir() / "bfree.txt";
    CHECK(run("gen --family bfree --B 4,9,25 --range 1:12 --out " + q(out)).exit_code == 0);
    auto text = slurp(out);
    CHECK(text.find("#base=1 n=2") != std::string::npos);
    CHECK(text.find("111011100110") != std::string::npos);
}

TEST_CASE("check verdicts and exit codes") {
    auto gm = work_dir() / "golden_mean.json";
    write_file(gm, R"({"family":"sft","alphabet":2,"forbidden":["11"]})");
    auto holds = run("check --spec " + q(gm) + " --max-len 12 --mode hereditary");
    CHECK(holds.exit_code == 0);
    CHECK(nlohmann::json::parse(holds.stdout_text)["holds"] == true);

    auto no00 = work_dir() / "no00.json";
    write_file(no00, R"({"family":"sft","alphabet":2,"forbidden":["00"]})");
    auto fails = run("check --spec " + q(no00) + " --max-len 12 --mode hereditary");
    CHECK(fails.exit_code == 1);
    auto j = nlohmann::json::parse(fails.stdout_text);
    CHECK(j["witness"]["word"] == "11");
    CHECK(j["witness"]["smaller"] == "00");

    auto ternary = work_dir() / "no12.json";
    write_file(ternary, R"({"family":"sft","alphabet":3,"forbidden":["12"]})");
    CHECK(run("check --spec " + q(ternary) + " --max-len 12 --mode safe:0").exit_code == 0);
    auto ternary_h = run("check --spec " + q(ternary) + " --max-len 12 --mode hereditary");
    CHECK(ternary_h.exit_code == 1);
    auto jt = nlohmann::json::parse(ternary_h.stdout_text);
    CHECK(jt["witness"]["word"] == "22");
    CHECK(jt["witness"]["smaller"] == "12");

    CHECK(run("check --spec " + q(work_dir() / "missing.json") + " --mode hereditary").exit_code == 2);
}

TEST_CASE("arc sweep is deterministic and has exact endpoints") {
    auto coin = work_dir() / "coin30k.txt";
    REQUIRE(run("gen --source bernoulli:0.5 --n 30000 --seed 11 --out " + q(coin)).exit_code == 0);

    auto csv1 = work_dir() / "arc1.csv";
    auto csv2 = work_dir() / "arc2.csv";
    std::string args = "arc --x " + q(coin) + " --grid 0:1:0.25 --k 4 --out ";
    CHECK(run(args + q(csv1)).exit_code == 0);
    CHECK(run(args + q(csv2)).exit_code == 0);
    auto text = slurp(csv1);
    CHECK(text == slurp(csv2));
    CHECK(text.rfind("# manifest=", 0) == 0);

    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);  // manifest
    std::getline(lines, line);  // header
    CHECK(line == "beta,entropy,dbar_to_x,dbar_to_zero,dbar_to_x_exact,dbar_to_zero_exact");
    std::getline(lines, line);  // beta = 0 row
    CHECK(line.rfind("0,0,", 0) == 0);
    int rows = 1;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("arc spot-check violation exits 3") {
    auto coin = work_dir() / "coin30k.txt";  // created above; recreate defensively
    if (!fs::exists(coin))
        REQUIRE(run("gen --source bernoulli:0.5 --n 30000 --seed 11 --out " + q(coin)).exit_code == 0);
    auto no00 = work_dir() / "no00_arc.json";
    write_file(no00, R"({"family":"sft","alphabet":2,"forbidden":["00"]})");
    auto r = run("arc --x " + q(coin) + " --grid 0:1:0.5 --k 4 --spec " + q(no00) + " --out " +
                 q(work_dir() / "never.csv"));
    CHECK(r.exit_code == 3);
}

TEST_CASE("dbar ladder of a window with itself is zero") {
    auto coin = work_dir() / "coin30k.txt";
    if (!fs::exists(coin))
        REQUIRE(run("gen --source bernoulli:0.5 --n 30000 --seed 11 --out " + q(coin)).exit_code == 0);
    auto r = run("dbar --x " + q(coin) + " --y " + q(coin) + " --ks 1,2,4");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("1,0,0/1") != std::string::npos);
    CHECK(r.stdout_text.find("4,0,0/1") != std::string::npos);
}

TEST_CASE("entropy command writes csv and json mirrors") {
    auto coin = work_dir() / "coin30k.txt";
    if (!fs::exists(coin))
        REQUIRE(run("gen --source bernoulli:0.5 --n 30000 --seed 11 --out " + q(coin)).exit_code == 0);
    auto csv = work_dir() / "profile.csv";
    auto json = work_dir() / "profile.json";
    CHECK(run("entropy --x " + q(coin) + " --k 4 --out " + q(csv) + " --json " + q(json)).exit_code == 0);
    auto j = nlohmann::json::parse(slurp(json));
    CHECK(j["unit"] == "nats");
    double h = j["chosen_estimate"].get<double>();
    CHECK(h > 0.6);
    CHECK(h < 0.75);
    CHECK(slurp(csv).find("k,H_k,h_k") != std::string::npos);

    // Bits toggle divides by log 2.
    auto bits = run("entropy --x " + q(coin) + " --k 4 --bits");
    auto jb = nlohmann::json::parse(bits.stdout_text);
    CHECK(jb["unit"] == "bits");
    CHECK(jb["chosen_estimate"].get<double>() == doctest::Approx(h / std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("bisect endpoints and range guard") {
    auto coin = work_dir() / "coin30k.txt";
    if (!fs::exists(coin))
        REQUIRE(run("gen --source bernoulli:0.5 --n 30000 --seed 11 --out " + q(coin)).exit_code == 0);
    auto zero = run("bisect --x " + q(coin) + " --target 0 --tol 0.02 --k 4");
    CHECK(zero.exit_code == 0);
    auto j = nlohmann::json::parse(zero.stdout_text);
    CHECK(j["beta_star"] == 0.0);
    CHECK(j["iterations"] == 0);
    CHECK(run("bisect --x " + q(coin) + " --target 5.0 --tol 0.02 --k 4").exit_code == 2);
}

TEST_CASE("markov and parry sources from json files") {
    auto chain = work_dir() / "chain.json";
    write_file(chain, R"({"rows":[["9/10","1/10"],["2/5","3/5"]]})");
    auto mk = work_dir() / "mk.txt";
    CHECK(run("gen --source markov:@" + chain.string() + " --n 5000 --seed 4 --out " + q(mk))
              .exit_code == 0);
    CHECK(slurp(mk).find("#base=0 n=2") != std::string::npos);

    auto adj = work_dir() / "golden.json";
    write_file(adj, R"({"adjacency":[[1,1],[1,0]]})");
    auto pw = work_dir() / "parry.txt";
    CHECK(run("gen --source parry:@" + adj.string() + " --n 5000 --seed 4 --out " + q(pw))
              .exit_code == 0);
    // The Parry chain of the golden-mean graph never emits adjacent ones.
    auto text = slurp(pw);
    CHECK(text.find("11") == std::string::npos);

    // Non-primitive adjacency is invalid input.
    auto cyc = work_dir() / "cyclic.json";
    write_file(cyc, R"({"adjacency":[[0,1],[1,0]]})");
    CHECK(run("gen --source parry:@" + cyc.string() + " --n 100 --seed 4 --out " +
              q(work_dir() / "never3.txt"))
              .exit_code == 2);
}

TEST_CASE("dbar rejects mismatched windows") {
    auto coin = work_dir() / "coin30k.txt";
    if (!fs::exists(coin))
        REQUIRE(run("gen --source bernoulli:0.5 --n 30000 --seed 11 --out " + q(coin)).exit_code == 0);
    auto tern = work_dir() / "ternary.txt";
    REQUIRE(run("gen --source bernoulli:1/3,1/3,1/3 --n 30000 --seed 2 --out " + q(tern))
                .exit_code == 0);
    CHECK(run("dbar --x " + q(coin) + " --y " + q(tern) + " --ks 1,2").exit_code == 2);
}

TEST_CASE("config file can supply any flag") {
    auto cfg = work_dir() / "gen.ini";
    auto out = work_dir() / "from_config.txt";
    write_file(cfg, "[gen]\nsource=bernoulli:0.5\nn=500\nseed=5\nout=" + out.string() + "\n");
    CHECK(run("--config " + q(cfg) + " gen").exit_code == 0);
    CHECK(slurp(out).find("#base=0 n=2") != std::string::npos);
}

TEST_CASE("SHIFTLAB_OUT_DIR prefixes relative outputs") {
    auto dir = work_dir() / "envout";
    fs::remove_all(dir);
    std::string cmd = "SHIFTLAB_OUT_DIR=" + q(dir) + " " + std::string(SHIFTLAB_BIN) +
                      " gen --source bernoulli:0.5 --n 100 --seed 3 --out sub.txt > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "sub.txt"));
}

TEST_CASE("explicit low-denominator alpha is rejected") {
    auto coin = work_dir() / "coin30k.txt";
    if (!fs::exists(coin))
        REQUIRE(run("gen --source bernoulli:0.5 --n 30000 --seed 11 --out " + q(coin)).exit_code == 0);
    auto r = run("arc --x " + q(coin) + " --alpha 0.5 --grid 0:1:0.5 --k 4 --out " +
                 q(work_dir() / "never2.csv"));
    CHECK(r.exit_code == 2);
}
