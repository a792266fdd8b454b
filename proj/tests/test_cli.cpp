#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + std::string(FRACALC_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t next = text.find('\n', pos);
        if (next == std::string::npos) {
            lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(',', pos);
        if (next == std::string::npos) {
            fields.push_back(line.substr(pos));
            break;
        }
        fields.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return fields;
}

}  // namespace

TEST_CASE("eval prints one record and exits zero", "[cli]") {
    const auto r = run("eval --expr \"x^2\" --order 1 --a 0 --x 1");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 2);
    CHECK(lines[0] == "x,value_re,value_im,method,est_error");
    const auto fields = split_csv(lines[1]);
    REQUIRE(fields.size() == 5);
    CHECK(std::abs(std::stod(fields[1]) - 1.0 / 3.0) < 1e-13);
    CHECK(fields[3] == "closed_form");
    CHECK(std::stod(fields[4]) == 0.0);
}

TEST_CASE("eval handles transcendental literals", "[cli]") {
    const auto r = run("eval --expr \"x^e\" --order pi --a 0 --x 1");
    CHECK(r.exit_code == 0);
    const auto fields = split_csv(lines_of(r.out)[1]);
    CHECK(std::abs(std::stod(fields[1]) - 0.0076819416502711052) < 1e-12);
}

TEST_CASE("eval with a complex order through quadrature", "[cli]") {
    const auto r = run("eval --expr \"x\" --order 0.5+0.5i --a 0 --x 1 --method quad");
    CHECK(r.exit_code == 0);
    const auto fields = split_csv(lines_of(r.out)[1]);
    CHECK(fields[3] == "quadrature");
    CHECK(std::stod(fields[4]) <= 1e-8);
    CHECK(std::stod(fields[2]) != 0.0);
}

TEST_CASE("module errors exit with status 2", "[cli]") {
    CHECK(run("eval --expr \"x^-1.5\" --order 1 --a 0 --x 1").exit_code == 2);
    CHECK(run("eval --expr \"x +\" --order 1 --a 0 --x 1").exit_code == 2);
    CHECK(run("eval --expr \"x^2\" --order 0.5 --a -inf --x 1").exit_code == 2);
    CHECK(run("eval --expr \"sin(x)\" --order 0.5 --a 0 --x 1 --method closed").exit_code == 2);
    // the trig rotation covers real orders at -inf but not complex ones
    CHECK(run("eval --expr \"sin(x)\" --order 0.5 --a -inf --x 1").exit_code == 0);
    CHECK(run("eval --expr \"sin(x)\" --order 0.5+1i --a -inf --x 1").exit_code == 2);
}

TEST_CASE("left convention is reachable from the command line", "[cli]") {
    const auto r = run("eval --expr \"1\" --order -0.5 --a 0 --x 1 --convention left");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(std::stod(split_csv(lines_of(r.out)[1])[1]) - 0.56418958354775629) <
          1e-12);

    const auto right = run("eval --expr \"1\" --order -0.5 --a 0 --x 1 --convention right");
    CHECK(std::stod(split_csv(lines_of(right.out)[1])[1]) == 0.0);
}

TEST_CASE("grid specs are validated", "[cli]") {
    CHECK(run("table --expr \"x\" --order 1 --a 0 --grid 2..1:5").exit_code == 2);
    CHECK(run("table --expr \"x\" --order 1 --a 0 --grid 0..1:1").exit_code == 2);
    CHECK(run("table --expr \"x\" --order 1 --a 0 --grid nonsense").exit_code == 2);
}

TEST_CASE("table emits the pinned CSV layout", "[cli]") {
    const auto r = run("table --expr \"x\" --order 0.5 --a 0 --grid 0.1..2:20");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 21);
    CHECK(lines[0] == "x,value_re,value_im,method,est_error");
    double prev = -1.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = split_csv(lines[i]);
        REQUIRE(fields.size() == 5);
        const double value = std::stod(fields[1]);
        CHECK(value > prev);
        prev = value;
    }
}

TEST_CASE("table rows at or below the base point are causal zeros", "[cli]") {
    const auto r = run("table --expr \"x^2\" --order 0.5 --a 0 --grid -1..0:3");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(std::stod(split_csv(lines[i])[1]) == 0.0);
    }
}

TEST_CASE("json table matches the column contract", "[cli]") {
    const auto r = run("table --expr \"x\" --order 0.5 --a 0 --grid 0.5..1:4 --format json");
    CHECK(r.exit_code == 0);
    const auto parsed = nlohmann::json::parse(r.out);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 4);
    for (const auto& rec : parsed) {
        REQUIRE(rec.is_object());
        CHECK(rec.size() == 5);
        for (const char* key : {"x", "value_re", "value_im", "method", "est_error"})
            CHECK(rec.contains(key));
    }
}

TEST_CASE("identical invocations are byte-identical", "[cli]") {
    const std::string args = "table --expr \"x^e + 2*sin(x)\" --order 0.7 --a 0 --grid 0.2..1.8:9";
    const auto first = run(args);
    const auto second = run(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("plotdata families reproduce the derivative and identity rows", "[cli]") {
    const auto r = run(
        "plotdata --expr \"x^2\" --order -1 --order 0 --order 0.5 --order 1 --a 0 "
        "--grid 0.5..1.5:3");
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 13);
    CHECK(lines[0] == "order,x,value_re,value_im");
    for (int i = 0; i < 3; ++i) {
        const auto d = split_csv(lines[1 + i]);
        const double x = std::stod(d[1]);
        CHECK(d[0] == "-1");
        CHECK(std::abs(std::stod(d[2]) - 2.0 * x) < 1e-12);
        const auto ident = split_csv(lines[4 + i]);
        CHECK(std::abs(std::stod(ident[2]) - x * x) < 1e-15);
    }
}

TEST_CASE("constants command prints both transcendental constants", "[cli]") {
    const auto r = run("constants");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0.59276174704850") != std::string::npos);
    CHECK(r.out.find("22.3649945170588") != std::string::npos);
    // the 30-digit evaluation beyond double precision
    CHECK(r.out.find("0.592761747048502880285354552") != std::string::npos);
    CHECK(r.out.find("22.36499451705885745490692172") != std::string::npos);
    CHECK(r.out.find("reference") != std::string::npos);
}

TEST_CASE("verify exits zero by default and one when squeezed", "[cli]") {
    const auto ok = run("verify");
    CHECK(ok.exit_code == 0);
    int pass_lines = 0;
    for (const auto& line : lines_of(ok.out))
        if (line.rfind("PASS ", 0) == 0) ++pass_lines;
    CHECK(pass_lines >= 40);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    const auto squeezed = run("verify --tolerance-scale 1e-6");
    CHECK(squeezed.exit_code == 1);
    CHECK(squeezed.out.find("FAIL") != std::string::npos);
}

TEST_CASE("verify --only filters to one family", "[cli]") {
    const auto r = run("verify --only semigroup");
    CHECK(r.exit_code == 0);
    bool saw_any = false;
    for (const auto& line : lines_of(r.out)) {
        if (line.rfind("PASS ", 0) == 0 || line.rfind("FAIL ", 0) == 0) {
            saw_any = true;
            CHECK(line.find(" semigroup") != std::string::npos);
        }
    }
    CHECK(saw_any);
    CHECK(run("verify --only no_such_family").exit_code == 2);
}

TEST_CASE("environment variables backstop the flags", "[cli]") {
    // flags beat the environment; the environment beats the default
    const auto flag_wins =
        run("eval --expr \"sin(x)\" --order 0.5 --a 0 --x 1 --nodes 64", "FRACALC_NODES=4");
    const auto default_run = run("eval --expr \"sin(x)\" --order 0.5 --a 0 --x 1");
    CHECK(flag_wins.out == default_run.out);

    const auto env_small = run("eval --expr \"sin(x)\" --order 0.5 --a 0 --x 1",
                               "FRACALC_NODES=4");
    const auto est_env = std::stod(split_csv(lines_of(env_small.out)[1])[4]);
    const auto est_default = std::stod(split_csv(lines_of(default_run.out)[1])[4]);
    CHECK(est_env > est_default);

    CHECK(run("verify", "FRACALC_TOLERANCE_SCALE=1e-6").exit_code == 1);
}
