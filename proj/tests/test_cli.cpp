#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include <eqk/cli.hpp>

using namespace eqk;
namespace fs = std::filesystem;

namespace
{

const std::string examples = EQK_EXAMPLES_DIR;

struct scratch_dir {
    fs::path path;
    explicit scratch_dir(const std::string &tag)
        : path(fs::temp_directory_path() / ("eqk_test_" + tag + "_" + std::to_string(::getpid())))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~scratch_dir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string write(const std::string &name, const std::string &text) const
    {
        const auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

struct run_result {
    int code;
    std::string out;
};

run_result run_binary(const std::string &args)
{
    const std::string cmd = std::string(EQK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *p = ::popen(cmd.c_str(), "r");
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) {
        out.append(buf, n);
    }
    const int status = ::pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST(Cli, ParseIntList)
{
    EXPECT_EQ(cli::parse_int_list("1,-2,3"), (std::vector<std::int64_t>{1, -2, 3}));
    EXPECT_TRUE(cli::parse_int_list("").empty());
    EXPECT_THROW(cli::parse_int_list("1,,2"), error);
    EXPECT_THROW(cli::parse_int_list("1,x"), error);
    EXPECT_THROW(cli::parse_int_list("1.5"), error);
}

TEST(Cli, ChiText)
{
    cli::chi_options opt;
    opt.fan_path = examples + "/P1_O2.json";
    opt.oracle = true;
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_chi(opt, out, err), cli::ok);
    EXPECT_EQ(out.str(), "1 + t^(1) + t^(2)\ncech: 1 + t^(1) + t^(2)\nnef: 1 + t^(1) + t^(2)\nAGREE\n");
}

TEST(Cli, ChiDivisorOverride)
{
    cli::chi_options opt;
    opt.fan_path = examples + "/P1_O2.json";
    opt.divisor = "0,-2";
    opt.oracle = true;
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_chi(opt, out, err), cli::ok);
    EXPECT_EQ(out.str(), "-t^(-1)\ncech: -t^(-1)\nnef: n/a (divisor is not nef)\nAGREE\n");

    opt.divisor = "1,2,3";
    EXPECT_EQ(cli::cmd_chi(opt, out, err), cli::invalid_input);
}

TEST(Cli, ChiJsonRoundTrip)
{
    cli::chi_options opt;
    opt.fan_path = examples + "/F1_mixed.json";
    opt.json = true;
    std::ostringstream out, err;
    ASSERT_EQ(cli::cmd_chi(opt, out, err), cli::ok);
    const auto doc = io::json::parse(out.str());
    EXPECT_EQ(doc.at("command"), "chi");
    const auto in = io::fan_from_json(doc);
    const auto chi = io::terms_from_json(in.toric_fan.rank(), doc.at("result_terms"));
    EXPECT_EQ(chi, equivariant_euler_char(in.toric_fan, in.div));

    scratch_dir dir("roundtrip");
    const auto again = dir.write("out.json", out.str());
    opt.fan_path = again;
    std::ostringstream out2;
    ASSERT_EQ(cli::cmd_chi(opt, out2, err), cli::ok);
    EXPECT_EQ(out2.str(), out.str());
}

TEST(Cli, ChiBadInput)
{
    scratch_dir dir("bad");
    std::ostringstream out, err;
    cli::chi_options opt;
    opt.fan_path = dir.write("broken.json", "{ \"rank\": 1, \"rays\": [[1], ");
    EXPECT_EQ(cli::cmd_chi(opt, out, err), cli::invalid_input);
    opt.fan_path = dir.write("badray.json", R"({ "rank": 1, "rays": [[2], [-1]], "max_cones": [[0], [1]] })");
    EXPECT_EQ(cli::cmd_chi(opt, out, err), cli::invalid_input);
    EXPECT_NE(err.str().find("NonPrimitiveRay"), std::string::npos);
    opt.fan_path = dir.write("badkey.json", R"({ "rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]],
                                               "divisor": { "7": 1 } })");
    EXPECT_EQ(cli::cmd_chi(opt, out, err), cli::invalid_input);
    opt.fan_path = dir.write("open.json", R"({ "rank": 1, "rays": [[1]], "max_cones": [[0]] })");
    EXPECT_EQ(cli::cmd_chi(opt, out, err), cli::invalid_input);
    EXPECT_NE(err.str().find("NotComplete"), std::string::npos);
    opt.fan_path = (dir.path / "missing.json").string();
    EXPECT_EQ(cli::cmd_chi(opt, out, err), cli::invalid_input);
}

TEST(Cli, Demazure)
{
    cli::demazure_options opt;
    opt.type = "A2";
    opt.word = "1,2,1";
    opt.weight = "1,0";
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_demazure(opt, out, err), cli::ok);
    EXPECT_EQ(out.str(), "t^(-1,1) + t^(0,-1) + t^(1,0)\n");

    opt.word = "1,1";
    EXPECT_EQ(cli::cmd_demazure(opt, out, err), cli::invalid_input);
    opt.word = "1";
    opt.weight = "-1,0";
    EXPECT_EQ(cli::cmd_demazure(opt, out, err), cli::invalid_input);
    opt.weight = "1";
    EXPECT_EQ(cli::cmd_demazure(opt, out, err), cli::invalid_input);
    opt.type = "Q7";
    EXPECT_EQ(cli::cmd_demazure(opt, out, err), cli::invalid_input);
}

TEST(Cli, DemazureVerify)
{
    cli::demazure_options opt;
    opt.type = "B2";
    opt.word = "";
    opt.weight = "0,1";
    opt.verify = true;
    opt.max_coord = 1;
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_demazure(opt, out, err), cli::ok);
    EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
    EXPECT_NE(out.str().find("PASS word-independence"), std::string::npos);
}

TEST(Cli, Grr)
{
    cli::grr_options opt;
    opt.fan_path = examples + "/P2_O1.json";
    opt.xi = "1,2";
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_grr(opt, out, err), cli::ok);
    EXPECT_EQ(out.str(), "3\nPASS negative powers cancel\nPASS constant term equals augment(chi) = 3\n");
    opt.xi = "1,1";
    EXPECT_EQ(cli::cmd_grr(opt, out, err), cli::invalid_input);
    opt.xi = "1,2";
    opt.order = 1;
    EXPECT_EQ(cli::cmd_grr(opt, out, err), cli::invalid_input);
}

TEST(Cli, VerifyEmptyAndCorrupt)
{
    scratch_dir dir("verify");
    cli::verify_options opt;
    opt.corpus_dir = dir.path.string();
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_verify(opt, out, err), cli::invalid_input);

    dir.write("P1.json", R"({ "rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]], "range": 1 })");
    std::ostringstream ok_out;
    EXPECT_EQ(cli::cmd_verify(opt, ok_out, err), cli::ok);
    EXPECT_NE(ok_out.str().find("ALL PASS"), std::string::npos);

    dir.write("Z.json", R"({ "rank": 2, "rays": [[1, 0], [0, 1], [-1, -2]], "max_cones": [[0, 1], [1, 2], [2, 0]] })");
    dir.write("Zbroken.json", "not json");
    std::ostringstream bad_out;
    EXPECT_EQ(cli::cmd_verify(opt, bad_out, err), cli::verification_failed);
    EXPECT_NE(bad_out.str().find("FAIL Z.json/complete-smooth"), std::string::npos);
    EXPECT_NE(bad_out.str().find("FAIL Zbroken.json/load"), std::string::npos);
    EXPECT_NE(bad_out.str().find("FAILURES PRESENT"), std::string::npos);

    opt.corpus_dir = (dir.path / "nope").string();
    EXPECT_EQ(cli::cmd_verify(opt, out, err), cli::invalid_input);
}

TEST(CliBinary, ExitCodes)
{
    EXPECT_EQ(run_binary("chi --fan " + examples + "/P1_O2.json").code, 0);
    EXPECT_EQ(run_binary("chi --fan " + examples + "/P1_O2.json").out, "1 + t^(1) + t^(2)\n");
    EXPECT_EQ(run_binary("chi").code, 1);
    EXPECT_EQ(run_binary("frobnicate").code, 1);
    EXPECT_EQ(run_binary("chi --fan /nonexistent.json").code, 1);
    EXPECT_EQ(run_binary("chi --fan " + examples + "/P1_O2.json --threads 0").code, 1);
    EXPECT_EQ(run_binary("demazure --type A1 --word 1 --weight 1").out, "t^(-1) + t^(1)\n");
    EXPECT_EQ(run_binary("demazure --type A1 --weight 2").out, "t^(2)\n");
    EXPECT_EQ(run_binary("grr --fan " + examples + "/P2_O1.json --xi 1,2").code, 0);
    EXPECT_EQ(run_binary("--help").code, 0);
}
