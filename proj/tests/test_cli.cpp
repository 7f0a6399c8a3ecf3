#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "onewave/io.hpp"
#include "onewave_cli/commands.hpp"

namespace fs = std::filesystem;
using onewave::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::path(ONEWAVE_TEST_TMP) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path(name)) << text;
        return path(name);
    }
    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }
    fs::path dir_;
};

}  // namespace

TEST_F(Cli, PointAtOriginIsConstantOne) {
    const auto scene = write("pt.scene", "type=point\npoints=0,0\n");
    const auto r = invoke({"synthesize", "--scene", scene, "--k", "6", "--ntheta", "64", "--out", path("pt.ff")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(slurp(path("pt.ff")));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "# farfield k=6 ntheta=64");
    int rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(line.substr(line.find(',')), ",1,0");
        ++rows;
    }
    EXPECT_EQ(rows, 64);
}

TEST_F(Cli, NoisySynthesisIsByteIdentical) {
    const auto scene = write("tri.scene", "type=polygon-source\nvertices=-2,-2; 2,-2; -2,2\n");
    std::vector<std::string> base{"synthesize", "--scene", scene, "--k", "6", "--ntheta", "128", "--noise", "0.03",
                                  "--seed", "42", "--multistatic"};
    auto a = base, b = base;
    a.insert(a.end(), {path("a.ms"), "--out", path("a.ff")});
    b.insert(b.end(), {path("b.ms"), "--out", path("b.ff")});
    ASSERT_EQ(invoke(a).code, 0);
    ASSERT_EQ(invoke(b).code, 0);
    EXPECT_EQ(slurp(path("a.ff")), slurp(path("b.ff")));
    EXPECT_EQ(slurp(path("a.ms")), slurp(path("b.ms")));
    EXPECT_FALSE(slurp(path("a.ff")).empty());
}

TEST_F(Cli, TriangleRoundTrip) {
    const auto scene = write("tri.scene", "type=polygon-source\nvertices=-2,-2; 2,-2; -2,2\n");
    ASSERT_EQ(invoke({"synthesize", "--scene", scene, "--k", "6", "--out", path("tri.ff")}).code, 0);
    const auto r = invoke({"invert", "--data", path("tri.ff"), "--method", "scheme2", "--nz", "8", "--nx", "16",
                           "--ny", "16", "--out", path("tri")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("field 16x16", 0), 0u) << r.out;
    const auto csv = slurp(path("tri.csv"));
    EXPECT_EQ(csv.rfind("# field k=6 nx=16 ny=16\n", 0), 0u);
    EXPECT_EQ(slurp(path("tri.pgm")).rfind("P2\n16 16\n255\n", 0), 0u);
    // Same inputs, same bytes.
    ASSERT_EQ(invoke({"invert", "--data", path("tri.ff"), "--method", "scheme2", "--nz", "8", "--nx", "16", "--ny",
                      "16", "--out", path("tri_again")})
                  .code,
              0);
    EXPECT_EQ(slurp(path("tri_again.csv")), csv);
}

TEST_F(Cli, SchemeOneTable) {
    const auto scene = write("pt.scene", "type=point\npoints=-2,0\n");
    ASSERT_EQ(invoke({"synthesize", "--scene", scene, "--k", "6", "--out", path("pt.ff")}).code, 0);
    const auto r = invoke({"invert", "--data", path("pt.ff"), "--method", "scheme1", "--nz", "1", "--nx", "8", "--ny",
                           "8", "--out", path("s1")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream table(r.out);
    std::string header, row;
    std::getline(table, header);
    std::getline(table, row);
    EXPECT_EQ(header, "n,zx,zy,h,flag");
    EXPECT_EQ(row.rfind("0,4,0,", 0), 0u);
    const double h = onewave::parse_number(row.substr(6, row.rfind(',') - 6));
    EXPECT_NEAR(h, 6.0, 0.65);
    EXPECT_EQ(slurp(path("s1.csv")).rfind("n,zx,zy,h\n0,4,0,", 0), 0u);
}

TEST_F(Cli, ClassicalOnDiskMultistatic) {
    const auto scene = write("disk.scene", "type=disk\nradius=1\n");
    ASSERT_EQ(invoke({"synthesize", "--scene", scene, "--k", "6", "--ntheta", "64", "--out", path("d.ff"),
                      "--multistatic", path("d.ms")})
                  .code,
              0);
    const auto r = invoke({"invert", "--data", path("d.ms"), "--method", "classical", "--k", "6", "--grid", "-1.5",
                           "1.5", "-1.5", "1.5", "--nx", "7", "--ny", "7", "--out", path("cl")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(slurp(path("cl.csv")));
    std::string line;
    std::getline(csv, line);
    double centre = 0, corner = 0;
    while (std::getline(csv, line)) {
        if (line.rfind("0,0,", 0) == 0) centre = onewave::parse_number(line.substr(4));
        if (line.rfind("-1.5,-1.5,", 0) == 0) corner = onewave::parse_number(line.substr(10));
    }
    EXPECT_GT(centre, 0.0);
    EXPECT_GT(centre, 100 * corner);
}

TEST_F(Cli, ValidationErrorsExitOne) {
    const auto scene = write("pt.scene", "type=point\npoints=0,0\n");
    ASSERT_EQ(invoke({"synthesize", "--scene", scene, "--k", "6", "--out", path("pt.ff")}).code, 0);
    const auto nz = invoke({"invert", "--data", path("pt.ff"), "--nz", "0", "--out", path("x")});
    EXPECT_EQ(nz.code, 1);
    EXPECT_NE(nz.err.find("N_z"), std::string::npos);
    EXPECT_EQ(invoke({"invert", "--data", path("pt.ff"), "--k", "5", "--out", path("x")}).code, 1);
    EXPECT_EQ(invoke({"invert", "--data", path("missing.ff"), "--out", path("x")}).code, 1);
    EXPECT_EQ(invoke({"invert", "--data", path("pt.ff"), "--method", "magic", "--out", path("x")}).code, 1);
    EXPECT_EQ(invoke({"frobnicate"}).code, 1);
    const auto bad = write("bad.scene", "type=point\npoints=0,0\ncolour=red\n");
    const auto r = invoke({"synthesize", "--scene", bad, "--k", "6", "--out", path("b.ff")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("line 3"), std::string::npos);
}

TEST_F(Cli, SolverFailureExitsTwo) {
    const auto scene = write("sq.scene", "type=polygon-obstacle\nvertices=-3,-3;3,-3;3,3;-3,3\n");
    const auto r = invoke({"synthesize", "--scene", scene, "--k", "40", "--ntheta", "64", "--out", path("sq.ff")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("residual"), std::string::npos) << r.err;
}

TEST_F(Cli, Spectrum) {
    const auto r = invoke({"spectrum", "--k", "6", "--radius", "1", "--N", "3"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 7);
    EXPECT_EQ(r.out.rfind("n,re,im,abs\n-3,", 0), 0u);
    const auto hit = invoke({"spectrum", "--k", "1", "--radius", "2.404825557695773", "--N", "2"});
    EXPECT_NE(hit.out.find("warning"), std::string::npos);
}

TEST_F(Cli, SweepRows) {
    const auto scene = write("tri.scene", "type=polygon-source\nvertices=-2,-2; 2,-2; -2,2\n");
    ASSERT_EQ(invoke({"synthesize", "--scene", scene, "--k", "6", "--ntheta", "256", "--out", path("tri.ff")}).code, 0);
    const std::vector<std::string> common{"sweep", "--data", path("tri.ff"), "--scene", scene, "--nz", "8",
                                          "--nx", "12", "--ny", "12"};
    auto one = common;
    one.insert(one.end(), {"--alphas", "1e-13"});
    const auto a = invoke(one);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 2);
    auto dup = common;
    dup.insert(dup.end(), {"--alphas", "1e-10,1e-10"});
    const auto b = invoke(dup);
    ASSERT_EQ(b.code, 0) << b.err;
    std::istringstream in(b.out);
    std::string h, r1, r2;
    std::getline(in, h);
    std::getline(in, r1);
    std::getline(in, r2);
    EXPECT_EQ(h, "alpha,contrast");
    EXPECT_EQ(r1, r2);
}

TEST_F(Cli, ConfigFileAndOverrides) {
    const auto scene = write("pt.scene", "type=point\npoints=0.5,0\n");
    ASSERT_EQ(invoke({"synthesize", "--scene", scene, "--k", "6", "--ntheta", "128", "--out", path("pt.ff")}).code, 0);
    const auto cfg = write("run.cfg", "# defaults\nnz=4\nnx=8\nny=8\nmethod=scheme2\n");
    const auto a = invoke({"invert", "--config", cfg, "--data", path("pt.ff"), "--out", path("a")});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out.rfind("field 8x8", 0), 0u) << a.out;
    const auto b = invoke({"invert", "--config", cfg, "--data", path("pt.ff"), "--nx", "10", "--out", path("b")});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(b.out.rfind("field 10x8", 0), 0u) << b.out;
    const auto bad = write("bad.cfg", "wavelength=3\n");
    EXPECT_EQ(invoke({"invert", "--config", bad, "--data", path("pt.ff"), "--out", path("c")}).code, 1);
}
