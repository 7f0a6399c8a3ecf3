#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <variant>

#include "onewave/error.hpp"
#include "onewave/io.hpp"

using namespace onewave;

namespace {

std::string error_of(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_scene(in);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return {};
}

Scene scene_of(const std::string& text) {
    std::istringstream in(text);
    return parse_scene(in);
}

}  // namespace

TEST(Numbers, FormatAndParse) {
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(-0.5), "-0.5");
    EXPECT_EQ(format_number(1e-13), "1e-13");
    EXPECT_EQ(parse_number(" 2.5 "), 2.5);
    EXPECT_EQ(parse_number("-1e3"), -1000.0);
    EXPECT_THROW(parse_number("abc"), ValidationError);
    EXPECT_THROW(parse_number("1.5x"), ValidationError);
    EXPECT_THROW(parse_number(""), ValidationError);
}

TEST(Numbers, RoundTripTo15Digits) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> ud(-1, 1);
    for (int i = 0; i < 1000; ++i) {
        const double v = ud(gen) * std::pow(10.0, static_cast<int>(ud(gen) * 30));
        const double back = parse_number(format_number(v));
        EXPECT_LE(std::abs(back - v), 5e-15 * std::abs(v));
        EXPECT_EQ(format_number(back), format_number(v));
    }
}

TEST(Complex, Parse) {
    EXPECT_EQ(parse_complex("1"), cplx(1, 0));
    EXPECT_EQ(parse_complex("2i"), cplx(0, 2));
    EXPECT_EQ(parse_complex("i"), cplx(0, 1));
    EXPECT_EQ(parse_complex("-i"), cplx(0, -1));
    EXPECT_EQ(parse_complex("-2+i"), cplx(-2, 1));
    EXPECT_EQ(parse_complex("1.5 - 0.25i"), cplx(1.5, -0.25));
    EXPECT_EQ(parse_complex("1e-3+2e2i"), cplx(1e-3, 200));
    EXPECT_EQ(parse_complex(format_complex({3, -4})), cplx(3, -4));
    EXPECT_THROW(parse_complex(""), ValidationError);
    EXPECT_THROW(parse_complex("1+j"), ValidationError);
}

TEST(KeyValues, CommentsAndErrors) {
    std::istringstream in("# comment\n a = 1 \n\nb=x # trailing\n");
    const auto kv = read_key_values(in);
    EXPECT_EQ(kv.at("a"), "1");
    EXPECT_EQ(kv.at("b"), "x");
    std::istringstream dup("a=1\na=2\n");
    try {
        read_key_values(dup);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    }
    std::istringstream bad("a=1\n\nnonsense\n");
    try {
        read_key_values(bad);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(Scene, ParsesEveryType) {
    const auto p = std::get<PointScatterers>(scene_of("type=point\npoints=-2,0; 1,1.5\n"));
    ASSERT_EQ(p.points.size(), 2u);
    EXPECT_EQ(p.points[1], (Vec2{1, 1.5}));

    const auto d = std::get<DiskObstacle>(scene_of("type=disk\ncenter=1,2\nradius=0.5\nbc=impedance\neta=-2+i\n"));
    EXPECT_EQ(d.center, (Vec2{1, 2}));
    EXPECT_EQ(d.radius, 0.5);
    EXPECT_TRUE(d.bc.is_impedance());
    EXPECT_EQ(d.bc.eta(), cplx(-2, 1));

    const auto s = std::get<PolygonSource>(
        scene_of("type=polygon-source\nvertices=-2,-2; 2,-2; -2,2\ndensity=2\nnormalization=paper-literal\n"));
    EXPECT_EQ(s.vertices.size(), 3u);
    EXPECT_EQ(s.density, 2.0);
    EXPECT_EQ(s.normalization, SourceNormalization::PaperLiteral);

    const auto o = std::get<PolygonObstacle>(scene_of("type=polygon-obstacle\nvertices=-3,-3;3,-3;3,3;-3,3\n"));
    EXPECT_EQ(o.vertices.size(), 4u);
}

TEST(Scene, ErrorsCarryLineNumbers) {
    EXPECT_NE(error_of("type=point\n\nbogus=1\n").find("line 3"), std::string::npos);
    EXPECT_NE(error_of("type=point\npoints=1,x\n").find("line 2"), std::string::npos);
    EXPECT_NE(error_of("# c\ntype=triangle\n").find("line 2"), std::string::npos);
    EXPECT_NE(error_of("type=disk\nradius=1\nbc=neumann\n").find("line 3"), std::string::npos);
    EXPECT_NE(error_of("type=disk\nradius=1\nradius=2\n").find("line 3"), std::string::npos);
    EXPECT_FALSE(error_of("points=1,1\n").empty());
    EXPECT_FALSE(error_of("type=polygon-source\nvertices=0,0;0,1;1,0\n").empty());  // clockwise
    EXPECT_FALSE(error_of("type=disk\nradius=1\nbc=impedance\neta=1-i\n").empty());
    EXPECT_THROW(load_scene("/nonexistent/scene.txt"), ValidationError);
}

TEST(FarFieldFile, RoundTrip) {
    const Vec2 pts[] = {{-2, 0}, {0.3, 1.7}};
    const auto u = point_far_field(pts, 6.0, 64);
    std::ostringstream out;
    write_far_field(out, u);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "# farfield k=6 ntheta=64");
    std::istringstream in(out.str());
    const auto back = read_far_field(in);
    EXPECT_EQ(back.k, 6.0);
    ASSERT_EQ(back.n_theta(), 64u);
    for (std::size_t j = 0; j < 64; ++j) {
        EXPECT_LE(std::abs(back.values[j] - u.values[j]), 1e-14 * (1 + std::abs(u.values[j])));
    }
    std::ostringstream again;
    write_far_field(again, back);
    EXPECT_EQ(again.str(), out.str());
}

TEST(FarFieldFile, Rejects) {
    const auto read = [](const std::string& s) {
        std::istringstream in(s);
        return read_far_field(in);
    };
    EXPECT_THROW(read(""), ValidationError);
    EXPECT_THROW(read("# multistatic n=3\n"), ValidationError);
    std::ostringstream out;
    const Vec2 pts[] = {{0, 0}};
    write_far_field(out, point_far_field(pts, 6.0, 16));
    std::string text = out.str();
    EXPECT_THROW(read(text.substr(0, text.rfind('\n', text.size() - 2) + 1)), ValidationError);  // one row short
    EXPECT_THROW(read(text + "0,1,0\n"), ValidationError);
    std::string bad_angle = text;
    bad_angle.replace(bad_angle.find('\n') + 1, 1, "1");
    EXPECT_THROW(read(bad_angle), ValidationError);
}

TEST(MultistaticFile, RoundTrip) {
    ComplexMatrix f(3, 3);
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q) f(p, q) = cplx(0.1 * p - 1.0 / 3.0, 2.0 * q + 1e-17);
    std::ostringstream out;
    write_multistatic(out, f);
    std::istringstream in(out.str());
    const auto g = read_multistatic(in);
    ASSERT_EQ(g.rows(), 3u);
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q) EXPECT_LE(std::abs(g(p, q) - f(p, q)), 1e-15);
    std::istringstream missing("# multistatic n=2\n0,0,1,0\n");
    EXPECT_THROW(read_multistatic(missing), ValidationError);
    std::istringstream range("# multistatic n=1\n0,1,1,0\n");
    EXPECT_THROW(read_multistatic(range), ValidationError);
}

TEST(FieldOutput, CsvAndPgm) {
    IndicatorField f{{0, 1, 0, 2, 2, 3}, {0, 1, 2, 3, 4, 8}, 0};
    std::ostringstream csv;
    write_field_csv(csv, f, 6.0);
    EXPECT_EQ(csv.str(), "# field k=6 nx=2 ny=3\n0,0,0\n1,0,1\n0,1,2\n1,1,3\n0,2,4\n1,2,8\n");
    std::ostringstream pgm;
    write_field_pgm(pgm, f);
    // Top row (largest y) first.
    EXPECT_EQ(pgm.str(), "P2\n2 3\n255\n128 255\n64 96\n0 32\n");
}

TEST(SchemeOneOutput, CsvAndMask) {
    SchemeOneResult r;
    r.grid = {0, 1, 0, 1, 2, 2};
    r.centers = {{4, 0}, {0, 4}};
    r.radii = {5.5, 1.25};
    r.mask = {1, 0, 0, 0};
    std::ostringstream csv, pgm;
    write_scheme_one_csv(csv, r);
    write_mask_pgm(pgm, r);
    EXPECT_EQ(csv.str(), "n,zx,zy,h\n0,4,0,5.5\n1,0,4,1.25\n");
    EXPECT_EQ(pgm.str(), "P2\n2 2\n255\n0 0\n255 0\n");
}
