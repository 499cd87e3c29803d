#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "pid/generators.hpp"
#include "pid/ingest.hpp"

using namespace pid;
using namespace pid::ingest;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("pid_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

DatasetConfig categorical_config() {
    DatasetConfig cfg;
    cfg.s_column = ColumnSpec::categorical("s");
    cfg.y_column = ColumnSpec::categorical("y");
    cfg.z_column = ColumnSpec::categorical("z");
    return cfg;
}

}  // namespace

TEST_CASE("counting rows into an empirical pmf") {
    TempDir dir;
    auto csv = dir.file("rows.csv");
    write_file(csv, "s,y,z\na,0,0\na,0,0\nb,1,0\nb,1,1\n");
    auto report = load_joint_from_table(csv, categorical_config());
    CHECK(report.rows_total == 4);
    CHECK(report.rows_kept == 4);
    const auto& j = report.joint;
    CHECK(j.at(0, 0, 0) == doctest::Approx(0.5));
    CHECK(j.at(1, 1, 0) == doctest::Approx(0.25));
    CHECK(j.at(1, 1, 1) == doctest::Approx(0.25));
    double total = 0.0;
    for (double v : j.pmf()) total += v;
    CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("additive smoothing spreads pseudocounts over all cells") {
    TempDir dir;
    auto csv = dir.file("rows.csv");
    write_file(csv, "s,y,z\na,0,0\na,0,0\nb,1,0\nb,1,1\n");
    DatasetConfig cfg = categorical_config();
    cfg.alpha = 1.0;
    auto j = load_joint_from_table(csv, cfg).joint;
    // 8 cells, 4 rows: denominator 4 + 8
    CHECK(j.at(0, 0, 0) == doctest::Approx(3.0 / 12));
    CHECK(j.at(1, 1, 0) == doctest::Approx(2.0 / 12));
    CHECK(j.at(0, 1, 1) == doctest::Approx(1.0 / 12));
}

TEST_CASE("single row becomes a point mass") {
    TempDir dir;
    auto csv = dir.file("one.csv");
    write_file(csv, "s,y,z\nhigh,left,up\n");
    auto report = load_joint_from_table(csv, categorical_config());
    CHECK(report.joint.at(0, 0, 0) == 1.0);
    CHECK(report.joint.ns() == 1);
}

TEST_CASE("missing cells drop the row; short rows too") {
    TempDir dir;
    auto csv = dir.file("missing.csv");
    write_file(csv, "s,y,z\na,0,0\n?,1,0\nb,,1\nb,1\nb,1,1\n");
    auto report = load_joint_from_table(csv, categorical_config());
    CHECK(report.rows_total == 5);
    CHECK(report.rows_dropped == 3);
    CHECK(report.rows_kept == 2);

    auto all_missing = dir.file("gone.csv");
    write_file(all_missing, "s,y,z\n?,0,0\n");
    CHECK_THROWS_AS(load_joint_from_table(all_missing, categorical_config()),
                    EmptyAfterFiltering);
}

TEST_CASE("unknown column and unparseable numerics") {
    TempDir dir;
    auto csv = dir.file("cols.csv");
    write_file(csv, "s,y,z\na,0,0\n");
    DatasetConfig cfg = categorical_config();
    cfg.y_column = ColumnSpec::categorical("wat");
    CHECK_THROWS_AS(load_joint_from_table(csv, cfg), UnknownColumn);

    auto bad = dir.file("bad.csv");
    write_file(bad, "s,age,z\na,12,0\nb,teen,1\n");
    DatasetConfig binned = categorical_config();
    binned.y_column = ColumnSpec::binned("age", BinSpec::with_default_labels({18.0}));
    CHECK_THROWS_AS(load_joint_from_table(bad, binned), UnparseableNumeric);
}

TEST_CASE("census-style age binning reproduces the four groups") {
    TempDir dir;
    auto csv = dir.file("age.csv");
    write_file(csv,
               "age,sex,income\n"
               "19,M,low\n23,F,low\n24,F,high\n35,M,low\n36,M,high\n50,F,high\n51,M,high\n");
    DatasetConfig cfg;
    BinSpec age;
    age.cuts = {24.0, 36.0, 51.0};
    age.labels = {"<24", "24-35", "36-50", ">50"};
    cfg.s_column = ColumnSpec::categorical("income");
    cfg.y_column = ColumnSpec::binned("age", age);
    cfg.z_column = ColumnSpec::categorical("sex");
    auto report = load_joint_from_table(csv, cfg);
    const auto& ya = report.joint.alphabet_y();
    REQUIRE(ya.size() == 4);
    CHECK(ya.label(0) == "<24");
    CHECK(ya.label(3) == ">50");
    // 19 and 23 are below the first cut; 24 and 35 fall in the second bin
    auto py = marginal(report.joint, Var::Y);
    CHECK(py[0] == doctest::Approx(2.0 / 7));
    CHECK(py[1] == doctest::Approx(2.0 / 7));
    CHECK(py[2] == doctest::Approx(2.0 / 7));
    CHECK(py[3] == doctest::Approx(1.0 / 7));
}

TEST_CASE("binning is total on finite numerics") {
    BinSpec b = BinSpec::with_default_labels({-1.5, 0.0, 2.25});
    CHECK(b.bin_of(-100.0) == 0);
    CHECK(b.bin_of(-1.5) == 1);   // right-open: the cut belongs to the upper bin
    CHECK(b.bin_of(-0.0001) == 1);
    CHECK(b.bin_of(0.0) == 2);
    CHECK(b.bin_of(2.2) == 2);
    CHECK(b.bin_of(2.25) == 3);
    CHECK(b.bin_of(1e300) == 3);
}

TEST_CASE("row permutation leaves the pmf unchanged up to label order") {
    TempDir dir;
    auto a = dir.file("a.csv"), b = dir.file("b.csv");
    write_file(a, "s,y,z\nx,0,0\ny,1,0\nx,1,1\nx,0,0\ny,0,1\n");
    write_file(b, "s,y,z\ny,0,1\nx,0,0\nx,1,1\ny,1,0\nx,0,0\n");
    auto ja = load_joint_from_table(a, categorical_config()).joint;
    auto jb = load_joint_from_table(b, categorical_config()).joint;

    // canonical order: sort labels, compare cell-by-cell through the labels
    auto prob_of = [](const JointDistribution& j, const std::string& s, const std::string& y,
                      const std::string& z) {
        long is = j.alphabet_s().index_of(s), iy = j.alphabet_y().index_of(y),
             iz = j.alphabet_z().index_of(z);
        REQUIRE(is >= 0);
        REQUIRE(iy >= 0);
        REQUIRE(iz >= 0);
        return j.at(is, iy, iz);
    };
    for (const auto& s : {"x", "y"})
        for (const auto& y : {"0", "1"})
            for (const auto& z : {"0", "1"})
                CHECK(prob_of(ja, s, y, z) == prob_of(jb, s, y, z));
}

TEST_CASE("pid-joint round trip is bit exact") {
    TempDir dir;
    auto path = dir.file("copy3.pid");
    auto copy3 = gen_copy(3);
    save_joint(copy3, path);
    auto loaded = load_joint(path);
    CHECK(loaded == copy3);

    // a full-support random joint round-trips through 17 significant digits
    auto j = gen_simplex_uniform({2, 3, 2}, 99, 1).front();
    auto p2 = dir.file("rand.pid");
    save_joint(j, p2);
    CHECK(load_joint(p2) == j);
}

TEST_CASE("malformed joint files") {
    TempDir dir;
    auto neg = dir.file("neg.pid");
    write_file(neg,
               "pid-joint v1\nalphabet S 0 1\nalphabet Y 0 1\nalphabet Z 0 1\n"
               "p 0 0 0 -0.25\np 0 1 1 0.5\np 1 0 1 0.75\n");
    CHECK_THROWS_AS(load_joint(neg), MalformedFile);

    auto header = dir.file("hdr.pid");
    write_file(header, "pid-joint v2\n");
    CHECK_THROWS_AS(load_joint(header), MalformedFile);

    auto badlabel = dir.file("lbl.pid");
    write_file(badlabel,
               "pid-joint v1\nalphabet S 0 1\nalphabet Y 0 1\nalphabet Z 0 1\n"
               "p 0 0 7 1.0\n");
    CHECK_THROWS_AS(load_joint(badlabel), MalformedFile);

    // sum within 5e-10 of 1 is accepted and renormalized
    auto near = dir.file("near.pid");
    write_file(near,
               "pid-joint v1\nalphabet S 0 1\nalphabet Y 0 1\nalphabet Z 0 1\n"
               "p 0 0 0 0.5\np 1 1 1 0.4999999995\n");
    auto j = load_joint(near);
    double total = 0.0;
    for (double v : j.pmf()) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("labels with whitespace are rejected at save") {
    std::vector<double> pmf{0.5, 0.5};
    JointDistribution j(Alphabet({"a b"}), Alphabet({"0", "1"}), Alphabet({"z"}),
                        std::move(pmf));
    std::ostringstream sink;
    CHECK_THROWS_AS(write_joint(j, sink), MalformedFile);
}
