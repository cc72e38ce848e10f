#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "interlace/gf2.hpp"
#include "test_support.hpp"

namespace interlace {
namespace {

using testing::Rng;

Gf2Matrix ones(std::size_t n) {
    return Gf2Matrix::from_rows(std::vector<std::vector<int>>(n, std::vector<int>(n, 1)));
}

TEST(Gf2Nullity, AllOnesThreeByThree) { EXPECT_EQ(nullity(ones(3)), 2U); }

TEST(Gf2Nullity, FourByFourExampleIsNonsingular) {
    const auto m = Gf2Matrix::from_rows({{1, 0, 1, 0}, {0, 1, 1, 1}, {1, 1, 0, 0}, {0, 1, 0, 0}});
    EXPECT_EQ(nullity(m), 0U);
}

TEST(Gf2Nullity, ForcedRanks) {
    for (std::size_t n : {1U, 5U, 64U, 65U, 130U}) {
        EXPECT_EQ(nullity(Gf2Matrix(n)), n);
        EXPECT_EQ(nullity(Gf2Matrix::identity(n)), 0U);
    }
    EXPECT_EQ(nullity(Gf2Matrix()), 0U);
    EXPECT_EQ(rank(Gf2Matrix()), 0U);
}

TEST(Gf2Rank, Examples) {
    EXPECT_EQ(rank(Gf2Matrix::identity(4)), 4U);
    EXPECT_EQ(rank(ones(3)), 1U);
}

TEST(Gf2Matrix, RejectsBadInput) {
    EXPECT_THROW(Gf2Matrix(std::vector<std::string>{"a", "a"}), InputError);
    EXPECT_THROW(Gf2Matrix::from_rows({{0, 2}, {0, 0}}), InputError);
    EXPECT_THROW(Gf2Matrix::from_rows({{0, 1}, {0}}), InputError);
}

TEST(Gf2Submatrix, KeepAllAndKeepNone) {
    const auto m = Gf2Matrix::from_rows({{0, 1, 1}, {1, 0, 0}, {1, 0, 1}}, {"a", "b", "c"});
    EXPECT_EQ(principal_submatrix(m, m.labels()), m);
    const auto none = principal_submatrix(m, std::vector<std::string>{});
    EXPECT_TRUE(none.empty());
    EXPECT_EQ(nullity(none), 0U);
}

TEST(Gf2Submatrix, PreservesRelativeOrder) {
    const auto m = Gf2Matrix::from_rows({{0, 1, 1}, {1, 0, 0}, {1, 0, 1}}, {"a", "b", "c"});
    const auto s = principal_submatrix(m, {"c", "a"});
    EXPECT_EQ(s.labels(), (std::vector<std::string>{"a", "c"}));
    EXPECT_EQ(s.to_rows(), (std::vector<std::vector<int>>{{0, 1}, {1, 1}}));
}

TEST(Gf2Submatrix, UnknownLabelIsNamed) {
    const auto m = Gf2Matrix(std::vector<std::string>{"a", "b"});
    try {
        (void)principal_submatrix(m, {"a", "zz"});
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
    }
}

TEST(Gf2SetDiagonal, Examples) {
    const auto z = Gf2Matrix(std::vector<std::string>{"v"});
    EXPECT_EQ(set_diagonal(z, "v", true).to_rows(), (std::vector<std::vector<int>>{{1}}));
    EXPECT_EQ(set_diagonal(z, "v", false), z);
    EXPECT_THROW((void)set_diagonal(z, "w", true), InputError);
}

TEST(Gf2Properties, NullityMatchesKernelCount) {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = rng() % 11;
        const auto rows = testing::random_matrix(n, rng, trial % 2 == 0, 0.2 + 0.6 * (trial % 5) / 4.0);
        const auto m = Gf2Matrix::from_rows(rows);
        ASSERT_EQ(nullity(m), testing::brute_force_nullity(rows)) << to_string(m);
        EXPECT_EQ(rank(m) + nullity(m), n);
        EXPECT_EQ(nullity(m), nullity(m));
    }
}

TEST(Gf2Properties, MultiWordRowsMatchNaiveElimination) {
    Rng rng(12);
    for (std::size_t n : {63U, 64U, 65U, 100U, 129U}) {
        for (int trial = 0; trial < 4; ++trial) {
            auto rows = testing::random_matrix(n, rng, trial % 2 == 0, 0.5);
            // force a dependency so nullity is not trivially zero
            if (n > 3) rows[n - 1] = rows[0];
            const auto m = Gf2Matrix::from_rows(rows);
            EXPECT_EQ(rank(m), testing::naive_rank(rows));
        }
    }
}

TEST(Gf2Properties, SubmatrixNullityBounds) {
    Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const auto m = Gf2Matrix::from_rows(testing::random_matrix(n, rng, true));
        std::vector<std::string> keep;
        for (const auto& l : m.labels())
            if (rng() % 2) keep.push_back(l);
        const auto s = principal_submatrix(m, keep);
        const std::size_t nu = nullity(s);
        EXPECT_LE(nu, keep.size());
        EXPECT_GE(nu + (n - keep.size()), nullity(m));
    }
}

TEST(Gf2Properties, SimultaneousPermutationInvariance) {
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        const auto rows = testing::random_matrix(n, rng, true);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<std::vector<int>> permuted(n, std::vector<int>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) permuted[i][j] = rows[perm[i]][perm[j]];
        EXPECT_EQ(nullity(Gf2Matrix::from_rows(rows)), nullity(Gf2Matrix::from_rows(permuted)));
    }
}

TEST(Gf2Properties, SubsetKernelAgreesWithSubmatrix) {
    Rng rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng() % 10;
        const auto m = Gf2Matrix::from_rows(testing::random_matrix(n, rng, true));
        const auto packed = detail::packed_rows(m);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); s += 1 + rng() % 7) {
            std::vector<std::string> keep;
            for (std::size_t i = 0; i < n; ++i)
                if ((s >> i) & 1U) keep.push_back(m.label(i));
            EXPECT_EQ(detail::subset_nullity(packed, s), nullity(principal_submatrix(m, keep)));
        }
    }
}

TEST(Gf2TextFormat, ReadsWithLabelsAndComments) {
    std::istringstream in("# interlace\n3\nlabels: a b c\n0 1 1\n1 0 0\n\n1 0 1\n");
    const auto m = read_matrix(in);
    EXPECT_EQ(m.labels(), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_EQ(m.to_rows(), (std::vector<std::vector<int>>{{0, 1, 1}, {1, 0, 0}, {1, 0, 1}}));
    std::istringstream again(to_string(m));
    EXPECT_EQ(read_matrix(again), m);
}

TEST(Gf2TextFormat, EmptyMatrix) {
    std::istringstream in("0\n");
    EXPECT_TRUE(read_matrix(in).empty());
}

TEST(Gf2TextFormat, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            (void)read_matrix(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of("2\n0 1\n1 2\n"), 3U);
    EXPECT_EQ(line_of("2\n0 1 1\n"), 2U);
    EXPECT_EQ(line_of("x\n"), 1U);
    EXPECT_EQ(line_of("2\n0 1\n"), 2U);
    EXPECT_EQ(line_of("2\nlabels: a\n0 0\n0 0\n"), 4U);
}

}  // namespace
}  // namespace interlace
