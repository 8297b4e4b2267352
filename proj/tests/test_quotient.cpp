#include "oracles.hpp"

#include "hilbstrat/errors.hpp"
#include "hilbstrat/quotient.hpp"

#include <doctest.h>

#include <set>

using namespace hilbstrat;

namespace {

MDPartition part(int m, std::vector<std::pair<Index, int>> raw) { return validate_partition(m, raw); }
MDPartition line8() { return part(1, {{{0}, 3}, {{1}, 2}, {{2}, 1}, {{3}, 1}, {{4}, 1}}); }
MDPartition cell5() { return part(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{2, 0}, 1}, {{0, 1}, 1}}); }
MDPartition excep4() { return part(2, {{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}}); }
MDPartition single_box() { return part(2, {{{0, 0}, 1}}); }

FqMatrix zero(std::size_t n, std::uint32_t q) { return FqMatrix(n, q); }

std::set<std::string> split_terms(const std::string& g) {
    std::set<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = g.find(" - ", start);
        out.insert(g.substr(start, pos - start));
        if (pos == std::string::npos)
            return out;
        start = pos + 3;
    }
}

} // namespace

TEST_CASE("F_q linear algebra") {
    const std::uint32_t q = 5;
    const Subspace s = Subspace::span(3, q, {{1, 0, 1}, {0, 1, 1}, {1, 1, 2}});
    CHECK(s.dim() == 2);
    CHECK(Subspace::whole(3, q).contains(s));
    CHECK_FALSE(s.contains(Subspace::whole(3, q)));
    CHECK(s + Subspace::span(3, q, {{0, 0, 1}}) == Subspace::whole(3, q));
    CHECK(Subspace::span(3, q, {{1, 2, 3}, {2, 4, 1}, {3, 1, 4}}).dim() == 1);
    CHECK(Subspace::span(3, q, {{2, 4, 6 % 5}}) == Subspace::span(3, q, {{1, 2, 3}}));
    FqMatrix t(3, q);
    t.at(1, 0) = 1; // e0 -> e1
    t.at(2, 1) = 1; // e1 -> e2
    CHECK(Subspace::whole(3, q).image(t).dim() == 2);
    CHECK((t * t).at(2, 0) == 1);
    CHECK(t.apply(std::vector<std::uint32_t>{1, 0, 0}) == std::vector<std::uint32_t>{0, 1, 0});
}

TEST_CASE("sample points") {
    SUBCASE("single box has one point") {
        const StratumModel model(single_box());
        const auto pts = sample_points(model, 2, 50, 1'000'000, 1);
        REQUIRE(pts.size() == 1);
        CHECK(pts[0].values.empty());
    }
    SUBCASE("affine A^5 gives 32 points over F_2") {
        const StratumModel model(cell5());
        const auto pts = sample_points(model, 2, 1000, 1'000'000, 1);
        CHECK(pts.size() == 32);
        CHECK(std::set<StratumPoint>(pts.begin(), pts.end()).size() == 32);
        for (const auto& pt : pts)
            CHECK(satisfies_relations(model.relations, pt));
    }
    SUBCASE("product relation gives 3 * 2^2 points over F_2") {
        const StratumModel model(excep4());
        CHECK(model.residual.pure_free_count() == 2);
        CHECK(sample_points(model, 2, 1000, 1'000'000, 1).size() == 12);
        CHECK(sample_points(model, 3, 1000, 1'000'000, 1).size() == 45);
    }
    SUBCASE("sampling is deterministic in the seed") {
        const StratumModel model(line8());
        CHECK(sample_points(model, 3, 20, 1'000'000, 5) == sample_points(model, 3, 20, 1'000'000, 5));
        CHECK(sample_points(model, 3, 20, 1'000'000, 5).size() == 20);
    }
    SUBCASE("large spaces use rejection sampling") {
        // 3 variables over F_257 exceed the exhaustive limit.
        const StratumModel model(excep4());
        const auto pts = sample_points(model, 257, 30, 1'000'000, 2);
        CHECK(pts.size() == 30);
        for (const auto& pt : pts)
            CHECK(satisfies_relations(model.relations, pt));
    }
}

TEST_CASE("instantiated matrices") {
    SUBCASE("single box") {
        const StratumModel model(single_box());
        const auto mats = instantiate_matrices(model, StratumPoint{2, {}});
        REQUIRE(mats.size() == 3);
        for (const auto& t : mats)
            CHECK(t == zero(1, 2));
    }
    SUBCASE("all-zero point of an affine stratum") {
        const StratumModel model(cell5());
        StratumPoint pt{3, std::vector<std::uint32_t>(model.layout.variables().size(), 0)};
        const auto mats = instantiate_matrices(model, pt);
        CHECK(mats[0] == zero(4, 3));
        CHECK(check_commuting(mats));
    }
    SUBCASE("structural columns are standard basis vectors") {
        const StratumModel model(cell5());
        for (const auto& pt : sample_points(model, 3, 10, 1'000'000, 1)) {
            const auto mats = instantiate_matrices(model, pt);
            for (int r = 0; r <= 2; ++r)
                for (std::size_t l = 0; l < model.layout.size(); ++l) {
                    const auto step = model.layout.step(r, l);
                    if (!step.in_basis)
                        continue;
                    for (std::size_t row = 0; row < model.layout.size(); ++row)
                        CHECK(mats[static_cast<std::size_t>(r)].at(row, l) == (row == step.index ? 1u : 0u));
                }
        }
    }
}

TEST_CASE("commuting check") {
    CHECK(check_commuting(std::vector<FqMatrix>{zero(2, 2), zero(2, 2)}));
    // A mutated point breaks commutation.
    const StratumModel model(cell5());
    const auto pts = sample_points(model, 2, 40, 1'000'000, 1);
    int broken = 0;
    for (const auto& pt : pts) {
        CHECK(check_commuting(instantiate_matrices(model, pt)));
        for (std::size_t v = 0; v < pt.values.size(); ++v) {
            StratumPoint bad = pt;
            bad.values[v] ^= 1;
            if (!satisfies_relations(model.relations, bad)) {
                CHECK_FALSE(check_commuting(instantiate_matrices(model, bad)));
                ++broken;
            }
        }
    }
    CHECK(broken > 0);
}

TEST_CASE("partition recovery") {
    SUBCASE("zero matrices of size one") {
        CHECK(partition_from_matrices(std::vector<FqMatrix>(3, zero(1, 2)), 2, 1) == single_box());
    }
    SUBCASE("non-commuting input is rejected") {
        FqMatrix a(2, 2), b(2, 2);
        a.at(1, 0) = 1;
        b.at(0, 1) = 1;
        CHECK_THROWS_AS(partition_from_matrices(std::vector<FqMatrix>{a, b}, 1, 2), NotCommuting);
    }
    SUBCASE("one-dimensional example keeps its type") {
        const StratumModel model(line8());
        for (const auto& pt : sample_points(model, 3, 30, 1'000'000, 4))
            CHECK(partition_from_matrices(instantiate_matrices(model, pt), 1, 8) == line8());
    }
    SUBCASE("round trip for every stratum with n <= 4") {
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 4; ++n)
                for (const auto& p : enumerate_partitions(m, n)) {
                    const StratumModel model(p);
                    for (std::uint32_t q : {2u, 3u})
                        for (const auto& pt : sample_points(model, q, 20, 1'000'000, 9)) {
                            const auto mats = instantiate_matrices(model, pt);
                            CHECK(check_commuting(mats));
                            CHECK_MESSAGE(partition_from_matrices(mats, m, n) == p, p.encode());
                            CHECK(generators_annihilate(model, mats, pt));
                        }
                }
    }
}

TEST_CASE("ideal generators") {
    SUBCASE("single box") {
        const auto gens = ideal_generators(StratumLayout(single_box()));
        CHECK(std::set<std::string>(gens.begin(), gens.end()) == std::set<std::string>{"z", "x", "y"});
    }
    SUBCASE("symbolic generators of a five-dimensional cell") {
        const auto gens = ideal_generators(StratumLayout(cell5()));
        CHECK(gens.size() == 8);
        bool found_z = false;
        for (const auto& g : gens)
            if (split_terms(g) == std::set<std::string>{"z", "a[1 0 0][0 1 0]*x", "a[1 0 0][0 2 0]*x^2",
                                                         "a[1 0 0][0 0 1]*y"})
                found_z = true;
        CHECK(found_z);
        CHECK(std::find(gens.begin(), gens.end(), "x^2*y") != gens.end());
    }
    SUBCASE("a point of lambda=(2) gives the monomial ideal") {
        const StratumLayout layout(part(1, {{{0}, 2}}));
        StratumPoint pt{2, {}};
        const auto gens = ideal_generators(layout, &pt);
        CHECK(std::set<std::string>(gens.begin(), gens.end()) == std::set<std::string>{"z^2", "x", "z*x"});
    }
    SUBCASE("numeric coefficients") {
        const StratumLayout layout(part(1, {{{0}, 1}, {{1}, 1}}));
        REQUIRE(layout.variables().size() == 1);
        StratumPoint pt{5, {3}};
        const auto gens = ideal_generators(layout, &pt);
        CHECK(std::find(gens.begin(), gens.end(), "z - 3*x") != gens.end());
    }
}
