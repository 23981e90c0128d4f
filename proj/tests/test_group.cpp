#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "pdpair/constructions.hpp"
#include "pdpair/group.hpp"
#include "support.hpp"

using namespace pdpair;

namespace {

Word w(std::initializer_list<int> letters) {
    Word out;
    for (int x : letters) out.push_back({static_cast<std::uint32_t>(std::abs(x) - 1), x > 0 ? 1 : -1});
    return out;
}

GroupPresentation group(std::size_t gens, std::vector<Word> rels) {
    GroupPresentation p;
    p.generator_count = gens;
    p.relators = std::move(rels);
    return p;
}

// Order of the group generated by the table's permutations, by closure.
std::size_t permutation_group_order(const CosetTable& t) {
    using Perm = std::vector<std::uint32_t>;
    Perm id(t.degree);
    std::iota(id.begin(), id.end(), 0u);
    std::set<Perm> seen{id};
    std::vector<Perm> frontier{id};
    while (!frontier.empty()) {
        Perm p = frontier.back();
        frontier.pop_back();
        for (const auto& g : t.action) {
            Perm q(t.degree);
            for (std::size_t i = 0; i < t.degree; ++i) q[i] = g[p[i]];
            if (seen.insert(q).second) frontier.push_back(q);
        }
    }
    return seen.size();
}

}  // namespace

TEST_SUITE("pi1_cover") {

TEST_CASE("word reduction") {
    CHECK(free_reduce(w({1, 2, -2, -1, 3})) == w({3}));
    CHECK(cyclic_reduce(w({-1, 2, 3, 1})) == w({2, 3}));
    CHECK(inverse(w({1, -2})) == w({2, -1}));
    CHECK(concat(w({1, 2}), w({-2, 3})) == w({1, 3}));
}

TEST_CASE("presentations of small complexes") {
    auto simplex = presentation(full_simplex(2));
    CHECK(simplex.generator_count == 0);
    CHECK(simplex.relators.empty());

    auto circle = presentation(boundary_sphere(2));
    CHECK(circle.generator_count == 1);
    CHECK(circle.relators.empty());

    auto raw = presentation(boundary_sphere(3), std::nullopt, false);
    CHECK(raw.generator_count == 3);
    auto sphere = presentation(boundary_sphere(3));
    CHECK(sphere.generator_count == 0);

    auto t = presentation(torus());
    CHECK(abelianization(t) == HomologyGroup{2, {}});
    auto rp2 = presentation(projective_plane());
    CHECK(abelianization(rp2) == HomologyGroup{0, {BigInt(2)}});
    CHECK(todd_coxeter(rp2, {}).degree == 2);
}

TEST_CASE("edge words agree with relators") {
    // Every triangle must close up in each finite quotient.
    for (const auto& c : {torus(), klein_bottle(), projective_plane(), poincare_sphere()}) {
        auto p = presentation(c);
        CHECK(p.edge_words.size() == c.count(1));
        auto tables = low_index_subgroups(p, 5);
        CHECK_FALSE(tables.empty());
        for (const auto& table : tables) {
            for (std::size_t t = 0; t < c.count(2); ++t) {
                Word loop = concat(concat(p.edge_words[c.face_index(2, t, 2)], p.edge_words[c.face_index(2, t, 0)]),
                                   inverse(p.edge_words[c.face_index(2, t, 1)]));
                for (std::uint32_t x = 0; x < table.degree; ++x) CHECK(table.act(x, loop) == x);
            }
        }
    }
}

TEST_CASE("abelianization matches first homology") {
    for (const auto& c : {torus(), klein_bottle(), projective_plane(), poincare_sphere(), projective_space3(),
                          moebius_band().total}) {
        CHECK(abelianization(presentation(c)) == integer_homology(c)[1]);
    }
}

TEST_CASE("coset enumeration of finite groups") {
    auto cyclic = group(1, {w({1, 1, 1, 1, 1, 1})});
    CHECK(todd_coxeter(cyclic, {}).degree == 6);
    CHECK(todd_coxeter(cyclic, {w({1, 1})}).degree == 2);

    auto s3 = group(2, {w({1, 1}), w({2, 2, 2}), w({1, 2, 1, 2})});
    auto regular = todd_coxeter(s3, {});
    CHECK(regular.degree == 6);
    CHECK(permutation_group_order(regular) == 6);
    CHECK(todd_coxeter(s3, {w({1})}).degree == 3);

    auto trivial = group(2, {w({1, 2, -1, -2, -2}), w({2, 1, -2, -1, -1})});
    CHECK(todd_coxeter(trivial, {}).degree == 1);

    auto quaternion = group(2, {w({1, 1, -2, -2}), w({1, 2, 1, -2})});
    CHECK(todd_coxeter(quaternion, {}).degree == 8);
}

TEST_CASE("fundamental groups of embedded manifolds") {
    auto ps = presentation(poincare_sphere());
    CHECK(abelianization(ps).is_zero());
    auto t = todd_coxeter(ps, {});
    CHECK(t.degree == 120);
    CHECK(permutation_group_order(t) == 120);
    CHECK(todd_coxeter(presentation(projective_space3()), {}).degree == 2);
}

TEST_CASE("coset limit") {
    CHECK_THROWS_AS(todd_coxeter(presentation(torus()), {}, 500), CosetLimitExceeded);
    CHECK_THROWS_AS(todd_coxeter(group(2, {}), {}, 100), CosetLimitExceeded);
}

TEST_CASE("low index subgroups") {
    auto free2 = group(2, {});
    auto tables = low_index_subgroups(free2, 3, 1000);
    // conjugacy classes of index 2 and 3 subgroups of the free group of rank 2
    CHECK(std::count_if(tables.begin(), tables.end(), [](auto& t) { return t.degree == 2; }) == 3);
    CHECK(std::count_if(tables.begin(), tables.end(), [](auto& t) { return t.degree == 3; }) == 7);
    for (const auto& t : tables) CHECK_FALSE(table_defect(free2, t));

    auto cyclic = group(1, {w({1, 1, 1, 1, 1, 1})});
    std::vector<std::size_t> degrees;
    for (const auto& t : low_index_subgroups(cyclic, 6)) degrees.push_back(t.degree);
    CHECK(degrees == std::vector<std::size_t>{2, 3, 6});

    auto ps = presentation(poincare_sphere());
    auto sub = low_index_subgroups(ps, 5);
    REQUIRE(sub.size() == 1);
    CHECK(sub[0].degree == 5);
    CHECK(permutation_group_order(sub[0]) == 60);
}

TEST_CASE("presentation hash") {
    auto a = presentation(poincare_sphere());
    auto b = presentation(poincare_sphere());
    CHECK(a.hash() == b.hash());
    CHECK(a.hash().size() == 16);
    CHECK(a.hash() != presentation(projective_space3()).hash());
}

}
