#include <doctest.h>

#include "pdpair/constructions.hpp"
#include "pdpair/cover.hpp"
#include "pdpair/local_system.hpp"
#include "pdpair/twisted.hpp"
#include "support.hpp"

using namespace pdpair;

namespace {

const Word kSquare = {Letter{0, 1}, Letter{0, 1}};

TwistedComplex chains_with(const SimplicialPair& pair, const GroupPresentation& p, const LocalSystem& s,
                           bool relative = true) {
    return TwistedComplex(pair, Connection::from_local_system(pair.total, p, s), relative);
}

std::vector<HomologyGroup> twisted_homology(const TwistedComplex& t) {
    std::vector<HomologyGroup> out;
    for (int p = 0; p <= t.dimension(); ++p) out.push_back(t.homology(p));
    return out;
}

}  // namespace

TEST_SUITE("pi1_cover") {

TEST_CASE("orientation systems") {
    CHECK(orientation_systems(presentation(full_simplex(2))).size() == 1);
    auto circle = presentation(boundary_sphere(2));
    auto sys = orientation_systems(circle);
    REQUIRE(sys.size() == 2);
    CHECK(sys[0].is_trivial());
    CHECK(sys[1].generators[0] == SmallMatrix::scalar(1, -1));
    CHECK(orientation_systems(presentation(poincare_sphere())).size() == 1);
    CHECK(orientation_systems(presentation(torus())).size() == 4);
    CHECK(orientation_systems(presentation(klein_bottle())).size() == 4);
    CHECK(orientation_systems(presentation(projective_plane())).size() == 2);
}

TEST_CASE("local systems check their relators") {
    auto p = presentation(projective_plane());
    REQUIRE(p.generator_count == 1);
    CHECK_THROWS(LocalSystem::make(p, {SmallMatrix::from_dense({{2}})}));
    CHECK_THROWS(LocalSystem::make(p, {SmallMatrix::from_dense({{1, 1}, {0, 1}})}));
    auto s = LocalSystem::make(p, {SmallMatrix::from_dense({{0, 1}, {1, 0}})});
    CHECK(s.inverses[0] == s.generators[0]);
    auto j = local_system_to_json(s);
    CHECK(j.dump() == "{\"rank\":2,\"generators\":[[[0,1],[1,0]]],\"presentation_hash\":\"" + p.hash() + "\"}");
    auto back = local_system_from_json(j, p);
    CHECK(back.generators == s.generators);
    CHECK_THROWS_AS(local_system_from_json(j, presentation(torus())), std::invalid_argument);
}

TEST_CASE("permutation systems") {
    auto circle = presentation(boundary_sphere(2));
    auto trivial = todd_coxeter(circle, {{Letter{0, 1}}});
    CHECK(trivial.degree == 1);
    CHECK(permutation_system(circle, trivial).is_trivial());
    auto two = permutation_system(circle, todd_coxeter(circle, {kSquare}));
    CHECK(two.rank == 2);
    CHECK(two.generators[0].dense() == std::vector<std::vector<std::int64_t>>{{0, 1}, {1, 0}});
}

TEST_CASE("connections are flat") {
    for (const auto& c : {torus(), klein_bottle(), projective_plane(), poincare_sphere()}) {
        auto p = presentation(c);
        for (const auto& s : orientation_systems(p)) {
            CHECK_FALSE(Connection::from_local_system(c, p, s).flatness_defect(c));
        }
        for (const auto& t : low_index_subgroups(p, 3)) {
            auto conn = Connection::from_local_system(c, p, permutation_system(p, t));
            CHECK_FALSE(conn.flatness_defect(c));
            CHECK_FALSE(conn.tensor(conn).flatness_defect(c));
        }
    }
}

TEST_CASE("covers") {
    SimplicialPair circle(boundary_sphere(2));
    auto cp = presentation(circle.total);
    auto cover = build_cover(circle, cp, todd_coxeter(cp, {kSquare}));
    CHECK(cover.total.total.vertices().size() == 6);
    CHECK(integer_homology(cover.total.total) == std::vector<HomologyGroup>{{1, {}}, {1, {}}});
    CHECK(cover.projection.is_simplicial());

    SimplicialPair rp2(projective_plane());
    auto p = presentation(rp2.total);
    auto t = todd_coxeter(p, {});
    auto sphere = build_cover(rp2, p, t);
    CHECK(sphere.sheets == 2);
    CHECK(integer_homology(sphere.total.total) == std::vector<HomologyGroup>{{1, {}}, {0, {}}, {1, {}}});
    CHECK(sphere.total.total.euler_characteristic() == 2 * rp2.total.euler_characteristic());

    auto ps = presentation(poincare_sphere());
    auto five = low_index_subgroups(ps, 5);
    REQUIRE(five.size() == 1);
    auto c5 = build_cover(SimplicialPair(poincare_sphere()), ps, five[0]);
    CHECK(c5.total.total.euler_characteristic() == 0);
    CHECK(validate(c5.total.total).valid());
}

TEST_CASE("permutation system homology equals cover homology") {
    std::vector<SimplicialPair> pairs = {SimplicialPair(boundary_sphere(2)), SimplicialPair(projective_plane()),
                                         SimplicialPair(torus()), moebius_band(), SimplicialPair(klein_bottle())};
    pairs.push_back(puncture(poincare_sphere()));
    for (const auto& pair : pairs) {
        auto p = presentation(pair.total);
        for (const auto& t : low_index_subgroups(p, 5, 6)) {
            auto cover = build_cover(pair, p, t);
            auto base = chains_with(pair, p, permutation_system(p, t));
            CHECK(twisted_homology(base) == integer_homology(cover.total));
        }
    }
}

TEST_CASE("transfer") {
    SimplicialPair m = moebius_band();
    auto p = presentation(m.total);
    auto tables = low_index_subgroups(p, 3);
    REQUIRE_FALSE(tables.empty());
    for (const auto& t : tables) {
        auto cover = build_cover(m, p, t);
        TwistedComplex base(m, Connection::trivial(m.total), true);
        TwistedComplex up(cover.total, Connection::trivial(cover.total.total), true);
        auto tr = transfer_chain(cover, base, up);
        auto pr = projection_chain(cover, up, base);
        auto composite = tr.then(pr);
        for (int q = 0; q <= 2; ++q) {
            CHECK(composite.component(q) == SparseIntMatrix::identity(base.realized().rank(q)).scaled(BigInt(
                                                static_cast<long>(t.degree))));
        }
    }

    // The twisted fundamental cycle of RP^2 transfers to a generator of H_2(S^2).
    SimplicialPair rp2(projective_plane());
    auto q = presentation(rp2.total);
    auto orient = orientation_systems(q)[1];
    auto base = chains_with(rp2, q, orient);
    HomologyBasis h(base.realized(), 2);
    REQUIRE(h.group() == HomologyGroup{1, {}});
    auto cover = build_cover(rp2, q, todd_coxeter(q, {}));
    auto pulled = Connection::from_local_system(rp2.total, q, orient).pullback(cover.projection);
    TwistedComplex up(cover.total, pulled, true);
    auto image = transfer_chain(cover, base, up).component(2).apply(h.free_generators()[0]);
    HomologyBasis hs(up.realized(), 2);
    REQUIRE(hs.group() == HomologyGroup{1, {}});
    auto coords = hs.coordinates(image);
    CHECK(abs(coords[0]) == 1);
}

}
