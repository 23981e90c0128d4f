#include <doctest.h>

#include "pdpair/constructions.hpp"
#include "pdpair/io.hpp"
#include "support.hpp"

using namespace pdpair;

namespace {

HomologyGroup Z(std::size_t r = 1) { return {r, {}}; }
HomologyGroup tors(long t) { return {0, {BigInt(t)}}; }

void check_dd_zero(const SimplicialComplex& c) {
    for (int p = 1; p < c.dimension(); ++p) {
        CHECK((boundary_matrix(c, p) * boundary_matrix(c, p + 1)).is_zero());
    }
}

long binomial(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_SUITE("complex_core") {

TEST_CASE("validate") {
    CHECK(validate(full_simplex(3)).valid());
    auto bad = SimplicialComplex::from_simplices_unchecked(3, {{0, 1}, {1, 2}});
    auto d = validate(bad);
    CHECK_FALSE(d.valid());
    CHECK(std::find(d.problems.begin(), d.problems.end(), "face [1] absent") != d.problems.end());
    auto s2 = boundary_sphere(3);
    CHECK(validate(s2).valid());
    CHECK(s2.dimension() == 2);
    CHECK(s2.size() == 14);
}

TEST_CASE("boundary matrices") {
    auto d1 = boundary_matrix(full_simplex(1), 1);
    CHECK(d1.at(0, 0) == -1);
    CHECK(d1.at(1, 0) == 1);
    auto d2 = boundary_matrix(boundary_sphere(3), 2);
    CHECK(d2.rows() == 6);
    CHECK(d2.cols() == 4);
    CHECK(integer_rank(d2) == 3);
    CHECK_THROWS(boundary_matrix(full_simplex(1), 2));
    for (const auto& c : {full_simplex(4), boundary_sphere(5), projective_plane(), klein_bottle(), torus(),
                          poincare_sphere()}) {
        check_dd_zero(c);
    }
}

TEST_CASE("cone") {
    auto pt = full_simplex(0);
    auto c = cone(pt);
    CHECK(c.total.f_vector() == std::vector<std::size_t>{2, 1});
    CHECK(c.sub.count(0) == 1);
    auto cs = cone(boundary_sphere(3));
    for (const auto& h : reduced_homology(cs.total)) CHECK(h.is_zero());
    for (const auto& x : {boundary_sphere(3), projective_plane(), torus()}) {
        CHECK(cone(x).total.size() == 2 * x.size() + 1);
    }
}

TEST_CASE("product") {
    auto sq = product(full_simplex(1), full_simplex(1));
    CHECK(sq.f_vector() == std::vector<std::size_t>{4, 5, 2});
    CHECK(sq.contains({0, 2, 3}));  // (0,0),(1,0),(1,1)
    CHECK(sq.contains({0, 1, 3}));  // (0,0),(0,1),(1,1)
    auto rp = projective_plane();
    auto rp_pt = product(rp, full_simplex(0));
    CHECK(rp_pt == rp);
    CHECK(integer_homology(torus()) == std::vector<HomologyGroup>{Z(), Z(2), Z()});
    // top simplices: facet pairs times binomial(q + r, q)
    auto a = projective_plane(), b = full_simplex(1);
    auto ab = product(a, b);
    CHECK(static_cast<long>(ab.count(3)) == static_cast<long>(a.count(2)) * binomial(3, 2));
    auto s1 = boundary_sphere(2);
    CHECK(static_cast<long>(product(s1, s1).count(2)) == 9 * binomial(2, 1));
    check_dd_zero(product(boundary_sphere(3), boundary_sphere(2)));
}

TEST_CASE("product of pairs") {
    SimplicialPair interval(full_simplex(1), boundary_sphere(1));
    SimplicialPair point(full_simplex(0));
    auto p = product_pair(interval, point);
    CHECK(p.total == interval.total);
    CHECK(p.sub == interval.sub);
    auto q = product_pair(SimplicialPair(torus()), SimplicialPair(boundary_sphere(2)));
    CHECK(q.sub.empty());
    auto sq = product_pair(interval, interval);
    auto h = integer_homology(sq);
    CHECK(h[2] == Z());
    CHECK(h[0].is_zero());
    CHECK(h[1].is_zero());
}

TEST_CASE("glue") {
    SimplicialPair interval(full_simplex(1), boundary_sphere(1));
    auto g = glue(interval, interval, {0, 1});
    CHECK(g.complex.vertices().size() == 4);
    CHECK(integer_homology(g.complex) == std::vector<HomologyGroup>{Z(), Z()});
    SimplicialPair ball(full_simplex(3), boundary_sphere(3));
    auto s3 = glue(ball, ball, {0, 1, 2, 3});
    CHECK(integer_homology(s3.complex) == std::vector<HomologyGroup>{Z(), {}, {}, Z()});
    auto m = moebius_band();
    CHECK(glue(m, m, {0, 1, 2, 3, 4}).complex == double_pair(m).pair.total);
    CHECK_THROWS(glue(interval, interval, {1, 1}));
}

TEST_CASE("double") {
    SimplicialPair interval(full_simplex(1), boundary_sphere(1));
    auto circ = double_pair(interval);
    CHECK(integer_homology(circ.pair.total) == std::vector<HomologyGroup>{Z(), Z()});
    CHECK(circ.pair.sub.empty());
    auto k = klein_bottle();
    CHECK(integer_homology(k) == std::vector<HomologyGroup>{Z(), {1, {BigInt(2)}}, {}});
    SimplicialPair tri(full_simplex(2), SimplicialComplex::from_facets(3, {{0, 1}}));
    auto sq = double_pair(tri);
    CHECK(sq.pair.total.vertices().size() == 4);
    for (const auto& h : reduced_homology(sq.pair.total)) CHECK(h.is_zero());
    CHECK_THROWS(double_pair(SimplicialPair(full_simplex(2))));
}

TEST_CASE("double admits the swap involution") {
    for (const auto& pair : {moebius_band(), SimplicialPair(full_simplex(3), boundary_sphere(3)), puncture(torus())}) {
        auto d = double_pair(pair);
        CHECK(d.swap.is_isomorphism());
        for (Vertex v = 0; v < d.swap.vertex_images.size(); ++v) {
            CHECK(d.swap.vertex_images[d.swap.vertex_images[v]] == v);
        }
        for (auto v : d.parts.piece1.sub.vertices()) CHECK(d.swap.vertex_images[v] == v);
    }
}

TEST_CASE("puncture") {
    auto disk = puncture(boundary_sphere(3));
    for (const auto& h : reduced_homology(disk.total)) CHECK(h.is_zero());
    CHECK(disk.sub.count(2) == 0);
    CHECK(disk.sub.count(1) == 3);
    auto hollow = puncture(full_simplex(3));
    CHECK(hollow.total == boundary_sphere(3));
    CHECK_THROWS(puncture(SimplicialComplex::from_facets(4, {{0, 1, 2}, {2, 3}})));
    auto a = puncture(poincare_sphere());
    for (const auto& h : reduced_homology(a.total)) CHECK(h.is_zero());
}

TEST_CASE("puncture reassembles") {
    for (const auto& m : {boundary_sphere(4), projective_plane(), torus(), poincare_sphere()}) {
        auto sigma = m.facets()[1];
        auto p = puncture(m, 1);
        CHECK_FALSE(p.total.contains(sigma));
        auto cell = SimplicialComplex::from_facets(m.vertex_count(), {sigma});
        CHECK(complex_to_json(p.total.union_with(cell)) == complex_to_json(m));
    }
}

TEST_CASE("spheres") {
    CHECK(boundary_sphere(1).vertices().size() == 2);
    CHECK(boundary_sphere(1).dimension() == 0);
    CHECK(boundary_sphere(2).f_vector() == std::vector<std::size_t>{3, 3});
    CHECK(integer_homology(boundary_sphere(4)) == std::vector<HomologyGroup>{Z(), {}, {}, Z()});
}

TEST_CASE("embedded manifolds") {
    const auto& p = poincare_sphere();
    CHECK(p.f_vector() == std::vector<std::size_t>{16, 106, 180, 90});
    CHECK(validate(p).valid());
    CHECK(integer_homology(p) == std::vector<HomologyGroup>{Z(), {}, {}, Z()});
    CHECK(integer_homology(projective_space3()) == std::vector<HomologyGroup>{Z(), tors(2), {}, Z()});
    CHECK(integer_homology(projective_plane()) == std::vector<HomologyGroup>{Z(), tors(2), {}});
}

TEST_CASE("json round trip") {
    auto pair = moebius_band();
    auto j = pair_to_json(pair);
    auto back = pair_from_json(parse_json_text(j.dump()));
    CHECK(back.total == pair.total);
    CHECK(back.sub == pair.sub);
    CHECK(complex_to_json(pair.total).dump() ==
          R"({"vertices":5,"facets":[[0,1,2],[0,1,4],[0,3,4],[1,2,3],[2,3,4]]})");
    CHECK_THROWS_AS(parse_json_text("{\"vertices\": 3,\n \"facets\": [[0,1]"), ParseError);
    try {
        parse_json_text("{\"vertices\": 3,\n \"facets\": [[0,1]");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(complex_from_json(parse_json_text(R"({"vertices": 2, "facets": [[0, 5]]})")), ParseError);
    CHECK_THROWS_AS(pair_from_json(parse_json_text(R"({"vertices": 3, "facets": [[0, 1]], "sub_facets": [[1, 2]]})")),
                    ParseError);
}

}  // TEST_SUITE
