import pytest

import pdpair


def interval():
    return {"vertices": 2, "facets": [[0, 1]], "sub_facets": [[0], [1]]}


def test_sphere_homology():
    groups = pdpair.homology(pdpair.builtin("boundary_sphere", 4))
    assert [g["rank"] for g in groups] == [1, 0, 0, 1]


def test_twisted_homology_of_rp2():
    rp2 = pdpair.builtin("projective_plane")
    sign = pdpair.orientation_systems(rp2)[1]
    groups = pdpair.homology(rp2, system=sign)
    assert groups[0] == {"rank": 0, "torsion": [2]}
    assert groups[2] == {"rank": 1, "torsion": []}


def test_interval_is_a_pair():
    r = pdpair.verify_pair(interval())
    assert r["verdict"] == "holds"
    assert r["formal_dimension"] == 1


def test_wedge_is_rejected():
    wedge = {"vertices": 4, "facets": [[0, 1], [1, 2], [0, 2], [2, 3]], "sub_facets": [[2]]}
    r = pdpair.verify_pair(wedge)
    assert r["classification"] == "not a poincare pair"


def test_circle_is_undecided():
    r = pdpair.verify_pair(pdpair.builtin("boundary_sphere", 2))
    assert r["verdict"] == "undecided"
    assert r["integer_only"]


def test_thom_class_of_interval():
    assert pdpair.find_thom_class(interval(), 1)["verdict"] == "holds"


def test_constructions():
    torus = pdpair.construct("product", pdpair.builtin("boundary_sphere", 2), pdpair.builtin("boundary_sphere", 2))
    assert len(torus["facets"]) == 18
    cone = pdpair.construct("cone", pdpair.builtin("boundary_sphere", 3))
    assert pdpair.verify_pair(cone)["classification"] == "poincare pair"


def test_scenario():
    run = pdpair.run_scenario("covering")
    assert run["match"]
    assert run["observed"]["transfer_coordinate_abs"] == 1


def test_parse_error():
    with pytest.raises(ValueError):
        pdpair.verify_pair('{"vertices": 2, "facets": [[0, 5]]}')
