# SPDX-License-Identifier: Apache-2.0
import math

import pytest

import bregcc

NE_SITES = [[1, 1, 1], [1, 2, 1], [1, 1, 2]]
FD_SITES = [[0.25, 0.25, 0.25], [0.25, 0.5, 0.25], [0.25, 0.25, 0.5]]
BURG_SITES = [[1, 2, 1], [0.5, 1.5, 0.5], [1.5, 2.5, 1.5]]
INV_LN2 = 1.4426950408889634
FOUR_OVER_E = 1.4715177646857693


def test_list_functions():
    names = bregcc.list_functions()
    for name in ("energy", "negative_entropy", "fermi_dirac", "burg_entropy",
                 "neg_sqrt"):
        assert name in names


def test_bregman_distance():
    d = bregcc.bregman_distance("negative_entropy", [1, 2], [2, 1])
    assert d == pytest.approx(math.log(2.0), abs=1e-14)
    assert bregcc.bregman_distance("negative_entropy", [1, 1], [0, 1]) == math.inf
    assert bregcc.bregman_distance("energy", [3, 0], [0, 4]) == pytest.approx(12.5)


def test_backward_circumcenter():
    result = bregcc.backward_circumcenter("negative_entropy", NE_SITES)
    assert result["status"] == "Unique"
    assert result["point"] == pytest.approx([1.0, INV_LN2, INV_LN2], abs=1e-9)
    assert result["solver_residual"] <= 1e-8


def test_backward_pseudo_reports_emptiness():
    result = bregcc.backward_pseudo_circumcenter("burg_entropy", BURG_SITES)
    assert result["status"] == "Empty"
    assert result["in_domain"] is False
    # The infeasible solution of the restricted system is kept for diagnosis.
    assert len(result["point"]) == 3


def test_forward_circumcenter_and_seeding():
    result = bregcc.forward_circumcenter("fermi_dirac", FD_SITES)
    assert result["status"] == "Unique"
    assert result["point"][1] == pytest.approx(16.0 / 43.0, abs=1e-8)

    again = bregcc.forward_circumcenter("fermi_dirac", FD_SITES, seed=0)
    assert again["point"] == result["point"]
    reseeded = bregcc.forward_circumcenter("fermi_dirac", FD_SITES, seed=5)
    assert reseeded["point"] == pytest.approx(result["point"], abs=1e-9)


def test_forward_pseudo_circumcenter():
    result = bregcc.forward_pseudo_circumcenter("negative_entropy", NE_SITES)
    assert result["status"] == "Unique"
    assert result["point"] == pytest.approx(
        [math.e, FOUR_OVER_E, FOUR_OVER_E], abs=1e-9)


def test_certified_empty_instances():
    result = bregcc.forward_circumcenter("negative_entropy", [[1], [2], [3]])
    assert result["status"] == "Empty"
    assert "inconsistent" in result["detail"]

    result = bregcc.forward_pseudo_circumcenter("neg_sqrt", [[1, 1], [4, 1]])
    assert result["status"] == "Empty"


def test_projections():
    back = bregcc.project_backward("negative_entropy", [0, 0], [[1, 1]], [1, 4])
    assert back["point"] == pytest.approx([2.0, 2.0], abs=1e-9)
    assert back["iterations"] >= 1
    assert back["residual"] <= 1e-10

    fwd = bregcc.project_forward("negative_entropy", [0, 0], [[1, 1]], [1, 4])
    assert fwd["point"] == pytest.approx([2.5, 2.5], abs=1e-9)

    with pytest.raises(ValueError):
        bregcc.project_forward("burg_entropy", [1, 1], [[1, 0]], [2, 2])


def test_verify_equidistance():
    good = bregcc.verify_equidistance(
        "negative_entropy", NE_SITES, [1.0, INV_LN2, INV_LN2])
    assert good["verdict"] == "Pass"
    assert good["worst_residual"] < 1e-9

    bad = bregcc.verify_equidistance(
        "negative_entropy", NE_SITES, [1.0, INV_LN2 + 1e-3, INV_LN2])
    assert bad["verdict"] == "Fail"

    forward = bregcc.verify_equidistance(
        "negative_entropy", NE_SITES, [1.0, FOUR_OVER_E, FOUR_OVER_E],
        mode="forward", tol=1e-7)
    assert forward["verdict"] == "Pass"


def test_check_pseudo_duality():
    both_empty = bregcc.check_pseudo_duality("burg_entropy", BURG_SITES)
    assert both_empty["status"] == "Match"
    assert both_empty["lhs"]["kind"] == "Empty"

    boundary = bregcc.check_pseudo_duality("negative_entropy", NE_SITES)
    assert boundary["status"] == "Inapplicable"
    assert "bd dom f" in boundary["detail"]


def test_error_mapping():
    with pytest.raises(ValueError):
        bregcc.bregman_distance("no_such_kernel", [1], [1])
    with pytest.raises(ValueError):
        bregcc.backward_circumcenter("negative_entropy",
                                     [[0, 1, 1], [1, 2, 1], [1, 1, 2]])
    with pytest.raises(ValueError):
        bregcc.backward_circumcenter("negative_entropy", [])
    with pytest.raises(ValueError):
        bregcc.verify_equidistance("negative_entropy", NE_SITES, [1.0, 1.0])
