import json
import os
from fractions import Fraction as F

import pytest

import invlip

DATA = os.environ.get("INVLIP_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def test_ramp_approximant():
    f1 = invlip.GroupSpace.free_group(1)
    ramp = invlip.one_sided_ramp(1, 16)
    assert ramp(f1, f1.generator(0, 2)) == 2
    assert ramp(f1, f1.generator(0, -3)) == 0
    fbar, report = invlip.free_approximant(ramp, f1, 16)
    assert fbar.hom == [F(1, 2)]
    assert report["achieved_exact"] == "1/2"
    assert report["pass"]


def test_mean_growth_and_gap():
    f1 = invlip.GroupSpace.free_group(1, ["s"])
    ramp = invlip.one_sided_ramp(1, 16)
    mg = invlip.mean_growth(ramp, f1, f1.parse("s"), f1.identity(), 4)
    assert (mg["c_plus"], mg["c_minus"], mg["c"]) == ("1", "0", "1/2")
    assert invlip.gap_characterization(ramp, f1, 2)["value"] == 1


def test_kernel_projection():
    u, t = invlip.linf_kernel_project([[1, 1]], [1, 0])
    assert u == [F(1, 2), F(-1, 2)] and t == F(1, 2)
    assert invlip.kernel_project_oracle([[2, -3]], [1, 0]) == F(2, 5)
    assert invlip.linf_kernel_project([["0", "0"]], [1, 7])[1] == 0


def test_presented_and_finite():
    z2 = invlip.with_presentation(invlip.GroupSpace.free_abelian(2), ["a b a^-1 b^-1"])
    f = invlip.LipFn.random(z2, 1, 2, 5)
    _, report = invlip.presented_approximant(f, z2, 4)
    assert report["pass"] and report["constants"]["C_R"] == "2"
    z5 = invlip.GroupSpace.cyclic(5)
    g = invlip.LipFn.random(z5, 1, 2, 3)
    delta = F(invlip.delta_defect(g, z5, 3)["value"])
    assert invlip.shrink_norm_check(z5, g, delta)


def test_orbit_collapse():
    action = invlip.reflected_strip()
    f = [F(i % 2, 3) for i in range(8)]
    fbar, report, invariant = invlip.orbit_collapse(action, f)
    assert invariant and report["pass"]
    assert all(fbar[i] == fbar[i ^ 1] for i in range(8))


def test_quasimorphism_policy():
    f2 = invlip.GroupSpace.free_group(2)
    f = invlip.LipFn.homomorphism([1, 0])
    with pytest.raises(invlip.DomainError):
        invlip.qm_defects(f, f2, 2)
    assert invlip.qm_defects(f, f2, 2, skip_bi_invariance=True)["defect_D"] == "0"


def test_oracle_backend_with_python_callbacks():
    def normal_form(w):
        k = sum(sign for _, sign in w.letters) % 6
        return invlip.Word.generator(1, 0, k)

    def norm(w):
        k = sum(sign for _, sign in w.letters) % 6
        return min(k, 6 - k)

    z6 = invlip.GroupSpace.oracle(1, normal_form, norm, ["s"])
    assert len(z6.ball(3)) == 6
    assert z6.distance(z6.generator(0, 5), z6.identity()) == 1


def test_structured_from_data_file():
    with open(os.path.join(DATA, "one_sided_ramp.json")) as fh:
        inst = json.load(fh)
    f1 = invlip.GroupSpace.free_group(1, ["s"])
    ramp = invlip.LipFn.from_json(inst["function"], f1)
    assert invlip.lipschitz_number(ramp, f1, 4)["value"] == 1


def test_errors_are_typed():
    with pytest.raises(invlip.ParseError):
        invlip.GroupSpace.free_group(2).parse("c")
    with pytest.raises(invlip.InvlipError):
        invlip.LipFn.structured(invlip.GroupSpace.free_group(1), [0], {"e": 1})


def test_suite_subset():
    results = invlip.run_suite("1..3", [1, 7], 1)
    assert [r["pass"] for r in results] == [True, True]
