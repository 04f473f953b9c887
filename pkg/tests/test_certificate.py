import itertools
import json

import pytest

from surface_cert.certificate import (
    STATUSES,
    Certificate,
    RouteRejected,
    canonical_json,
    combine_verdict,
    replay_certificate,
    reproduce_table,
    resolve_target,
    spin_eligibility,
    verify_cyclic_route,
    verify_heisenberg_route,
    verify_twist_spin_route,
)
from surface_cert.constructions import he3_mod_p, knot_by_name, load_mathieu
from surface_cert.homology import ExternalTable
from surface_cert.perm import HeisenbergWitness


def test_verdict_never_pass_with_a_bad_check():
    for n in range(1, 5):
        for combo in itertools.product(STATUSES, repeat=n):
            v = combine_verdict(combo)
            if all(s == "pass" for s in combo):
                assert v == "pass"
            else:
                assert v != "pass"
            if "fail" in combo:
                assert v == "fail"


def test_informational_checks_do_not_decide():
    c = Certificate({"route": "cyclic"})
    c.add("a", "pass")
    c.add("b", "fail", required=False)
    assert c.verdict == "pass"


def test_external_table_makes_certificate_conditional():
    c = Certificate({"route": "heisenberg"})
    c.add("h3-vanishing", "pass", source="external-table")
    assert c.verdict == "pass" and c.conditional and not c.certified
    assert "conditional on cited table data" in c.to_json()["notes"]


def test_cyclic_route_pass():
    c = verify_cyclic_route(1, 7, 7)
    assert c.verdict == "pass" and c.certified
    assert [k.name for k in c.checks] == [
        "hom-well-defined", "mu-nontrivial", "normal-generation", "perfect", "h3-vanishing"]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_cyclic_route_monotone(k):
    c = verify_cyclic_route(1, 7 * k, 7)
    assert c.verdict == "pass"
    assert c.check("mu-nontrivial").provenance["order"] == 7


def test_cyclic_route_negative_euler_and_genus_two():
    assert verify_cyclic_route(2, -11, 11, mu_sign=-1).verdict == "pass"


def test_cyclic_route_rejections():
    with pytest.raises(RouteRejected, match=r"\[4\]"):
        verify_cyclic_route(1, 10, 5)
    with pytest.raises(RouteRejected):
        verify_cyclic_route(1, 9, 7)
    with pytest.raises(RouteRejected):
        verify_cyclic_route(1, 6, 3)


def test_heisenberg_m22():
    c = verify_heisenberg_route(1, 1, resolve_target("M22"), 2)
    assert c.verdict == "pass" and c.conditional and not c.certified
    assert c.check("h3-vanishing").provenance["source"] == "external-table"


def test_heisenberg_m23_genus_two():
    c = verify_heisenberg_route(2, -1, resolve_target("M23"), 2)
    assert c.verdict == "pass"


def test_heisenberg_into_he3_2_fails_normal_generation():
    H = he3_mod_p(2)
    target = resolve_target("he3_2")
    c = verify_heisenberg_route(1, 1, target, 2, witness=HeisenbergWitness(H.a, H.b, 2))
    assert c.verdict == "fail"
    ng = c.check("normal-generation")
    assert ng.status == "fail" and ng.provenance["closure_order"] == 2


def test_heisenberg_invalid_witness():
    G = load_mathieu("M22").group
    a = G.generators[0]
    with pytest.raises(ValueError):
        verify_heisenberg_route(1, 1, resolve_target("M22"), 2, witness=HeisenbergWitness(a, a, 2))


def test_heisenberg_lagrange_exclusion_fails():
    c = verify_heisenberg_route(1, 1, resolve_target("M22"), 3)
    assert c.verdict == "fail"
    assert c.check("he3-subgroup").provenance["method"] == "Lagrange"


def test_heisenberg_rejects_other_euler_numbers():
    with pytest.raises(RouteRejected):
        verify_heisenberg_route(1, 2, resolve_target("M22"), 2)


def test_replay():
    for c in (verify_cyclic_route(1, 7, 7), verify_heisenberg_route(1, 1, resolve_target("M22"), 2)):
        doc = json.loads(canonical_json(c))
        assert replay_certificate(doc) == (True, [])
        doc["phi"]["images"]["z"] = "()"
        ok, problems = replay_certificate(doc)
        assert not ok and problems


def test_twist_spin():
    c = verify_twist_spin_route(knot_by_name("trefoil"), 2, 1)
    assert c.verdict == "pass"
    assert c.check("non-abelian").provenance["order"] == 6
    assert c.input["euler_number"] == 4
    c = verify_twist_spin_route(knot_by_name("trefoil"), 3, 1)
    assert c.check("non-abelian").provenance["order"] == 24
    assert verify_twist_spin_route(knot_by_name("unknot"), 2).verdict == "fail"


def test_twist_spin_overflow_falls_back_to_search():
    c = verify_twist_spin_route(knot_by_name("trefoil"), 3, coset_budget=5)
    nab = c.check("non-abelian")
    assert nab.status == "pass" and nab.provenance["degree"] <= 8
    c = verify_twist_spin_route(knot_by_name("unknot"), 2, coset_budget=1, search_trials=50)
    assert c.check("non-abelian").status == "inconclusive"
    assert c.verdict == "inconclusive"


def test_spin_eligibility():
    table = ExternalTable.load()
    assert spin_eligibility("M23", 2, perfect=True, table=table)["status"] == "eligible"
    assert spin_eligibility("M22", 2, perfect=True, table=table)["status"] == "ineligible"
    assert spin_eligibility("M22", 3, perfect=True)["status"] == "not-applicable"
    he3 = spin_eligibility("he3_2", 2, group=he3_mod_p(2).group)
    assert he3["status"] == "ineligible" and he3["h1"] == "non-zero"


def test_table_report():
    report = reproduce_table("desk")
    rows = {r["group"]: r for r in report["mathieu"]}
    assert rows["M22"]["he3"]["2"]["status"] == "confirmed"
    assert rows["M23"]["he3"]["2"]["status"] == "confirmed"
    assert rows["M11"]["he3"]["3"]["status"] == "confirmed-absent"
    assert all(r["order_status"] == "confirmed" for r in report["mathieu"])
    assert all(r["status"] == "confirmed" for r in report["psl2"])
    ext = {r["group"]: r for r in report["external"]}
    assert ext["He"]["status"] == "external-only"
    assert "not known" in ext["Monster"]["H3"]


def test_canonical_json_is_stable():
    a = canonical_json(verify_heisenberg_route(1, 1, resolve_target("M22"), 2))
    b = canonical_json(verify_heisenberg_route(1, 1, resolve_target("M22"), 2))
    assert a == b
    assert json.loads(a)["schema"] == 1
