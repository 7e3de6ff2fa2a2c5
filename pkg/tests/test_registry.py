"""Registry data integrity: builtin catalog, parametric families,
validation invariants, and the JSON round trip."""

import json
from fractions import Fraction as Q

import pytest

from minrep.registry import (
    FAMILIES,
    MinimalModuleRecord,
    RealFormRecord,
    RegistryFormatError,
    RegistryValidationError,
    all_default_records,
    builtin_records,
    default_instances,
    find_record,
    g_dimension,
    instantiate_family,
    joseph_infchar,
    k_dimension,
    k_display,
    load,
    normalize_name,
    record_to_json,
    save,
    validate_record,
)
from minrep.rootsys import (
    bilinear,
    factor_bilinear,
    space_rho,
    space_weyl_dim,
    weight,
    weight_add,
    weight_is_zero,
    weight_scale,
    weight_sub,
)
from minrep.weyl import apply


# ---------------------------------------------------------------------------
# catalog shape


def test_builtin_catalog_size_and_unique_names():
    records = builtin_records()
    assert len(records) == 22
    names = [r.name for r in records]
    assert len(set(names)) == len(names)


def test_default_instance_count_and_disjoint_names():
    inst = default_instances()
    assert len(inst) == sum(len(f.defaults) for f in FAMILIES.values())
    names = [r.name for r in all_default_records()]
    assert len(set(names)) == len(names)


def test_expected_count_distribution():
    by_count = {}
    for r in all_default_records():
        by_count.setdefault(r.expected_count, []).append(r.name)
    assert sorted(by_count) == [0, 1, 2, 4]
    assert set(by_count[4]) == {"sp(2,R)", "sp(3,R)", "sp(5,R)"}
    # mirror pairs: one-sided cases plus the even/odd pair over C
    assert "e6(-14)" in by_count[2] and "sp(2,C)" in by_count[2]
    assert "e8(8)" in by_count[1] and "so(7,C)" in by_count[1]
    assert "so(6,1)" in by_count[0] and "so(5,4)" in by_count[0]


def test_every_record_validates():
    for r in all_default_records():
        validate_record(r)


def test_nonexistence_reasons():
    for name in ["e6", "e7", "e8", "f4", "g2", "e6(-26)", "f4(-20)",
                 "so(6,1)", "sp(1,1)", "sp(2)", "so(7)"]:
        assert find_record(name).nonexistence_reason == "orbit-misses-p"
    for name in ["so(5,4)", "so(6,5)"]:
        assert find_record(name).nonexistence_reason == "howe-vogan-parity"


def test_zero_rows_have_no_line_data():
    for r in all_default_records():
        if r.expected_count == 0:
            assert r.modules == ()
            assert r.xi0 is None and r.w0 is None and r.infchar is None
            assert r.rho == space_rho(r.space)


# ---------------------------------------------------------------------------
# stored reference values


def test_f4_4_stored_values():
    r = find_record("f4(4)")
    assert [rs.label for rs in r.space.factors] == ["C3", "A1d"]
    m, = r.modules
    assert m.beta.factors == ((Q(1), Q(1), Q(1)), (Q(1), Q(-1)))
    assert m.mu0.factors == ((0, 0, 0), (1, -1))
    assert r.rho.factors == ((3, 2, 1), (1, -1))
    assert r.xi0.factors == ((1, 0, -1), (0, 0))
    assert [(f, v) for f, v in r.w0.letters] == [
        (0, (1, 0, 1)), (0, (0, 1, 0)), (1, (1, -1))]


def test_e8_minus24_word_uses_half_integer_roots():
    r = find_record("e8(-24)")
    letters = r.w0.letters
    assert len(letters) == 4
    h = Q(1, 2)
    assert letters[1][1] == (-h, h, h, -h, h, -h, h, -h)
    assert letters[2][1] == (h, -h, -h, h, h, -h, h, -h)
    assert r.modules[0].mu0.factors[1] == (8, -8)


def test_e7_minus25_p_summands_are_the_two_cone_weights():
    r = find_record("e7(-25)")
    plus, minus = r.p_summands
    assert plus.factors[0] == (0, 0, 0, 0, 0, Q(-2, 3), Q(-2, 3), Q(2, 3))
    assert minus.factors[0] == (0, 0, 0, 0, 0, 1 - Q(1, 3) - 1, Q(-1, 3), Q(1, 3)) or \
        minus.factors[0] == (0, 0, 0, 0, 1, Q(-1, 3), Q(-1, 3), Q(1, 3))
    assert plus.center == (1,) and minus.center == (-1,)
    assert [m.mu0.center[0] for m in r.modules] == [6, -6]


def test_sp2R_four_modules_match_metaplectic_halves():
    r = find_record("sp(2,R)")
    assert r.hermitian and r.expected_count == 4
    got = [(m.label, m.mu0.factors[0], m.mu0.center[0], m.null_half)
           for m in r.modules]
    assert got == [
        ("weil-even", (0, 0), Q(1, 2), "p-"),
        ("weil-even-conjugate", (0, 0), Q(-1, 2), "p+"),
        ("weil-odd", (1, 0), Q(1), "p-"),
        ("weil-odd-conjugate", (1, 0), Q(-1), "p+"),
    ]


def test_complex_records_use_highest_root_ladder():
    r = find_record("g2(C)")
    assert r.g_complex == ("G2", "G2")
    theta = r.p_summands[0]
    m, = r.modules
    assert m.beta == theta
    assert bilinear(r.space, r.xi0, theta) == 0
    assert len(r.w0.letters) == 1
    assert r.infchar == (joseph_infchar("G2"),) * 2


def test_so7C_two_factor_complexification():
    r = find_record("so(7,C)")
    assert r.g_complex == ("B3", "B3")
    assert g_dimension(r) == 42 and k_dimension(r) == 21


def test_hermitian_charge_sign_convention():
    for r in all_default_records():
        if not r.hermitian:
            continue
        for m in r.modules:
            assert m.null_half in ("p-", "p+")
            assert (m.mu0.center[0] > 0) == (m.null_half == "p-")
            assert m.beta.center[0] == (1 if m.null_half == "p-" else -1)


def test_beta_is_always_a_p_summand():
    for r in all_default_records():
        for m in r.modules:
            assert m.beta in r.p_summands


def test_line_data_consistency_on_stored_records():
    for r in all_default_records():
        if not r.modules or r.hermitian:
            continue
        seen = set()
        for m in r.modules:
            target = weight_add(m.mu0, r.rho)
            c = bilinear(r.space, target, m.beta) / bilinear(r.space, m.beta, m.beta)
            resid = weight_sub(target, weight_add(r.xi0, weight_scale(c, m.beta)))
            assert weight_is_zero(resid), r.name
            for i in range(len(r.space.factors)):
                assert factor_bilinear(r.space, i, r.xi0, m.beta) == 0
            seen.add(c)
        beta = r.modules[0].beta
        assert weight_is_zero(weight_add(apply(r.space, r.w0, beta), beta))
        assert apply(r.space, r.w0, r.xi0) == r.xi0


def test_p_dimension_matches_summands_everywhere():
    for r in all_default_records():
        pdim = g_dimension(r) - k_dimension(r)
        assert pdim == sum(space_weyl_dim(r.space, w) for w in r.p_summands), r.name


def test_known_p_dimensions():
    expect = {"e8(8)": 128, "f4(4)": 28, "e6(2)": 40, "g2(2)": 8,
              "e8(-24)": 112, "e7(-5)": 64, "e7(7)": 70, "e6(6)": 42,
              "so(5,3)": 15, "e6(-14)": 32, "e7(-25)": 54, "sp(2,R)": 6,
              "e6(-26)": 26, "f4(-20)": 16, "sp(1,1)": 4, "so(5,4)": 20,
              "sp(2)": 0}
    for name, dim in expect.items():
        r = find_record(name)
        assert g_dimension(r) - k_dimension(r) == dim, name


# ---------------------------------------------------------------------------
# families


def test_family_instance_names():
    assert instantiate_family("so_even_even", (3, 2)).name == "so(6,4)"
    assert instantiate_family("so_odd_odd", (2, 1)).name == "so(5,3)"
    assert instantiate_family("so_2n_3", (4,)).name == "so(8,3)"
    assert instantiate_family("sp_R", (2,)).name == "sp(2,R)"
    assert instantiate_family("so_star", (4,)).name == "so*(8)"
    assert instantiate_family("sp_C", (3,)).name == "sp(3,C)"
    assert instantiate_family("so_n_1", (6,)).name == "so(6,1)"
    assert instantiate_family("sp_compact", (2,)).name == "sp(2)"


def test_family_rejects_out_of_range_params():
    with pytest.raises(ValueError, match="n >= m >= 2"):
        instantiate_family("so_even_even", (1, 5))
    with pytest.raises(ValueError, match="p \\+ q odd"):
        instantiate_family("so_odd_sum", (5, 5))
    with pytest.raises(ValueError, match="p >= q >= 4"):
        instantiate_family("so_odd_sum", (4, 3))
    with pytest.raises(ValueError, match="n >= 2"):
        instantiate_family("sp_R", (1,))
    with pytest.raises(ValueError, match="n >= 7"):
        instantiate_family("so_C", (6,))
    with pytest.raises(ValueError, match="takes 2 parameter"):
        instantiate_family("sp_p_q", (3,))
    with pytest.raises(ValueError, match="unknown family"):
        instantiate_family("su_p_q", (2, 1))


def test_family_instances_validate_across_a_parameter_sweep():
    for n in range(2, 6):
        for m in range(2, n + 1):
            validate_record(instantiate_family("so_even_even", (n, m)))
    for n in range(2, 7):
        validate_record(instantiate_family("sp_R", (n,)))
        validate_record(instantiate_family("so_2n_3", (n,)))
    for p in range(5, 10):
        validate_record(instantiate_family("so_p_2", (p,)))


def test_so_odd_odd_rank_one_second_factor():
    r = instantiate_family("so_odd_odd", (2, 1))
    assert [rs.label for rs in r.space.factors] == ["B2", "B1"]
    assert r.xi0.factors == ((0, Q(1, 2)), (0,))
    assert r.modules[0].mu0.factors == ((0, 0), (1,))
    assert [v for _, v in r.w0.letters] == [(1, 0), (1,)]


def test_so_p_2_parity_of_k_factor():
    assert find_record("so(5,2)").space.factors[0].label == "B2"
    assert find_record("so(6,2)").space.factors[0].label == "D3"
    assert find_record("so(5,2)").g_complex == ("B3",)
    assert find_record("so(6,2)").g_complex == ("D4",)
    assert [m.mu0.center[0] for m in find_record("so(7,2)").modules] == \
        [Q(5, 2), Q(-5, 2)]


def test_mixed_parity_zero_family_uses_b_and_d_factors():
    r = find_record("so(5,4)")
    assert [rs.label for rs in r.space.factors] == ["B2", "D2"]
    assert r.g_complex == ("B4",)


# ---------------------------------------------------------------------------
# lookups and display


def test_normalize_name_examples():
    assert normalize_name("so(6,4)") == "so_6_4"
    assert normalize_name("e8(-24)") == "e8_-24"
    assert normalize_name("SP(2, R)") == "sp_2_r"
    assert normalize_name("so*(8)") == "sostar_8"


def test_find_record_accepts_normalized_aliases():
    assert find_record("SO(6,4)").name == "so(6,4)"
    assert find_record("sp_2_R").name == "sp(2,R)"
    assert find_record("e8_-24").name == "e8(-24)"
    with pytest.raises(KeyError, match="no record named"):
        find_record("sl(5,R)")


def test_k_display():
    assert k_display(find_record("e8(8)").space) == "Spin(16)"
    assert k_display(find_record("f4(4)").space) == "Sp(3)xSU(2)"
    assert k_display(find_record("e7(-25)").space) == "E6xR"
    assert k_display(find_record("sp(3,R)").space) == "SU(3)xR"
    assert k_display(find_record("so(7,2)").space) == "Spin(7)xR"


def test_joseph_infchar_patterns():
    h = Q(1, 2)
    assert joseph_infchar("G2") == (1, Q(1, 3))
    assert joseph_infchar("F4") == (h, h, 1, 1)
    assert joseph_infchar("B3") == (h, h, 1)
    assert joseph_infchar("B5") == (1, 1, h, h, 1)
    assert joseph_infchar("C2") == (1, h)
    assert joseph_infchar("C4") == (1, 1, 1, h)
    assert joseph_infchar("D4") == (1, 0, 1, 1)
    assert joseph_infchar("D6") == (1, 1, 1, 0, 1, 1)
    assert joseph_infchar("E6") == (1, 1, 1, 0, 1, 1)
    assert joseph_infchar("E8") == (1, 1, 1, 0, 1, 1, 1, 1)
    for bad in ["A3", "B2", "D3", "X4"]:
        with pytest.raises(ValueError):
            joseph_infchar(bad)


# ---------------------------------------------------------------------------
# validation failures


def _toy_space_record(**overrides):
    r = find_record("so(4,4)")
    return RealFormRecord(**{**record_fields(r), **overrides})


def record_fields(r):
    return {f: getattr(r, f) for f in (
        "name", "g_complex", "space", "hermitian", "p_summands", "modules",
        "expected_count", "nonexistence_reason", "rho", "xi0", "w0",
        "infchar", "family", "params")}


def test_validate_rejects_count_mismatch():
    with pytest.raises(RegistryValidationError, match="expected_count"):
        validate_record(_toy_space_record(expected_count=3))


def test_validate_rejects_zero_count_without_reason():
    with pytest.raises(RegistryValidationError, match="nonexistence"):
        validate_record(_toy_space_record(modules=(), expected_count=0))


def test_validate_rejects_beta_outside_p():
    r = find_record("so(4,4)")
    rogue = weight(r.space, (1, 1), (1, 1))
    bad = MinimalModuleRecord("minimal", r.modules[0].mu0, rogue)
    with pytest.raises(RegistryValidationError, match="p-summand"):
        validate_record(_toy_space_record(modules=(bad,)))


def test_validate_rejects_missing_line_data():
    with pytest.raises(RegistryValidationError, match="xi0 and w0"):
        validate_record(_toy_space_record(xi0=None, w0=None))


def test_validate_rejects_wrong_null_half():
    r = find_record("e6(-14)")
    flipped = tuple(
        MinimalModuleRecord(m.label, m.mu0, m.beta,
                            "p+" if m.null_half == "p-" else "p-")
        for m in r.modules)
    with pytest.raises(RegistryValidationError, match="null half"):
        validate_record(RealFormRecord(**{**record_fields(r), "modules": flipped}))


# ---------------------------------------------------------------------------
# serialization


def test_save_load_round_trip_all_defaults():
    records = all_default_records()
    assert load(save(records)) == records


def test_rationals_serialize_as_fraction_strings():
    blob = record_to_json(find_record("sp(2,R)"))
    assert blob["modules"][0]["mu0"]["center"] == ["1/2"]
    assert blob["modules"][2]["mu0"]["factors"][0] == ["1", "0"]


def test_load_rejects_unknown_schema():
    text = json.dumps({"schema": "minrep-registry/2", "records": []})
    with pytest.raises(RegistryFormatError, match="minrep-registry/1"):
        load(text)


def test_load_reports_parse_position():
    with pytest.raises(RegistryFormatError, match="line 3"):
        load('{\n  "schema": "minrep-registry/1",\n  bad\n}')


def test_load_rejects_count_mismatch():
    payload = json.loads(save([find_record("e8(8)")]))
    payload["records"][0]["expected_count"] = 2
    with pytest.raises(RegistryValidationError, match="e8\\(8\\)"):
        load(json.dumps(payload))


def test_load_rejects_bad_rational():
    payload = json.loads(save([find_record("e8(8)")]))
    payload["records"][0]["rho"]["factors"][0][0] = "1/0"
    with pytest.raises(RegistryFormatError, match="bad rational"):
        load(json.dumps(payload))


TOY_TEXT = """
{
  "schema": "minrep-registry/1",
  "records": [
    {
      "name": "toy(1,1)",
      "g_complex": ["D2"],
      "k_factors": ["A1", "A1"],
      "center_dim": 0,
      "hermitian": false,
      "p_summands": [{"factors": [["1", "-1"], ["1", "-1"]], "center": []}],
      "modules": [
        {"label": "minimal",
         "mu0": {"factors": [["0", "0"], ["0", "0"]], "center": []},
         "beta": {"factors": [["1", "-1"], ["1", "-1"]], "center": []},
         "null_half": null}
      ],
      "expected_count": 1,
      "nonexistence_reason": null,
      "rho": {"factors": [["1/2", "-1/2"], ["1/2", "-1/2"]], "center": []},
      "xi0": {"factors": [["0", "0"], ["0", "0"]], "center": []},
      "w0": [[0, ["1", "-1"]], [1, ["1", "-1"]]],
      "infchar": [["1", "1"]],
      "family": null,
      "params": []
    }
  ]
}
"""


def test_hand_written_toy_record_loads():
    toy, = load(TOY_TEXT)
    assert toy.name == "toy(1,1)"
    assert [rs.label for rs in toy.space.factors] == ["A1", "A1"]
    assert toy.modules[0].beta.factors == ((1, -1), (1, -1))
    assert len(toy.w0.letters) == 2
    assert find_record("TOY(1, 1)", [toy]) is toy
    # and it survives its own round trip
    assert load(save([toy])) == (toy,)
