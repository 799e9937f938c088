import copy
import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedcodim.algebra import GroupTable, homogeneous_basis, load_spec, load_spec_file, multiply
from gradedcodim.catalog import CATALOG, group_algebra, matrix_algebra
from gradedcodim.errors import (AssociativityError, DimensionError, GradingError, GroupError, SchemaError,
                                UnitError, UnknownGroupElement)

SPECS = Path(__file__).resolve().parent.parent / "specs"

FZ2_DOC = {
    "group": {"elements": ["e", "g"], "table": [["e", "g"], ["g", "e"]], "identity": "e"},
    "basis": ["1", "u"],
    "grading": {"1": "e", "u": "g"},
    "products": [
        {"left": "1", "right": "1", "result": [["1", "1"]]},
        {"left": "1", "right": "u", "result": [["u", "1"]]},
        {"left": "u", "right": "1", "result": [["u", "1"]]},
        {"left": "u", "right": "u", "result": [["1", "1"]]},
    ],
    "unit": [["1", "1"]],
}

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def test_ground_field_loads():
    spec = load_spec({"group": {"cyclic": 1}, "basis": ["1"], "grading": {"1": "e"},
                      "products": [{"left": "1", "right": "1", "result": [["1", "1"]]}], "unit": [["1", "1"]]})
    assert spec.is_unital and spec.dim == 1
    assert multiply(spec, (Fraction(3),), (Fraction(2, 5),)) == (Fraction(6, 5),)


def test_group_algebra_z2_loads():
    spec = load_spec(json.dumps(FZ2_DOC))
    assert spec.describe() == "valid, unital, |G|=2, dim=2"
    assert multiply(spec, (0, 1), (0, 1)) == (1, 0)
    assert homogeneous_basis(spec, "e") == [0] and homogeneous_basis(spec, "g") == [1]


def test_rational_structure_constants():
    doc = copy.deepcopy(FZ2_DOC)
    doc["products"][3]["result"] = [["1", "-3/4"]]
    spec = load_spec(doc)
    assert spec.multiply((0, 2), (0, 1)) == (Fraction(-3, 2), 0)


def test_grading_violation_reports_witness():
    doc = copy.deepcopy(FZ2_DOC)
    doc["products"][3]["result"] = [["u", "1"]]        # u*u must land in degree g*g = e
    with pytest.raises(GradingError) as info:
        load_spec(doc)
    assert info.value.witness == ("u", "u", "u")


def test_associativity_violation_reports_witness():
    doc = {"group": {"cyclic": 1}, "basis": ["a", "b"], "grading": {"a": "e", "b": "e"},
           "products": [{"left": "a", "right": "a", "result": [["b", "1"]]},
                        {"left": "b", "right": "a", "result": [["a", "1"]]}]}
    with pytest.raises(AssociativityError) as info:
        load_spec(doc)
    assert len(info.value.witness) == 3


def test_bad_unit():
    doc = copy.deepcopy(FZ2_DOC)
    doc["unit"] = [["u", "1"]]
    with pytest.raises(UnitError):
        load_spec(doc)
    doc["unit"] = [["1", "2"]]
    with pytest.raises(UnitError):
        load_spec(doc)


@pytest.mark.parametrize("table,identity", [
    ([["e", "g"]], "e"),                                # missing row
    ([["e", "g"], ["g", "g"]], "e"),                    # not a Latin square
    ([["e", "g"], ["g", "e"]], "h"),                    # identity not an element
    ([["g", "e"], ["e", "g"]], "e"),                    # identity law fails
])
def test_group_errors(table, identity):
    doc = copy.deepcopy(FZ2_DOC)
    doc["group"]["table"] = table
    doc["group"]["identity"] = identity
    with pytest.raises(GroupError):
        load_spec(doc)


def test_non_associative_latin_square_rejected():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(GroupError, match="associativity"):
        GroupTable(tuple("abcde"), tuple(map(tuple, t)), 0)


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("basis"),
    lambda d: d.update(grading={"1": "e"}),
    lambda d: d["products"].append({"left": "u", "right": "u", "result": [["1", "1"]]}),
    lambda d: d["products"].append({"left": "x", "right": "u", "result": []}),
    lambda d: d["products"][0].update(result=[["1", 0.5]]),
    lambda d: d["products"][0].update(result=[["1", "1/0"]]),
])
def test_schema_errors(mutate):
    doc = copy.deepcopy(FZ2_DOC)
    mutate(doc)
    with pytest.raises(SchemaError):
        load_spec(doc)


def test_schema_error_on_bad_json():
    with pytest.raises(SchemaError):
        load_spec("{not json")


def test_unknown_group_element_in_grading():
    doc = copy.deepcopy(FZ2_DOC)
    doc["grading"]["u"] = "h"
    with pytest.raises(UnknownGroupElement):
        load_spec(doc)


def test_homogeneous_basis_cases():
    fz2 = CATALOG["FZ2"]()
    with pytest.raises(UnknownGroupElement):
        fz2.homogeneous_basis("h")
    m2 = CATALOG["M2"]()
    assert homogeneous_basis(m2, "e") == [0, 1, 2, 3]
    ut = matrix_algebra(2, GroupTable.cyclic(3), [0, 0])      # only the identity component is used
    assert ut.homogeneous_basis("g") == [] and ut.homogeneous_basis("g2") == []


def test_dimension_error():
    with pytest.raises(DimensionError):
        CATALOG["FZ2"]().multiply((1,), (1, 0))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_roundtrips_through_json(name):
    spec = CATALOG[name]()
    again = load_spec(json.dumps(spec.to_document()))
    assert again.products == spec.products and again.grading == spec.grading and again.unit == spec.unit


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_shipped_specs_match_catalog(name):
    path = SPECS / (name.lower().replace("+", "_plus_") + ".json")
    spec = load_spec_file(path)
    assert spec.products == CATALOG[name]().products


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_random_vectors_associate(name, data):
    spec = CATALOG[name]()
    vec = st.lists(rationals, min_size=spec.dim, max_size=spec.dim)
    x, y, z = data.draw(vec), data.draw(vec), data.draw(vec)
    assert spec.multiply(spec.multiply(x, y), z) == spec.multiply(x, spec.multiply(y, z))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([n for n in sorted(CATALOG) if CATALOG[n]().is_unital]), st.data())
def test_unit_law_on_random_vectors(name, data):
    spec = CATALOG[name]()
    x = tuple(data.draw(st.lists(rationals, min_size=spec.dim, max_size=spec.dim)))
    assert spec.multiply(spec.unit, x) == x == spec.multiply(x, spec.unit)


def test_nilpotency_index():
    assert CATALOG["nil3"]().nilpotency_index() == 3
    assert CATALOG["nil-square"]().nilpotency_index() == 3
    assert CATALOG["e11+e12"]().nilpotency_index() is None
    assert CATALOG["F"]().nilpotency_index() is None


def test_nilpotent_products_vanish():
    spec = CATALOG["nil3"]()
    for i in range(3):
        for j in range(3):
            for l in range(3):
                assert not spec.times_basis(dict(spec.basis_product(i, j)), l)


def test_group_algebra_of_cyclic_group():
    spec = group_algebra(GroupTable.cyclic(3))
    assert spec.describe() == "valid, unital, |G|=3, dim=3"
    assert spec.multiply(spec.basis_vector(1), spec.basis_vector(2)) == spec.basis_vector(0)
