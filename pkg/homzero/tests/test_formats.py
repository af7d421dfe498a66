from pathlib import Path

import pytest
from django.core.exceptions import ValidationError

from homzero.abelian import AbelianGroupClass, FGAbelianGroup, IntMatrix
from homzero.formats import (
    digest,
    dump_json,
    file_digest,
    load_json,
    load_module,
    load_presentation,
    load_semigroup,
    module_from_data,
    read_text,
    semigroup_from_data,
    semigroup_to_data,
)
from homzero.presentation import ideal_quotient, parse_presentation
from homzero.tests.samples import COMMON_PREFIX, SHARED_PRODUCT, common_prefix, shared_product
from homzero.zmodule import trivial_module, zero_module

DATA = Path(__file__).parent / "data"
Z = FGAbelianGroup.free(1)


def code_of(func, *args):
    with pytest.raises(ValidationError) as excinfo:
        func(*args)
    return excinfo.value.code, excinfo.value.params["witness"]


def test_load_semigroups():
    assert load_semigroup(DATA / "shared_product.json") == shared_product()
    assert load_semigroup(DATA / "common_prefix.json") == common_prefix()
    monogenic = load_semigroup(DATA / "monogenic.json")
    assert monogenic.names == ("0", "a", "aa")
    assert monogenic.nilpotency_degree() == 3
    c2 = load_semigroup(DATA / "c2.json")
    assert not c2.has_zero
    assert c2.mul(1, 1) == 0
    assert code_of(load_semigroup, DATA / "broken.json") == ("associativity", (1, 1, 1))


def test_semigroup_documents():
    s = shared_product()
    data = semigroup_to_data(s)
    assert data["elements"] == ["0", "a", "b", "c", "d", "x"]
    assert data["zero"] is True
    assert semigroup_from_data(data) == s
    assert semigroup_from_data({"table": [[0, 0], [0, 1]]}).names == ("0", "s1")
    assert code_of(semigroup_from_data, {"elements": ["0"]}) == ("syntax", "table")
    assert code_of(semigroup_from_data, {"table": "0"}) == ("syntax", "table")
    assert code_of(semigroup_from_data, {"table": [[0, 1], [1, 1]]})[0] == "zero"
    assert not semigroup_from_data({"table": [[0, 1], [1, 0]], "zero": False}).has_zero


def test_json_errors():
    assert code_of(load_json, "{", "semigroup")[0] == "syntax"
    assert code_of(load_json, "[1, 2]", "module")[0] == "syntax"
    assert load_json('{"rank": 1}') == {"rank": 1}
    assert code_of(read_text, DATA / "missing.json") == ("unreadable", str(DATA / "missing.json"))


def test_simple_modules():
    s = shared_product()
    assert load_module(DATA / "trivial_z.json", s) == trivial_module(s, Z)
    assert load_module(DATA / "zero_z.json", s) == zero_module(s, Z)
    z4 = load_module(DATA / "trivial_z4.json", s)
    assert z4.base.moduli == (4,)
    assert z4 == trivial_module(s, FGAbelianGroup.cyclic(4))


def test_module_with_actions():
    s = common_prefix()
    a = load_module(DATA / "kernel_z_table.json", s)
    assert a.matrix(1) == IntMatrix.from_rows([[0]])
    assert a.matrix(4) == IntMatrix.from_rows([[0]])
    assert code_of(load_module, DATA / "bad_module.json", s) == ("module_law", ("a", "b"))


def test_dotted_actions_are_composed():
    s = ideal_quotient(parse_presentation(COMMON_PREFIX))
    assert s.names == ("0", "a", "b", "c", "a.b")
    a = load_module(DATA / "kernel_z.json", s)
    assert a.matrix(s.index("a.b")) == IntMatrix.from_rows([[0]])
    data = {"rank": 1, "actions": {"a": [[0]], "b": [[1]], "c": [[1]], "a.b": [[0]]}}
    assert module_from_data(data, s) == a


def test_module_errors():
    s = shared_product()
    assert code_of(module_from_data, {"actions": "trivial"}, s) == ("syntax", "rank")
    assert code_of(module_from_data, {"rank": -1}, s) == ("syntax", "rank")
    assert code_of(module_from_data, {"moduli": [2], "rank": 2}, s) == ("syntax", "moduli")
    assert code_of(module_from_data, {"moduli": [2], "relations": [[1]]}, s) == ("syntax", "moduli")
    assert code_of(module_from_data, {"rank": 1, "actions": 3}, s) == ("syntax", "actions")
    assert code_of(module_from_data, {"rank": 1, "actions": {"q": [[1]]}}, s)[0] == "unknown_element"
    assert code_of(module_from_data, {"rank": 1, "actions": {"a": [[1, 0]]}}, s) == ("shape", "a")
    assert code_of(module_from_data, {"rank": 1, "actions": {"a": [[1]]}}, s) == ("missing_action", "b")
    assert code_of(module_from_data, {"rank": 2, "relations": [[1]]}, s) == ("syntax", "relations")


def test_module_from_relations():
    s = shared_product()
    a = module_from_data({"rank": 2, "relations": [[2, 0]]}, s)
    assert a.base.classify() == AbelianGroupClass(1, (2,))
    assert a.rank == 2
    unit = module_from_data({"rank": 1, "relations": [[1]]}, s)
    assert unit.rank == 0


def test_load_presentation():
    assert load_presentation(DATA / "shared_product.txt") == parse_presentation(SHARED_PRODUCT)
    assert code_of(load_presentation, DATA / "bad_syntax.txt")[0] == "syntax"


def test_digest_and_dump():
    assert digest("ab") != digest("a", "b")
    assert digest("a", "b") == digest("a", "b")
    assert len(digest()) == 64
    assert dump_json({"b": 1, "a": [2]}, indent=None) == '{"a": [2], "b": 1}'


def test_file_digest():
    paths = (DATA / "shared_product.json", DATA / "trivial_z.json")
    assert file_digest(*paths) == digest(*(read_text(p) for p in paths))
    assert file_digest(*paths) != file_digest(*reversed(paths))
    assert code_of(file_digest, DATA / "missing.json") == ("unreadable", str(DATA / "missing.json"))
