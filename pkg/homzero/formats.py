"""
Reading and writing the on-disk formats: semigroup and module documents in
JSON, presentations in the line based text format.
"""
import hashlib
import json
from pathlib import Path
from typing import Mapping, Optional, Union

from homzero.abelian import FGAbelianGroup, IntMatrix
from homzero.presentation import Presentation, parse_presentation
from homzero.semigroup import FiniteSemigroup, invalid, validate
from homzero.zmodule import (
    ZeroModuleAction,
    from_presentation,
    trivial_module,
    validate_action,
    zero_module,
)


def read_text(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise invalid(f"cannot read {path}: {e.strerror}", "unreadable", str(path))


def digest(*texts: str) -> str:
    h = hashlib.sha256()
    for text in texts:
        h.update(text.encode("utf-8"))
        h.update(b"\0")
    return h.hexdigest()


def file_digest(*paths: Union[str, Path]) -> str:
    return digest(*(read_text(path) for path in paths))


def load_json(text: str, what: str = "document") -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise invalid(f"{what} is not valid JSON: {e.msg} at line {e.lineno}", "syntax", e.lineno)
    if not isinstance(data, dict):
        raise invalid(f"{what} must be a JSON object", "syntax")
    return data


def semigroup_from_data(data: Mapping) -> FiniteSemigroup:
    """
    ``{"elements": [...], "table": [[...], ...], "zero": true}``; with
    ``zero`` the first element must be the zero.
    """
    if "table" not in data:
        raise invalid("semigroup document needs a table", "syntax", "table")
    table = data["table"]
    if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
        raise invalid("table must be a list of index rows", "syntax", "table")
    return validate(table, names=data.get("elements"), zero=bool(data.get("zero", True)))


def semigroup_to_data(s: FiniteSemigroup) -> dict:
    return {
        "elements": list(s.names),
        "table": [list(row) for row in s.table],
        "zero": s.has_zero,
    }


def _matrix(value, rank: int, label: str) -> IntMatrix:
    try:
        matrix = IntMatrix.from_rows(value, cols=rank)
    except (TypeError, ValueError):
        raise invalid(f"action of {label} is not an integer matrix", "shape", label)
    if matrix.shape != (rank, rank):
        raise invalid(f"action of {label} must be {rank}x{rank}", "shape", label)
    return matrix


def _derive(s: FiniteSemigroup, given: Mapping[str, IntMatrix], name: str, rank: int) -> IntMatrix:
    # a dotted name such as "a.b" acts as a then b
    if name in given:
        return given[name]
    parts = name.split(".")
    if len(parts) < 2 or any(part not in given for part in parts):
        raise invalid(f"no action given for {name}", "missing_action", name)
    matrix = IntMatrix.identity(rank)
    for part in parts:
        matrix = given[part] @ matrix
    return matrix


def module_from_data(data: Mapping, s: FiniteSemigroup) -> ZeroModuleAction:
    """
    ``{"rank": r, "moduli": [...], "relations": [[...]], "actions": ...}``.

    ``actions`` is ``"trivial"``, ``"zero"`` or a map from element names to
    matrices given as lists of rows. Dotted names missing from the map are
    composed from their letters.
    """
    moduli = data.get("moduli")
    relations = data.get("relations")
    rank = data.get("rank", len(moduli) if moduli is not None else None)
    if rank is None or not isinstance(rank, int) or rank < 0:
        raise invalid("module document needs a rank or moduli", "syntax", "rank")
    if moduli is not None and (len(moduli) != rank or relations is not None):
        raise invalid("moduli must match the rank and exclude relations", "syntax", "moduli")
    base = FGAbelianGroup(tuple(moduli) if moduli is not None else (0,) * rank)
    actions = data.get("actions", "trivial")
    if actions == "trivial":
        act = trivial_module(s, base).act
    elif actions == "zero":
        act = zero_module(s, base).act
    elif isinstance(actions, dict):
        given = {}
        for name, value in actions.items():
            if name not in s.names and "." not in name:
                s.index(name)
            given[name] = _matrix(value, rank, name)
        act = {x: _derive(s, given, s.names[x], rank) for x in s.nonzero_elements}
    else:
        raise invalid("actions must be 'trivial', 'zero' or a map", "syntax", "actions")
    if relations is not None:
        try:
            columns = IntMatrix.from_rows(relations, cols=rank).transpose()
        except (TypeError, ValueError):
            raise invalid(f"relations must be vectors of length {rank}", "syntax", "relations")
        module = from_presentation(s, columns, act)
    else:
        module = ZeroModuleAction(base, s, act)
    verdict = validate_action(module)
    if not verdict:
        names = tuple(s.names[x] for x in verdict.witness)
        raise invalid(f"not a module: {verdict.reason} at {names}", "module_law", names)
    return module


def load_semigroup(path: Union[str, Path]) -> FiniteSemigroup:
    return semigroup_from_data(load_json(read_text(path), "semigroup"))


def load_module(path: Union[str, Path], s: FiniteSemigroup) -> ZeroModuleAction:
    return module_from_data(load_json(read_text(path), "module"), s)


def load_presentation(path: Union[str, Path]) -> Presentation:
    return parse_presentation(read_text(path))


def dump_json(data: dict, indent: Optional[int] = 2) -> str:
    return json.dumps(data, indent=indent, sort_keys=True)
