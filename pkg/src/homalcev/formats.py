"""On-disk algebra files and JSON reports.

Algebra files are JSON objects::

    {
      "name": "sl2",
      "dim": 3,
      "parity": [0, 0, 0],
      "products": [
        {"i": 0, "j": 1, "k": 1, "value": "2"},
        ...
      ],
      "alpha": [["1", "0", "0"], ...]
    }

``products`` lists nonzero ``e_i e_j`` coefficients on ``e_k``; omitted
entries are zero.  ``alpha`` is given row by row (row ``k``, column ``i`` is
the ``e_k`` coefficient of ``alpha(e_i)``); it may be omitted for the
identity.  Rationals are strings ``"p"`` or ``"p/q"``, never floats.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .identities import IdentityResult, VerificationReport
from .superalgebra import AlgebraError, Element, EvenMap, SuperAlgebra, to_fraction


class AlgebraFileError(AlgebraError):
    """Malformed or invalid algebra file; the message carries ``source:line``."""


def fraction_str(c: Fraction) -> str:
    return str(c)


def element_strs(u: Element) -> list[str]:
    return [fraction_str(c) for c in u.coeffs]


def dump_algebra(A: SuperAlgebra) -> str:
    """Serialise with one product record and one alpha row per line."""
    lines = [
        "{",
        f'  "name": {json.dumps(A.name)},',
        f'  "dim": {A.dim},',
        f'  "parity": {json.dumps(list(A.parity))},',
    ]
    records = [
        json.dumps({"i": i, "j": j, "k": k, "value": fraction_str(c)})
        for i, j, k, c in A.nonzero_products()
    ]
    if records:
        lines.append('  "products": [')
        lines += [f"    {r}," for r in records[:-1]] + [f"    {records[-1]}"]
        lines.append("  ],")
    else:
        lines.append('  "products": [],')
    rows = [json.dumps([fraction_str(c) for c in row]) for row in A.alpha.matrix]
    lines.append('  "alpha": [')
    lines += [f"    {r}," for r in rows[:-1]] + [f"    {rows[-1]}"]
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


# -- locating JSON values for line-precise diagnostics --------------------------

_decoder = json.JSONDecoder()
_WS = " \t\n\r"


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in _WS:
        pos += 1
    return pos


def _array_positions(text: str, pos: int) -> list[int]:
    out: list[int] = []
    pos = _skip(text, pos + 1)
    if pos < len(text) and text[pos] == "]":
        return out
    while pos < len(text):
        out.append(pos)
        _, pos = _decoder.raw_decode(text, pos)
        pos = _skip(text, pos)
        if pos >= len(text) or text[pos] != ",":
            break
        pos = _skip(text, pos + 1)
    return out


def _top_level_positions(text: str) -> dict[str, tuple[int, list[int]]]:
    """Offsets of each top-level value and, for arrays, of their elements."""
    out: dict = {}
    pos = _skip(text, 0)
    if pos >= len(text) or text[pos] != "{":
        return out
    pos = _skip(text, pos + 1)
    while pos < len(text) and text[pos] == '"':
        key, pos = _decoder.raw_decode(text, pos)
        pos = _skip(text, pos)
        pos = _skip(text, pos + 1)  # ':'
        start = pos
        elems = _array_positions(text, pos) if text[pos] == "[" else []
        _, pos = _decoder.raw_decode(text, pos)
        out[key] = (start, elems)
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == ",":
            pos = _skip(text, pos + 1)
        else:
            break
    return out


def _line(text: str, offset: int) -> int:
    return text.count("\n", 0, offset) + 1


def load_algebra(text: str, source: str = "<input>") -> SuperAlgebra:
    """Parse and validate an algebra file.

    Every problem is reported as ``AlgebraFileError("source:line: ...")``.
    """
    try:
        data = json.loads(text, parse_float=_FloatLiteral)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"{source}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise AlgebraFileError(f"{source}:1: top level must be an object")
    try:
        positions = _top_level_positions(text)
    except json.JSONDecodeError:  # pragma: no cover - json.loads succeeded
        positions = {}

    def where(key: str, index: int | None = None) -> int:
        start, elems = positions.get(key, (0, []))
        if index is not None and index < len(elems):
            return _line(text, elems[index])
        return _line(text, start)

    def fail(key: str, msg: str, index: int | None = None):
        raise AlgebraFileError(f"{source}:{where(key, index)}: {msg}")

    def fail_entry(r: int, c: int, msg: str):
        _, rows_at = positions.get("alpha", (0, []))
        if r < len(rows_at):
            cells = _array_positions(text, rows_at[r])
            if c < len(cells):
                raise AlgebraFileError(f"{source}:{_line(text, cells[c])}: {msg}")
        fail("alpha", msg, r)

    for key in ("name", "dim", "parity"):
        if key not in data:
            raise AlgebraFileError(f"{source}:1: missing required field {key!r}")
    name = data["name"]
    if not isinstance(name, str) or isinstance(name, _FloatLiteral):
        fail("name", "name must be a string")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        fail("dim", "dim must be a positive integer")
    parity = data["parity"]
    if not isinstance(parity, list) or len(parity) != dim:
        fail("parity", f"parity must be a list of {dim} entries")
    for idx, p in enumerate(parity):
        if p not in (0, 1) or isinstance(p, bool):
            fail("parity", f"parity[{idx}] must be 0 or 1", idx)

    products = data.get("products", [])
    if not isinstance(products, list):
        fail("products", "products must be a list")
    rows = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    seen = set()
    for idx, rec in enumerate(products):
        if not isinstance(rec, dict) or set(rec) != {"i", "j", "k", "value"}:
            fail("products", f"products[{idx}] must have exactly keys i, j, k, value", idx)
        i, j, k = rec["i"], rec["j"], rec["k"]
        for label, v in (("i", i), ("j", j), ("k", k)):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < dim:
                fail("products", f"products[{idx}].{label} = {v!r} out of range 0..{dim - 1}", idx)
        if (i, j, k) in seen:
            fail("products", f"products[{idx}] duplicates entry ({i}, {j}, {k})", idx)
        seen.add((i, j, k))
        try:
            value = _rational(rec["value"])
        except AlgebraError as exc:
            fail("products", f"products[{idx}].value: {exc}", idx)
        if value and parity[k] != (parity[i] + parity[j]) % 2:
            fail(
                "products",
                f"products[{idx}]: e{i}*e{j} -> e{k} breaks evenness "
                f"(parities {parity[i]}+{parity[j]} != {parity[k]})",
                idx,
            )
        rows[i][j][k] = value

    if "alpha" in data:
        alpha_rows = data["alpha"]
        if not isinstance(alpha_rows, list) or len(alpha_rows) != dim:
            fail("alpha", f"alpha must be a list of {dim} rows")
        matrix = []
        for r, row in enumerate(alpha_rows):
            if not isinstance(row, list) or len(row) != dim:
                fail("alpha", f"alpha[{r}] must have {dim} entries", r)
            vals = []
            for c, entry in enumerate(row):
                try:
                    v = _rational(entry)
                except AlgebraError as exc:
                    fail_entry(r, c, f"alpha[{r}][{c}]: {exc}")
                if v and parity[r] != parity[c]:
                    fail_entry(r, c, f"alpha[{r}][{c}] = {v} links opposite parities")
                vals.append(v)
            matrix.append(tuple(vals))
        alpha = EvenMap(tuple(matrix))
    else:
        alpha = EvenMap.identity(dim)

    structure = tuple(tuple(Element(tuple(rows[i][j])) for j in range(dim)) for i in range(dim))
    return SuperAlgebra(name, tuple(parity), structure, alpha)


class _FloatLiteral(str):
    """Marks a JSON float so validation can reject it with a line number."""


def _reject_float(text: str):
    raise AlgebraFileError(f"floating-point literal {text} not allowed; use \"p/q\" strings")


def _rational(value) -> Fraction:
    if isinstance(value, _FloatLiteral):
        raise AlgebraError(f"floating-point literal {value} not allowed; use \"p/q\" strings")
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise AlgebraError(f"expected a rational string, got {value!r}")
    return to_fraction(value)


def load_map(text: str, dim: int, source: str = "<map>") -> EvenMap:
    """A map file: a JSON ``dim x dim`` array of rational strings (rows)."""
    try:
        rows = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"{source}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    except AlgebraFileError as exc:
        raise AlgebraFileError(f"{source}: {exc}") from None
    if not isinstance(rows, list) or len(rows) != dim or any(
        not isinstance(r, list) or len(r) != dim for r in rows
    ):
        raise AlgebraFileError(f"{source}:1: map must be a {dim}x{dim} array")
    try:
        return EvenMap(tuple(tuple(_rational(v) for v in r) for r in rows))
    except AlgebraError as exc:
        raise AlgebraFileError(f"{source}: {exc}") from None


# -- reports ---------------------------------------------------------------------


def result_dict(res: IdentityResult) -> dict:
    return {
        "id": res.identity,
        "status": res.status,
        "holds": res.holds,
        "tuples_checked": res.tuples_checked,
        "total_violations": res.total_violations,
        "violations": [
            {"tuple": list(v.tuple), "defect": element_strs(v.defect)} for v in res.violations
        ],
    }


def report_dict(report: VerificationReport) -> dict:
    return {
        "algebra": report.algebra,
        "holds": report.holds,
        "results": [result_dict(r) for r in report.results.values()],
    }


def dumps_report(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
