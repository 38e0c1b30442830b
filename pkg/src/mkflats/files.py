"""Text file formats for regions, distributions, and face labellings.

All formats are ASCII, newline-delimited, whitespace-separated, one record
per line.  Lines starting with '#' are comments.  Duplicate keys are a load
error.  Serialization is sorted and deterministic; a JSON-lines emitter with
the same fields per record is available for each format.

    region : F <a> <b> <U|D>
    .rdist : V <a> <b> <D0|D1|D2>
    .pdist : F <a> <b> <U|D> <0|1>
    .pzl   : F <a> <b> <U|D> <X|Y|Z>
"""

from __future__ import annotations

import json

from .distributions import ParityDistribution, RootDistribution
from .lattice import AxialPoint, Direction, Face, Orientation, Region
from .linkgraph import LABELS
from .pauli import PauliLabelling


class FormatError(ValueError):
    """Malformed or inconsistent input text."""


def _records(text: str, tag: str, nfields: int):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if fields[0] != tag or len(fields) != nfields:
            raise FormatError(f"line {lineno}: expected '{tag}' record with "
                              f"{nfields} fields, got {line!r}")
        yield lineno, fields[1:]


def _int(s: str, lineno: int) -> int:
    try:
        return int(s)
    except ValueError:
        raise FormatError(f"line {lineno}: bad integer {s!r}") from None


def _face(fields: list[str], lineno: int) -> Face:
    a, b = _int(fields[0], lineno), _int(fields[1], lineno)
    try:
        orient = Orientation(fields[2])
    except ValueError:
        raise FormatError(f"line {lineno}: orientation must be U or D, got {fields[2]!r}") from None
    return Face(a, b, orient)


def parse_region(text: str) -> Region:
    faces = set()
    for lineno, fields in _records(text, "F", 4):
        f = _face(fields, lineno)
        if f in faces:
            raise FormatError(f"line {lineno}: duplicate face {f}")
        faces.add(f)
    return Region(frozenset(faces))


def region_text(region: Region) -> str:
    lines = [f"F {f.a} {f.b} {f.orientation}" for f in region]
    return "\n".join(lines) + "\n" if lines else ""


def parse_rdist(text: str) -> RootDistribution:
    assignment = {}
    for lineno, fields in _records(text, "V", 4):
        v = AxialPoint(_int(fields[0], lineno), _int(fields[1], lineno))
        try:
            d = Direction[fields[2]]
        except KeyError:
            raise FormatError(f"line {lineno}: direction must be D0, D1 or D2, "
                              f"got {fields[2]!r}") from None
        if v in assignment:
            raise FormatError(f"line {lineno}: duplicate vertex {v}")
        assignment[v] = d
    return RootDistribution(assignment)


def rdist_text(delta: RootDistribution) -> str:
    lines = [f"V {v.a} {v.b} {d}" for v, d in delta.items()]
    return "\n".join(lines) + "\n" if lines else ""


def parse_pdist(text: str) -> ParityDistribution:
    assignment = {}
    for lineno, fields in _records(text, "F", 5):
        f = _face(fields[:3], lineno)
        if fields[3] not in ("0", "1"):
            raise FormatError(f"line {lineno}: parity must be 0 or 1, got {fields[3]!r}")
        if f in assignment:
            raise FormatError(f"line {lineno}: duplicate face {f}")
        assignment[f] = int(fields[3])
    return ParityDistribution(assignment)


def pdist_text(parity: ParityDistribution) -> str:
    lines = [f"F {f.a} {f.b} {f.orientation} {p}" for f, p in parity.items()]
    return "\n".join(lines) + "\n" if lines else ""


def parse_pzl(text: str) -> PauliLabelling:
    labels = {}
    for lineno, fields in _records(text, "F", 5):
        f = _face(fields[:3], lineno)
        if fields[3] not in LABELS:
            raise FormatError(f"line {lineno}: label must be X, Y or Z, got {fields[3]!r}")
        if f in labels:
            raise FormatError(f"line {lineno}: duplicate face {f}")
        labels[f] = fields[3]
    return PauliLabelling(labels)


def pzl_text(labelling: PauliLabelling) -> str:
    lines = [f"F {f.a} {f.b} {f.orientation} {lab}" for f, lab in labelling.items()]
    return "\n".join(lines) + "\n" if lines else ""


# --- JSON-lines emitters (same fields per record as the text formats) ------


def region_json_lines(region: Region) -> str:
    rows = [{"type": "F", "a": f.a, "b": f.b, "o": str(f.orientation)} for f in region]
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)


def rdist_json_lines(delta: RootDistribution) -> str:
    rows = [
        {"type": "V", "a": v.a, "b": v.b, "direction": str(d)} for v, d in delta.items()
    ]
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)


def pdist_json_lines(parity: ParityDistribution) -> str:
    rows = [
        {"type": "F", "a": f.a, "b": f.b, "o": str(f.orientation), "parity": p}
        for f, p in parity.items()
    ]
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)


def pzl_json_lines(labelling: PauliLabelling) -> str:
    rows = [
        {"type": "F", "a": f.a, "b": f.b, "o": str(f.orientation), "label": lab}
        for f, lab in labelling.items()
    ]
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)
