"""Line-oriented text exchange format for tessellations.

::

    tess v1 patch center=0 radius=3
    0: 1 2 3 4 5
    1: 0 5 ...
    17: * 4 5 6
    boundary: 17 18 19

The header names the kind (``closed`` or ``patch``) and, for patches, the
center and radius (``-`` when absent).  Each vertex line gives the
counterclockwise rotation.  In a patch, ``*`` marks a stretch of missing
neighbors at that position of a truncated rotation (a trailing ``*`` wraps
around to the front).  ``#`` starts a comment.  The canonical form
written by :func:`save` sorts vertex lines by id and starts each rotation at
its smallest neighbor, so ``save`` after ``load`` reproduces canonical input
byte for byte.
"""

from __future__ import annotations

import hashlib
import os
import re
import tempfile

import numpy as np

from .errors import AsymmetryError, DanglingIdError, ParseError, StructuralError
from .surface import ClosedTessellation, Patch, RotationSystem, Tessellation

__all__ = ["load", "loads", "save", "dumps", "file_digest"]

_HEADER = re.compile(r"^tess\s+v1\s+(closed|patch)\s+center=(\d+|-)\s+radius=(\d+|-)\s*$")


def _strip(line):
    i = line.find("#")
    return (line if i < 0 else line[:i]).strip()


def loads(text: str) -> Tessellation:
    """Parse the exchange format from a string."""
    header = None
    records = {}
    lineno = {}
    boundary = None
    gap_marks = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError("expected header 'tess v1 <closed|patch> center=<id|-> radius=<n|->'", no)
            header = m.groups()
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"malformed record {line!r}", no)
        key = key.strip()
        tokens = rest.split()
        starred = []
        if key != "boundary" and "*" in tokens:
            pending = False
            for tok in tokens:
                if tok == "*":
                    pending = True
                else:
                    starred.append(pending)
                    pending = False
            if pending and starred:
                starred[0] = True
            tokens = [tok for tok in tokens if tok != "*"]
            if not starred:
                starred = None
        try:
            values = [int(tok) for tok in tokens]
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", no) from None
        if key == "boundary":
            if boundary is not None:
                raise ParseError("duplicate boundary section", no)
            boundary = values
            continue
        if not key.isdigit():
            raise ParseError(f"malformed vertex id {key!r}", no)
        v = int(key)
        if v in records:
            raise ParseError(f"vertex {v} defined twice", no)
        records[v] = values
        lineno[v] = no
        if "*" in rest:
            gap_marks[v] = starred
    if header is None:
        raise ParseError("empty input: missing header", 1)
    kind, center, radius = header
    n = len(records)
    if n == 0:
        raise ParseError("no vertex records")
    if sorted(records) != list(range(n)):
        missing = min(set(range(n)) - set(records))
        raise ParseError(f"vertex ids must be contiguous from 0; {missing} is missing")

    # dangling ids and asymmetry, reported with the line of the lister
    adj = {v: set(nb) for v, nb in records.items()}
    for v in range(n):
        for w in records[v]:
            if w not in records:
                raise DanglingIdError(f"vertex {v} lists unknown neighbor {w}", lineno[v])
    for v in range(n):
        for w in records[v]:
            if v not in adj[w]:
                raise AsymmetryError(v, w, lineno[v])
    for b in boundary or []:
        if b not in records:
            raise DanglingIdError(f"boundary lists unknown vertex {b}")

    try:
        rot = RotationSystem.from_lists([records[v] for v in range(n)])
    except StructuralError as exc:
        raise ParseError(str(exc)) from exc
    if kind == "closed":
        if boundary or gap_marks:
            raise ParseError("closed tessellation cannot carry boundary data")
        return ClosedTessellation(rot)
    gaps = None
    if gap_marks:
        src, dst = [], []
        for v, marks in gap_marks.items():
            for w, flag in zip(records[v], marks or ()):
                if flag:
                    src.append(v)
                    dst.append(w)
        gaps = np.zeros(rot.n_darts, dtype=bool)
        gaps[rot.dart_lookup(src, dst)] = True
    if center != "-" and int(center) >= n:
        raise DanglingIdError(f"center {center} is not a vertex", 1)
    return Patch(
        rot,
        center=0 if center == "-" else int(center),
        radius=None if radius == "-" else int(radius),
        boundary_vertices=frozenset(boundary or ()) | frozenset(gap_marks),
        gaps=gaps,
    )


def load(path) -> Tessellation:
    """Read a tessellation file.

    Returns
    -------
    ClosedTessellation or Patch
        According to the header kind.
    """
    with open(path, encoding="ascii") as fh:
        return loads(fh.read())


def dumps(t: Tessellation) -> str:
    """Serialize in canonical form."""
    if isinstance(t, Patch):
        center = str(t.center)
        radius = "-" if t.radius is None else str(t.radius)
        head = f"tess v1 patch center={center} radius={radius}"
    else:
        head = "tess v1 closed center=- radius=-"
    rot = t.rotation
    ptr = rot.indptr.tolist()
    tokens = [str(w) for w in rot.indices.tolist()]
    if isinstance(t, Patch) and t.gaps is not None:
        for d in np.flatnonzero(t.gaps).tolist():
            tokens[d] = "* " + tokens[d]
    lines = [head]
    lines.extend(f"{v}: " + " ".join(tokens[ptr[v]:ptr[v + 1]]) for v in range(rot.n_vertices))
    if isinstance(t, Patch) and t.gaps is not None:
        # boundary vertices without neighbors still need their marker
        for v in sorted(t.boundary_vertices):
            if ptr[v] == ptr[v + 1]:
                lines[v + 1] = f"{v}: *"
    if isinstance(t, Patch) and t.boundary_vertices:
        lines.append("boundary: " + " ".join(map(str, sorted(t.boundary_vertices))))
    return "\n".join(lines) + "\n"


def save(t: Tessellation, path) -> None:
    """Write ``t`` atomically in canonical form."""
    text = dumps(t)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tess-")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def file_digest(path) -> str:
    """SHA-256 hex digest of a file's bytes."""
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()

