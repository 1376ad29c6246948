"""The fixture corpus: deterministic build and verification.

A corpus directory holds one ``<name>.tess`` file per fixture and a
``MANIFEST.json`` mapping names to generator parameters and SHA-256
digests.  The shipped corpus lives in the package ``data`` directory.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict, dataclass, field
from importlib import resources

from .errors import ParseError, StructuralError
from .exchange import file_digest, load, save
from .generators import GeneratorSpec, generate
from .report import analyze, failures

__all__ = [
    "CORPUS",
    "MANIFEST",
    "shipped_corpus_dir",
    "build_corpus",
    "CorpusIOError",
    "FixtureResult",
    "VerifyResult",
    "verify_corpus",
]

MANIFEST = "MANIFEST.json"


def _spec(family, **kw):
    return GeneratorSpec(family, **kw)


CORPUS = {
    **{name: _spec("platonic", name=name) for name in ("tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron")},
    **{f"prism-{p}": _spec("prism", p=p) for p in (3, 5, 8, 12)},
    **{f"antiprism-{p}": _spec("antiprism", p=p) for p in (3, 5, 8, 12)},
    "torus-square-4x5": _spec("torus", lattice="square", m=4, n=5),
    "torus-triangular-4x4": _spec("torus", lattice="triangular", m=4, n=4),
    "torus-hexagonal-6x4": _spec("torus", lattice="hexagonal", m=6, n=4),
    "genus-two": _spec("genus2"),
    "cairo-torus": _spec("cairo", m=4, n=4),
    "flat-square-6": _spec("flat", lattice="square", radius=6),
    "flat-triangular-6": _spec("flat", lattice="triangular", radius=6),
    "flat-hexagonal-8": _spec("flat", lattice="hexagonal", radius=8),
    "hyperbolic-7-3-8": _spec("hyperbolic", p=7, q=3, radius=8),
    "hyperbolic-3-7-5": _spec("hyperbolic", p=3, q=7, radius=5),
    "hyperbolic-4-5-5": _spec("hyperbolic", p=4, q=5, radius=5),
    "hyperbolic-5-4-5": _spec("hyperbolic", p=5, q=4, radius=5),
    "hyperbolic-6-3-8": _spec("hyperbolic", p=6, q=3, radius=8),
    "kagome-6-5": _spec("kagome", polygon=6, radius=5),
    "kagome-8-5": _spec("kagome", polygon=8, radius=5),
    "schedule-6+2r-5": _spec("schedule", schedule="6+2r", radius=5),
    "star-3-7-43": _spec("star", name="3,7,43"),
}


def shipped_corpus_dir() -> str:
    return str(resources.files("tesscurv") / "data")


def _atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tess-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _spec_dict(spec):
    return {k: v for k, v in asdict(spec).items() if v is not None}


def build_corpus(directory, names=None) -> dict:
    """Generate fixtures into ``directory`` and write the manifest.

    Returns the manifest mapping.
    """
    os.makedirs(directory, exist_ok=True)
    manifest = {}
    for name in sorted(CORPUS if names is None else names):
        spec = CORPUS[name]
        path = os.path.join(directory, f"{name}.tess")
        save(generate(spec), path)
        manifest[name] = {"generator": _spec_dict(spec), "sha256": file_digest(path)}
    _atomic_write(os.path.join(directory, MANIFEST), json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


class CorpusIOError(Exception):
    """A corpus file is missing, unreadable or not in the exchange format."""


@dataclass
class FixtureResult:
    name: str
    digest: str
    bundle: dict
    messages: list = field(default_factory=list)

    @property
    def failed(self) -> list:
        return failures(self.bundle) + [{"tag": "DIGEST", "claim": m} for m in self.messages]


@dataclass
class VerifyResult:
    fixtures: list

    @property
    def ok(self) -> bool:
        return all(not f.failed for f in self.fixtures)


def verify_corpus(directory, seed: int = 0, tol: float = 1e-9, sections=("curvature", "geometry", "growth")) -> VerifyResult:
    """Load every fixture in ``directory`` and run the checks.

    Fixtures whose digest differs from the manifest are reported as check
    failures; files that cannot be read or parsed raise
    :class:`CorpusIOError`.
    """
    try:
        names = sorted(f[:-5] for f in os.listdir(directory) if f.endswith(".tess"))
    except OSError as exc:
        raise CorpusIOError(f"cannot list {directory}: {exc}") from exc
    if not names:
        raise CorpusIOError(f"no .tess files in {directory}")
    manifest = {}
    mpath = os.path.join(directory, MANIFEST)
    if os.path.exists(mpath):
        try:
            with open(mpath, encoding="utf-8") as fh:
                manifest = json.load(fh)
        except (OSError, ValueError) as exc:
            raise CorpusIOError(f"unreadable manifest: {exc}") from exc
    results = []
    for name in names:
        path = os.path.join(directory, f"{name}.tess")
        try:
            digest = file_digest(path)
            t = load(path)
        except (OSError, UnicodeDecodeError, ParseError, StructuralError) as exc:
            raise CorpusIOError(f"{name}: {exc}") from exc
        messages = []
        expected = manifest.get(name, {}).get("sha256")
        if expected is not None and expected != digest:
            messages.append(f"{name}: digest {digest[:12]} does not match manifest {expected[:12]}")
        bundle = analyze(t, sections, seed=seed, tol=tol, source={"input": f"{name}.tess", "sha256": digest})
        results.append(FixtureResult(name, digest, bundle, messages))
    return VerifyResult(results)
