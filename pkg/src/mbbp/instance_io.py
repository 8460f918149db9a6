"""Instance generation, file formats, LP export, and the KONECT fetcher.

Native .bip format: a header line "p bip <n_u> <n_v> <m>" followed by m lines
"e <u> <v>" with 1-based side-local indices. KONECT edge lists are '%'
commented, whitespace separated "u v [weight [timestamp]]" lines, 1-based per
side; side sizes are the largest index seen on each side.
"""

from __future__ import annotations

import os
import tarfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bipgraph import BipartiteGraph

__all__ = ["InstanceMeta", "ParseError", "FetchError", "gen_random",
           "parse_bip", "write_bip", "parse_konect", "export_lp",
           "fetch_konect", "KONECT_DATASETS"]

# Bipartite networks the fetcher knows how to retrieve from konect.cc.
KONECT_DATASETS = (
    "actor-movie", "bibsonomy-2ui", "bookcrossing_full-rating", "dblp-author",
    "dbpedia-genre", "dbpedia-location", "dbpedia-occupation",
    "dbpedia-producer", "dbpedia-recordlabel", "dbpedia-starring",
    "dbpedia-team", "dbpedia-writer", "discogs_affiliation", "discogs_lgenre",
    "discogs_style", "edit-frwiki", "edit-frwiktionary",
    "flickr-groupmemberships", "github", "moreno_crime",
    "opsahl-collaboration", "opsahl-ucforum", "stackexchange-stackoverflow",
    "wiki-en-cat", "youtube-groupmemberships",
)

_KONECT_URL = "http://konect.cc/files/download.tsv.{name}.tar.bz2"


class ParseError(ValueError):
    pass


class FetchError(RuntimeError):
    pass


@dataclass(frozen=True)
class InstanceMeta:
    name: str
    n_u: int
    n_v: int
    edge_count: int
    source: str  # "generated" | "file" | "fetched"


def gen_random(n: int, p: float, seed: int) -> BipartiteGraph:
    """Random bipartite graph with |U| = |V| = n and edge probability p.

    Draw discipline, fixed for reproducibility: numpy default_rng(seed)
    (PCG64), one uniform double per (u, v) cell in row-major order, edge
    present iff the draw is < p.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 < p < 1.0:
        raise ValueError("p must be strictly between 0 and 1")
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < p
    us, vs = np.nonzero(mask)
    return BipartiteGraph(n, n, np.column_stack([us, vs]))


def _meta_for(name: str, g: BipartiteGraph, source: str) -> InstanceMeta:
    return InstanceMeta(name=name, n_u=g.n_u, n_v=g.n_v,
                        edge_count=g.edge_count, source=source)


def parse_bip(stream, name: str = "bip") -> tuple[BipartiteGraph, InstanceMeta]:
    header = None
    edges = []
    declared = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if header is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            if len(fields) != 5 or fields[1] != "bip":
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                n_u, n_v, declared = (int(fields[2]), int(fields[3]),
                                      int(fields[4]))
            except ValueError:
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            if n_u < 0 or n_v < 0 or declared < 0:
                raise ParseError(f"line {lineno}: negative header field")
            header = (n_u, n_v)
        elif fields[0] == "e":
            if header is None:
                raise ParseError(f"line {lineno}: edge before header")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: malformed edge {line!r}")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed edge {line!r}")
            if not (1 <= u <= header[0]) or not (1 <= v <= header[1]):
                raise ParseError(f"line {lineno}: edge ({u}, {v}) out of range")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"line {lineno}: unknown record {line!r}")
    if header is None:
        raise ParseError("missing 'p bip' header")
    if len(edges) != declared:
        raise ParseError(f"header declares {declared} edges, file has {len(edges)}")
    g = BipartiteGraph(header[0], header[1], edges)
    return g, _meta_for(name, g, "file")


def write_bip(g: BipartiteGraph, stream) -> None:
    """Write the alive subgraph; round-trips exactly on fully-alive graphs."""
    edges = list(g.iter_edges())
    stream.write(f"p bip {g.n_u} {g.n_v} {len(edges)}\n")
    for u, v in edges:
        stream.write(f"e {u + 1} {v - g.n_u + 1}\n")


def parse_konect(stream, name: str = "konect") -> tuple[BipartiteGraph, InstanceMeta]:
    us = []
    vs = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        fields = line.split()
        if len(fields) < 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer endpoint in {line!r}")
        if u < 1 or v < 1:
            raise ParseError(f"line {lineno}: non-positive index in {line!r}")
        us.append(u - 1)
        vs.append(v - 1)
    n_u = max(us) + 1 if us else 0
    n_v = max(vs) + 1 if vs else 0
    g = BipartiteGraph(n_u, n_v, np.column_stack([us, vs]) if us else [])
    return g, _meta_for(name, g, "file")


def export_lp(g: BipartiteGraph, stream, name: str = "mbbp",
              max_complement: int = 10_000_000) -> None:
    """Write the integer program whose optimum is the maximum balanced biclique.

    Binary xU_i / xV_j (1-based original indices) select vertices. One
    constraint per missing (u, v) pair forbids picking both endpoints, an
    equality pins the two sides to the same size, and the objective counts the
    U side. Vertices removed from g get no variable, so a peeled graph
    exports a smaller program.
    """
    alive_u = [v for v in range(g.n_u) if g.alive[v]]
    alive_v = [v for v in range(g.n_u, g.n) if g.alive[v]]
    if not alive_u or not alive_v:
        raise ValueError("export needs at least one alive vertex on each side")
    complement = len(alive_u) * len(alive_v) - g.edge_count
    if complement > max_complement:
        raise ValueError(
            f"bipartite complement has {complement} non-edges, "
            f"over the cap of {max_complement}")

    def uvar(u):
        return f"xU_{u + 1}"

    def vvar(v):
        return f"xV_{v - g.n_u + 1}"

    def wrapped(terms, head=" "):
        line = head
        for t in terms:
            if len(line) + len(t) + 1 > 72 and line.strip():
                stream.write(line.rstrip() + "\n")
                line = " "
            line += t + " "
        stream.write(line.rstrip() + "\n")

    stream.write(f"\\ {name}\n")
    stream.write("Maximize\n")
    obj = []
    for i, u in enumerate(alive_u):
        obj.append(("+ " if i else "") + uvar(u))
    wrapped(obj, head=" obj: ")
    stream.write("Subject To\n")
    k = 0
    v_arr = np.asarray(alive_v, dtype=np.int64)
    for u in alive_u:
        missing = np.setdiff1d(v_arr, g.neighbors(u), assume_unique=True)
        for v in missing:
            k += 1
            stream.write(f" c{k}: {uvar(u)} + {vvar(int(v))} <= 1\n")
    bal = []
    for i, u in enumerate(alive_u):
        bal.append(("+ " if i else "") + uvar(u))
    for v in alive_v:
        bal.append("- " + vvar(v))
    bal.append("= 0")
    wrapped(bal, head=" balance: ")
    stream.write("Binaries\n")
    wrapped([uvar(u) for u in alive_u] + [vvar(v) for v in alive_v])
    stream.write("End\n")


def default_cache_dir() -> Path:
    env = os.environ.get("MBBP_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "mbbp" / "konect"


def fetch_konect(name: str, cache_dir: Path | None = None,
                 timeout: float = 60.0) -> Path:
    """Download and unpack a KONECT dataset, returning the edge-list path.

    Cached under <cache_dir>/<name>/; a lock file serializes concurrent
    fetches of the same dataset. The archive size is checked against the
    server's Content-Length and the download retried once on mismatch.
    """
    if name not in KONECT_DATASETS:
        known = ", ".join(KONECT_DATASETS)
        raise ValueError(f"unknown dataset {name!r}; known: {known}")
    base = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    target = base / name
    existing = _find_edge_file(target)
    if existing is not None:
        return existing

    import filelock
    import requests

    base.mkdir(parents=True, exist_ok=True)
    with filelock.FileLock(str(base / f"{name}.lock")):
        existing = _find_edge_file(target)
        if existing is not None:
            return existing
        url = _KONECT_URL.format(name=name)
        archive = base / f"{name}.tar.bz2"
        for attempt in (1, 2):
            try:
                with requests.get(url, stream=True, timeout=timeout) as r:
                    r.raise_for_status()
                    expect = r.headers.get("Content-Length")
                    with open(archive, "wb") as fh:
                        for chunk in r.iter_content(1 << 16):
                            fh.write(chunk)
            except requests.RequestException as e:
                raise FetchError(f"download of {url} failed: {e}") from e
            if expect is None or archive.stat().st_size == int(expect):
                break
            if attempt == 2:
                raise FetchError(
                    f"size mismatch for {url}: got {archive.stat().st_size}, "
                    f"expected {expect}")
        _extract_archive(archive, base)
        archive.unlink(missing_ok=True)
        found = _find_edge_file(target)
        if found is None:
            raise FetchError(f"archive for {name} held no out.* edge list")
        return found


def _find_edge_file(dataset_dir: Path) -> Path | None:
    if not dataset_dir.is_dir():
        return None
    hits = sorted(p for p in dataset_dir.iterdir()
                  if p.name.startswith("out.") and p.is_file())
    return hits[0] if hits else None


def _extract_archive(archive: Path, dest: Path) -> None:
    with tarfile.open(archive, "r:bz2") as tar:
        for member in tar.getmembers():
            path = Path(member.name)
            if path.is_absolute() or ".." in path.parts:
                raise FetchError(f"unsafe archive member {member.name!r}")
        tar.extractall(dest)
