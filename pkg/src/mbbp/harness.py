"""Batch campaign runner: many instances x many runs, serial or parallel.

Run i of an instance uses seed base_seed + i, so a campaign is reproducible
and parallel execution returns exactly the reports serial execution would.
Every best biclique is revalidated against a fresh copy of its instance
before aggregation.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from .instance_io import (InstanceMeta, fetch_konect, gen_random, parse_bip,
                          parse_konect)
from .solution import balance_deviation, is_biclique
from .solver import RunReport, SolverParams, solve

__all__ = ["InstanceSpec", "CampaignConfig", "InstanceResult",
           "CampaignReport", "run_campaign", "report_to_json",
           "report_from_json", "report_to_csv", "report_from_csv",
           "report_to_table"]

REPORT_SCHEMA = "mbbp-campaign-report/1"


@dataclass(frozen=True)
class InstanceSpec:
    """Where an instance comes from: a file, the generator, or KONECT."""

    kind: str                      # "file" | "gen" | "konect"
    path: str | None = None        # file path for kind == "file"
    format: str = "bip"            # "bip" | "konect" file syntax
    gen: tuple | None = None       # (n, p, seed) for kind == "gen"
    konect: str | None = None      # dataset name for kind == "konect"
    cache_dir: str | None = None

    @staticmethod
    def from_file(path, format="bip") -> "InstanceSpec":
        return InstanceSpec(kind="file", path=str(path), format=format)

    @staticmethod
    def from_gen(n: int, p: float, seed: int) -> "InstanceSpec":
        return InstanceSpec(kind="gen", gen=(int(n), float(p), int(seed)))

    @staticmethod
    def from_konect(name: str, cache_dir=None) -> "InstanceSpec":
        return InstanceSpec(kind="konect", konect=name,
                            cache_dir=None if cache_dir is None else str(cache_dir))

    @property
    def name(self) -> str:
        if self.kind == "gen":
            n, p, seed = self.gen
            return f"G_{n}_{p:g}_{seed}"
        if self.kind == "konect":
            return self.konect
        return Path(self.path).stem

    def load(self):
        """Materialize the graph and its metadata."""
        if self.kind == "gen":
            n, p, seed = self.gen
            g = gen_random(n, p, seed)
            return g, InstanceMeta(self.name, g.n_u, g.n_v, g.edge_count,
                                   "generated")
        if self.kind == "konect":
            path = fetch_konect(self.konect, self.cache_dir)
            with open(path) as fh:
                g, meta = parse_konect(fh, name=self.name)
            return g, replace(meta, source="fetched")
        with open(self.path) as fh:
            if self.format == "konect":
                return parse_konect(fh, name=self.name)
            return parse_bip(fh, name=self.name)


@dataclass(frozen=True)
class CampaignConfig:
    instances: tuple
    runs: int = 1
    params: SolverParams = field(default_factory=SolverParams)
    jobs: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


@dataclass
class InstanceResult:
    meta: InstanceMeta
    reports: list
    error: str | None = None

    @property
    def best(self) -> int:
        return max(r.omega for r in self.reports)

    @property
    def avg_best(self) -> float:
        return sum(r.omega for r in self.reports) / len(self.reports)

    @property
    def avg_time_to_best(self) -> float:
        return sum(r.time_to_best for r in self.reports) / len(self.reports)

    @property
    def optimal_runs(self) -> int:
        return sum(1 for r in self.reports if r.proven_optimal)

    def _first_best(self) -> RunReport:
        top = self.best
        return next(r for r in self.reports if r.omega == top)

    @property
    def removed_by_peel(self) -> int:
        return self._first_best().removed_by_peel

    @property
    def removed_by_exact(self) -> int:
        return self._first_best().removed_by_exact


@dataclass
class CampaignReport:
    results: list
    base_seed: int
    runs: int

    @property
    def failed(self) -> list:
        return [r for r in self.results if r.error is not None]


def _run_one(spec: InstanceSpec, params: SolverParams) -> RunReport:
    g, _ = spec.load()
    return solve(g, params)


def run_campaign(config: CampaignConfig) -> CampaignReport:
    """Execute runs per instance and aggregate. jobs > 1 fans runs out to a
    process pool; report contents are identical either way."""
    tasks = []
    for spec in config.instances:
        for i in range(config.runs):
            tasks.append((spec, replace(config.params,
                                        seed=config.params.seed + i)))
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            flat = list(pool.map(_run_one_safe, tasks, chunksize=1))
    else:
        flat = [_run_one_safe(t) for t in tasks]

    results = []
    k = 0
    for spec in config.instances:
        chunk = flat[k:k + config.runs]
        k += config.runs
        errors = [e for r, e in chunk if e is not None]
        reports = [r for r, e in chunk if e is None]
        if errors or not reports:
            results.append(InstanceResult(
                meta=InstanceMeta(spec.name, 0, 0, 0, spec.kind),
                reports=[], error=errors[0] if errors else "no runs"))
            continue
        g, meta = spec.load()
        for r in chunk:
            rep = r[0]
            if not is_biclique(g, rep.best) or balance_deviation(rep.best) != 0:
                raise AssertionError(
                    f"run on {meta.name} reported an invalid biclique")
        results.append(InstanceResult(meta=meta, reports=reports))
    return CampaignReport(results=results, base_seed=config.params.seed,
                          runs=config.runs)


def _run_one_safe(task):
    spec, params = task
    try:
        return _run_one(spec, params), None
    except Exception as e:  # surfaced as a per-instance error entry
        return None, f"{type(e).__name__}: {e}"


# -- emitters ----------------------------------------------------------

_CSV_COLUMNS = ["name", "n_u", "n_v", "edges", "runs", "best", "avg_best",
                "avg_time_to_best", "optimal_runs", "removed_by_peel",
                "removed_by_exact", "error"]


def _rows(report: CampaignReport):
    for res in report.results:
        if res.error is not None:
            yield {"name": res.meta.name, "error": res.error}
            continue
        yield {
            "name": res.meta.name,
            "n_u": res.meta.n_u,
            "n_v": res.meta.n_v,
            "edges": res.meta.edge_count,
            "runs": len(res.reports),
            "best": res.best,
            "avg_best": res.avg_best,
            "avg_time_to_best": res.avg_time_to_best,
            "optimal_runs": res.optimal_runs,
            "removed_by_peel": res.removed_by_peel,
            "removed_by_exact": res.removed_by_exact,
            "error": "",
        }


def report_to_table(report: CampaignReport) -> str:
    headers = _CSV_COLUMNS[:-1]
    lines = []
    rows = [[str(r.get(h, "")) if h not in ("avg_best", "avg_time_to_best")
             else (f"{r[h]:.2f}" if h in r else "")
             for h in headers] for r in _rows(report)]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    errored = [r for r in _rows(report) if r.get("error")]
    for r in errored:
        lines.append(f"error: {r['name']}: {r['error']}")
    return "\n".join(lines) + "\n"


def report_to_json(report: CampaignReport) -> str:
    doc = {
        "schema": REPORT_SCHEMA,
        "base_seed": report.base_seed,
        "runs": report.runs,
        "instances": [],
    }
    for res, row in zip(report.results, _rows(report)):
        entry = dict(row)
        if res.error is None:
            entry["per_run"] = [r.to_dict() for r in res.reports]
        doc["instances"].append(entry)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def report_from_json(text: str) -> dict:
    doc = json.loads(text)
    if doc.get("schema") != REPORT_SCHEMA:
        raise ValueError(f"not a campaign report: schema {doc.get('schema')!r}")
    return doc


def report_to_csv(report: CampaignReport) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=_CSV_COLUMNS)
    w.writeheader()
    for row in _rows(report):
        out = dict(row)
        for key in ("avg_best", "avg_time_to_best"):
            if key in out:
                out[key] = repr(out[key])  # repr round-trips floats exactly
        w.writerow(out)
    return buf.getvalue()


def report_from_csv(text: str) -> list:
    rows = list(csv.DictReader(io.StringIO(text)))
    for row in rows:
        for key in ("n_u", "n_v", "edges", "runs", "best", "optimal_runs",
                    "removed_by_peel", "removed_by_exact"):
            if row.get(key):
                row[key] = int(row[key])
        for key in ("avg_best", "avg_time_to_best"):
            if row.get(key):
                row[key] = float(row[key])
    return rows
