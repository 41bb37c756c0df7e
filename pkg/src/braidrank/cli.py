"""Command-line front end: validate braidings, run rank / Nichols / primitives.

Input is a single JSON document (file or stdin) with exact scalars encoded
as strings ("3/7", "-1", residues as decimals); floating point field entries
are rejected by construction.  Reports go to stdout (human table by default,
the machine-readable document with --json); diagnostics go to stderr.

Exit codes: 0 ok, 1 braiding validation failure, 2 parse error,
3 tower not stabilized within max_iter (a report is still written).

The optional cache directory stores per-stage relation bases keyed by a
stable hash of (field, braiding entries, cutoff); hits are bit-identical to
recomputation and partial runs are resumed instead of restarted.
"""

from __future__ import annotations

import hashlib
import json
import os
import sys

import click

from . import bialgebra, tower
from .bialgebra import GradedQuotient, free_truncated, hilbert_series, primitives
from .braiding import BraidedSpace, make_diagonal, make_flip, make_from_matrix
from .errors import BraidrankError, InvalidField
from .exactlin import FieldSpec, GF, Matrix, RATIONALS, Subspace, format_scalar
from .nichols_oracle import compare, nichols_truncation
from .tower import RankReport, StageReport


class ParseError(Exception):
    """Malformed job document (exit code 2)."""


# ---------------------------------------------------------------------------
# job documents
# ---------------------------------------------------------------------------


def _read_document(input_path: str) -> dict:
    try:
        if input_path == "-":
            text = sys.stdin.read()
        else:
            with open(input_path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read input: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("job document must be a JSON object")
    return doc


def _parse_field(doc) -> FieldSpec:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ParseError('field must be {"kind": "rationals"} or {"kind": "prime", "p": ...}')
    kind = doc["kind"]
    try:
        if kind == "rationals":
            return RATIONALS
        if kind == "prime":
            if "p" not in doc or not isinstance(doc["p"], int):
                raise ParseError("prime field needs an integer p")
            return GF(doc["p"])
    except InvalidField as exc:
        raise ParseError(str(exc)) from None
    raise ParseError(f"unknown field kind {kind!r}")


def _parse_scalar_grid(field, grid, what):
    if not isinstance(grid, list) or not all(isinstance(r, list) for r in grid):
        raise ParseError(f"{what} must be a list of lists of scalar strings")
    try:
        return Matrix.from_scalars(field, grid)
    except (ValueError, TypeError) as exc:
        raise ParseError(f"bad scalar in {what}: {exc}") from None


class JobSpec:
    """Validated job: field, dimension, braiding constructor, run options."""

    def __init__(self, doc: dict, cutoff=None, max_iter=None, oracle=None):
        self.field = _parse_field(doc.get("field"))
        n = doc.get("dimension")
        if not isinstance(n, int) or n < 1:
            raise ParseError("dimension must be a positive integer")
        self.dimension = n
        br = doc.get("braiding")
        if not isinstance(br, dict) or "kind" not in br:
            raise ParseError('braiding must have a "kind"')
        self.braiding_doc = br
        cut = cutoff if cutoff is not None else doc.get("degree_cutoff")
        if cut is None:
            raise ParseError("degree_cutoff missing (or pass --cutoff)")
        if not isinstance(cut, int) or cut < 1:
            raise ParseError("degree_cutoff must be a positive integer")
        self.cutoff = cut
        mi = max_iter if max_iter is not None else doc.get("max_iter")
        if mi is None:
            mi = cut
        if not isinstance(mi, int) or mi < 0:
            raise ParseError("max_iter must be a nonnegative integer")
        self.max_iter = mi
        orc = oracle if oracle else doc.get("oracle", False)
        if not isinstance(orc, bool):
            raise ParseError("oracle must be a boolean")
        self.oracle = orc

    def build_space(self) -> BraidedSpace:
        """Construct and validate the braided space; may raise BraidrankError."""
        br = self.braiding_doc
        kind = br["kind"]
        n = self.dimension
        if kind == "flip":
            return make_flip(n, self.field)
        if kind == "diagonal":
            q = _parse_scalar_grid(self.field, br.get("q"), "q")
            if q.shape != (n, n):
                raise ParseError(f"q must be {n}x{n}")
            return make_diagonal(self.field, q)
        if kind == "matrix":
            entries = _parse_scalar_grid(self.field, br.get("entries"), "entries")
            if entries.shape != (n * n, n * n):
                raise ParseError(f"entries must be {n * n}x{n * n}")
            return make_from_matrix(n, self.field, entries)
        raise ParseError(f"unknown braiding kind {kind!r}")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def rank_report_doc(rep: RankReport) -> dict:
    """The machine-readable rank report (deterministic key order)."""
    return {
        "rank_le_cutoff": rep.rank_le_cutoff,
        "stabilized": rep.stabilized,
        "stages": [
            {
                "hilbert": list(s.hilbert),
                "new_relation_dims": list(s.new_relation_dims),
                "iso": s.stage_map_iso,
            }
            for s in rep.stages
        ],
        "final_hilbert": hilbert_series(rep.final),
        "oracle_match": rep.oracle_match,
    }


def dumps_report(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _subspace_doc(sub: Subspace, field) -> list:
    return [[format_scalar(v, field) for v in row] for row in sub.basis.scalar_rows()]


def _subspace_from_doc(field, ambient, rows) -> Subspace:
    if not rows:
        return Subspace.zero(field, ambient)
    return Subspace.from_rows(Matrix.from_scalars(field, rows))


def _quotient_relations_doc(q: GradedQuotient) -> dict:
    return {
        str(d): _subspace_doc(q.relation(d), q.space.field)
        for d in range(1, q.cutoff + 1)
    }


def _quotient_from_doc(space: BraidedSpace, cutoff: int, doc: dict) -> GradedQuotient:
    rels = [
        _subspace_from_doc(space.field, space.n**d, doc.get(str(d), []))
        for d in range(1, cutoff + 1)
    ]
    q = GradedQuotient(space, cutoff, rels, _validated=True)
    bialgebra._validate_quotient(q)
    return q


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------


def _cache_key(spec: JobSpec, space: BraidedSpace) -> str:
    payload = {
        "field": {"kind": spec.field.kind, "p": spec.field.p},
        "dimension": spec.dimension,
        "braiding": [
            [format_scalar(v, spec.field) for v in row] for row in space.c.scalar_rows()
        ],
        "cutoff": spec.cutoff,
    }
    blob = json.dumps(payload, sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()[:24]


def _atomic_write(path: str, text: str):
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _stage_from_doc(k, doc) -> StageReport:
    return StageReport(
        stage=k,
        hilbert=tuple(doc["hilbert"]),
        new_relation_dims=tuple(doc["new_relation_dims"]),
        stage_map_iso=doc["iso"],
    )


def _run_tower_cached(spec: JobSpec, space: BraidedSpace, cache_dir: str | None) -> RankReport:
    """Tower run with optional cache: exact hits are served, partials resumed."""
    if not cache_dir:
        return tower.run(space, spec.cutoff, spec.max_iter)
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, _cache_key(spec, space) + ".json")
    cached = None
    if os.path.exists(path):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                cached = json.load(fh)
            if (
                cached.get("version") != 1
                or not isinstance(cached.get("stage_relations"), list)
                or not isinstance(cached.get("report", {}).get("stages"), list)
                or len(cached["stage_relations"]) != len(cached["report"]["stages"])
            ):
                cached = None
        except (OSError, json.JSONDecodeError, AttributeError):
            cached = None

    stages: list[StageReport] = []
    quotients_docs: list[dict] = []
    q = free_truncated(space, spec.cutoff)
    start = 0
    if cached is not None:
        doc_stages = cached["report"]["stages"]
        doc_rels = cached["stage_relations"]
        usable = min(len(doc_stages), spec.max_iter)
        for k in range(usable):
            stages.append(_stage_from_doc(k, doc_stages[k]))
            quotients_docs.append(doc_rels[k])
        if usable:
            q = _quotient_from_doc(space, spec.cutoff, doc_rels[usable - 1])
        start = usable

    rank = next((s.stage for s in stages if s.stage_map_iso), None)
    if rank is None:
        for k in range(start, spec.max_iter):
            q, rep = tower.step(q, k)
            stages.append(rep)
            quotients_docs.append(_quotient_relations_doc(q))
            if rep.stage_map_iso:
                rank = k
                break
    report = RankReport(
        stages=stages, rank_le_cutoff=rank, stabilized=rank is not None, final=q
    )
    # rewrite only when new stages were computed, so a shorter request never
    # truncates a longer cached run
    if cached is None or len(quotients_docs) > len(cached["stage_relations"]):
        payload = {
            "version": 1,
            "max_iter": max(spec.max_iter, cached["max_iter"] if cached else 0),
            "report": rank_report_doc(report),
            "stage_relations": quotients_docs,
        }
        _atomic_write(path, json.dumps(payload, indent=1) + "\n")
    return report


# ---------------------------------------------------------------------------
# pretty printing
# ---------------------------------------------------------------------------


def _basis_label(idx: int, n: int, d: int) -> str:
    digits = []
    for _ in range(d):
        digits.append(idx % n)
        idx //= n
    return "e" + "".join(str(t) for t in reversed(digits))


def _pretty_vector(row: Matrix, n: int, d: int) -> str:
    field = row.field
    terms = []
    for idx in range(row.cols):
        v = row.entry(0, idx)
        if v == 0:
            continue
        label = _basis_label(idx, n, d)
        negative = field.is_rationals and v < 0
        mag = -v if negative else v
        body = label if mag == 1 else f"{format_scalar(mag, field)}*{label}"
        terms.append(("-" if negative else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = body if sign == "+" else "-" + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _human_rank_lines(spec: JobSpec, rep: RankReport) -> list[str]:
    lines = ["stage  iso  hilbert / new relation dims (deg 2..D)"]
    for s in rep.stages:
        lines.append(
            f"{s.stage:>5}  {'yes' if s.stage_map_iso else 'no ':<3}  "
            f"{list(s.hilbert)}  new={list(s.new_relation_dims)}"
        )
    if rep.stabilized:
        lines.append(
            f"rank at cutoff D={spec.cutoff} (lower bound on the untruncated rank): "
            f"{rep.rank_le_cutoff}"
        )
    else:
        lines.append(f"not stabilized within max_iter={spec.max_iter}")
    lines.append(f"final hilbert: {hilbert_series(rep.final)}")
    if rep.oracle_match is not None:
        lines.append(f"oracle match: {rep.oracle_match}")
    return lines


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _common(fn):
    fn = click.option("--input", "input_path", default="-", help="job JSON (file or - for stdin)")(fn)
    fn = click.option("--cutoff", type=int, default=None, help="override degree_cutoff")(fn)
    fn = click.option("--max-iter", "max_iter", type=int, default=None, help="override max_iter")(fn)
    fn = click.option("--cache", "cache_dir", default=None, help="stage cache directory")(fn)
    fn = click.option("--json", "as_json", is_flag=True, help="machine-readable stdout")(fn)
    return fn


@click.group()
def main():
    """Exact braided bialgebra towers, combinatorial rank, Nichols truncations."""


def _load_spec(input_path, cutoff, max_iter, oracle=None) -> JobSpec:
    return JobSpec(_read_document(input_path), cutoff, max_iter, oracle)


def _fail_parse(exc) -> "NoReturn":
    click.echo(f"parse error: {exc}", err=True)
    sys.exit(2)


@main.command()
@_common
def check(input_path, cutoff, max_iter, cache_dir, as_json):
    """Validate a braiding: invertibility plus the braid equation."""
    try:
        doc = _read_document(input_path)
        doc.setdefault("degree_cutoff", 1)
        spec = JobSpec(doc, cutoff, max_iter)
    except ParseError as exc:
        _fail_parse(exc)
    try:
        space = spec.build_space()
    except ParseError as exc:
        _fail_parse(exc)
    except BraidrankError as exc:
        witness = list(getattr(exc, "witness", ())) or None
        if as_json:
            click.echo(dumps_report({"valid": False, "witness": witness, "error": str(exc)}), nl=False)
        else:
            click.echo(f"invalid: {exc}")
        sys.exit(1)
    if as_json:
        click.echo(dumps_report({"valid": True, "witness": None, "error": None}), nl=False)
    else:
        click.echo(f"ok: braiding validated (n={space.n}, field={space.field})")
    sys.exit(0)


@main.command()
@_common
@click.option("--oracle", is_flag=True, help="cross-check the final stage against the symmetrizer oracle")
@click.option("--report", "report_path", default=None, help="also write the JSON report to a file")
def rank(input_path, cutoff, max_iter, cache_dir, as_json, oracle, report_path):
    """Run the quotient tower and report the rank visible below the cutoff."""
    try:
        spec = _load_spec(input_path, cutoff, max_iter, oracle)
    except ParseError as exc:
        _fail_parse(exc)
    try:
        space = spec.build_space()
    except ParseError as exc:
        _fail_parse(exc)
    except BraidrankError as exc:
        click.echo(f"invalid braiding: {exc}", err=True)
        sys.exit(1)
    rep = _run_tower_cached(spec, space, cache_dir)
    if spec.oracle and rep.stabilized:
        rep.oracle_match = compare(rep.final, nichols_truncation(space, spec.cutoff))
    doc = rank_report_doc(rep)
    text = dumps_report(doc)
    if report_path:
        _atomic_write(report_path, text)
    if as_json:
        click.echo(text, nl=False)
    else:
        for line in _human_rank_lines(spec, rep):
            click.echo(line)
    sys.exit(0 if rep.stabilized else 3)


@main.command()
@_common
def nichols(input_path, cutoff, max_iter, cache_dir, as_json):
    """Compute the symmetrizer-oracle truncation and compare with the tower."""
    try:
        spec = _load_spec(input_path, cutoff, max_iter)
    except ParseError as exc:
        _fail_parse(exc)
    try:
        space = spec.build_space()
    except ParseError as exc:
        _fail_parse(exc)
    except BraidrankError as exc:
        click.echo(f"invalid braiding: {exc}", err=True)
        sys.exit(1)
    oracle_q = nichols_truncation(space, spec.cutoff)
    rep = _run_tower_cached(spec, space, cache_dir)
    match = compare(rep.final, oracle_q) if rep.stabilized else None
    doc = {
        "oracle_hilbert": hilbert_series(oracle_q),
        "final_hilbert": hilbert_series(rep.final),
        "stabilized": rep.stabilized,
        "rank_le_cutoff": rep.rank_le_cutoff,
        "match": match,
    }
    if as_json:
        click.echo(dumps_report(doc), nl=False)
    else:
        click.echo(f"oracle hilbert: {doc['oracle_hilbert']}")
        click.echo(f"tower hilbert:  {doc['final_hilbert']}")
        if match is None:
            click.echo(f"match: undetermined (not stabilized within max_iter={spec.max_iter})")
        else:
            click.echo(f"match: {match}")
    sys.exit(0 if rep.stabilized else 3)


@main.command("primitives")
@_common
@click.option("--stage", type=int, default=0, help="tower stage (0 = free object)")
@click.option("--degree", type=int, required=True, help="tensor degree to report")
def primitives_cmd(input_path, cutoff, max_iter, cache_dir, as_json, stage, degree):
    """Print a basis of the primitive space at a given stage and degree."""
    try:
        spec = _load_spec(input_path, cutoff, max_iter)
        if stage < 0 or stage > spec.max_iter:
            raise ParseError(f"stage must lie in 0..max_iter={spec.max_iter}")
        if not 1 <= degree <= spec.cutoff:
            raise ParseError(f"degree must lie in 1..{spec.cutoff}")
    except ParseError as exc:
        _fail_parse(exc)
    try:
        space = spec.build_space()
    except ParseError as exc:
        _fail_parse(exc)
    except BraidrankError as exc:
        click.echo(f"invalid braiding: {exc}", err=True)
        sys.exit(1)
    q = free_truncated(space, spec.cutoff)
    for k in range(stage):
        q, rep = tower.step(q, k)
        if rep.stage_map_iso:
            break
    report = primitives(q, degree)
    sub = report.subspace
    if as_json:
        doc = {
            "stage": stage,
            "degree": degree,
            "dimension": sub.dim,
            "vectors": [
                [format_scalar(v, space.field) for v in row]
                for row in sub.basis.scalar_rows()
            ],
        }
        click.echo(dumps_report(doc), nl=False)
    else:
        click.echo(f"primitives at stage {stage}, degree {degree}: dimension {sub.dim}")
        for k in range(sub.dim):
            click.echo(_pretty_vector(sub.basis.take_rows([k]), space.n, degree))
    sys.exit(0)


if __name__ == "__main__":
    main()
