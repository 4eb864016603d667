"""Command-line front-end.

``run`` executes an approximation/persistence job (in-process by default, or
against a running service with --server), ``distance`` compares two diagram
files, ``plot`` renders SVG from a diagram or cell dump, ``serve`` starts the
HTTP service.

Exit codes: 0 success, 1 bad input or runtime error, 2 CannotDecide.
"""

from __future__ import annotations

import json
import math
import os
import sys

import click
from pydantic import ValidationError

from rigorpersist import __version__
from rigorpersist.errors import DomainViolation, RigorPersistError
from rigorpersist.formats import dump_approximation, read_diagram, write_diagram
from rigorpersist.metrics import bottleneck, wasserstein
from rigorpersist.persistence import PersistenceDiagram, export_multifiltration
from rigorpersist.plotting import plot_diagram, plot_step_segments
from rigorpersist.service.jobs import (
    diagram_from_records,
    diagram_records,
    run_job,
    summary_dict,
)
from rigorpersist.service.models import JobSpec

_DEFAULT_VARS = {1: "x", 2: "x,y", 3: "x,y,z"}


def _fail(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _parse_domain(text: str):
    out = []
    for part in text.split(";"):
        bits = part.split(",")
        if len(bits) != 2:
            _fail(f'bad domain interval {part!r}; expected "a,b;c,d;..."')
        try:
            out.append((float(bits[0]), float(bits[1])))
        except ValueError:
            _fail(f"bad domain number in {part!r}")
    return out


def _parse_periodic(text, n):
    if text is None:
        return None
    bits = text.split(",")
    if len(bits) != n or any(b.strip() not in ("0", "1") for b in bits):
        _fail(f'--periodic wants {n} comma-separated 0/1 flags, got {text!r}')
    return [b.strip() == "1" for b in bits]


def _threads(flag):
    if flag is not None:
        return flag
    env = os.environ.get("RIGOR_PERSIST_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            _fail(f"RIGOR_PERSIST_THREADS is not an integer: {env!r}")
    return 1


@click.group()
@click.version_option(__version__)
def main():
    """Certified piecewise-constant approximation and persistent homology."""


@main.command()
@click.option("--f", "exprs", multiple=True, required=True,
              help="Function expression; repeat for vector components.")
@click.option("--vars", "variables", default=None,
              help="Comma-separated variable names (default x / x,y / x,y,z).")
@click.option("--domain", required=True, help='Box "a,b;c,d;..." one pair per variable.')
@click.option("--mode", type=click.Choice(["approximate", "persist", "greedy", "distance"]),
              default="approximate", show_default=True)
@click.option("--eps", type=float, default=None, help="Target sup-norm error.")
@click.option("--budget", type=int, default=None, help="Greedy subdivision budget.")
@click.option("--max-depth", type=int, default=30, show_default=True)
@click.option("--periodic", default=None, help='Per-axis 0/1 flags, e.g. "0,1".')
@click.option("--out", "out_prefix", type=click.Path(), default=None,
              help="Output prefix; writes <out>.cells.jsonl and <out>.diagram.json.")
@click.option("--threads", type=int, default=None,
              help="Parallel enclosure evaluations (default RIGOR_PERSIST_THREADS or 1).")
@click.option("--keep-short", is_flag=True,
              help="Keep finite intervals with persistence <= eps in the diagram.")
@click.option("--server", default=None, help="Base URL of a running service.")
def run(exprs, variables, domain, mode, eps, budget, max_depth, periodic,
        out_prefix, threads, keep_short, server):
    """Run an approximation, persistence, or greedy job."""
    dom = _parse_domain(domain)
    if variables is None:
        variables = _DEFAULT_VARS.get(len(dom))
        if variables is None:
            _fail(f"--vars is required for {len(dom)}-dimensional domains")
    names = [v.strip() for v in variables.split(",")]
    try:
        spec = JobSpec(
            f=list(exprs),
            vars=names,
            domain=dom,
            mode=mode,
            eps=eps,
            budget=budget,
            max_depth=max_depth,
            periodic=_parse_periodic(periodic, len(dom)),
            keep_short=keep_short,
            threads=_threads(threads),
        )
    except ValidationError as err:
        _fail("; ".join(e["msg"] for e in err.errors()))

    if server is not None:
        _run_remote(spec, server, out_prefix)
        return

    try:
        outcome = run_job(spec)
    except DomainViolation as err:
        where = f" on cell {err.cell_axes}" if err.cell_axes is not None else ""
        _fail(f"{err}{where}")
    except (RigorPersistError, ValueError) as err:
        _fail(str(err))

    outputs = {}
    if out_prefix:
        cells_path = f"{out_prefix}.cells.jsonl"
        if outcome.multifiltration:
            export_multifiltration(outcome.approx, cells_path)
        else:
            dump_approximation(outcome.approx, cells_path)
        outputs["cells"] = cells_path
        if outcome.diagram is not None:
            diagram_path = f"{out_prefix}.diagram.json"
            write_diagram(outcome.diagram, diagram_path)
            outputs["diagram"] = diagram_path
    report = {
        "summary": summary_dict(outcome),
        "diagram": diagram_records(outcome.diagram) if outcome.diagram is not None else None,
        "multifiltration": outcome.multifiltration,
        "outputs": outputs,
    }
    click.echo(json.dumps(report, sort_keys=True, indent=2))
    sys.exit(outcome.exit_code)


def _run_remote(spec: JobSpec, server: str, out_prefix):
    import httpx

    url = f"{server.rstrip('/')}/{spec.mode}"
    try:
        resp = httpx.post(url, json=spec.model_dump(), timeout=600.0)
    except httpx.HTTPError as err:
        _fail(f"service unreachable: {err}")
    if resp.status_code != 200:
        _fail(f"service error {resp.status_code}: {resp.text}")
    body = resp.json()
    outputs = {}
    if out_prefix and body.get("diagram") is not None:
        diagram_path = f"{out_prefix}.diagram.json"
        write_diagram(diagram_from_records(body["diagram"]), diagram_path)
        outputs["diagram"] = diagram_path
    body["outputs"] = outputs
    body.pop("cells", None)
    click.echo(json.dumps(body, sort_keys=True, indent=2))
    sys.exit(0 if body["summary"]["status"] == "Complete" else 2)


@main.command()
@click.argument("diagram_a", type=click.Path())
@click.argument("diagram_b", type=click.Path())
@click.option("--metric", type=click.Choice(["bottleneck", "wasserstein"]),
              default="bottleneck", show_default=True)
@click.option("--q", type=float, default=2.0, show_default=True,
              help="Degree for the Wasserstein distance.")
@click.option("--server", default=None, help="Base URL of a running service.")
def distance(diagram_a, diagram_b, metric, q, server):
    """Distance between two diagram JSON files."""
    try:
        A = read_diagram(diagram_a)
        B = read_diagram(diagram_b)
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as err:
        _fail(f"malformed diagram file: {err}")
    if server is not None:
        import httpx

        resp = httpx.post(
            f"{server.rstrip('/')}/distance",
            json={
                "a": diagram_records(A),
                "b": diagram_records(B),
                "metric": metric,
                "q": q,
            },
            timeout=600.0,
        )
        if resp.status_code != 200:
            _fail(f"service error {resp.status_code}: {resp.text}")
        click.echo(resp.json()["distance"])
        return
    try:
        d = bottleneck(A, B) if metric == "bottleneck" else wasserstein(A, B, q)
    except ValueError as err:
        _fail(str(err))
    click.echo("inf" if d == math.inf else repr(d))


@main.command()
@click.argument("input_path", type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path(),
              help="SVG file to write.")
@click.option("--eps", type=float, default=None,
              help="Draw the short-interval band at this offset (diagrams only).")
def plot(input_path, out_path, eps):
    """Render a diagram JSON or a 1-D cell dump as SVG."""
    try:
        with open(input_path) as fh:
            text = fh.read()
        head = text.lstrip()[:1]
        if head == "[":
            plot_diagram(PersistenceDiagram.from_json(text), out_path, eps=eps)
        else:
            lines = [json.loads(l) for l in text.splitlines() if l.strip()]
            header, records = lines[0], lines[1:]
            if header.get("kind") != "approximation":
                _fail("not a diagram JSON or approximation dump file")
            if len(header.get("domain", [])) != 1 or header.get("m", 1) != 1:
                _fail("step plots need a 1-D scalar approximation dump")
            if header.get("status") != "Complete":
                _fail("step plots need a Complete approximation")
            segs = [
                (tuple(r["axes"][0]), r["value"][0])
                for r in records
                if r["dim"] == 1 and r["value"] is not None
            ]
            plot_step_segments(segs, out_path)
    except (ValueError, KeyError, TypeError, IndexError, OSError,
            json.JSONDecodeError) as err:
        _fail(f"malformed input: {err}")
    click.echo(out_path)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Start the HTTP service."""
    import uvicorn

    from rigorpersist.service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
