"""Command-line interface: compute, verify, table, oracle, trace.

Exit status: 0 when every check passes, 2 for invalid input (for instance a
J that fails the grading condition), 3 when a pipeline or oracle assertion
fails.  Progress goes to standard error; results to standard output or --out.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .extfield import extension
from .fq import fq_make
from .invariants import InvariantError, invariant_make, known_invariants, weight
from .isogeny import DrinfeldModule
from .oracle import OracleConfig, SplittingTooLarge, cross_check, random_split_module, torsion_basis
from .pipeline import (ISO_TYPES, ModularPolynomial, PipelineConfig, PipelineFault, compute_modpoly, degree_table,
                       s_of, trace_sanity, verify_theorem)

THREADS_ENV = "DRINFELD_MODPOLY_THREADS"
COMMANDS = ("compute", "verify", "table", "oracle", "trace")
EXIT_OK, EXIT_INPUT, EXIT_FAULT = 0, 2, 3

log = logging.getLogger("drinfeld_modpoly")


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise SystemExit(f"{THREADS_ENV} must be an integer, got {env!r}")
    return os.cpu_count() or 1


@dataclass(frozen=True)
class JobSpec:
    command: str
    q: int
    r: int
    J: tuple[tuple[int, ...], ...] = ()
    iso_type: str = "outgoing"
    fmt: str = "json"
    out: str | None = None
    threads: int | None = None
    backend: str = "algebra"
    samples: int = 20
    seed: int = 0
    max_degree: int = 12
    module: tuple[int, ...] | None = None  # (n, theta index, g_1 index, ...)

    def to_argv(self) -> list[str]:
        argv = [self.command, "--q", str(self.q), "--r", str(self.r)]
        for e in self.J:
            argv += ["--J", ",".join(map(str, e))]
        argv += ["--type", self.iso_type, "--format", self.fmt, "--backend", self.backend]
        if self.out:
            argv += ["--out", self.out]
        if self.threads is not None:
            argv += ["--threads", str(self.threads)]
        if self.command == "oracle":
            argv += ["--samples", str(self.samples), "--seed", str(self.seed), "--max-degree", str(self.max_degree)]
            if self.module is not None:
                argv += ["--module", ",".join(map(str, self.module))]
        return argv

    def to_text(self) -> str:
        return shlex.join(self.to_argv())

    @classmethod
    def from_text(cls, text: str) -> JobSpec:
        return spec_from_args(build_parser().parse_args(shlex.split(text)))


def _exps(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"exponents must be comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="drinfeld-modpoly", description="Drinfeld modular polynomials for T-isogenies")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [("compute", "compute Phi_{J,H} and print it"),
                        ("verify", "compute Phi and check the degree bounds"),
                        ("table", "degree table (i, deg_T a_i, bound)"),
                        ("oracle", "cross-check Phi against brute-force isogeny enumeration"),
                        ("trace", "compute only a_{psi-1} = -Tr(M_J~)")]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--J", type=_exps, action="append", default=[],
                        help="exponents e_1,...,e_{r-1}; repeatable for table/verify")
        sp.add_argument("--type", dest="iso_type", default="outgoing",
                        choices=ISO_TYPES + (("both",) if name in ("table", "verify") else ()))
        sp.add_argument("--format", dest="fmt", default="csv" if name == "table" else "json",
                        choices=("json", "csv", "text"))
        sp.add_argument("--out", default=None, help="output path (default: stdout)")
        sp.add_argument("--threads", type=int, default=None,
                        help=f"worker processes for independent jobs (default: ${THREADS_ENV} or CPU count)")
        sp.add_argument("--backend", default="algebra", choices=("algebra", "matrix"))
        sp.add_argument("-v", "--verbose", action="store_true", help="stage progress on stderr")
        if name == "oracle":
            sp.add_argument("--samples", type=int, default=20)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--max-degree", type=int, default=12, help="cap on [splitting field : F_q]")
            sp.add_argument("--module", type=_exps, default=None,
                            help="n,theta,g_1,...: a fixed module over F_{q^n} (elements as integer indices)")
    return p


def spec_from_args(args: argparse.Namespace) -> JobSpec:
    return JobSpec(command=args.command, q=args.q, r=args.r, J=tuple(args.J), iso_type=args.iso_type,
                   fmt=args.fmt, out=args.out, threads=args.threads, backend=args.backend,
                   samples=getattr(args, "samples", 20), seed=getattr(args, "seed", 0),
                   max_degree=getattr(args, "max_degree", 12), module=getattr(args, "module", None))


# ---------------------------------------------------------------------------
# jobs
# ---------------------------------------------------------------------------

def _types(spec: JobSpec) -> list[str]:
    return list(ISO_TYPES) if spec.iso_type == "both" else [spec.iso_type]


def _invariants(spec: JobSpec) -> list:
    if spec.J:
        return [invariant_make(spec.q, spec.r, e) for e in spec.J]
    if spec.command in ("table", "verify", "oracle"):
        known = known_invariants(spec.q, spec.r)
        if known:
            return known
    raise InvariantError("--J is required")


def _compute_job(args) -> dict:
    q, r, e, iso_type, backend = args
    mp = compute_modpoly(q, r, e, iso_type, PipelineConfig(backend=backend))
    return mp.to_json()


def _run_jobs(jobs: list, threads: int) -> list:
    if threads <= 1 or len(jobs) <= 1:
        return [_compute_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(threads, len(jobs))) as ex:
        return list(ex.map(_compute_job, jobs))


def _modpolys(spec: JobSpec) -> list[ModularPolynomial]:
    jobs = [(spec.q, spec.r, J.e, t, spec.backend) for J in _invariants(spec) for t in _types(spec)]
    threads = spec.threads if spec.threads is not None else default_threads()
    return [ModularPolynomial.from_json(d) for d in _run_jobs(jobs, threads)]


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["-inf" if x is None else x for x in row])
    return buf.getvalue()


def _fmt_compute(mps: list[ModularPolynomial], fmt: str) -> str:
    if fmt == "json":
        if len(mps) == 1:
            return mps[0].to_json_text()
        return "[\n" + ",\n".join(mp.to_json_text().rstrip() for mp in mps) + "\n]\n"
    if fmt == "csv":
        rows = []
        for mp in mps:
            for (i, d, b), c in zip(degree_table(mp), mp.coeffs):
                rows.append((mp.J.name, mp.iso_type, i, d, b, c.to_text()))
        return _csv(rows, ["J", "type", "i", "deg_T", "bound", "coefficient"])
    lines = []
    for mp in mps:
        lines.append(f"# q={mp.q} r={mp.r} {mp.J.name} {mp.iso_type} psi={mp.psi} w={mp.weight}")
        lines += [f"a_{k} = {c.to_text()}" for k, c in enumerate(mp.coeffs)]
    return "\n".join(lines) + "\n"


def _fmt_table(mps: list[ModularPolynomial], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{"J": list(mp.J.e), "type": mp.iso_type, "psi": mp.psi,
                            "degree_table": [list(r) for r in degree_table(mp)]} for mp in mps], indent=1) + "\n"
    if fmt == "csv":
        if len(mps) == 1:
            return _csv(degree_table(mps[0]), ["i", "deg_T", "bound"])
        rows = [(mp.J.name, mp.iso_type) + row for mp in mps for row in degree_table(mp)]
        return _csv(rows, ["J", "type", "i", "deg_T", "bound"])
    lines = []
    for mp in mps:
        lines.append(f"{mp.J.name} {mp.iso_type}: i & deg_T(a_i) & {mp.weight}({mp.psi} - i)")
        lines += [f"{i} & {'-inf' if d is None else d} & {b}" for i, d, b in degree_table(mp)]
    return "\n".join(lines) + "\n"


def _fmt_verify(mps: list[ModularPolynomial], fmt: str) -> str:
    reports = []
    for mp in mps:
        rep = verify_theorem(mp)
        reports.append({"J": list(mp.J.e), "e_r": mp.J.e_r, "type": mp.iso_type, "psi": mp.psi,
                        "w": mp.weight, "monic": mp.coeffs[-1].is_one(), "in_C": True,
                        **rep.to_json(), "non_sharp": rep.non_sharp})
    if fmt == "json":
        return json.dumps(reports[0] if len(reports) == 1 else reports, indent=1) + "\n"
    if fmt == "csv":
        rows = [(r_["J"], r_["type"]) + tuple(row) for r_ in reports for row in r_["rows"]]
        return _csv(rows, ["J", "type", "i", "deg_T", "bound", "sharp"])
    return "\n".join(f"J={r_['J']} {r_['type']}: height {r_['height']} (expected {r_['expected_height']}), "
                     f"all sharp: {r_['all_sharp']}, non-sharp: {r_['non_sharp']}" for r_ in reports) + "\n"


def _run_oracle(spec: JobSpec) -> tuple[dict, bool]:
    cfg = OracleConfig(max_degree=spec.max_degree)
    rng = random.Random(spec.seed)
    results = []
    ok = True
    psi = None
    for J in _invariants(spec):
        for t in _types(spec):
            mp = compute_modpoly(spec.q, spec.r, J, t, PipelineConfig(backend=spec.backend))
            if spec.module is not None:
                n, *vals = spec.module
                if len(vals) != spec.r:
                    raise ValueError(f"--module needs n, theta and {spec.r - 1} g-values")
                K = extension(fq_make(spec.q), n)
                m = DrinfeldModule(spec.q, spec.r, K(K.from_index(vals[0])),
                                   tuple(K(K.from_index(x)) for x in vals[1:]), K.elem_one())
                cases = [(m, torsion_basis(m, cfg))]
            else:
                cases = [random_split_module(spec.q, spec.r, rng, cfg) for _ in range(spec.samples)]
            for idx, (m, ts) in enumerate(cases):
                rep = cross_check(mp, m, ts, cfg)
                psi = rep.psi
                if not rep.passed:
                    ok = False
                    results.append({"J": list(J.e), "type": t, "sample": idx,
                                    "module": [repr(c.v) for c in m.coeffs()], "mismatches": rep.mismatches,
                                    "galois_stable": rep.galois_stable})
            log.info("oracle %s %s: %d samples", J.name, t, len(cases))
    return {"pass": ok, "psi": psi, "mismatches": results}, ok


def run(spec: JobSpec) -> tuple[int, str]:
    """Execute a job; returns (exit status, output text)."""
    if spec.command in ("compute", "trace", "oracle") and spec.iso_type == "both":
        raise ValueError(f"--type both is not available for {spec.command}")
    if spec.command == "compute":
        mps = _modpolys(spec)
        return EXIT_OK, _fmt_compute(mps, spec.fmt)
    if spec.command == "table":
        return EXIT_OK, _fmt_table(_modpolys(spec), spec.fmt)
    if spec.command == "verify":
        return EXIT_OK, _fmt_verify(_modpolys(spec), spec.fmt)
    if spec.command == "trace":
        J = _invariants(spec)[0]
        a, ok = trace_sanity(spec.q, spec.r, J, spec.iso_type, PipelineConfig(backend=spec.backend))
        w = weight(J, s_of(spec.r, spec.iso_type))
        d = a.deg_T()
        data = {"q": spec.q, "r": spec.r, "J": list(J.e), "type": spec.iso_type,
                "coefficient": a.to_json(), "deg_T": None if d == float("-inf") else d, "bound": w, "pass": ok}
        if spec.fmt == "json":
            text = json.dumps(data, indent=1) + "\n"
        elif spec.fmt == "csv":
            text = _csv([(data["deg_T"], w, ok, a.to_text())], ["deg_T", "bound", "pass", "coefficient"])
        else:
            text = f"a_{{psi-1}} = {a.to_text()}\ndeg_T = {data['deg_T']} (bound {w}), pass: {ok}\n"
        return (EXIT_OK if ok else EXIT_FAULT), text
    if spec.command == "oracle":
        data, ok = _run_oracle(spec)
        if spec.fmt == "json":
            text = json.dumps(data, indent=1) + "\n"
        else:
            text = f"pass: {data['pass']}\npsi: {data['psi']}\nmismatches: {len(data['mismatches'])}\n"
        return (EXIT_OK if ok else EXIT_FAULT), text
    raise ValueError(f"unknown command {spec.command!r}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(asctime)s %(message)s")
    spec = spec_from_args(args)
    try:
        status, text = run(spec)
    except InvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SplittingTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PipelineFault as exc:
        print(json.dumps({"fault": exc.report()}), file=sys.stderr)
        return EXIT_FAULT
    except AssertionError as exc:
        print(json.dumps({"fault": {"stage": "assertion", "message": str(exc)}}), file=sys.stderr)
        return EXIT_FAULT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if spec.out:
        with open(spec.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
