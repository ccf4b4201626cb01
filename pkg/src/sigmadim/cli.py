"""Command-line front end.

    sigmadim dimpoly job.json
    sigmadim generalized job.json --format json
    sigmadim dims job.json --format csv --max-level 12
    sigmadim --fixtures

Exit codes: 0 ok, 1 bad input, 2 family violation, 3 computation guard,
4 internal invariant failure.
"""

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import jsonschema

from . import groups, oracle
from .diffterm import ADDITIVE, MULTIPLICATIVE, GroupDescriptor
from .errors import InputError, InvariantFailure, SigmaDimError
from .parsing import parse_generator

COMMANDS = (
    "dims",
    "dimpoly",
    "stabilize",
    "certificate",
    "generalized",
    "projections",
    "kernels",
    "twisted",
    "oracle-check",
    "report",
)
FORMATS = ("table", "json", "csv")

_LEVEL_ENTRY = {
    "type": "array",
    "prefixItems": [
        {"type": "integer", "minimum": 0},
        {"type": "array", "items": {"type": "integer", "minimum": 0}},
    ],
    "minItems": 2,
    "maxItems": 2,
}

SCHEMA = {
    "type": "object",
    "required": ["n", "family", "variables", "generators"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "family": {"enum": [ADDITIVE, MULTIPLICATIVE]},
        "variables": {
            "type": "array",
            "minItems": 1,
            "uniqueItems": True,
            "items": {"type": "string", "pattern": "^[A-Za-z_][A-Za-z0-9_]*$", "not": {"pattern": "^s[0-9]+$"}},
        },
        "generators": {"type": "array", "items": {"type": "string"}},
        "label": {"type": "string"},
        "schedule": {
            "type": "object",
            "required": ["kind"],
            "properties": {"kind": {"enum": ["zariski", "delay", "explicit"]}},
            "allOf": [
                {
                    "if": {"properties": {"kind": {"const": "zariski"}}},
                    "then": {"properties": {"kind": True}, "additionalProperties": False},
                },
                {
                    "if": {"properties": {"kind": {"const": "delay"}}},
                    "then": {
                        "required": ["d"],
                        "properties": {"kind": True, "d": {"type": "integer", "minimum": 0}},
                        "additionalProperties": False,
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "explicit"}}},
                    "then": {
                        "required": ["levels", "tail_from"],
                        "properties": {
                            "kind": True,
                            "levels": {"type": "array", "minItems": 1, "items": {"type": "array", "items": _LEVEL_ENTRY}},
                            "tail_from": {"type": "integer", "minimum": 0},
                        },
                        "additionalProperties": False,
                    },
                },
            ],
        },
        "command": {"enum": list(COMMANDS)},
        "max_level": {"type": "integer", "minimum": 0},
        "format": {"enum": list(FORMATS)},
        "oracle": {"type": "boolean"},
    },
}


@dataclass
class JobSpec:
    spec: groups.GeneralizedGroupSpec
    command: str = None
    max_level: int = None
    format: str = None
    oracle: bool = False
    raw: dict = None


def _pointer(path):
    return "/" + "/".join(str(p) for p in path)


def validate(data):
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise InputError(f"schema error at {_pointer(e.absolute_path)}: {e.message}")


def _schedule(data):
    sched = data.get("schedule", {"kind": "zariski"})
    kind = sched["kind"]
    if kind == "zariski":
        return groups.Zariski()
    if kind == "delay":
        return groups.Delay(sched["d"])
    levels = tuple(tuple((k, tuple(m)) for k, m in level) for level in sched["levels"])
    return groups.Explicit(levels, sched["tail_from"])


def job_from_dict(data):
    validate(data)
    n, family, variables = data["n"], data["family"], list(data["variables"])
    gens = []
    for k, text in enumerate(data["generators"]):
        try:
            gens.append(parse_generator(text, family, n, variables))
        except InputError as e:
            raise InputError(f"/generators/{k}: {e}") from e
    desc = GroupDescriptor(family, n, variables, gens, data.get("label", ""))
    spec = groups.GeneralizedGroupSpec(desc, _schedule(data))
    return JobSpec(spec, data.get("command"), data.get("max_level"), data.get("format"), data.get("oracle", False), data)


def load_job(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e}") from e
    return job_from_dict(data)


def job_to_dict(job):
    """Canonical JSON form of a job; reloading it gives an equal job."""
    desc = job.spec.base
    sched = job.spec.schedule
    out = {
        "n": desc.n,
        "family": desc.family,
        "variables": list(desc.variables),
        "generators": desc.generator_texts(),
        "label": desc.label,
    }
    if isinstance(sched, groups.Delay):
        out["schedule"] = {"kind": "delay", "d": sched.d}
    elif isinstance(sched, groups.Explicit):
        out["schedule"] = {
            "kind": "explicit",
            "levels": [[[k, list(m)] for k, m in level] for level in sched.levels],
            "tail_from": sched.tail_from,
        }
    else:
        out["schedule"] = {"kind": "zariski"}
    for key in ("command", "max_level", "format"):
        if getattr(job, key) is not None:
            out[key] = getattr(job, key)
    if job.oracle:
        out["oracle"] = True
    return out


# fixtures ----------------------------------------------------------------


def load_fixtures():
    out = []
    for entry in sorted(resources.files("sigmadim.fixtures").iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            out.append(json.loads(entry.read_text(encoding="utf-8")))
    return out


def _fingerprint(job):
    d = job_to_dict(job)
    return json.dumps({k: d[k] for k in ("n", "family", "variables", "generators", "schedule")}, sort_keys=True)


def match_fixture(job):
    fp = _fingerprint(job)
    for fx in load_fixtures():
        if _fingerprint(job_from_dict(fx["job"])) == fp:
            return fx["id"]
    return None


def check_fixture(fx):
    """Recompute a bundled fixture; returns a list of (name, ok, detail)."""
    job = job_from_dict(fx["job"])
    spec, desc, exp = job.spec, job.spec.base, fx["expected"]
    zariski = isinstance(spec.schedule, groups.Zariski)
    checks = []

    def check(name, got, want):
        checks.append((name, got == want, f"got {got}, want {want}"))

    levels = len(exp["dims"]) - 1
    dims = groups.zariski_dims(desc, levels) if zariski else groups.generalized_dims(spec, levels)[0]
    check("dims", list(dims), exp["dims"])
    if "polynomial" in exp:
        poly, thr = groups.dimension_polynomial(desc) if zariski else groups.generalized_polynomial(spec)
        check("polynomial", list(poly.coeffs), exp["polynomial"])
        checks.append(("threshold", thr <= exp["max_threshold"], f"got {thr}, want <= {exp['max_threshold']}"))
    if "invariants" in exp:
        check("invariants", list(groups.group_invariants(desc)), exp["invariants"])
    if "stabilization_index" in exp:
        st = groups.stabilization_index(desc) if zariski else groups.generalized_stabilization(spec)
        check("stabilization", st.m, exp["stabilization_index"])
    if "indicators" in exp:
        got = groups.zariski_indicators(spec, len(exp["indicators"]) - 1, strict=True)
        check("indicators", got, exp["indicators"])
    if "projection_indicators" in exp:
        pr = groups.projections(spec, len(exp["projection_indicators"]) - 1, strict=True)
        check("projections", list(pr.indicators), exp["projection_indicators"])
        checks.append(("projection bound", pr.lemma_ok, "f_i <= j_i - 1 whenever j_i > i"))
    if "certificate" in exp:
        cert = groups.finite_generation_certificate(desc)
        check("certificate", [g.to_text(desc.variables, desc.family) for g in cert.generators], exp["certificate"])
    if "kernel_dims" in exp:
        check("kernels", list(groups.kernels(spec, len(exp["kernel_dims"]) - 1).dims), exp["kernel_dims"])
    return checks


def run_fixtures(out):
    failed = 0
    for fx in load_fixtures():
        for name, ok, detail in check_fixture(fx):
            failed += not ok
            print(f"{'PASS' if ok else 'FAIL'} {fx['id']} {name}: {detail}", file=out)
    return 0 if not failed else InvariantFailure.exit_code


# reports -----------------------------------------------------------------


def _poly(p):
    return {"binomial_coeffs": list(p.coeffs), "binomial": p.to_binomial_text(), "text": p.to_text()}


def _vectors(vs, desc, variables=None):
    return [v.to_text(variables or desc.variables, desc.family) for v in vs]


def _dims_report(job, max_level):
    desc = job.spec.base
    return {"dims": groups.zariski_dims(desc, max_level)}


def _dimpoly_report(job, max_level):
    desc = job.spec.base
    poly, thr = groups.dimension_polynomial(desc)
    inv = groups.group_invariants(desc)
    return {
        "polynomial": _poly(poly),
        "threshold": thr,
        "invariants": {"sigma_type": inv[0], "typical_sigma_dim": inv[1], "sigma_dim": inv[2]},
    }


def _stab_rows(st):
    return [
        {"level": r.level, "dim_next": r.dim_next, "dim_generated": r.dim_generated, "holds": r.holds}
        for r in st.table
    ]


def _stabilize_report(job, max_level):
    st = groups.stabilization_index(job.spec.base)
    return {"stabilization_index": st.m, "bound": st.bound, "table": _stab_rows(st)}


def _certificate_report(job, max_level, horizon=None):
    desc = job.spec.base
    cert = groups.finite_generation_certificate(desc, horizon)
    return {"level": cert.level, "generators": _vectors(cert.generators, desc), "verified_through": cert.verified_through}


def _generalized_report(job, max_level, horizon=None):
    spec = job.spec
    dims, axioms = groups.generalized_dims(spec, max_level)
    poly, thr = groups.generalized_polynomial(spec)
    st = groups.generalized_stabilization(spec)
    ind = groups.zariski_indicators(spec, max_level, horizon)
    return {
        "dims": dims,
        "polynomial": _poly(poly),
        "threshold": thr,
        "indicators": ind,
        "stabilization_index": st.m,
        "bound": st.bound,
        "table": _stab_rows(st),
        "axioms": [
            {"level": r.level, "contains_previous": r.contains_previous, "shifts_contained": list(r.shifts_contained)}
            for r in axioms.rows
        ],
        "axioms_ok": axioms.ok,
    }


def _projections_report(job, max_level, horizon=None):
    pr = groups.projections(job.spec, max_level, horizon)
    return {
        "slice_dims": [b.dim for b in pr.slices],
        "indicators": list(pr.indicators),
        "chain_indicators": list(pr.base_indicators),
        "bound_holds": list(pr.lemma_holds),
        "bound_ok": pr.lemma_ok,
    }


def _kernels_report(job, max_level):
    desc = job.spec.base
    ker = groups.kernels(job.spec, max_level)
    return {"dims": list(ker.dims), "top_slices": [_vectors(top, desc) for top in ker.top_slices]}


def _twisted_report(job, max_level):
    desc = job.spec.base
    tw = groups.twisted_kernels(job.spec, max_level)
    slices = groups.chain_slices(tw.spec, max_level)
    return {
        "dims": list(tw.dims),
        "kernel_dims": list(tw.kernel_dims),
        "slices": [_vectors(b.rows, desc) for b in slices],
        "axioms_ok": tw.axioms.ok,
        "polynomial": _poly(tw.polynomial) if tw.polynomial is not None else None,
        "window_start": tw.window_start,
    }


def _oracle_report(job, max_level):
    desc = job.spec.base
    main = groups.zariski_dims(desc, max_level)
    brute = oracle.brute_dims(desc, max_level)
    rows = [{"level": i, "main": a, "oracle": b, "agree": a == b} for i, (a, b) in enumerate(zip(main, brute))]
    if not all(r["agree"] for r in rows):
        bad = next(r for r in rows if not r["agree"])
        raise InvariantFailure(f"oracle disagrees at level {bad['level']}: main {bad['main']}, oracle {bad['oracle']}")
    return {"rows": rows}


def _seeded_oracle_report(seed, count, max_level):
    rng = random.Random(seed)
    rows = []
    for k in range(count):
        desc = oracle.random_descriptor(rng)
        main = groups.zariski_dims(desc, max_level)
        brute = oracle.brute_dims(desc, max_level)
        rows.append({"instance": k, "n": desc.n, "s": desc.s, "generators": desc.generator_texts(), "agree": main == brute})
        if main != brute:
            raise InvariantFailure(f"oracle disagrees on random instance {k}: {desc.generator_texts()}")
    return {"command": "oracle-check", "seed": seed, "max_level": max_level, "instances": rows}


def build_report(command, job, max_level=None, horizon=None, with_oracle=False):
    desc = job.spec.base
    if max_level is None:
        max_level = job.max_level if job.max_level is not None else groups.default_max_level(desc)
    report = {"command": command, "label": desc.label, "max_level": max_level}
    fixture = match_fixture(job)
    if fixture:
        report["fixture"] = fixture
    if command == "dims":
        report.update(_dims_report(job, max_level))
    elif command == "dimpoly":
        report.update(_dimpoly_report(job, max_level))
    elif command == "stabilize":
        report.update(_stabilize_report(job, max_level))
    elif command == "certificate":
        report.update(_certificate_report(job, max_level, horizon))
    elif command == "generalized":
        report.update(_generalized_report(job, max_level, horizon))
    elif command == "projections":
        report.update(_projections_report(job, max_level, horizon))
    elif command == "kernels":
        report.update(_kernels_report(job, max_level))
    elif command == "twisted":
        report.update(_twisted_report(job, max_level))
    elif command == "oracle-check":
        report.update(_oracle_report(job, max_level))
    elif command == "report":
        report["dims"] = _dims_report(job, max_level)["dims"]
        report["dimpoly"] = _dimpoly_report(job, max_level)
        report["stabilize"] = _stabilize_report(job, max_level)
        report["certificate"] = _certificate_report(job, max_level, horizon)
        report["kernels"] = _kernels_report(job, max_level)
        if desc.n >= 2:
            report["twisted"] = _twisted_report(job, max_level)
        if not isinstance(job.spec.schedule, groups.Zariski):
            report["generalized"] = _generalized_report(job, max_level, horizon)
            report["projections"] = _projections_report(job, max_level, horizon)
    else:
        raise InputError(f"unknown command {command!r}")
    if with_oracle and command != "oracle-check":
        report["oracle_check"] = _oracle_report(job, max_level)
    return report


# output ------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float):
        raise InvariantFailure("floating-point value in a report")
    return x


def _indicator_summary(ind):
    segs = []
    for i, j in enumerate(ind):
        lag = None if j is None else j - i
        if segs and segs[-1][0] == lag:
            segs[-1][2] = i
        else:
            segs.append([lag, i, i])
    parts = []
    for lag, lo, hi in segs:
        rhs = "unresolved" if lag is None else ("i" if lag == 0 else f"i+{lag}")
        where = f"i = {lo}" if lo == hi else f"{lo} ≤ i ≤ {hi}"
        parts.append(f"j_i = {rhs} for {where}")
    return "; ".join(parts)


def _table(headers, rows):
    cells = [list(map(str, headers))] + [[("-" if v is None else str(v)) for v in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _render_section(command, r):
    out = []
    if command == "dims":
        out.append(_table(["level", "dim"], list(enumerate(r["dims"]))))
    elif command == "dimpoly":
        inv = r["invariants"]
        out.append(
            f"Φ(t) = {r['polynomial']['text']} (threshold {r['threshold']}); "
            f"σ-type {inv['sigma_type']}, typical σ-dim {inv['typical_sigma_dim']}, σ-dim {inv['sigma_dim']}"
        )
        out.append(f"binomial form: {r['polynomial']['binomial']}")
    elif command == "stabilize":
        out.append(f"stabilization index m = {r['stabilization_index']} (generation proven for i ≥ D = {r['bound']})")
        out.append(_stab_table(r["table"]))
    elif command == "certificate":
        out.append(f"generated by the level-{r['level']} slice (checked through level {r['verified_through']}):")
        out.extend(f"  {g}" for g in r["generators"])
    elif command == "generalized":
        out.append(
            f"Ψ(t) = {r['polynomial']['text']} (threshold {r['threshold']}); {_indicator_summary(r['indicators'])}"
        )
        out.append(f"stabilization index m = {r['stabilization_index']}; axioms {'hold' if r['axioms_ok'] else 'FAIL'}")
        out.append(_table(["level", "dim", "j_i"], [(i, d, j) for i, (d, j) in enumerate(zip(r["dims"], r["indicators"]))]))
    elif command == "projections":
        out.append(f"projection bound f_i ≤ j_i - 1 when j_i > i: {'holds' if r['bound_ok'] else 'FAILS'}")
        rows = zip(range(len(r["indicators"])), r["slice_dims"], r["indicators"], r["chain_indicators"])
        out.append(_table(["level", "slice dim", "f_i", "j_i"], list(rows)))
    elif command == "kernels":
        out.append(_table(["level", "dim H"], list(enumerate(r["dims"]))))
    elif command == "twisted":
        poly = r["polynomial"]["text"] if r["polynomial"] else "n/a"
        out.append(f"twisted kernels: axioms {'hold' if r['axioms_ok'] else 'FAIL'}; fitted polynomial {poly}")
        rows = [(i, d, k, ", ".join(s) or "0") for i, (d, k, s) in enumerate(zip(r["dims"], r["kernel_dims"], r["slices"]))]
        out.append(_table(["level", "dim H'", "dim H", "slice"], rows))
    elif command == "oracle-check":
        rows = [(x["level"], x["main"], x["oracle"], "yes" if x["agree"] else "NO") for x in r["rows"]]
        out.append(_table(["level", "main", "oracle", "agree"], rows))
    return "\n".join(out)


def _stab_table(rows):
    return _table(
        ["i", "dim L_i+1", "dim gen(L_i)", "equal"],
        [(x["level"], x["dim_next"], x["dim_generated"], "yes" if x["holds"] else "no") for x in rows],
    )


def emit(report, fmt="table"):
    if fmt == "json":
        return json.dumps(_jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    command = report.get("command")
    if fmt == "csv":
        if "dims" not in report or command == "report":
            raise InputError("csv output is only available for dimension tables")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["level", "dim"])
        for i, d in enumerate(report["dims"]):
            w.writerow([i, d])
        return buf.getvalue()
    if fmt != "table":
        raise InputError(f"unknown format {fmt!r}")
    if "instances" in report:
        rows = [(x["instance"], x["n"], x["s"], "yes" if x["agree"] else "NO") for x in report["instances"]]
        return f"random corpus, seed {report['seed']}\n" + _table(["instance", "n", "s", "agree"], rows) + "\n"
    head = f"{report.get('label') or 'group'} (levels 0..{report['max_level']})"
    if report.get("fixture"):
        head += f" [fixture {report['fixture']}]"
    parts = [head]
    if command == "report":
        parts.append(_render_section("dims", report))
        for section in ("dimpoly", "stabilize", "certificate", "kernels", "twisted", "generalized", "projections"):
            if section in report:
                parts.append(f"== {section}\n" + _render_section(section, report[section]))
    else:
        parts.append(_render_section(command, report))
    if "oracle_check" in report:
        parts.append("== oracle check\n" + _render_section("oracle-check", report["oracle_check"]))
    return "\n".join(parts) + "\n"


# entry point -------------------------------------------------------------


def make_parser():
    p = argparse.ArgumentParser(prog="sigmadim", description="Dimension invariants of difference algebraic groups.")
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="job file (JSON), or - for stdin")
    p.add_argument("--max-level", type=int, default=None)
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--oracle-check", action="store_true", help="compare dimensions with the brute-force oracle")
    p.add_argument("--horizon", type=int, default=None, help="indicator search horizon")
    p.add_argument("--seed", type=int, default=None, help="oracle-check a seeded random corpus instead of a job file")
    p.add_argument("--count", type=int, default=10, help="corpus size for --seed")
    p.add_argument("--fixtures", action="store_true", help="recompute the bundled fixtures")
    return p


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    parser.__class__ = _Parser
    try:
        args = parser.parse_args(argv)
    except _ArgError as e:
        print(f"error: {e}", file=err)
        return InputError.exit_code
    try:
        if args.max_level is not None and args.max_level < 0:
            raise InputError("--max-level must be non-negative")
        if args.fixtures:
            return run_fixtures(out)
        if args.command is None:
            raise InputError("a command is required (or --fixtures)")
        if args.seed is not None and args.input is None:
            if args.command != "oracle-check":
                raise InputError("--seed without a job file only applies to oracle-check")
            level = 8 if args.max_level is None else args.max_level
            report = _seeded_oracle_report(args.seed, args.count, level)
            out.write(emit(report, args.format or "table"))
            return 0
        if args.input is None:
            raise InputError("a job file is required")
        job = load_job(args.input)
        fmt = args.format or job.format or "table"
        report = build_report(
            args.command, job, args.max_level, args.horizon, args.oracle_check or job.oracle
        )
        out.write(emit(report, fmt))
        return 0
    except SigmaDimError as e:
        print(f"error: {e}", file=err)
        return e.exit_code
    except RecursionError as e:
        print(f"error: {e}", file=err)
        return 3


if __name__ == "__main__":
    sys.exit(main())
