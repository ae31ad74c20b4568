"""Command line front end.

    milnor classify --poly "x*y*z*w"
    milnor hilbert --poly "x^7*z+y^8+x^6*y*w+x^4*y^4" --format json
    milnor batch --only "D''"
    milnor corpus > corpus.json

Exit codes: 0 success, 1 usage error, 2 computation error, 3 batch mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor

import jsonschema

from .algebra import MilnorAlgebra
from .classify import classify_curve, classify_surface
from .polyring import DegreeCapError, PolynomialSyntaxError, Ring
from .series import format_poly

__all__ = ["main", "build_parser", "REPORT_SCHEMA", "HILBERT_SCHEMA", "BATCH_SCHEMA",
           "run_entry", "compare"]

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- schemas ---------------------------------------------------------------------------

_INT_OR_TEXT = {"type": ["integer", "string"]}
_TABLE = {"type": "object", "additionalProperties": {"type": "integer"}}

HILBERT_SCHEMA = {
    "type": "object",
    "required": ["polynomial", "variables", "degree", "function", "series_numerator",
                 "denominator_power", "hilbert_polynomial", "polynomial_coefficients",
                 "st", "ct", "mdr", "window"],
    "properties": {
        "polynomial": {"type": "string"},
        "variables": {"type": "array", "items": {"type": "string"}, "minItems": 2},
        "degree": {"type": "integer", "minimum": 1},
        "function": _TABLE,
        "series_numerator": _TABLE,
        "denominator_power": {"type": "integer"},
        "hilbert_polynomial": {"type": "string"},
        "polynomial_coefficients": {"type": "array", "items": {"type": "string"}},
        "st": {"type": "integer", "minimum": 0},
        "ct": _INT_OR_TEXT,
        "mdr": _INT_OR_TEXT,
        "window": {"type": "integer"},
        "resolution": {"type": "string"},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["polynomial", "variables", "degree", "verdict", "exponents", "hilbert"],
    "properties": {
        "polynomial": {"type": "string"},
        "variables": {"type": "array", "items": {"type": "string"}, "minItems": 2},
        "degree": {"type": "integer", "minimum": 1},
        "verdict": {"enum": ["free", "nearly_free", "neither", "cone_free",
                             "cone_nearly_free", "cone_neither", "smooth", None]},
        "exponents": {"type": ["array", "null"], "items": {"type": "integer"}},
        "betti": {"type": ["object", "null"]},
        "resolution": {"type": "string"},
        "hilbert": {
            "type": ["object", "null"],
            "required": ["function", "polynomial", "st", "ct", "mdr"],
            "properties": {
                "function": _TABLE,
                "polynomial": {"type": "string"},
                "st": {"type": "integer"},
                "ct": _INT_OR_TEXT,
                "mdr": _INT_OR_TEXT,
            },
        },
        "certificate": {"type": ["object", "null"]},
        "predictions": {"type": "object"},
        "h1_finite": {"type": ["boolean", "null"]},
        "tame_hint": {"type": ["boolean", "null"]},
        "checks": {"type": "object"},
    },
}

BATCH_SCHEMA = {
    "type": "object",
    "required": ["ok", "rows"],
    "properties": {
        "ok": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "family", "status", "computed", "mismatches"],
                "properties": {
                    "name": {"type": "string"},
                    "family": {"type": "string"},
                    "status": {"enum": ["ok", "mismatch", "error"]},
                    "computed": {"type": "object"},
                    "mismatches": {"type": "array", "items": {"type": "string"}},
                    "error": {"type": "string"},
                },
            },
        },
    },
}


# -- input handling ------------------------------------------------------------------------

_DEFAULT_RINGS = ("x,y,z,w", "a,b,c,d", "a,b,c,d,e")


def _infer_variables(text):
    letters = set("".join(re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text)))
    for names in _DEFAULT_RINGS:
        if letters <= set(names.split(",")):
            return names
    raise UsageError("cannot guess the variables; pass --vars")


def read_input(args):
    sources = [s for s in (args.poly, args.file) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --poly or --file")
    if args.file is not None:
        try:
            with open(args.file) as fh:
                text = fh.read().strip()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    else:
        text = args.poly
    if not text.strip():
        raise UsageError("empty polynomial")
    variables = args.vars or _infer_variables(text)
    try:
        ring = Ring(variables)
        f = ring(text)
    except (PolynomialSyntaxError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if f.is_zero():
        raise UsageError("the zero polynomial defines no hypersurface")
    d = f.homogeneous_degree()
    if d is None:
        raise UsageError("the polynomial is not homogeneous")
    if d < 2:
        raise UsageError("the degree must be at least 2")
    if args.max_degree is not None and d > args.max_degree:
        raise UsageError(f"degree {d} exceeds --max-degree {args.max_degree}")
    if ring.nvars not in (3, 4, 5):
        raise UsageError("supported variable counts are 3 (curves), 4 (surfaces), 5 (Hilbert only)")
    return f


# -- reports ----------------------------------------------------------------------------------

def hilbert_report(f, window=None):
    alg = MilnorAlgebra(f, window=window)
    data = alg.hilbert_data.to_json()
    out = {"polynomial": str(f), "variables": list(f.ring.variables), "degree": alg.d}
    out["hilbert_polynomial"] = data.pop("polynomial")
    out.update(data)
    out["resolution"] = str(alg.resolution)
    return out


def classify_report(f, window=None):
    alg = MilnorAlgebra(f, window=window)
    n = f.ring.nvars
    if n == 4:
        return classify_surface(alg).to_json()
    if n == 3:
        return classify_curve(alg).to_json()
    hil = hilbert_report(f, window)
    return {
        "polynomial": str(f), "variables": list(f.ring.variables), "degree": alg.d,
        "verdict": None, "exponents": None, "betti": alg.betti.to_json(),
        "resolution": hil["resolution"],
        "hilbert": {"function": hil["function"], "polynomial": hil["hilbert_polynomial"],
                    "st": hil["st"], "ct": hil["ct"], "mdr": hil["mdr"],
                    "polynomial_coefficients": hil["polynomial_coefficients"],
                    "series_numerator": hil["series_numerator"]},
        "certificate": None, "predictions": {}, "h1_finite": None, "tame_hint": None,
        "checks": {},
    }


def _flatten(obj, prefix=""):
    rows = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            rows += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            rows += _flatten(v, f"{prefix}[{i}]")
    else:
        if isinstance(obj, list):
            obj = " ".join(str(v) for v in obj)
        rows.append((prefix, "" if obj is None else obj))
    return rows


def to_csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _fmt_function(table, limit=12):
    items = list(table.items())
    text = ", ".join(f"{v}" for _, v in items[:limit])
    return text + (", ..." if len(items) > limit else "")


def classify_text(rep):
    lines = [f"polynomial: {rep['polynomial']}",
             f"variables: {','.join(rep['variables'])}",
             f"degree: {rep['degree']}",
             f"verdict: {rep['verdict'] if rep['verdict'] is not None else 'n/a (Hilbert data only)'}"]
    if rep.get("exponents") is not None:
        lines.append("exponents: (" + ", ".join(str(e) for e in rep["exponents"]) + ")")
    if rep.get("resolution"):
        lines.append(f"resolution: {rep['resolution']}")
    hil = rep.get("hilbert")
    if hil:
        lines.append(f"hilbert polynomial: {hil['polynomial']}")
        lines.append(f"st: {hil['st']}  ct: {hil['ct']}  mdr: {hil['mdr']}")
        lines.append(f"hilbert function: {_fmt_function(hil['function'])}")
    cert = rep.get("certificate")
    if isinstance(cert, dict):
        if "a" in cert:
            lines.append("certificate a: (" + ", ".join(cert["a"]) + ")")
        elif "determinant_constant" in cert:
            lines.append(f"saito determinant: c = {cert['determinant_constant']} ok = {cert['ok']}")
    if rep.get("h1_finite") is not None:
        lines.append(f"h1 finite: {rep['h1_finite']}")
    if rep.get("tame_hint") is not None:
        lines.append(f"tame: {rep['tame_hint']}")
    pred = rep.get("predictions") or {}
    if pred:
        p, c = pred["predicted"], pred["computed"]
        lines.append("predicted: " + " ".join(f"{k}={p[k]}" for k in sorted(p)))
        lines.append("computed:  " + " ".join(f"{k}={c[k]}" for k in sorted(c)))
    checks = {k: v for k, v in (rep.get("checks") or {}).items() if isinstance(v, bool)}
    if checks:
        lines.append("checks: " + " ".join(f"{k}={'yes' if v else 'no'}" for k, v in sorted(checks.items())))
    return "\n".join(lines) + "\n"


def hilbert_text(rep):
    lines = [f"polynomial: {rep['polynomial']}",
             f"degree: {rep['degree']}",
             f"resolution: {rep['resolution']}",
             f"hilbert polynomial: {rep['hilbert_polynomial']}",
             f"st: {rep['st']}  ct: {rep['ct']}  mdr: {rep['mdr']}",
             f"series numerator over (1 - t)^{rep['denominator_power']}: "
             + " ".join(f"{k}:{v}" for k, v in rep["series_numerator"].items()),
             "k  H(k)"]
    lines += [f"{k:>2} {v}" for k, v in rep["function"].items()]
    return "\n".join(lines) + "\n"


def _emit(obj, fmt, text_fn, schema, out):
    jsonschema.validate(obj, schema)
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        out.write(to_csv(_flatten(obj), ["key", "value"]))
    else:
        out.write(text_fn(obj))


# -- batch ----------------------------------------------------------------------------------------

def run_entry(entry, window=None):
    """Computed invariants of one corpus member, keyed like its expectations."""
    from .localcoh import hilbert_consistency

    f = entry.build()
    alg = MilnorAlgebra(f, window=window)
    out = {"polynomial": format_poly(alg.polynomial), "st": alg.st,
           "resolution": str(alg.resolution)}
    out["function_head"] = [alg.series.coefficient(k) for k in range(4)]
    if f.ring.nvars == 4:
        rep = classify_surface(alg)
        out["verdict"] = rep.verdict
        out["exponents"] = rep.exponents
        out["h1_finite"] = rep.h1_finite
        if rep.verdict in ("free", "nearly_free"):
            out["predictions_match"] = bool(rep.checks.get("predictions_match"))
    elif f.ring.nvars == 3:
        rep = classify_curve(alg)
        out["verdict"] = rep.verdict
        out["exponents"] = rep.exponents
    out["n_module_zero"] = not alg.n_module_series
    if entry.family == "transversal_union":
        from .groebner import Ideal, ideal_equal
        from .zoo import transversal_pair

        g, h = transversal_pair(entry.params["pair"])
        out["saturation_is_pair"] = ideal_equal(alg.saturation, Ideal([g, h]))
    out["consistency"] = hilbert_consistency(alg).ok
    return out


def compare(expected, computed):
    """Names of expected keys whose computed value differs."""
    bad = []
    for key, want in sorted(expected.items()):
        got = computed.get(key)
        if key == "function_head":
            got = (got or [])[:len(want)]
        if got != want:
            bad.append(f"{key}: expected {want!r}, got {got!r}")
    for key in ("consistency", "predictions_match"):
        if computed.get(key) is False:
            bad.append(f"{key} failed")
    return bad


def _batch_row(entry, window):
    try:
        computed = run_entry(entry, window)
    except Exception as exc:  # reported per row, the batch continues
        return {"name": entry.name, "family": entry.family, "status": "error",
                "computed": {}, "mismatches": [], "error": f"{type(exc).__name__}: {exc}"}
    bad = compare(entry.expected, computed)
    return {"name": entry.name, "family": entry.family,
            "status": "mismatch" if bad else "ok", "computed": computed, "mismatches": bad}


def batch_text(summary):
    lines = []
    width = max([len(r["name"]) for r in summary["rows"]] + [4])
    for r in summary["rows"]:
        c = r["computed"]
        verdict = c.get("verdict") or "-"
        exps = "(" + ",".join(map(str, c["exponents"])) + ")" if c.get("exponents") else "-"
        line = f"{r['name']:<{width}}  {r['status']:<8}  {verdict:<14} {exps:<10} {c.get('polynomial', '-')}"
        lines.append(line.rstrip())
        for m in r["mismatches"]:
            lines.append(f"{'':<{width}}    {m}")
        if r["status"] == "error":
            lines.append(f"{'':<{width}}    {r['error']}")
    n_ok = sum(r["status"] == "ok" for r in summary["rows"])
    lines.append(f"{n_ok}/{len(summary['rows'])} members agree")
    return "\n".join(lines) + "\n"


def batch_csv(summary):
    rows = []
    for r in summary["rows"]:
        c = r["computed"]
        rows.append([r["name"], r["family"], r["status"], c.get("verdict", ""),
                     " ".join(map(str, c.get("exponents") or [])), c.get("polynomial", ""),
                     c.get("st", ""), "; ".join(r["mismatches"] or ([r["error"]] if "error" in r else []))])
    return to_csv(rows, ["name", "family", "status", "verdict", "exponents",
                         "polynomial", "st", "notes"])


# -- commands ------------------------------------------------------------------------------------------

def cmd_classify(args, out):
    f = read_input(args)
    _emit(classify_report(f, args.window), args.format, classify_text, REPORT_SCHEMA, out)
    return EXIT_OK


def cmd_hilbert(args, out):
    f = read_input(args)
    _emit(hilbert_report(f, args.window), args.format, hilbert_text, HILBERT_SCHEMA, out)
    return EXIT_OK


def _load_corpus(args):
    from .zoo import corpus, load_manifest

    try:
        entries = load_manifest(args.corpus) if args.corpus else corpus()
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot load corpus: {exc}") from None
    if args.only:
        wanted = set(args.only.split(","))
        entries = [e for e in entries if e.family in wanted or e.name in wanted]
        if not entries:
            raise UsageError(f"no corpus member matches --only {args.only}")
    return entries


def cmd_batch(args, out):
    entries = _load_corpus(args)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_batch_row, entries, [args.window] * len(entries)))
    else:
        rows = [_batch_row(e, args.window) for e in entries]
    summary = {"ok": all(r["status"] == "ok" for r in rows), "rows": rows}
    jsonschema.validate(summary, BATCH_SCHEMA)
    if args.format == "json":
        out.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        out.write(batch_csv(summary))
    else:
        out.write(batch_text(summary))
    return EXIT_OK if summary["ok"] else EXIT_MISMATCH


def cmd_corpus(args, out):
    from .zoo import manifest

    entries = _load_corpus(args)
    out.write(json.dumps(manifest(entries), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_schema(args, out):
    schemas = {"classify": REPORT_SCHEMA, "hilbert": HILBERT_SCHEMA, "batch": BATCH_SCHEMA}
    out.write(json.dumps(schemas[args.which], indent=2, sort_keys=True) + "\n")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    p = _Parser(prog="milnor", description="Milnor algebras of projective hypersurfaces.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, single=True):
        if single:
            sp.add_argument("--poly", help="polynomial text, e.g. 'x^2*z+y^2*w'")
            sp.add_argument("--file", help="file holding the polynomial")
            sp.add_argument("--vars", help="comma separated variables (default: guessed)")
            sp.add_argument("--max-degree", type=int, default=None,
                            help="refuse inputs of larger degree")
        sp.add_argument("--format", choices=("text", "json", "csv"), default="text")
        sp.add_argument("--window", type=int, default=None,
                        help="last degree of the Hilbert function table")
        sp.add_argument("--output", help="write the report here instead of stdout")

    common(sub.add_parser("classify", help="free / nearly free verdict and invariants"))
    common(sub.add_parser("hilbert", help="Hilbert function, series, polynomial, st/ct/mdr"))
    b = sub.add_parser("batch", help="check the corpus against recorded values")
    common(b, single=False)
    b.add_argument("--corpus", help="manifest JSON (default: built-in corpus)")
    b.add_argument("--only", help="comma separated families or member names")
    b.add_argument("--jobs", type=int, default=1)
    c = sub.add_parser("corpus", help="print the corpus manifest")
    c.add_argument("--corpus", help=argparse.SUPPRESS)
    c.add_argument("--only")
    c.add_argument("--output")
    s = sub.add_parser("schema", help="print a JSON schema")
    s.add_argument("which", choices=("classify", "hilbert", "batch"))
    s.add_argument("--output")
    return p


COMMANDS = {"classify": cmd_classify, "hilbert": cmd_hilbert, "batch": cmd_batch,
            "corpus": cmd_corpus, "schema": cmd_schema}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required (classify, hilbert, batch, corpus, schema)")
        if getattr(args, "window", None) is not None and args.window < 0:
            raise UsageError("--window must be non-negative")
        buf = io.StringIO()
        code = COMMANDS[args.command](args, buf)
        if getattr(args, "output", None):
            with open(args.output, "w") as fh:
                fh.write(buf.getvalue())
        else:
            stdout.write(buf.getvalue())
        return code
    except UsageError as exc:
        stderr.write(f"milnor: error: {exc}\n")
        return EXIT_USAGE
    except (ArithmeticError, ValueError, RuntimeError, DegreeCapError) as exc:
        stderr.write(f"milnor: computation failed: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
