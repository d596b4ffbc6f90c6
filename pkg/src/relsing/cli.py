"""Command-line front end.

    relsing COMMAND FILE [options]

Exit codes: 0 success, 1 usage, 2 parse, 3 mathematical precondition,
4 dimension bound exceeded.
"""

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .arcs import DEFAULT_TRUNC, Arc, valuation_criterion_test
from .document import parse_document, parse_rational
from .errors import BoundExceeded, ParseError, RelsingError, UsageError
from .families import (DEFAULT_KMAX, DEFAULT_SAMPLES, condition_report,
                       polar_split_check, radical_membership,
                       specialize)
from .invariants import (WeightSystem, apply_vector_field, bruce_roberts_number,
                         check_tangency, is_quasihomogeneous, le_milnor_number,
                         milnor_number, multiplicity, relative_jacobian)
from .orders import DEGREVLEX
from .stdbasis import DEFAULT_DIM_BOUND, QuotientDim, standard_basis

COMMANDS = ("milnor", "multiplicity", "mu-br", "le-number", "tangency", "quasihomog",
            "family-check", "arc-test", "radical-test", "split-check")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- value rendering ---------------------------------------------------------

def plain(value):
    """Convert results to JSON-compatible data with exact numbers as strings."""
    if isinstance(value, QuotientDim):
        return value.count if value.is_finite else str(value)
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(plain(k)) if not isinstance(k, str) else k: plain(v)
                for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return str(value)


def _point_str(pt):
    return "(" + ", ".join(str(c) for c in pt) + ")"


def render_text(data, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(data, dict):
        for k, v in data.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar_text(v)}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(v)}")
    else:
        lines.append(pad + _scalar_text(data))
    return lines


def _scalar_text(v):
    if v is None:
        return "none"
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v == [] or v == {}:
        return "[]"
    return str(v)


# -- argument helpers ----------------------------------------------------------

def _parse_assignments(items):
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = parse_rational(v)
        except ValueError as err:
            raise UsageError(str(err)) from None
    return out


def _parse_at(text):
    if text is None:
        return None
    vals = _parse_assignments([text])
    if set(vals) != {"t"}:
        raise UsageError("--at expects t=VALUE")
    return vals["t"]


def _names(text):
    return [n.strip() for n in text.split(",") if n.strip()] if text else []


def _samples(doc, text):
    if text is None:
        return DEFAULT_SAMPLES
    if text.strip() in doc.samples:
        return doc.sample_set(text.strip())
    try:
        return tuple(parse_rational(v) for v in text.split(","))
    except ValueError as err:
        raise UsageError(f"--samples: {err}") from None


def _rational(text, flag):
    try:
        return parse_rational(text)
    except ValueError as err:
        raise UsageError(f"{flag}: {err}") from None


def _germ(doc, name, at, params):
    """A named poly, or a named deformation specialised at ``at`` (default 0)."""
    if name is None:
        raise UsageError("missing --f")
    if name in doc.polys:
        if at is not None:
            raise UsageError("--at only applies to deformations")
        return doc.polynomial(name, params), {"f": name}
    if name in doc.deformations:
        t0 = Fraction(0) if at is None else at
        D = doc.deformation(name, params)
        return specialize(D, t0), {"f": name, "t": t0}
    raise UsageError(f"unresolved reference: no poly or deform named {name!r}")


def _weights(doc, text):
    if text is None:
        raise UsageError("missing --weights")
    if text in doc.weights:
        return doc.weight_system(text)
    try:
        return WeightSystem(tuple(int(v) for v in text.split(",")))
    except ValueError:
        raise UsageError(f"--weights: not a weight name or list: {text!r}") from None


def _require(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"missing --{n.replace('_', '-')}")


# -- commands -----------------------------------------------------------------

def cmd_milnor(doc, args, params):
    f, echo = _germ(doc, args.f, _parse_at(args.at), params)
    value = milnor_number(f, args.dim_bound)
    return value, dict(echo, polynomial=str(f),
                       jacobian=[str(g) for g in (f.diff(i) for i in range(f.ring.nvars))],
                       value=value)


def cmd_multiplicity(doc, args, params):
    f, echo = _germ(doc, args.f, _parse_at(args.at), params)
    return None, dict(echo, polynomial=str(f), value=multiplicity(f))


def cmd_mu_br(doc, args, params):
    _require(args, "variety")
    f, echo = _germ(doc, args.f, _parse_at(args.at), params)
    V = doc.variety(args.variety, params)
    point = doc.point(args.point) if args.point else None
    value = bruce_roberts_number(f, V, point=point, bound=args.dim_bound)
    payload = dict(echo, variety=args.variety, polynomial=str(f))
    if point is not None:
        payload["point"] = _point_str(point)
    payload["generators"] = [str(g) for g in relative_jacobian(f, V)]
    payload["value"] = value
    return value, payload


def cmd_le_number(doc, args, params):
    _require(args, "phi")
    phi = doc.polynomial(args.phi, params)
    f, echo = _germ(doc, args.f, _parse_at(args.at), params)
    value = le_milnor_number(phi, f, args.dim_bound)
    mu_phi = milnor_number(phi, args.dim_bound)
    return value, dict(echo, phi=str(phi), polynomial=str(f), milnor_phi=mu_phi, value=value)


def cmd_tangency(doc, args, params):
    if args.variety:
        V_eqs, V_fields = doc.varieties.get(args.variety, (None, None))
        if V_eqs is None:
            raise UsageError(f"unresolved reference: no variety named {args.variety!r}")
        eqs = [doc.polynomial(e, params) for e in V_eqs]
        ideal = standard_basis(eqs, DEGREVLEX) if len(eqs) > 1 else None
        checks = []
        for name in V_fields:
            xi = doc.vector_field(name, params)
            for e_name, phi in zip(V_eqs, eqs):
                image = apply_vector_field(phi, xi)
                tangent = ideal.contains(image) if ideal else check_tangency(phi, xi)
                checks.append({"field": name, "equation": e_name,
                               "image": str(image), "tangent": tangent})
        return None, {"variety": args.variety, "checks": checks,
                      "value": all(c["tangent"] for c in checks)}
    _require(args, "phi", "field")
    phi = doc.polynomial(args.phi, params)
    xi = doc.vector_field(args.field, params)
    return None, {"phi": args.phi, "field": args.field,
                  "image": str(apply_vector_field(phi, xi)),
                  "value": check_tangency(phi, xi)}


def cmd_quasihomog(doc, args, params):
    f, echo = _germ(doc, args.f, _parse_at(args.at), params)
    w = _weights(doc, args.weights)
    d = is_quasihomogeneous(f, w)
    return None, dict(echo, weights=list(w.weights), quasihomogeneous=d is not None, degree=d)


def _deformation(doc, args, params):
    _require(args, "F", "variety")
    return doc.deformation(args.F, params), doc.variety(args.variety, params)


def _arc_payload(res):
    return {
        "strict": res.strict,
        "weak": res.weak,
        "h_valuation": str(res.h_value),
        "generator_valuations": [str(v) for v in res.values],
        "inf": str(res.inf),
        "undecided_generators": list(res.undecided),
    }


def _load_arc(doc, name, params, trunc_override):
    arc = doc.arc(name, params)
    if trunc_override is not None and trunc_override != arc.trunc:
        arc = Arc(arc.components, trunc_override)
    return arc


def cmd_family_check(doc, args, params):
    D, V = _deformation(doc, args, params)
    samples = _samples(doc, args.samples)
    arcs = {n: _load_arc(doc, n, params, args.trunc) for n in _names(args.arcs)}
    t0 = _rational(args.t0, "--t0") if args.t0 else None
    points = [doc.point(p) for p in _names(args.points)] or None
    report = condition_report(D, V, samples, arcs, t0, args.kmax, points, args.dim_bound)
    conditions = {}
    for label, entry in report.entries():
        if hasattr(entry, "holds"):
            conditions[label] = {"holds": entry.holds, **entry.evidence}
        else:
            item = {"status": entry.status, "arcs_tested": entry.arcs_tested}
            if entry.witness is not None:
                item["witness"] = entry.witness
            if entry.indeterminate:
                item["indeterminate_arcs"] = entry.indeterminate
            conditions[label] = item
    return None, {
        "F": args.F,
        "variety": args.variety,
        "samples": list(samples),
        "dF_t": str(D.dt()),
        "generators": [str(g) for g in D.relative_jacobian(V)],
        "conditions": conditions,
        "arcs": {n: _arc_payload(r) for n, r in report.arc_results.items()},
    }


def cmd_arc_test(doc, args, params):
    D, V = _deformation(doc, args, params)
    _require(args, "arc")
    arc = _load_arc(doc, args.arc, params, args.trunc)
    res = valuation_criterion_test(D.dt(), D.relative_jacobian(V), arc)
    return None, dict({"F": args.F, "variety": args.variety, "arc": args.arc,
                       "h": str(D.dt()),
                       "generators": [str(g) for g in D.relative_jacobian(V)]},
                      **_arc_payload(res))


def cmd_radical_test(doc, args, params):
    D, V = _deformation(doc, args, params)
    gens = D.relative_jacobian(V)
    res = radical_membership(D.dt(), gens, args.kmax)
    return None, {"F": args.F, "variety": args.variety, "h": str(D.dt()),
                  "generators": [str(g) for g in gens], "member": res.member,
                  "status": res.status, "witness_power": res.witness_power}


def cmd_split_check(doc, args, params):
    D, V = _deformation(doc, args, params)
    _require(args, "t0")
    t0 = _rational(args.t0, "--t0")
    points = [doc.point(p) for p in _names(args.points)] or None
    res = polar_split_check(D, V, t0, points, args.dim_bound)
    payload = {"F": args.F, "variety": args.variety, "t0": t0, "split": res.split,
               "local_at_origin": res.local_at_origin, "base_value": res.base_value}
    if res.accounted is not None:
        payload["accounted"] = {_point_str(p): v for p, v in res.accounted.items()}
        payload["accounted_sum"] = res.accounted_sum
        payload["conserved"] = res.conserved
    return None, payload


HANDLERS = {
    "milnor": cmd_milnor,
    "multiplicity": cmd_multiplicity,
    "mu-br": cmd_mu_br,
    "le-number": cmd_le_number,
    "tangency": cmd_tangency,
    "quasihomog": cmd_quasihomog,
    "family-check": cmd_family_check,
    "arc-test": cmd_arc_test,
    "radical-test": cmd_radical_test,
    "split-check": cmd_split_check,
}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--trunc", type=int, default=None,
                        help=f"arc truncation order (default: per arc, {DEFAULT_TRUNC})")
    common.add_argument("--dim-bound", type=int, default=DEFAULT_DIM_BOUND)
    common.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    common.add_argument("--samples", default=None,
                        help="comma-separated t values or a samples name")
    common.add_argument("--set", action="append", default=[], metavar="NAME=VALUE",
                        help="instantiate a document parameter")
    common.add_argument("--no-timing", action="store_true",
                        help="omit elapsed time so output is byte-reproducible")
    common.add_argument("--f")
    common.add_argument("--F")
    common.add_argument("--phi")
    common.add_argument("--field")
    common.add_argument("--variety")
    common.add_argument("--at")
    common.add_argument("--point")
    common.add_argument("--points")
    common.add_argument("--weights")
    common.add_argument("--arc")
    common.add_argument("--arcs")
    common.add_argument("--t0")

    parser = _Parser(prog="relsing", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"relsing {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _check_varieties(doc, params):
    """Tangency of every declared variety is checked up front."""
    for name in doc.varieties:
        try:
            doc.variety(name, params)
        except UsageError:
            # uninstantiated parameters: checked once a command supplies them
            continue


def run(argv):
    """Run one command; returns (exit_code, stdout_text, stderr_text)."""
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("no command given")
        if args.trunc is not None and args.trunc < 1:
            raise UsageError("--trunc must be positive")
        if args.dim_bound < 1:
            raise UsageError("--dim-bound must be positive")
        if args.kmax < 1:
            raise UsageError("--kmax must be positive")
        try:
            with open(args.file, "rb") as fh:
                raw = fh.read()
        except OSError as err:
            raise UsageError(f"cannot read {args.file}: {err.strerror}") from None
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError("input is not valid UTF-8") from None
        start = time.perf_counter()
        doc = parse_document(text)
        params = _parse_assignments(args.set)
        if args.command != "tangency":
            _check_varieties(doc, params)
        value, payload = HANDLERS[args.command](doc, args, params)
        elapsed = int((time.perf_counter() - start) * 1000)
    except RelsingError as err:
        return err.exit_code, "", f"error: {err}\n"
    except (ValueError, KeyError) as err:
        return 3, "", f"error: {err}\n"

    command_echo = " ".join([args.command] + [a for a in argv if a not in (args.command, args.file)])
    record = {
        "command": command_echo,
        "input_sha256": hashlib.sha256(raw).hexdigest(),
        "tool_version": __version__,
        "result": plain(payload),
    }
    if not args.no_timing:
        record["elapsed_ms"] = elapsed
    if args.format == "json":
        out = json.dumps(record, indent=2) + "\n"
    else:
        out = "\n".join(render_text(record)) + "\n"
    code = 0
    if isinstance(value, QuotientDim) and value.kind == "exceeds_bound":
        code = BoundExceeded.exit_code
    return code, out, ""


def main(argv=None):
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
