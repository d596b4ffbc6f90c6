"""Input documents: ring, parameters and named objects.

Statements end with ``;`` and ``#`` starts a comment::

    ring x, y;
    param a = 1;
    weights w = (2, 3) degree 6;
    poly Phi = x^3 - y^2;
    vfield xi1 = (2*x, 3*y);
    fields Theta = xi1, xi2;
    variety V = Phi with Theta;
    variety E = ambient with dx, dy;
    deform F = y^2 + a*x^4 + t*x^5;
    arc g = (s, -a*s^2, 0) trunc 50;
    samples S = 0, 1/7, 1/3;
    point p = (-1/4, 0);

Polynomials may use the ring variables and parameters; deformations
also ``t``; arcs use ``s`` and parameters.  ``t`` and ``s`` are reserved.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .arcs import DEFAULT_TRUNC, Arc, TruncatedSeries
from .errors import ParseError, UsageError
from .families import Deformation
from .invariants import VarietyGerm, VectorField, WeightSystem
from .poly import (ARC_PARAMETER, DEFORMATION_PARAMETER, IDENT_RE, PolyRing,
                   change_ring, parse_polynomial, substitute)

RESERVED = (DEFORMATION_PARAMETER, ARC_PARAMETER)
KEYWORDS = ("ring", "param", "weights", "poly", "vfield", "fields", "variety",
            "deform", "arc", "samples", "point")

_HEADER_RE = re.compile(r"\s*([a-z]+)\b")
_NAME_EQ_RE = re.compile(r"\s*([a-zA-Z][a-zA-Z0-9_]*)\s*(=)?")
_RATIONAL_RE = re.compile(r"\s*(-?\d+(?:/\d+)?)\s*\Z")


def parse_rational(text):
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text.strip()!r}")
    value = m.group(1)
    if "/" in value and int(value.split("/")[1]) == 0:
        raise ValueError("zero denominator")
    return Fraction(value)


@dataclass
class _Source:
    """Text of one statement plus the document offset it starts at."""

    text: str
    offset: int


@dataclass
class InputDocument:
    variables: tuple = ()
    params: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)
    vfields: dict = field(default_factory=dict)
    fieldlists: dict = field(default_factory=dict)
    varieties: dict = field(default_factory=dict)
    deformations: dict = field(default_factory=dict)
    arcs: dict = field(default_factory=dict)
    samples: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)

    # -- rings -----------------------------------------------------------

    @property
    def xring(self):
        if not self.variables:
            raise UsageError("document declares no ring")
        return PolyRing(self.variables)

    def _param_values(self, overrides=None):
        values = dict(self.params)
        for k, v in (overrides or {}).items():
            if k not in values:
                raise UsageError(f"unknown parameter {k!r}")
            values[k] = Fraction(v)
        return values

    def _instantiate(self, p, target, overrides):
        values = self._param_values(overrides)
        assign = {}
        for name in p.variables_used():
            if name in values:
                if values[name] is None:
                    raise UsageError(f"parameter {name!r} is not instantiated (use --set {name}=...)")
                assign[name] = values[name]
        q = substitute(p, {k: v for k, v in assign.items()})
        return change_ring(q, target)

    # -- lookups ---------------------------------------------------------

    def names(self):
        out = {}
        for kind in ("polys", "vfields", "fieldlists", "varieties", "deformations",
                     "arcs", "samples", "points", "weights"):
            for name in getattr(self, kind):
                out[name] = kind
        return out

    def _get(self, table, name, what):
        if name not in table:
            raise UsageError(f"unresolved reference: no {what} named {name!r}")
        return table[name]

    def polynomial(self, name, params=None):
        return self._instantiate(self._get(self.polys, name, "poly"), self.xring, params)

    def deformation(self, name, params=None):
        F = self._get(self.deformations, name, "deform")
        target = self.xring.extend(DEFORMATION_PARAMETER)
        return Deformation(self._instantiate(F, target, params), self.xring,
                           self._param_values(params))

    def vector_field(self, name, params=None):
        comps = self._get(self.vfields, name, "vfield")
        return VectorField(tuple(self._instantiate(c, self.xring, params) for c in comps))

    def variety(self, name, params=None):
        equations, fields = self._get(self.varieties, name, "variety")
        eqs = [self.polynomial(e, params) for e in equations]
        xis = [self.vector_field(f, params) for f in fields]
        return VarietyGerm(eqs, xis)

    def arc(self, name, params=None):
        comps, trunc = self._get(self.arcs, name, "arc")
        sring = PolyRing((ARC_PARAMETER,), reserved=())
        polys = [self._instantiate(c, sring, params) for c in comps]
        return Arc([TruncatedSeries.from_polynomial(p, trunc) for p in polys], trunc)

    def sample_set(self, name):
        return self._get(self.samples, name, "samples")

    def point(self, name):
        return self._get(self.points, name, "point")

    def weight_system(self, name):
        return self._get(self.weights, name, "weights")


class _DocParser:
    def __init__(self, text):
        self.text = text
        self.doc = InputDocument()
        self.taken = {}

    # -- positions -------------------------------------------------------

    def position(self, offset):
        line = self.text.count("\n", 0, offset) + 1
        start = self.text.rfind("\n", 0, offset) + 1
        return line, offset - start + 1

    def error(self, message, offset):
        line, col = self.position(offset)
        raise ParseError(message, line=line, column=col)

    # -- splitting -------------------------------------------------------

    def statements(self):
        out = []
        buf_start = 0
        i = 0
        text = self.text
        masked = []
        while i < len(text):
            ch = text[i]
            if ch == "#":
                j = text.find("\n", i)
                j = len(text) if j < 0 else j
                masked.append(" " * (j - i))
                i = j
                continue
            masked.append(ch)
            i += 1
        body = "".join(masked)
        for i, ch in enumerate(body):
            if ch == ";":
                out.append(_Source(body[buf_start:i], buf_start))
                buf_start = i + 1
        tail = body[buf_start:]
        if tail.strip():
            self.error("statement is missing its terminating ';'",
                       buf_start + len(tail) - len(tail.lstrip()))
        return [s for s in out if s.text.strip()]

    def split_top(self, src, sep=","):
        """Split on ``sep`` outside parentheses, keeping offsets."""
        parts, depth, start = [], 0, 0
        for i, ch in enumerate(src.text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == sep and depth == 0:
                parts.append(_Source(src.text[start:i], src.offset + start))
                start = i + 1
        parts.append(_Source(src.text[start:], src.offset + start))
        return parts

    def strip_parens(self, src):
        text = src.text
        lead = len(text) - len(text.lstrip())
        inner = text.strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            self.error("expected a parenthesised tuple", src.offset + lead)
        return _Source(inner[1:-1], src.offset + lead + 1)

    # -- names -----------------------------------------------------------

    def claim(self, name, offset, kind):
        if name in RESERVED:
            self.error(f"name {name!r} is reserved", offset)
        if name in KEYWORDS:
            self.error(f"name {name!r} is a keyword", offset)
        if name in self.taken:
            self.error(f"duplicate name {name!r}", offset)
        self.taken[name] = kind

    def ident(self, src):
        name = src.text.strip()
        lead = len(src.text) - len(src.text.lstrip())
        if not IDENT_RE.match(name):
            self.error(f"expected an identifier, got {name!r}", src.offset + lead)
        return name, src.offset + lead

    def expr(self, src, ring):
        text = src.text.replace("\n", " ").replace("\r", " ").replace("\t", " ")
        if not text.strip():
            self.error("empty expression", src.offset)
        try:
            return parse_polynomial(text, ring)
        except ParseError as err:
            col = err.column or 1
            line, c = self.position(src.offset + col - 1)
            msg = err.message
            if msg.startswith("unknown variable"):
                msg = "unresolved reference: " + msg
            raise ParseError(msg, line=line, column=c) from None

    def rational(self, src):
        try:
            return parse_rational(src.text)
        except ValueError as err:
            lead = len(src.text) - len(src.text.lstrip())
            self.error(str(err), src.offset + lead)

    # -- statements ------------------------------------------------------

    def run(self):
        stmts = self.statements()
        parsed = []
        for st in stmts:
            m = _HEADER_RE.match(st.text)
            if not m or m.group(1) not in KEYWORDS:
                lead = len(st.text) - len(st.text.lstrip())
                word = st.text.split()[0] if st.text.split() else ""
                self.error(f"unknown statement {word!r}", st.offset + lead)
            kw = m.group(1)
            rest = _Source(st.text[m.end():], st.offset + m.end())
            parsed.append((kw, rest, st.offset + m.start(1)))

        # ring and parameters first, so expressions can be parsed in any order
        for kw, rest, off in parsed:
            if kw == "ring":
                self.ring_stmt(rest, off)
        for kw, rest, off in parsed:
            if kw == "param":
                self.param_stmt(rest)
        for kw, rest, off in parsed:
            if kw not in ("ring", "param"):
                getattr(self, f"{kw}_stmt")(rest)
        for kw, rest, off in parsed:
            if kw in ("fields", "variety"):
                self.resolve_refs(kw, rest)
        return self.doc

    def ring_stmt(self, rest, off):
        if self.doc.variables:
            self.error("ring declared twice", off)
        names = []
        for part in self.split_top(rest):
            name, o = self.ident(part)
            self.claim(name, o, "variable")
            names.append(name)
        self.doc.variables = tuple(names)

    def name_eq(self, rest, need_eq=True):
        m = _NAME_EQ_RE.match(rest.text)
        if not m:
            self.error("expected a name", rest.offset)
        if need_eq and not m.group(2):
            self.error("expected '='", rest.offset + m.end())
        name = m.group(1)
        off = rest.offset + m.start(1)
        return name, off, _Source(rest.text[m.end():], rest.offset + m.end())

    def param_stmt(self, rest):
        m = _NAME_EQ_RE.match(rest.text)
        if not m:
            self.error("expected a parameter name", rest.offset)
        name, off = m.group(1), rest.offset + m.start(1)
        self.claim(name, off, "param")
        value = None
        if m.group(2):
            value = self.rational(_Source(rest.text[m.end():], rest.offset + m.end()))
        elif rest.text[m.end():].strip():
            self.error("expected '=' or end of statement", rest.offset + m.end())
        self.doc.params[name] = value

    def _rings(self):
        if not self.doc.variables:
            raise ParseError("objects declared before any 'ring' statement", line=1, column=1)
        params = tuple(self.doc.params)
        base = PolyRing(self.doc.variables + params)
        return {
            "poly": base,
            "deform": PolyRing(self.doc.variables + params + (DEFORMATION_PARAMETER,),
                               reserved=(ARC_PARAMETER,)),
            "arc": PolyRing((ARC_PARAMETER,) + params, reserved=(DEFORMATION_PARAMETER,)),
        }

    def weights_stmt(self, rest):
        name, off, body = self.name_eq(rest)
        self.claim(name, off, "weights")
        text = body.text
        degree = None
        m = re.search(r"\bdegree\b", text)
        if m:
            degree_src = _Source(text[m.end():], body.offset + m.end())
            try:
                degree = int(degree_src.text.strip())
            except ValueError:
                self.error("weighted degree must be an integer", degree_src.offset)
            body = _Source(text[:m.start()], body.offset)
        inner = self.strip_parens(body)
        ws = []
        for part in self.split_top(inner):
            try:
                v = int(part.text.strip())
            except ValueError:
                self.error("weights must be positive integers", part.offset)
            if v < 1:
                self.error("weights must be positive integers", part.offset)
            ws.append(v)
        if len(ws) != len(self.doc.variables):
            self.error("weight count does not match the ring", inner.offset)
        self.doc.weights[name] = WeightSystem(tuple(ws), degree)

    def poly_stmt(self, rest):
        name, off, body = self.name_eq(rest)
        self.claim(name, off, "poly")
        self.doc.polys[name] = self.expr(body, self._rings()["poly"])

    def deform_stmt(self, rest):
        name, off, body = self.name_eq(rest)
        self.claim(name, off, "deform")
        self.doc.deformations[name] = self.expr(body, self._rings()["deform"])

    def vfield_stmt(self, rest):
        name, off, body = self.name_eq(rest)
        self.claim(name, off, "vfield")
        inner = self.strip_parens(body)
        ring = self._rings()["poly"]
        comps = tuple(self.expr(p, ring) for p in self.split_top(inner))
        if len(comps) != len(self.doc.variables):
            self.error(f"vector field needs {len(self.doc.variables)} components", inner.offset)
        self.doc.vfields[name] = comps

    def arc_stmt(self, rest):
        name, off, body = self.name_eq(rest)
        self.claim(name, off, "arc")
        trunc = DEFAULT_TRUNC
        m = re.search(r"\btrunc\b", body.text)
        if m:
            tsrc = _Source(body.text[m.end():], body.offset + m.end())
            try:
                trunc = int(tsrc.text.strip())
            except ValueError:
                self.error("truncation order must be an integer", tsrc.offset)
            if trunc < 1:
                self.error("truncation order must be positive", tsrc.offset)
            body = _Source(body.text[:m.start()], body.offset)
        inner = self.strip_parens(body)
        ring = self._rings()["arc"]
        comps = []
        for part in self.split_top(inner):
            p = self.expr(part, ring)
            s_index = ring.index(ARC_PARAMETER)
            if any(not e[s_index] for e in p.terms):
                self.error("arc components must vanish at s = 0", part.offset)
            comps.append(p)
        self.doc.arcs[name] = (tuple(comps), trunc)

    def samples_stmt(self, rest):
        name, off, body = self.name_eq(rest)
        self.claim(name, off, "samples")
        vals = tuple(self.rational(p) for p in self.split_top(body))
        if len(set(vals)) != len(vals):
            self.error("sample values must be distinct", body.offset)
        if Fraction(0) not in vals:
            self.error("sample set must contain 0", body.offset)
        self.doc.samples[name] = vals

    def point_stmt(self, rest):
        name, off, body = self.name_eq(rest)
        self.claim(name, off, "point")
        inner = self.strip_parens(body)
        vals = tuple(self.rational(p) for p in self.split_top(inner))
        if len(vals) != len(self.doc.variables):
            self.error("point dimension does not match the ring", inner.offset)
        self.doc.points[name] = vals

    def fields_stmt(self, rest):
        name, off, body = self.name_eq(rest)
        self.claim(name, off, "fields")
        self.doc.fieldlists[name] = [self.ident(p) for p in self.split_top(body)]

    def variety_stmt(self, rest):
        name, off, body = self.name_eq(rest)
        self.claim(name, off, "variety")
        m = re.search(r"\bwith\b", body.text)
        if not m:
            self.error("expected 'with' followed by vector fields", body.offset)
        eq_src = _Source(body.text[:m.start()], body.offset)
        f_src = _Source(body.text[m.end():], body.offset + m.end())
        if eq_src.text.strip() == "ambient":
            eqs = []
        else:
            eqs = [self.ident(p) for p in self.split_top(eq_src)]
        fields = [self.ident(p) for p in self.split_top(f_src)]
        self.doc.varieties[name] = (eqs, fields)

    def resolve_refs(self, kw, rest):
        name, _, _ = self.name_eq(rest)
        if kw == "fields":
            resolved = []
            for ref, off in self.doc.fieldlists[name]:
                if ref not in self.doc.vfields:
                    self.error(f"unresolved reference: no vfield named {ref!r}", off)
                resolved.append(ref)
            self.doc.fieldlists[name] = resolved
            return
        eqs, fields = self.doc.varieties[name]
        eq_names = []
        for ref, off in eqs:
            if ref not in self.doc.polys:
                self.error(f"unresolved reference: no poly named {ref!r}", off)
            eq_names.append(ref)
        field_names = []
        for ref, off in fields:
            if ref in self.doc.vfields:
                field_names.append(ref)
            elif ref in self.doc.fieldlists:
                lst = self.doc.fieldlists[ref]
                if lst and isinstance(lst[0], tuple):
                    for r, o in lst:
                        if r not in self.doc.vfields:
                            self.error(f"unresolved reference: no vfield named {r!r}", o)
                    lst = [r for r, _ in lst]
                field_names.extend(lst)
            else:
                self.error(f"unresolved reference: no vfield or fields named {ref!r}", off)
        self.doc.varieties[name] = (eq_names, field_names)


def parse_document(text):
    """Parse an input document, raising ParseError at the first problem."""
    return _DocParser(text).run()
