"""Line-oriented text format for algebras and ring presentations.

    # comment
    cdga NAME            (or: ring NAME)
    gen NAME DEGREE
    d NAME = EXPR        (cdga only; omitted generators are closed)
    rel EXPR             (ring only)

Expressions use generator names, ``*``, ``^``, ``+``, ``-``, integer and
``p/q`` rational literals, and parentheses.  Loading validates homogeneity
and d*d = 0; parse and validation errors carry the 1-based line number.
"""

from __future__ import annotations

from fractions import Fraction

from .cdga import Element, FreeCdga
from .presentations import RingPresentation


class PresentationError(ValueError):
    """Parse or validation failure, tagged with a source line."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# -- expression parser --------------------------------------------------------


def _tokenize(text, line):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            if j < len(text) and text[j] == "/":
                k = j + 1
                if k >= len(text) or not text[k].isdigit():
                    raise PresentationError("malformed rational literal", line)
                m = k
                while m < len(text) and text[m].isdigit():
                    m += 1
                tokens.append(("num", Fraction(num, int(text[k:m]))))
                i = m
            else:
                tokens.append(("num", Fraction(num)))
                i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch))
            i += 1
            continue
        raise PresentationError(f"unexpected character {ch!r} in expression", line)
    return tokens


def parse_expression(text, algebra, line=None) -> Element:
    """Parse an expression into an element of ``algebra`` (or its ambient)."""
    tokens = _tokenize(text, line)
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(kind=None):
        nonlocal pos
        if pos >= len(tokens):
            raise PresentationError("unexpected end of expression", line)
        tok = tokens[pos]
        if kind is not None and tok[0] != kind:
            raise PresentationError(f"expected {kind}, found {tok[1]!r}", line)
        pos += 1
        return tok

    def parse_atom():
        kind = peek()
        if kind == "num":
            return algebra.scalar(take()[1])
        if kind == "name":
            name = take()[1]
            if name not in algebra.index:
                raise PresentationError(f"unknown generator {name!r}", line)
            return algebra[name]
        if kind == "(":
            take("(")
            e = parse_sum()
            take(")")
            return e
        raise PresentationError("expected a generator, number, or '('", line)

    def parse_power():
        base = parse_atom()
        if peek() == "^":
            take("^")
            tok = take("num")
            exp = tok[1]
            if exp.denominator != 1 or exp < 0:
                raise PresentationError("exponent must be a nonnegative integer", line)
            return base ** int(exp)
        return base

    def parse_product():
        out = parse_power()
        while peek() == "*":
            take("*")
            out = out * parse_power()
        return out

    def parse_signed():
        sign = 1
        while peek() in ("+", "-"):
            if take()[0] == "-":
                sign = -sign
        return sign * parse_product()

    def parse_sum():
        out = parse_signed()
        while peek() in ("+", "-"):
            op = take()[0]
            rhs = parse_signed()
            out = out + rhs if op == "+" else out - rhs
        return out

    result = parse_sum()
    if pos != len(tokens):
        raise PresentationError(f"trailing input {tokens[pos][1]!r}", line)
    return result


# -- file loader ---------------------------------------------------------------


def loads(text: str):
    """Parse a presentation file into a FreeCdga or RingPresentation."""
    kind = None
    name = None
    gens = []
    d_lines = []
    rel_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        head = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if head in ("cdga", "ring"):
            if kind is not None:
                raise PresentationError("duplicate header", lineno)
            kind = head
            name = rest.strip() or "unnamed"
            if not name.replace("_", "").isalnum():
                raise PresentationError(f"bad name {name!r}", lineno)
        elif head == "gen":
            bits = rest.split()
            if len(bits) != 2:
                raise PresentationError("gen needs a name and a degree", lineno)
            gname, deg = bits
            try:
                deg = int(deg)
            except ValueError:
                raise PresentationError(f"bad degree {deg!r}", lineno) from None
            if deg < 1:
                raise PresentationError("generator degree must be positive", lineno)
            gens.append((gname, deg, lineno))
        elif head == "d":
            lhs, eq, rhs = rest.partition("=")
            if not eq:
                raise PresentationError("d line needs '='", lineno)
            d_lines.append((lhs.strip(), rhs.strip(), lineno))
        elif head == "rel":
            rel_lines.append((rest.strip(), lineno))
        else:
            raise PresentationError(f"unknown directive {head!r}", lineno)
    if kind is None:
        raise PresentationError("missing 'cdga NAME' or 'ring NAME' header")
    if kind == "ring" and d_lines:
        raise PresentationError("ring files cannot carry differentials",
                                d_lines[0][2])
    if kind == "cdga" and rel_lines:
        raise PresentationError("cdga files cannot carry relations",
                                rel_lines[0][1])
    seen = set()
    for gname, _deg, lineno in gens:
        if gname in seen:
            raise PresentationError(f"duplicate generator {gname!r}", lineno)
        seen.add(gname)
    gen_pairs = [(g, d) for g, d, _l in gens]

    if kind == "ring":
        ambient = FreeCdga(gen_pairs, None, name=name)
        rels = []
        for expr, lineno in rel_lines:
            e = parse_expression(expr, ambient, lineno)
            if e.is_zero():
                continue
            if not e.is_homogeneous():
                raise PresentationError("relation is not homogeneous", lineno)
            rels.append(e)
        return RingPresentation(gen_pairs, rels, name=name)

    plain = FreeCdga(gen_pairs, None, name=name)
    differential = {}
    for gname, expr, lineno in d_lines:
        if gname not in plain.index:
            raise PresentationError(f"unknown generator {gname!r}", lineno)
        if gname in differential:
            raise PresentationError(f"duplicate differential for {gname!r}", lineno)
        e = parse_expression(expr, plain, lineno)
        if e.is_zero():
            continue
        if not (e.is_homogeneous() and e.degree == plain.degree_of(gname) + 1):
            raise PresentationError(
                f"d {gname} must be homogeneous of degree "
                f"{plain.degree_of(gname) + 1}", lineno)
        differential[gname] = e.terms
    try:
        return FreeCdga(gen_pairs, differential, name=name)
    except ValueError as exc:
        raise PresentationError(str(exc)) from exc


def load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(obj) -> str:
    """Pretty-print a FreeCdga or RingPresentation; reparses to an equal object."""
    lines = []
    if isinstance(obj, RingPresentation):
        lines.append(f"ring {obj.name}")
        for g in obj.gens:
            lines.append(f"gen {g.name} {g.degree}")
        for rel in obj.relations:
            lines.append(f"rel {_render_element(rel)}")
    elif isinstance(obj, FreeCdga):
        lines.append(f"cdga {obj.name}")
        for g in obj.gens:
            lines.append(f"gen {g.name} {g.degree}")
        for g in obj.gens:
            dv = obj.differential_of(g.name)
            if not dv.is_zero():
                lines.append(f"d {g.name} = {_render_element(dv)}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return "\n".join(lines) + "\n"


def _render_element(e: Element) -> str:
    return repr(e)


def same_presentation(a, b) -> bool:
    """Structural equality: generators, degrees, and defining data agree."""
    if type(a) is not type(b):
        return False
    if [(g.name, g.degree) for g in a.gens] != [(g.name, g.degree) for g in b.gens]:
        return False
    if isinstance(a, RingPresentation):
        ra = sorted(repr(r) for r in a.relations)
        rb = sorted(repr(r) for r in b.relations)
        return ra == rb
    for g in a.gens:
        if repr(a.differential_of(g.name)) != repr(b.differential_of(g.name)):
            return False
    return True
