"""Exact polynomial arithmetic over ℚ and 𝔽₂ on top of sympy's sparse rings.

Polynomials are sympy ``PolyElement`` values. A ring is a ``PolyRing`` built by
``make_ring``; its symbols are the declared alphabet (``t1..tn`` for the ∂_i,
``x``, ``c1..cn``, ``del``, ``d1..dn``, ``x1..xn`` for offset variables).
"""

import itertools
import logging
import math
import re
from collections.abc import Iterable, Sequence
from typing import Any

from sympy.polys.domains import GF, QQ
from sympy.polys.orderings import MonomialOrder, grevlex, lex
from sympy.polys.polyerrors import CoercionFailed, ExactQuotientFailed, GeneratorsError
from sympy.polys.rings import PolyElement, PolyRing

from hkq.exceptions import (
    InexactDivisionError,
    InvalidInputError,
    ParseError,
    RingMismatchError,
    ZeroElementError,
)

logger = logging.getLogger(__name__)

GF2 = GF(2, symmetric=False)

FIELDS: dict[str, Any] = {"QQ": QQ, "GF2": GF2}

Monomial = tuple[int, ...]


class EliminationOrder(MonomialOrder):
    """Block order: degrevlex on the first ``split`` variables, then on the rest.

    Any monomial involving the first block is larger than every monomial free of
    it, so a Gröbner basis in this order eliminates the first block.
    """

    alias = "elim"
    is_global = True

    def __init__(self, split: int) -> None:
        self.split = split

    def __call__(self, monomial: Monomial) -> tuple:
        return (grevlex(monomial[: self.split]), grevlex(monomial[self.split :]))

    def __repr__(self) -> str:
        return f"EliminationOrder({self.split})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EliminationOrder) and other.split == self.split

    def __hash__(self) -> int:
        return hash((self.__class__, self.split))


def make_order(kind: str, split: int = 0) -> MonomialOrder:
    """Return the monomial order named ``kind``: degrevlex, lex or elimination."""
    if kind == "degrevlex":
        return grevlex
    if kind == "lex":
        return lex
    if kind == "elimination":
        return EliminationOrder(split)
    raise InvalidInputError(f"Unknown monomial order {kind!r}")


def make_ring(
    names: Sequence[str], field: str = "QQ", order: MonomialOrder = grevlex
) -> PolyRing:
    """Build a polynomial ring with the given variable names.

    Args:
        names: Variable names, in ring order.
        field: "QQ" or "GF2".
        order: Monomial order of the ring. Defaults to degrevlex.

    Returns:
        A sympy PolyRing.

    Raises:
        InvalidInputError: If the field is unknown or names are repeated.
    """
    if field not in FIELDS:
        raise InvalidInputError(f"Unknown coefficient field {field!r}")
    if len(set(names)) != len(names):
        raise InvalidInputError(f"Repeated variable names in {list(names)!r}")
    if not names:
        raise InvalidInputError("A polynomial ring needs at least one variable")
    return PolyRing(list(names), FIELDS[field], order)


def field_name(ring: PolyRing) -> str:
    """Return "QQ" or "GF2" for the coefficient field of ``ring``."""
    return "GF2" if ring.domain == GF2 else "QQ"


def variable_names(ring: PolyRing) -> list[str]:
    """Return the variable names of ``ring`` in order."""
    return [str(s) for s in ring.symbols]


def with_order(ring: PolyRing, order: MonomialOrder) -> PolyRing:
    """Return a copy of ``ring`` with a different monomial order."""
    return PolyRing(ring.symbols, ring.domain, order)


def convert(p: PolyElement, ring: PolyRing) -> PolyElement:
    """Move ``p`` into ``ring``, matching variables by name.

    Variables of ``ring`` that ``p`` does not know are filled with exponent 0.

    Raises:
        RingMismatchError: If ``p`` uses a variable missing from ``ring`` or the
            coefficient fields differ.
    """
    if p.ring == ring:
        return p
    if p.ring.domain != ring.domain:
        raise RingMismatchError(
            f"Cannot move a polynomial over {field_name(p.ring)} "
            f"into a ring over {field_name(ring)}"
        )
    try:
        return p.set_ring(ring)
    except GeneratorsError as e:
        raise RingMismatchError(
            f"Polynomial {format_poly(p)} uses variables outside "
            f"{variable_names(ring)}"
        ) from e


# ── Scalars ────────────────────────────────────────────────────────────────────

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(value: Any) -> Any:
    """Parse an int or a ``p/q`` literal into an exact ℚ element.

    Raises:
        ParseError: On malformed literals or a zero denominator.
    """
    if isinstance(value, bool):
        raise ParseError(f"Not a rational literal: {value!r}")
    if isinstance(value, int):
        return QQ(value)
    if not isinstance(value, str):
        raise ParseError(f"Rational values must be strings or ints, got {value!r}")
    match = _RATIONAL.match(value)
    if match is None:
        raise ParseError(f"Not a rational literal: {value!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"Zero denominator in {value!r}")
    return QQ(num, den)


def _as_fraction(c: Any, domain: Any) -> tuple[int, int]:
    """Return (numerator, denominator) of a field element as Python ints."""
    s = domain.to_sympy(c)
    return int(s.p), int(s.q)


def format_rational(q: Any, domain: Any = QQ) -> str:
    """Format a field element as ``p/q``, or ``p`` when the denominator is 1."""
    num, den = _as_fraction(q, domain)
    return str(num) if den == 1 else f"{num}/{den}"


def rational_key(q: Any) -> tuple[int, int]:
    """Return a hashable exact key for a ℚ element."""
    return _as_fraction(q, QQ)


# ── Polynomial text format ─────────────────────────────────────────────────────

_TERM = re.compile(r"\s*([+-]?)\s*([^+\-\s][^+-]*?)\s*(?=[+-]|$)")
_COEF = re.compile(r"^\d+(?:/\d+)?$")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_poly(text: str, ring: PolyRing) -> PolyElement:
    """Parse a polynomial written in the canonical grammar.

    Terms are ``coef*var1^e1*...`` joined by ``+``/``-``, coefficients are
    ``p/q`` literals, and a missing coefficient means 1.

    Raises:
        ParseError: On any token outside the grammar or an unknown variable.
    """
    source = text.strip()
    if source in ("", "0"):
        return ring.zero
    index = {name: i for i, name in enumerate(variable_names(ring))}
    terms: dict[Monomial, Any] = {}
    pos = 0
    for match in _TERM.finditer(source):
        if match.start() != pos or (pos > 0 and not match.group(1)):
            raise ParseError(f"Malformed polynomial {text!r} near offset {pos}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        coef = QQ(sign)
        exps = [0] * ring.ngens
        for factor in match.group(2).split("*"):
            factor = factor.strip()
            if _COEF.match(factor):
                coef *= parse_rational(factor)
                continue
            fm = _FACTOR.match(factor)
            if fm is None or fm.group(1) not in index:
                raise ParseError(f"Unknown factor {factor!r} in {text!r}")
            exps[index[fm.group(1)]] += int(fm.group(2) or 1)
        monom = tuple(exps)
        try:
            value = ring.domain.convert_from(coef, QQ)
        except (CoercionFailed, ZeroDivisionError, ValueError) as e:
            raise ParseError(f"Coefficient {coef} is not in {field_name(ring)}") from e
        terms[monom] = terms.get(monom, ring.domain.zero) + value
    if pos != len(source):
        raise ParseError(f"Malformed polynomial {text!r} near offset {pos}")
    return ring.from_dict({m: c for m, c in terms.items() if c})


def format_poly(p: PolyElement) -> str:
    """Render ``p`` in the canonical grammar, degrevlex descending."""
    if not p:
        return "0"
    names = variable_names(p.ring)
    domain = p.ring.domain
    pieces: list[str] = []
    for monom, coeff in p.terms(grevlex):
        num, den = _as_fraction(coeff, domain)
        negative = num < 0
        magnitude = str(abs(num)) if den == 1 else f"{abs(num)}/{den}"
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(names, monom, strict=True)
            if e
        ]
        if not factors:
            body = magnitude
        elif magnitude == "1":
            body = "*".join(factors)
        else:
            body = "*".join([magnitude, *factors])
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)


# ── Degrees and monomials ──────────────────────────────────────────────────────


def total_degree(p: PolyElement) -> int:
    """Total degree of ``p``; -1 for the zero polynomial."""
    return max((sum(m) for m in p.itermonoms()), default=-1)


def is_homogeneous(p: PolyElement) -> bool:
    """True when every term of ``p`` has the same total degree (zero counts)."""
    return len({sum(m) for m in p.itermonoms()}) <= 1


def homogeneous_part(p: PolyElement, k: int) -> PolyElement:
    """Return the degree-``k`` component of ``p``."""
    return p.ring.from_dict({m: c for m, c in p.iterterms() if sum(m) == k})


def monomials_of_degree(nvars: int, k: int) -> list[Monomial]:
    """Exponent vectors of length ``nvars`` and degree ``k``, degrevlex descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), k):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    out.sort(key=grevlex, reverse=True)
    return out


def monomial(ring: PolyRing, exps: Monomial) -> PolyElement:
    """The monomial of ``ring`` with exponent vector ``exps``."""
    return ring.from_dict({tuple(exps): ring.domain.one})


def linear_form(ring: PolyRing, coeffs: Iterable[Any], offset: int = 0) -> PolyElement:
    """Σ coeffs[i]·gen[offset + i] in ``ring``."""
    p = ring.zero
    for i, c in enumerate(coeffs):
        if c:
            p += ring.gens[offset + i] * ring.domain.convert(c)
    return p


# ── Operations ─────────────────────────────────────────────────────────────────


def poly_eval(p: PolyElement, point: Sequence[Any]) -> Any:
    """Evaluate ``p`` exactly at ``point``.

    Raises:
        InvalidInputError: If the point length differs from the number of variables.
    """
    if len(point) != p.ring.ngens:
        raise InvalidInputError(
            f"Point has {len(point)} coordinates, ring has {p.ring.ngens} variables"
        )
    domain = p.ring.domain
    values = [domain.convert(v) for v in point]
    total = domain.zero
    for monom, coeff in p.iterterms():
        term = coeff
        for v, e in zip(values, monom, strict=True):
            if e:
                term *= v**e
        total += term
    return total


def poly_divexact(p: PolyElement, q: PolyElement) -> PolyElement:
    """Return p/q, which must be exact.

    Raises:
        ZeroElementError: If q is zero.
        InexactDivisionError: If q does not divide p.
    """
    if not q:
        raise ZeroElementError("Division by the zero polynomial")
    q = convert(q, p.ring)
    try:
        return p.exquo(q)
    except ExactQuotientFailed as e:
        raise InexactDivisionError(
            f"{format_poly(q)} does not divide {format_poly(p)}"
        ) from e


def poly_apolar(op: PolyElement, f: PolyElement) -> PolyElement:
    """Apply the constant-coefficient operator ``op`` (∂_i ↦ ∂/∂x_i) to ``f``.

    ∂^a · x^b = b!/(b−a)! · x^{b−a} when a ≤ b componentwise, else 0.

    Raises:
        InvalidInputError: If ``op`` and ``f`` have different numbers of variables.
    """
    if op.ring.ngens != f.ring.ngens:
        raise InvalidInputError(
            f"Operator has {op.ring.ngens} variables, polynomial has {f.ring.ngens}"
        )
    target = f.ring
    domain = target.domain
    out: dict[Monomial, Any] = {}
    for a, c in op.iterterms():
        c = domain.convert_from(c, op.ring.domain)
        for b, d in f.iterterms():
            if any(ai > bi for ai, bi in zip(a, b, strict=True)):
                continue
            factor = 1
            for ai, bi in zip(a, b, strict=True):
                factor *= math.perm(bi, ai)
            m = tuple(bi - ai for ai, bi in zip(a, b, strict=True))
            out[m] = out.get(m, domain.zero) + c * d * domain(factor)
    return target.from_dict({m: v for m, v in out.items() if v})


def substitute(
    p: PolyElement, images: Sequence[PolyElement], target: PolyRing
) -> PolyElement:
    """Evaluate ``p`` with its i-th variable replaced by ``images[i]`` (in ``target``).

    Raises:
        InvalidInputError: If the number of images differs from the number of variables.
    """
    if len(images) != p.ring.ngens:
        raise InvalidInputError(
            f"{len(images)} images given for {p.ring.ngens} variables"
        )
    images = [convert(g, target) for g in images]
    powers: dict[tuple[int, int], PolyElement] = {}

    def power(i: int, e: int) -> PolyElement:
        if (i, e) not in powers:
            powers[(i, e)] = images[i] ** e
        return powers[(i, e)]

    out = target.zero
    for monom, coeff in p.iterterms():
        term = target.ground_new(target.domain.convert_from(coeff, p.ring.domain))
        for i, e in enumerate(monom):
            if e:
                term *= power(i, e)
        out += term
    return out
