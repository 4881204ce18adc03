"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial lives in a :class:`PolyRing`, which fixes the number of
variables, their (cosmetic) names and a positive integer weight per variable.
Terms are stored as ``{exponent tuple: Fraction}`` with zero coefficients
never stored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

DEGREE_CAP = 64


class DegreeCapExceeded(ArithmeticError):
    """Raised when a product or power would exceed the degree cap."""


class RingMismatch(ValueError):
    pass


Monomial = tuple


def grevlex_key(m: Monomial, weights: Sequence[int] | None = None):
    deg = sum(m) if weights is None else sum(e * w for e, w in zip(m, weights))
    return (deg, tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]
    weights: tuple[int, ...]

    def __init__(self, names: int | Sequence[str], weights: Sequence[int] | None = None):
        if isinstance(names, int):
            names = tuple(f"x{i}" for i in range(names))
        names = tuple(names)
        if not names:
            raise ValueError("a polynomial ring needs at least one variable")
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names) or any(w <= 0 for w in weights):
            raise ValueError("weights must be positive, one per variable")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "weights", weights)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def compatible(self, other: "PolyRing") -> bool:
        return self.nvars == other.nvars and self.weights == other.weights

    def zero(self) -> "MPoly":
        return MPoly(self, {})

    def one(self) -> "MPoly":
        return self.constant(1)

    def constant(self, c) -> "MPoly":
        return MPoly(self, {(0,) * self.nvars: Fraction(c)})

    def gen(self, i: int) -> "MPoly":
        e = [0] * self.nvars
        e[i] = 1
        return MPoly(self, {tuple(e): Fraction(1)})

    @property
    def gens(self) -> list["MPoly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "MPoly":
        return MPoly(self, {tuple(exps): Fraction(coeff)})

    def degree_of(self, m: Monomial) -> int:
        return sum(e * w for e, w in zip(m, self.weights))

    def monomials_of_degree(self, d: int) -> list[Monomial]:
        """All exponent vectors of weighted degree exactly ``d``."""
        out: list[Monomial] = []
        w = self.weights
        n = len(w)

        def rec(i, left, acc):
            if i == n - 1:
                if left % w[i] == 0:
                    out.append(tuple(acc + [left // w[i]]))
                return
            for e in range(left // w[i] + 1):
                rec(i + 1, left - e * w[i], acc + [e])

        if d >= 0:
            rec(0, d, [])
        out.sort(key=lambda m: grevlex_key(m, w), reverse=True)
        return out

    def parse(self, text: str) -> "MPoly":
        return parse_poly(text, self)

    def extend(self, name: str, weight: int = 1, first: bool = False) -> "PolyRing":
        if first:
            return PolyRing((name,) + self.names, (weight,) + self.weights)
        return PolyRing(self.names + (name,), self.weights + (weight,))


class MPoly:
    """Immutable sparse polynomial over Q."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, object] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            n = ring.nvars
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    if len(m) != n:
                        raise RingMismatch(f"monomial {m} has wrong length for {n} variables")
                    clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    # -- basic queries -------------------------------------------------
    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def degree(self) -> int:
        """Weighted degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.degree_of(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.degree_of(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly(self.ring, {m: c for m, c in self.terms.items() if self.ring.degree_of(m) == d})

    def truncate(self, d: int) -> "MPoly":
        """Drop every term of weighted degree above ``d``."""
        return MPoly(self.ring, {m: c for m, c in self.terms.items() if self.ring.degree_of(m) <= d})

    def sorted_terms(self, key=None):
        if key is None:
            w = self.ring.weights
            key = lambda m: grevlex_key(m, w)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __iter__(self):
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if not self.ring.compatible(other.ring):
                raise RingMismatch(
                    f"cannot combine polynomials in {self.nvars} and {other.nvars} variables"
                    if self.nvars != other.nvars
                    else "cannot combine polynomials with different weights"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return MPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return MPoly(self.ring, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.terms and other.terms and self.degree() + other.degree() > DEGREE_CAP:
            raise DegreeCapExceeded(f"product degree exceeds cap {DEGREE_CAP}")
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return MPoly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(c))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        if self.terms and self.degree() * k > DEGREE_CAP:
            raise DegreeCapExceeded(f"power degree exceeds cap {DEGREE_CAP}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.ring.compatible(other.ring) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.weights, frozenset(self.terms.items())))
        return self._hash

    # -- evaluation and substitution -----------------------------------
    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise RingMismatch("point has the wrong number of coordinates")
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Replace variable ``i`` by ``images[i]`` (all in one target ring)."""
        if len(images) != self.nvars:
            raise RingMismatch("need one image per variable")
        target = images[0].ring
        result = target.zero()
        powers: dict = {}
        for m, c in self.terms.items():
            t = target.constant(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    t = t * powers[key]
            result = result + t
        return result

    def change_ring(self, ring: PolyRing) -> "MPoly":
        """Reinterpret the same exponent vectors in another ring of equal size."""
        if ring.nvars != self.nvars:
            raise RingMismatch("rings differ in variable count")
        return MPoly(ring, self.terms)

    def embed(self, ring: PolyRing, positions: Sequence[int]) -> "MPoly":
        """Map variable ``i`` to variable ``positions[i]`` of ``ring``."""
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                e[positions[i]] += k
            out[tuple(e)] = c
        return MPoly(ring, out)

    def variables_used(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # -- display -------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = names or self.ring.names
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}") for i, e in enumerate(m) if e
            )
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.to_str()!r})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        elif op is not None and not op.isspace():
            if op not in "+-*^/()":
                raise ValueError(f"unexpected character {op!r} in polynomial")
            tokens.append(("op", op))
    return tokens


def parse_poly(text: str, ring: PolyRing) -> MPoly:
    """Parse ``+ - * ^`` expressions with integer/rational literals.

    Division is allowed only between integer literals (``3/4``).
    """
    tokens = _tokenize(text)
    index = {n: i for i, n in enumerate(ring.names)}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if expected is not None and tok != ("op", expected):
            raise ValueError(f"expected {expected!r} in {text!r}")
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek() in (("op", "+"), ("op", "-")):
            sign = -1 if take()[1] == "-" else 1
        value = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term():
        value = factor()
        while peek() == ("op", "*"):
            take()
            value = value * factor()
        return value

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, k = take()
            if kind != "num":
                raise ValueError("exponent must be a nonnegative integer literal")
            base = base**k
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            if peek() == ("op", "/"):
                take()
                kind2, den = take()
                if kind2 != "num" or den == 0:
                    raise ValueError("rational literal needs a nonzero integer denominator")
                return ring.constant(Fraction(val, den))
            return ring.constant(val)
        if kind == "name":
            take()
            if val not in index:
                raise ValueError(f"unknown variable {val!r}; ring has {list(ring.names)}")
            return ring.gen(index[val])
        if (kind, val) == ("op", "("):
            take()
            inner = expr()
            take(")")
            return inner
        if (kind, val) == ("op", "-"):
            take()
            return -atom()
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    if not tokens:
        raise ValueError("empty polynomial")
    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def ring_for(names: Iterable[str] | None, texts: Sequence[str], weights=None) -> PolyRing:
    """Build a ring from declared names, or from the identifiers used in ``texts``.

    Inputs written purely in ``x0, x1, ...`` get the contiguous ring
    ``x0..xmax``; anything else gets its identifiers in natural order.
    """
    if names:
        return PolyRing(tuple(names), weights)
    used = set()
    for t in texts:
        used.update(re.findall(r"[A-Za-z_]\w*", t))
    if not used or all(re.fullmatch(r"x\d+", v) for v in used):
        n = max((int(v[1:]) for v in used), default=0) + 1
        return PolyRing(n, weights)

    def natural(v):
        m = re.fullmatch(r"(\D*)(\d*)", v)
        return (m.group(1), int(m.group(2) or -1), v) if m else (v, -1, v)

    return PolyRing(tuple(sorted(used, key=natural)), weights)
