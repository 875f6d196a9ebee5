"""Exact sparse polynomials over Q in the six coordinates x00, x01, x11, x02, x12, x22.

Monomials are packed into a single int below 2**63: six 9-bit exponent
fields (x00 in the lowest bits) plus the total degree in the bits above.
Packing turns monomial multiplication into integer addition, keeps dict keys
cheap, makes the graded reverse-lexicographic key a couple of bit operations,
and lets large products run as a sort-and-collapse over numpy int64 arrays.

Coefficients are ``int`` when integral and ``fractions.Fraction`` otherwise.
"""

from __future__ import annotations

import hashlib
import heapq
import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

VARIABLES = ("x00", "x01", "x11", "x02", "x12", "x22")
NVARS = len(VARIABLES)

_WIDTH = 9
_FIELD = (1 << _WIDTH) - 1
_DEG_SHIFT = _WIDTH * NVARS
_LOW = (1 << _DEG_SHIFT) - 1
MAX_DEGREE = _FIELD

# Products with at least this many term pairs go through numpy.
_BATCH_THRESHOLD = 512
_INT64_LIMIT = 1 << 62

Coefficient = Union[int, Fraction]
ExponentVector = tuple  # six non-negative ints in VARIABLES order


class PolynomialError(Exception):
    pass


class ParseError(PolynomialError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotDivisible(PolynomialError, ArithmeticError):
    pass


class DivisionByZeroPolynomial(PolynomialError, ZeroDivisionError):
    pass


class ZeroInput(PolynomialError, ValueError):
    pass


def pack(exponents: Sequence[int]) -> int:
    if len(exponents) != NVARS:
        raise ValueError(f"expected {NVARS} exponents, got {len(exponents)}")
    packed = 0
    total = 0
    for i, e in enumerate(exponents):
        if e < 0:
            raise ValueError("exponents must be non-negative")
        packed |= e << (_WIDTH * i)
        total += e
    if total > MAX_DEGREE:
        raise OverflowError(f"total degree {total} exceeds {MAX_DEGREE}")
    return packed | (total << _DEG_SHIFT)


def unpack(mono: int) -> ExponentVector:
    return tuple((mono >> (_WIDTH * i)) & _FIELD for i in range(NVARS))


def _degree(mono: int) -> int:
    return mono >> _DEG_SHIFT


def _grevlex_key(mono: int) -> int:
    # Larger key = larger monomial.  Inverting the low fields makes a smaller
    # exponent in the last variable win ties, which is grevlex.
    return ((mono >> _DEG_SHIFT) << _DEG_SHIFT) | (_LOW - (mono & _LOW))


def _divides(a: int, b: int) -> bool:
    """True iff monomial a divides monomial b."""
    for i in range(NVARS):
        s = _WIDTH * i
        if (a >> s) & _FIELD > (b >> s) & _FIELD:
            return False
    return True


def _norm(c) -> Coefficient:
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return int(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _coerce_coefficient(c) -> Coefficient:
    if isinstance(c, float):
        raise TypeError("float coefficients are not allowed; use Fraction")
    if isinstance(c, (int, Fraction)):
        return _norm(c)
    return _norm(Fraction(c))


def _div_coeff(c: Coefficient, d: Coefficient) -> Coefficient:
    if type(c) is int and type(d) is int:
        q, r = divmod(c, d)
        if r == 0:
            return q
    return _norm(Fraction(c) / d)


def _integerize(terms: dict) -> tuple[dict, int]:
    """Scale terms to integer coefficients; returns (scaled, scale)."""
    den = 1
    for c in terms.values():
        if type(c) is not int:
            den = lcm(den, c.denominator)
    if den == 1:
        return terms, 1
    return {e: int(c * den) for e, c in terms.items()}, den


def _mul_terms(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    a, da = _integerize(a)
    b, db = _integerize(b)
    if len(a) * len(b) >= _BATCH_THRESHOLD:
        out = _mul_batched(a, b)
    else:
        out = _mul_loop(a, b)
    scale = da * db
    if scale == 1:
        return out
    return {e: _norm(Fraction(c, scale)) for e, c in out.items()}


def _mul_loop(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    bitems = list(b.items())
    for ea, ca in a.items():
        if ca == 1:
            for eb, cb in bitems:
                e = ea + eb
                out[e] = get(e, 0) + cb
        else:
            for eb, cb in bitems:
                e = ea + eb
                out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _mul_batched(a: dict, b: dict) -> dict:
    """Integer-coefficient product by sorting all pairwise keys and summing runs."""
    ka = np.fromiter(a.keys(), np.int64, len(a))
    kb = np.fromiter(b.keys(), np.int64, len(b))
    amax = max(abs(c) for c in a.values())
    bmax = max(abs(c) for c in b.values())
    # a key of the product collects at most min(len) pairs
    if min(len(a), len(b)) * amax * bmax < _INT64_LIMIT:
        ca = np.fromiter(a.values(), np.int64, len(a))
        cb = np.fromiter(b.values(), np.int64, len(b))
    else:
        ca = np.array(list(a.values()), dtype=object)
        cb = np.array(list(b.values()), dtype=object)
    keys = np.add.outer(ka, kb).ravel()
    vals = np.multiply.outer(ca, cb).ravel()
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    vals = vals[order]
    starts = np.flatnonzero(np.concatenate(([True], keys[1:] != keys[:-1])))
    sums = np.add.reduceat(vals, starts)
    keep = sums != 0
    return dict(zip(keys[starts][keep].tolist(), sums[keep].tolist()))


def _add_terms(a: dict, b: dict, sign: int = 1) -> dict:
    if len(a) < len(b) and sign == 1:
        a, b = b, a
    out = dict(a)
    get = out.get
    for e, c in b.items():
        v = get(e, 0) + (c if sign == 1 else -c)
        if v:
            out[e] = _norm(v)
        else:
            out.pop(e, None)
    return out


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients.

    Construct from a mapping ``{exponent_tuple: coefficient}``, or use
    :func:`parse_poly`, :meth:`var` and :meth:`const`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None):
        packed: dict = {}
        for exps, c in (terms or {}).items():
            c = _coerce_coefficient(c)
            if c:
                e = pack(tuple(exps))
                v = packed.get(e, 0) + c
                if v:
                    packed[e] = _norm(v)
                else:
                    packed.pop(e, None)
        self._terms = packed
        self._hash = None

    @classmethod
    def _raw(cls, packed: dict) -> "Polynomial":
        p = object.__new__(cls)
        p._terms = packed
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = _coerce_coefficient(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, name: Union[str, int]) -> "Polynomial":
        i = VARIABLES.index(name) if isinstance(name, str) else name
        return cls._raw({pack(tuple(1 if j == i else 0 for j in range(NVARS))): 1})

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._raw({0: 1})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Terms as ``{exponent_tuple: coefficient}`` in canonical order."""
        return {unpack(e): self._terms[e] for e in self._sorted_monos()}

    def _sorted_monos(self) -> list:
        return sorted(self._terms, key=_grevlex_key, reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> Coefficient:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(0, 0)

    def total_degree(self) -> int:
        if not self._terms:
            raise ZeroInput("total degree of the zero polynomial is undefined")
        return max(_degree(e) for e in self._terms)

    def min_degree(self) -> int:
        """Lowest total degree among the terms (the order at the origin)."""
        if not self._terms:
            raise ZeroInput("order of the zero polynomial is undefined")
        return min(_degree(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {_degree(e) for e in self._terms}
        return len(degs) <= 1

    def variables_used(self) -> set:
        used = 0
        for e in self._terms:
            used |= e
        return {VARIABLES[i] for i in range(NVARS) if (used >> (_WIDTH * i)) & _FIELD}

    def degree_in(self, name: str) -> int:
        i = VARIABLES.index(name)
        if not self._terms:
            raise ZeroInput("degree of the zero polynomial is undefined")
        return max((e >> (_WIDTH * i)) & _FIELD for e in self._terms)

    def coefficients(self) -> list:
        return [self._terms[e] for e in self._sorted_monos()]

    def leading_term(self) -> tuple[ExponentVector, Coefficient]:
        if not self._terms:
            raise ZeroInput("zero polynomial has no leading term")
        e = max(self._terms, key=_grevlex_key)
        return unpack(e), self._terms[e]

    def fingerprint(self) -> str:
        """Short content hash of the canonical text form."""
        return hashlib.sha256(format_poly(self).encode()).hexdigest()[:16]

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(_add_terms(self._terms, other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Polynomial._raw(_add_terms(self._terms, other._terms, -1))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Polynomial._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self._terms and other._terms:
            if self.total_degree() + other.total_degree() > MAX_DEGREE:
                raise OverflowError("product degree exceeds the packed exponent range")
        return Polynomial._raw(_mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        if k == 0:
            return Polynomial.one()
        if self._terms and self.total_degree() * k > MAX_DEGREE:
            raise OverflowError("power degree exceeds the packed exponent range")
        if len(self._terms) == 1:
            (e, c), = self._terms.items()
            return Polynomial._raw({e * k: c ** k})
        # Repeated multiplication by the (small) base beats squaring for the
        # sparse inputs used here: |p^j| * |p| summed over j.
        result = self._terms
        for _ in range(k - 1):
            result = _mul_terms(result, self._terms)
        return Polynomial._raw(result)

    def scale(self, c) -> "Polynomial":
        c = _coerce_coefficient(c)
        if not c:
            return Polynomial.zero()
        return Polynomial._raw({e: _norm(v * c) for e, v in self._terms.items()})

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def variables() -> tuple:
    """The six coordinate polynomials, in order."""
    return tuple(Polynomial.var(i) for i in range(NVARS))


# -- text I/O ---------------------------------------------------------------

def _format_coeff(c: Coefficient) -> str:
    c = abs(c)
    if type(c) is int:
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def _format_mono(e: int) -> str:
    parts = []
    for name, k in zip(VARIABLES, unpack(e)):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if not p._terms:
        return "0"
    chunks = []
    for i, e in enumerate(p._sorted_monos()):
        c = p._terms[e]
        mono = _format_mono(e)
        if not mono:
            body = _format_coeff(c)
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{_format_coeff(c)}*{mono}"
        if i == 0:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(chunks)


_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^])|(?P<bad>\S))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.lastgroup is None:
            break
        kind = m.lastgroup
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group(kind)!r}", m.start(kind))
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.take()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2])
        return tok

    def parse(self) -> dict:
        terms: dict = {}
        sign = 1
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        while True:
            e, c = self.term()
            v = terms.get(e, 0) + sign * c
            if v:
                terms[e] = _norm(v)
            else:
                terms.pop(e, None)
            tok = self.peek()
            if tok[0] == "end":
                return terms
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = 1 if tok[1] == "+" else -1
                continue
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])

    def term(self):
        tok = self.peek()
        if tok[0] == "nat":
            coeff = self.coeff()
            if self.peek()[:2] == ("op", "*"):
                self.take()
                return self.factors(), coeff
            return 0, coeff
        return self.factors(), 1

    def coeff(self):
        num = int(self.take()[1])
        if self.peek()[:2] == ("op", "/"):
            self.take()
            tok = self.expect("nat")
            den = int(tok[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2])
            return _norm(Fraction(num, den))
        return num

    def factors(self) -> int:
        exps = [0] * NVARS
        while True:
            tok = self.take()
            if tok[0] != "name":
                raise ParseError(f"expected variable, got {tok[1] or 'end of input'!r}", tok[2])
            if tok[1] not in VARIABLES:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2])
            k = 1
            if self.peek()[:2] == ("op", "^"):
                self.take()
                k = int(self.expect("nat")[1])
            exps[VARIABLES.index(tok[1])] += k
            if self.peek()[:2] != ("op", "*"):
                return pack(exps)
            self.take()


def parse_poly(text: str) -> Polynomial:
    """Parse the polynomial text grammar, e.g. ``"x00*x11 - 1/2*x01^2"``."""
    return Polynomial._raw(_Parser(text).parse())


# -- substitution, evaluation, division --------------------------------------

def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Replace each coordinate by its image and expand.

    Terms are grouped variable by variable (a multivariate Horner scheme), so
    each power of an image is computed once and reused.
    """
    if len(images) != NVARS:
        raise ValueError(f"expected {NVARS} images, got {len(images)}")
    # Clear denominators once: image i = img_i / d_i with img_i integral, and
    # each term of f absorbs prod d_i^-e_i.  All inner products are then ints.
    imgs = []
    dens = []
    for img in images:
        scaled, d = _integerize(img._terms)
        imgs.append(scaled)
        dens.append(d)
    group = []
    for e, c in f._terms.items():
        exps = unpack(e)
        adj = Fraction(c)
        for d, k in zip(dens, exps):
            if d != 1 and k:
                adj /= d ** k
        group.append((exps, adj))
    scale = lcm(*(c.denominator for _, c in group)) if group else 1
    group = [(exps, int(c * scale)) for exps, c in group]
    cache: dict = {}

    def power(i: int, k: int) -> dict:
        key = (i, k)
        if key not in cache:
            if k == 0:
                cache[key] = {0: 1}
            elif k == 1:
                cache[key] = imgs[i]
            else:
                cache[key] = _mul_terms(power(i, k - 1), imgs[i])
        return cache[key]

    def expand(group: list, i: int) -> dict:
        if i == NVARS:
            total = sum(c for _, c in group)
            return {0: _norm(total)} if total else {}
        buckets: dict = {}
        for exps, c in group:
            buckets.setdefault(exps[i], []).append((exps, c))
        out: dict = {}
        for k in sorted(buckets):
            part = expand(buckets[k], i + 1)
            if k:
                part = _mul_terms(power(i, k), part)
            out = _add_terms(out, part)
        return out

    if not group:
        return Polynomial.zero()
    out = expand(group, 0)
    if scale != 1:
        out = {e: _norm(Fraction(c, scale)) for e, c in out.items()}
    return Polynomial._raw(out)


def evaluate(f: Polynomial, coords: Sequence) -> Fraction:
    if len(coords) != NVARS:
        raise ValueError(f"expected {NVARS} coordinates, got {len(coords)}")
    vals = [_coerce_coefficient(c) for c in coords]
    pows: list = [{0: 1} for _ in range(NVARS)]
    total: Coefficient = 0
    for e, c in f._terms.items():
        term = c
        for i, k in enumerate(unpack(e)):
            if k:
                cache = pows[i]
                if k not in cache:
                    cache[k] = vals[i] ** k
                term = term * cache[k]
        total += term
    return Fraction(total)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Return q with f == g*q, or raise NotDivisible.

    Leading-term reduction in grevlex order.  If g divides f every leading
    term of the running remainder is divisible by LT(g), so the first failure
    proves non-divisibility.
    """
    if not g._terms:
        raise DivisionByZeroPolynomial("division by the zero polynomial")
    if not f._terms:
        return Polynomial.zero()
    gt = g._terms
    if len(gt) == 1:
        (eg, cg), = gt.items()
        out = {}
        for e, c in f._terms.items():
            if not _divides(eg, e):
                raise NotDivisible(f"{format_poly(g)} does not divide the dividend")
            out[e - eg] = _div_coeff(c, cg)
        return Polynomial._raw(out)

    lead = max(gt, key=_grevlex_key)
    lead_c = gt[lead]
    tail = [(e, c) for e, c in gt.items() if e != lead]
    lead_deg = _degree(lead)

    rem = dict(f._terms)
    heap = [(-_grevlex_key(e), e) for e in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = rem.pop(e, None)
        if c is None:
            continue
        if _degree(e) < lead_deg or not _divides(lead, e):
            raise NotDivisible(f"{format_poly(g)} does not divide the dividend")
        qe = e - lead
        qc = _div_coeff(c, lead_c)
        quot[qe] = qc
        for eg, cg in tail:
            m = qe + eg
            old = rem.get(m)
            v = (old or 0) - qc * cg
            if v:
                rem[m] = _norm(v)
                if old is None:
                    heapq.heappush(heap, (-_grevlex_key(m), m))
            elif old is not None:
                del rem[m]
    return Polynomial._raw(quot)


def divides(g: Polynomial, f: Polynomial) -> bool:
    try:
        exact_divide(f, g)
    except NotDivisible:
        return False
    return True


def divisibility_order(f: Polynomial, g: Polynomial) -> int:
    """Largest k such that g**k divides f."""
    if f.is_zero():
        raise ZeroInput("divisibility order of the zero polynomial is infinite")
    if g.is_constant():
        raise ValueError("divisor must be nonconstant")
    k = 0
    while True:
        try:
            f = exact_divide(f, g)
        except NotDivisible:
            return k
        k += 1


def content(polys: Iterable[Polynomial]) -> Fraction:
    """Positive rational c such that every coefficient divided by c is an integer with gcd 1."""
    num = 0
    den = 1
    for p in polys:
        for c in p._terms.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
    if num == 0:
        raise ZeroInput("content of zero polynomials is undefined")
    return Fraction(num, den)
