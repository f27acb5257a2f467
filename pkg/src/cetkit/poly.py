"""Graded polynomial rings over QQ or GF(p), polynomials, and the text parser."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover
    mpq = Fraction


class RingError(ValueError):
    pass


class ParseError(ValueError):
    pass


class _NotHomogeneous:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NotHomogeneous"

    def __bool__(self):
        return False


NotHomogeneous = _NotHomogeneous()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _parse_order(order):
    if isinstance(order, str):
        s = order.strip().lower()
        if s in ("grevlex", "lex"):
            return s
        m = re.fullmatch(r"elim(?:inationblock)?[:(\s]\s*(\d+)\s*\)?", s)
        if m:
            return ("elim", int(m.group(1)))
        raise RingError(f"unknown monomial order {order!r}")
    if isinstance(order, (tuple, list)) and len(order) == 2 and order[0] == "elim":
        return ("elim", int(order[1]))
    raise RingError(f"unknown monomial order {order!r}")


def _parse_field(field) -> int:
    if isinstance(field, int):
        return field
    s = str(field).strip().upper().replace(" ", "")
    if s in ("QQ", "Q", "RATIONALS"):
        return 0
    m = re.fullmatch(r"(?:GF|F|ZZ/|PRIMEFIELD)\(?(\d+)\)?", s)
    if m:
        return int(m.group(1))
    raise RingError(f"unknown field {field!r}")


@dataclass(frozen=True)
class RingSpec:
    """Polynomial ring with variable weights and a monomial order.

    ``field`` is 0 for the rationals or a prime p < 2**31.  ``order`` is
    ``"grevlex"``, ``"lex"`` or ``("elim", k)``: the first k variables form
    an eliminated block, each block ordered by weighted grevlex.
    """

    vars: tuple
    field: int = 0
    weights: tuple | None = None
    order: object = "grevlex"

    def __post_init__(self):
        vs = self.vars
        if isinstance(vs, str):
            vs = tuple(v for v in re.split(r"[\s,]+", vs) if v)
        vs = tuple(vs)
        for v in vs:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise RingError(f"bad variable name {v!r}")
        if len(set(vs)) != len(vs):
            raise RingError("variable names must be unique")
        p = _parse_field(self.field)
        if p and (not is_prime(p) or p >= 2**31):
            raise RingError(f"characteristic {p} is not a prime below 2^31")
        w = tuple(int(x) for x in self.weights) if self.weights is not None else (1,) * len(vs)
        if len(w) != len(vs) or any(x < 1 for x in w):
            raise RingError("weights must be positive, one per variable")
        order = _parse_order(self.order)
        if isinstance(order, tuple) and not 0 < order[1] < len(vs):
            raise RingError("elimination block index out of range")
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "field", p)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "order", order)

    # order machinery

    @cached_property
    def rows(self) -> tuple:
        n = len(self.vars)

        def unit(i):
            return tuple(1 if j == i else 0 for j in range(n))

        def grevlex(lo, hi):
            neg_w = tuple(-self.weights[j] if lo <= j < hi else 0 for j in range(n))
            return [neg_w] + [unit(i) for i in range(hi - 1, lo, -1)]

        if self.order == "grevlex":
            rows = grevlex(0, n)
        elif self.order == "lex":
            rows = [tuple(-x for x in unit(i)) for i in range(n - 1)]
        else:
            k = self.order[1]
            rows = grevlex(0, k) + grevlex(k, n)
        return tuple(rows)

    @cached_property
    def off(self) -> int:
        return 1 + len(self.rows)

    def encode(self, exps: tuple, comp: int = 0) -> tuple:
        return (comp,) + tuple(sum(r * e for r, e in zip(row, exps)) for row in self.rows) + exps

    @property
    def ngens(self) -> int:
        return len(self.vars)

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vars)}

    @cached_property
    def gens(self) -> tuple:
        return tuple(self.gen(v) for v in self.vars)

    def gen(self, name: str) -> Polynomial:
        i = self.index.get(name)
        if i is None:
            raise RingError(f"no variable {name!r} in ring")
        e = [0] * self.ngens
        e[i] = 1
        return Polynomial(self, {tuple(e): self.coeff(1)})

    # coefficients

    def coeff(self, c):
        p = self.field
        if p:
            if isinstance(c, int):
                return c % p
            c = Fraction(c) if not isinstance(c, Fraction) else c
            return (c.numerator * pow(c.denominator, -1, p)) % p
        if isinstance(c, str):
            c = Fraction(c)
        return mpq(c) if not isinstance(c, Fraction) else mpq(c.numerator, c.denominator)

    def inv(self, c):
        if self.field:
            return pow(c, -1, self.field)
        return 1 / c

    def fmt_coeff(self, c) -> str:
        return str(c)

    # element construction

    @property
    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    @property
    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c) -> Polynomial:
        c = self.coeff(c)
        return Polynomial(self, {(0,) * self.ngens: c} if c else {})

    def monomial(self, exps: Sequence[int], c=1) -> Polynomial:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.ngens or min(exps, default=0) < 0:
            raise RingError("bad exponent vector")
        c = self.coeff(c)
        return Polynomial(self, {exps: c} if c else {})

    def from_terms(self, terms: Mapping) -> Polynomial:
        out = {}
        for e, c in terms.items():
            c = self.coeff(c)
            if c:
                e = tuple(e)
                out[e] = self.coeff(out[e] + c) if e in out else c
                if not out[e]:
                    del out[e]
        return Polynomial(self, out)

    def from_engine(self, d: Mapping, comp: int | None = None) -> Polynomial:
        off = self.off
        if comp is None:
            return Polynomial(self, {m[off:]: c for m, c in d.items()})
        return Polynomial(self, {m[off:]: c for m, c in d.items() if m[0] == comp})

    def __call__(self, x) -> Polynomial:
        if isinstance(x, Polynomial):
            return x if x.ring == self else x.to_ring(self)
        if isinstance(x, str):
            return parse_poly(x, self)
        return self.const(x)

    def parse(self, text: str) -> Polynomial:
        return parse_poly(text, self)

    # derived rings

    def extend(self, names: Sequence[str], weights: Sequence[int] | None = None, order=None) -> RingSpec:
        names = tuple(names)
        w = tuple(weights) if weights is not None else (1,) * len(names)
        return RingSpec(self.vars + names, self.field, self.weights + w, order or "grevlex")

    def with_order(self, order) -> RingSpec:
        return RingSpec(self.vars, self.field, self.weights, order)

    def subring(self, names: Sequence[str]) -> RingSpec:
        keep = [v for v in self.vars if v in set(names)]
        return RingSpec(tuple(keep), self.field, tuple(self.weights[self.index[v]] for v in keep), "grevlex")

    def fresh(self, base: str) -> str:
        name, k = base, 0
        while name in self.index:
            k += 1
            name = f"{base}{k}"
        return name

    def __str__(self):
        f = "QQ" if not self.field else f"GF({self.field})"
        return f"{f}[{', '.join(self.vars)}]"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_enc", "_hash")

    def __init__(self, ring: RingSpec, terms: dict):
        self.ring = ring
        self.terms = terms
        self._enc = None
        self._hash = None

    # engine bridge

    def enc(self, comp: int = 0) -> dict:
        if self._enc is None:
            R = self.ring
            self._enc = {R.encode(e): c for e, c in self.terms.items()}
        if comp == 0:
            return self._enc
        return {(comp,) + m[1:]: c for m, c in self._enc.items()}

    # basic predicates

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self):
        return self.terms.get((0,) * self.ring.ngens, self.ring.coeff(0))

    def _check(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    # arithmetic

    def __add__(self, other):
        other = self._check(other)
        p = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if p:
                    v %= p
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field
        return Polynomial(self.ring, {e: (-c) % p if p else -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        p = self.ring.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if p:
                    v %= p
                out[e] = v
        return Polynomial(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> Polynomial:
        c = self.ring.coeff(c)
        if not c:
            return self.ring.zero
        p = self.ring.field
        return Polynomial(self.ring, {e: (v * c) % p if p else v * c for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, exps: tuple, c=1) -> Polynomial:
        c = self.ring.coeff(c)
        p = self.ring.field
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): (v * c) % p if p else v * c for e, v in self.terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # order-dependent data

    def sorted_terms(self) -> list:
        """Terms in descending monomial order."""
        enc = self.ring.encode
        return sorted(self.terms.items(), key=lambda t: enc(t[0]))

    def leading_term(self) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        enc = self.ring.encode
        e = min(self.terms, key=enc)
        return e, self.terms[e]

    def leading_monomial(self) -> tuple:
        return self.leading_term()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        return self.scale(self.ring.inv(self.leading_coefficient()))

    # gradings

    def _wdeg(self, e) -> int:
        return sum(a * w for a, w in zip(e, self.ring.weights))

    def weighted_degree(self, weights: Sequence[int] | None = None):
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        w = self.ring.weights if weights is None else weights
        degs = {sum(a * b for a, b in zip(e, w)) for e in self.terms}
        return degs.pop() if len(degs) == 1 else NotHomogeneous

    def degree(self) -> int:
        """Largest weighted degree of a term (-1 for zero)."""
        return max((self._wdeg(e) for e in self.terms), default=-1)

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return not self.terms or self.weighted_degree(weights) is not NotHomogeneous

    def homogeneous_components(self) -> dict:
        out: dict = {}
        for e, c in self.terms.items():
            out.setdefault(self._wdeg(e), {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(out.items())}

    def variables(self) -> tuple:
        return tuple(v for i, v in enumerate(self.ring.vars) if any(e[i] for e in self.terms))

    # ring maps

    def substitute(self, assignment: Mapping[str, object], target: RingSpec | None = None) -> Polynomial:
        """Image under the ring map sending each variable to ``assignment[var]``.

        The assignment must cover every variable of the ring.
        """
        R = self.ring
        missing = [v for v in R.vars if v not in assignment]
        if missing:
            raise RingError(f"assignment misses variables {missing}")
        rings = {a.ring for a in assignment.values() if isinstance(a, Polynomial)}
        if target is not None:
            rings.add(target)
        if len(rings) > 1:
            raise RingError("images live in different rings")
        T = rings.pop() if rings else R
        imgs = [T(assignment[v]) for v in R.vars]
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = imgs[i] ** k
            return cache[key]

        out = T.zero
        for e, c in self.terms.items():
            t = T.const(c if not R.field else int(c))
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
                    if not t:
                        break
            out = out + t
        return out

    def to_ring(self, target: RingSpec) -> Polynomial:
        """Reinterpret in ``target`` by variable name (unused variables may be absent)."""
        if target == self.ring:
            return self
        if target.field != self.ring.field:
            raise RingError("field mismatch")
        idx = []
        for i, v in enumerate(self.ring.vars):
            j = target.index.get(v)
            if j is None:
                if any(e[i] for e in self.terms):
                    raise RingError(f"variable {v} not in target ring")
            idx.append(j)
        n = target.ngens
        out = {}
        for e, c in self.terms.items():
            t = [0] * n
            for i, k in enumerate(e):
                if k:
                    t[idx[i]] = k
            out[tuple(t)] = c
        return Polynomial(target, out)

    # text

    def __str__(self):
        if not self.terms:
            return "0"
        R = self.ring
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(R.vars, e) if k
            )
            neg = False
            if not R.field and c < 0:
                neg, c = True, -c
            cs = R.fmt_coeff(c)
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def parse_poly(text: str, ring: RingSpec) -> Polynomial:
    """Parse ``3*x^2*y - 1/2*z`` style input; multiplication must be explicit."""
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def take():
        nonlocal i
        t = peek()
        i += 1
        return t

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            _, op = take()
            rhs = unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs.is_constant() or not rhs:
                    raise ParseError("division only by nonzero constants")
                val = val.scale(ring.inv(rhs.constant_term()))
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, n = take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            return base**n
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return ring.const(val)
        if kind == "name":
            if val not in ring.index:
                raise ParseError(f"unknown variable {val!r} for ring {ring}")
            return ring.gen(val)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError("unbalanced parentheses")
            return inner
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if i != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return result


def poly_arith(op: str, f: Polynomial, g) -> Polynomial:
    if op == "add":
        return f + f._check(g)
    if op == "sub":
        return f - f._check(g)
    if op == "mul":
        return f * f._check(g)
    if op == "scalar_mul":
        return f.scale(g)
    raise ValueError(f"unknown op {op!r}")


def polys(ring: RingSpec, items: Iterable) -> list:
    return [ring(x) for x in items]


@dataclass(frozen=True)
class QuotientRingSpec:
    """Ambient ring modulo a homogeneous defining ideal."""

    ambient: RingSpec
    defining: object = None  # Ideal; None means the zero ideal

    def __post_init__(self):
        from .groebner import Ideal

        d = self.defining
        if d is None:
            d = Ideal(self.ambient, [])
        elif not isinstance(d, Ideal):
            d = Ideal(self.ambient, [self.ambient(g) for g in d])
        if d.ring != self.ambient:
            raise RingError("defining ideal lives in another ring")
        for g in d.gens:
            if not g.is_homogeneous():
                raise RingError(f"defining generator {g} is not homogeneous")
        object.__setattr__(self, "defining", d)

    @property
    def ring(self) -> RingSpec:
        return self.ambient

    def __hash__(self):
        return hash((self.ambient, tuple(self.defining.gens)))

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRingSpec)
            and self.ambient == other.ambient
            and tuple(self.defining.gens) == tuple(other.defining.gens)
        )

    def reduce(self, f: Polynomial) -> Polynomial:
        return self.defining.normal_form(f) if self.defining.gens else f

    def __str__(self):
        if not self.defining.gens:
            return str(self.ambient)
        return f"{self.ambient}/({', '.join(map(str, self.defining.gens))})"


def monomials_of_degree(ring: RingSpec, degree: int, among: Sequence[int] | None = None) -> list:
    """Exponent vectors of weighted degree ``degree`` supported on ``among`` (default all)."""
    idx = list(range(ring.ngens)) if among is None else list(among)
    w = ring.weights
    out = []

    def rec(k, left, e):
        if k == len(idx):
            if left == 0:
                out.append(tuple(e))
            return
        i = idx[k]
        for a in range(left // w[i] + 1):
            e[i] = a
            rec(k + 1, left - a * w[i], e)
        e[i] = 0

    if degree >= 0:
        rec(0, degree, [0] * ring.ngens)
    return sorted(out, key=ring.encode)


def random_homogeneous(ring: RingSpec, degree: int, rng, coeff_range: int = 5) -> Polynomial:
    """Random homogeneous polynomial with small integer coefficients (may be zero)."""
    terms = {}
    for e in monomials_of_degree(ring, degree):
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            terms[e] = c
    return ring.from_terms(terms)
