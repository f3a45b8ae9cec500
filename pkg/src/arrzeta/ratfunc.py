"""Exact univariate rational functions in s with factored linear denominators.

Every displayed zeta value in this problem domain is a sum of products of
terms 1/(a s + b), so denominators are kept as multisets of primitive integer
linear factors; this makes pole orders and pole coefficients exact bookkeeping
rather than a factorization problem.  The canonical form is

    scale * num(s) / prod (a_i s + b_i)^{e_i}

with scale a positive rational, num a primitive integer polynomial carrying
the sign, no factor dividing num, and factors sorted.  The representation is
unique, so dataclass equality is equality of functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InvalidInputError, PoleError

# polynomials are tuples of coefficients, ascending powers of s


def _ptrim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _padd(p, q):
    out = [Fraction(0)] * max(len(p), len(q))
    for i, x in enumerate(p):
        out[i] += x
    for i, x in enumerate(q):
        out[i] += x
    return _ptrim(out)


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x == 0:
            continue
        for j, y in enumerate(q):
            out[i + j] += x * y
    return _ptrim(out)


def _pscale(p, c):
    return _ptrim([Fraction(c) * x for x in p])


def _peval(p, s0: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(p)):
        acc = acc * s0 + c
    return acc


def _pdivmod(p, q):
    """Exact polynomial division with remainder over Q."""
    p = [Fraction(x) for x in p]
    q = [Fraction(x) for x in q]
    if all(x == 0 for x in q):
        raise ZeroDivisionError("polynomial division by zero")
    out = [Fraction(0)] * max(1, len(p) - len(q) + 1)
    rem = p[:]
    dq = len(q) - 1
    lead = q[-1]
    while len(_ptrim(rem)) - 1 >= dq and any(x != 0 for x in rem):
        rem = _ptrim(rem)
        k = len(rem) - 1 - dq
        f = rem[-1] / lead
        out[k] = f
        for i, c in enumerate(q):
            rem[k + i] -= f * c
        rem = rem[:-1]
    return _ptrim(out), _ptrim(rem)


def _ptaylor(p, s0: Fraction):
    """Coefficients of p(s0 + u) in ascending powers of u (repeated synthetic division)."""
    c = [Fraction(x) for x in p]
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += c[j + 1] * s0
    return c


@dataclass(frozen=True, order=True)
class LinearFactor:
    """A primitive linear factor a*s + b with a > 0 and gcd(a, b) = 1."""

    a: int
    b: int

    @staticmethod
    def normalize(a: int, b: int) -> tuple["LinearFactor", Fraction]:
        """Return (primitive factor, content) with content * factor == a*s + b."""
        if a == 0:
            raise InvalidInputError("linear factor must have a nonzero s coefficient")
        g = gcd(a, b)
        content = Fraction(g)
        a, b = a // g, b // g
        if a < 0:
            a, b = -a, -b
            content = -content
        return LinearFactor(a, b), content

    @property
    def root(self) -> Fraction:
        return Fraction(-self.b, self.a)

    def poly(self):
        return (Fraction(self.b), Fraction(self.a))

    def __str__(self):
        s = "s" if self.a == 1 else f"{self.a}s"
        if self.b == 0:
            return s
        return f"{s} + {self.b}" if self.b > 0 else f"{s} - {-self.b}"


def _pole_key(s0: Fraction) -> LinearFactor:
    f = Fraction(s0)
    return LinearFactor(f.denominator, -f.numerator)


@dataclass(frozen=True)
class RationalFunction:
    scale: Fraction
    num: tuple[int, ...]
    den: tuple[tuple[LinearFactor, int], ...]

    # -- construction -------------------------------------------------------

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction(Fraction(0), (0,), ())

    @staticmethod
    def constant(c) -> "RationalFunction":
        return _canonical(Fraction(c), [Fraction(1)], {})

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction.constant(1)

    @staticmethod
    def from_poly(coeffs) -> "RationalFunction":
        return _canonical(Fraction(1), [Fraction(c) for c in coeffs], {})

    @staticmethod
    def factor_inverse(a: int, b: int, power: int = 1) -> "RationalFunction":
        """1/(a s + b)^power, taking the caller's (a, b) literally."""
        if power < 1:
            raise InvalidInputError("power must be positive")
        fac, content = LinearFactor.normalize(a, b)
        return _canonical(content ** -power, [Fraction(1)], {fac: power})

    @property
    def is_zero(self) -> bool:
        return self.scale == 0

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        union: dict[LinearFactor, int] = {}
        for fac, e in self.den + other.den:
            union[fac] = max(union.get(fac, 0), e)

        def lifted(rf):
            p = _pscale(rf.num, rf.scale)
            for fac, e in union.items():
                have = dict(rf.den).get(fac, 0)
                for _ in range(e - have):
                    p = _pmul(p, fac.poly())
            return p

        return _canonical(Fraction(1), _padd(lifted(self), lifted(other)), union)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        return RationalFunction(self.scale, tuple(-c for c in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RationalFunction.zero()
        den: dict[LinearFactor, int] = {}
        for fac, e in self.den + other.den:
            den[fac] = den.get(fac, 0) + e
        num = _pmul([Fraction(c) for c in self.num], [Fraction(c) for c in other.num])
        return _canonical(self.scale * other.scale, num, den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return RationalFunction.one()
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def inverse(self) -> "RationalFunction":
        """Reciprocal; requires the numerator to split into rational linear factors."""
        if self.is_zero:
            raise InvalidInputError("division by the zero function")
        factors = _factor_integer_poly(self.num)
        num = [Fraction(1)]
        for fac, e in self.den:
            for _ in range(e):
                num = _pmul(num, fac.poly())
        unit = _unit_of_factored(self.num, factors)
        return _canonical(1 / (self.scale * unit), num, dict(factors))

    # -- analysis ------------------------------------------------------------

    def eval(self, s0) -> Fraction:
        s0 = Fraction(s0)
        val = self.scale * _peval(self.num, s0)
        for fac, e in self.den:
            fv = _peval(fac.poly(), s0)
            if fv == 0:
                raise PoleError(f"evaluation at the pole {s0} (factor {fac})")
            val /= fv ** e
        return val

    def pole_order(self, s0) -> int:
        """Order of the pole at s0 (0 when regular); exact because the form is canonical."""
        key = _pole_key(Fraction(s0))
        return dict(self.den).get(key, 0)

    def pole_coefficient(self, factor: tuple[int, int]) -> Fraction:
        """((a s + b) * R)(-b/a) for the caller's literal (a, b); needs pole order <= 1."""
        a, b = factor
        fac, content = LinearFactor.normalize(a, b)
        order = dict(self.den).get(fac, 0)
        if order > 1:
            raise PoleError(f"pole of order {order} at {fac.root}; coefficient undefined")
        if order == 0:
            return Fraction(0)
        rest = RationalFunction(self.scale, self.num, tuple((f, e) for f, e in self.den if f != fac))
        return content * rest.eval(fac.root)

    @property
    def numerator_degree(self) -> int:
        return len(self.num) - 1

    @property
    def denominator_degree(self) -> int:
        return sum(e for _, e in self.den)

    @property
    def is_proper(self) -> bool:
        return self.is_zero or self.numerator_degree < self.denominator_degree

    def partial_fractions(self):
        """(polynomial part, [(factor, power, coefficient)]) with exact coefficients.

        The singular terms are coefficient/(a s + b)^power over the canonical
        primitive factors; re-summing everything reproduces the function.
        """
        if self.is_zero:
            return (Fraction(0),), []
        dfull = [Fraction(1)]
        for fac, e in self.den:
            for _ in range(e):
                dfull = _pmul(dfull, fac.poly())
        poly_part, rem = _pdivmod(_pscale(self.num, self.scale), dfull)
        terms = []
        for fac, e in self.den:
            rest = [Fraction(1)]
            for fac2, e2 in self.den:
                if fac2 == fac:
                    continue
                for _ in range(e2):
                    rest = _pmul(rest, fac2.poly())
            s0 = fac.root
            num_t = _ptaylor(rem, s0)
            den_t = _ptaylor(rest, s0)
            # power series of rem/rest around s0, to order e-1
            inv0 = 1 / den_t[0]
            series = []
            for k in range(e):
                acc = num_t[k] if k < len(num_t) else Fraction(0)
                for j in range(1, k + 1):
                    dj = den_t[j] if j < len(den_t) else Fraction(0)
                    acc -= dj * series[k - j]
                series.append(acc * inv0)
            for j in range(e):
                coeff = series[j] / Fraction(fac.a) ** j
                if coeff != 0:
                    terms.append((fac, e - j, coeff))
        if not poly_part:
            poly_part = [Fraction(0)]
        return tuple(poly_part), terms

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if self.is_zero:
            return "0"
        num_s = _poly_str(self.num)
        if self.scale != 1:
            prefix = str(self.scale) + "·"
            num_s = f"({num_s})" if len(self.num) > 1 else num_s
        else:
            prefix = ""
            if self.den and len(self.num) > 1:
                num_s = f"({num_s})"
        if not self.den:
            return prefix + num_s
        parts = []
        for fac, e in self.den:
            base = f"({fac})"
            parts.append(base if e == 1 else f"{base}^{e}")
        return f"{prefix}{num_s}/" + ("·".join(parts) if len(parts) == 1 else "(" + "·".join(parts) + ")")

    def to_dict(self) -> dict:
        return {
            "scale": str(self.scale),
            "numerator": [str(c) for c in self.num],
            "factors": [[fac.a, fac.b, e] for fac, e in self.den],
            "string": str(self),
        }


def _poly_str(coeffs) -> str:
    terms = []
    for p in range(len(coeffs) - 1, -1, -1):
        c = coeffs[p]
        if c == 0:
            continue
        mag = abs(c)
        if p == 0:
            body = str(mag)
        else:
            var = "s" if p == 1 else f"s^{p}"
            body = var if mag == 1 else f"{mag}{var}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) if terms else "0"


def _canonical(scale: Fraction, num, den: dict[LinearFactor, int]) -> RationalFunction:
    num = _ptrim([Fraction(c) for c in num])
    if scale == 0 or all(c == 0 for c in num):
        return RationalFunction.zero()
    den = {fac: e for fac, e in den.items() if e > 0}
    # cancel factors that divide the numerator
    for fac in sorted(den):
        while den.get(fac, 0) > 0:
            q, r = _pdivmod(num, fac.poly())
            if any(x != 0 for x in r):
                break
            num = q
            den[fac] -= 1
        if den.get(fac) == 0:
            del den[fac]
    # move rational content of the numerator into the scale
    common_den = 1
    for c in num:
        common_den = _lcm_int(common_den, c.denominator)
    ints = [int(c * common_den) for c in num]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    scale = scale * Fraction(g, common_den)
    if scale < 0:
        scale = -scale
        ints = [-c for c in ints]
    return RationalFunction(scale, tuple(ints), tuple(sorted(den.items())))


def _lcm_int(a, b):
    return a // gcd(a, b) * b


def _factor_integer_poly(coeffs) -> dict[LinearFactor, int]:
    """Factor a primitive integer polynomial into linear factors, or fail."""
    p = [Fraction(c) for c in coeffs]
    p = _ptrim(p)
    factors: dict[LinearFactor, int] = {}
    while len(p) > 1:
        if p[0] == 0:
            fac = LinearFactor(1, 0)
            factors[fac] = factors.get(fac, 0) + 1
            p = p[1:]
            continue
        root = _rational_root(p)
        if root is None:
            raise InvalidInputError(
                "denominator does not factor into rational linear factors"
            )
        fac = _pole_key(root)
        q, r = _pdivmod(p, fac.poly())
        assert all(x == 0 for x in r)
        factors[fac] = factors.get(fac, 0) + 1
        p = q
    return factors


def _unit_of_factored(coeffs, factors) -> Fraction:
    """The constant u with coeffs == u * prod(factors)."""
    prod = [Fraction(1)]
    for fac, e in factors.items():
        for _ in range(e):
            prod = _pmul(prod, fac.poly())
    q, r = _pdivmod([Fraction(c) for c in coeffs], prod)
    assert all(x == 0 for x in r) and len(q) == 1
    return q[0]


def _divisors(k: int):
    k = abs(k)
    out = [i for i in range(1, k + 1) if k % i == 0]
    return out


def _rational_root(p) -> Fraction | None:
    den = 1
    for c in p:
        den = _lcm_int(den, c.denominator)
    ints = [int(c * den) for c in p]
    const, lead = ints[0], ints[-1]
    for q in _divisors(lead):
        for r in _divisors(const):
            for cand in (Fraction(r, q), Fraction(-r, q)):
                if _peval(p, cand) == 0:
                    return cand
    return None


# ---------------------------------------------------------------------------
# expression parsing


_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<s>s)|(?P<op>[()+\-*/^·])|(?P<bad>\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.group("bad"):
            raise InvalidInputError(f"unexpected character in expression at position {pos}")
        if m.group("int"):
            tokens.append(("int", int(m.group("int"))))
        elif m.group("s"):
            tokens.append(("s", "s"))
        else:
            op = m.group("op")
            tokens.append(("op", "*" if op == "·" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, val = self.next()
        if kind != "op" or val != value:
            raise InvalidInputError(f"expected '{value}' in expression")

    def parse(self) -> RationalFunction:
        out = self.expr()
        if self.i != len(self.tokens):
            raise InvalidInputError("trailing tokens in expression")
        return out

    def expr(self):
        out = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                out = out + rhs if val == "+" else out - rhs
            else:
                return out

    def term(self):
        out = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.unary()
                out = out * rhs if val == "*" else out / rhs
            elif kind in ("int", "s") or (kind == "op" and val == "("):
                out = out * self.unary()  # implicit multiplication, e.g. 9s or 2(s+1)
            else:
                return out

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "^":
                self.next()
                sign = 1
                kind2, val2 = self.peek()
                if kind2 == "op" and val2 == "-":
                    self.next()
                    sign = -1
                kind2, val2 = self.next()
                if kind2 != "int":
                    raise InvalidInputError("exponent must be an integer literal")
                base = base ** (sign * val2)
            else:
                return base

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return RationalFunction.constant(val)
        if kind == "s":
            return RationalFunction.from_poly([0, 1])
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise InvalidInputError("malformed expression")


def parse_expression(text: str) -> RationalFunction:
    """Parse an arithmetic expression over integers and s into canonical form.

    Supports + - * / ^ with parentheses, '·' as multiplication, and implicit
    multiplication as in '9s' or '2(s+1)(2s+1)'.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise InvalidInputError("empty expression")
    return _Parser(tokens).parse()
