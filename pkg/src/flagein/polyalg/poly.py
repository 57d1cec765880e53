"""Sparse multivariate polynomials with exact rational coefficients.

Exponent vectors are integer tuples aligned with an ordered variable list;
zero coefficients are never stored.  LaurentPoly additionally allows negative
exponents and exists to express Ricci components symbolically before their
denominators are cleared.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import DomainError, ParseError

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class TermOrder:
    """Monomial order: 'lex' or 'grevlex' over an explicit variable priority."""

    kind: str
    variables: tuple[str, ...]

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise DomainError(f"unknown term order kind {self.kind!r}")

    def key(self, exp: Exponent):
        """Sort key; larger key = larger monomial."""
        if self.kind == "lex":
            return exp
        return (sum(exp), tuple(-e for e in reversed(exp)))

    def sorted_terms(self, poly: "MultiPoly") -> list[tuple[Exponent, Fraction]]:
        return sorted(poly.terms.items(), key=lambda t: self.key(t[0]), reverse=True)

    def leading(self, poly: "MultiPoly") -> tuple[Exponent, Fraction]:
        if not poly.terms:
            raise DomainError("zero polynomial has no leading term")
        exp = max(poly.terms, key=self.key)
        return exp, poly.terms[exp]


def _mul_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


class MultiPoly:
    """Polynomial in an ordered variable list, stored as {exponent: coefficient}."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: tuple[str, ...], terms: dict[Exponent, Fraction] | None = None):
        self.vars = tuple(variables)
        clean: dict[Exponent, Fraction] = {}
        if terms:
            width = len(self.vars)
            for exp, coeff in terms.items():
                if len(exp) != width:
                    raise DomainError("exponent width does not match variable list")
                if any(e < 0 for e in exp):
                    raise DomainError("negative exponent in polynomial")
                c = Fraction(coeff)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    # construction helpers

    @classmethod
    def constant(cls, value, variables: tuple[str, ...]) -> "MultiPoly":
        zero = (0,) * len(variables)
        return cls(variables, {zero: Fraction(value)})

    @classmethod
    def variable(cls, name: str, variables: tuple[str, ...]) -> "MultiPoly":
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise DomainError(f"variable {name!r} not in {variables}")
        return cls(variables, {exp: Fraction(1)})

    # basic predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise DomainError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def support_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    # arithmetic

    def _check(self, other: "MultiPoly"):
        if self.vars != other.vars:
            raise DomainError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.vars)
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly(self.vars)
            return MultiPoly(self.vars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _mul_exp(e1, e2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result = MultiPoly.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        return f"MultiPoly({format_polynomial(self)})"

    # normalization

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self, order: TermOrder | None = None) -> "MultiPoly":
        """Integer-primitive form with positive leading coefficient under *order*
        (grevlex over own variables when omitted)."""
        if not self.terms:
            return self
        c = self.content()
        order = order or TermOrder("grevlex", self.vars)
        _, lead = order.leading(self)
        if lead < 0:
            c = -c
        return MultiPoly(self.vars, {e: v / c for e, v in self.terms.items()})

    def monomial_gcd(self) -> Exponent:
        it = iter(self.terms)
        acc = list(next(it, (0,) * len(self.vars)))
        for exp in self.terms:
            acc = [min(a, e) for a, e in zip(acc, exp)]
        return tuple(acc)

    def divide_monomial(self, exp: Exponent) -> "MultiPoly":
        if not _divides(exp, self.monomial_gcd()) and self.terms:
            raise DomainError("monomial does not divide every term")
        return MultiPoly(self.vars, {tuple(e - d for e, d in zip(t, exp)): c for t, c in self.terms.items()})

    # variable management

    def with_variables(self, variables: tuple[str, ...]) -> "MultiPoly":
        """Re-express over a variable list containing at least the used variables."""
        position = {v: i for i, v in enumerate(variables)}
        missing = [v for v in self.support_vars() if v not in position]
        if missing:
            raise DomainError(f"target variables missing {missing}")
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.vars, exp):
                if e:
                    new[position[v]] = e
            out[tuple(new)] = c
        return MultiPoly(variables, out)

    def substitute(self, assignment: dict[str, "MultiPoly | Fraction | int"]) -> "MultiPoly":
        """Replace variables by constants or polynomials over the same variable list."""
        result = MultiPoly(self.vars)
        for exp, coeff in self.terms.items():
            term = MultiPoly.constant(coeff, self.vars)
            for v, e in zip(self.vars, exp):
                if not e:
                    continue
                if v in assignment:
                    value = assignment[v]
                    if isinstance(value, MultiPoly):
                        term = term * value**e
                    else:
                        term = term * (Fraction(value) ** e)
                else:
                    term = term * MultiPoly.variable(v, self.vars) ** e
            result = result + term
        return result

    def evaluate(self, point: dict[str, Fraction | float]):
        """Exact or floating evaluation; mode follows the point values."""
        total = None
        for exp, coeff in self.terms.items():
            value = coeff
            for v, e in zip(self.vars, exp):
                if e:
                    value = value * point[v] ** e
            total = value if total is None else total + value
        if total is None:
            sample = next(iter(point.values()), Fraction(0))
            return 0.0 if isinstance(sample, float) else Fraction(0)
        return total

    def derivative(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self.terms.items():
            if exp[i]:
                new = list(exp)
                new[i] -= 1
                out[tuple(new)] = coeff * exp[i]
        return MultiPoly(self.vars, out)

    # univariate views

    def univariate_in(self, name: str) -> list[Fraction]:
        """Dense ascending coefficient list; requires all other variables absent."""
        i = self.vars.index(name)
        coeffs = [Fraction(0)] * (self.degree_in(name) + 1)
        for exp, c in self.terms.items():
            if any(e for j, e in enumerate(exp) if j != i):
                raise DomainError(f"polynomial is not univariate in {name}")
            coeffs[exp[i]] = c
        return coeffs


class LaurentPoly:
    """Polynomial with integer (possibly negative) exponents; denominators are
    always monomials, which is exactly what Ricci components need."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: tuple[str, ...], terms: dict[Exponent, Fraction] | None = None):
        self.vars = tuple(variables)
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    @classmethod
    def variable(cls, name: str, variables: tuple[str, ...]) -> "LaurentPoly":
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: Fraction(1)})

    @classmethod
    def constant(cls, value, variables: tuple[str, ...]) -> "LaurentPoly":
        return cls(variables, {(0,) * len(variables): Fraction(value)})

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.vars != self.vars:
                raise DomainError("variable mismatch")
            return other
        return LaurentPoly.constant(other, self.vars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return LaurentPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _mul_exp(e1, e2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if len(other.terms) != 1:
            raise DomainError("Laurent division only by a single term")
        (exp, coeff), = other.terms.items()
        inv = tuple(-e for e in exp)
        return LaurentPoly(self.vars, {_mul_exp(t, inv): c / coeff for t, c in self.terms.items()})

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def cleared(self) -> tuple[MultiPoly, Exponent]:
        """Multiply by the minimal monomial making all exponents nonnegative.

        Returns (polynomial, clearing exponent); self == polynomial / x^clearing.
        """
        width = len(self.vars)
        shift = [0] * width
        for exp in self.terms:
            for i, e in enumerate(exp):
                if -e > shift[i]:
                    shift[i] = -e
        out = {tuple(e + s for e, s in zip(exp, shift)): c for exp, c in self.terms.items()}
        return MultiPoly(self.vars, out), tuple(shift)

    def __repr__(self):
        inner = " + ".join(f"{c}*{exp}" for exp, c in sorted(self.terms.items()))
        return f"LaurentPoly({inner or '0'})"


# text format: one polynomial per line, terms like -3*x2^2*x3*x6 + 24*x2*x3^2

_TOKEN = re.compile(
    r"\s*(?:(?P<sign>[+-])|(?P<coeff>\d+(?:/\d+)?)|(?P<var>[a-zA-Z][a-zA-Z0-9]*)"
    r"|(?P<pow>\^)|(?P<mul>\*))"
)


def _natural_var_key(name: str):
    m = re.fullmatch(r"([a-zA-Z]+)(\d*)", name)
    if m:
        head, digits = m.groups()
        return (head, int(digits) if digits else -1)
    return (name, -1)


def parse_polynomial(text: str, variables: tuple[str, ...] | None = None) -> MultiPoly:
    """Parse one polynomial.  With *variables* given, unknown names are errors;
    otherwise variables are collected and ordered naturally (x2 before x10)."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
    # collect terms as (coeff, {var: exp})
    terms: list[tuple[Fraction, dict[str, int]]] = []
    sign = 1
    current: tuple[Fraction, dict[str, int]] | None = None
    expecting_exponent_for: str | None = None

    def flush():
        nonlocal current, sign
        if current is not None:
            terms.append(current)
        current = None
        sign = 1

    i = 0
    while i < len(tokens):
        kind, value = tokens[i]
        if kind == "sign":
            if expecting_exponent_for is not None:
                raise ParseError("exponent must be a positive integer")
            if current is not None:
                flush()
            sign = -sign if value == "-" else sign
        elif kind == "coeff":
            if expecting_exponent_for is not None:
                if "/" in value:
                    raise ParseError("exponent must be an integer")
                coeff, powers = current
                powers[expecting_exponent_for] += int(value) - 1
                expecting_exponent_for = None
            elif current is None:
                num, _, den = value.partition("/")
                current = (sign * Fraction(int(num), int(den) if den else 1), {})
            else:
                raise ParseError(f"unexpected number {value!r}; use '*' between factors")
        elif kind == "var":
            if expecting_exponent_for is not None:
                raise ParseError("exponent must be an integer")
            if current is None:
                current = (Fraction(sign), {})
            coeff, powers = current
            powers[value] = powers.get(value, 0) + 1
        elif kind == "pow":
            if current is None or not current[1]:
                raise ParseError("'^' must follow a variable")
            last_var = tokens[i - 1]
            if last_var[0] != "var":
                raise ParseError("'^' must follow a variable")
            expecting_exponent_for = last_var[1]
        elif kind == "mul":
            if current is None:
                raise ParseError("'*' must follow a factor")
        i += 1
    if expecting_exponent_for is not None:
        raise ParseError("dangling '^'")
    if tokens and tokens[-1][0] in ("sign", "mul"):
        raise ParseError(f"dangling {tokens[-1][1]!r}")
    flush()
    if not terms:
        raise ParseError("empty polynomial")

    seen: set[str] = set()
    for _, powers in terms:
        seen.update(powers)
    if variables is None:
        variables = tuple(sorted(seen, key=_natural_var_key))
    else:
        unknown = seen - set(variables)
        if unknown:
            raise ParseError(f"unknown variables {sorted(unknown)}")
    out: dict[Exponent, Fraction] = {}
    for coeff, powers in terms:
        exp = tuple(powers.get(v, 0) for v in variables)
        s = out.get(exp, Fraction(0)) + coeff
        if s:
            out[exp] = s
        else:
            out.pop(exp, None)
    return MultiPoly(variables, out)


def format_polynomial(poly: MultiPoly, order: TermOrder | None = None) -> str:
    """Canonical text form: terms descending under *order* (grevlex default)."""
    if poly.is_zero():
        return "0"
    order = order or TermOrder("grevlex", poly.vars)
    pieces: list[str] = []
    for exp, coeff in order.sorted_terms(poly):
        factors = []
        for v, e in zip(poly.vars, exp):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        magnitude = abs(coeff)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = str(magnitude) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(body if coeff > 0 else "-" + body)
        else:
            pieces.append(("+ " if coeff > 0 else "- ") + body)
    return " ".join(pieces)


def parse_polynomial_file(text: str, variables: tuple[str, ...] | None = None) -> list[MultiPoly]:
    """One polynomial per line; blank lines are ignored.  Variables are shared:
    when not given, the union over all lines is used, naturally ordered."""
    lines = [(n + 1, line.strip()) for n, line in enumerate(text.splitlines())]
    lines = [(n, line) for n, line in lines if line]
    if variables is None:
        seen: set[str] = set()
        for n, line in lines:
            try:
                seen.update(parse_polynomial(line).support_vars())
            except ParseError as exc:
                raise ParseError(str(exc), line=n) from None
        variables = tuple(sorted(seen, key=_natural_var_key))
    polys = []
    for n, line in lines:
        try:
            polys.append(parse_polynomial(line, variables))
        except ParseError as exc:
            raise ParseError(str(exc), line=n) from None
    return polys
