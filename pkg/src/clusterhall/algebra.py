"""Exact Laurent polynomials with integer coefficients.

A :class:`LaurentPolynomial` is an immutable map from exponent vectors
(tuples of possibly negative integers) to nonzero integers.  Every other
module of the package uses it as the carrier of cluster variables.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = [
    "LaurentPolynomial",
    "NonExactDivisionError",
    "lp_add",
    "lp_mul",
    "lp_div_exact",
    "lp_eval_ones",
    "lp_denominator_vector",
    "lp_has_positive_coefficients",
]

Exponent = tuple[int, ...]


class NonExactDivisionError(ArithmeticError):
    """Raised when a Laurent polynomial is not divisible by another."""


class LaurentPolynomial:
    """Element of Z[u_1^{+-1}, ..., u_n^{+-1}].

    Terms with coefficient zero are never stored, so two polynomials are
    equal exactly when their term maps are equal.
    """

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | None = None, nvars: int = 1):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        clean: dict[Exponent, int] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(x) for x in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have length {nvars}")
            if c:
                clean[exp] = clean.get(exp, 0) + int(c)
                if clean[exp] == 0:
                    del clean[exp]
        self._terms = clean
        self._nvars = nvars
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict[Exponent, int], nvars: int) -> "LaurentPolynomial":
        # terms must already be canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._nvars = nvars
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPolynomial":
        return cls._raw({}, nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPolynomial":
        return cls._raw({(0,) * nvars: 1}, nvars)

    @classmethod
    def constant(cls, c: int, nvars: int) -> "LaurentPolynomial":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exponents: Iterable[int], coeff: int = 1) -> "LaurentPolynomial":
        exp = tuple(exponents)
        return cls({exp: coeff}, len(exp))

    @classmethod
    def variable(cls, i: int, nvars: int) -> "LaurentPolynomial":
        """The variable u_i, with ``i`` counted from 1."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} out of range 1..{nvars}")
        exp = [0] * nvars
        exp[i - 1] = 1
        return cls._raw({tuple(exp): 1}, nvars)

    @classmethod
    def variables(cls, nvars: int) -> tuple["LaurentPolynomial", ...]:
        return tuple(cls.variable(i, nvars) for i in range(1, nvars + 1))

    # -- basic accessors ----------------------------------------------
    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self._terms.items(), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading_term(self) -> tuple[Exponent, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms)
        return exp, self._terms[exp]

    def min_exponents(self) -> tuple[int, ...]:
        return tuple(min(e[i] for e in self._terms) for i in range(self._nvars))

    def max_exponents(self) -> tuple[int, ...]:
        return tuple(max(e[i] for e in self._terms) for i in range(self._nvars))

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "LaurentPolynomial") -> None:
        if self._nvars != other._nvars:
            raise ValueError(
                f"variable count mismatch: {self._nvars} vs {other._nvars}"
            )

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self._nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return LaurentPolynomial._raw(out, self._nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -c for e, c in self._terms.items()}, self._nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(exp, 0) + c1 * c2
                if s:
                    out[exp] = s
                else:
                    del out[exp]
        return LaurentPolynomial._raw(out, self._nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only exist for monomials")
            ((exp, c),) = self._terms.items()
            if c not in (1, -1):
                raise NonExactDivisionError("monomial with non-unit coefficient is not invertible")
            return LaurentPolynomial._raw(
                {tuple(k * x for x in exp): c ** (-k)}, self._nvars
            )
        result = LaurentPolynomial.one(self._nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def div_exact(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        """Quotient ``q`` with ``q * divisor == self``.

        Leading terms are eliminated under the lexicographic order.  Each
        quotient term must lie in the exponent box fixed by the Newton
        polytopes of the operands, which bounds the loop and detects
        non-exact division.
        """
        self._check(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if not self:
            return self
        n = self._nvars
        lo = [a - b for a, b in zip(self.min_exponents(), divisor.min_exponents())]
        hi = [a - b for a, b in zip(self.max_exponents(), divisor.max_exponents())]
        if any(l > h for l, h in zip(lo, hi)):
            raise NonExactDivisionError("exponent ranges are incompatible")
        lead_exp, lead_c = divisor.leading_term()
        dterms = list(divisor._terms.items())
        rem = dict(self._terms)
        quot: dict[Exponent, int] = {}
        while rem:
            r_exp = max(rem)
            r_c = rem[r_exp]
            t = tuple(a - b for a, b in zip(r_exp, lead_exp))
            if any(not (lo[i] <= t[i] <= hi[i]) for i in range(n)):
                raise NonExactDivisionError(f"quotient term {t} outside admissible range")
            if r_c % lead_c:
                raise NonExactDivisionError("coefficient is not divisible")
            qc = r_c // lead_c
            quot[t] = qc
            for d_exp, d_c in dterms:
                exp = tuple(a + b for a, b in zip(t, d_exp))
                s = rem.get(exp, 0) - qc * d_c
                if s:
                    rem[exp] = s
                else:
                    rem.pop(exp, None)
        return LaurentPolynomial._raw(quot, n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.div_exact(other)

    # -- evaluation and inspection ------------------------------------
    def eval_ones(self) -> int:
        return sum(self._terms.values())

    def evaluate(self, values: Iterable) -> object:
        """Substitute numbers (ints, Fractions, floats) for the variables."""
        vals = list(values)
        if len(vals) != self._nvars:
            raise ValueError("wrong number of values")
        total = 0
        for exp, c in self._terms.items():
            term = c
            for v, k in zip(vals, exp):
                term = term * v**k
            total += term
        return total

    def denominator_vector(self) -> tuple[int, ...]:
        if not self._terms:
            raise ValueError("zero polynomial has no denominator vector")
        return tuple(-m for m in self.min_exponents())

    def numerator(self) -> "LaurentPolynomial":
        """``self * u^delta`` where ``delta`` is the denominator vector."""
        shift = self.denominator_vector()
        return LaurentPolynomial._raw(
            {tuple(a + s for a, s in zip(e, shift)): c for e, c in self._terms.items()},
            self._nvars,
        )

    def has_positive_coefficients(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    # -- hashing / equality -------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other, self._nvars)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def sort_key(self) -> tuple:
        return (len(self._terms), tuple(self.items()))

    # -- text form ----------------------------------------------------
    @staticmethod
    def _monomial_str(exp: Exponent) -> str:
        parts = []
        for i, k in enumerate(exp, start=1):
            if k == 1:
                parts.append(f"u{i}")
            elif k:
                parts.append(f"u{i}^{k}")
        return "*".join(parts)

    @classmethod
    def _terms_str(cls, items) -> str:
        if not items:
            return "0"
        pieces: list[str] = []
        for idx, (exp, c) in enumerate(items):
            mono = cls._monomial_str(exp)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if idx == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append((" + " if c > 0 else " - ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self._terms_str(self.items())

    def fraction_str(self) -> str:
        """Render as ``(numerator)/denominator-monomial``."""
        if not self._terms:
            return "0"
        delta = tuple(max(d, 0) for d in self.denominator_vector())
        num = {
            tuple(a + s for a, s in zip(e, delta)): c for e, c in self._terms.items()
        }
        # ascending order reads naturally for numerators: 1 + u2 + ...
        num_s = self._terms_str(sorted(num.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0]))))
        den_s = self._monomial_str(delta)
        if not den_s:
            return num_s
        if len(num) > 1:
            num_s = f"({num_s})"
        if sum(1 for d in delta if d) > 1 or any(d > 1 for d in delta):
            den_s = f"({den_s})" if "*" in den_s else den_s
        return f"{num_s}/{den_s}"

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r}, nvars={self._nvars})"

    _TERM_RE = re.compile(r"^(\d+)?((?:\*?u\d+(?:\^-?\d+)?)*)$")
    _FACTOR_RE = re.compile(r"u(\d+)(?:\^(-?\d+))?")

    @classmethod
    def parse(cls, text: str, nvars: int) -> "LaurentPolynomial":
        """Parse the text form produced by ``str()``."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls.zero(nvars)
        if s[0] not in "+-":
            s = "+" + s
        chunks = [c for c in re.split(r"(?<!\^)(?=[+-])", s) if c]
        out: dict[Exponent, int] = {}
        for chunk in chunks:
            sign = -1 if chunk[0] == "-" else 1
            body = chunk[1:]
            m = cls._TERM_RE.match(body)
            if not m or not body:
                raise ValueError(f"bad term {chunk!r} in {text!r}")
            coeff = int(m.group(1)) if m.group(1) else 1
            if m.group(1) and m.group(2) and not m.group(2).startswith("*"):
                raise ValueError(f"missing '*' in term {chunk!r}")
            exp = [0] * nvars
            for var, power in cls._FACTOR_RE.findall(m.group(2)):
                i = int(var)
                if not 1 <= i <= nvars:
                    raise ValueError(f"variable u{i} out of range in {text!r}")
                exp[i - 1] += int(power) if power else 1
            key = tuple(exp)
            out[key] = out.get(key, 0) + sign * coeff
        return cls(out, nvars)


def lp_add(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a + b


def lp_mul(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a * b


def lp_div_exact(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a.div_exact(b)


def lp_eval_ones(a: LaurentPolynomial) -> int:
    return a.eval_ones()


def lp_denominator_vector(a: LaurentPolynomial) -> tuple[int, ...]:
    """Negated minimum exponent of each variable.

    For a cluster variable this is the exponent vector of the denominator of
    the reduced fraction; a negative entry means the variable divides every
    term (for instance ``u1`` gives ``(-1, 0, ...)``).
    """
    return a.denominator_vector()


def lp_has_positive_coefficients(a: LaurentPolynomial) -> bool:
    return a.has_positive_coefficients()


def product(factors: Iterable[LaurentPolynomial], nvars: int) -> LaurentPolynomial:
    out = LaurentPolynomial.one(nvars)
    for f in factors:
        out = out * f
    return out
