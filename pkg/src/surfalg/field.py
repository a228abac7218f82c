"""Exact arithmetic over GF(p), GF(p^k) and the rationals.

Finite field elements are stored as small integer codes.  For GF(p^k) the
code of c_0 + c_1 w + ... + c_{k-1} w^{k-1} is sum c_i p^i, so GF(2^k)
addition is xor.  Rational elements are ``fractions.Fraction`` values.
Scalar methods take plain codes; the ``v*`` methods and ``matmul`` work on
numpy arrays of codes (object arrays for the rationals).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

MAX_ORDER = 1 << 16


class FieldError(ValueError):
    pass


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "prime" | "extension" | "rational"
    characteristic: int
    degree: int = 1
    modulus: tuple[int, ...] | None = None  # low-to-high coefficients, monic

    def to_json(self) -> dict:
        d = {"kind": self.kind, "characteristic": self.characteristic, "degree": self.degree}
        if self.modulus is not None:
            d["modulus"] = list(self.modulus)
        return d

    @staticmethod
    def from_json(d) -> "FieldSpec":
        if isinstance(d, str):
            return parse_field_name(d)
        kind = d.get("kind")
        p = int(d.get("characteristic", 0))
        deg = int(d.get("degree", 1))
        mod = d.get("modulus")
        if kind is None:
            kind = "rational" if p == 0 else ("prime" if deg == 1 else "extension")
        if mod is None and kind == "extension" and _is_prime(p):
            mod = default_modulus(p, deg)
        return FieldSpec(kind, p, deg, tuple(int(x) for x in mod) if mod is not None else None)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# polynomials over GF(p) as low-to-high coefficient lists

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _poly_trim(a)
    return a


def is_irreducible(mod, p: int) -> bool:
    mod = _poly_trim(mod)
    deg = len(mod) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _poly_mod(mod, g, p):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree k, ordered by sum c_i p^i."""
    for code in range(p ** k):
        tail = [(code // p ** i) % p for i in range(k)]
        cand = tail + [1]
        if tail[0] != 0 and is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


_NAME_RE = re.compile(r"^\s*(?:GF|F)\(?\s*(\d+)\s*(?:\^\s*(\d+))?\s*\)?\s*$", re.I)


def parse_field_name(name: str) -> FieldSpec:
    s = name.strip()
    if s.upper() in ("Q", "QQ", "RATIONAL", "RATIONALS"):
        return FieldSpec("rational", 0)
    m = _NAME_RE.match(s)
    if not m:
        raise FieldError(f"unrecognised field name {name!r}")
    base = int(m.group(1))
    exp = int(m.group(2)) if m.group(2) else 1
    if m.group(2) is None and not _is_prime(base):
        # GF(4) style
        for p in range(2, base + 1):
            if _is_prime(p) and base % p == 0:
                k = 0
                q = base
                while q % p == 0:
                    q //= p
                    k += 1
                if q != 1:
                    raise FieldError(f"{base} is not a prime power")
                base, exp = p, k
                break
    if exp == 1:
        return FieldSpec("prime", base)
    return FieldSpec("extension", base, exp, default_modulus(base, exp) if _is_prime(base) else None)


class Field:
    """Arithmetic context.  Build through ``field_make`` so instances are shared."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.kind = spec.kind
        self.p = spec.characteristic
        self.degree = spec.degree
        if self.kind == "rational":
            if self.p != 0:
                raise FieldError("rational field must have characteristic 0")
            self.order = None
            self.modulus = None
            self.dtype = object
            self.zero = Fraction(0)
            self.one = Fraction(1)
            return
        if not _is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.kind == "prime":
            if self.degree != 1:
                raise FieldError("prime field must have degree 1")
            self.modulus = None
        elif self.kind == "extension":
            if self.degree < 1:
                raise FieldError("degree must be positive")
            mod = spec.modulus if spec.modulus is not None else default_modulus(self.p, self.degree)
            mod = tuple(int(x) % self.p for x in mod)
            if len(_poly_trim(mod)) != self.degree + 1 or mod[-1] != 1:
                raise FieldError("modulus must be monic of the field degree")
            if not is_irreducible(mod, self.p):
                raise FieldError(f"modulus {mod} is reducible over GF({self.p})")
            self.modulus = mod
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")
        self.order = self.p ** self.degree
        if self.order > MAX_ORDER:
            raise FieldError("fields of order > 2^16 are not supported")
        self.dtype = np.int64
        self.zero = 0
        self.one = 1
        self._build_tables()

    # ---- construction of tables -------------------------------------------------

    def _digits(self, a: int):
        return [(a // self.p ** i) % self.p for i in range(self.degree)]

    def _from_digits(self, ds) -> int:
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(ds))

    def _poly_mulmod(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.degree)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        return self._from_digits(_poly_mod(prod, self.modulus, self.p) + [0] * self.degree)

    def _build_tables(self):
        q, p = self.order, self.p
        if self.degree == 1:
            mul = lambda a, b: a * b % p
        else:
            mul = self._poly_mulmod
        # primitive element
        gen = None
        for cand in range(1, q):
            x, k = cand, 1
            while x != 1:
                x = mul(x, cand)
                k += 1
            if k == q - 1:
                gen = cand
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = mul(x, gen)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self.generator = gen
        self._exp = exp
        self._log = log
        self._exp_np = np.array(exp + [0], dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)
        self._inv = [0] + [exp[(q - 1 - log[a]) % (q - 1)] for a in range(1, q)]
        self._inv_np = np.array(self._inv, dtype=np.int64)
        if p == 2 or self.degree == 1:
            self._add_tab = None
            self._neg = [(-a) % p for a in range(q)] if self.degree == 1 else list(range(q))
        else:
            digits = np.array([self._digits(a) for a in range(q)], dtype=np.int64)
            weights = p ** np.arange(self.degree)
            tab = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
            self._add_tab = tab.astype(np.int64)
            self._neg = [int(((-digits[a]) % p) @ weights) for a in range(q)]
        self._neg_np = np.array(self._neg, dtype=np.int64)
        # code of w^k for k < 2*degree, used by matmul on extension fields
        self._wpow = []
        if self.degree > 1:
            x = 1
            for _ in range(2 * self.degree):
                self._wpow.append(x)
                x = mul(x, p)  # code p is the element w
        self._log_zero_sentinel = 2 * (q - 1)

    # ---- scalar arithmetic on codes ----------------------------------------------

    def add(self, a, b):
        if self.kind == "rational":
            return a + b
        if self.p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % self.p
        return int(self._add_tab[a, b])

    def neg(self, a):
        if self.kind == "rational":
            return -a
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == "rational":
            return a * b
        if a == 0 or b == 0:
            return 0
        if self.degree == 1:
            return a * b % self.p
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if self.kind == "rational":
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if self.kind == "rational":
            return Fraction(a) ** n
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def from_int(self, n: int):
        if self.kind == "rational":
            return Fraction(n)
        return self._from_digits([n % self.p]) if self.degree > 1 else n % self.p

    def coerce(self, x):
        """Accept a code, int, Fraction, string or FieldElement and return a code."""
        if isinstance(x, FieldElement):
            if x.field is not self:
                raise FieldError("element belongs to a different field")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "rational":
            return Fraction(x)
        if isinstance(x, (int, np.integer)):
            return self.from_int(int(x))
        raise FieldError(f"cannot coerce {x!r} into {self}")

    def elements(self):
        if self.kind == "rational":
            raise FieldError("the rationals cannot be enumerated")
        return list(range(self.order))

    def nonzero(self):
        return list(range(1, self.order))

    def is_zero(self, a) -> bool:
        return a == 0

    # ---- array arithmetic ---------------------------------------------------------

    def zeros(self, shape):
        if self.kind == "rational":
            out = np.empty(shape, dtype=object)
            out[...] = Fraction(0)
            return out
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n):
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    def array(self, data):
        if self.kind == "rational":
            arr = np.array(data, dtype=object)
            flat = arr.reshape(-1)
            for i in range(flat.size):
                flat[i] = Fraction(flat[i])
            return arr
        return np.array(data, dtype=np.int64)

    def vadd(self, a, b):
        if self.kind == "rational":
            return a + b
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.degree == 1:
            return (a + b) % self.p
        return self._add_tab[a, b]

    def vneg(self, a):
        if self.kind == "rational":
            return -a
        if self.p == 2:
            return a
        if self.degree == 1:
            return (-a) % self.p
        return self._neg_np[a]

    def vsub(self, a, b):
        if self.kind == "rational":
            return a - b
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.degree == 1:
            return (a - b) % self.p
        return self._add_tab[a, self._neg_np[b]]

    def vmul(self, a, b):
        """Elementwise product (broadcasting)."""
        if self.kind == "rational":
            return a * b
        if self.degree == 1:
            if self.p == 2:
                return np.bitwise_and(a, b)
            return (np.asarray(a) * b) % self.p
        a = np.asarray(a)
        b = np.asarray(b)
        la = np.where(a == 0, self._log_zero_sentinel, self._log_np[a])
        lb = np.where(b == 0, self._log_zero_sentinel, self._log_np[b])
        s = la + lb
        return np.where(s >= self._log_zero_sentinel, 0, self._exp_np[np.minimum(s, 2 * (self.order - 1))])

    def vinv(self, a):
        if self.kind == "rational":
            return np.vectorize(lambda x: 1 / Fraction(x), otypes=[object])(a)
        return self._inv_np[a]

    def _prime_matmul(self, a, b):
        p = self.p
        n = a.shape[-1]
        if (p - 1) * (p - 1) * max(n, 1) < (1 << 52):
            r = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
            return r % p
        return (a @ b) % p

    def matmul(self, a, b):
        if self.kind == "rational":
            return np.dot(a, b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.degree == 1:
            return self._prime_matmul(a, b)
        p, k = self.p, self.degree
        da = [(a // p ** i) % p for i in range(k)]
        db = [(b // p ** i) % p for i in range(k)]
        out = None
        for i in range(k):
            if not da[i].any():
                continue
            for j in range(k):
                if not db[j].any():
                    continue
                part = self._prime_matmul(da[i], db[j])
                # part has entries in the prime subfield; scale by w^(i+j)
                term = self.vmul(part, self._wpow[i + j])
                out = term if out is None else self.vadd(out, term)
        if out is None:
            out = np.zeros(np.matmul(np.zeros(a.shape), np.zeros(b.shape)).shape, dtype=np.int64)
        return out

    def vsum(self, arr, axis=0):
        """Field sum along an axis."""
        if self.kind == "rational":
            return np.sum(arr, axis=axis)
        if self.p == 2:
            return np.bitwise_xor.reduce(arr, axis=axis)
        if self.degree == 1:
            return np.sum(arr, axis=axis) % self.p
        arr = np.moveaxis(np.asarray(arr), axis, 0)
        out = np.zeros(arr.shape[1:], dtype=np.int64)
        for x in arr:
            out = self._add_tab[out, x]
        return out

    # ---- text form ----------------------------------------------------------------

    def format(self, a) -> str:
        if self.kind == "rational":
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        a = int(a)
        if self.degree == 1:
            return str(a)
        ds = self._digits(a)
        parts = []
        for i in range(self.degree - 1, -1, -1):
            c = ds[i]
            if not c:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return "+".join(parts) if parts else "0"

    def parse(self, s) -> object:
        if isinstance(s, (int, np.integer)):
            return self.from_int(int(s))
        s = str(s).strip().replace(" ", "")
        if self.kind == "rational":
            try:
                return Fraction(s)
            except (ValueError, ZeroDivisionError) as exc:
                raise FieldError(f"bad rational {s!r}") from exc
        if not s:
            raise FieldError("empty field element")
        if self.degree == 1:
            if not re.fullmatch(r"-?\d+", s):
                raise FieldError(f"bad element {s!r} of GF({self.p})")
            return int(s) % self.p
        coeffs = [0] * self.degree
        s = s.replace("-", "+-")
        for term in s.split("+"):
            if not term:
                continue
            m = re.fullmatch(r"(-)?(\d+)?\*?(w(?:\^(\d+))?)?", term)
            if not m or (m.group(2) is None and m.group(3) is None):
                raise FieldError(f"bad element {s!r} of GF({self.order})")
            c = int(m.group(2)) if m.group(2) is not None else 1
            if m.group(1):
                c = -c
            e = 0 if m.group(3) is None else (int(m.group(4)) if m.group(4) else 1)
            if e >= self.degree:
                # reduce w^e through the modulus
                val = self.pow(self.p, e)  # code p is w
                val = self.mul(val, self.from_int(c))
                for i, d in enumerate(self._digits(val)):
                    coeffs[i] += d
                continue
            coeffs[e] += c
        return self._from_digits(coeffs)

    def name(self) -> str:
        if self.kind == "rational":
            return "Q"
        return f"GF({self.order})"

    def __repr__(self):
        if self.modulus is not None:
            return f"{self.name()}[mod {self.modulus}]"
        return self.name()

    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))


@lru_cache(maxsize=None)
def field_make(spec: FieldSpec) -> Field:
    return Field(spec)


def GF(q: int, modulus=None) -> Field:
    s = parse_field_name(f"GF({q})")
    if modulus is not None:
        s = FieldSpec("extension", s.characteristic, s.degree, tuple(modulus))
    return field_make(s)


def QQ() -> Field:
    return field_make(FieldSpec("rational", 0))


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: object

    def _other(self, o):
        return self.field.coerce(o)

    def __add__(self, o):
        return FieldElement(self.field, self.field.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.field, self.field.sub(self.value, self._other(o)))

    def __rsub__(self, o):
        return FieldElement(self.field, self.field.sub(self._other(o), self.value))

    def __mul__(self, o):
        return FieldElement(self.field, self.field.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElement(self.field, self.field.div(self.value, self._other(o)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.value == 0

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.field is o.field and self.value == o.value
        try:
            return self.value == self.field.coerce(o)
        except (FieldError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field.name()}({self.field.format(self.value)})"


def _int_root(n: int, k: int):
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n < 2:
        return n
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid
    return lo if lo ** k == n else None


def nth_roots(a: FieldElement, n: int) -> set[FieldElement]:
    """All x in the field of ``a`` with x^n = a."""
    if n < 1:
        raise ValueError("n must be positive")
    F = a.field
    if F.kind == "rational":
        v = Fraction(a.value)
        out = set()
        num, den = v.numerator, v.denominator
        for sign in (1, -1):
            if sign == -1 and n % 2 == 0:
                continue
            rn = _int_root(abs(num), n)
            rd = _int_root(den, n)
            if rn is None or rd is None:
                continue
            x = Fraction(rn, rd) * (sign if num < 0 or n % 2 == 0 else 1)
            if x ** n == v:
                out.add(FieldElement(F, x))
            if n % 2 == 0 and (-x) ** n == v:
                out.add(FieldElement(F, -x))
        return out
    return {FieldElement(F, x) for x in F.elements() if F.pow(x, n) == a.value}
