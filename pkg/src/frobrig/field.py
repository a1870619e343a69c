"""Finite fields GF(p^e) realised as F_p[x]/(m(x)).

An element c_0 + c_1 w + ... + c_{e-1} w^{e-1}, with w the class of x, is
encoded as the integer c_0 + c_1 p + ... + c_{e-1} p^{e-1}.  The context
methods (``add``, ``mul``, ...) work directly on these integers and are what
the polynomial and series code use in inner loops; :class:`FieldElem` is the
value type handed to callers.

Fields with at most ``TABLE_CAP`` elements get discrete log and Zech tables
on construction, which turns both products and (for odd p) sums into table
lookups.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator, Sequence

import sympy

from .config import default_budget
from .errors import (
    BudgetExceeded,
    CtxMismatch,
    DegreeMismatch,
    DivideByZero,
    NotPrime,
    ReducibleModulus,
)

TABLE_CAP = 1 << 16


# -- dense polynomials over Z/p, lists low-to-high; only used for moduli ----

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, m, p):
    a = _fp_trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _fp_trim(a)
    return a


def _fp_mulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_mod(out, m, p)


def _fp_powmod(a, n, m, p):
    result = [1]
    base = _fp_mod(list(a), m, p)
    while n:
        if n & 1:
            result = _fp_mulmod(result, base, m, p)
        n >>= 1
        if n:
            base = _fp_mulmod(base, base, m, p)
    return result


def _fp_gcd(a, b, p):
    a = _fp_trim([c % p for c in a])
    b = _fp_trim([c % p for c in b])
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over Z/p (coefficients low-to-high)."""
    m = _fp_trim([c % p for c in coeffs])
    e = len(m) - 1
    if e < 1 or m[-1] != 1:
        return False
    if e == 1:
        return True
    if m[0] == 0:
        return False
    x = [0, 1]
    frob = [x]  # frob[k] = x^(p^k) mod m
    for _ in range(e):
        frob.append(_fp_powmod(frob[-1], p, m, p))
    if _fp_mod(frob[e], m, p) != _fp_mod(x, m, p):
        return False
    for ell in sympy.primefactors(e):
        h = list(frob[e // ell])
        h += [0] * max(0, 2 - len(h))
        h[1] -= 1
        g = _fp_gcd(m, h, p)
        if len(g) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e, ordering candidates by the base-p
    integer of their coefficients (so x^2+1 precedes x^2+x+2 over F_3)."""
    for n in range(p**e, 2 * p**e):
        coeffs = []
        k = n
        for _ in range(e + 1):
            k, r = divmod(k, p)
            coeffs.append(r)
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FieldCtx:
    """The field Z/p[x]/(modulus).  Immutable after construction.

    Use :func:`GF` to obtain instances; it caches them, so the lookup tables
    are built once per field.
    """

    def __init__(self, p: int, e: int = 1, modulus: Sequence[int] | None = None):
        if not isinstance(p, int) or p < 2 or not sympy.isprime(p):
            raise NotPrime(f"{p!r} is not prime")
        if e < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {e}")
        if modulus is None:
            modulus = smallest_irreducible(p, e)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            while len(modulus) > 1 and modulus[-1] == 0:
                modulus = modulus[:-1]
            if len(modulus) - 1 != e:
                raise DegreeMismatch(f"modulus has degree {len(modulus) - 1}, expected {e}")
            if modulus[-1] != 1:
                raise DegreeMismatch("modulus must be monic")
            if not is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus)
        self._n = self.q - 1  # order of the multiplicative group
        self._pw = [p**i for i in range(e + 1)]
        self._mbits = sum(c << i for i, c in enumerate(self.modulus)) if p == 2 else 0
        self._log = self._exp = self._zech = None
        self._prim = None
        if e > 1 and self.q <= TABLE_CAP:
            self._build_tables()

    # -- identity -----------------------------------------------------------
    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}; m={list(self.modulus)})"

    # -- encoding -----------------------------------------------------------
    def digits(self, n: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            n, r = divmod(n, p)
            out.append(r)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        p = self.p
        if len(ds) > self.e:
            raise DegreeMismatch(f"{len(ds)} coordinates for a degree-{self.e} field")
        return sum((c % p) * self._pw[i] for i, c in enumerate(ds))

    def from_int(self, k: int) -> int:
        """Encoding of the prime-field element k mod p."""
        return k % self.p

    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            self.check(value)
            return value
        if isinstance(value, int):
            return FieldElem(self, value % self.p)
        return FieldElem(self, self.from_digits(value))

    def check(self, a: "FieldElem"):
        if a.ctx is not self and a.ctx != self:
            raise CtxMismatch(f"element of {a.ctx} used in {self}")

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def w(self) -> "FieldElem":
        """The class of x, i.e. a root of the modulus."""
        if self.e == 1:
            return FieldElem(self, (-self.modulus[0]) % self.p)
        return FieldElem(self, self.p)

    def __len__(self):
        return self.q

    # -- integer-level arithmetic --------------------------------------------
    def add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.e == 1:
            return (a + b) % p
        if self._zech is not None:
            if a == 0:
                return b
            if b == 0:
                return a
            log = self._log
            la = log[a]
            z = self._zech[(log[b] - la) % self._n]
            if z < 0:
                return 0
            return self._exp[(la + z) % self._n]
        out = 0
        pw = 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * pw
            pw *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.e == 1:
            return (-a) % p
        out = 0
        pw = 1
        while a:
            a, r = divmod(a, p)
            out += ((-r) % p) * pw
            pw *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return a * b % self.p
        log = self._log
        if log is not None:
            return self._exp[(log[a] + log[b]) % self._n]
        return self._mul_slow(a, b)

    def _mul_slow(self, a: int, b: int) -> int:
        e = self.e
        if self.p == 2:
            top = 1 << e
            mbits = self._mbits
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mbits
            return r
        p = self.p
        da = self.digits(a)
        db = self.digits(b)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        mod = self.modulus
        for i in range(2 * e - 2, e - 1, -1):
            c = prod[i] % p
            if c:
                base = i - e
                for j in range(e):
                    prod[base + j] -= c * mod[j]
        return self.from_digits([c % p for c in prod[:e]])

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise DivideByZero("zero has no inverse")
            return 1 if k == 0 else 0
        n = self._n
        k %= n
        if self.e == 1:
            return pow(a, k, self.p)
        if self._log is not None:
            return self._exp[self._log[a] * k % n]
        result = 1
        base = a
        while k:
            if k & 1:
                result = self._mul_slow(result, base)
            k >>= 1
            if k:
                base = self._mul_slow(base, base)
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivideByZero("division by zero in " + repr(self))
        return self.pow(a, -1)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, k: int = 1) -> int:
        """a^(p^k); k may be any non-negative integer."""
        if a == 0 or k == 0:
            return a
        return self.pow(a, pow(self.p, k, self._n) if self._n > 1 else 0)

    def proot(self, a: int) -> int:
        """The unique p-th root (finite fields are perfect)."""
        return self.frob(a, self.e - 1)

    def trace(self, a: int) -> int:
        s = a
        t = a
        for _ in range(self.e - 1):
            t = self.frob(t, 1)
            s = self.add(s, t)
        assert s < self.p, "trace must land in the prime field"
        return s

    def degree_of(self, a: int, r: int = 1) -> int:
        """Length of the orbit of a under x -> x^(p^r)."""
        k = 1
        b = self.frob(a, r)
        while b != a:
            b = self.frob(b, r)
            k += 1
        return k

    def horner(self, coeffs: Sequence[int], x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    # -- tables ---------------------------------------------------------------
    def primitive_element(self) -> int:
        if self._prim is None:
            n = self._n
            if n == 1:
                self._prim = 1
            else:
                cofactors = [n // ell for ell in sympy.primefactors(n)]
                powf = self._pow_slow
                for g in range(1, self.q):
                    if all(powf(g, c) != 1 for c in cofactors):
                        self._prim = g
                        break
        return self._prim

    def _pow_slow(self, a, k):
        if self.e == 1:
            return pow(a, k, self.p)
        result = 1
        while k:
            if k & 1:
                result = self._mul_slow(result, a)
            k >>= 1
            if k:
                a = self._mul_slow(a, a)
        return result

    def _build_tables(self):
        g = self.primitive_element()
        n = self._n
        exp = [0] * n
        log = [-1] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        zech = None
        if self.p != 2:
            p = self.p
            zech = [-1] * n
            for i, v in enumerate(exp):
                # adding 1 only touches the constant digit
                s = v + 1 if v % p != p - 1 else v - (p - 1)
                zech[i] = log[s] if s else -1
        self._exp, self._log, self._zech = exp, log, zech

    # -- towers ---------------------------------------------------------------
    def extension(self, d: int) -> "FieldCtx":
        """GF(q^d) over the prime field, default modulus."""
        return GF(self.p, self.e * d)

    def enumerate(self, budget: int | None = None) -> Iterator["FieldElem"]:
        return enumerate_field(self, budget)


def GF(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Cached field constructor: one shared object per distinct field,
    whether or not the modulus was spelled out."""
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _gf_cached(p, e, modulus)


@lru_cache(maxsize=None)
def _gf_cached(p, e, modulus):
    ctx = FieldCtx(p, e, modulus)
    if modulus is not None and ctx.modulus == smallest_irreducible(p, e):
        return _gf_cached(p, e, None)
    return ctx


def ctx_new(p: int, e: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    return GF(p, e, tuple(modulus) if modulus is not None else None)


class FieldElem:
    """An element of a :class:`FieldCtx`."""

    __slots__ = ("ctx", "n")

    def __init__(self, ctx: FieldCtx, n: int):
        self.ctx = ctx
        self.n = n

    @property
    def coeffs(self) -> list[int]:
        return self.ctx.digits(self.n)

    def _other(self, b) -> int:
        if isinstance(b, FieldElem):
            if b.ctx is not self.ctx and b.ctx != self.ctx:
                raise CtxMismatch(f"{self.ctx} vs {b.ctx}")
            return b.n
        if isinstance(b, int):
            return b % self.ctx.p
        return NotImplemented

    def __add__(self, b):
        m = self._other(b)
        if m is NotImplemented:
            return m
        return FieldElem(self.ctx, self.ctx.add(self.n, m))

    __radd__ = __add__

    def __sub__(self, b):
        m = self._other(b)
        if m is NotImplemented:
            return m
        return FieldElem(self.ctx, self.ctx.sub(self.n, m))

    def __rsub__(self, b):
        m = self._other(b)
        if m is NotImplemented:
            return m
        return FieldElem(self.ctx, self.ctx.sub(m, self.n))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.n))

    def __mul__(self, b):
        m = self._other(b)
        if m is NotImplemented:
            return m
        return FieldElem(self.ctx, self.ctx.mul(self.n, m))

    __rmul__ = __mul__

    def __truediv__(self, b):
        m = self._other(b)
        if m is NotImplemented:
            return m
        return FieldElem(self.ctx, self.ctx.div(self.n, m))

    def __rtruediv__(self, b):
        m = self._other(b)
        if m is NotImplemented:
            return m
        return FieldElem(self.ctx, self.ctx.div(m, self.n))

    def __pow__(self, k: int):
        return FieldElem(self.ctx, self.ctx.pow(self.n, k))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.n))

    def frobenius(self, m: int = 1, r: int = 1) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.frob(self.n, r * m))

    def trace(self) -> int:
        return self.ctx.trace(self.n)

    def __eq__(self, b):
        if isinstance(b, FieldElem):
            return self.n == b.n and (self.ctx is b.ctx or self.ctx == b.ctx)
        if isinstance(b, int):
            return self.n == b % self.ctx.p
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.n))

    def __bool__(self):
        return self.n != 0

    def __repr__(self):
        return f"{self.ctx!r}({self})"

    def __str__(self):
        from .parsing import format_elem

        return format_elem(self.ctx, self.n)


def arith(op: str, a: FieldElem, b) -> FieldElem:
    """Named dispatch onto the operators: add, sub, mul, div, pow."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a**b
    raise ValueError(f"unknown operation {op!r}")


def frobenius(a: FieldElem, m: int, r: int = 1) -> FieldElem:
    """a^((p^r)^m)."""
    if m < 0 or r < 1:
        raise ValueError("need m >= 0 and r >= 1")
    return a.frobenius(m, r)


def trace_to_prime(a: FieldElem) -> int:
    return a.ctx.trace(a.n)


def galois_orbit(a: FieldElem, r: int = 1) -> frozenset[FieldElem]:
    """Orbit of a under the p^r-power Frobenius."""
    ctx = a.ctx
    out = [a.n]
    b = ctx.frob(a.n, r)
    while b != a.n:
        out.append(b)
        b = ctx.frob(b, r)
    return frozenset(FieldElem(ctx, n) for n in out)


def enumerate_field(ctx: FieldCtx, budget: int | None = None) -> Iterator[FieldElem]:
    """All q elements, in encoding order."""
    if budget is None:
        budget = default_budget()
    if ctx.q > budget:
        raise BudgetExceeded(f"{ctx} has {ctx.q} elements, budget is {budget}")
    return (FieldElem(ctx, n) for n in range(ctx.q))


class Embedding:
    """The field map src -> dst sending the generator w of src to a chosen
    root of src's modulus inside dst.  Requires src.e | dst.e."""

    def __init__(self, src: FieldCtx, dst: FieldCtx):
        if src.p != dst.p or dst.e % src.e:
            raise CtxMismatch(f"{src} does not embed in {dst}")
        self.src = src
        self.dst = dst
        self.root = _find_root_of_modulus(src, dst)
        images = [1]
        for _ in range(src.e - 1):
            images.append(dst.mul(images[-1], self.root))
        self._basis = images
        self._table = None
        self._inverse = None
        if src.q <= TABLE_CAP:
            self._table = [self._map_slow(n) for n in range(src.q)]

    def _map_slow(self, n: int) -> int:
        dst = self.dst
        acc = 0
        for c, img in zip(self.src.digits(n), self._basis):
            if c:
                acc = dst.add(acc, dst.mul(c, img))
        return acc

    def map_int(self, n: int) -> int:
        if self._table is not None:
            return self._table[n]
        return self._map_slow(n)

    def __call__(self, a) -> FieldElem:
        if isinstance(a, int):
            a = self.src.elem(a)
        self.src.check(a)
        return FieldElem(self.dst, self.map_int(a.n))

    def preimage_int(self, m: int) -> int | None:
        """Source encoding of a dst element lying in the image, else None."""
        if self._inverse is None:
            if self.src.q > TABLE_CAP:
                raise BudgetExceeded("inverse embedding table too large")
            self._inverse = {self.map_int(n): n for n in range(self.src.q)}
        return self._inverse.get(m)


def _find_root_of_modulus(src: FieldCtx, dst: FieldCtx) -> int:
    mod = src.modulus
    if src.e == 1:
        return (-mod[0]) % src.p
    if src == dst:
        return src.p
    # the roots lie in the subgroup of order q-1 of dst^*
    gamma = dst.primitive_element()
    eta = dst.pow(gamma, (dst.q - 1) // (src.q - 1))
    cand = 1
    for _ in range(src.q - 1):
        cand = dst.mul(cand, eta)
        if dst.horner(mod, cand) == 0:
            return cand
    raise AssertionError("modulus has no root in the extension")


@lru_cache(maxsize=None)
def embedding(src: FieldCtx, dst: FieldCtx) -> Embedding:
    return Embedding(src, dst)


def compositum(a: FieldCtx, b_degree: int) -> FieldCtx:
    """Smallest default-modulus field containing both a and GF(p^b_degree)."""
    return GF(a.p, math.lcm(a.e, b_degree))
