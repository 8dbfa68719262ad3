"""Arithmetic in F_{p^m} with a designated subfield tower F_{q^s}/F_q.

Elements are plain integers in ``[0, p^m)``: the base-p digits are the
coefficients of the element as a polynomial in the primitive element ``z``
(digit i is the coefficient of z^i).  Prime-subfield elements therefore
coincide with their integer value, so ``2`` is the field element 2.

Multiplication goes through log/antilog tables.  Every operation accepts
either Python ints or numpy integer arrays and broadcasts like numpy.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

# (p, m) -> modulus coefficients c_0..c_m (monic, c_m = 1)
DEFAULT_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),        # z^2 + z + 1
    (2, 3): (1, 1, 0, 1),     # z^3 + z + 1
    (2, 4): (1, 1, 0, 0, 1),  # z^4 + z + 1
    (3, 2): (2, 1, 1),        # z^2 + z + 2
    (3, 3): (1, 2, 0, 1),     # z^3 - z + 1
    (5, 2): (2, 4, 1),        # z^2 - z + 2
}

ADD_TABLE_LIMIT = 1024
MAX_ORDER = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod(a: list[int], mod: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        if c:
            shift = len(a) - 1 - dm
            for i, mc in enumerate(mod):
                a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Brute-force irreducibility test: no monic factor of degree <= m/2."""
    m = len(modulus) - 1
    if m < 1 or modulus[-1] % p == 0:
        return False
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            rem = _poly_mod(list(modulus), list(low) + [1], p)
            if not any(rem):
                return False
    return True


def _find_primitive_modulus(p: int, m: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=m):
        mod = tuple(low) + (1,)
        if low[0] == 0 or not is_irreducible(mod, p):
            continue
        try:
            _exp_table(p, m, mod)
        except FieldError:
            continue
        return mod
    raise FieldError(f"no primitive modulus found for p={p}, m={m}")


def _exp_table(p: int, m: int, modulus: Sequence[int]) -> np.ndarray:
    order = p**m - 1
    # multiplication by z on coefficient vectors: shift up, reduce z^m
    inv_lead = pow(modulus[-1], p - 2, p)
    red = [(-c * inv_lead) % p for c in modulus[:-1]]
    exp = np.zeros(order, dtype=np.int64)
    vec = [1] + [0] * (m - 1)
    weights = [p**i for i in range(m)]
    for e in range(order):
        val = sum(c * w for c, w in zip(vec, weights))
        if e > 0 and val == 1:
            raise FieldError(f"z has order {e} < {order}; modulus is not primitive")
        exp[e] = val
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            vec = [(v + top * r) % p for v, r in zip(vec, red)]
    return exp


@dataclass(frozen=True, eq=False)
class Field:
    """F_{p^m} together with the tower F_{q^s}/F_q, q^s = p^m."""

    p: int
    m: int
    modulus: tuple[int, ...]
    q: int
    s: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def zeta(self) -> int:
        return int(self.exp[1 % (self.order - 1)])

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m, self.modulus, self.q, self.s) == (
            other.p, other.m, other.modulus, other.q, other.s)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus, self.q, self.s))

    # -- tables --------------------------------------------------------------

    @cached_property
    def _digits(self) -> np.ndarray:
        """(order, m) array of base-p coefficient vectors."""
        x = np.arange(self.order)
        return np.stack([(x // self.p**i) % self.p for i in range(self.m)], axis=1)

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    @cached_property
    def _add_table(self) -> np.ndarray | None:
        if self.order > ADD_TABLE_LIMIT:
            return None
        d = self._digits
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return s @ self._weights

    @cached_property
    def _neg_table(self) -> np.ndarray:
        return ((-self._digits) % self.p) @ self._weights

    @cached_property
    def mul_matrices(self) -> np.ndarray:
        """(order, m, m) F_p matrices M_a with digits(a*x) = M_a @ digits(x)."""
        basis = np.array([self.p**i for i in range(self.m)])
        cols = self.mul(np.arange(self.order)[:, None], basis[None, :])
        return np.transpose(self._digits[cols], (0, 2, 1))

    @cached_property
    def _trace_table(self) -> np.ndarray:
        x = np.arange(self.order)
        acc = np.zeros_like(x)
        for i in range(self.s):
            acc = self.add(acc, self.pow(x, self.q**i))
        return acc

    @cached_property
    def _norm_table(self) -> np.ndarray:
        return self.pow(np.arange(self.order), (self.q**self.s - 1) // (self.q - 1))

    # -- element arithmetic --------------------------------------------------

    def add(self, x, y):
        if self._add_table is not None:
            return _out(self._add_table[x, y])
        x, y = np.asarray(x), np.asarray(y)
        if self.p == 2:
            return _out(x ^ y)
        d = (self._digits[x] + self._digits[y]) % self.p
        return _out(d @ self._weights)

    def neg(self, x):
        return _out(self._neg_table[x])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        x, y = np.asarray(x), np.asarray(y)
        e = (self.log[x] + self.log[y]) % (self.order - 1)
        r = np.where((x == 0) | (y == 0), 0, self.exp[e])
        return _out(r)

    def inv(self, x):
        x = np.asarray(x)
        if np.any(x == 0):
            raise ZeroDivisionError("inverse of zero in finite field")
        return _out(self.exp[(-self.log[x]) % (self.order - 1)])

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def pow(self, x, k: int):
        x = np.asarray(x)
        k = int(k)
        if k == 0:
            return _out(np.ones_like(x))
        if k < 0:
            x, k = np.asarray(self.inv(x)), -k
        e = (self.log[x] * (k % (self.order - 1))) % (self.order - 1)
        return _out(np.where(x == 0, 0, self.exp[e]))

    def z(self, e: int) -> int:
        """The element zeta^e."""
        return int(self.exp[e % (self.order - 1)])

    def frob(self, x):
        """x -> x^q, the Frobenius of the tower's base field."""
        return self.pow(x, self.q)

    def trace(self, x):
        return _out(self._trace_table[x])

    def norm(self, x):
        return _out(self._norm_table[x])

    # -- ordering and display ------------------------------------------------

    def order_key(self, x: int) -> int:
        """Canonical order: 0 first, then zeta^0, zeta^1, ..."""
        return -1 if x == 0 else int(self.log[x])

    def elements(self) -> list[int]:
        """All elements in canonical order."""
        return [0] + [int(v) for v in self.exp]

    def subfield(self) -> list[int]:
        """Elements of F_q in canonical order."""
        return [x for x in self.elements() if self.pow(x, self.q) == x]

    def fmt(self, x: int) -> str:
        return "0" if x == 0 else f"z^{int(self.log[x])}"

    def parse(self, text: str) -> int:
        t = text.strip().replace("ζ", "z").replace(" ", "")
        if t in ("0",):
            return 0
        if t in ("1", "z^0"):
            return 1
        if t == "z":
            return self.z(1)
        if t.startswith("z^"):
            return self.z(int(t[2:].strip("{}")))
        raise FieldError(f"cannot parse field element {text!r}")

    def kernel_sets(self) -> tuple[list[int], list[int]]:
        """(ker Tr, ker N) in canonical order; ker N means the norm-one group."""
        ker_tr = [x for x in self.elements() if self.trace(x) == 0]
        ker_n = [x for x in self.elements() if x != 0 and self.norm(x) == 1]
        return ker_tr, ker_n

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus), "q": self.q, "s": self.s}

    @classmethod
    def from_json(cls, d: dict | str) -> "Field":
        if isinstance(d, str):
            d = json.loads(d)
        return make_field(d["p"], d["m"], d.get("modulus"), q=d.get("q"))


def _out(r):
    r = np.asarray(r)
    return int(r) if r.ndim == 0 else r


def make_field(p: int, m: int, modulus: Iterable[int] | None = None, q: int | None = None) -> Field:
    """Build F_{p^m} whose designated primitive element is the root z of ``modulus``.

    ``q`` picks the base of the tower (q^s = p^m); it defaults to p.
    """
    if not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    if p**m > MAX_ORDER:
        raise FieldError(f"field order {p**m} exceeds {MAX_ORDER}")
    if modulus is None:
        mod = DEFAULT_MODULI.get((p, m)) or _find_primitive_modulus(p, m)
    else:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != m + 1:
            raise FieldError(f"modulus must have {m + 1} coefficients")
        if not is_irreducible(mod, p):
            raise FieldError(f"modulus {mod} is reducible over F_{p}")
    q = p if q is None else q
    s = 1
    while q**s < p**m:
        s += 1
    if q < p or q**s != p**m:
        raise FieldError(f"q={q} does not give a tower of F_{p}^{m}")
    exp = _exp_table(p, m, mod)
    log = np.full(p**m, -1, dtype=np.int64)
    log[exp] = np.arange(p**m - 1)
    return Field(p, m, mod, q, s, exp, log)


def field_for_tower(q: int, s: int) -> Field:
    """F_{q^s} with its default modulus and tower base q."""
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            a = 0
            while p**a < q:
                a += 1
            if p**a != q:
                break
            return make_field(p, a * s, q=q)
    raise FieldError(f"q={q} is not a prime power")
