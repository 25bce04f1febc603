"""Truncated multivariate Taylor (jet) arithmetic.

A ``Jet`` stores, for every monomial in ``n`` variables up to total degree
``order``, the Taylor coefficient of a quantity expanded around a base point.
Propagating jets through ordinary formula code yields all mixed partial
derivatives up to ``order`` with no truncation or cancellation error beyond
roundoff, which is what makes nested Lie brackets of the swimmer force
fields computable to machine precision: each bracket consumes one derivative
order, so order-3 jets of the base fields support bracket words of depth 3.

Jets broadcast over leading array axes, so a batch of quadrature nodes can
be pushed through kernel formulas in one call.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

_TABLE_CACHE: dict[tuple[int, int], "TaylorTable"] = {}


@dataclass(frozen=True)
class TaylorTable:
    """Monomial basis and product/derivative index tables for (n, order)."""

    n: int
    order: int
    monomials: tuple[tuple[int, ...], ...]
    index: dict
    mul_i: np.ndarray
    mul_j: np.ndarray
    mul_starts: np.ndarray  # reduceat segment starts, one per monomial
    diff_maps: tuple  # per variable: (src, dst, factor)

    @property
    def size(self) -> int:
        return len(self.monomials)


def taylor_table(n: int, order: int) -> TaylorTable:
    key = (n, order)
    if key in _TABLE_CACHE:
        return _TABLE_CACHE[key]
    monos = []
    for deg in range(order + 1):
        monos.extend(sorted(itertools.combinations_with_replacement(range(n), deg)))
    index = {m: i for i, m in enumerate(monos)}
    tri = []
    for i, mi in enumerate(monos):
        for j, mj in enumerate(monos):
            if len(mi) + len(mj) <= order:
                tri.append((index[tuple(sorted(mi + mj))], i, j))
    tri.sort()
    ks = np.array([t[0] for t in tri])
    mul_i = np.array([t[1] for t in tri])
    mul_j = np.array([t[2] for t in tri])
    # every monomial k occurs (at least as 1 * x^k), so segment starts cover 0..M-1
    starts = np.searchsorted(ks, np.arange(len(monos)))
    diffs = []
    for v in range(n):
        src, dst, fac = [], [], []
        for i, m in enumerate(monos):
            if v in m:
                lst = list(m)
                lst.remove(v)
                src.append(i)
                dst.append(index[tuple(lst)])
                fac.append(float(m.count(v)))
        diffs.append((np.array(src, dtype=int), np.array(dst, dtype=int),
                      np.array(fac)))
    table = TaylorTable(n, order, tuple(monos), index, mul_i, mul_j, starts,
                        tuple(diffs))
    _TABLE_CACHE[key] = table
    return table


class Jet:
    """Array-valued truncated Taylor expansion.

    ``data`` has shape ``batch_shape + (table.size,)``; entry 0 is the value
    at the expansion point, entries 1..n the gradient, and so on.
    """

    __array_priority__ = 100.0
    __slots__ = ("table", "data")

    def __init__(self, table: TaylorTable, data: np.ndarray):
        self.table = table
        self.data = data

    # -- constructors -------------------------------------------------

    @staticmethod
    def seed(x: np.ndarray, order: int = 3) -> list["Jet"]:
        """Jets for the coordinates of x, each carrying a unit gradient."""
        x = np.asarray(x, dtype=float)
        table = taylor_table(x.size, order)
        out = []
        for v in range(x.size):
            d = np.zeros(table.size)
            d[0] = x[v]
            d[table.index[(v,)]] = 1.0
            out.append(Jet(table, d))
        return out

    @staticmethod
    def constant(table: TaylorTable, value) -> "Jet":
        value = np.asarray(value, dtype=float)
        d = np.zeros(value.shape + (table.size,))
        d[..., 0] = value
        return Jet(table, d)

    # -- basic accessors ----------------------------------------------

    @property
    def shape(self):
        return self.data.shape[:-1]

    @property
    def value(self):
        return self.data[..., 0]

    def gradient(self):
        """First-order coefficients, shape batch + (n,)."""
        n = self.table.n
        return self.data[..., 1:n + 1]

    def __getitem__(self, key):
        if not isinstance(key, tuple):
            key = (key,)
        return Jet(self.table, self.data[key + (slice(None),)])

    def sum(self, axis=None):
        ax = -2 if axis is None else (axis if axis >= 0 else axis - 1)
        return Jet(self.table, self.data.sum(axis=ax))

    # -- ring operations ----------------------------------------------

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(self.table, other)

    def __add__(self, other):
        other = self._lift(other)
        return Jet(self.table, self.data + other.data)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return Jet(self.table, self.data - other.data)

    def __rsub__(self, other):
        other = self._lift(other)
        return Jet(self.table, other.data - self.data)

    def __neg__(self):
        return Jet(self.table, -self.data)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.table, self.data * np.asarray(other)[..., None])
        t = self.table
        prod = self.data[..., t.mul_i] * other.data[..., t.mul_j]
        return Jet(t, np.add.reduceat(prod, t.mul_starts, axis=-1))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return Jet(self.table, self.data / np.asarray(other)[..., None])
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self._lift(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 1:
            raise ValueError("only positive integer powers are supported")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    # -- analytic functions of one jet ---------------------------------

    def _nilpotent(self):
        d = self.data.copy()
        d[..., 0] = 0.0
        return Jet(self.table, d)

    def _compose(self, coeffs):
        """sum_k coeffs[k] * u^k for the nilpotent part u of self."""
        u = self._nilpotent()
        out = Jet.constant(self.table, np.broadcast_to(coeffs[0], self.shape))
        term = None
        for k in range(1, self.table.order + 1):
            term = u if term is None else term * u
            out = out + term * coeffs[k]
        return out

    def reciprocal(self):
        x0 = self.value
        u = Jet(self.table, self.data / x0[..., None])
        inv = 1.0 / x0
        return u._compose([inv, -inv, inv, -inv][: self.table.order + 1])

    def sqrt(self):
        x0 = self.value
        s = np.sqrt(x0)
        u = Jet(self.table, self.data / x0[..., None])
        return u._compose([s, s / 2, -s / 8, s / 16][: self.table.order + 1])

    def sin(self):
        s, c = np.sin(self.value), np.cos(self.value)
        return self._nilpotent()._compose([s, c, -s / 2, -c / 6][: self.table.order + 1])

    def cos(self):
        s, c = np.sin(self.value), np.cos(self.value)
        return self._nilpotent()._compose([c, -s, -c / 2, s / 6][: self.table.order + 1])

    def diff(self, v: int) -> "Jet":
        """Coefficient-wise partial derivative with respect to variable v."""
        src, dst, fac = self.table.diff_maps[v]
        out = np.zeros_like(self.data)
        out[..., dst] = self.data[..., src] * fac
        return Jet(self.table, out)


# -- scalar-polymorphic helpers (accept floats/ndarrays or Jets) --------

def sqrt_sc(x):
    return x.sqrt() if isinstance(x, Jet) else np.sqrt(x)


def sin_sc(x):
    return x.sin() if isinstance(x, Jet) else np.sin(x)


def cos_sc(x):
    return x.cos() if isinstance(x, Jet) else np.cos(x)


def sum_sc(x):
    return x.sum() if isinstance(x, Jet) else np.sum(x, axis=-1)


# -- small dense linear algebra over jets --------------------------------

def jet_stack(jets, axis=0):
    table = jets[0].table
    datas = [j.data if isinstance(j, Jet) else Jet.constant(table, j).data
             for j in jets]
    datas = [np.broadcast_to(d, np.broadcast_shapes(*(x.shape for x in datas)))
             for d in datas]
    return Jet(table, np.stack(datas, axis=axis))


def jet_matmul(a: Jet, b: Jet) -> Jet:
    """Matrix product of 2-D jet matrices."""
    prod = a[:, :, None] * b[None, :, :]
    return prod.sum(axis=1)


def jet_solve(m: Jet, b: Jet) -> Jet:
    """Solve m @ x = b for a square jet matrix m.

    Splits m into its value part m0 and nilpotent remainder and applies the
    finite Neumann series (I + m0^-1 N)^-1 m0^-1; exact at the jet order.
    """
    m0 = m.value
    lu_piv = np.linalg.inv(m0)  # small systems; explicit inverse is fine

    def apply_inv(data):
        return np.einsum("ij,j...->i...", lu_piv, data)

    nil = m._nilpotent()
    x = Jet(m.table, apply_inv(b.data))
    term = x
    for _ in range(m.table.order):
        term = Jet(m.table, -apply_inv(jet_matmul(nil, term).data))
        x = x + term
    return x


def jet_bracket(f: Jet, g: Jet) -> Jet:
    """Lie bracket [f, g] = Dg.f - Df.g of jet-valued vector fields.

    f and g are jets of shape (d,) over d seed variables; the result is
    valid to one order lower than its arguments.
    """
    d = f.shape[0]
    cols = []
    for i in range(d):
        acc = None
        for j in range(d):
            t = g[i].diff(j) * f[j] - f[i].diff(j) * g[j]
            acc = t if acc is None else acc + t
        cols.append(acc)
    return jet_stack(cols)
