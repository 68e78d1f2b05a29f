"""Exact integer, rational, polynomial and matrix kernels.

Rationals are :class:`fractions.Fraction`; Python integers are already
arbitrary precision, so nothing here ever touches fixed-width arithmetic.
Polynomials are little-endian (constant term first).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

BigRat = Fraction


class SingularMatrix(ValueError):
    pass


class DegreeTooSmall(ValueError):
    pass


class NotSquarefreeModP(ValueError):
    pass


class BadPrime(ValueError):
    pass


# ---------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # Miller-Rabin; these witnesses are deterministic below 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than ``n``."""
    n += 1
    while not is_prime(n):
        n += 1
    return n


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization of ``|n|``; fine for the sizes used here."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> list[int]:
    return sorted(factorize(n))


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorize(n).items():
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorize(n).values())


def squarefree_part(q: int | Fraction) -> int:
    """The squarefree integer ``s`` with ``q = s * r**2`` for some rational r."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("0 has no squarefree part")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    s = 1
    for p, e in factorize(n).items():
        if e % 2:
            s *= p
    return sign * s


def is_square(q: int | Fraction) -> Fraction | None:
    """Nonnegative rational square root of ``q``, or None if there is none."""
    q = Fraction(q)
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        flat = []
        for r in rows:
            for x in r:
                x = Fraction(x)
                if x.denominator != 1:
                    raise ValueError(f"non-integer entry {x}")
                flat.append(int(x))
        return cls(len(rows), ncols, tuple(flat))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([list(col) for col in zip(*self.tolist())])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        b = other.tolist()
        return IntMatrix.from_rows(
            [[sum(x * b[k][j] for k, x in enumerate(row)) for j in range(other.cols)]
             for row in self.tolist()])

    def mod(self, n: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(x % n for x in self.entries))

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == int(i == j) for i in range(self.rows) for j in range(self.cols))

    def det(self) -> int:
        return int(det(self.tolist()))


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        result *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * result


def mat_inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [[sum(x * b[k][j] for k, x in enumerate(row)) for j in range(len(b[0]))]
            for row in a]


def hnf(M: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], int]:
    """Row Hermite normal form with unimodular transform.

    Returns ``(H, U, sign)`` with ``U @ M == H``, H in upper echelon form with
    positive pivots and entries above each pivot reduced into ``[0, pivot)``,
    zero rows last, and ``sign = det(U)``.
    """
    H = [[int(x) for x in r] for r in M]
    m = len(H)
    n = len(H[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    sign = 1
    r = 0
    for col in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(H[i][col]))
            if p != r:
                H[r], H[p] = H[p], H[r]
                U[r], U[p] = U[p], U[r]
                sign = -sign
            clean = True
            for i in range(r + 1, m):
                if H[i][col]:
                    q = H[i][col] // H[r][col]
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    clean = clean and H[i][col] == 0
            if clean:
                break
        if not H[r][col]:
            continue
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
            sign = -sign
        for i in range(r):
            q = H[i][col] // H[r][col]
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U, sign


def hnf_and_det(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, int]:
    """HNF ``H``, unimodular ``U`` with ``U @ M == H``, and ``det(M)``."""
    if M.rows != M.cols:
        raise ValueError("matrix must be square")
    H, U, sign = hnf(M.tolist())
    n = M.rows
    if any(H[i][i] == 0 for i in range(n)):
        raise SingularMatrix("matrix is rank deficient")
    d = sign * math.prod(H[i][i] for i in range(n))
    return IntMatrix.from_rows(H), IntMatrix.from_rows(U), d


class Lattice:
    """Full-rank Z-lattice in Q^n given by rational generators.

    Generators are scaled by a common denominator and brought to HNF once;
    membership and coordinates are then forward substitutions.
    """

    def __init__(self, gens: Iterable[Sequence]):
        gens = [[Fraction(x) for x in g] for g in gens]
        self.dim = len(gens[0])
        self.denom = reduce(math.lcm, (x.denominator for g in gens for x in g), 1)
        ints = [[int(x * self.denom) for x in g] for g in gens]
        H, _, _ = hnf(ints)
        self.hnf = [r for r in H if any(r)]
        if len(self.hnf) != self.dim:
            raise SingularMatrix("generators do not span a full-rank lattice")

    def basis(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.denom) for x in r] for r in self.hnf]

    def covolume(self) -> Fraction:
        return Fraction(math.prod(self.hnf[i][i] for i in range(self.dim)),
                        self.denom ** self.dim)

    def hnf_coords(self, v: Sequence) -> list[int] | None:
        w = [Fraction(x) * self.denom for x in v]
        if any(x.denominator != 1 for x in w):
            return None
        w = [int(x) for x in w]
        c = []
        for i, row in enumerate(self.hnf):
            q, r = divmod(w[i], row[i])
            if r:
                return None
            c.append(q)
            w = [x - q * y for x, y in zip(w, row)]
        return c

    def __contains__(self, v: Sequence) -> bool:
        return self.hnf_coords(v) is not None


def lattice_coordinates(basis: Sequence[Sequence], v: Sequence) -> list[int] | None:
    """Integer coordinates of ``v`` in the rational basis ``basis`` (via HNF), or None."""
    basis = [[Fraction(x) for x in r] for r in basis]
    den = reduce(math.lcm, (x.denominator for r in basis for x in r), 1)
    M = [[int(x * den) for x in r] for r in basis]
    H, U, _ = hnf(M)
    if any(H[i][i] == 0 for i in range(len(M))):
        raise SingularMatrix("basis is singular")
    w = [Fraction(x) * den for x in v]
    if any(x.denominator != 1 for x in w):
        return None
    w = [int(x) for x in w]
    c = []
    for i, row in enumerate(H):
        q, r = divmod(w[i], row[i])
        if r:
            return None
        c.append(q)
        w = [x - q * y for x, y in zip(w, row)]
    # v = c H = c U M
    return [sum(c[k] * U[k][j] for k in range(len(c))) for j in range(len(c))]


# ---------------------------------------------------------------------------
# polynomials over Q


class UniPoly:
    """Immutable univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_monic(self) -> bool:
        return self.lc == 1

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            body = str(mag) if (mag != 1 or k == 0) else ""
            if body and mono:
                body += "*"
            terms.append(("-" if c < 0 else "+", body + mono))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, t in terms[1:]:
            s += f" {sign} {t}"
        return s

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = UniPoly([1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(r) - len(other.coeffs) + 1
        if dq <= 0:
            return UniPoly(), self
        q = [Fraction(0)] * dq
        inv = 1 / other.lc
        for k in range(dq - 1, -1, -1):
            c = r[k + other.degree] * inv
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[k + j] -= c * b
        return UniPoly(q), UniPoly(r[:other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "UniPoly":
        return UniPoly(c / self.lc for c in self.coeffs)

    def content(self) -> Fraction:
        """Positive rational content, so that ``self / content`` is primitive integral."""
        if not self.coeffs:
            return Fraction(0)
        num = reduce(math.gcd, (c.numerator for c in self.coeffs))
        den = reduce(math.lcm, (c.denominator for c in self.coeffs))
        return Fraction(num, den)

    def primitive(self) -> "UniPoly":
        c = self.content()
        p = UniPoly(x / c for x in self.coeffs)
        return -p if p.lc < 0 else p

    def compose_scale(self, a) -> "UniPoly":
        """``self(a*x)``."""
        a = Fraction(a)
        return UniPoly(c * a**k for k, c in enumerate(self.coeffs))

    def shift(self, a) -> "UniPoly":
        """``self(x + a)``."""
        out = UniPoly()
        lin = UniPoly([a, 1])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out


def _as_poly(x) -> UniPoly:
    return x if isinstance(x, UniPoly) else UniPoly([x])


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero if both are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def resultant(f: UniPoly, g: UniPoly) -> Fraction:
    """Resultant as the determinant of the Sylvester matrix."""
    m, n = f.degree, g.degree
    if m < 0 or n < 0:
        return Fraction(0)
    if m == 0 and n == 0:
        return Fraction(1)
    fb = list(reversed(f.coeffs))
    gb = list(reversed(g.coeffs))
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + fb + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gb + [0] * (size - n - 1 - i))
    return det(rows)


def poly_disc(f: UniPoly) -> Fraction:
    """Discriminant ``(-1)^(n(n-1)/2) Res(f, f') / lc(f)``."""
    n = f.degree
    if n < 2:
        raise DegreeTooSmall(f"discriminant needs degree >= 2, got {n}")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def rational_roots(f: UniPoly) -> list[Fraction]:
    """All rational roots with multiplicity, ascending."""
    if f.is_zero():
        raise ValueError("zero polynomial has every root")
    g = [int(c) for c in f.primitive().coeffs]
    roots: list[Fraction] = []
    while g and g[0] == 0:
        roots.append(Fraction(0))
        g = g[1:]
    if len(g) <= 1:
        return sorted(roots)
    cands = set()
    for p in divisors(g[0]):
        for q in divisors(g[-1]):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    h = UniPoly(g)
    for r in sorted(cands):
        lin = UniPoly([-r, 1])
        while h.degree >= 1:
            quo, rem = divmod(h, lin)
            if not rem.is_zero():
                break
            roots.append(r)
            h = quo
    return sorted(roots)


def power_sums(f: UniPoly, count: int) -> list[Fraction]:
    """Power sums ``p_0..p_count`` of the roots of ``f`` (Newton's identities)."""
    f = f.monic()
    n = f.degree
    # e_k with sign: f = x^n + a_{n-1} x^{n-1} + ... ; a_{n-k} = (-1)^k e_k
    a = [f.coeffs[n - k] if k <= n else Fraction(0) for k in range(count + 1)]
    p = [Fraction(n)]
    for k in range(1, count + 1):
        s = -k * a[k] if k <= n else Fraction(0)
        for i in range(1, k):
            if i <= n:
                s -= a[i] * p[k - i]
        p.append(s)
    return p


def poly_from_power_sums(p: Sequence[Fraction], n: int) -> UniPoly:
    """Monic degree-``n`` polynomial whose roots have power sums ``p[1..n]``."""
    a = [Fraction(1)]  # a[k] = coefficient of x^(n-k)
    for k in range(1, n + 1):
        s = p[k]
        for i in range(1, k):
            s += a[i] * p[k - i]
        a.append(-s / k)
    return UniPoly(reversed(a))


# ---------------------------------------------------------------------------
# polynomials over F_p (little-endian int lists)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def fp_reduce(a: Sequence[int], p: int) -> list[int]:
    return _trim([x % p for x in a])


def fp_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_reduce(out, p)


def fp_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return fp_reduce([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                      for i in range(n)], p)


def fp_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = fp_reduce(a, p)
    b = fp_reduce(b, p)
    if not b:
        raise ZeroDivisionError("division by zero polynomial mod p")
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] = (a[k + j] - c * y) % p
    return _trim(q), _trim(a[:len(b) - 1])


def fp_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = fp_reduce(a, p), fp_reduce(b, p)
    while b:
        a, b = b, fp_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def fp_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = fp_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = fp_divmod(fp_mul(result, base, p), mod, p)[1]
        base = fp_divmod(fp_mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def fp_derivative(a: Sequence[int], p: int) -> list[int]:
    return fp_reduce([k * c for k, c in enumerate(a)][1:], p)


def _check_mod_p_input(f: UniPoly, p: int) -> list[int]:
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    coeffs = f.int_coeffs()
    if coeffs[-1] % p == 0:
        raise BadPrime(f"{p} divides the leading coefficient")
    return fp_reduce(coeffs, p)


def factor_degrees_mod_p(f: UniPoly, p: int) -> tuple[int, ...]:
    """Degrees of the irreducible factors of ``f`` mod ``p`` (ascending) by
    distinct-degree splitting. ``f`` must be squarefree mod ``p``."""
    a = _check_mod_p_input(f, p)
    if len(a) <= 1:
        return ()
    if len(fp_gcd(a, fp_derivative(a, p), p)) > 1:
        raise NotSquarefreeModP(f"not squarefree mod {p}")
    inv = pow(a[-1], -1, p)
    a = [x * inv % p for x in a]
    degs: list[int] = []
    h = [0, 1]
    d = 0
    while len(a) - 1 >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, a, p)
        g = fp_gcd(fp_sub(h, [0, 1], p), a, p)
        if len(g) > 1:
            degs += [d] * ((len(g) - 1) // d)
            a = fp_divmod(a, g, p)[0]
            h = fp_divmod(h, a, p)[1]
    if len(a) > 1:
        degs.append(len(a) - 1)
    return tuple(sorted(degs))


def _fp_irreducibles(deg: int, p: int):
    """Monic irreducible polynomials of degree ``deg`` over F_p, by exhaustion."""
    for n in range(p**deg):
        low = [(n // p**i) % p for i in range(deg)]
        cand = low + [1]
        if deg == 1:
            yield cand
            continue
        try:
            if factor_degrees_mod_p(UniPoly(cand), p) == (deg,):
                yield cand
        except NotSquarefreeModP:
            continue


def factor_mod_p(f: UniPoly, p: int) -> list[tuple[list[int], int]]:
    """Full factorization mod ``p`` into monic irreducibles with multiplicities,
    by trial division. Intended for small ``p`` and small degree."""
    a = _check_mod_p_input(f, p)
    inv = pow(a[-1], -1, p)
    a = [x * inv % p for x in a]
    out: list[tuple[list[int], int]] = []
    d = 1
    while len(a) - 1 >= 2 * d:
        for g in _fp_irreducibles(d, p):
            e = 0
            while True:
                q, r = fp_divmod(a, g, p)
                if r:
                    break
                a, e = q, e + 1
            if e:
                out.append((g, e))
        d += 1
    if len(a) > 1:
        out.append((a, 1))
    return out
