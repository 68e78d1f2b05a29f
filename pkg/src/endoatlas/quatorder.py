"""Quaternion algebras B = (D/m, m) over Q, their orders, twists and the
mod-2 conjugation actions on an order's basis.

Orders are rank-4 lattices stored by a basis of quaternions. The Gram
matrix is ``trd(e_s * conj(e_t))`` and the reduced discriminant is the
positive square root of its absolute determinant.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .exactmath import (
    IntMatrix,
    Lattice,
    det,
    hnf,
    is_square,
    is_squarefree,
    lattice_coordinates,
    legendre,
    mat_inverse,
    mat_mul,
    prime_factors,
    squarefree_part,
)

F = Fraction
HALF = F(1, 2)


class QuaternionError(ValueError):
    pass


class PresentationMismatch(QuaternionError):
    pass


class DivisionByZeroNorm(QuaternionError, ZeroDivisionError):
    pass


class CongruenceOutOfScope(QuaternionError):
    pass


class SingularBasis(QuaternionError):
    pass


class NotAnOrder(QuaternionError):
    pass


class NonSquareGramDeterminant(QuaternionError):
    pass


class AlgebraMismatch(QuaternionError):
    pass


class BadPolarization(QuaternionError):
    pass


class DoesNotNormalize(QuaternionError):
    def __init__(self, element: "Quaternion", image: "Quaternion"):
        super().__init__(f"conjugate of {element} is {image}, which is not in the order")
        self.element = element
        self.image = image


# ---------------------------------------------------------------------------
# Hilbert symbols


def _split_p(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a: int, b: int, p: int) -> int:
    """Hilbert symbol ``(a, b)_p`` for nonzero integers and a prime ``p``."""
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    alpha, u = _split_p(a, p)
    beta, v = _split_p(b, p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2
        omega = lambda t: ((t * t - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre(u, p) ** beta * legendre(v, p) ** alpha


def algebra_discriminant(D: int, m: int) -> frozenset[int]:
    """Primes ramified in ``(D/m, m)``; raises unless their product is ``D``."""
    _check_presentation(D, m)
    a, b = D // m, m
    primes = set(prime_factors(2 * D))
    ramified = frozenset(p for p in primes if hilbert_symbol(a, b, p) == -1)
    if math.prod(ramified) != D:
        raise PresentationMismatch(
            f"({a}, {b}) ramifies at {sorted(ramified)}, product {math.prod(ramified)} != {D}")
    return ramified


def _check_presentation(D: int, m: int) -> None:
    if D <= 0 or not is_squarefree(D):
        raise QuaternionError(f"D = {D} must be a positive squarefree integer")
    if m <= 0 or D % m:
        raise QuaternionError(f"m = {m} must be a positive divisor of D = {D}")


@dataclass(frozen=True)
class QuatAlgebra:
    D: int
    m: int

    def __post_init__(self):
        algebra_discriminant(self.D, self.m)

    @property
    def i_sq(self) -> Fraction:
        return F(self.D, self.m)

    @property
    def j_sq(self) -> Fraction:
        return F(self.m)

    @cached_property
    def ramified_primes(self) -> frozenset[int]:
        return algebra_discriminant(self.D, self.m)

    def elem(self, a=0, b=0, c=0, d=0) -> "Quaternion":
        return Quaternion(self, F(a), F(b), F(c), F(d))

    @property
    def one(self) -> "Quaternion":
        return self.elem(1)

    @property
    def i(self) -> "Quaternion":
        return self.elem(0, 1)

    @property
    def j(self) -> "Quaternion":
        return self.elem(0, 0, 1)

    @property
    def k(self) -> "Quaternion":
        return self.elem(0, 0, 0, 1)

    def __str__(self):
        return f"({self.D // self.m}, {self.m})"


@dataclass(frozen=True)
class Quaternion:
    alg: QuatAlgebra = field(repr=False)
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def _same(self, other: "Quaternion") -> None:
        if other.alg != self.alg:
            raise AlgebraMismatch("quaternions from different algebras")

    def _lift(self, other) -> "Quaternion":
        if isinstance(other, Quaternion):
            self._same(other)
            return other
        return self.alg.elem(other)

    def __add__(self, other):
        o = self._lift(other)
        return Quaternion(self.alg, *(x + y for x, y in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(self.alg, -self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Quaternion):
            s = F(other)
            return Quaternion(self.alg, *(s * x for x in self.coords))
        self._same(other)
        al, be = self.alg.i_sq, self.alg.j_sq
        a1, b1, c1, d1 = self.coords
        a2, b2, c2, d2 = other.coords
        return Quaternion(
            self.alg,
            a1 * a2 + al * b1 * b2 + be * c1 * c2 - al * be * d1 * d2,
            a1 * b2 + b1 * a2 - be * c1 * d2 + be * d1 * c2,
            a1 * c2 + c1 * a2 + al * b1 * d2 - al * d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2,
        )

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, Quaternion):
            return self * other.inverse()
        return self * (1 / F(other))

    def conj(self) -> "Quaternion":
        return Quaternion(self.alg, self.a, -self.b, -self.c, -self.d)

    def trd(self) -> Fraction:
        return 2 * self.a

    def nrd(self) -> Fraction:
        al, be = self.alg.i_sq, self.alg.j_sq
        return self.a**2 - al * self.b**2 - be * self.c**2 + al * be * self.d**2

    def inverse(self) -> "Quaternion":
        n = self.nrd()
        if n == 0:
            raise DivisionByZeroNorm(f"{self} has reduced norm 0")
        return self.conj() * (1 / n)

    def is_integral(self) -> bool:
        return self.trd().denominator == 1 and self.nrd().denominator == 1

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        den = math.lcm(*(x.denominator for x in self.coords))
        parts = []
        for x, sym in zip(self.coords, ("", "i", "j", "k")):
            n = x * den
            if n == 0:
                continue
            mag = abs(n)
            body = sym if (mag == 1 and sym) else f"{mag}{sym}"
            parts.append(("-" if n < 0 else "+", body))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        if den == 1:
            return s
        return f"1/{den}*({s})"


def quat_arith(x: Quaternion, y: Quaternion) -> dict:
    """Ring data for a pair: product, sum, conjugate of x, trd/nrd of x, inverse of x."""
    return {
        "product": x * y,
        "sum": x + y,
        "conjugate": x.conj(),
        "trd": x.trd(),
        "nrd": x.nrd(),
        "inverse": x.inverse(),
    }


# ---------------------------------------------------------------------------
# orders


@dataclass(frozen=True)
class QuatOrder:
    """A rank-4 lattice in a quaternion algebra given by a basis.

    Construction does not check the order axioms; use :func:`is_order`.
    """

    algebra: QuatAlgebra
    basis: tuple[Quaternion, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.basis) != 4:
            raise ValueError("an order needs exactly four basis elements")
        if det(self.basis_matrix) == 0:
            raise SingularBasis("basis is singular")

    @classmethod
    def from_coords(cls, alg: QuatAlgebra, rows: Sequence[Sequence], name: str = "") -> "QuatOrder":
        return cls(alg, tuple(alg.elem(*r) for r in rows), name)

    @cached_property
    def basis_matrix(self) -> list[list[Fraction]]:
        return [list(e.coords) for e in self.basis]

    @cached_property
    def gram_rational(self) -> list[list[Fraction]]:
        return [[(s * t.conj()).trd() for t in self.basis] for s in self.basis]

    @property
    def gram(self) -> IntMatrix:
        g = self.gram_rational
        if any(x.denominator != 1 for r in g for x in r):
            raise NotAnOrder("Gram matrix is not integral")
        return IntMatrix.from_rows(g)

    def coordinates(self, x: Quaternion) -> list[int] | None:
        """Integer coordinates of ``x`` in this basis, or None if ``x`` is not in the lattice."""
        if x.alg != self.algebra:
            raise AlgebraMismatch("element from a different algebra")
        return lattice_coordinates(self.basis_matrix, x.coords)

    def __contains__(self, x: Quaternion) -> bool:
        return self.coordinates(x) is not None

    def element(self, coords: Sequence[int]) -> Quaternion:
        out = self.algebra.elem()
        for c, e in zip(coords, self.basis):
            out = out + e * c
        return out


@dataclass(frozen=True)
class OrderCheck:
    ok: bool
    reason: str = ""
    witness: Quaternion | None = None

    def __bool__(self):
        return self.ok


def is_order(L: QuatOrder) -> OrderCheck:
    """Check the order axioms, returning the first violating element on failure.

    Basis elements are checked for integral trd/nrd first, then 1 and the 16
    basis products for membership.
    """
    for e in L.basis:
        if e.trd().denominator != 1:
            return OrderCheck(False, f"trd({e}) = {e.trd()} is not an integer", e)
        if e.nrd().denominator != 1:
            return OrderCheck(False, f"nrd({e}) = {e.nrd()} is not an integer", e)
    if L.algebra.one not in L:
        return OrderCheck(False, "1 is not in the lattice", L.algebra.one)
    for s, t in itertools.product(L.basis, repeat=2):
        prod = s * t
        if prod not in L:
            return OrderCheck(False, f"({s})*({t}) = {prod} is not in the lattice", prod)
    return OrderCheck(True)


@dataclass(frozen=True)
class Discriminant:
    value: int
    hereditary: bool


def reduced_discriminant(O: QuatOrder) -> Discriminant:
    check = is_order(O)
    if not check:
        raise NotAnOrder(check.reason)
    g = abs(O.gram.det())
    root = is_square(g)
    if root is None:
        raise NonSquareGramDeterminant(f"|det(gram)| = {g} is not a square")
    n = int(root)
    return Discriminant(n, is_squarefree(n))


def standard_order(alg: QuatAlgebra, scale_i: int = 1) -> QuatOrder:
    """The lattice Z[1, s*i, j, k] (an order for every integer ``s``)."""
    return QuatOrder.from_coords(
        alg, [(1, 0, 0, 0), (0, scale_i, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)],
        name=f"Z[1,{'' if scale_i == 1 else scale_i}i,j,k]")


# Closed-form bases, rows are coordinates in 1, i, j, k. Module-level so a test
# harness can corrupt them.
LEMMA_BASES: dict[str, tuple[tuple[Fraction, ...], ...]] = {
    # 2 | D, m = 3 mod 4: 1, (1+j+k)/2, (1+j-k)/2, (i+k)/2
    "O": ((F(1), F(0), F(0), F(0)),
          (HALF, F(0), HALF, HALF),
          (HALF, F(0), HALF, -HALF),
          (F(0), HALF, F(0), HALF)),
    # m = 1 mod 4: 1, (1+j)/2, k, (i+k)/2
    "O_m1": ((F(1), F(0), F(0), F(0)),
             (HALF, F(0), HALF, F(0)),
             (F(0), F(0), F(0), F(1)),
             (F(0), HALF, F(0), HALF)),
    # m = 1, D = 1 mod 4: 1, (1+i)/2, j, (j+k)/2
    "O_1": ((F(1), F(0), F(0), F(0)),
            (HALF, HALF, F(0), F(0)),
            (F(0), F(0), F(1), F(0)),
            (F(0), F(0), HALF, HALF)),
    # m = 1, D = 3 mod 4: 1, (1+k)/2, j, (i+j)/2
    "O_3": ((F(1), F(0), F(0), F(0)),
            (HALF, F(0), F(0), HALF),
            (F(0), F(0), F(1), F(0)),
            (F(0), HALF, HALF, F(0))),
}


def lemma_case(D: int, m: int) -> str:
    if D % 2 == 0 and m % 4 == 3:
        return "3mod4"
    if m % 4 == 1:
        return "1mod4"
    raise CongruenceOutOfScope(
        f"(D, m) = ({D}, {m}): need 2 | D with m = 3 mod 4, or m = 1 mod 4")


def lemma_order(D: int, m: int) -> list[QuatOrder]:
    """Closed-form orders of reduced discriminant D for the supported congruences.

    ``2|D, m = 3 (4)`` gives one order; ``m = 1 (4)`` gives one order when D is
    even and the pair ``[O, O_t]`` when ``D = t (4)``, t in {1, 3}. Every
    returned order has been validated.
    """
    case = lemma_case(D, m)
    alg = QuatAlgebra(D, m)
    if case == "3mod4":
        names = ["O"]
    elif D % 2 == 0:
        names = ["O_m1"]
    else:
        names = ["O_m1", "O_1" if D % 4 == 1 else "O_3"]
    orders = []
    for name in names:
        O = QuatOrder.from_coords(alg, LEMMA_BASES[name], name=name)
        disc = reduced_discriminant(O)
        if disc.value != D:
            raise NotAnOrder(f"{name} has reduced discriminant {disc.value}, expected {D}")
        orders.append(O)
    return orders


def half_integral_closure(D: int, m: int) -> list[Quaternion]:
    """The integral elements among (a + b i + c j + d k)/2, a..d in {0, 1}, not all 0."""
    if m % 2 == 0:
        raise QuaternionError("m must be odd")
    alg = QuatAlgebra(D, m)
    out = []
    for bits in itertools.product((0, 1), repeat=4):
        if any(bits):
            x = alg.elem(*(F(t, 2) for t in bits))
            if x.is_integral():
                out.append(x)
    return out


def order_from_generators(alg: QuatAlgebra, gens: Sequence[Quaternion], max_rounds: int = 20) -> QuatOrder:
    """Smallest multiplicatively closed lattice containing 1 and ``gens``.

    Raises NotAnOrder if closure does not stabilise (the generators are not
    contained in any order).
    """
    gens = [alg.one, *gens]
    lat = Lattice([g.coords for g in gens])
    for _ in range(max_rounds):
        basis = [alg.elem(*r) for r in lat.basis()]
        prods = [s * t for s, t in itertools.product(basis, repeat=2)]
        new = Lattice([b.coords for b in basis] + [p.coords for p in prods])
        if new.covolume() == lat.covolume():
            return QuatOrder(alg, tuple(basis), name="closure")
        lat = new
    raise NotAnOrder("multiplicative closure did not stabilise")


def _two_integral(rows: list[list[Fraction]]) -> bool:
    return all(x.denominator % 2 == 1 for r in rows for x in r)


def equal_at_2(O1: QuatOrder, O2: QuatOrder) -> bool:
    """True iff ``O1 (x) Z_2 == O2 (x) Z_2``."""
    if O1.algebra != O2.algebra:
        raise AlgebraMismatch("orders live in different algebras")
    T = mat_mul(O2.basis_matrix, mat_inverse(O1.basis_matrix))
    return _two_integral(T) and _two_integral(mat_inverse(T))


def lattice_index(big: QuatOrder, small: QuatOrder) -> Fraction:
    """``[big : small]`` as the ratio of basis determinants."""
    return abs(det(small.basis_matrix) / det(big.basis_matrix))


# ---------------------------------------------------------------------------
# conjugation actions


@dataclass(frozen=True)
class ConjugationAction:
    element: Quaternion
    matrix: IntMatrix  # column s = coordinates of q e_s q^-1
    mod2: IntMatrix
    identity_mod2: bool


def conjugation_matrix(O: QuatOrder, q: Quaternion) -> ConjugationAction:
    """Matrix of ``x -> q x q^-1`` on the basis of ``O``."""
    qinv = q.inverse()
    cols = []
    for e in O.basis:
        image = q * e * qinv
        c = O.coordinates(image)
        if c is None:
            raise DoesNotNormalize(e, image)
        cols.append(c)
    M = IntMatrix.from_rows([list(r) for r in zip(*cols)])
    M2 = M.mod(2)
    return ConjugationAction(q, M, M2, M2.is_identity())


def normalizes(O: QuatOrder, q: Quaternion) -> bool:
    try:
        conjugation_matrix(O, q)
    except DoesNotNormalize:
        return False
    return True


# ---------------------------------------------------------------------------
# twists


@dataclass(frozen=True)
class TwistedOrder:
    order: QuatOrder
    mu: Quaternion
    chi: Quaternion
    norm: int

    @property
    def nrd(self) -> int:
        return -self.norm


def _check_polarization(O: QuatOrder, mu: Quaternion) -> None:
    D = O.algebra.D
    if mu not in O:
        raise BadPolarization(f"mu = {mu} is not in the order")
    if mu.trd() != 0:
        raise BadPolarization("mu must have trace zero")
    if mu * mu != O.algebra.elem(-D):
        raise BadPolarization(f"mu^2 = {mu * mu}, expected {-D}")


def anticommutant_basis(O: QuatOrder, mu: Quaternion) -> list[list[int]]:
    """Z-basis (coordinates in O's basis) of {x in O : trd x = 0, mu x = -x mu}."""
    # both conditions are linear in the coordinates: scalar part of x and of mu x + x mu
    cols = []
    for e in O.basis:
        anti = mu * e + e * mu
        cols.append((e.trd(), anti.a, anti.b, anti.c, anti.d))
    den = math.lcm(*(x.denominator for c in cols for x in c))
    rows = [[int(x * den) for x in c] for c in cols]  # row s = image of basis vector s
    H, U, _ = hnf(rows)
    return [U[r] for r in range(len(H)) if not any(H[r])]


def twist_search(O: QuatOrder, mu: Quaternion) -> list[TwistedOrder]:
    """All twists of ``(O, mu)`` up to sign.

    Twists are trace-zero elements of O anticommuting with mu, normalising O,
    with ``-nrd`` a positive divisor of D. On the anticommutant lattice
    ``-nrd`` is a positive definite binary form, so the search is a bounded
    enumeration of that form up to D.
    """
    _check_polarization(O, mu)
    D = O.algebra.D
    kernel = anticommutant_basis(O, mu)
    if len(kernel) != 2:
        raise BadPolarization("anticommutant of mu is not of rank 2")
    x1, x2 = (O.element(v) for v in kernel)
    # Q(s, t) = a s^2 + b s t + c t^2 with Q = -nrd
    a = -x1.nrd()
    c = -x2.nrd()
    b = -(x1 + x2).nrd() - a - c
    disc = 4 * a * c - b * b
    if a <= 0 or disc <= 0:
        raise BadPolarization("-nrd is not positive definite on the anticommutant")
    s_max = math.isqrt(math.floor(4 * c * D / disc)) + 1
    t_max = math.isqrt(math.floor(4 * a * D / disc)) + 1
    found = {}
    for s in range(-s_max, s_max + 1):
        for t in range(-t_max, t_max + 1):
            if (s, t) == (0, 0):
                continue
            val = a * s * s + b * s * t + c * t * t
            if val.denominator != 1 or val <= 0 or D % int(val):
                continue
            chi = x1 * s + x2 * t
            # sign representative: first nonzero coordinate positive
            if next(x for x in chi.coords if x) < 0:
                chi = -chi
            if chi.coords not in found and normalizes(O, chi):
                found[chi.coords] = TwistedOrder(O, mu, chi, int(val))
    return sorted(found.values(), key=lambda tw: (tw.norm, tw.chi.coords))


def is_twist(O: QuatOrder, mu: Quaternion, chi: Quaternion) -> bool:
    """Independent recheck of the twist conditions."""
    D = O.algebra.D
    n = -chi.nrd()
    return (chi in O and chi.trd() == 0 and mu * chi == -(chi * mu)
            and n > 0 and n.denominator == 1 and D % int(n) == 0 and normalizes(O, chi))


# ---------------------------------------------------------------------------
# endomorphism-field verdicts for QM surfaces


@dataclass(frozen=True)
class OrderKernel:
    order: str
    actions: dict[str, ConjugationAction]
    trivial_mod2: tuple[str, ...]


@dataclass(frozen=True)
class QMVerdict:
    D: int
    m: int
    case: str
    result: str
    candidates: tuple[int, ...]  # squarefree d, one per candidate field Q(sqrt d)
    kernels: tuple[OrderKernel, ...]
    twist_norm: int
    note: str = ""


def _field_of(name: str, D: int, m: int) -> int:
    # mu = k, chi = j, mu*chi = m i, so Q(mu) = Q(sqrt -D), Q(chi) = Q(sqrt m), Q(mu chi) = Q(sqrt D/m)
    return {"mu": squarefree_part(-D), "chi": squarefree_part(m), "mu*chi": squarefree_part(D // m)}[name]


def qm_endo_verdict(D: int, m: int) -> QMVerdict:
    """Decide what the mod-2 action of {mu, chi, mu*chi} = {k, j, m i} forces.

    For ``2|D, m = 3 (4)`` the action is faithful on O/2O, so the endomorphism
    field sits inside the 2-torsion field. For ``m = 1 (4)`` each order has an
    element acting trivially mod 2; the candidate subfields are Q(x) for the
    elements x that act non-trivially, collected over every applicable order.
    """
    case = lemma_case(D, m)
    orders = lemma_order(D, m)
    alg = orders[0].algebra
    mu, chi = alg.k, alg.j
    elems = {"mu": mu, "chi": chi, "mu*chi": mu * chi}
    kernels = []
    twist_norm = None
    for O in orders:
        if not is_twist(O, mu, chi):
            raise QuaternionError(f"j is not a twist of ({O.name}, k)")
        twist_norm = int(-chi.nrd())
        actions = {n: conjugation_matrix(O, q) for n, q in elems.items()}
        trivial = tuple(n for n, act in actions.items() if act.identity_mod2)
        kernels.append(OrderKernel(O.name, actions, trivial))

    if case == "3mod4":
        faithful = all(not k.trivial_mod2 for k in kernels)
        result = "L_contained_in_2_torsion_field" if faithful else "not_determined"
        return QMVerdict(D, m, case, result, (), tuple(kernels), twist_norm)

    fields = set()
    shapes = set()
    for k in kernels:
        nontrivial = [n for n in elems if n not in k.trivial_mod2]
        for n in nontrivial:
            fields.add(_field_of(n, D, m))
        # shape: one trivial element and the other two acting by one involution
        a, b = (k.actions[n].mod2 for n in nontrivial) if len(nontrivial) == 2 else (None, None)
        shapes.add((len(k.trivial_mod2), a is not None and a == b))
    if shapes != {(1, True)}:
        raise QuaternionError(f"unexpected mod-2 kernel shapes {shapes}")
    note = ("orders differ by a permutation of i, j, k; each has one element acting "
            "trivially mod 2 and the other two acting by the same involution")
    return QMVerdict(D, m, case, "candidate_subfields", tuple(sorted(fields)),
                     tuple(kernels), twist_norm, note)
