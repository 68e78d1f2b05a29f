"""Number-field computations: splitting of 2 in quadratic fields, class
numbers of imaginary quadratic fields, Dedekind's criterion, Galois groups
of quartics and quintics, and Gaussian-period polynomials of cyclotomic
subfields.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .exactmath import (
    UniPoly,
    NotSquarefreeModP,
    divisors,
    factor_degrees_mod_p,
    factor_mod_p,
    fp_gcd,
    fp_mul,
    fp_reduce,
    is_prime,
    is_square,
    is_squarefree,
    next_prime,
    poly_disc,
    poly_from_power_sums,
    poly_gcd,
    power_sums,
    primitive_root,
    rational_roots,
    squarefree_part,
)


class NumFieldError(ValueError):
    pass


class NotImaginary(NumFieldError):
    pass


class NotSquarefree(NumFieldError):
    pass


class NotMonic(NumFieldError):
    pass


class NotQuintic(NumFieldError):
    pass


class NotQuartic(NumFieldError):
    pass


class ZeroDiscriminant(NumFieldError):
    pass


class Reducible(NumFieldError):
    pass


class InconsistentCertificates(NumFieldError):
    pass


class NotPrime(NumFieldError):
    pass


class PrecisionBoundExceeded(NumFieldError):
    pass


# ---------------------------------------------------------------------------
# quadratic fields


@dataclass(frozen=True)
class QuadField:
    d: int

    def __post_init__(self):
        if self.d in (0, 1) or not is_squarefree(self.d):
            raise NotSquarefree(f"d = {self.d} does not define a quadratic field")

    @property
    def disc(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def name(self) -> str:
        return f"Q(sqrt({self.d}))"

    @property
    def is_real(self) -> bool:
        return self.d > 0

    def min_poly(self) -> UniPoly:
        """Minimal polynomial of a generator of the ring of integers."""
        if self.d % 4 == 1:
            return UniPoly([(1 - self.d) // 4, -1, 1])
        return UniPoly([-self.d, 0, 1])


@dataclass(frozen=True)
class SplittingAt2:
    kind: str  # "split" | "inert" | "ramified-wild"
    residue_field_sizes: tuple[int, ...]
    multiplicative_orders: tuple[int, ...]


def quad_splitting_at_2(F: QuadField) -> SplittingAt2:
    r = F.d % 8
    if r == 1:
        return SplittingAt2("split", (2, 2), (1, 1))
    if r == 5:
        return SplittingAt2("inert", (4,), (3,))
    # e = 2 equals the residue characteristic: always wild
    return SplittingAt2("ramified-wild", (2,), (1,))


def class_number_imag(d: int) -> int:
    """Class number of Q(sqrt d), d < 0, by counting reduced primitive forms."""
    if d >= 0:
        raise NotImaginary(f"d = {d} is not negative")
    if not is_squarefree(d):
        raise NotSquarefree(f"d = {d} is not squarefree")
    disc = QuadField(d).disc if d != -1 else -4
    h = 0
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                h += 1
        a += 1
    return h


def quadratic_splitting_field(f: UniPoly) -> QuadField | None:
    """Splitting field of ``f`` when it is at most quadratic over Q.

    Rational roots are divided out; the remaining factor must have degree
    at most 2. Returns None when ``f`` splits over Q.
    """
    roots = rational_roots(f)
    g = f
    for r in roots:
        g = g // UniPoly([-r, 1])
    if g.degree <= 0:
        return None
    if g.degree > 2:
        raise NumFieldError("residual factor has degree > 2")
    return QuadField(squarefree_part(poly_disc(g)))


# ---------------------------------------------------------------------------
# Dedekind's criterion


@dataclass(frozen=True)
class DedekindResult:
    maximal: bool
    shape: tuple[tuple[int, int], ...]  # (degree, multiplicity) of factors mod p
    p: int = 2


def dedekind_2maximal(g: UniPoly, p: int = 2) -> DedekindResult:
    """Dedekind's criterion: is Z[x]/(g) maximal at ``p``?"""
    if not g.is_integral() or not g.is_monic():
        raise NotMonic("Dedekind's criterion needs a monic integer polynomial")
    facs = factor_mod_p(g, p)
    shape = tuple(sorted((len(h) - 1, e) for h, e in facs))
    t, h = [1], [1]
    for gi, e in facs:
        t = fp_mul(t, gi, p)
        for _ in range(e - 1):
            h = fp_mul(h, gi, p)
    # lift with coefficients in [0, p) and form (t*h - g)/p
    th = UniPoly(t) * UniPoly(h)
    obstruction = (th - g).coeffs
    assert all(c.denominator == 1 and c % p == 0 for c in obstruction)
    F = fp_reduce([int(c) // p for c in obstruction], p)
    common = fp_gcd(fp_gcd(F, t, p), h, p)
    return DedekindResult(len(common) == 1, shape, p)


def inert_at_2(g: UniPoly) -> bool:
    """True iff ``g`` is irreducible over F_2."""
    facs = factor_mod_p(g, 2)
    return len(facs) == 1 and facs[0][1] == 1 and len(facs[0][0]) - 1 == g.degree


# ---------------------------------------------------------------------------
# Galois groups

QUINTIC_CYCLE_TYPES = {
    "C5": {"1+1+1+1+1", "5"},
    "D5": {"1+1+1+1+1", "5", "2+2+1"},
    "F5": {"1+1+1+1+1", "5", "2+2+1", "4+1"},
    "A5": {"1+1+1+1+1", "5", "2+2+1", "3+1+1"},
    "S5": {"1+1+1+1+1", "5", "2+2+1", "4+1", "3+1+1", "3+2", "2+1+1+1"},
}

QUARTIC_CYCLE_TYPES = {
    "C4": {"1+1+1+1", "4", "2+2"},
    "V4": {"1+1+1+1", "2+2"},
    "D4": {"1+1+1+1", "4", "2+2", "2+1+1"},
    "A4": {"1+1+1+1", "2+2", "3+1"},
    "S4": {"1+1+1+1", "4", "2+2", "2+1+1", "3+1"},
}

ODD_QUINTIC_TYPES = {"4+1", "3+2", "2+1+1+1"}


@dataclass(frozen=True)
class GaloisConfig:
    budget: int = 200
    seed: int = 0
    start: int = 101


@dataclass(frozen=True)
class GaloisLabel:
    label: str
    mode: str  # "exact" | "monte-carlo"
    certificate: dict = field(compare=False)


def cycle_type_name(degs) -> str:
    return "+".join(str(d) for d in sorted(degs, reverse=True))


def monic_integral(f: UniPoly) -> tuple[UniPoly, dict | None]:
    """Monic integer polynomial with the same splitting field.

    Clears denominators, then substitutes ``x -> x/a`` for leading
    coefficient ``a`` and rescales. Returns the substitution record (None if
    ``f`` was already monic and integral).
    """
    g = f.primitive()
    a = g.lc
    if a == 1 and f.is_integral() and f.is_monic():
        return f, None
    n = g.degree
    # a^(n-1) g(x/a)
    h = UniPoly(c * a ** (n - 1 - k) if k < n else Fraction(1) for k, c in enumerate(g.coeffs))
    return h, {"substitution": f"x -> x/{a}", "scale": f"{a}^{n - 1}", "monic": [str(c) for c in h.coeffs]}


def sample_primes(disc, budget: int, seed: int, start: int):
    """Primes not dividing ``disc``: ``budget`` consecutive ones from ``start``
    (seed 0) or from a seed-determined offset above ``start``."""
    offset = 0 if seed == 0 else random.Random(seed).randrange(1, 100_000)
    p = next_prime(start + offset - 1)
    got = 0
    num = Fraction(disc).numerator
    while got < budget:
        if num % p:
            yield p
            got += 1
        p = next_prime(p)


def _irreducibility_certified(types: set[tuple[int, ...]], n: int) -> bool:
    # any Q-factor degree is a subset sum of every mod-p pattern
    common = set(range(n + 1))
    for degs in types:
        sums = {sum(c) for r in range(len(degs) + 1) for c in itertools.combinations(degs, r)}
        common &= sums
    return common == {0, n}


def _sample_types(g: UniPoly, disc, cfg: GaloisConfig):
    seen: dict[str, int] = {}
    counts: dict[str, int] = {}
    raw = set()
    last = None
    for p in sample_primes(disc, cfg.budget, cfg.seed, cfg.start):
        try:
            degs = factor_degrees_mod_p(g, p)
        except NotSquarefreeModP:
            continue
        raw.add(degs)
        name = cycle_type_name(degs)
        seen.setdefault(name, p)
        counts[name] = counts.get(name, 0) + 1
        last = p
    return seen, counts, raw, last


def pair_sum_resolvent(g: UniPoly) -> UniPoly:
    """Exact ``prod_{i<j} (x - r_i - r_j)`` over the roots of monic ``g``."""
    n = g.degree
    N = n * (n - 1) // 2
    p = power_sums(g, N)
    P = [Fraction(N)]
    for k in range(1, N + 1):
        full = sum(math.comb(k, t) * p[t] * p[k - t] for t in range(k + 1))
        P.append((full - 2**k * p[k]) / 2)
    return poly_from_power_sums(P, N)


def _pentagons():
    seen = set()
    for perm in itertools.permutations((1, 2, 3, 4)):
        cyc = (0, *perm)
        edges = frozenset(frozenset((cyc[t], cyc[(t + 1) % 5])) for t in range(5))
        if edges not in seen:
            seen.add(edges)
            yield edges


def _numeric_poly(vals):
    out = [mpmath.mpc(1)]
    for v in vals:
        nxt = [mpmath.mpc(0)] * (len(out) + 1)
        for k, c in enumerate(out):
            nxt[k + 1] += c
            nxt[k] -= v * c
        out = nxt
    return out  # little-endian


def pair_resolvent_factor(g: UniPoly, d: int | None) -> UniPoly | tuple | None:
    """Search for a quintic factor of the pair-sum resolvent.

    With ``d`` None the factor is sought over Q; otherwise over Q(sqrt d).
    Candidates come from numerical roots grouped by the 6 pentagon splittings
    of the 10 pairs; every candidate is verified by exact arithmetic, so a
    returned factor is a proof of reducibility. Returns None when no
    candidate verifies or when the resolvent is not squarefree.
    """
    R = pair_sum_resolvent(g)
    if poly_gcd(R, R.derivative()).degree > 0:
        # repeated pair sums: a factor would not prove intransitivity on pairs
        return None
    bound = 1 + max(abs(c) for c in g.coeffs)
    dps = 40 + int(6 * math.log10(2 * bound + 1))
    with mpmath.workdps(dps):
        roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator for c in reversed(g.coeffs)],
                                 maxsteps=500, extraprec=4 * dps)
        pairs = {frozenset((i, j)): roots[i] + roots[j] for i, j in itertools.combinations(range(5), 2)}
        sd = mpmath.sqrt(mpmath.mpf(d)) if d is not None else None
        for edges in _pentagons():
            inside = _numeric_poly([pairs[e] for e in edges])
            if d is None:
                cand = UniPoly(int(mpmath.nint(mpmath.re(c))) for c in inside)
                if cand.degree == 5 and (R % cand).is_zero():
                    return cand
                continue
            outside = _numeric_poly([v for e, v in pairs.items() if e not in edges])
            us = [Fraction(int(mpmath.nint(mpmath.re(a + b))), 2) for a, b in zip(inside, outside)]
            ws = [Fraction(int(mpmath.nint(mpmath.re((a - b) / sd))), 2) for a, b in zip(inside, outside)]
            if _verify_conjugate_product(us, ws, d, R):
                return tuple(us), tuple(ws)
    return None


def _verify_conjugate_product(us, ws, d, R: UniPoly) -> bool:
    # (sum (u_k + w_k s) x^k) * (sum (u_k - w_k s) x^k) == R exactly, s = sqrt(d)
    if not any(ws):
        return False
    n = len(us)
    rat = [Fraction(0)] * (2 * n - 1)
    irr = [Fraction(0)] * (2 * n - 1)
    for a in range(n):
        for b in range(n):
            rat[a + b] += us[a] * us[b] - d * ws[a] * ws[b]
            irr[a + b] += ws[a] * us[b] - us[a] * ws[b]
    return not any(irr) and UniPoly(rat) == R


def quintic_galois(f: UniPoly, budget: int = 200, seed: int = 0, start: int = 101) -> GaloisLabel:
    """Galois group of an irreducible quintic among C5, D5, F5, A5, S5.

    Frobenius cycle types at unramified primes give containment
    certificates; the discriminant separates even from odd groups; an
    exactly verified quintic factor of the pair-sum resolvent (over Q or
    Q(sqrt disc)) rules out A5. Only C5 versus D5 (absence of a 2+2+1 type)
    and fallbacks when no resolvent factor is found are Monte-Carlo.
    """
    if f.degree != 5:
        raise NotQuintic(f"degree {f.degree}, expected 5")
    cfg = GaloisConfig(budget, seed, start)
    g, subst = monic_integral(f)
    disc = poly_disc(g)
    if disc == 0:
        raise ZeroDiscriminant("polynomial is not squarefree")
    if rational_roots(g):
        raise Reducible("polynomial has a rational root")
    seen, counts, raw, last = _sample_types(g, disc, cfg)
    square = is_square(disc) is not None
    irreducible = _irreducibility_certified(raw, 5)
    cert = {
        "polynomial": [str(c) for c in f.coeffs],
        "normalization": subst,
        "disc": str(poly_disc(f)),
        "monic_disc": str(disc),
        "disc_is_square": square,
        "disc_squarefree_part": squarefree_part(disc),
        "irreducible": "certified" if irreducible else "assumed",
        "cycle_types": dict(sorted(seen.items())),
        "cycle_type_counts": dict(sorted(counts.items())),
        "budget": budget,
        "seed": seed,
        "last_prime": last,
    }
    odd = ODD_QUINTIC_TYPES & seen.keys()
    if square and odd:
        raise InconsistentCertificates(f"square discriminant but odd cycle types {sorted(odd)}")

    if square:
        if "3+1+1" in seen:
            label, exact, res = "A5", True, "not needed"
        else:
            factor = pair_resolvent_factor(g, None)
            if factor is not None:
                res = f"factor over Q: {factor}"
                label, exact = ("D5", True) if "2+2+1" in seen else ("C5", False)
            else:
                res = "no factor found"
                label, exact = ("D5" if "2+2+1" in seen else "C5"), False
    else:
        if seen.keys() & {"3+1+1", "3+2", "2+1+1+1"}:
            label, exact, res = "S5", True, "not needed"
        else:
            d = squarefree_part(disc)
            factor = pair_resolvent_factor(g, d)
            if factor is not None:
                label, exact, res = "F5", True, f"conjugate factors over Q(sqrt({d}))"
            else:
                label, exact, res = "F5", False, "no factor found"
    cert["pair_resolvent"] = res
    unexpected = set(seen) - QUINTIC_CYCLE_TYPES[label]
    if unexpected:
        raise InconsistentCertificates(f"{label} cannot have cycle types {sorted(unexpected)}")
    mode = "exact" if exact and irreducible else "monte-carlo"
    return GaloisLabel(label, mode, cert)


def resolvent_cubic(g: UniPoly) -> UniPoly:
    """Cubic with roots r1 r2 + r3 r4 etc. for monic quartic ``g``."""
    d, c, b, a = g.coeffs[:4]
    return UniPoly([-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, 1])


def quartic_galois(g: UniPoly) -> GaloisLabel:
    """Galois group of an irreducible quartic by the resolvent cubic and
    exact square tests (C4 versus D4 via the two auxiliary quadratics)."""
    if g.degree != 4:
        raise NotQuartic(f"degree {g.degree}, expected 4")
    h, subst = monic_integral(g)
    if rational_roots(h):
        raise Reducible("polynomial has a rational root")
    disc = poly_disc(h)
    if disc == 0:
        raise ZeroDiscriminant("polynomial is not squarefree")
    square = is_square(disc) is not None
    cubic = resolvent_cubic(h)
    croots = sorted(set(rational_roots(cubic)))
    cert = {
        "polynomial": [str(c) for c in g.coeffs],
        "normalization": subst,
        "disc": str(disc),
        "disc_is_square": square,
        "resolvent_cubic": [str(c) for c in cubic.coeffs],
        "resolvent_rational_roots": [str(r) for r in croots],
    }
    if not croots:
        label = "A4" if square else "S4"
    elif len(croots) == 3:
        label = "V4"
    else:
        r = croots[0]
        d, c, b, a = h.coeffs[:4]
        aux = [r * r - 4 * d, a * a - 4 * (b - r)]
        splits = [x == 0 or is_square(x) is not None or is_square(x * disc) is not None for x in aux]
        cert["auxiliary_discriminants"] = [str(x) for x in aux]
        cert["auxiliary_split_over_sqrt_disc"] = splits
        label = "C4" if all(splits) else "D4"
    return GaloisLabel(label, "exact", cert)


def cubic_galois(g: UniPoly) -> GaloisLabel:
    if g.degree != 3:
        raise NumFieldError("expected a cubic")
    if rational_roots(g):
        raise Reducible("polynomial has a rational root")
    disc = poly_disc(g)
    label = "C3" if is_square(disc) is not None else "S3"
    return GaloisLabel(label, "exact", {"disc": str(disc)})


# ---------------------------------------------------------------------------
# cyclotomic subfields


@dataclass(frozen=True)
class CycloSubfield:
    p: int
    degree: int
    subgroup_order: int
    period_poly: UniPoly
    verified_mod: tuple[int, ...] = ()


MAX_CYCLO_PRIME = 2000


def _periods_mod(p: int, e: int, ell: int) -> list[int]:
    g = primitive_root(p)
    zeta = pow(primitive_root(ell), (ell - 1) // p, ell)
    f = (p - 1) // e
    return [sum(pow(zeta, pow(g, k + e * t, p), ell) for t in range(f)) % ell for k in range(e)]


def _verify_mod(poly: UniPoly, p: int, e: int, ell: int) -> bool:
    prod = [1]
    for eta in _periods_mod(p, e, ell):
        prod = fp_mul(prod, [-eta, 1], ell)
    return fp_reduce(poly.int_coeffs(), ell) == prod


def cyclotomic_subfields(p: int) -> list[CycloSubfield]:
    """Gaussian-period minimal polynomials of every subfield of Q(zeta_p).

    Periods are evaluated in floating point at a precision large enough for
    the coefficient bound (1 + f)^e, rounded to integers, then checked
    exactly modulo two primes congruent to 1 mod p.
    """
    if not is_prime(p) or p < 3:
        raise NotPrime(f"{p} is not an odd prime")
    if p > MAX_CYCLO_PRIME:
        raise PrecisionBoundExceeded(f"p = {p} exceeds {MAX_CYCLO_PRIME}")
    g = primitive_root(p)
    ells = []
    ell = p + 1
    while len(ells) < 2:
        if is_prime(ell):
            ells.append(ell)
        ell += p
    out = []
    for e in divisors(p - 1):
        f = (p - 1) // e
        dps = 20 + int(e * math.log10(f + 1)) + 1
        with mpmath.workdps(dps):
            zeta = lambda t: mpmath.expjpi(mpmath.mpf(2 * t) / p)
            etas = [mpmath.fsum(zeta(pow(g, k + e * t, p)) for t in range(f)) for k in range(e)]
            coeffs = _numeric_poly(etas)
            ints = [int(mpmath.nint(mpmath.re(c))) for c in coeffs]
            err = max(abs(mpmath.re(c) - n) for c, n in zip(coeffs, ints))
            if err >= 0.25:
                raise PrecisionBoundExceeded(f"rounding error {err} at degree {e}")
        poly = UniPoly(ints)
        for ell in ells:
            if not _verify_mod(poly, p, e, ell):
                raise PrecisionBoundExceeded(f"period polynomial failed the check mod {ell}")
        out.append(CycloSubfield(p, e, f, poly, tuple(ells)))
    return out
