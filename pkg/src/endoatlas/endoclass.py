"""Decision procedures that turn the arithmetic of the 2-torsion field and of
a candidate endomorphism algebra into auditable reports.

Every verdict line carries one theorem tag from :data:`THEOREMS`. A report's
candidate list is finite and nonempty; the trivial algebra (End = Z) is
listed whenever it is admissible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .exactmath import (
    IntMatrix,
    UniPoly,
    is_prime,
    poly_disc,
    squarefree_part,
)
from .numfield import (
    QuadField,
    class_number_imag,
    cubic_galois,
    cyclotomic_subfields,
    dedekind_2maximal,
    inert_at_2,
    quad_splitting_at_2,
    quartic_galois,
    quintic_galois,
)

THEOREMS = {
    "torsion-containment": "E Galois, End(A) 2-maximal and 2 not wildly ramified in E imply L is inside K(A[2])",
    "cp-general": "Gal(K(A[2])/K) = C_p, p coprime to h_K and to residue multiplicative orders above 2: finitely many End^0(A)",
    "cp-over-q": "Gal(Q(A[2])/Q) = C_p: End^0(A) is a proper subfield of Q(zeta_p), or p = 3 mod 4, g >= 3 and A ~ E^g with CM by Q(sqrt(-p))",
    "cp-over-imag-quadratic": "K imaginary quadratic, h_K coprime to p, g >= 2: same dichotomy without the g >= 3 condition",
    "c3-elliptic-no-cm": "elliptic curve with Gal(f) = C3 over a field with a real embedding has no CM",
    "c5-surface-over-q": "abelian surface over Q with C5 2-torsion: End(A) = Z or End^0_Q(A) = End^0(A) = Q(sqrt 5)",
    "quintic-f5": "Gal(f) = F5: real quadratic End^0 gives L = K(sqrt disc); quartic CM End^0 is cyclic with L = EK",
    "quintic-d5": "Gal(f) = D5: quartic CM End^0 gives L = the unique quadratic subextension of K(f)",
    "quintic-c5": "Gal(f) = C5: L = K; quartic CM End^0 needs a real quadratic subfield of K with discriminant 5 mod 8",
    "quintic-q-cm": "K = Q, J has CM and Gal(f) has an element of order 5 imply Gal(f) = F5",
    "c5-real-quadratic-5mod8": "real quadratic End^0 with cyclic order-5 2-torsion predicts discriminant 5 mod 8",
    "qm-3mod4": "QM by a hereditary order, 2 | D, m = 3 mod 4: L is inside K(A[2])",
    "qm-1mod4": "QM by a hereditary order, m = 1 mod 4: End^0_F(A) contains one of the listed quadratic fields",
}


class HypothesisFailure(Exception):
    def __init__(self, report: "EndoReport"):
        super().__init__(report.result)
        self.report = report


@dataclass(frozen=True)
class VerdictLine:
    statement: str
    theorem: str
    mode: str = "exact"  # exact | monte-carlo | given | asserted | axiom
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise KeyError(f"unknown theorem tag {self.theorem!r}")


@dataclass(frozen=True)
class Candidate:
    name: str
    kind: str  # trivial | field | field-class | matrix-algebra
    theorem: str
    degree: int | None = None
    polynomial: tuple[int, ...] | None = None
    note: str = ""


@dataclass
class EndoReport:
    inputs: dict
    result: str = ""
    status: str = "ok"  # ok | hypothesis-fails
    lines: list[VerdictLine] = field(default_factory=list)
    candidates: list[Candidate] = field(default_factory=list)

    def add(self, statement: str, theorem: str, mode: str = "exact", **data) -> None:
        self.lines.append(VerdictLine(statement, theorem, mode, data))

    @property
    def theorems(self) -> list[str]:
        return sorted({ln.theorem for ln in self.lines} | {c.theorem for c in self.candidates})

    def to_json(self) -> dict[str, Any]:
        return {
            "inputs": self.inputs,
            "result": self.result,
            "status": self.status,
            "theorems": {t: THEOREMS[t] for t in self.theorems},
            "lines": [{"statement": ln.statement, "theorem": ln.theorem, "mode": ln.mode,
                       "data": ln.data} for ln in self.lines],
            "candidates": [{"name": c.name, "kind": c.kind, "theorem": c.theorem,
                            "degree": c.degree,
                            "polynomial": None if c.polynomial is None else [str(x) for x in c.polynomial],
                            "note": c.note} for c in self.candidates],
        }


TRIVIAL = "Z"


def _trivial(theorem: str) -> Candidate:
    return Candidate(TRIVIAL, "trivial", theorem, 1, None, "End(A) = Z, End^0(A) = Q")


def _quad_candidate(d: int, theorem: str, note: str = "") -> Candidate:
    F = QuadField(d)
    return Candidate(F.name, "field", theorem, 2, tuple(F.min_poly().int_coeffs()), note)


# ---------------------------------------------------------------------------
# C_p 2-torsion


def _cyclotomic_candidates(p: int, theorem: str) -> list[Candidate]:
    out = []
    for sf in cyclotomic_subfields(p):
        if sf.degree == p - 1:
            continue
        if sf.degree == 1:
            out.append(_trivial(theorem))
        elif sf.degree == 2:
            d = squarefree_part(poly_disc(sf.period_poly))
            out.append(_quad_candidate(d, theorem, f"quadratic subfield of Q(zeta_{p})"))
        else:
            out.append(Candidate(f"degree-{sf.degree} subfield of Q(zeta_{p})", "field", theorem,
                                 sf.degree, tuple(sf.period_poly.int_coeffs()),
                                 "defined by a Gaussian period"))
    return out


def classify_cp(g: int, d: int | None = None) -> EndoReport:
    """Possible End^0(A) when the 2-torsion field is cyclic of order p = 2g + 1.

    ``d`` None means the base field is Q; otherwise the base is the
    imaginary quadratic field Q(sqrt d). Raises :class:`HypothesisFailure`
    (carrying the report) when the class-number or residue-order hypothesis
    fails.
    """
    p = 2 * g + 1
    if g < 1 or not is_prime(p):
        raise ValueError(f"2g + 1 = {p} is not prime")
    base = "Q" if d is None else QuadField(d).name
    report = EndoReport({"g": g, "p": p, "base": base})

    if d is None:
        tag = "cp-over-q"
        cm_branch = p % 4 == 3 and g >= 3
        cm_rule = "p = 3 mod 4 and g >= 3"
    else:
        tag = "cp-over-imag-quadratic"
        K = QuadField(d)
        if d >= 0:
            raise ValueError("base field must be imaginary quadratic")
        h = class_number_imag(d)
        split = quad_splitting_at_2(K)
        report.add(f"class number of {K.name} is {h}", "cp-general", h=h)
        report.add(f"2 is {split.kind} in {K.name}; residue multiplicative orders "
                   f"{list(split.multiplicative_orders)} (read as 2^f - 1)", "cp-general",
                   kind=split.kind, orders=list(split.multiplicative_orders))
        failures = []
        if g < 2:
            failures.append("g >= 2 is required over an imaginary quadratic field")
        if h % p == 0:
            failures.append(f"p = {p} divides the class number {h}; the hypothesis cannot be "
                            "dropped: x^5 - 19x^4 + 107x^3 + 95x^2 + 88x - 16 has D5 splitting field "
                            "equal to the Hilbert class field of Q(sqrt(-131)), cyclic of order 5 over it, "
                            "and its jacobian has End^0 = Q(sqrt 13)")
        if any(o % p == 0 for o in split.multiplicative_orders):
            failures.append(f"p = {p} divides a residue multiplicative order above 2")
        if failures:
            for msg in failures:
                report.add(msg, "cp-over-imag-quadratic", hypothesis="fails")
            report.status = "hypothesis-fails"
            report.result = "hypothesis_failure"
            report.candidates = [_trivial(tag)]
            raise HypothesisFailure(report)
        cm_branch = p % 4 == 3
        cm_rule = "p = 3 mod 4"

    report.candidates = _cyclotomic_candidates(p, tag)
    report.add(f"End^0(A) is a proper subfield of Q(zeta_{p}), or the CM-power branch holds", tag,
               subfield_degrees=[c.degree for c in report.candidates])
    if cm_branch:
        F = QuadField(-p)
        report.candidates.append(Candidate(
            f"M_{g}({F.name})", "matrix-algebra", tag, 2 * g * g, tuple(F.min_poly().int_coeffs()),
            f"possible branch: A isogenous to E^{g}, E with CM by {F.name}"))
        report.add(f"CM-power branch listed ({cm_rule} holds); whether it occurs is not decided",
                   tag, mode="exact", branch="possible")
    else:
        report.add(f"CM-power branch excluded ({cm_rule} fails)", tag)
    if d is None and g == 1:
        report.add("A has no complex multiplication", "c3-elliptic-no-cm")
    if d is None and g == 2:
        report.add("End(A) = Z or End^0_Q(A) = End^0(A) = Q(sqrt 5)", "c5-surface-over-q")
    report.result = "candidates"
    return report


# ---------------------------------------------------------------------------
# endomorphism field containment


_HOLDS, _FAILS, _UNKNOWN = "holds", "fails", "unknown"


def endo_field_containment(poly: UniPoly, order: str = "equation",
                           galois: bool | None = None) -> EndoReport:
    """Check the hypotheses that put L inside K(A[2]) for End^0(A) = Q[x]/(poly).

    ``order`` is "equation" (End(A) = Z[x]/(poly)) or "maximal". ``galois``
    is a caller assertion, consulted only above degree 4. The verdict is
    "contained" only when every hypothesis is settled without Monte-Carlo
    evidence.
    """
    if order not in ("equation", "maximal"):
        raise ValueError(f"unknown order descriptor {order!r}")
    if not poly.is_integral() or not poly.is_monic() or poly.degree < 1:
        raise ValueError("endomorphism field must be given by a monic integer polynomial")
    n = poly.degree
    report = EndoReport({"polynomial": [str(c) for c in poly.coeffs], "order": order,
                         "galois_assertion": galois})
    tag = "torsion-containment"
    status: dict[str, str] = {}

    # Galois
    if n <= 2:
        status["galois"] = _HOLDS
        report.add(f"degree {n} extensions are Galois", tag)
    elif n in (3, 4):
        lab = (cubic_galois if n == 3 else quartic_galois)(poly)
        ok = lab.label in ("C3", "C4", "V4")
        status["galois"] = _HOLDS if ok else _FAILS
        report.add(f"Gal = {lab.label}: E/Q is {'' if ok else 'not '}Galois", tag,
                   label=lab.label, certificate=lab.certificate)
    elif galois is None:
        status["galois"] = _UNKNOWN
        report.add(f"Galois-ness of a degree-{n} field is not computed; no assertion given", tag,
                   mode="asserted")
    else:
        status["galois"] = _HOLDS if galois else _FAILS
        report.add(f"Galois-ness {'asserted' if galois else 'denied'} by the caller", tag, mode="asserted")

    # 2-maximality
    ded = dedekind_2maximal(poly)
    if order == "maximal":
        status["2-maximal"] = _HOLDS
        report.add("End(A) is the maximal order, hence 2-maximal", tag, mode="given")
    else:
        status["2-maximal"] = _HOLDS if ded.maximal else _FAILS
        report.add(f"Dedekind criterion at 2: equation order is {'' if ded.maximal else 'not '}2-maximal",
                   tag, shape=[list(s) for s in ded.shape])

    # wild ramification at 2
    if n == 1:
        status["not-wild"] = _HOLDS
    elif n == 2:
        F = QuadField(squarefree_part(poly_disc(poly)))
        split = quad_splitting_at_2(F)
        wild = split.kind == "ramified-wild"
        status["not-wild"] = _FAILS if wild else _HOLDS
        report.add(f"2 is {split.kind} in {F.name}", tag, d=F.d, kind=split.kind)
    elif ded.maximal:
        # Kummer-Dedekind: the mod-2 factorization gives the primes above 2
        wild = any(e % 2 == 0 for _, e in ded.shape)
        unram = all(e == 1 for _, e in ded.shape)
        status["not-wild"] = _FAILS if wild else _HOLDS
        report.add(f"primes above 2 have ramification indices {[e for _, e in ded.shape]}"
                   + (" (unramified)" if unram else ""), tag, shape=[list(s) for s in ded.shape],
                   inert=inert_at_2(poly))
    else:
        status["not-wild"] = _UNKNOWN
        report.add("2 divides the index of the equation order; ramification at 2 not determined", tag)

    failing = [k for k, v in status.items() if v == _FAILS]
    if failing:
        report.result = "hypothesis-fails"
        report.status = "hypothesis-fails"
    elif all(v == _HOLDS for v in status.values()):
        report.result = "contained"
    else:
        report.result = "not-determined"
    report.inputs["hypotheses"] = status
    report.candidates = [Candidate(f"Q[x]/({poly})", "field", tag, n, tuple(poly.int_coeffs()))]
    return report


# ---------------------------------------------------------------------------
# quintic jacobians


@dataclass(frozen=True)
class BaseField:
    """Base field descriptor: Q, a quadratic field Q(sqrt d), or an opaque
    field described only by its real quadratic subfields."""

    kind: str = "Q"  # Q | quadratic | other
    d: int | None = None
    real_quadratic_subfields: tuple[int, ...] = ()

    @property
    def name(self) -> str:
        if self.kind == "Q":
            return "Q"
        if self.kind == "quadratic":
            return QuadField(self.d).name
        return "K"

    def real_quadratics(self) -> tuple[int, ...]:
        if self.kind == "quadratic":
            return (self.d,) if self.d > 0 else ()
        return self.real_quadratic_subfields


def classify_quintic_jacobian(f: UniPoly, base: BaseField = BaseField(),
                              candidate: UniPoly | None = None,
                              budget: int = 200, seed: int = 0) -> EndoReport:
    """Case analysis for the jacobian of y^2 = f(x), deg f = 5, over ``base``.

    ``candidate`` optionally names End^0(J) by a defining polynomial
    (quadratic or quartic); it is then checked against the applicable case.
    """
    lab = quintic_galois(f, budget=budget, seed=seed)
    report = EndoReport({"polynomial": [str(c) for c in f.coeffs], "base": base.name,
                         "candidate": None if candidate is None else [str(c) for c in candidate.coeffs],
                         "budget": budget, "seed": seed})
    G = lab.label
    over_q = base.kind == "Q"
    d0 = lab.certificate["disc_squarefree_part"]
    if G in ("A5", "S5"):
        report.add(f"Gal(f) = {G} over Q: no case of the quintic theorem applies", "quintic-f5",
                   mode=lab.mode, certificate=lab.certificate)
        report.candidates = [_trivial("quintic-f5")]
        report.result = G
        return report
    tag = {"F5": "quintic-f5", "D5": "quintic-d5", "C5": "quintic-c5"}[G]
    report.add(f"Gal(f) = {G} over Q", tag, mode=lab.mode, certificate=lab.certificate)
    if not over_q:
        report.add(f"case split uses Gal(f) over Q; over {base.name} the group is a subgroup", tag,
                   mode="axiom")
    report.candidates = [_trivial(tag)]
    cm_possible = True

    if G == "F5":
        report.add(f"if End^0(J) is real quadratic then L = {base.name}(sqrt({d0}))", tag, disc_squarefree_part=d0)
        report.add("if End^0(J) = E is a quartic CM field then E is cyclic and L = EK, "
                   "the unique quartic subextension of K(f)", tag, mode="axiom")
        report.candidates.append(Candidate("real quadratic field", "field-class", tag, 2, None,
                                           f"L = {base.name}(sqrt({d0}))"))
        report.candidates.append(Candidate("cyclic quartic CM field", "field-class", tag, 4, None, "L = EK"))
    elif G == "D5":
        report.add("if End^0(J) is a quartic CM field then L is the unique quadratic subextension "
                   "of K(f)", tag, mode="axiom")
        report.candidates.append(Candidate("real quadratic field", "field-class", tag, 2))
        if over_q:
            cm_possible = False
            report.add("over Q a CM jacobian with an order-5 element in Gal(f) forces F5: no CM",
                       "quintic-q-cm")
        else:
            report.candidates.append(Candidate("quartic CM field", "field-class", tag, 4))
    else:
        report.add(f"L = {base.name}: every endomorphism is defined over the base", tag)
        good = [d for d in base.real_quadratics() if QuadField(d).disc % 8 == 5]
        if over_q:
            report.candidates = [_trivial("c5-surface-over-q"),
                                 _quad_candidate(5, "c5-surface-over-q")]
            report.add("End(J) = Z or End^0_Q(J) = End^0(J) = Q(sqrt 5)", "c5-surface-over-q")
        if good:
            report.add(f"{base.name} contains real quadratic fields of discriminant 5 mod 8: {good}", tag,
                       fields=good)
            report.candidates.append(Candidate("quartic CM field", "field-class", tag, 4))
        else:
            cm_possible = False
            report.add(f"{base.name} has no real quadratic subfield of discriminant 5 mod 8: CM excluded", tag)
        if not over_q:
            report.candidates.append(Candidate("real quadratic field", "field-class", tag, 2))

    if candidate is not None:
        _check_candidate(report, candidate, G, tag, cm_possible)
    report.result = G
    return report


def _check_candidate(report: EndoReport, cand: UniPoly, G: str, tag: str, cm_possible: bool) -> None:
    n = cand.degree
    if n == 2:
        F = QuadField(squarefree_part(poly_disc(cand)))
        if not F.is_real:
            report.add(f"candidate {F.name} is imaginary quadratic; not covered", tag)
            return
        if G in ("D5", "C5"):
            ok = F.disc % 8 == 5
            report.add(f"candidate {F.name}: discriminant {F.disc} = {F.disc % 8} mod 8 "
                       f"({'satisfies' if ok else 'violates'} the 5 mod 8 prediction)",
                       "c5-real-quadratic-5mod8", d=F.d, disc=F.disc, disc_mod_8=F.disc % 8,
                       satisfied=ok)
        report.candidates.append(_quad_candidate(F.d, tag, "supplied candidate"))
    elif n == 4:
        if not cm_possible:
            report.add(f"candidate quartic field excluded: CM is impossible in the {G} case", tag)
            return
        lab = quartic_galois(cand)
        cyclic = lab.label == "C4"
        report.add(f"candidate quartic field has Galois group {lab.label}"
                   + ("" if cyclic or G != "F5" else ": not cyclic, so excluded"), tag,
                   label=lab.label, certificate=lab.certificate)
        inert = inert_at_2(cand) if cand.is_monic() and cand.is_integral() else None
        report.add(f"candidate field is {'totally inert' if inert else 'not inert'} at 2", tag, inert=inert)
        if cand.is_monic() and cand.is_integral():
            cont = endo_field_containment(cand)
            report.add(f"containment test for the candidate: {cont.result}", "torsion-containment",
                       hypotheses=cont.inputs["hypotheses"])
        if G == "F5" and cyclic:
            report.add("L = EK for the candidate field E", tag, mode="axiom")
        if cyclic or G != "F5":
            report.candidates.append(Candidate(f"Q[x]/({cand})", "field", tag, 4,
                                               tuple(cand.primitive().int_coeffs()), "supplied candidate"))
    else:
        raise ValueError("candidate must be quadratic or quartic")


# ---------------------------------------------------------------------------
# reduction mod 4 on finite-order integer matrices


def companion_matrix(poly: UniPoly) -> IntMatrix:
    c = poly.monic().int_coeffs()
    n = len(c) - 1
    rows = [[0] * n for _ in range(n)]
    for r in range(1, n):
        rows[r][r - 1] = 1
    for r in range(n):
        rows[r][n - 1] = -c[r]
    return IntMatrix.from_rows(rows)


CYCLOTOMIC = {
    2: UniPoly([1, 1]),
    3: UniPoly([1, 1, 1]),
    4: UniPoly([1, 0, 1]),
    5: UniPoly([1, 1, 1, 1, 1]),
    6: UniPoly([1, -1, 1]),
}


def _unitriangular(n: int) -> tuple[IntMatrix, IntMatrix]:
    P = IntMatrix.from_rows([[1 if j >= i else 0 for j in range(n)] for i in range(n)])
    # inverse of the all-ones upper triangle: 1 on the diagonal, -1 just above it
    Pinv = IntMatrix.from_rows([[1 if j == i else (-1 if j == i + 1 else 0) for j in range(n)]
                                for i in range(n)])
    return P, Pinv


def matrix_power(M: IntMatrix, e: int) -> IntMatrix:
    out = IntMatrix.identity(M.rows)
    for _ in range(e):
        out = out @ M
    return out


def finite_order_fixtures() -> list[tuple[str, IntMatrix, int]]:
    """Companion matrices of cyclotomic polynomials of orders 2..6 and their
    conjugates by a unimodular matrix, with their orders."""
    out = []
    for order, phi in CYCLOTOMIC.items():
        C = companion_matrix(phi)
        out.append((f"companion(Phi_{order})", C, order))
        if C.rows > 1:
            P, Pinv = _unitriangular(C.rows)
            out.append((f"P companion(Phi_{order}) P^-1", P @ C @ Pinv, order))
    return out


def identity_mod(M: IntMatrix, n: int) -> bool:
    return M.mod(n).is_identity()


def level_two_square_is_trivial_mod4(M: IntMatrix) -> bool:
    """``(I + 2M)^2 = I (mod 4)``: the level-2 congruence kernel mod 4 has exponent 2."""
    T = IntMatrix.from_rows([[int(i == j) + 2 * M[i, j] for j in range(M.cols)] for i in range(M.rows)])
    return identity_mod(T @ T, 4)
