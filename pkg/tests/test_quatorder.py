import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from endoatlas import quatorder as qo
from endoatlas.exactmath import is_squarefree

ALGEBRAS = [(6, 3), (15, 5), (65, 5), (10, 5)]
H = F(1, 2)


def alg63():
    return qo.QuatAlgebra(6, 3)


# --- arithmetic --------------------------------------------------------------


def test_basic_products():
    B = alg63()
    assert B.j * B.j == B.elem(3)
    assert B.j.nrd() == -3
    assert B.k * B.k == B.elem(-6)
    assert B.i * B.j + B.j * B.i == B.elem()
    assert B.i * B.i == B.elem(2)


def test_quat_arith_record():
    B = alg63()
    x = B.elem(1, 2, 0, 1)
    rec = qo.quat_arith(x, B.j)
    assert rec["product"] == x * B.j
    assert rec["sum"] == x + B.j
    assert x * x.conj() == B.elem(x.nrd())
    assert x * rec["inverse"] == B.one


def test_inverse_of_zero_norm():
    B = qo.QuatAlgebra(6, 3)
    with pytest.raises(qo.DivisionByZeroNorm):
        B.elem().inverse()


def test_ramified_primes():
    assert qo.algebra_discriminant(6, 3) == {2, 3}
    assert qo.algebra_discriminant(15, 5) == {3, 5}
    with pytest.raises(qo.PresentationMismatch):
        qo.QuatAlgebra(5, 5)


def test_hilbert_symbol_known_values():
    # (-1, -1) is ramified exactly at 2 (and infinity)
    assert qo.hilbert_symbol(-1, -1, 2) == -1
    assert qo.hilbert_symbol(-1, -1, 3) == 1
    # (2, 3)_3: 2 is a non-residue mod 3
    assert qo.hilbert_symbol(2, 3, 3) == -1


@pytest.mark.parametrize("D,m", ALGEBRAS)
def test_ramification_product_is_D(D, m):
    from math import prod
    assert prod(qo.algebra_discriminant(D, m)) == D


# --- orders --------------------------------------------------------------------


def test_lemma_order_3mod4():
    (O,) = qo.lemma_order(6, 3)
    assert [str(e) for e in O.basis] == ["1", "1/2*(1 + j + k)", "1/2*(1 + j - k)", "1/2*(i + k)"]
    assert qo.is_order(O).ok
    disc = qo.reduced_discriminant(O)
    assert disc.value == 6 and disc.hereditary


@pytest.mark.parametrize("D,m,names", [(15, 5, ["O_m1", "O_3"]), (65, 5, ["O_m1", "O_1"]), (10, 5, ["O_m1"])])
def test_lemma_orders_1mod4(D, m, names):
    orders = qo.lemma_order(D, m)
    assert [O.name for O in orders] == names
    for O in orders:
        assert qo.is_order(O).ok
        disc = qo.reduced_discriminant(O)
        assert disc.value == D and disc.hereditary


def test_lemma_order_bases_1mod4():
    O, O3 = qo.lemma_order(15, 5)
    assert [str(e) for e in O3.basis] == ["1", "1/2*(1 + k)", "j", "1/2*(i + j)"]
    _, O1 = qo.lemma_order(65, 5)
    assert [str(e) for e in O1.basis] == ["1", "1/2*(1 + i)", "j", "1/2*(j + k)"]
    (O,) = qo.lemma_order(10, 5)
    assert [str(e) for e in O.basis] == ["1", "1/2*(1 + j)", "k", "1/2*(i + k)"]


def test_congruence_out_of_scope():
    with pytest.raises(qo.CongruenceOutOfScope):
        qo.lemma_order(21, 3)


def test_standard_order_discriminant():
    O = qo.standard_order(alg63())
    assert qo.is_order(O).ok
    disc = qo.reduced_discriminant(O)
    assert disc.value == 24 and not disc.hereditary


def test_non_integral_lattice_witness():
    B = alg63()
    L = qo.QuatOrder(B, (B.one, B.elem(H, H), B.j, B.k))
    chk = qo.is_order(L)
    assert not chk.ok
    assert chk.witness == B.elem(H, H)
    assert chk.reason == "nrd(1/2*(1 + i)) = -1/4 is not an integer"
    with pytest.raises(qo.NotAnOrder):
        qo.reduced_discriminant(L)


def test_singular_basis():
    B = alg63()
    with pytest.raises(qo.SingularBasis):
        qo.is_order(qo.QuatOrder(B, (B.one, B.i, B.i, B.k)))


def test_half_integral_closure():
    assert {str(x) for x in qo.half_integral_closure(6, 3)} == {
        "1/2*(1 + j + k)", "1/2*(1 + i + j)", "1/2*(i + k)"}
    s15 = {str(x) for x in qo.half_integral_closure(15, 5)}
    assert {"1/2*(1 + j)", "1/2*(i + k)"} <= s15
    s65 = {str(x) for x in qo.half_integral_closure(65, 5)}
    assert {"1/2*(1 + i)", "1/2*(j + k)"} <= s65


def test_half_integral_closure_by_hand():
    # integrality of (a + b i + c j + d k)/2 in (6,3): trace a, norm (a^2 - 2b^2 - 3c^2 + 6d^2)/4
    want = {bits for bits in itertools.product((0, 1), repeat=4)
            if any(bits) and (bits[0] ** 2 - 2 * bits[1] ** 2 - 3 * bits[2] ** 2 + 6 * bits[3] ** 2) % 4 == 0}
    got = {tuple(int(2 * c) for c in x.coords) for x in qo.half_integral_closure(6, 3)}
    assert got == want


def test_equal_at_2():
    (O,) = qo.lemma_order(6, 3)
    assert qo.equal_at_2(O, O)
    assert not qo.equal_at_2(O, qo.standard_order(O.algebra))
    with pytest.raises(qo.AlgebraMismatch):
        qo.equal_at_2(O, qo.lemma_order(10, 5)[0])


def test_equal_at_2_for_order_containing_scaled_standard():
    (O,) = qo.lemma_order(6, 3)
    B = O.algebra
    # an order of discriminant 6 containing Z[1, 3i, j, k]: the closure with the half elements
    gens = [B.i * 3, B.j, B.k, *qo.half_integral_closure(6, 3)]
    O2 = qo.order_from_generators(B, gens)
    assert qo.reduced_discriminant(O2).value == 6
    assert qo.equal_at_2(O, O2)


def _two_adic_val(n):
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v


def _oracle_orders(D, m):
    """Closures of Z[1, m i, j, k] plus compatible subsets of the integral half-elements,
    kept when they are orders with the 2-part of their discriminant equal to that of D."""
    B = qo.QuatAlgebra(D, m)
    halves = qo.half_integral_closure(D, m)
    base = [B.i * m, B.j, B.k]
    out = []
    for r in range(1, len(halves) + 1):
        for subset in itertools.combinations(halves, r):
            gens = [B.one, *base, *subset]
            if not all((s * t).is_integral() for s in gens for t in gens):
                continue
            try:
                O = qo.order_from_generators(B, gens[1:], max_rounds=8)
            except qo.NotAnOrder:
                continue
            if not qo.is_order(O).ok:
                continue
            if _two_adic_val(qo.reduced_discriminant(O).value) == _two_adic_val(D):
                out.append(O)
    return out


@pytest.mark.parametrize("D,m", ALGEBRAS)
def test_oracle_closure_equals_lemma_order_at_2(D, m):
    oracle = _oracle_orders(D, m)
    lemma = qo.lemma_order(D, m)
    assert oracle
    assert all(any(qo.equal_at_2(O, L) for L in lemma) for O in oracle)
    assert all(any(qo.equal_at_2(O, L) for O in oracle) for L in lemma)


def test_index_discriminant_law():
    (O,) = qo.lemma_order(6, 3)
    small = qo.standard_order(O.algebra)
    idx = qo.lattice_index(O, small)
    assert idx == 4
    assert qo.reduced_discriminant(small).value == idx * qo.reduced_discriminant(O).value


def test_membership():
    (O,) = qo.lemma_order(6, 3)
    B = O.algebra
    assert B.i in O and B.j in O and B.k in O
    assert B.elem(H, H) not in O


# --- conjugation -----------------------------------------------------------------


def test_action_table_3mod4():
    (O,) = qo.lemma_order(6, 3)
    B = O.algebra
    ai = qo.conjugation_matrix(O, B.i)
    # columns: images of 1, X, Y, Z
    assert ai.matrix.tolist() == [[1, 1, 1, 0], [0, -1, 0, -1], [0, 0, -1, 1], [0, 0, 0, 1]]
    _, X, Y, Z = O.basis
    inv = B.i.inverse()
    assert B.i * X * inv == B.one - X
    assert B.i * Y * inv == B.one - Y
    assert B.i * Z * inv == Z + Y - X
    aj = qo.conjugation_matrix(O, B.j)
    jinv = B.j.inverse()
    assert (B.j * X * jinv, B.j * Y * jinv, B.j * Z * jinv) == (Y, X, -Z)
    assert not ai.identity_mod2 and not aj.identity_mod2


def test_action_table_1mod4():
    O = qo.lemma_order(15, 5)[0]
    B = O.algebra
    ai, aj, ak = (qo.conjugation_matrix(O, q) for q in (B.i, B.j, B.k))
    assert aj.identity_mod2
    assert not ai.identity_mod2 and ai.mod2 == ak.mod2


def test_conjugation_by_one_is_identity():
    for D, m in ALGEBRAS:
        for O in qo.lemma_order(D, m):
            assert qo.conjugation_matrix(O, O.algebra.one).matrix.is_identity()


def test_does_not_normalize():
    (O,) = qo.lemma_order(6, 3)
    B = O.algebra
    q = B.one + B.i * 3
    assert not qo.normalizes(O, q)
    with pytest.raises(qo.DoesNotNormalize) as exc:
        qo.conjugation_matrix(O, q)
    assert exc.value.element in O.basis


def _normalizing_elements(O):
    out = []
    for c in itertools.product((-1, 0, 1), repeat=4):
        if any(c):
            q = O.element(c)
            if q.nrd() != 0 and qo.normalizes(O, q):
                out.append(q)
    return out


def _all_orders():
    return [O for D, m in ALGEBRAS for O in qo.lemma_order(D, m)]


def test_gram_invariance_and_det_one():
    count = 0
    for O in _all_orders():
        G = O.gram
        for q in _normalizing_elements(O) + [O.algebra.i, O.algebra.j, O.algebra.k]:
            M = qo.conjugation_matrix(O, q).matrix
            assert M.T @ G @ M == G
            assert M.det() == 1
            count += 1
    assert count > 40


def test_composition_mod_2():
    for O in _all_orders():
        B = O.algebra
        mu, chi = B.k, B.j
        a = qo.conjugation_matrix(O, mu * chi)
        b = qo.conjugation_matrix(O, mu).matrix @ qo.conjugation_matrix(O, chi).matrix
        # conjugation depends on q only up to scalars, so the product is exact here
        assert a.matrix == b
        assert a.mod2 == b.mod(2)


# --- twists -----------------------------------------------------------------------


def _recheck(O, mu, chi):
    D = O.algebra.D
    n = -chi.nrd()
    return (chi.trd() == 0 and mu * chi == -(chi * mu) and n > 0 and n.denominator == 1
            and D % n.numerator == 0 and all(chi * e * chi.inverse() in O for e in O.basis)
            and chi in O)


def test_twists_63():
    (O,) = qo.lemma_order(6, 3)
    B = O.algebra
    tws = qo.twist_search(O, B.k)
    by_norm = {tw.norm: tw.chi for tw in tws}
    assert by_norm[3] == B.j
    assert set(by_norm) <= {2, 3}
    assert tws[0].nrd == -tws[0].norm


def test_twists_155():
    O = qo.lemma_order(15, 5)[0]
    B = O.algebra
    tws = qo.twist_search(O, B.k)
    assert any(tw.chi == B.j and tw.norm == 5 for tw in tws)


@pytest.mark.parametrize("D,m", ALGEBRAS)
def test_twists_recheck(D, m):
    for O in qo.lemma_order(D, m):
        mu = O.algebra.k
        tws = qo.twist_search(O, mu)
        assert tws
        for tw in tws:
            assert _recheck(O, mu, tw.chi)
            assert qo.is_twist(O, mu, tw.chi)
        norms = {tw.norm for tw in tws}
        # the realized norms pair up to D modulo squares
        assert norms <= {m, D // m}


def test_bad_polarization():
    (O,) = qo.lemma_order(6, 3)
    with pytest.raises(qo.BadPolarization):
        qo.twist_search(O, O.algebra.j)


# --- verdicts ---------------------------------------------------------------------


def test_qm_verdicts():
    assert qo.qm_endo_verdict(6, 3).result == "L_contained_in_2_torsion_field"
    v = qo.qm_endo_verdict(10, 5)
    assert v.result == "candidate_subfields" and set(v.candidates) == {-10, 2}
    v = qo.qm_endo_verdict(15, 5)
    assert set(v.candidates) == {5, -15, 3}
    assert -15 in v.candidates
    v = qo.qm_endo_verdict(65, 5)
    assert set(v.candidates) == {5, -65, 13}


def test_qm_verdict_kernels_agree_up_to_relabeling():
    v = qo.qm_endo_verdict(15, 5)
    assert [len(k.trivial_mod2) for k in v.kernels] == [1, 1]
    assert v.kernels[0].trivial_mod2 == ("chi",)


# --- norm multiplicativity ---------------------------------------------------------

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
quats = st.tuples(rationals, rationals, rationals, rationals)


@pytest.mark.parametrize("D,m", ALGEBRAS)
@settings(max_examples=500)
@given(x=quats, y=quats)
def test_nrd_multiplicative(D, m, x, y):
    B = qo.QuatAlgebra(D, m)
    a, b = B.elem(*x), B.elem(*y)
    assert (a * b).nrd() == a.nrd() * b.nrd()
    assert (a * b).conj() == b.conj() * a.conj()


def _legendre(a, p):
    return 1 if pow(a % p, (p - 1) // 2, p) == 1 else -1


def _oracle_hilbert(a, b, p):
    """Textbook formula for (a, b)_p with a, b nonzero integers."""
    def split(x):
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v, x
    al, u = split(a)
    be, v = split(b)
    if p != 2:
        eps = (p - 1) // 2
        return (-1) ** (al * be * eps) * _legendre(u, p) ** be * _legendre(v, p) ** al
    e = lambda x: ((x - 1) // 2) % 2
    w = lambda x: ((x * x - 1) // 8) % 2
    return (-1) ** (e(u) * e(v) + al * w(v) + be * w(u))


@settings(max_examples=200)
@given(st.integers(2, 300), st.data())
def test_presentation_accepted_iff_ramification_matches(D, data):
    if not is_squarefree(D):
        return
    m = data.draw(st.sampled_from([d for d in range(1, D + 1) if D % d == 0]))
    from math import prod
    primes = [p for p in range(2, 2 * D + 1) if (2 * D) % p == 0 and all(p % q for q in range(2, p))]
    ramified = {p for p in primes if _oracle_hilbert(D // m, m, p) == -1}
    if prod(ramified) == D:
        assert qo.QuatAlgebra(D, m).ramified_primes == ramified
    else:
        with pytest.raises(qo.PresentationMismatch):
            qo.QuatAlgebra(D, m)
