import itertools
from fractions import Fraction

import pytest

from qcalc.biquard import (
    connection_torsion,
    levi_civita,
    normalize_scale,
    ricci_forms,
    run_pipeline,
    solve_qc_scalar_curvature,
    sp1_connection_forms,
    audit,
)
from qcalc.catalog import document
from qcalc.errors import NotIntegrable
from qcalc.exterior import Form, LieAlgebra, Vec, dot
from qcalc.qc import apply_endo, derive_complex_structures, standard_frame
from qcalc.scalars import is_zero, variable

S = variable("S")


def load(name, mu=None):
    doc = document(name)
    g = doc.to_algebra()
    if mu is not None:
        g = g.substitute(Fraction(mu))
    return g, doc.to_frame()


def pipeline(name, mu=None):
    g, frame = load(name, mu)
    return run_pipeline(g, frame)


def mono(*idx, c=1):
    return Form.monomial(7, Fraction(c), idx)


def ev(i):
    return Form.covector(7, i)


# ---------------------------------------------------------------------------
# sp(1)-connection forms: golden closed forms


def test_connection_forms_g1():
    g, frame = load("g1")
    a1, a2, a3 = sp1_connection_forms(g, frame)
    half = Fraction(1, 2)
    assert a1 == (-half * (S - half)) * ev(5)
    assert a2 == (-half * (S - half)) * ev(6)
    assert a3 == -1 * ev(4) + (-half * (S + half)) * ev(7)


def test_connection_forms_g2():
    g, frame = load("g2")
    a1, a2, a3 = sp1_connection_forms(g, frame)
    half, sixth = Fraction(1, 2), Fraction(1, 6)
    assert a1 == (-half * (S - sixth)) * ev(5)
    assert a2 == (-half * (S - sixth)) * ev(6)
    assert a3 == -1 * ev(4) + (-half * (S + sixth)) * ev(7)


def test_connection_forms_heisenberg():
    g, frame = normalize_scale(*load("heisenberg"))
    a1, a2, a3 = sp1_connection_forms(g, frame)
    for r, a in enumerate((a1, a2, a3)):
        assert a == (-S / 2) * frame.etas[r]


def test_connection_forms_require_duality_conditions():
    # break the duality conditions: eta_1 paired with its own differential
    diffs = list(document("heisenberg").differentials.values())
    diffs[4] = diffs[4] + mono(1, 5)
    g = LieAlgebra("broken", 7, tuple(diffs), None)
    frame = standard_frame(scale=Fraction(1))
    with pytest.raises(NotIntegrable):
        sp1_connection_forms(g, frame)


# ---------------------------------------------------------------------------
# Ricci 2-forms and the scalar curvature


def test_ricci_forms_g1():
    g, frame = load("g1")
    rhos = ricci_forms(g, frame, sp1_connection_forms(g, frame))
    half = Fraction(1, 2)
    w1 = mono(1, 2) + mono(3, 4)
    w2 = mono(1, 3) + mono(4, 2)
    w3 = mono(1, 4) + mono(2, 3)
    assert rhos[0] == (-half * (S - half)) * w1
    assert rhos[1] == (-half * (S - half)) * w2
    assert rhos[2] == mono(1, 4) + (-half * (S + half)) * w3


def test_scalar_curvature_values():
    for name, expected in (("g1", Fraction(-1, 2)), ("g2", Fraction(-1, 6)), ("heisenberg", Fraction(0))):
        g, frame = normalize_scale(*load(name))
        rhos = ricci_forms(g, frame, sp1_connection_forms(g, frame))
        assert solve_qc_scalar_curvature(frame, rhos) == expected


@pytest.mark.parametrize("name", ["g1", "g2"])
def test_three_contractions_agree(name):
    # each of the three Ricci contractions is its own linear equation in S;
    # substituting the solved value must satisfy all of them
    g, frame = load(name)
    structures = derive_complex_structures(frame)
    rhos = ricci_forms(g, frame, sp1_connection_forms(g, frame))
    s_value = solve_qc_scalar_curvature(frame, rhos)
    for r in range(3):
        total = Fraction(0)
        for pos in range(4):
            ea = frame.hvec(pos)
            image = apply_endo(structures[r], [ea.comp(i) for i in frame.horizontal])
            vecs = [ea, sum((image[k] * frame.hvec(k) for k in range(4)), Vec.zero(7))]
            value = rhos[r].evaluate(vecs)
            total += value.substitute(s_value) if hasattr(value, "substitute") else value
        assert total == -4 * s_value


# ---------------------------------------------------------------------------
# torsion tensor against the closed-form oracle


def t0_oracle(frame, coeff):
    # the closed form: T0(X, Y) = coeff * (e14 - e23)(X, I3 Y)
    pattern = mono(1, 4) - mono(2, 3)
    _, _, i3 = derive_complex_structures(frame)
    out = []
    for a in range(4):
        row = []
        for b in range(4):
            image = apply_endo(i3, [Fraction(1) if k == b else Fraction(0) for k in range(4)])
            iy = sum((image[k] * frame.hvec(k) for k in range(4)), Vec.zero(7))
            row.append(coeff * pattern.evaluate([frame.hvec(a), iy]))
        out.append(row)
    return out


def test_t0_matches_closed_form_g1():
    p = pipeline("g1")
    assert p.t0 == t0_oracle(p.frame, Fraction(-1, 2))
    diag = [p.t0[i][i] for i in range(4)]
    assert diag == [Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(-1, 2)]


def test_t0_matches_closed_form_g2():
    p = pipeline("g2")
    assert p.t0 == t0_oracle(p.frame, Fraction(-1, 6))


def test_t0_heisenberg_zero():
    p = pipeline("heisenberg")
    assert all(x == 0 for row in p.t0 for x in row)


@pytest.mark.parametrize(
    "name,mu", [("g1", None), ("g2", None), ("heisenberg", None), ("prop31_family", "-1"), ("prop31_family", "-1/3")]
)
def test_t0_quaternionic_average_identity(name, mu):
    # T0(X,Y) + sum_r T0(I_r X, I_r Y) = 0
    p = pipeline(name, mu)
    structures = derive_complex_structures(p.frame)
    for a in range(4):
        for b in range(4):
            total = p.t0[a][b]
            for m in structures:
                ia = [m[k][a] for k in range(4)]
                ib = [m[k][b] for k in range(4)]
                total += sum(
                    ia[x] * ib[y] * p.t0[x][y] for x in range(4) for y in range(4)
                )
            assert total == 0


@pytest.mark.parametrize(
    "name,mu", [("g1", None), ("g2", None), ("heisenberg", None), ("prop31_family", "-1"), ("prop31_family", "-1/3")]
)
def test_torsion_endos_back_substitution(name, mu):
    # 4 g(T_{xi_r}(I_r X), Y) = T0(X, Y) - T0(I_r X, I_r Y)
    p = pipeline(name, mu)
    structures = derive_complex_structures(p.frame)
    for r, m in enumerate(structures):
        endo = p.endos[r]
        for b in range(4):  # X = e_{b+1}
            ix = [m[k][b] for k in range(4)]
            for a in range(4):  # Y = e_{a+1}
                lhs = 4 * sum(endo[a][k] * ix[k] for k in range(4))
                iy = [m[k][a] for k in range(4)]
                rhs = p.t0[b][a] - sum(
                    ix[x] * iy[y] * p.t0[x][y] for x in range(4) for y in range(4)
                )
                assert lhs == rhs


def test_torsion_endo_values():
    p1 = pipeline("g1")
    e1 = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    assert apply_endo(p1.endos[0], e1) == [Fraction(0), Fraction(-1, 4), Fraction(0), Fraction(0)]
    assert all(x == 0 for row in p1.endos[2] for x in row)

    p2 = pipeline("g2")
    assert apply_endo(p2.endos[0], e1) == [Fraction(0), Fraction(-1, 12), Fraction(0), Fraction(0)]
    assert all(x == 0 for row in p2.endos[2] for x in row)


def test_assembled_torsion_slots():
    p = pipeline("g1")
    # horizontal x horizontal: minus the vertical part of the bracket
    br = p.g.bracket(1, 2)
    expected = Vec(tuple(-br.comp(i) if i >= 5 else Fraction(0) for i in range(1, 8)))
    assert p.torsion.value(1, 2) == expected
    # vertical x vertical
    assert p.torsion.value(5, 6) == Fraction(1, 2) * Vec.basis(7, 7)
    # scalar curvature from the vertical torsion slot
    assert -dot(p.torsion.value(5, 6), Vec.basis(7, 7)) == p.s_value


# ---------------------------------------------------------------------------
# connections


def test_levi_civita_abelian_and_heisenberg():
    z = Form.zero(7, 2)
    abelian = LieAlgebra("abelian", 7, tuple(z for _ in range(7)), None)
    lc = levi_civita(abelian)
    assert all(lc.nabla(a, b).is_zero for a in range(1, 8) for b in range(1, 8))

    heis, _ = load("heisenberg")
    lc = levi_civita(heis)
    assert lc.nabla(1, 2) == Fraction(-1, 2) * Vec.basis(7, 5)


@pytest.mark.parametrize("name", ["g1", "g2", "heisenberg"])
def test_levi_civita_is_metric_and_torsion_free(name):
    g, _ = load(name)
    lc = levi_civita(g)
    for a in range(1, 8):
        for b in range(1, 8):
            gap = lc.nabla(a, b) - lc.nabla(b, a) - g.bracket(a, b)
            assert gap.is_zero
            for c in range(1, 8):
                assert lc.nabla(a, b).comp(c) + lc.nabla(a, c).comp(b) == 0


def test_canonical_connection_heisenberg_vanishes_horizontally():
    p = pipeline("heisenberg")
    assert p.conn.nabla(1, 2).is_zero
    assert all(p.conn.nabla(a, b).is_zero for a in range(1, 5) for b in range(1, 5))


@pytest.mark.parametrize("name", ["g1", "g2"])
def test_connection_torsion_roundtrip(name):
    p = pipeline(name)
    recomputed = connection_torsion(p.g, p.conn)
    for a in range(1, 8):
        for b in range(a + 1, 8):
            assert recomputed.value(a, b) == p.torsion.value(a, b)


# ---------------------------------------------------------------------------
# curvature


def test_curvature_g1():
    p = pipeline("g1")
    assert p.conn.nabla(5, 1) == Fraction(1, 4) * Vec.basis(7, 2)
    assert p.riem[(1, 2, 1, 2)] == Fraction(1, 2)


def test_curvature_g2():
    p = pipeline("g2")
    assert p.riem[(1, 2, 1, 2)] == Fraction(11, 18)


def test_curvature_heisenberg_flat():
    p = pipeline("heisenberg")
    assert all(is_zero(v) for v in p.riem.values())


@pytest.mark.parametrize("name,total", [("g1", -12), ("g2", -4)])
def test_horizontal_scalar_contraction(name, total):
    p = pipeline(name)
    acc = Fraction(0)
    for a in p.frame.horizontal:
        for b in p.frame.horizontal:
            acc += p.riem[(b, a, a, b)]
    assert acc == total
    assert acc == 24 * p.s_value


# ---------------------------------------------------------------------------
# audits and scale-invariance


@pytest.mark.parametrize(
    "name,mu", [("g1", None), ("g2", None), ("heisenberg", None), ("prop31_family", "-1"), ("prop31_family", "-1/3")]
)
def test_audit_all_pass(name, mu):
    p = pipeline(name, mu)
    checks = audit(p)
    assert [c["name"] for c in checks] == [
        "metric_compatibility",
        "preserves_splitting",
        "rotates_complex_structures",
        "torsion_endo_properties",
        "ricci_from_curvature",
        "scalar_from_curvature",
        "scalar_from_torsion",
        "torsion_roundtrip",
    ]
    assert all(c["passed"] for c in checks), checks


@pytest.mark.parametrize("mu,twin", [("-1", "g1"), ("-1/3", "g2")])
def test_family_pipeline_equals_rescaled_twin(mu, twin):
    # the scale-1 family members are the catalog algebras in rescaled
    # vertical coordinates, so the whole pipeline must coincide
    pf = pipeline("prop31_family", mu)
    pt = pipeline(twin)
    assert pf.s_value == pt.s_value
    assert pf.t0 == pt.t0
    assert pf.endos == pt.endos
    assert pf.riem == pt.riem
