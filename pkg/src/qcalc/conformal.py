"""Kulkarni-Nomizu products and the qc conformal curvature tensor.

Everything here lives on the four horizontal directions.  Tensors of rank 4
are nested 4x4x4x4 lists indexed by horizontal position; rank-2 inputs are
4x4 matrices.
"""

from __future__ import annotations

from fractions import Fraction

from .qc import Matrix4, QCFrame, derive_complex_structures
from .scalars import Scalar, is_zero

Tensor4H = list  # [a][b][c][d] -> Scalar


def _zero4() -> Tensor4H:
    return [
        [[[Fraction(0) for _ in range(4)] for _ in range(4)] for _ in range(4)]
        for _ in range(4)
    ]


def kulkarni_nomizu(mu: Matrix4, nu: Matrix4) -> Tensor4H:
    """(mu @ nu)(X,Y,Z,V) = mu(X,Z)nu(Y,V) + mu(Y,V)nu(X,Z) - mu(Y,Z)nu(X,V) - mu(X,V)nu(Y,Z)."""
    out = _zero4()
    for a in range(4):
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    out[a][b][c][d] = (
                        mu[a][c] * nu[b][d]
                        + mu[b][d] * nu[a][c]
                        - mu[b][c] * nu[a][d]
                        - mu[a][d] * nu[b][c]
                    )
    return out


def _omega_matrices(frame: QCFrame) -> list[Matrix4]:
    mats = []
    for om in frame.omegas:
        mats.append(
            [
                [om.evaluate([frame.hvec(a), frame.hvec(b)]) for b in range(4)]
                for a in range(4)
            ]
        )
    return mats


def wqc_tensor(
    riem: dict[tuple[int, int, int, int], Scalar],
    t0: Matrix4,
    s_value: Fraction,
    frame: QCFrame,
) -> Tensor4H:
    """Literal term-by-term assembly of the conformal curvature on H."""
    i_mats = derive_complex_structures(frame)
    om_mats = _omega_matrices(frame)
    h = frame.horizontal

    gm = [[Fraction(1 if a == b else 0) for b in range(4)] for a in range(4)]
    l0 = [[t0[a][b] / 2 for b in range(4)] for a in range(4)]
    # (I_s L0)(X, Y) = -L0(X, I_s Y), i.e. the matrix -L0 . I_s
    isl0 = [
        [
            [-sum((l0[a][c] * m[c][b] for c in range(4)), Fraction(0)) for b in range(4)]
            for a in range(4)
        ]
        for m in i_mats
    ]

    def t0_pair(mat_left: Matrix4 | None, a: int, b: int, mat_right: Matrix4 | None) -> Scalar:
        """T0 with an optional complex structure applied to either slot."""
        left = (
            [mat_left[c][a] for c in range(4)]
            if mat_left is not None
            else [Fraction(1 if c == a else 0) for c in range(4)]
        )
        right = (
            [mat_right[c][b] for c in range(4)]
            if mat_right is not None
            else [Fraction(1 if c == b else 0) for c in range(4)]
        )
        total: Scalar = Fraction(0)
        for x in range(4):
            for y in range(4):
                total = total + left[x] * t0[x][y] * right[y]
        return total

    w = _zero4()
    gg = kulkarni_nomizu(gm, gm)
    g_l0 = kulkarni_nomizu(gm, l0)
    om_knp = [kulkarni_nomizu(om_mats[s], isl0[s]) for s in range(3)]
    omom = [kulkarni_nomizu(om_mats[s], om_mats[s]) for s in range(3)]
    quarter_s = s_value / 4
    for a in range(4):
        for b in range(4):
            for c in range(4):
                for d in range(4):
                    val: Scalar = riem[(h[a], h[b], h[c], h[d])]
                    val = val + g_l0[a][b][c][d]
                    for s in range(3):
                        val = val + om_knp[s][a][b][c][d]
                        cross = om_mats[s][a][b] * (
                            t0_pair(None, c, d, i_mats[s]) - t0_pair(i_mats[s], c, d, None)
                        ) + om_mats[s][c][d] * (
                            t0_pair(None, a, b, i_mats[s]) - t0_pair(i_mats[s], a, b, None)
                        )
                        val = val - cross / 2
                        val = val + quarter_s * (
                            omom[s][a][b][c][d]
                            + 4 * om_mats[s][a][b] * om_mats[s][c][d]
                        )
                    val = val + quarter_s * gg[a][b][c][d]
                    w[a][b][c][d] = val
    return w


def is_qc_conformally_flat(w: Tensor4H) -> bool:
    return all(
        is_zero(w[a][b][c][d])
        for a in range(4)
        for b in range(4)
        for c in range(4)
        for d in range(4)
    )
