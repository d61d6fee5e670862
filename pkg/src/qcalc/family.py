"""One-parameter families of structure equations.

Collects the polynomial constraints that d^2 = 0 imposes on the parameter,
solves for the admissible rational values, specializes, and fingerprints the
resulting algebras by cohomology dimensions and series behaviour.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotALieAlgebra
from .exterior import Form, LieAlgebra, cohomology_dim, derived_and_central_series
from .scalars import Poly, Scalar, rational_roots


class AllValues:
    """Marker: the constraint set is empty, every parameter value works."""

    def __repr__(self) -> str:
        return "AllValues"


ALL_VALUES = AllValues()


def _normalized(c: Scalar) -> tuple:
    """Dedup key: coefficients scaled so the leading one is 1."""
    if isinstance(c, Poly):
        lead = c.coeffs[-1]
        return tuple(x / lead for x in c.coeffs)
    return (Fraction(1),)


def jacobi_constraints(fam: LieAlgebra) -> list[Scalar]:
    """Distinct nonzero coefficients of every d(d e^k), up to rational multiples."""
    seen: dict[tuple, Scalar] = {}
    for k in range(1, fam.dim + 1):
        for c in fam.d(fam.differential(k)).terms.values():
            seen.setdefault(_normalized(c), c)
    return list(seen.values())


def solve_family(fam: LieAlgebra) -> set[Fraction] | AllValues:
    """Common rational roots of all constraints; AllValues when there are none."""
    constraints = jacobi_constraints(fam)
    if not constraints:
        return ALL_VALUES
    roots: set[Fraction] | None = None
    for c in constraints:
        if isinstance(c, Poly):
            here = rational_roots(c)
        else:
            here = set()  # a nonzero constant constraint admits nothing
        roots = here if roots is None else roots & here
        if not roots:
            return set()
    return roots


def specialize(fam: LieAlgebra, value: Fraction) -> LieAlgebra:
    """Substitute the parameter and insist the result is a Lie algebra."""
    g = fam.substitute(Fraction(value))
    bad = g.jacobi_check()
    if bad:
        raise NotALieAlgebra(
            f"{fam.name} at {fam.param or 'parameter'}={value}: d^2 != 0"
        )
    return g


def rescale_covectors(g: LieAlgebra, factors: dict[int, Fraction]) -> LieAlgebra:
    """Pass to the coframe f^k = c_k e^k; structure constants pick up c_k/(c_i c_j)."""
    c = {i: Fraction(factors.get(i, 1)) for i in range(1, g.dim + 1)}
    diffs = []
    for k in range(1, g.dim + 1):
        old = g.differential(k)
        diffs.append(
            Form.make(
                g.dim,
                2,
                {
                    (i, j): coeff * c[k] / (c[i] * c[j])
                    for (i, j), coeff in old.terms.items()
                },
            )
        )
    return LieAlgebra(g.name, g.dim, tuple(diffs), g.param)


def fingerprint(g: LieAlgebra) -> dict:
    """Basis-invariant distinguishing data: Betti numbers plus series flags."""
    series = derived_and_central_series(g)
    return {
        "betti": [cohomology_dim(g, k) for k in range(g.dim + 1)],
        "nilpotent": series["is_nilpotent"],
        "solvable": series["is_solvable"],
    }
