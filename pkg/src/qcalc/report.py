"""Full invariant report for one algebra, as an ordered JSON-ready dict."""

from __future__ import annotations

from .biquard import Pipeline, audit, run_pipeline
from .conformal import is_qc_conformally_flat, wqc_tensor
from .exterior import LieAlgebra
from .family import fingerprint
from .qc import (
    QCFrame,
    check_bi1,
    check_compatibility,
    d_fundamental_form,
    vertical_integrable,
)
from .scalars import scalar_str

SAMPLE_TUPLES = ((1, 2, 1, 2), (1, 3, 1, 3), (1, 4, 1, 4), (3, 4, 3, 4))


def _matrix_strings(m) -> list[list[str]]:
    return [[scalar_str(x) for x in row] for row in m]


def _r_samples(p: Pipeline) -> list[dict]:
    h = p.frame.horizontal
    out = []
    for a, b, c, dd in SAMPLE_TUPLES:
        value = p.riem[(h[a - 1], h[b - 1], h[c - 1], h[dd - 1])]
        out.append({"idx": [a, b, c, dd], "value": scalar_str(value)})
    return out


def _wqc_samples(w) -> list[dict]:
    out = []
    for a, b, c, dd in SAMPLE_TUPLES:
        value = w[a - 1][b - 1][c - 1][dd - 1]
        out.append({"idx": [a, b, c, dd], "value": scalar_str(value)})
    return out


def build_report(g: LieAlgebra, frame: QCFrame | None) -> tuple[dict, bool]:
    """Build the report dict and an overall pass flag.

    The pass flag is False when the Jacobi identity fails, or when a qc
    block is present and its compatibility, first Biquard identity, or any
    audit check fails.  The closedness of the fundamental 4-form, vertical
    integrability, and conformal flatness are reported as findings only.
    """
    report: dict = {
        "name": g.name,
        "jacobi": g.is_valid,
        "qc_valid": None,
        "bi1": None,
        "S": None,
        "T0": None,
        "torsion_endos": None,
        "torsion_nonzero": None,
        "dOmega_zero": None,
        "vertical_integrable": None,
        "R_samples": None,
        "wqc_samples": None,
        "conformally_flat": None,
        "audit": None,
        "fingerprint": None,
    }
    if not g.is_valid:
        return report, False
    report["fingerprint"] = fingerprint(g)
    if frame is None:
        return report, True
    ok = True
    qc_valid = check_compatibility(g, frame)
    report["qc_valid"] = qc_valid
    if not qc_valid:
        return report, False
    report["dOmega_zero"] = d_fundamental_form(g, frame).is_zero
    report["vertical_integrable"] = vertical_integrable(g, frame)
    bi1_ok, _ = check_bi1(g, frame)
    report["bi1"] = bi1_ok
    if not bi1_ok:
        return report, False
    p = run_pipeline(g, frame)
    report["S"] = scalar_str(p.s_value)
    report["T0"] = _matrix_strings(p.t0)
    report["torsion_endos"] = [_matrix_strings(m) for m in p.endos]
    report["torsion_nonzero"] = any(
        any(x != 0 for row in m for x in row) for m in p.endos
    )
    report["R_samples"] = _r_samples(p)
    w = wqc_tensor(p.riem, p.t0, p.s_value, p.frame)
    report["wqc_samples"] = _wqc_samples(w)
    report["conformally_flat"] = is_qc_conformally_flat(w)
    checks = audit(p)
    report["audit"] = checks
    if not all(c["passed"] for c in checks):
        ok = False
    return report, ok
