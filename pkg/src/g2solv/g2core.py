"""Torsion of the model G2-structure on the solvable algebras.

The positive 3-form is the fixed

    phi = e^127 + e^347 + e^567 + e^135 - e^146 - e^236 - e^245,

with dual 4-form psi = *phi, and the metric is the one making e_1..e_7
orthonormal.  Structure-dependence enters purely through the exterior
derivative of the algebra, so every quantity here is a finite combinatorial
computation on sparse forms.

Torsion components are normalized by

    tau0 = (1/7) * (dphi ^ phi)
    tau1 = -(1/12) * (*dphi ^ phi)
    tau2 = -*dpsi + 4 * (tau1 ^ psi)
    tau3 = *dphi - tau0 phi - 3 * (tau1 ^ phi)

so that dphi = tau0 psi + 3 tau1 ^ phi + *tau3 and
dpsi = 4 tau1 ^ psi + tau2 ^ phi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from . import forms
from .forms import KForm, hodge, inner, wedge
from .liealg import BracketTriple, ce_differential, homothety_invariant


@dataclass
class G2Structure:
    """A bracket triple together with the fixed pair (phi, psi)."""

    triple: BracketTriple

    @property
    def phi(self) -> KForm:
        return forms.PHI

    @property
    def psi(self) -> KForm:
        return forms.PSI

    def d(self, alpha: KForm) -> KForm:
        return ce_differential(self.triple, alpha)


def structure(triple: BracketTriple) -> G2Structure:
    return G2Structure(triple)


@dataclass
class TorsionForms:
    tau0: float
    tau1: KForm
    tau2: KForm
    tau3: KForm
    tau_two_form: KForm  # -*d*phi, the full torsion 2-form when dphi = 0
    norm_sq_tau: float


def torsion_forms(s: G2Structure) -> TorsionForms:
    phi, psi = s.phi, s.psi
    dphi = s.d(phi)
    dpsi = s.d(psi)
    tau0 = hodge(wedge(dphi, phi)).scalar() / 7.0
    tau1 = hodge(wedge(hodge(dphi), phi)) * (-1.0 / 12.0)
    tau2 = -hodge(dpsi) + 4.0 * hodge(wedge(tau1, psi))
    tau3 = hodge(dphi) - tau0 * phi - 3.0 * hodge(wedge(tau1, phi))
    tau = -hodge(s.d(hodge(phi)))
    return TorsionForms(
        tau0=tau0,
        tau1=tau1,
        tau2=tau2,
        tau3=tau3,
        tau_two_form=tau,
        norm_sq_tau=inner(tau, tau),
    )


def torsion_class(s: G2Structure, tol: float | None = None) -> dict:
    """Flags for the four torsion components, by norm against `tol`."""
    cut = TOL.zero_form if tol is None else tol
    t = torsion_forms(s)
    return {
        "W1": abs(t.tau0) > cut,
        "W2": t.tau2.norm() > cut,
        "W3": t.tau3.norm() > cut,
        "W4": t.tau1.norm() > cut,
    }


def trace_torsion(s: G2Structure) -> float:
    """Trace of the full torsion endomorphism, (7/4) tau0."""
    dphi = s.d(s.phi)
    return 1.75 * hodge(wedge(dphi, s.phi)).scalar() / 7.0


def laplacians(s: G2Structure) -> dict:
    """Hodge Laplacians of phi and psi.

    On this algebra d has no codifferential shortcut, so both are assembled
    from the star: lap_phi = *d*dphi - d*dpsi and lap_psi = *lap_phi.
    """
    dphi = s.d(s.phi)
    dpsi = s.d(s.psi)
    lap_phi = hodge(s.d(hodge(dphi))) - s.d(hodge(dpsi))
    return {"phi": lap_phi, "psi": hodge(lap_phi)}


def erp_residual(s: G2Structure) -> dict:
    """Residual of the extremal pinching identity for a closed structure:

        d tau = (1/6)|tau|^2 phi + (1/6) * (tau ^ tau),   tau = -*d*phi.

    Raises when dphi != 0, since tau is only the full torsion there.
    """
    phi = s.phi
    dphi = s.d(phi)
    if not dphi.is_zero():
        raise ValueError("extremal pinching residual needs a closed structure")
    tau = -hodge(s.d(hodge(phi)))
    nsq = inner(tau, tau)
    res = s.d(tau) - (nsq / 6.0) * phi - hodge(wedge(tau, tau)) / 6.0
    return {"residual_norm": res.norm(), "tau_norm_sq": nsq}


_D1 = np.diag([1.0, 1.0, -1.0, -1.0])
_D2 = np.diag([1.0, -1.0, 1.0, -1.0])
_D3 = np.diag([1.0, -1.0, -1.0, 1.0])


def closed_triple(a: float, b: float, c: float) -> BracketTriple:
    """The diagonal triples with dphi = 0: (a D1, b D2, c D3) for the three
    traceless sign patterns pairing off the coefficient constraints."""
    return BracketTriple(a * _D1, b * _D2, c * _D3)


def closed_family_invariant(a: float, b: float, c: float) -> float:
    """Homothety invariant along the closed diagonal family."""
    return homothety_invariant(closed_triple(a, b, c))
