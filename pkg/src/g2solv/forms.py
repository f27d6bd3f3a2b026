"""Exterior algebra on a 7-dimensional oriented inner-product space.

Forms are stored sparsely: a k-form is a map from strictly increasing index
tuples (entries in 1..7) to real coefficients.  The basis covectors e^1..e^7
are declared orthonormal and e^1234567 is the unit volume form, so the Hodge
star, the pointwise inner product and interior products are all combinatorial.

The degree-0 case is the empty tuple ().  Wedging past top degree returns the
zero form (clamped to degree 7) rather than raising; this keeps derivations
and antiderivations uniform at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import TOL

DIM = 7
_FULL = tuple(range(1, DIM + 1))


def _merge(I: tuple, J: tuple):
    """Merge two strictly increasing tuples, tracking the permutation sign.

    Returns (sign, merged) with sign in {+1, -1}, or (0, None) when the
    tuples share an index (the wedge of repeated covectors vanishes).
    """
    sign = 1
    out = []
    i = j = 0
    while i < len(I) and j < len(J):
        a, b = I[i], J[j]
        if a == b:
            return 0, None
        if a < b:
            out.append(a)
            i += 1
        else:
            # b jumps over the remaining entries of I
            if (len(I) - i) % 2:
                sign = -sign
            out.append(b)
            j += 1
    out.extend(I[i:])
    out.extend(J[j:])
    return sign, tuple(out)


def _prune(coeffs: dict) -> dict:
    return {I: c for I, c in coeffs.items() if abs(c) > TOL.prune}


@dataclass(frozen=True)
class KForm:
    """Sparse k-form with a canonical coefficient map."""

    degree: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.degree <= DIM:
            raise ValueError(f"degree must lie in 0..{DIM}, got {self.degree}")
        clean = {}
        for I, c in self.coeffs.items():
            I = tuple(int(i) for i in I)
            if len(I) != self.degree:
                raise ValueError(f"index {I} does not match degree {self.degree}")
            if any(not 1 <= i <= DIM for i in I):
                raise ValueError(f"index {I} out of range 1..{DIM}")
            if any(I[k] >= I[k + 1] for k in range(len(I) - 1)):
                raise ValueError(f"index {I} must be strictly increasing")
            c = float(c)
            if abs(c) > TOL.prune:
                clean[I] = c
        object.__setattr__(self, "coeffs", clean)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "KForm") -> "KForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        out = dict(self.coeffs)
        for I, c in other.coeffs.items():
            out[I] = out.get(I, 0.0) + c
        return KForm(self.degree, _prune(out))

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __neg__(self) -> "KForm":
        return KForm(self.degree, {I: -c for I, c in self.coeffs.items()})

    def __mul__(self, scalar: float) -> "KForm":
        s = float(scalar)
        return KForm(self.degree, _prune({I: s * c for I, c in self.coeffs.items()}))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "KForm":
        return self * (1.0 / float(scalar))

    # -- queries -------------------------------------------------------------

    def norm(self) -> float:
        return float(np.sqrt(sum(c * c for c in self.coeffs.values())))

    def is_zero(self, tol: float | None = None) -> bool:
        return self.norm() <= (TOL.zero_form if tol is None else tol)

    def scalar(self) -> float:
        """Coefficient of a 0- or 7-form as a plain number."""
        if self.degree == 0:
            return self.coeffs.get((), 0.0)
        if self.degree == DIM:
            return self.coeffs.get(_FULL, 0.0)
        raise ValueError("scalar() only applies to degree 0 or 7")

    def __str__(self):
        return format_form(self)


def monomial(indices, coeff: float = 1.0) -> KForm:
    """Single basis monomial coeff * e^{indices}; indices need not be sorted."""
    idx = tuple(int(i) for i in indices)
    sign = 1
    srt = list(idx)
    # insertion sort, counting swaps
    for a in range(1, len(srt)):
        b = a
        while b > 0 and srt[b - 1] > srt[b]:
            srt[b - 1], srt[b] = srt[b], srt[b - 1]
            sign = -sign
            b -= 1
    if len(set(srt)) != len(srt):
        return KForm(len(idx), {})
    return KForm(len(idx), {tuple(srt): sign * float(coeff)})


def zero_form(degree: int) -> KForm:
    return KForm(degree, {})


def wedge(alpha: KForm, beta: KForm) -> KForm:
    """Exterior product.  Degrees beyond 7 clamp to the zero 7-form."""
    deg = alpha.degree + beta.degree
    if deg > DIM:
        return KForm(DIM, {})
    out: dict = {}
    for I, x in alpha.coeffs.items():
        for J, y in beta.coeffs.items():
            s, K = _merge(I, J)
            if s:
                out[K] = out.get(K, 0.0) + s * x * y
    return KForm(deg, _prune(out))


def _complement_sign(I: tuple):
    """Complement J of I in 1..7 and the sign with e^I ^ e^J = sign * vol."""
    inI = set(I)
    J = tuple(i for i in _FULL if i not in inI)
    # inversions between the blocks I and J of the concatenation (I, J)
    inv = 0
    for a in I:
        for b in J:
            if a > b:
                inv += 1
    return (-1) ** inv, J


def hodge(alpha: KForm) -> KForm:
    """Hodge star for the orthonormal basis and volume form e^1234567.

    With this convention hodge(hodge(x)) == x in every degree (n = 7 odd).
    """
    out = {}
    for I, c in alpha.coeffs.items():
        s, J = _complement_sign(I)
        out[J] = s * c
    return KForm(DIM - alpha.degree, _prune(out))


def interior(v: int, alpha: KForm) -> KForm:
    """Contraction with the basis vector e_v (an antiderivation)."""
    v = int(v)
    if not 1 <= v <= DIM:
        raise ValueError(f"vector index must lie in 1..{DIM}")
    if alpha.degree == 0:
        return KForm(0, {})
    out: dict = {}
    for I, c in alpha.coeffs.items():
        if v in I:
            p = I.index(v)
            J = I[:p] + I[p + 1:]
            out[J] = out.get(J, 0.0) + ((-1) ** p) * c
    return KForm(alpha.degree - 1, _prune(out))


def inner(alpha: KForm, beta: KForm) -> float:
    """Pointwise inner product; basis monomials are orthonormal in each degree."""
    if alpha.degree != beta.degree:
        raise ValueError("inner product needs equal degrees")
    small, big = alpha.coeffs, beta.coeffs
    if len(big) < len(small):
        small, big = big, small
    return float(sum(c * big.get(I, 0.0) for I, c in small.items()))


def _theta_rows(D: np.ndarray):
    """Normalize a 4x4 (acting on e_3..e_6) or 7x7 matrix to covector rules.

    Yields the active covector indices together with (row of D, index base),
    so that e^k transforms with coefficients -D[row(k), row(m)].
    """
    D = np.asarray(D, dtype=float)
    if D.shape == (4, 4):
        return D, {3: 0, 4: 1, 5: 2, 6: 3}
    if D.shape == (DIM, DIM):
        return D, {k: k - 1 for k in _FULL}
    raise ValueError("theta expects a 4x4 or 7x7 matrix")


def theta(D, alpha: KForm) -> KForm:
    """Representation of gl acting on forms by the dual derivation.

    On covectors theta(D) e^k = -sum_m D[k, m] e^m, extended to all degrees
    as a derivation of degree zero.  A 4x4 argument acts on e^3..e^6 only and
    leaves e^1, e^2, e^7 untouched; a 7x7 argument acts on the whole basis.
    """
    D, rows = _theta_rows(D)
    out: dict = {}
    for I, c in alpha.coeffs.items():
        for slot, k in enumerate(I):
            r = rows.get(k)
            if r is None:
                continue
            for m, rm in rows.items():
                coeff = D[r, rm]
                if coeff == 0.0:
                    continue
                if m in I and m != k:
                    continue
                # replace the covector in this slot and resort
                repl = I[:slot] + (m,) + I[slot + 1:]
                mono = monomial(repl, -coeff * c)
                for J, x in mono.coeffs.items():
                    out[J] = out.get(J, 0.0) + x
    return KForm(alpha.degree, _prune(out))


def format_form(alpha: KForm, precision: int = 3) -> str:
    """Render as a signed monomial sum, e.g. '+1.000 e^{127} -2.000 e^{34}'."""
    if not alpha.coeffs:
        return "0"
    parts = []
    for I in sorted(alpha.coeffs):
        c = alpha.coeffs[I]
        label = "1" if I == () else "".join(str(i) for i in I)
        parts.append(f"{c:+.{precision}f} e^{{{label}}}")
    return " ".join(parts)


def close(alpha: KForm, beta: KForm, tol: float | None = None) -> bool:
    return (alpha - beta).is_zero(tol)


# Fixed forms of the model structure.  omega_7/1/2 span the self-dual 2-forms
# on the nilpotent directions e_3..e_6 that enter phi; the barred ones span
# the anti-self-dual complement and show up in every exterior derivative.

OMEGA7 = KForm(2, {(3, 4): 1.0, (5, 6): 1.0})
OMEGA1 = KForm(2, {(3, 5): 1.0, (4, 6): -1.0})
OMEGA2 = KForm(2, {(3, 6): -1.0, (4, 5): -1.0})

OMEGA7_BAR = KForm(2, {(3, 4): 1.0, (5, 6): -1.0})
OMEGA1_BAR = KForm(2, {(3, 5): 1.0, (4, 6): 1.0})
OMEGA2_BAR = KForm(2, {(3, 6): -1.0, (4, 5): 1.0})

PHI = KForm(3, {
    (1, 2, 7): 1.0,
    (3, 4, 7): 1.0,
    (5, 6, 7): 1.0,
    (1, 3, 5): 1.0,
    (1, 4, 6): -1.0,
    (2, 3, 6): -1.0,
    (2, 4, 5): -1.0,
})

PSI = hodge(PHI)

VOL = monomial(_FULL)
