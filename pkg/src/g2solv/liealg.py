"""Solvable Lie algebras a x| R^4 determined by a commuting matrix triple.

The algebra has orthonormal basis e_1..e_7 with abelian factor
a = span(e_7, e_1, e_2) acting on the abelian ideal n = span(e_3..e_6) by

    ad e_7 |_n = A,    ad e_1 |_n = B,    ad e_2 |_n = C.

The Jacobi identity is exactly pairwise commutation of A, B, C.  Everything
downstream (differentials, curvature) is phrased against the covector dual:
n-covectors f^1..f^4 correspond to e^3..e^6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import TOL
from .forms import DIM, KForm, _prune, wedge, monomial

# presentation permutation: internal order (e1..e7) -> display order (e7,e1,e2,e3..e6)
_DISPLAY = [6, 0, 1, 2, 3, 4, 5]


@dataclass
class BracketTriple:
    """Commuting traceless triple (A, B, C) of real 4x4 matrices."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        mats = []
        for name in ("A", "B", "C"):
            M = np.asarray(getattr(self, name), dtype=float)
            if M.shape != (4, 4):
                raise ValueError(f"{name} must be 4x4")
            mats.append(M)
            setattr(self, name, M)
        scale = max(1.0, *(np.abs(M).max() for M in mats))
        for M in mats:
            if abs(np.trace(M)) > 1e-10 * scale:
                raise ValueError("matrices must be traceless (unimodular algebra)")
        for i in range(3):
            for j in range(i + 1, 3):
                comm = mats[i] @ mats[j] - mats[j] @ mats[i]
                if np.abs(comm).max() > 1e-10 * scale * scale:
                    raise ValueError("matrices must commute (Jacobi identity)")

    def matrices(self):
        return (self.A, self.B, self.C)


@dataclass
class CompatibilityReport:
    independent: bool
    simultaneously_diagonalizable: bool
    compatible: bool
    eigenbasis: np.ndarray | None
    reason: str


def _covector_differentials(t: BracketTriple):
    """de^k for k = 3..6; the a-covectors e^1, e^2, e^7 are closed.

    For an n-covector f^k dual to e_{k+2}, the Chevalley-Eilenberg rule
    de(x, y) = -e([x, y]) gives
        df^k = -sum_j A[k,j] e^7^f^j - sum_j B[k,j] e^1^f^j - sum_j C[k,j] e^2^f^j.
    """
    A, B, C = t.matrices()
    d = {}
    for k in range(4):
        out: dict = {}
        for j in range(4):
            for M, a_idx in ((A, 7), (B, 1), (C, 2)):
                c = M[k, j]
                if c == 0.0:
                    continue
                mono = monomial((a_idx, j + 3), -c)
                for I, x in mono.coeffs.items():
                    out[I] = out.get(I, 0.0) + x
        d[k + 3] = KForm(2, _prune(out))
    return d


def ce_differential(t: BracketTriple, alpha: KForm) -> KForm:
    """Chevalley-Eilenberg exterior derivative of a left-invariant form."""
    if alpha.degree >= DIM:
        return KForm(DIM, {})
    dcov = _covector_differentials(t)
    out = KForm(alpha.degree + 1, {})
    for I, c in alpha.coeffs.items():
        for slot, k in enumerate(I):
            dk = dcov.get(k)
            if dk is None or not dk.coeffs:
                continue
            rest = monomial(I[:slot] + I[slot + 1:], ((-1) ** slot) * c)
            # dk has even degree, so it slides to the front without a sign
            out = out + wedge(dk, rest)
    return out


def _real_eigenspaces(M: np.ndarray, tol: float):
    """Eigenvalues with basis matrices of their eigenspaces, or None if M is
    not real-diagonalizable."""
    vals, vecs = np.linalg.eig(M)
    if np.abs(vals.imag).max(initial=0.0) > tol * max(1.0, np.abs(vals).max()):
        return None
    vals = vals.real
    order = np.argsort(vals)
    vals, vecs = vals[order], vecs.real[:, order]
    groups = []
    i = 0
    scale = max(1.0, np.abs(vals).max())
    while i < len(vals):
        j = i
        while j + 1 < len(vals) and abs(vals[j + 1] - vals[i]) <= 1e-8 * scale:
            j += 1
        groups.append((vals[i], list(range(i, j + 1))))
        i = j + 1
    # geometric multiplicity must match the cluster size
    spaces = []
    for lam, idx in groups:
        E = M - lam * np.eye(M.shape[0])
        ns = _nullspace(E, tol)
        if ns.shape[1] < len(idx):
            return None
        spaces.append((lam, ns[:, : len(idx)]))
    return spaces


def _nullspace(M: np.ndarray, rel_tol: float) -> np.ndarray:
    U, s, Vt = np.linalg.svd(M)
    cutoff = max(1.0, s.max(initial=0.0)) * max(rel_tol, 1e-10)
    rank = int((s > cutoff).sum())
    return Vt[rank:].T


def check_compatible(t: BracketTriple) -> CompatibilityReport:
    """Linear independence plus simultaneous real diagonalizability.

    The eigenbasis witness is built by refining the eigenspaces of A by B and
    then by C; for commuting real-diagonalizable matrices this always lands on
    a joint eigenbasis.
    """
    A, B, C = t.matrices()
    stack = np.stack([A.ravel(), B.ravel(), C.ravel()])
    s = np.linalg.svd(stack, compute_uv=False)
    independent = bool(s.min() > TOL.rank_rel * max(1.0, s.max()))

    basis_blocks = [np.eye(4)]
    diagonalizable = True
    for M in (A, B, C):
        refined = []
        for P in basis_blocks:
            # restrict M to the invariant subspace spanned by the columns of P
            sub = np.linalg.lstsq(P, M @ P, rcond=None)[0]
            spaces = _real_eigenspaces(sub, TOL.eig_imag)
            if spaces is None:
                diagonalizable = False
                break
            refined.extend(P @ V for _, V in spaces)
        if not diagonalizable:
            break
        basis_blocks = refined

    eigenbasis = None
    if diagonalizable:
        eigenbasis = np.hstack(basis_blocks)
        for M in (A, B, C):
            D = np.linalg.solve(eigenbasis, M @ eigenbasis)
            off = D - np.diag(np.diag(D))
            if np.abs(off).max() > 1e-7 * max(1.0, np.abs(D).max()):
                diagonalizable = False
                eigenbasis = None
                break

    if not independent:
        reason = "triple is linearly dependent"
    elif not diagonalizable:
        reason = "triple is not simultaneously real-diagonalizable"
    else:
        reason = "compatible"
    return CompatibilityReport(
        independent=independent,
        simultaneously_diagonalizable=diagonalizable,
        compatible=independent and diagonalizable,
        eigenbasis=eigenbasis,
        reason=reason,
    )


def ricci_operator(t: BracketTriple) -> np.ndarray:
    """Ricci operator in the internal basis (e_1..e_7).

    The a-block (slots e_7, e_1, e_2) is -[tr S(X)S(Y)] for X, Y running over
    (A, B, C) with S the symmetrization; the n-block is
    (1/2)([A,A^T] + [B,B^T] + [C,C^T]); the two blocks never mix.
    """
    A, B, C = t.matrices()

    def S(M):
        return 0.5 * (M + M.T)

    trip = (A, B, C)
    a_block = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            a_block[i, j] = -np.trace(S(trip[i]) @ S(trip[j]))
    n_block = 0.5 * sum(M @ M.T - M.T @ M for M in trip)

    ric = np.zeros((DIM, DIM))
    # a-block order (e7, e1, e2) -> internal slots (6, 0, 1)
    slots = [6, 0, 1]
    for i in range(3):
        for j in range(3):
            ric[slots[i], slots[j]] = a_block[i, j]
    ric[2:6, 2:6] = n_block
    return ric


def scalar_curvature(t: BracketTriple) -> float:
    return float(np.trace(ricci_operator(t)))


def homothety_invariant(t: BracketTriple) -> float:
    """scal^2 / tr(Ric^2), invariant under rescaling of the metric."""
    ric = ricci_operator(t)
    denom = float(np.trace(ric @ ric))
    if denom <= TOL.zero_form ** 2:
        raise ValueError("homothety invariant undefined on a flat metric")
    return float(np.trace(ric)) ** 2 / denom


def solvsoliton_check(t: BracketTriple, tol: float = 1e-9) -> dict:
    """Test the algebraic Ricci-soliton condition for this split class:
    A, B, C normal and the a-block of Ric a multiple of the identity."""
    A, B, C = t.matrices()
    if all(np.abs(M).max() == 0.0 for M in (A, B, C)):
        return {"is_solvsoliton": False, "lam": None, "flat": True}
    scale = max(1.0, *(np.abs(M).max() for M in (A, B, C)))
    normal = all(
        np.abs(M @ M.T - M.T @ M).max() <= tol * scale * scale for M in (A, B, C)
    )
    ric = ricci_operator(t)
    a_slots = [6, 0, 1]
    block = ric[np.ix_(a_slots, a_slots)]
    c = float(np.trace(block)) / 3.0
    isotropic = np.abs(block - c * np.eye(3)).max() <= tol * max(1.0, abs(c))
    ok = bool(normal and isotropic)
    return {"is_solvsoliton": ok, "lam": c if ok else None, "flat": False}


def to_display_order(M: np.ndarray) -> np.ndarray:
    """Permute a 7x7 matrix from internal (e1..e7) to (e7,e1,e2,e3..e6) order."""
    M = np.asarray(M)
    return M[np.ix_(_DISPLAY, _DISPLAY)]


def ricci_report(t: BracketTriple) -> dict:
    """JSON-ready curvature summary in display basis order."""
    ric = ricci_operator(t)
    scal = float(np.trace(ric))
    tr2 = float(np.trace(ric @ ric))
    return {
        "ricci": to_display_order(ric).tolist(),
        "scal": scal,
        "trace_ric_sq": tr2,
        "F": (scal * scal / tr2) if tr2 > TOL.zero_form ** 2 else None,
    }
