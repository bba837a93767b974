"""Noncommutative differential forms of a finite triple.

One-forms are the real span of pi(a) [D, pi(b)] over basis pairs; the
junk two-forms are the image of the kernel of that bilinear map under
(a, b) -> [D, pi(a)] [D, pi(b)].  Curvature scalars are projected onto
the orthogonal complement of Q = pi(A) + junk with respect to the
real part of the trace form tr(varpi S^dag varpi T).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ist import IndefiniteTriple, check_axioms
from .kspace import (
    COND_MAX,
    DegenerateProjectionError,
    as_matrix,
    real_bilinear_project,
)

RANK_RTOL = 1e-9


def _realify(mats) -> np.ndarray:
    """Rows are the realified matrices (real parts then imaginary parts)."""
    return np.array(
        [np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in mats]
    )


@dataclass
class FormSpace:
    """A real-linear span of matrices with its numerical rank data."""

    span: list
    real_dim: int
    singular_values: np.ndarray = field(repr=False, default=None)
    threshold: float = 0.0

    @classmethod
    def from_matrices(cls, mats, rtol=RANK_RTOL):
        mats = [as_matrix(m) for m in mats]
        if not mats:
            return cls([], 0, np.array([]), 0.0)
        A = _realify(mats)
        sv = np.linalg.svd(A, compute_uv=False)
        cutoff = sv[0] * rtol if sv.size and sv[0] > 0 else 0.0
        rank = int(np.sum(sv > cutoff))
        # orthonormal real basis of the span, devectorized
        _, _, vt = np.linalg.svd(A, full_matrices=False)
        n = mats[0].shape[0]
        basis = [
            vt[k, : n * n].reshape(n, n) + 1j * vt[k, n * n:].reshape(n, n)
            for k in range(rank)
        ]
        return cls(basis, rank, sv, cutoff)

    @property
    def gap(self) -> float:
        """Ratio of the first discarded singular value to the last kept one."""
        sv = self.singular_values
        if sv is None or self.real_dim == 0 or self.real_dim >= sv.size:
            return 0.0
        return float(sv[self.real_dim] / sv[self.real_dim - 1])

    def contains(self, X, tol=1e-8) -> bool:
        X = as_matrix(X)
        v = np.concatenate([X.real.ravel(), X.imag.ravel()])
        scale = max(1.0, float(np.linalg.norm(v)))
        resid = v.copy()
        for b in self.span:
            w = np.concatenate([b.real.ravel(), b.imag.ravel()])
            resid -= (resid @ w) / (w @ w) * w
        return float(np.linalg.norm(resid)) / scale <= tol


def _checked(triple: IndefiniteTriple):
    rep = check_axioms(triple)
    if not rep.ok:
        raise ValueError(f"triple fails axioms: {rep.failures()}")


def _commutators(triple: IndefiniteTriple):
    """Nonvanishing [D, pi(b)] with their basis indices."""
    D = triple.dirac
    scale = max(1.0, float(np.abs(D).max()))
    out = []
    for j, b in enumerate(triple.algebra.basis):
        c = D @ b - b @ D
        if float(np.abs(c).max()) > 1e-13 * scale:
            out.append((j, c))
    return out


def one_forms(triple: IndefiniteTriple, rtol=RANK_RTOL) -> FormSpace:
    """Real span of pi(a_i) [D, pi(b_j)] over all basis pairs."""
    _checked(triple)
    comms = [c for _, c in _commutators(triple)]
    mats = [a @ c for a in triple.algebra.basis for c in comms]
    return FormSpace.from_matrices(mats, rtol)


def junk_two_forms(triple: IndefiniteTriple, rtol=RANK_RTOL) -> FormSpace:
    """Image of ker[(a,b) -> pi(a)[D,pi(b)]] under (a,b) -> [D,pi(a)][D,pi(b)]."""
    _checked(triple)
    indexed = _commutators(triple)
    comms = [c for _, c in indexed]
    if not comms:
        return FormSpace.from_matrices([], rtol)
    basis = triple.algebra.basis
    pairs = [a @ c for a in basis for c in comms]
    A = _realify(pairs).T  # columns indexed by pairs
    # economy SVD still carries all right-singular vectors when A is tall
    full = A.shape[0] < A.shape[1]
    _, s, vt = np.linalg.svd(A, full_matrices=full)
    cutoff = s[0] * rtol if s.size and s[0] > 0 else 0.0
    rank = int(np.sum(s > cutoff))
    kernel = vt[rank:].T  # real coefficient vectors c_(i,j)
    nk = kernel.shape[1]
    if nk == 0:
        return FormSpace.from_matrices([], rtol)

    # sum_ij c_ij [D, pi(a_i)] [D, pi(b_j)]; only nonzero [D, pi(a_i)] matter
    nz = [i for i, _ in indexed]
    dcomm = np.stack(comms)
    coeff = kernel.T.reshape(nk, len(basis), len(comms))[:, nz, :]
    weighted = np.tensordot(coeff, dcomm, axes=([2], [0]))
    prods = dcomm[None, :, :, :] @ weighted
    images = prods.sum(axis=1)
    # discard images that vanish at the scale of the commutator products
    scale = float(max(np.abs(c).max() for c in comms)) ** 2
    kept = [im for im in images if float(np.abs(im).max()) > 1e-11 * scale]
    return FormSpace.from_matrices(kept, rtol)


@dataclass
class QSpace:
    """The projection target pi(A) + junk with its trace-form Gram data."""

    forms: FormSpace
    gram: np.ndarray
    definite: bool
    gram_cond: float


def q_space(
    triple: IndefiniteTriple, varpi=None, rtol=RANK_RTOL, junk: FormSpace = None
) -> QSpace:
    """Algebra image plus junk, with the projection product's Gram report."""
    if junk is None:
        junk = junk_two_forms(triple, rtol)
    space = FormSpace.from_matrices(list(triple.algebra.basis) + junk.span, rtol)
    n = triple.dim
    W = np.eye(n) if varpi is None else as_matrix(varpi)
    if space.span:
        S = np.stack(space.span)
        WS = (W[None, :, :] @ S.conj().transpose(0, 2, 1)) @ W
        G = np.einsum("kab,lba->kl", WS, S).real
    else:
        G = np.zeros((0, 0))
    eigs = np.linalg.eigvalsh(0.5 * (G + G.T)) if space.span else np.array([1.0])
    definite = bool(eigs.min() > 0 or eigs.max() < 0)
    cond = (
        float(abs(eigs).max() / abs(eigs).min())
        if eigs.size and abs(eigs).min() > 0
        else np.inf
    )
    return QSpace(space, G, definite, cond)


def project_two_form(triple: IndefiniteTriple, X, varpi=None, qspace: QSpace = None):
    """Representative of a two-form orthogonal to Q for Re tr(varpi . varpi .).

    This is the residual of the orthogonal projection of X onto Q; members
    of Q project to zero.
    """
    if qspace is None:
        qspace = q_space(triple, varpi)
    if not np.isfinite(qspace.gram_cond) or qspace.gram_cond > COND_MAX:
        raise DegenerateProjectionError("degenerate projection product")
    _, resid = real_bilinear_project(X, qspace.forms.span, varpi, mode="real")
    return resid
