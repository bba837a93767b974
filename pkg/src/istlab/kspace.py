"""Finite-dimensional Krein-space linear algebra.

A Krein form is a hermitian invertible gram matrix H with pairing
(psi, phi) = psi^dag H phi.  Adjoints of linear operators are
T^x = H^-1 T^dag H; antilinear operators psi -> M conj(psi) get the
adjoint matrix H^-1 M^T conj(H).  Fundamental symmetries are Krein
self-adjoint involutions eta with (., eta .) positive definite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ATOL = 1e-12   # absolute zero tests
RTOL = 1e-10   # relative matrix equality, Frobenius scale
COND_MAX = 1e8  # refuse grams conditioned worse than this


class DegenerateProjectionError(ValueError):
    """Raised when a projection product's Gram is singular beyond tolerance."""


def as_matrix(M) -> np.ndarray:
    """Coerce to a 2-D complex128 array and check finiteness."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={A.ndim}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def frob(M) -> float:
    return float(np.linalg.norm(M))


def rel_diff(A, B) -> float:
    """Frobenius distance of A and B relative to their scale."""
    scale = max(frob(A), frob(B), 1.0)
    return frob(np.asarray(A) - np.asarray(B)) / scale


def scalar_coefficient(A, B, tol=RTOL) -> complex:
    """The coefficient c with A = c*B, or raise if A is not a multiple of B."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    nb = np.vdot(B, B).real
    if nb <= 0:
        raise ValueError("cannot compare against the zero matrix")
    c = np.vdot(B, A) / nb
    if frob(A - c * B) > tol * max(frob(A), frob(B), 1.0):
        raise ValueError("matrices are not proportional")
    return complex(c)


def snap_sign(c, tol=1e-8) -> int:
    """Round a scalar known to be +-1 onto the exact sign."""
    c = complex(c)
    if abs(c - 1) <= tol:
        return 1
    if abs(c + 1) <= tol:
        return -1
    raise ValueError(f"scalar {c} is not a sign")


class KreinForm:
    """Indefinite hermitian pairing (psi, phi) = psi^dag gram phi."""

    def __init__(self, gram):
        H = as_matrix(gram)
        n, m = H.shape
        if n != m:
            raise ValueError("gram must be square")
        if rel_diff(H, H.conj().T) > RTOL:
            raise ValueError("gram must be hermitian")
        self.gram = H
        sv = np.linalg.svd(H, compute_uv=False)
        if sv[-1] == 0.0 or sv[0] / sv[-1] > COND_MAX:
            raise ValueError("gram is singular or too ill-conditioned")
        self.cond = float(sv[0] / sv[-1])

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def pair(self, psi, phi) -> complex:
        return complex(np.asarray(psi).conj() @ self.gram @ np.asarray(phi))

    def adjoint(self, T) -> np.ndarray:
        """Krein adjoint H^-1 T^dag H of a linear operator."""
        T = as_matrix(T)
        if T.shape != self.gram.shape:
            raise ValueError("operator dimension does not match the form")
        return np.linalg.solve(self.gram, T.conj().T @ self.gram)


def krein_adjoint(T, form: KreinForm) -> np.ndarray:
    return form.adjoint(T)


@dataclass
class AntilinearOperator:
    """The antilinear map psi -> mat @ conj(psi)."""

    mat: np.ndarray

    def __post_init__(self):
        self.mat = as_matrix(self.mat)

    def __call__(self, psi):
        return self.mat @ np.conj(psi)

    def square(self) -> np.ndarray:
        """The linear operator K o K = mat @ conj(mat)."""
        return self.mat @ np.conj(self.mat)

    def conjugate(self, X) -> np.ndarray:
        """The linear operator K X K^-1 for linear X."""
        return self.mat @ np.conj(X) @ np.linalg.inv(self.mat)

    def parity_sign(self, chi, tol=RTOL) -> int:
        """Sign s with K chi = s chi K, or raise for inhomogeneous K."""
        lhs = self.mat @ np.conj(chi)
        rhs = np.asarray(chi) @ self.mat
        return snap_sign(scalar_coefficient(lhs, rhs, tol))


def antilinear_adjoint(K: AntilinearOperator, form: KreinForm) -> AntilinearOperator:
    """The unique antilinear K^x with (psi, K phi) = conj((K^x psi, phi))."""
    M = K.mat
    if M.shape != form.gram.shape:
        raise ValueError("operator dimension does not match the form")
    H = form.gram
    return AntilinearOperator(np.linalg.solve(H, M.T @ H.conj()))


@dataclass
class SymmetryReport:
    """Outcome of a fundamental-symmetry test, with per-axiom violations."""

    ok: bool
    reason: str = ""
    violations: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def is_fundamental_symmetry(eta, form: KreinForm, tol=RTOL) -> SymmetryReport:
    """Check eta^2 = 1, eta^x = eta, and positivity of (., eta .)."""
    eta = as_matrix(eta)
    if eta.shape != form.gram.shape:
        return SymmetryReport(False, "dimension mismatch")
    n = eta.shape[0]
    v_inv = rel_diff(eta @ eta, np.eye(n))
    v_adj = rel_diff(form.adjoint(eta), eta)
    P = form.gram @ eta
    P = 0.5 * (P + P.conj().T)
    eigs = np.linalg.eigvalsh(P)
    v_pos = float(-eigs.min())
    violations = {"involution": v_inv, "self_adjoint": v_adj, "positivity": v_pos}
    if v_inv > tol:
        return SymmetryReport(False, "not an involution", violations)
    if v_adj > tol:
        return SymmetryReport(False, "not Krein self-adjoint", violations)
    if eigs.min() <= 0:
        return SymmetryReport(False, "form (., eta .) not positive definite", violations)
    return SymmetryReport(True, "", violations)


def _posdef_sqrt(P):
    """Hermitian square root and inverse square root of a positive matrix."""
    w, V = np.linalg.eigh(0.5 * (P + P.conj().T))
    if w.min() <= 0:
        raise ValueError("matrix is not positive definite")
    r = np.sqrt(w)
    return (V * r) @ V.conj().T, (V / r) @ V.conj().T


def relate_fundamental_symmetries(eta, nu, form: KreinForm) -> np.ndarray:
    """Krein-unitary U = (eta nu)^(1/2) with nu = U^x eta U.

    The square root is taken by conjugating eta@nu to a hermitian positive
    matrix in the eta inner product, so U is positive definite for
    <., .>_eta.
    """
    eta = as_matrix(eta)
    nu = as_matrix(nu)
    for name, cand in (("eta", eta), ("nu", nu)):
        rep = is_fundamental_symmetry(cand, form)
        if not rep:
            raise ValueError(f"{name} is not a fundamental symmetry: {rep.reason}")
    P_half, P_ihalf = _posdef_sqrt(form.gram @ eta)
    Hp = P_half @ (eta @ nu) @ P_ihalf
    S_half, _ = _posdef_sqrt(Hp)
    return P_ihalf @ S_half @ P_half


def real_bilinear_project(X, span, varpi=None, mode="real"):
    """Orthogonal projection of X onto span for B(S,T) = tr(varpi S^dag varpi T).

    ``mode="real"`` projects within the real span using Re B (the right
    notion for real algebras); ``mode="hermitian"`` uses complex
    coefficients and the sesquilinear B itself.  Returns (projection,
    residual) with the residual B-orthogonal to every span element.
    """
    X = as_matrix(X)
    mats = [as_matrix(S) for S in span]
    if not mats:
        raise ValueError("span must be nonempty")
    if mode not in ("real", "hermitian"):
        raise ValueError(f"unknown mode {mode!r}")
    n = X.shape[0]
    if varpi is None:
        W = np.eye(n)
    else:
        W = as_matrix(varpi)
    S = np.stack(mats)
    WS = (W[None, :, :] @ S.conj().transpose(0, 2, 1)) @ W
    G = np.einsum("kab,lba->kl", WS, S)
    v = np.einsum("kab,ba->k", WS, X)
    if mode == "real":
        G = G.real
        v = v.real
    sv = np.linalg.svd(G, compute_uv=False)
    if sv[-1] <= 0 or sv[0] / sv[-1] > COND_MAX:
        raise DegenerateProjectionError("degenerate projection product")
    coeff = np.linalg.solve(G, v)
    proj = sum(c * S for c, S in zip(coeff, mats))
    return proj, X - proj
