"""Explicit spinor representations of even Clifford algebras Cl(q, p).

Even-even signatures are represented on the fermionic Fock space of the
complex structure's eigenspace: generators come in pairs
gamma(e) = a + a^x and gamma(Ce) = i(a - a^x), chirality is the Fock
parity, the Robinson gram is the (pseudo-orthonormal) Hodge product, and
charge conjugation acts by Hodge duality on basis monomials.  Odd-odd
signatures split off a (1, 1) Pauli block and carry two copies of the
Fock space of the remaining even-even part.

Basis monomials are ordered by subset bitmask, vacuum first, so all
matrices are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dims import SignQuadruple, sign_a
from .kspace import (
    AntilinearOperator,
    KreinForm,
    antilinear_adjoint,
    as_matrix,
    scalar_coefficient,
    snap_sign,
)

MAX_DIM = 12  # dense-algebra guard: D = 2^(d/2) <= 64


@dataclass(frozen=True)
class Signature:
    """Signature (q, p): q negative directions, p positive, q+p even >= 2."""

    q: int
    p: int

    def __post_init__(self):
        if self.q < 0 or self.p < 0:
            raise ValueError("signature entries must be nonnegative")
        d = self.q + self.p
        if d % 2 or d < 2:
            raise ValueError("total dimension must be even and >= 2")
        if self.q % 2 != self.p % 2:
            raise ValueError("only even-even and odd-odd signatures are supported")

    @property
    def d(self) -> int:
        return self.q + self.p

    @property
    def spinor_dim(self) -> int:
        return 1 << (self.d // 2)

    def metric(self) -> np.ndarray:
        return np.diag([-1.0] * self.q + [1.0] * self.p)


@dataclass
class CliffordModule:
    """A concrete Cl(q, p) module with its canonical operators.

    ``gammas`` lists the pseudo-orthonormal generators, negative directions
    first.  ``gram_robinson`` makes every generator self-adjoint and
    ``gram_antirobinson`` anti-self-adjoint; they differ by i^q * chi.
    ``jplus`` commutes with every generator (as an antilinear operator),
    ``jminus`` = chi o jplus graded-commutes.
    """

    sig: Signature
    dim: int
    gammas: list
    chi: np.ndarray
    chi_minus: np.ndarray
    chi_plus: np.ndarray
    eta_plus: np.ndarray
    eta_minus: np.ndarray
    gram_robinson: KreinForm
    gram_antirobinson: KreinForm
    jplus: AntilinearOperator
    jminus: AntilinearOperator

    def gamma(self, v) -> np.ndarray:
        """The image of the vector v = (v_1, ..., v_d)."""
        v = np.asarray(v, dtype=complex)
        if v.shape != (self.sig.d,):
            raise ValueError("vector length does not match the signature")
        return sum(c * g for c, g in zip(v, self.gammas))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _fock_ladder(nmodes: int, eps: list) -> tuple[list, list]:
    """Creation/annihilation matrices on the bitmask-ordered subset basis.

    eps[j] is the squared norm of mode j; annihilation picks it up:
    a_j = eps_j * (a_j^x)^T on this real basis.
    """
    dim = 1 << nmodes
    cre, ann = [], []
    for j in range(nmodes):
        bit = 1 << j
        c = np.zeros((dim, dim))
        for I in range(dim):
            if I & bit:
                continue
            sign = -1.0 if _popcount(I & (bit - 1)) % 2 else 1.0
            c[I | bit, I] = sign
        cre.append(c)
        ann.append(eps[j] * c.T)
    return cre, ann


def _perm_parity(seq) -> int:
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _fock_data(q2: int, p2: int):
    """Gammas, chi, Hodge gram, and J+ matrix of the even-even Fock module.

    Valid for q2 = p2 = 0 as well (one-dimensional space, no generators).
    """
    if q2 % 2 or p2 % 2:
        raise ValueError("Fock construction needs an even-even signature")
    nmodes = (q2 + p2) // 2
    eps = [-1] * (q2 // 2) + [1] * (p2 // 2)
    dim = 1 << nmodes
    cre, ann = _fock_ladder(nmodes, eps)

    gammas = []
    for j in range(nmodes):
        gammas.append((ann[j] + cre[j]).astype(complex))
        gammas.append(1j * (ann[j] - cre[j]))

    sizes = np.array([_popcount(I) for I in range(dim)])
    chi = np.diag(np.where(sizes % 2, -1.0, 1.0)).astype(complex)

    weights = np.ones(dim)
    for j in range(nmodes):
        if eps[j] < 0:
            weights[[I for I in range(dim) if I & (1 << j)]] *= -1
    gram = np.diag(weights).astype(complex)

    # Hodge duality on basis monomials, phase fixed to 1
    J = np.zeros((dim, dim), dtype=complex)
    for I in range(dim):
        inside = [j for j in range(nmodes) if I & (1 << j)]
        outside = [j for j in range(nmodes) if not I & (1 << j)]
        ell = len(inside)
        coeff = _perm_parity(inside + outside)
        if (ell * (ell - 1) // 2 + q2 // 2) % 2:
            coeff = -coeff
        for j in outside:
            coeff *= eps[j]
        Ic = sum(1 << j for j in outside)
        J[Ic, I] = coeff
    return gammas, chi, gram, J


def _normalized_symmetry(mats, gram: KreinForm) -> np.ndarray:
    """Scale a product of generators into a fundamental symmetry.

    The input squares to +-1; a factor i fixes the square and the overall
    sign is chosen to make (., eta .) positive definite (checked, not
    assumed).
    """
    n = gram.dim
    P = np.eye(n, dtype=complex)
    for g in mats:
        P = P @ g
    sq = scalar_coefficient(P @ P, np.eye(n))
    if snap_sign(sq) < 0:
        P = 1j * P
    M = gram.gram @ P
    M = 0.5 * (M + M.conj().T)
    lo = np.linalg.eigvalsh(M).min()
    if lo < 0:
        P = -P
    return P


def _partial_chirality(mats, count: int) -> np.ndarray:
    phase = 1j ** (count // 2)
    P = np.eye(mats[0].shape[0], dtype=complex)
    for g in mats:
        P = P @ g
    return phase * P


def _assemble(sig: Signature, gammas, chi, gram, jplus_mat) -> CliffordModule:
    q, p = sig.q, sig.p
    gram_rob = KreinForm(gram)
    gram_anti = KreinForm((1j ** q) * gram @ chi)
    negatives = gammas[: q]
    positives = gammas[q:]
    if q % 2 == 0:
        eta_plus = _normalized_symmetry(negatives, gram_rob)
        eta_minus = _normalized_symmetry(positives, gram_anti)
    else:
        eta_plus = _normalized_symmetry(positives, gram_rob)
        eta_minus = _normalized_symmetry(negatives, gram_anti)
    n = gram_rob.dim
    chi_minus = _partial_chirality(negatives, q) if q else np.eye(n, dtype=complex)
    chi_plus = _partial_chirality(positives, p) if p else np.eye(n, dtype=complex)
    return CliffordModule(
        sig=sig,
        dim=sig.spinor_dim,
        gammas=[as_matrix(g) for g in gammas],
        chi=as_matrix(chi),
        chi_minus=chi_minus,
        chi_plus=chi_plus,
        eta_plus=eta_plus,
        eta_minus=eta_minus,
        gram_robinson=gram_rob,
        gram_antirobinson=gram_anti,
        jplus=AntilinearOperator(jplus_mat),
        jminus=AntilinearOperator(chi @ jplus_mat),
    )


def build(sig: Signature, max_dim: int = MAX_DIM) -> CliffordModule:
    """Construct the canonical Cl(q, p) module.

    Even-even signatures use the Fock representation directly; odd-odd
    ones carry two Fock copies with the vector part of the split (1, 1)
    factor acting off-diagonally.
    """
    if not isinstance(sig, Signature):
        sig = Signature(*sig)
    if sig.d > max_dim:
        raise ValueError(f"dimension {sig.d} exceeds the dense-algebra cap {max_dim}")
    q, p = sig.q, sig.p

    if q % 2 == 0:
        gammas, chi, gram, J = _fock_data(q, p)
        return _assemble(sig, gammas, chi, gram, J)

    # odd-odd: V = V1(1,1) + V2(q-1, p-1), S = Fock + Fock
    g2, chi2, gram2, J2 = _fock_data(q - 1, p - 1)
    m = chi2.shape[0]
    Z = np.zeros((m, m), dtype=complex)
    I = np.eye(m, dtype=complex)

    def offdiag(upper, lower):
        return np.block([[Z, upper], [lower, Z]])

    def diag(top, bottom):
        return np.block([[top, Z], [Z, bottom]])

    gamma_fm = offdiag(-I, I)   # negative direction of the (1,1) block
    gamma_fp = offdiag(I, I)    # positive direction
    doubled = [diag(g, -g) for g in g2]

    gammas = [gamma_fm] + doubled[: q - 1] + [gamma_fp] + doubled[q - 1:]
    chi = diag(chi2, -chi2)
    cross = gram2 @ chi2
    gram = offdiag(cross, cross)
    J = diag(J2, J2)
    return _assemble(sig, gammas, chi, gram, J)


def verify_relations(module: CliffordModule) -> float:
    """Largest violation of {gamma^a, gamma^b} = 2 g^ab over all pairs."""
    g = module.sig.metric()
    n = module.dim
    worst = 0.0
    for a, ga in enumerate(module.gammas):
        for b, gb in enumerate(module.gammas):
            acom = ga @ gb + gb @ ga - 2.0 * g[a, b] * np.eye(n)
            worst = max(worst, float(np.abs(acom).max()))
    return worst


_CONVENTION_DATA = {
    # convention -> (use antirobinson gram, use jminus)
    "east": (True, False),
    "west": (False, True),
    "south": (False, False),
    "north": (True, True),
}


def convention_pairing(module: CliffordModule, convention: str):
    """The (gram, charge conjugation) pair a cardinal convention reads."""
    key = convention.lower()
    if key not in _CONVENTION_DATA:
        raise ValueError(f"unknown convention {convention!r}")
    use_anti, use_minus = _CONVENTION_DATA[key]
    form = module.gram_antirobinson if use_anti else module.gram_robinson
    cc = module.jminus if use_minus else module.jplus
    return form, cc


def extract_signs(module: CliffordModule, convention: str) -> SignQuadruple:
    """Measure (eps, eps2, kap, kap2) in the given cardinal convention."""
    form, cc = convention_pairing(module, convention)
    n = module.dim
    eps = snap_sign(scalar_coefficient(cc.square(), np.eye(n)))
    eps2 = cc.parity_sign(module.chi)
    kap = snap_sign(scalar_coefficient(antilinear_adjoint(cc, form).mat, cc.mat))
    sigma_sign = snap_sign(scalar_coefficient(form.adjoint(module.chi), module.chi))
    return SignQuadruple(eps=eps, eps2=eps2, kap=kap, kap2=sigma_sign * eps2)


def _realify(mats):
    """Stack complex matrices as rows of a real coefficient matrix."""
    rows = [np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in mats]
    return np.array(rows)


def _real_nullspace(A, rtol=1e-9):
    # economy SVD keeps every right-singular vector when A is tall
    full = A.shape[0] < A.shape[1]
    _, s, vt = np.linalg.svd(A, full_matrices=full)
    cutoff = (s[0] * rtol) if s.size else 0.0
    rank = int(np.sum(s > cutoff))
    return vt[rank:].conj().T


def robinson_solution_space(module: CliffordModule, rtol=1e-9) -> list:
    """Basis of hermitian grams F with every generator F-self-adjoint.

    Solves {gamma^a dag F = F gamma^a, F = F^dag} as a real-linear system;
    the result must be one-dimensional (Robinson uniqueness).
    """
    n = module.dim
    blocks = []
    for ga in module.gammas:
        # gamma^a dag F - F gamma^a = 0, realified in F
        L = np.kron(ga.conj().T, np.eye(n))
        R = np.kron(np.eye(n), ga.T)
        op = L - R
        blocks.append(np.block([[op.real, -op.imag], [op.imag, op.real]]))
    # hermiticity F - F^dag = 0: realify the conjugate-transpose map
    Pt = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            Pt[i * n + j, j * n + i] = 1.0
    eye = np.eye(n * n)
    blocks.append(np.block([[eye - Pt, np.zeros_like(Pt)], [np.zeros_like(Pt), eye + Pt]]))
    null = _real_nullspace(np.vstack(blocks), rtol)
    out = []
    for k in range(null.shape[1]):
        vec = null[:, k]
        F = vec[: n * n].reshape(n, n) + 1j * vec[n * n:].reshape(n, n)
        out.append(F)
    return out


def cc_solution_space(module: CliffordModule, rtol=1e-9) -> list:
    """Complex basis of matrices C with C o CC commuting with all generators.

    The complex dimension must be 1; the normalized representative
    squares (as an antilinear operator) to a(q - p).
    """
    n = module.dim
    rows = []
    for ga in module.gammas:
        # M conj(gamma^a) - gamma^a M = 0 is complex-linear in M
        rows.append(np.kron(np.eye(n), ga.conj().T) - np.kron(ga, np.eye(n)))
    A = np.vstack(rows)
    full = A.shape[0] < A.shape[1]
    _, s, vt = np.linalg.svd(A, full_matrices=full)
    cutoff = s[0] * rtol if s.size else 0.0
    rank = int(np.sum(s > cutoff))
    basis = []
    for k in range(rank, vt.shape[0]):
        M = vt[k].conj().reshape(n, n)
        sq = M @ np.conj(M)
        c = scalar_coefficient(sq, np.eye(n))
        basis.append(M / np.sqrt(abs(c)))
    return basis


def pin_norms(module: CliffordModule, vectors) -> tuple[int, int]:
    """(omega^x omega, omega^+ omega) for omega a product of unit vectors."""
    g = module.sig.metric()
    n = module.dim
    omega = np.eye(n, dtype=complex)
    for v in vectors:
        v = np.asarray(v, dtype=float)
        norm = float(v @ g @ v)
        if abs(abs(norm) - 1.0) > 1e-9:
            raise ValueError("vectors must satisfy g(v, v) = +-1")
        omega = omega @ module.gamma(v)
    x = module.gram_robinson.adjoint(omega) @ omega
    y = module.gram_antirobinson.adjoint(omega) @ omega
    return (
        snap_sign(scalar_coefficient(x, np.eye(n))),
        snap_sign(scalar_coefficient(y, np.eye(n))),
    )


def expected_signs(q: int, p: int, convention: str) -> SignQuadruple:
    """The sign table's prediction for Cl(q, p) in a cardinal convention."""
    key = convention.lower()
    if key in ("east", "south"):
        eps = sign_a(q - p)
    else:
        eps = sign_a(p - q)
    if key in ("east", "west"):
        kap = sign_a(p + q)
    else:
        kap = sign_a(-(p + q))
    eps2 = -1 if ((p - q) // 2) % 2 else 1
    kap2 = eps2 if q % 2 == 0 else -eps2
    return SignQuadruple(eps=eps, eps2=eps2, kap=kap, kap2=kap2)
