"""Finite indefinite spectral triples and their axiom/condition checkers.

A triple bundles a Krein form, a grading chi, an antilinear charge
conjugation, a Dirac operator and a represented real *-algebra.  All
checks are numerical: each axiom reports its worst violation and the
triple passes when every one is below tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .clifford import CliffordModule, convention_pairing
from .dims import dims_from_signs, SignQuadruple
from .kspace import (
    AntilinearOperator,
    KreinForm,
    antilinear_adjoint,
    as_matrix,
    frob,
    scalar_coefficient,
    snap_sign,
)

AXIOM_TOL = 1e-10


@dataclass
class FiniteAlgebra:
    """Images under the representation of a real basis of the algebra.

    ``involution`` lists the images of the starred basis elements in the
    same order.  Closure under multiplication is verified numerically, not
    imposed symbolically.
    """

    basis: list
    involution: list
    labels: list = None

    def __post_init__(self):
        self.basis = [as_matrix(b) for b in self.basis]
        self.involution = [as_matrix(b) for b in self.involution]
        if len(self.basis) != len(self.involution):
            raise ValueError("basis and involution images must align")
        if self.labels is None:
            self.labels = [f"a{i}" for i in range(len(self.basis))]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coeffs) -> np.ndarray:
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (self.dim,):
            raise ValueError("coefficient vector length mismatch")
        return sum(c * b for c, b in zip(coeffs, self.basis))

    def closure_violation(self) -> float:
        """Worst distance of a basis product from the real span."""
        if getattr(self, "_closure", None) is not None:
            return self._closure
        flat = np.array(
            [np.concatenate([b.real.ravel(), b.imag.ravel()]) for b in self.basis]
        ).T
        pinv = np.linalg.pinv(flat)
        B = np.stack(self.basis)
        prods = (B[:, None, :, :] @ B[None, :, :, :]).reshape(len(B) ** 2, -1)
        V = np.concatenate([prods.real, prods.imag], axis=1)
        resid = V - (V @ pinv.T) @ flat.T
        scales = np.maximum(1.0, np.linalg.norm(V, axis=1))
        self._closure = float((np.linalg.norm(resid, axis=1) / scales).max())
        return self._closure


def scalar_algebra(n: int) -> FiniteAlgebra:
    """The real scalars acting on an n-dimensional space."""
    eye = np.eye(n, dtype=complex)
    return FiniteAlgebra([eye], [eye], labels=["1"])


@dataclass
class IndefiniteTriple:
    """(algebra, Krein form, Dirac, chirality, charge conjugation)."""

    form: KreinForm
    chi: np.ndarray
    cc: AntilinearOperator
    dirac: np.ndarray
    algebra: FiniteAlgebra
    sigma: int

    def __post_init__(self):
        self.chi = as_matrix(self.chi)
        self.dirac = as_matrix(self.dirac)
        if self.sigma not in (0, 1):
            raise ValueError("sigma must be 0 or 1")

    @property
    def dim(self) -> int:
        return self.form.dim


@dataclass
class AxiomReport:
    """Per-axiom worst violations of an indefinite triple."""

    violations: dict = field(default_factory=dict)
    tol: float = AXIOM_TOL

    @property
    def ok(self) -> bool:
        return all(v <= self.tol for v in self.violations.values())

    def __bool__(self):
        return self.ok

    @property
    def worst(self) -> float:
        return max(self.violations.values(), default=0.0)

    def failures(self) -> dict:
        return {k: v for k, v in self.violations.items() if v > self.tol}


def _maxabs(M) -> float:
    return float(np.abs(M).max()) if np.asarray(M).size else 0.0


def check_axioms(triple: IndefiniteTriple, tol: float = AXIOM_TOL) -> AxiomReport:
    """Evaluate every triple axiom; pass iff all violations <= tol."""
    n = triple.dim
    chi = triple.chi
    D = triple.dirac
    M = triple.cc.mat
    form = triple.form
    eye = np.eye(n)

    v = {}
    v["chi_involution"] = _maxabs(chi @ chi - eye)
    v["chi_adjoint"] = _maxabs(form.adjoint(chi) - (-1) ** triple.sigma * chi)
    v["dirac_symmetric"] = _maxabs(form.adjoint(D) - D)
    v["dirac_odd"] = _maxabs(chi @ D @ chi + D)

    sq = triple.cc.square()
    eps = 1 if frob(sq - eye) <= frob(sq + eye) else -1
    v["cc_square"] = _maxabs(sq - eps * eye)
    adj = antilinear_adjoint(triple.cc, form).mat
    kap = 1 if frob(adj - M) <= frob(adj + M) else -1
    v["cc_adjoint"] = _maxabs(adj - kap * M)
    left = M @ np.conj(chi)
    right = chi @ M
    eps2 = 1 if frob(left - right) <= frob(left + right) else -1
    v["cc_homogeneous"] = _maxabs(left - eps2 * right)
    v["cc_dirac_commute"] = _maxabs(M @ np.conj(D) - D @ M)

    v["rep_even"] = max(
        (_maxabs(chi @ b - b @ chi) for b in triple.algebra.basis), default=0.0
    )
    v["rep_involutive"] = max(
        (
            _maxabs(form.adjoint(b) - binv)
            for b, binv in zip(triple.algebra.basis, triple.algebra.involution)
        ),
        default=0.0,
    )
    v["algebra_closed"] = triple.algebra.closure_violation()

    report = AxiomReport(v, tol)
    report.eps = eps
    report.eps2 = eps2
    report.kap = kap
    return report


def triple_signs(triple: IndefiniteTriple) -> SignQuadruple:
    """Measure (eps, eps2, kap, kap2) from the triple's operators."""
    n = triple.dim
    eps = snap_sign(scalar_coefficient(triple.cc.square(), np.eye(n)))
    eps2 = triple.cc.parity_sign(triple.chi)
    kap = snap_sign(
        scalar_coefficient(antilinear_adjoint(triple.cc, triple.form).mat, triple.cc.mat)
    )
    sigma_sign = snap_sign(
        scalar_coefficient(triple.form.adjoint(triple.chi), triple.chi)
    )
    return SignQuadruple(eps=eps, eps2=eps2, kap=kap, kap2=sigma_sign * eps2)


def triple_dims(triple: IndefiniteTriple) -> tuple[int, int]:
    """KO and metric dimensions (n, m) of a compliant triple."""
    report = check_axioms(triple)
    if not report.ok:
        raise ValueError(f"triple fails axioms: {report.failures()}")
    return dims_from_signs(triple_signs(triple))


def opposite(triple: IndefiniteTriple, X) -> np.ndarray:
    """The opposite operator X -> J X^x J^-1 (a linear antiautomorphism)."""
    M = triple.cc.mat
    return M @ np.conj(triple.form.adjoint(X)) @ np.linalg.inv(M)


def order_zero(triple: IndefiniteTriple) -> float:
    """max ||[pi(a), pi(b)^o]|| over algebra basis pairs."""
    opp = [opposite(triple, b) for b in triple.algebra.basis]
    worst = 0.0
    for a in triple.algebra.basis:
        for bo in opp:
            worst = max(worst, _maxabs(a @ bo - bo @ a))
    return worst


def first_order(triple: IndefiniteTriple) -> float:
    """max ||[[D, pi(a)], pi(b)^o]|| over algebra basis pairs."""
    D = triple.dirac
    opp = [opposite(triple, b) for b in triple.algebra.basis]
    worst = 0.0
    for a in triple.algebra.basis:
        da = D @ a - a @ D
        for bo in opp:
            worst = max(worst, _maxabs(da @ bo - bo @ da))
    return worst


def one_form_span(triple: IndefiniteTriple) -> list:
    """The generating matrices pi(a_i) [D, pi(b_j)] over basis pairs.

    Pairs whose commutator vanishes identically are dropped; the real
    span is unchanged.
    """
    D = triple.dirac
    scale = max(1.0, _maxabs(D))
    comms = []
    for b in triple.algebra.basis:
        c = D @ b - b @ D
        if _maxabs(c) > 1e-13 * scale:
            comms.append(c)
    return [a @ c for a in triple.algebra.basis for c in comms]


def gauge_unitary(triple: IndefiniteTriple, coeffs) -> np.ndarray:
    """U = pi(u) J pi(u) J^-1 for a Krein-unitary algebra element u."""
    u = triple.algebra.element(coeffs)
    n = triple.dim
    if _maxabs(triple.form.adjoint(u) @ u - np.eye(n)) > 1e-8:
        raise ValueError("algebra element is not Krein-unitary")
    M = triple.cc.mat
    return u @ M @ np.conj(u) @ np.linalg.inv(M)


def fluctuate(triple: IndefiniteTriple, omega, membership_tol=1e-8) -> np.ndarray:
    """Fluctuated Dirac D + omega + J omega J^-1 for a self-adjoint one-form."""
    omega = as_matrix(omega)
    if _maxabs(triple.form.adjoint(omega) - omega) > membership_tol:
        raise ValueError("one-form is not self-adjoint")
    span = one_form_span(triple)
    v = np.concatenate([omega.real.ravel(), omega.imag.ravel()])
    if span:
        flat = np.array(
            [np.concatenate([s.real.ravel(), s.imag.ravel()]) for s in span]
        ).T
        coef, *_ = np.linalg.lstsq(flat, v, rcond=None)
        resid = float(np.linalg.norm(v - flat @ coef))
    else:
        resid = float(np.linalg.norm(v))
    if resid / max(1.0, float(np.linalg.norm(v))) > membership_tol:
        raise ValueError("operator is outside the one-form span")
    M = triple.cc.mat
    return triple.dirac + omega + M @ np.conj(omega) @ np.linalg.inv(M)


def _default_dirac(module: CliffordModule, convention: str) -> np.ndarray:
    """A nonzero odd, symmetric, J-commuting Dirac when one exists, else 0."""
    key = convention.lower()
    g = module.gammas
    n = module.dim
    if key == "south":
        return g[0].copy()
    if key == "north":
        return 1j * g[0]
    if module.sig.d >= 4:
        triple_prod = g[0] @ g[1] @ g[2]
        return triple_prod if key == "east" else 1j * triple_prod
    return np.zeros((n, n), dtype=complex)


def from_clifford_module(
    module: CliffordModule,
    convention: str,
    dirac=None,
    algebra: FiniteAlgebra = None,
) -> IndefiniteTriple:
    """Wrap a Clifford module as a triple in one of the four conventions.

    The default algebra is the real scalars and the default Dirac a
    canonical generator combination compatible with the convention.
    """
    form, cc = convention_pairing(module, convention)
    if dirac is None:
        dirac = _default_dirac(module, convention)
    if algebra is None:
        algebra = scalar_algebra(module.dim)
    sigma_sign = snap_sign(scalar_coefficient(form.adjoint(module.chi), module.chi))
    sigma = 0 if sigma_sign == 1 else 1
    return IndefiniteTriple(
        form=form,
        chi=module.chi,
        cc=cc,
        dirac=as_matrix(dirac),
        algebra=algebra,
        sigma=sigma,
    )
