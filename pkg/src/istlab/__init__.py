"""Numerical workbench for indefinite (Krein-space) spectral triples."""

from .clifford import CliffordModule, Signature, build, extract_signs, verify_relations
from .dims import SignQuadruple, cardinal_table, dims_from_signs, sign_a, signs_from_dims, spacetime_pairs
from .ist import FiniteAlgebra, IndefiniteTriple, check_axioms, triple_dims
from .kspace import AntilinearOperator, KreinForm
from .sm import LagrangianCoeffs, SMModel, YukawaSet, ZParams, build_sm
from .specact import CutoffFn, TorusSpec, heat_trace, spectral_action
from .tensor import tensor_ist, tensor_modules

__all__ = [
    "AntilinearOperator",
    "CliffordModule",
    "CutoffFn",
    "FiniteAlgebra",
    "IndefiniteTriple",
    "KreinForm",
    "LagrangianCoeffs",
    "SMModel",
    "SignQuadruple",
    "Signature",
    "TorusSpec",
    "YukawaSet",
    "ZParams",
    "build",
    "build_sm",
    "cardinal_table",
    "check_axioms",
    "dims_from_signs",
    "extract_signs",
    "heat_trace",
    "sign_a",
    "signs_from_dims",
    "spacetime_pairs",
    "spectral_action",
    "tensor_ist",
    "tensor_modules",
    "triple_dims",
    "verify_relations",
]

__version__ = "0.1.0"
