"""JSON codecs shared by the CLI and the file interfaces.

Complex scalars are two-element arrays [re, im] everywhere; matrices are
nested row-major lists of those pairs.
"""

from __future__ import annotations

import json

import numpy as np

from .ist import FiniteAlgebra, IndefiniteTriple
from .kspace import AntilinearOperator, KreinForm
from .sm import YukawaSet, ZParams


def encode_matrix(M) -> list:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def decode_matrix(obj) -> np.ndarray:
    arr = np.asarray(obj, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValueError("matrix entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def clifford_to_dict(module) -> dict:
    return {
        "signature": [module.sig.q, module.sig.p],
        "dim": module.dim,
        "gammas": [encode_matrix(g) for g in module.gammas],
        "chi": encode_matrix(module.chi),
        "eta_plus": encode_matrix(module.eta_plus),
        "eta_minus": encode_matrix(module.eta_minus),
        "gram_robinson": encode_matrix(module.gram_robinson.gram),
        "gram_antirobinson": encode_matrix(module.gram_antirobinson.gram),
        "jplus": encode_matrix(module.jplus.mat),
        "jminus": encode_matrix(module.jminus.mat),
    }


def triple_to_dict(triple: IndefiniteTriple) -> dict:
    return {
        "gram": encode_matrix(triple.form.gram),
        "chi": encode_matrix(triple.chi),
        "J": encode_matrix(triple.cc.mat),
        "dirac": encode_matrix(triple.dirac),
        "algebra_basis": [encode_matrix(b) for b in triple.algebra.basis],
        "involution": [encode_matrix(b) for b in triple.algebra.involution],
        "sigma": triple.sigma,
    }


def triple_from_dict(data: dict) -> IndefiniteTriple:
    try:
        basis = [decode_matrix(b) for b in data["algebra_basis"]]
        involution = [decode_matrix(b) for b in data["involution"]]
        return IndefiniteTriple(
            form=KreinForm(decode_matrix(data["gram"])),
            chi=decode_matrix(data["chi"]),
            cc=AntilinearOperator(decode_matrix(data["J"])),
            dirac=decode_matrix(data["dirac"]),
            algebra=FiniteAlgebra(basis, involution),
            sigma=int(data.get("sigma", 0)),
        )
    except KeyError as exc:
        raise ValueError(f"triple file is missing field {exc}") from exc


def load_triple(path: str) -> IndefiniteTriple:
    with open(path) as fh:
        return triple_from_dict(json.load(fh))


def formspace_to_dict(qspace_or_forms) -> dict:
    """Dump a form space (or Q-space) with rank, Gram condition and span."""
    forms = getattr(qspace_or_forms, "forms", qspace_or_forms)
    sv = forms.singular_values
    data = {
        "real_dim": forms.real_dim,
        "singular_values": [] if sv is None else [float(s) for s in sv],
        "span": [encode_matrix(m) for m in forms.span],
    }
    if hasattr(qspace_or_forms, "gram_cond"):
        data["gram_cond"] = float(qspace_or_forms.gram_cond)
        data["definite"] = bool(qspace_or_forms.definite)
    return data


def sm_input_from_dict(data: dict):
    """Parse {"N", "s", "epsF", "yukawas": {...}, "z": {...}} into model inputs."""
    try:
        n = int(data["N"])
        s = int(data["s"])
        eps_f = int(data["epsF"])
        yuk = data["yukawas"]
        y = YukawaSet(
            decode_matrix(yuk["Ynu"]),
            decode_matrix(yuk["Ye"]),
            decode_matrix(yuk["Yu"]),
            decode_matrix(yuk["Yd"]),
            decode_matrix(yuk["YR"]),
        )
    except KeyError as exc:
        raise ValueError(f"model file is missing field {exc}") from exc
    if y.n_gen != n:
        raise ValueError("declared N does not match the Yukawa size")
    z = None
    if "z" in data:
        try:
            z = ZParams(**{k: float(v) for k, v in data["z"].items()})
        except TypeError as exc:
            raise ValueError(f"bad z parameters: {exc}") from exc
    return y, s, eps_f, z


def load_sm_input(path: str):
    with open(path) as fh:
        return sm_input_from_dict(json.load(fh))


def dump_sm_input(path: str, y: YukawaSet, s: int, eps_f: int, z: ZParams = None):
    data = {
        "N": y.n_gen,
        "s": s,
        "epsF": eps_f,
        "yukawas": {
            "Ynu": encode_matrix(y.ynu),
            "Ye": encode_matrix(y.ye),
            "Yu": encode_matrix(y.yu),
            "Yd": encode_matrix(y.yd),
            "YR": encode_matrix(y.yr),
        },
    }
    if z is not None:
        data["z"] = {
            "alpha": z.alpha, "beta": z.beta, "gamma": z.gamma,
            "delta": z.delta, "mu": z.mu, "nu": z.nu,
        }
    with open(path, "w") as fh:
        json.dump(data, fh)
