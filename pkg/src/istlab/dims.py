"""Mod-8 sign and dimension arithmetic.

Everything downstream (charge-conjugation squares, adjoint signs, KO and
metric dimensions) is governed by the sign function a(n) = (-1)^(n(n+2)/8)
on even integers, together with the bijection between sign quadruples
(eps, eps2, kap, kap2) and pairs of even residues (n, m) mod 8.
"""

from __future__ import annotations

from dataclasses import dataclass

EVEN_RESIDUES = (0, 2, 4, 6)

#: cardinal convention names, in canonical order
CONVENTIONS = ("east", "west", "south", "north")


def mod8(n: int) -> int:
    """Reduce an integer to its canonical residue in {0,...,7}."""
    return n % 8


def sign_a(n: int) -> int:
    """The sign (-1)^(n(n+2)/8) on even integers (period 8)."""
    if n % 2:
        raise ValueError("a defined on even integers only")
    return -1 if ((n * (n + 2)) // 8) % 2 else 1


def half_power_sign(n: int) -> int:
    """The sign (-1)^(n/2) for even n."""
    if n % 2:
        raise ValueError("defined on even integers only")
    return -1 if (n // 2) % 2 else 1


def _check_sign(value: int, name: str) -> int:
    if value not in (-1, 1):
        raise ValueError(f"{name} must be +1 or -1, got {value!r}")
    return value


@dataclass(frozen=True)
class SignQuadruple:
    """The four signs (eps, eps2, kap, kap2) of a triple, each in {-1, +1}.

    ``eps`` is the square of the charge conjugation, ``kap`` its adjoint
    sign, ``eps2`` its commutation sign with the grading, and ``kap2``
    carries the grading's own adjoint sign via kap2 = (-1)^sigma * eps2.
    """

    eps: int
    eps2: int
    kap: int
    kap2: int

    def __post_init__(self):
        for name in ("eps", "eps2", "kap", "kap2"):
            _check_sign(getattr(self, name), name)


def signs_from_dims(n: int, m: int) -> SignQuadruple:
    """Sign quadruple attached to KO-dimension n and metric dimension m."""
    if n % 2 or m % 2:
        raise ValueError("KO and metric dimensions must be even")
    return SignQuadruple(
        eps=sign_a(n),
        eps2=half_power_sign(n),
        kap=sign_a(m),
        kap2=half_power_sign(m),
    )


def dims_from_signs(q: SignQuadruple) -> tuple[int, int]:
    """Invert ``signs_from_dims``; the map is bijective on {+-1}^2 x {+-1}^2."""
    pair_to_dim = {
        (sign_a(r), half_power_sign(r)): r for r in EVEN_RESIDUES
    }
    n = pair_to_dim[(q.eps, q.eps2)]
    m = pair_to_dim[(q.kap, q.kap2)]
    return n, m


def spacetime_pairs(n: int, m: int) -> frozenset[tuple[int, int]]:
    """The two residue classes (t, s) mod 8 with t-s = n and t+s = m mod 8.

    Solutions are t = (m+n)/2 + 4j, s = (m-n)/2 + 4k with j, k of equal
    parity, which reduce mod 8 to exactly two distinct pairs.
    """
    if n % 2 or m % 2:
        raise ValueError("KO and metric dimensions must be even")
    t0 = ((m + n) // 2) % 8
    s0 = ((m - n) // 2) % 8
    return frozenset({(t0, s0), ((t0 + 4) % 8, (s0 + 4) % 8)})


@dataclass(frozen=True)
class CardinalRow:
    """One convention's metric/KO dimensions and space-time pair, mod 8."""

    convention: str
    m: int
    n: int
    ts: tuple[int, int]
    physical: bool


def cardinal_table(q: int, p: int) -> list[CardinalRow]:
    """Dimension data of all four cardinal conventions for signature (q, p).

    South and North reduce negative space/time dimensions mod 8 and are
    flagged unphysical.
    """
    if (q + p) % 2:
        raise ValueError("total dimension q+p must be even")
    rows = [
        CardinalRow("east", mod8(p + q), mod8(q - p), (mod8(q), mod8(p)), True),
        CardinalRow("west", mod8(p + q), mod8(p - q), (mod8(p), mod8(q)), True),
        CardinalRow("south", mod8(-p - q), mod8(q - p), (mod8(-p), mod8(-q)), False),
        CardinalRow("north", mod8(-p - q), mod8(p - q), (mod8(-q), mod8(-p)), False),
    ]
    return rows
