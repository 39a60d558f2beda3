"""Regular (momentum-space) representation on orbit-indexed data.

An OrbitFunction tabulates a momentum-space object f by its values on the
finite orbit {sigma lambda}: entries[sigma] represents f(sigma lambda), each
value itself an exp-polynomial in x so position evaluation stays available.

Index convention, fixed once: the table transform for the permutation
action s_tau is entries'[sigma] = entries[tau^{-1} sigma], i.e.
(tau f)(lambda) = f(tau^{-1} lambda).  Divided differences, the deformed
transpositions s_{j,gamma} = s_j - i gamma Delta_j, deformed words, and the
symmetrizers are built from that single rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from . import exppoly
from .exppoly import ExpPolySum
from .symgroup import Permutation, all_permutations, compose, reduced_word, simple, transposition

__all__ = [
    "OrbitFunction",
    "EPS_REG",
    "orbit_planewave",
    "orbit_from_function",
    "act_table",
    "divided_difference",
    "deformed_transposition_momentum",
    "apply_deformed_word",
    "symmetrizer",
    "gamma_symmetrizer",
    "mult_symbol",
    "mult_scalar",
    "coeff_G",
    "tau_pm",
    "orbit_add",
    "orbit_scale",
]

# pairwise rapidity gaps below this make divided differences unreliable
EPS_REG = 1e-8


def _check_regular(lam: tuple[complex, ...]) -> None:
    n = len(lam)
    for a in range(n):
        for b in range(a + 1, n):
            if abs(lam[a] - lam[b]) < EPS_REG:
                raise ValueError(
                    f"degenerate rapidities: |lambda_{a+1} - lambda_{b+1}| < {EPS_REG}"
                )


@dataclass(frozen=True)
class OrbitFunction:
    """Values of a momentum-space function on the S_N-orbit of lambda."""

    lam: tuple[complex, ...]
    entries: Mapping[Permutation, ExpPolySum]

    def __post_init__(self) -> None:
        _check_regular(self.lam)
        if set(self.entries) != set(all_permutations(len(self.lam))):
            raise ValueError("orbit table must cover all of S_N")

    @property
    def n(self) -> int:
        return len(self.lam)

    def point(self, sigma: Permutation) -> tuple[complex, ...]:
        """The orbit point sigma lambda."""
        return sigma.act_vector(self.lam)

    def entry(self, sigma: Permutation) -> ExpPolySum:
        return self.entries[sigma]


def orbit_planewave(lam: tuple[complex, ...]) -> OrbitFunction:
    """The seed orbit: entries[sigma] = exp(i <sigma lambda, x>)."""
    lam = tuple(complex(v) for v in lam)
    _check_regular(lam)
    return OrbitFunction(
        lam,
        {s: exppoly.plane_wave(s.act_vector(lam)) for s in all_permutations(len(lam))},
    )


def orbit_from_function(
    lam: tuple[complex, ...], fn: Callable[[tuple[complex, ...]], ExpPolySum]
) -> OrbitFunction:
    """Tabulate an arbitrary momentum-space function on the orbit."""
    lam = tuple(complex(v) for v in lam)
    return OrbitFunction(
        lam, {s: fn(s.act_vector(lam)) for s in all_permutations(len(lam))}
    )


def orbit_add(o1: OrbitFunction, o2: OrbitFunction) -> OrbitFunction:
    return OrbitFunction(
        o1.lam, {s: o1.entries[s] + o2.entries[s] for s in o1.entries}
    )


def orbit_scale(c: complex, o: OrbitFunction) -> OrbitFunction:
    return OrbitFunction(o.lam, {s: exppoly.scale(c, p) for s, p in o.entries.items()})


def act_table(tau: Permutation, o: OrbitFunction) -> OrbitFunction:
    """The permutation action: entries'[sigma] = entries[tau^{-1} sigma]."""
    taui = tau.inverse()
    return OrbitFunction(
        o.lam, {s: o.entries[compose(taui, s)] for s in o.entries}
    )


def divided_difference(o: OrbitFunction, j: int, k: int) -> OrbitFunction:
    """Delta_jk: entries'[sigma] = (f(sigma lam) - f(s_jk sigma lam)) /
    ((sigma lam)_j - (sigma lam)_k)."""
    sjk = transposition(j, k, o.n)
    out = {}
    for sigma, val in o.entries.items():
        point = o.point(sigma)
        denom = point[j - 1] - point[k - 1]
        swapped = o.entries[compose(sjk, sigma)]
        out[sigma] = exppoly.scale(1.0 / denom, val - swapped)
    return OrbitFunction(o.lam, out)


def deformed_transposition_momentum(
    o: OrbitFunction, j: int, gamma: float
) -> OrbitFunction:
    """s_{j,gamma} = s_j - i gamma Delta_{j,j+1}."""
    acted = act_table(simple(j, o.n), o)
    dd = divided_difference(o, j, j + 1)
    return orbit_add(acted, orbit_scale(-1j * gamma, dd))


def apply_deformed_word(o: OrbitFunction, w: Permutation, gamma: float) -> OrbitFunction:
    """w_gamma: the product of deformed transpositions along a reduced word
    of w (well-defined independently of the word chosen)."""
    out = o
    for i in reversed(reduced_word(w)):
        out = deformed_transposition_momentum(out, i, gamma)
    return out


def symmetrizer(o: OrbitFunction) -> OrbitFunction:
    """(1/N!) sum_w w, acting by table permutation."""
    perms = all_permutations(o.n)
    acc = None
    for w in perms:
        term = act_table(w, o)
        acc = term if acc is None else orbit_add(acc, term)
    return orbit_scale(1.0 / len(perms), acc)


def gamma_symmetrizer(o: OrbitFunction, gamma: float) -> OrbitFunction:
    """(1/N!) sum_w w_gamma, the gamma-deformed symmetrizer."""
    perms = all_permutations(o.n)
    acc = None
    for w in perms:
        term = apply_deformed_word(o, w, gamma)
        acc = term if acc is None else orbit_add(acc, term)
    return orbit_scale(1.0 / len(perms), acc)


def mult_symbol(o: OrbitFunction, j: int) -> OrbitFunction:
    """Multiplication by the symbol lambda_j: entry at sigma gains the
    factor (sigma lambda)_j."""
    return OrbitFunction(
        o.lam,
        {s: exppoly.scale(o.point(s)[j - 1], p) for s, p in o.entries.items()},
    )


def mult_scalar(
    o: OrbitFunction, field: Callable[[tuple[complex, ...]], complex]
) -> OrbitFunction:
    """Multiply entries[sigma] by field(sigma lambda)."""
    out = {}
    for s, p in o.entries.items():
        value = field(o.point(s))
        if value != value or abs(value) == float("inf"):
            raise ValueError("scalar field singular at an orbit point")
        out[s] = exppoly.scale(value, p)
    return OrbitFunction(o.lam, out)


def coeff_G(lam: tuple[complex, ...], gamma: float) -> complex:
    """G_gamma(lambda) = prod_{j<k} (lambda_j - lambda_k - i gamma) /
    (lambda_j - lambda_k)."""
    out = 1.0 + 0j
    n = len(lam)
    for j in range(n):
        for k in range(j + 1, n):
            d = lam[j] - lam[k]
            if d == 0:
                raise ZeroDivisionError("pole of G_gamma at coinciding rapidities")
            out *= (d - 1j * gamma) / d
    return out


def tau_pm(mu: complex, lam: tuple[complex, ...], gamma: float, sign: int) -> complex:
    """tau^+/-_mu(lambda) = prod_j (lambda_j - mu -/+ i gamma)/(lambda_j - mu);
    sign=+1 picks tau^+, sign=-1 picks tau^-."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = 1.0 + 0j
    for lj in lam:
        d = lj - mu
        if d == 0:
            raise ZeroDivisionError("tau has a pole at mu = lambda_j")
        out *= (d - sign * 1j * gamma) / d
    return out
