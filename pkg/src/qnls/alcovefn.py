"""Piecewise-analytic functions on the braid arrangement {x_j = x_k}.

An AlcoveFunction stores one exp-polynomial piece per alcove.  Alcoves are
labeled by the ordering permutation sigma, meaning x_{sigma(1)} > ... >
x_{sigma(N)}; the alcove labeled sigma is w^{-1} R^N_+ with w = sigma^{-1},
and the fundamental alcove (x_1 > ... > x_N) is labeled by the identity.

This module hosts the position action of S_N, the symmetrizer, the
Dunkl-type operators, the reflection integral I_jk, the deformed position
transpositions, the propagation operator, and the wall-jump checkers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import exppoly
from .exppoly import Bound, ExpPolySum
from .symgroup import Permutation, all_permutations, compose, reduced_word, simple, transposition

__all__ = [
    "AlcoveFunction",
    "WallSample",
    "from_analytic",
    "zero_function",
    "build",
    "act_position",
    "symmetrize",
    "wall_jump",
    "higher_wall_jump",
    "dunkl",
    "reflection_integral",
    "deformed_transposition_position",
    "act_analytic",
    "propagation",
    "afn_add",
    "afn_scale",
    "afn_mul_analytic",
    "afn_derivative",
    "sample_interior",
    "sample_wall",
    "check_continuity",
    "to_json",
    "from_json",
    "DEFAULT_SEED",
    "WALL_GAP_FLOOR",
]

DEFAULT_SEED = 0x5EED
# remaining coordinates of a wall sample keep at least this gap
WALL_GAP_FLOOR = 1e-6
# wall-limit agreement threshold for the continuity flag
CONTINUITY_TOL = 1e-9


@dataclass(frozen=True)
class AlcoveFunction:
    """N! exp-polynomial pieces indexed by the ordering permutation."""

    n: int
    pieces: Mapping[Permutation, ExpPolySum]
    continuous: bool = False

    def __post_init__(self) -> None:
        perms = all_permutations(self.n)
        if set(self.pieces) != set(perms):
            raise ValueError(f"expected {len(perms)} pieces for N={self.n}")

    def piece(self, sigma: Permutation) -> ExpPolySum:
        return self.pieces[sigma]

    def eval(self, x: Iterable[float], side: Permutation | None = None) -> complex:
        """Value at x, using the piece whose ordering x satisfies.

        On a wall (tied coordinates) a side must be given unless the
        continuity flag is set.
        """
        xv = tuple(x)
        if len(xv) != self.n:
            raise ValueError("dimension mismatch")
        if side is not None:
            return self.pieces[side].eval(xv)
        sigma, tied = ordering_permutation(xv)
        if tied and not self.continuous:
            raise ValueError("point lies on a wall of a discontinuous function")
        return self.pieces[sigma].eval(xv)


@dataclass(frozen=True)
class WallSample:
    """A base point on the wall V_jk = {x_j = x_k} with regular companions."""

    j: int
    k: int
    x: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.x[self.j - 1] != self.x[self.k - 1]:
            raise ValueError("sample not on the wall")


def ordering_permutation(x: tuple) -> tuple[Permutation, bool]:
    """Sigma with x_{sigma(1)} >= ... >= x_{sigma(N)}, and a tie flag."""
    order = sorted(range(1, len(x) + 1), key=lambda j: -x[j - 1].real if isinstance(x[j - 1], complex) else -x[j - 1])
    tied = any(x[order[r] - 1] == x[order[r + 1] - 1] for r in range(len(x) - 1))
    return Permutation(tuple(order)), tied


def from_analytic(f: ExpPolySum) -> AlcoveFunction:
    """The globally analytic function f, viewed piecewise."""
    return AlcoveFunction(f.n, {s: f for s in all_permutations(f.n)}, continuous=True)


def zero_function(n: int) -> AlcoveFunction:
    return from_analytic(exppoly.zero(n))


def build(pieces: Mapping[Permutation, ExpPolySum], continuous: bool = False) -> AlcoveFunction:
    n = next(iter(pieces)).n
    return AlcoveFunction(n, dict(pieces), continuous)


def afn_add(f: AlcoveFunction, g: AlcoveFunction) -> AlcoveFunction:
    if f.n != g.n:
        raise ValueError("dimension mismatch")
    return AlcoveFunction(
        f.n,
        {s: f.pieces[s] + g.pieces[s] for s in f.pieces},
        continuous=f.continuous and g.continuous,
    )


def afn_scale(c: complex, f: AlcoveFunction) -> AlcoveFunction:
    return AlcoveFunction(
        f.n, {s: exppoly.scale(c, p) for s, p in f.pieces.items()}, f.continuous
    )


def afn_mul_analytic(g: ExpPolySum, f: AlcoveFunction) -> AlcoveFunction:
    """Multiply every piece by the same analytic factor."""
    return AlcoveFunction(
        f.n, {s: exppoly.mul(g, p) for s, p in f.pieces.items()}, f.continuous
    )


def afn_derivative(f: AlcoveFunction, j: int) -> AlcoveFunction:
    """Piecewise d/dx_j (one-sided on walls)."""
    return AlcoveFunction(
        f.n, {s: exppoly.derivative(p, j) for s, p in f.pieces.items()}, False
    )


def afn_canonicalize(f: AlcoveFunction) -> AlcoveFunction:
    return AlcoveFunction(
        f.n, {s: exppoly.canonicalize(p) for s, p in f.pieces.items()}, f.continuous
    )


def act_analytic(w: Permutation, f: ExpPolySum) -> ExpPolySum:
    """(w f)(x) = f(w^{-1} x) for analytic f: slot m is relabeled to w(m)."""
    return exppoly.remap(f, {m: w(m) for m in range(1, f.n + 1)}, f.n)


def act_position(w: Permutation, F: AlcoveFunction) -> AlcoveFunction:
    """(w F)(x) = F(w^{-1} x).

    The piece of wF on the alcove labeled w*sigma is the sigma-piece of F
    with slots relabeled by w.
    """
    if w.n != F.n:
        raise ValueError("size mismatch")
    pieces = {
        compose(w, sigma): act_analytic(w, F.pieces[sigma]) for sigma in F.pieces
    }
    return AlcoveFunction(F.n, pieces, F.continuous)


def symmetrize(F: AlcoveFunction) -> AlcoveFunction:
    """(1/N!) sum_w wF; a projection onto S_N-invariant functions."""
    acc = None
    for w in all_permutations(F.n):
        term = act_position(w, F)
        acc = term if acc is None else afn_add(acc, term)
    return afn_canonicalize(afn_scale(1.0 / len(all_permutations(F.n)), acc))


def _side_orderings(sample: WallSample, n: int) -> tuple[Permutation, Permutation]:
    """Alcove labels on the x_j > x_k and x_j < x_k sides of the sample."""
    j, k, x = sample.j, sample.k, sample.x
    others = sorted(
        (m for m in range(1, n + 1) if m not in (j, k)), key=lambda m: -x[m - 1]
    )
    val = x[j - 1]
    plus, minus = [], []
    placed = False
    for m in others:
        if not placed and x[m - 1] < val:
            plus.extend([j, k])
            minus.extend([k, j])
            placed = True
        plus.append(m)
        minus.append(m)
    if not placed:
        plus.extend([j, k])
        minus.extend([k, j])
    return Permutation(tuple(plus)), Permutation(tuple(minus))


def wall_jump(
    F: AlcoveFunction, j: int, k: int, gamma: float, samples: Iterable[WallSample]
) -> list[dict]:
    """Derivative-jump check across V_jk.

    Per sample reports the one-sided limits of (d_j - d_k)F and the residual
    (d_j - d_k)F|+ - (d_j - d_k)F|- - 2 gamma F|_wall.
    """
    return higher_wall_jump(F, j, k, gamma, samples, order=1)


def higher_wall_jump(
    F: AlcoveFunction,
    j: int,
    k: int,
    gamma: float,
    samples: Iterable[WallSample],
    order: int = 1,
) -> list[dict]:
    """Order-r jump condition across V_jk.

    The jump of (d_j - d_k)^r equals (1 - (-1)^r) gamma (d_j - d_k)^{r-1} F
    on the wall: zero for even r, 2 gamma (...) for odd r.
    """
    if not (1 <= j < k <= F.n):
        raise ValueError("need 1 <= j < k <= N")
    reports = []
    for sample in samples:
        if sample.j != j or sample.k != k:
            raise ValueError("sample belongs to a different wall")
        plus, minus = _side_orderings(sample, F.n)
        dp = F.pieces[plus]
        dm = F.pieces[minus]
        wall = F.pieces[plus]
        for _ in range(order):
            dp = exppoly.derivative(dp, j) - exppoly.derivative(dp, k)
            dm = exppoly.derivative(dm, j) - exppoly.derivative(dm, k)
        for _ in range(order - 1):
            wall = exppoly.derivative(wall, j) - exppoly.derivative(wall, k)
        lim_p = dp.eval(sample.x)
        lim_m = dm.eval(sample.x)
        target = (1 - (-1) ** order) * gamma * wall.eval(sample.x)
        reports.append(
            {
                "x": sample.x,
                "limit_plus": lim_p,
                "limit_minus": lim_m,
                "residual": lim_p - lim_m - target,
            }
        )
    return reports


def dunkl(F: AlcoveFunction, j: int, gamma: float) -> AlcoveFunction:
    """Dunkl-type operator d_{j,gamma}.

    (d_{j,gamma}F)(x) = d_j F(x)
        - gamma sum_{k<j} theta(x_j - x_k) F(s_jk x)
        + gamma sum_{k>j} theta(x_k - x_j) F(s_jk x),
    with every theta factor resolved to 0/1 by the alcove ordering.  On the
    fundamental alcove it reduces to the plain derivative.
    """
    n = F.n
    pieces = {s: exppoly.derivative(p, j) for s, p in F.pieces.items()}
    for k in range(1, n + 1):
        if k == j:
            continue
        swapped = act_position(transposition(j, k, n), F)
        for sigma in pieces:
            rank = sigma.inverse()
            if k < j:
                # theta(x_j - x_k): x_j above x_k in this alcove
                active = rank(j) < rank(k)
                coeff = -gamma
            else:
                # theta(x_k - x_j)
                active = rank(k) < rank(j)
                coeff = gamma
            if active:
                pieces[sigma] = pieces[sigma] + exppoly.scale(
                    coeff, swapped.pieces[sigma]
                )
    return AlcoveFunction(n, pieces, continuous=False)


def reflection_integral(f: ExpPolySum, j: int, k: int) -> ExpPolySum:
    """(I_jk f)(x) = int_0^{x_j - x_k} f(x - y(e_j - e_k)) dy, in closed form.

    Substituting u = x_k + y turns the bounds into plain coordinates:
    the integrand becomes f with slot j -> x_j + x_k - u, slot k -> u.
    """
    n = f.n
    if j == k:
        raise ValueError("need j != k")
    u = n + 1
    rows = {m: ({m: 1.0 + 0j}, 0j) for m in range(1, n + 1)}
    rows[j] = ({j: 1.0 + 0j, k: 1.0 + 0j, u: -1.0 + 0j}, 0j)
    rows[k] = ({u: 1.0 + 0j}, 0j)
    g = exppoly.pullback(f, rows, n + 1)
    h = exppoly.integrate(g, u, Bound.coord(k), Bound.coord(j))
    return exppoly.remap(h, {m: m for m in range(1, n + 1)}, n)


def deformed_transposition_position(f: ExpPolySum, j: int, gamma: float) -> ExpPolySum:
    """s_{j,gamma} f = s_j f + gamma I_{j,j+1} f on analytic f."""
    sj = simple(j, f.n)
    return exppoly.canonicalize(
        act_analytic(sj, f) + exppoly.scale(gamma, reflection_integral(f, j, j + 1))
    )


def apply_deformed_position_word(f: ExpPolySum, w: Permutation, gamma: float) -> ExpPolySum:
    """w_gamma f: the product of deformed transpositions along a reduced word."""
    out = f
    for i in reversed(reduced_word(w)):
        out = deformed_transposition_position(out, i, gamma)
    return out


def propagation(f: ExpPolySum, gamma: float) -> AlcoveFunction:
    """Propagation operator P_gamma: piece on w^{-1} R^N_+ is w^{-1} w_gamma f."""
    n = f.n
    pieces = {}
    for sigma in all_permutations(n):
        w = sigma.inverse()
        deformed = apply_deformed_position_word(f, w, gamma)
        pieces[sigma] = act_analytic(w.inverse(), deformed)
    return AlcoveFunction(n, pieces, continuous=True)


def sample_interior(
    n: int, count: int, length: float, seed: int = DEFAULT_SEED
) -> list[tuple[float, ...]]:
    """Deterministic regular points in (-L/2, L/2)^N with all gaps >= floor."""
    rng = random.Random(seed)
    points = []
    while len(points) < count:
        x = tuple(rng.uniform(-length / 2, length / 2) for _ in range(n))
        gaps = [abs(x[a] - x[b]) for a in range(n) for b in range(a + 1, n)]
        if not gaps or min(gaps) >= WALL_GAP_FLOOR:
            points.append(x)
    return points


def sample_wall(
    n: int, j: int, k: int, count: int, length: float, seed: int = DEFAULT_SEED
) -> list[WallSample]:
    """Deterministic samples on V_jk with the other coordinates regular."""
    rng = random.Random(seed ^ (j * 1000003 + k))
    samples = []
    while len(samples) < count:
        x = [rng.uniform(-length / 2, length / 2) for _ in range(n)]
        x[k - 1] = x[j - 1]
        vals = sorted(set(range(1, n + 1)) - {k}, key=lambda m: x[m - 1])
        gaps = [
            abs(x[vals[a] - 1] - x[vals[a + 1] - 1]) for a in range(len(vals) - 1)
        ]
        if not gaps or min(gaps) >= WALL_GAP_FLOOR:
            samples.append(WallSample(j, k, tuple(x)))
    return samples


def check_continuity(
    F: AlcoveFunction,
    length: float,
    samples_per_wall: int = 10,
    seed: int = DEFAULT_SEED,
    tol: float = CONTINUITY_TOL,
) -> tuple[bool, float]:
    """Compare wall limits from both sides at sampled wall points."""
    worst = 0.0
    scale_ = 1.0
    for j in range(1, F.n + 1):
        for k in range(j + 1, F.n + 1):
            for sample in sample_wall(F.n, j, k, samples_per_wall, length, seed):
                plus, minus = _side_orderings(sample, F.n)
                vp = F.pieces[plus].eval(sample.x)
                vm = F.pieces[minus].eval(sample.x)
                worst = max(worst, abs(vp - vm))
                scale_ = max(scale_, abs(vp), abs(vm))
    return worst <= tol * scale_, worst


def to_json(F: AlcoveFunction) -> dict:
    return {
        "n": F.n,
        "pieces": {
            ",".join(map(str, s.images)): exppoly.to_json(p)
            for s, p in sorted(F.pieces.items(), key=lambda kv: kv[0].images)
        },
    }


def from_json(data: dict) -> AlcoveFunction:
    n = data["n"]
    pieces = {
        Permutation(tuple(int(v) for v in key.split(","))): exppoly.from_json(val, n)
        for key, val in data["pieces"].items()
    }
    return AlcoveFunction(n, pieces)
