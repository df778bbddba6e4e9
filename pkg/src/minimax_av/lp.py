"""Dense LP representation and a small two-phase simplex solver.

The LPs solved here are tiny (a handful of variables, one row per ballot),
so a plain dense tableau with Bland's anti-cycling rule is enough; no
external solver is pulled in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import SimplexError

if TYPE_CHECKING:  # pragma: no cover
    from .ptas import AuxProblem

TOLERANCE = 1e-9
_MAX_ITERATIONS = 10_000

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """min objective . x  subject to eq rows (= rhs), ub rows (<= rhs), and box bounds.

    Lower bounds must be finite; an upper bound of None means +infinity.
    """

    objective: tuple[float, ...]
    eq_rows: tuple[tuple[tuple[float, ...], float], ...]
    ub_rows: tuple[tuple[tuple[float, ...], float], ...]
    bounds: tuple[tuple[float, float | None], ...]

    def __post_init__(self):
        nv = len(self.objective)
        if len(self.bounds) != nv:
            raise ValueError("bounds arity mismatch")
        for row, _ in self.eq_rows + self.ub_rows:
            if len(row) != nv:
                raise ValueError("constraint row arity mismatch")
        for lo, hi in self.bounds:
            if hi is not None and lo > hi:
                raise ValueError(f"bound [{lo}, {hi}] is empty")

    @property
    def num_vars(self) -> int:
        return len(self.objective)


@dataclass(frozen=True)
class LPOutcome:
    status: str
    solution: tuple[float, ...] | None = None
    value: float | None = None


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    for i in range(T.shape[0]):
        if i != row and T[i, col] != 0.0:
            T[i] -= T[i, col] * T[row]


def _bland_iterate(T: np.ndarray, basis: list[int], num_enterable: int, tol: float) -> str:
    """Run simplex iterations on tableau T (last row = reduced costs, last col = rhs)."""
    for _ in range(_MAX_ITERATIONS):
        enter = -1
        for j in range(num_enterable):
            if T[-1, j] < -tol:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        best_ratio = None
        leave = -1
        for i in range(len(basis)):
            a = T[i, enter]
            if a > tol:
                ratio = T[i, -1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio - 1e-12
                    or (abs(ratio - best_ratio) <= 1e-12 and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        _pivot(T, leave, enter)
        basis[leave] = enter
    raise SimplexError("iteration safeguard exhausted")


def solve_lp(lp: LinearProgram, tol: float = TOLERANCE) -> LPOutcome:
    """Two-phase primal simplex. Statuses: optimal, infeasible, unbounded."""
    nv = lp.num_vars
    lows = np.array([lo for lo, _ in lp.bounds], dtype=float)
    if not np.all(np.isfinite(lows)):
        raise ValueError("lower bounds must be finite")

    # Shift to u = x - lo >= 0; finite upper bounds become extra <= rows.
    eq = [(np.asarray(row, dtype=float), rhs - float(np.dot(row, lows))) for row, rhs in lp.eq_rows]
    ub = [(np.asarray(row, dtype=float), rhs - float(np.dot(row, lows))) for row, rhs in lp.ub_rows]
    for j, (lo, hi) in enumerate(lp.bounds):
        if hi is not None:
            row = np.zeros(nv)
            row[j] = 1.0
            ub.append((row, hi - lo))

    nrows = len(eq) + len(ub)
    nslack = len(ub)
    nart = nrows
    ncols = nv + nslack + nart

    A = np.zeros((nrows, ncols))
    b = np.zeros(nrows)
    for i, (row, rhs) in enumerate(eq):
        A[i, :nv] = row
        b[i] = rhs
    for s, (row, rhs) in enumerate(ub):
        i = len(eq) + s
        A[i, :nv] = row
        A[i, nv + s] = 1.0
        b[i] = rhs
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0
    for i in range(nrows):
        A[i, nv + nslack + i] = 1.0

    T = np.zeros((nrows + 1, ncols + 1))
    T[:nrows, :ncols] = A
    T[:nrows, -1] = b
    # Phase 1: minimize the artificial sum; price out the artificial basis.
    T[-1, nv + nslack :][:nart] = 1.0
    T[-1] -= T[:nrows].sum(axis=0)
    basis = [nv + nslack + i for i in range(nrows)]

    status = _bland_iterate(T, basis, ncols, tol)
    if status != OPTIMAL:  # phase 1 is always bounded below by 0
        raise SimplexError("phase 1 terminated abnormally")
    if -T[-1, -1] > 1e-7:
        return LPOutcome(INFEASIBLE)

    # Drive leftover artificials out of the basis; drop redundant rows.
    art_start = nv + nslack
    keep = []
    for i in range(len(basis)):
        if basis[i] >= art_start:
            piv = next((j for j in range(art_start) if abs(T[i, j]) > tol), None)
            if piv is None:
                continue  # redundant row
            _pivot(T, i, piv)
            basis[i] = piv
        keep.append(i)
    if len(keep) < len(basis):
        T = np.vstack([T[keep], T[-1:]])
        basis = [basis[i] for i in keep]

    # Phase 2 objective row, priced out against the current basis.
    T[-1, :] = 0.0
    T[-1, :nv] = lp.objective
    for i, var in enumerate(basis):
        if T[-1, var] != 0.0:
            T[-1] -= T[-1, var] * T[i]

    status = _bland_iterate(T, basis, art_start, tol)
    if status == UNBOUNDED:
        return LPOutcome(UNBOUNDED)

    u = np.zeros(nv)
    for i, var in enumerate(basis):
        if var < nv:
            u[var] = T[i, -1]
    x = lows + u
    return LPOutcome(OPTIMAL, tuple(float(v) for v in x), float(np.dot(lp.objective, x)))


def build_aux_lp(aux: "AuxProblem") -> LinearProgram:
    """LP relaxation of the star-part committee problem.

    Variables are the beta fractional star positions followed by the
    objective bound q. One equality pins the number of ones to k'; each
    ballot contributes a distance-budget row linearized position-wise.
    """
    beta = aux.beta
    objective = (0.0,) * beta + (1.0,)
    eq_rows = (((1.0,) * beta + (0.0,), float(aux.k_prime)),)
    ub_rows = []
    for ballot, offset in zip(aux.star_ballots, aux.offsets):
        # d(s', ballot) = sum_j [ballot_j = 0] s'_j + [ballot_j = 1] (1 - s'_j)
        row = tuple(-1.0 if ballot[j] else 1.0 for j in range(beta)) + (-1.0,)
        rhs = float(-offset - ballot.ones_count())
        ub_rows.append((row, rhs))
    bounds = ((0.0, 1.0),) * beta + ((0.0, None),)
    return LinearProgram(objective, eq_rows, tuple(ub_rows), bounds)


def dump_lp(lp: LinearProgram) -> str:
    """Plain-text row-oriented dump for external cross-checking."""
    lines = ["min " + " ".join(f"{c:+g}" for c in lp.objective)]
    for row, rhs in lp.eq_rows:
        lines.append(" ".join(f"{c:+g}" for c in row) + f" == {rhs:g}")
    for row, rhs in lp.ub_rows:
        lines.append(" ".join(f"{c:+g}" for c in row) + f" <= {rhs:g}")
    for j, (lo, hi) in enumerate(lp.bounds):
        lines.append(f"x{j} in [{lo:g}, {'inf' if hi is None else f'{hi:g}'}]")
    return "\n".join(lines) + "\n"
