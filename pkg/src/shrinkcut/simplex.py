"""Bounded-variable simplex over a dense tableau.

Solves   maximize c.x   s.t.   A x <= b,   lo <= x <= hi.

Every structural variable needs a finite lower bound; upper bounds may be
infinite.  Slack variables in [0, inf) turn rows into equalities.  Nonbasic
variables sit at one of their bounds; a fresh solve starts from the
sign-optimal bound placement (which is dual feasible), restores primal
feasibility with dual simplex steps, and finishes with the primal method.
Both pivot loops use Dantzig pricing and fall back to Bland's anti-cycling
rule after 1000 degenerate pivots.

``IncrementalLp`` keeps the tableau alive between constraint rounds so a
cutting-plane loop can append violated rows and re-optimize with a handful
of dual pivots instead of solving from scratch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleError, ShrinkcutError, UnboundedError

_PIVOT_EPS = 1e-10
_FEAS_TOL = 1e-9
_RED_TOL = 1e-9
_DEGEN_TOL = 1e-12
_BLAND_AFTER = 1000
_MAX_PIVOTS = 500_000
_BIG_BOUND = 1e9

_AT_LOWER = 0
_AT_UPPER = 1
_BASIC = 2


@dataclass
class LpProblem:
    """Objective coefficients, variable bounds and (<=) constraint rows."""

    objective: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    rows: list[tuple[dict[int, float], float]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.objective = np.asarray(self.objective, dtype=np.float64)
        n = self.objective.shape[0]
        self.lower = np.asarray(self.lower, dtype=np.float64)
        self.upper = np.asarray(self.upper, dtype=np.float64)
        if self.lower.shape != (n,) or self.upper.shape != (n,):
            raise ValueError("bounds must match the objective length")
        if not np.all(np.isfinite(self.objective)):
            raise ValueError("objective coefficients must be finite")
        if not np.all(np.isfinite(self.lower)):
            raise ValueError("lower bounds must be finite")
        if np.any(self.upper < self.lower):
            raise InfeasibleError("a variable has upper < lower")

    def add_row(self, coefs: dict[int, float], rhs: float) -> None:
        if not all(math.isfinite(v) for v in coefs.values()) or not math.isfinite(rhs):
            raise ValueError("row coefficients must be finite")
        self.rows.append((dict(coefs), float(rhs)))


@dataclass
class LpSolution:
    x: np.ndarray
    objective: float
    pivots: int


class IncrementalLp:
    """A live tableau: optimize, append rows, re-optimize.

    Cut-generation LPs are heavily dual-degenerate (many zero reduced costs),
    which stalls plain Dantzig pricing in endless degenerate pivots.  All
    pivoting therefore runs on a deterministically jittered copy of the
    objective (relative magnitude ~1e-9), which makes vertex values generic;
    reported objectives and solutions always use the true coefficients.  For
    data whose distinct vertex values are separated by more than the total
    jitter (true of the integer-weight relaxations built here) the jittered
    optimum is an exact true optimum.
    """

    def __init__(self, objective, lower, upper, perturb: float = 1e-9):
        self.nv = len(objective)
        self._boxed: list[int] = []
        c = np.asarray(objective, dtype=np.float64).copy()
        lo = np.asarray(lower, dtype=np.float64)
        hi = np.asarray(upper, dtype=np.float64).copy()
        # An improving direction along an infinite bound has no sign-optimal
        # placement; box it and report Unbounded if the box ends up active.
        for j in range(self.nv):
            if not math.isfinite(hi[j]) and c[j] > 0:
                hi[j] = max(_BIG_BOUND, abs(lo[j]) * 2)
                self._boxed.append(j)
        self.c_true = c
        scale = max(1.0, float(np.max(np.abs(c))) if self.nv else 1.0)
        self._perturb = perturb * scale
        self._prng = np.random.default_rng(0x5EED)
        cw = c.copy()
        if perturb > 0.0 and self.nv:
            jitter = self._perturb * self._prng.uniform(0.5, 1.5, self.nv)
            # Variables kept unboxed at an infinite bound must not turn
            # upward-improving, so jitter those downward.
            up_ok = np.isfinite(hi)
            cw = cw + np.where(up_ok, jitter, -jitter)
        self.c = cw
        self.lo = lo
        self.hi = hi
        self.T = np.zeros((0, self.nv))
        self.xb = np.zeros(0)
        self.basis = np.zeros(0, dtype=np.int64)
        self.vstat = np.where(
            (self.c > 0) & np.isfinite(self.hi), _AT_UPPER, _AT_LOWER
        ).astype(np.int8)
        self.red = self.c.copy()
        self.degenerate_pivots = 0
        self.pivots = 0
        self._scratch: np.ndarray | None = None

    # -- state helpers -------------------------------------------------

    @property
    def ncols(self) -> int:
        return self.T.shape[1] if self.T.size else self.nv

    def values(self) -> np.ndarray:
        """Current values of all variables (structural + slack)."""
        x = np.where(self.vstat == _AT_UPPER, self.hi, self.lo)
        x[self.basis] = self.xb
        return x

    def solution(self) -> np.ndarray:
        return self.values()[: self.nv]

    def objective_value(self) -> float:
        return float(self.c_true[: self.nv] @ self.solution())

    def _bound_of(self, j: int) -> float:
        return self.hi[j] if self.vstat[j] == _AT_UPPER else self.lo[j]

    # -- row management ------------------------------------------------

    def append_rows(self, rows: list[tuple[dict[int, float], float]]) -> None:
        """Add (coefs, rhs) <= rows; each gets a fresh basic slack."""
        if not rows:
            return
        k = len(rows)
        old_rows, old_cols = self.T.shape if self.T.size else (0, self.nv)
        new_cols = old_cols + k
        values = self.values()

        T = np.zeros((old_rows + k, new_cols))
        if self.T.size:
            T[:old_rows, :old_cols] = self.T
        # Slacks get a tiny negative working cost (dual-degeneracy breaker);
        # their true cost is zero.
        slack_costs = (
            -self._perturb * self._prng.uniform(0.5, 1.5, k)
            if self._perturb > 0.0
            else np.zeros(k)
        )
        self.lo = np.concatenate([self.lo, np.zeros(k)])
        self.hi = np.concatenate([self.hi, np.full(k, np.inf)])
        self.c = np.concatenate([self.c, slack_costs])
        self.c_true = np.concatenate([self.c_true, np.zeros(k)])
        self.red = np.concatenate([self.red, slack_costs])
        self.vstat = np.concatenate(
            [self.vstat, np.full(k, _BASIC, dtype=np.int8)]
        )
        new_xb = np.zeros(k)
        new_basis = np.zeros(k, dtype=np.int64)

        for idx, (coefs, rhs) in enumerate(rows):
            slack = old_cols + idx
            row = np.zeros(new_cols)
            for j, v in coefs.items():
                if not 0 <= j < self.nv:
                    raise ValueError(f"row references unknown variable {j}")
                row[j] = v
            row[slack] = 1.0
            # Express in terms of the current basis.
            for i in range(old_rows):
                bj = self.basis[i]
                if row[bj] != 0.0:
                    row[: old_cols] -= row[bj] * T[i, :old_cols]
            T[old_rows + idx] = row
            slack_val = rhs - sum(v * values[j] for j, v in coefs.items())
            new_xb[idx] = slack_val
            new_basis[idx] = slack

        self.T = T
        self.xb = np.concatenate([self.xb, new_xb])
        self.basis = np.concatenate([self.basis, new_basis])
        # The new basic slacks carry nonzero working costs; fold them into
        # the reduced costs of every column.
        for idx in range(k):
            if slack_costs[idx] != 0.0:
                self.red -= slack_costs[idx] * self.T[old_rows + idx]

    # -- pivoting ------------------------------------------------------

    def _pivot(self, r: int, q: int, enter_val: float, leave_stat: int) -> None:
        piv = self.T[r, q]
        self.T[r] /= piv
        col = self.T[:, q].copy()
        col[r] = 0.0
        if self._scratch is None or self._scratch.shape != self.T.shape:
            self._scratch = np.empty_like(self.T)
        np.multiply(col[:, None], self.T[r][None, :], out=self._scratch)
        self.T -= self._scratch
        if self.red[q] != 0.0:
            self.red -= self.red[q] * self.T[r]
        leave = self.basis[r]
        self.vstat[leave] = leave_stat
        self.basis[r] = q
        self.vstat[q] = _BASIC
        self.xb[r] = enter_val
        self.pivots += 1
        if self.pivots > _MAX_PIVOTS:
            raise ShrinkcutError("simplex pivot limit exceeded")

    def _primal(self) -> None:
        """Improve a primal-feasible basis until dual feasible (optimal)."""
        while True:
            bland = self.degenerate_pivots >= _BLAND_AFTER
            at_lo = (self.vstat == _AT_LOWER) & (self.red > _RED_TOL)
            at_hi = (self.vstat == _AT_UPPER) & (self.red < -_RED_TOL)
            eligible = np.flatnonzero(at_lo | at_hi)
            if eligible.size == 0:
                return
            if bland:
                q = int(eligible[0])
            else:
                q = int(eligible[np.argmax(np.abs(self.red[eligible]))])
            delta = 1.0 if self.vstat[q] == _AT_LOWER else -1.0
            col = self.T[:, q] if self.T.size else np.zeros(0)
            move = delta * col

            t_bound = self.hi[q] - self.lo[q]
            nr = move.shape[0]
            if nr:
                tarr = np.full(nr, np.inf)
                pos = move > _PIVOT_EPS
                if np.any(pos):
                    tarr[pos] = (self.xb[pos] - self.lo[self.basis[pos]]) / move[pos]
                neg = move < -_PIVOT_EPS
                ub = self.hi[self.basis]
                neg &= np.isfinite(ub)
                if np.any(neg):
                    tarr[neg] = (ub[neg] - self.xb[neg]) / (-move[neg])
                np.maximum(tarr, 0.0, out=tarr)
                t_rows = float(tarr.min())
            else:
                t_rows = np.inf
            if not (math.isfinite(t_bound) or math.isfinite(t_rows)):
                raise UnboundedError("objective unbounded above")
            if t_rows < t_bound - _DEGEN_TOL:
                cand = np.flatnonzero(tarr <= t_rows + _DEGEN_TOL)
                if bland:
                    best_row = int(cand[np.argmin(self.basis[cand])])
                else:
                    best_row = int(cand[np.argmax(np.abs(move[cand]))])
                if t_rows <= _DEGEN_TOL:
                    self.degenerate_pivots += 1
                self.xb -= move * t_rows
                enter_val = self._bound_of(q) + delta * t_rows
                leave_stat = _AT_LOWER if move[best_row] > 0 else _AT_UPPER
                self._pivot(best_row, q, enter_val, leave_stat)
            else:
                # Bound flip: the entering variable crosses to its other bound.
                self.xb -= move * t_bound
                self.vstat[q] = _AT_UPPER if delta > 0 else _AT_LOWER

    def _dual(self) -> None:
        """Restore primal feasibility while keeping dual feasibility.

        Uses the bound-flipping ratio test: breakpoints whose variable can
        jump to its opposite bound are passed (the variable flips, its
        reduced cost changes sign after the pivot, so dual feasibility
        survives) until the remaining infeasibility fits the entering
        variable.  On box-constrained problems this saves most pivots.
        """
        while True:
            bland = self.degenerate_pivots >= _BLAND_AFTER
            below = self.lo[self.basis] - self.xb
            above = self.xb - self.hi[self.basis]
            viol = np.maximum(below, above)
            if viol.size == 0 or viol.max() <= _FEAS_TOL:
                return
            if bland:
                rows = np.flatnonzero(viol > _FEAS_TOL)
                r = int(rows[np.argmin(self.basis[rows])])
            else:
                r = int(np.argmax(viol))
            is_below = below[r] > above[r]
            target = self.lo[self.basis[r]] if is_below else self.hi[self.basis[r]]
            row = self.T[r]

            if is_below:
                ok_lo = (self.vstat == _AT_LOWER) & (row < -_PIVOT_EPS)
                ok_hi = (self.vstat == _AT_UPPER) & (row > _PIVOT_EPS)
                sgn = 1.0
            else:
                ok_lo = (self.vstat == _AT_LOWER) & (row > _PIVOT_EPS)
                ok_hi = (self.vstat == _AT_UPPER) & (row < -_PIVOT_EPS)
                sgn = -1.0
            eligible = np.flatnonzero(ok_lo | ok_hi)
            if eligible.size == 0:
                raise InfeasibleError("a constraint row admits no feasible value")
            ratios = np.maximum(sgn * self.red[eligible] / row[eligible], 0.0)

            if bland:
                best = ratios.min()
                q = int(eligible[ratios <= best + _DEGEN_TOL][0])
            else:
                q = -1
                residual = float(viol[r])
                flips: list[int] = []
                for k in np.argsort(ratios, kind="stable"):
                    j = int(eligible[k])
                    cap = self.hi[j] - self.lo[j]
                    absorb = abs(row[j]) * cap
                    if not math.isfinite(cap) or absorb >= residual:
                        q = j
                        break
                    flips.append(j)
                    residual -= absorb
                if q < 0:
                    raise InfeasibleError(
                        "a constraint row admits no feasible value"
                    )
                if flips:
                    fl = np.asarray(flips, dtype=np.int64)
                    dx = np.where(
                        self.vstat[fl] == _AT_LOWER,
                        self.hi[fl] - self.lo[fl],
                        self.lo[fl] - self.hi[fl],
                    )
                    self.xb -= self.T[:, fl] @ dx
                    self.vstat[fl] ^= 1
            if abs(self.red[q]) <= _RED_TOL:
                self.degenerate_pivots += 1
            s = (self.xb[r] - target) / row[q]
            self.xb -= s * self.T[:, q]
            enter_val = self._bound_of(q) + s
            leave_stat = _AT_LOWER if is_below else _AT_UPPER
            self._pivot(r, q, enter_val, leave_stat)

    def _sync_red(self) -> None:
        """Recompute reduced costs from the tableau (caps pivot drift)."""
        if self.T.size:
            self.red = self.c - self.T.T @ self.c[self.basis]
        else:
            self.red = self.c.copy()

    def optimize(self) -> None:
        """Dual restoration then primal cleanup; raises on infeasible/unbounded."""
        if self.pivots:
            self._sync_red()
        self._dual()
        self._primal()
        for j in self._boxed:
            if self.values()[j] >= self.hi[j] - 1e-6:
                raise UnboundedError("objective unbounded above")


def solve_lp(problem: LpProblem) -> LpSolution:
    """Solve a bounded LP from scratch; returns an optimal basic solution."""
    lp = IncrementalLp(problem.objective, problem.lower, problem.upper)
    lp.append_rows(problem.rows)
    lp.optimize()
    return LpSolution(x=lp.solution(), objective=lp.objective_value(), pivots=lp.pivots)
