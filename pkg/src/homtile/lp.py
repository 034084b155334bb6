"""Exact rational linear programming.

Dense two-phase tableau simplex with integer (fraction-free) pivoting on
the lcm-scaled problem and Bland's rule for both the entering and the
leaving variable, so it terminates on degenerate problems.  Inputs and
outputs are ``fractions.Fraction``.  Every optimal solution is checked for primal
feasibility, dual feasibility and equality of the two objective values
before it is returned.

Dual values are shadow prices: ``dual[i]`` is the rate of change of the
optimal value as ``rhs[i]`` increases.  With that convention
``value == sum(rhs[i] * dual[i])`` for both directions, and for a maximisation
problem a ``<=`` row has ``dual >= 0`` and a ``>=`` row has ``dual <= 0``
(signs are reversed when minimising).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

LE, GE = "<=", ">="
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

Row = Mapping[int, Fraction]


class LpError(ValueError):
    """Malformed problem."""


class LpInvariantError(AssertionError):
    """A returned solution failed its own exact certificate check."""


class LazyIterationLimit(RuntimeError):
    def __init__(self, iterations: int):
        self.iterations = iterations
        super().__init__(f"separation loop did not converge within {iterations} iterations")


@dataclass(frozen=True)
class LpProblem:
    objective: tuple[Fraction, ...]
    rows: tuple[dict[int, Fraction], ...] = ()
    senses: tuple[str, ...] = ()
    rhs: tuple[Fraction, ...] = ()
    maximize: bool = True

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(Fraction(c) for c in self.objective))
        object.__setattr__(self, "rows", tuple(
            {int(j): Fraction(a) for j, a in row.items() if a} for row in self.rows))
        object.__setattr__(self, "rhs", tuple(Fraction(b) for b in self.rhs))
        object.__setattr__(self, "senses", tuple(self.senses))
        nv = len(self.objective)
        if not len(self.rows) == len(self.senses) == len(self.rhs):
            raise LpError("rows, senses and rhs must have equal length")
        for i, (row, sense) in enumerate(zip(self.rows, self.senses)):
            if sense not in (LE, GE):
                raise LpError(f"row {i}: unknown sense {sense!r}")
            if any(not 0 <= j < nv for j in row):
                raise LpError(f"row {i} references a variable outside 0..{nv - 1}")

    @property
    def num_vars(self) -> int:
        return len(self.objective)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def with_row(self, row: Row, sense: str, rhs) -> "LpProblem":
        return LpProblem(self.objective, self.rows + (dict(row),), self.senses + (sense,),
                         self.rhs + (Fraction(rhs),), self.maximize)

    def row_value(self, i: int, x: Sequence[Fraction]) -> Fraction:
        return sum((a * x[j] for j, a in self.rows[i].items()), Fraction(0))

    def objective_value(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * xj for c, xj in zip(self.objective, x)), Fraction(0))


@dataclass
class LpSolution:
    status: str
    value: Fraction | None = None
    primal: list[Fraction] = field(default_factory=list)
    dual: list[Fraction] = field(default_factory=list)
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def verify_solution(p: LpProblem, sol: LpSolution) -> list[str]:
    """Exact certificate check of an optimal solution; returns a list of problems."""
    errs = []
    x, y = sol.primal, sol.dual
    if len(x) != p.num_vars or len(y) != p.num_rows:
        return ["solution has the wrong dimensions"]
    if any(v < 0 for v in x):
        errs.append("negative primal variable")
    for i, (sense, b) in enumerate(zip(p.senses, p.rhs)):
        lhs = p.row_value(i, x)
        if (sense == LE and lhs > b) or (sense == GE and lhs < b):
            errs.append(f"row {i} violated: {lhs} {sense} {b} fails")
    if p.objective_value(x) != sol.value:
        errs.append("objective of primal does not equal reported value")
    # sign of each dual variable, then the dual constraint A^T y (>= or <=) c
    sgn = 1 if p.maximize else -1
    for i, sense in enumerate(p.senses):
        want = sgn if sense == LE else -sgn
        if y[i] * want < 0:
            errs.append(f"dual {i} has the wrong sign")
    colsum = [Fraction(0)] * p.num_vars
    for i, row in enumerate(p.rows):
        if y[i]:
            for j, a in row.items():
                colsum[j] += a * y[i]
    for j, c in enumerate(p.objective):
        if (colsum[j] - c) * sgn < 0:
            errs.append(f"dual constraint for variable {j} violated")
    if sum((b * yi for b, yi in zip(p.rhs, y)), Fraction(0)) != sol.value:
        errs.append("dual objective differs from primal objective")
    return errs


def solve(p: LpProblem) -> LpSolution:
    """Solve exactly; infeasible and unbounded are reported as statuses."""
    sol = _Tableau(p).run()
    if sol.optimal:
        errs = verify_solution(p, sol)
        if errs:
            raise LpInvariantError("; ".join(errs))
    return sol


def _lcm_of_denominators(values) -> int:
    out = 1
    for v in values:
        d = v.denominator
        out = out * d // math.gcd(out, d)
    return out


class _Tableau:
    """Fraction-free tableau: entries are integers over one common denominator.

    The stored matrix equals ``D * B^-1 [A | b]`` with ``D = |det B|`` of the
    integer-scaled problem, so every update ``(a*p - b*c) / D`` divides
    exactly (integer pivoting).  Row ``m`` holds ``D`` times the reduced costs.
    Each input row is scaled by the lcm of its denominators (its slack is
    rescaled with it), and the objective by the lcm of its denominators.
    """

    def __init__(self, p: LpProblem):
        self.p = p
        nv, m = p.num_vars, p.num_rows
        self.nv, self.m = nv, m
        # flip rows with negative rhs so every starting basic value is >= 0
        self.flip = [1 if b >= 0 else -1 for b in p.rhs]
        self.scale = [_lcm_of_denominators(list(row.values()) + [b]) for row, b in zip(p.rows, p.rhs)]
        senses = [s if f == 1 else (GE if s == LE else LE) for s, f in zip(p.senses, self.flip)]
        art_rows = [i for i, s in enumerate(senses) if s == GE]
        self.first_art = nv + m
        ncols = nv + m + len(art_rows)
        self.ncols = ncols
        art_of = {i: self.first_art + k for k, i in enumerate(art_rows)}
        T = []
        self.basis = []
        self.unit_col = []  # column holding e_i in the starting tableau
        for i in range(m):
            mult = self.flip[i] * self.scale[i]
            row = [0] * (ncols + 1)
            for j, a in p.rows[i].items():
                row[j] = int(a * mult)
            row[nv + i] = 1 if senses[i] == LE else -1
            col = art_of[i] if senses[i] == GE else nv + i
            row[col] = 1
            self.basis.append(col)
            self.unit_col.append(col)
            row[ncols] = int(p.rhs[i] * mult)
            T.append(row)
        self.T = T
        self.D = 1
        self.pivots = 0

    def _cost_row(self, cost: list[int]) -> list[int]:
        """D * (reduced costs), with the last entry -D * (objective value)."""
        D = self.D
        z = [D * c for c in cost] + [0]
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                for j, a in enumerate(self.T[i]):
                    if a:
                        z[j] -= cb * a
        return z

    def _pivot(self, r: int, s: int, z: list[int]):
        T, D = self.T, self.D
        prow = T[r]
        piv = prow[s]
        for row in T + [z]:
            if row is prow:
                continue
            f = row[s]
            if f:
                row[:] = [(a * piv - f * b) // D for a, b in zip(row, prow)]
            elif piv != D:
                row[:] = [a * piv // D if a else 0 for a in row]
        if piv < 0:
            for row in T + [z]:
                row[:] = [-a for a in row]
            piv = -piv
        self.D = piv
        self.basis[r] = s
        self.pivots += 1

    def _simplex(self, z: list[int], allowed: int) -> bool:
        """Bland's rule iterations on columns < allowed; False if unbounded."""
        N = self.ncols
        T = self.T
        while True:
            s = next((j for j in range(allowed) if z[j] > 0), None)
            if s is None:
                return True
            best = None
            for i in range(self.m):
                a = T[i][s]
                if a > 0:
                    if best is None:
                        best = i
                        continue
                    # compare ratios T[i][N]/a against T[best][N]/T[best][s]
                    lhs = T[i][N] * T[best][s]
                    rhs = T[best][N] * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                        best = i
            if best is None:
                return False
            self._pivot(best, s, z)

    def run(self) -> LpSolution:
        N, nv = self.ncols, self.nv
        if self.ncols > self.first_art:
            cost1 = [0] * self.first_art + [-1] * (N - self.first_art)
            z1 = self._cost_row(cost1)
            self._simplex(z1, self.first_art)
            if z1[N] != 0:  # artificials cannot all reach zero
                return LpSolution(INFEASIBLE, pivots=self.pivots)
            # drive zero-level artificials out of the basis where possible
            for i in range(self.m):
                if self.basis[i] >= self.first_art:
                    j = next((j for j in range(self.first_art) if self.T[i][j]), None)
                    if j is not None:
                        self._pivot(i, j, z1)
        sgn = 1 if self.p.maximize else -1
        mu = _lcm_of_denominators(self.p.objective)
        cost = [int(c * mu * sgn) for c in self.p.objective] + [0] * (N - nv)
        z = self._cost_row(cost)
        if not self._simplex(z, self.first_art):
            return LpSolution(UNBOUNDED, pivots=self.pivots)
        D = self.D
        x = [Fraction(0)] * nv
        for i, b in enumerate(self.basis):
            if b < nv:
                x[b] = Fraction(self.T[i][N], D)
        y = [Fraction(-z[self.unit_col[i]] * self.flip[i] * self.scale[i] * sgn, D * mu)
             for i in range(self.m)]
        return LpSolution(OPTIMAL, self.p.objective_value(x), x, y, self.pivots)


Cut = "tuple[Row, str, Fraction]"
Separation = Callable[[list[Fraction]], "Cut | list[Cut] | None"]


def solve_with_lazy_rows(p: LpProblem, separation: Separation,
                         max_iterations: int = 10_000) -> tuple[LpSolution, LpProblem]:
    """Solve, ask ``separation`` for violated rows, add them, repeat.

    ``separation`` returns None at a feasible point, otherwise one row
    ``(coefficients, sense, rhs)`` or a list of such rows.

    Returns the final solution together with the problem holding every row
    that was added, so duals can be matched to rows.
    """
    for _ in range(max_iterations):
        sol = solve(p)
        if not sol.optimal:
            return sol, p
        cut = separation(sol.primal)
        if cut is None:
            return sol, p
        for row, sense, rhs in ([cut] if isinstance(cut, tuple) else cut):
            p = p.with_row(row, sense, rhs)
    raise LazyIterationLimit(max_iterations)


# --- audit dump ------------------------------------------------------------

def dump_lp(p: LpProblem) -> str:
    """Human-readable exact dump; see README for the format."""
    lines = [
        f"direction {'maximize' if p.maximize else 'minimize'}",
        f"variables {p.num_vars}",
        "objective " + " ".join(str(c) for c in p.objective),
    ]
    for row, sense, b in zip(p.rows, p.senses, p.rhs):
        terms = " ".join(f"{j}:{a}" for j, a in sorted(row.items()))
        lines.append(f"row {sense} {b} | {terms}".rstrip())
    return "\n".join(lines) + "\n"


def load_lp(text: str) -> LpProblem:
    maximize, nv, obj = True, 0, []
    rows, senses, rhs = [], [], []
    for line in text.splitlines():
        if not line.strip():
            continue
        head, _, rest = line.partition(" ")
        if head == "direction":
            maximize = rest.strip() == "maximize"
        elif head == "variables":
            nv = int(rest)
        elif head == "objective":
            obj = [Fraction(t) for t in rest.split()]
        elif head == "row":
            left, _, terms = rest.partition("|")
            sense, b = left.split()
            rows.append({int(j): Fraction(a) for j, a in (t.split(":") for t in terms.split())})
            senses.append(sense)
            rhs.append(Fraction(b))
        else:
            raise LpError(f"unrecognised line {line!r}")
    if len(obj) != nv:
        raise LpError("objective length does not match variable count")
    return LpProblem(tuple(obj), tuple(rows), tuple(senses), tuple(rhs), maximize)
