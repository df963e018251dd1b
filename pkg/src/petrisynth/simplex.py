"""Exact rational linear-constraint feasibility.

Region synthesis reduces to finding nonnegative rational solutions of small
sparse systems of linear constraints.  Floating point is off the table: the
answers feed yes/no separation decisions, so a single rounding error flips a
verdict.  This is a phase-1 simplex over exact rationals with Bland's rule,
which terminates on every input and pivots deterministically.

gmpy2.mpq does the arithmetic (pure-Python Fraction works too, several times
slower); both expose numerator/denominator, which callers use to scale
solutions to integers.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - fallback keeps the package importable
    from fractions import Fraction as Q

_ZERO = Q(0)
_ONE = Q(1)


def feasible_point(num_vars: int, constraints) -> list | None:
    """Find x >= 0 satisfying every constraint, or None if none exists.

    `constraints` is an iterable of (coeffs, relation, rhs) where coeffs is a
    sparse {variable index: integer coefficient} dict, relation is "==" or
    ">=", and rhs is an integer.  Nonnegativity of all `num_vars` variables
    is implicit.  Returns a list of rationals.
    """
    rows: list[dict] = []
    rhs: list = []
    basis: list[int] = []
    next_col = num_vars
    artificial_rows: list[int] = []

    for coeffs, relation, b in constraints:
        row = {}
        for col, value in coeffs.items():
            if not 0 <= col < num_vars:
                raise ValueError(f"variable index {col} out of range")
            if value:
                row[col] = Q(value)
        b = Q(b)
        surplus = None
        if relation == ">=":
            surplus = next_col
            next_col += 1
            row[surplus] = -_ONE
        elif relation != "==":
            raise ValueError(f"unknown relation: {relation!r}")
        if b < 0:
            row = {col: -value for col, value in row.items()}
            b = -b
        # A surplus column that flipped to +1 can start in the basis; every
        # other row gets an artificial so the all-slack point is basic.
        if surplus is not None and row.get(surplus) == 1:
            basic = surplus
        else:
            basic = next_col
            next_col += 1
            row[basic] = _ONE
            artificial_rows.append(len(rows))
        rows.append(row)
        rhs.append(b)
        basis.append(basic)

    # Phase-1 objective: minimize the sum of artificials.  `cost` holds the
    # reduced-cost row, `objective` its current value.
    cost: dict[int, object] = {}
    objective = _ZERO
    for r in artificial_rows:
        for col, value in rows[r].items():
            if col != basis[r]:
                cost[col] = cost.get(col, _ZERO) - value
        objective += rhs[r]
    cost = {col: value for col, value in cost.items() if value}

    while True:
        entering = min((col for col, value in cost.items() if value < 0), default=None)
        if entering is None:
            break
        pivot_row = None
        pivot_key = None
        for r, row in enumerate(rows):
            coeff = row.get(entering)
            if coeff is not None and coeff > 0:
                key = (rhs[r] / coeff, basis[r])  # Bland: min ratio, then min basis column
                if pivot_key is None or key < pivot_key:
                    pivot_key = key
                    pivot_row = r
        if pivot_row is None:
            raise ArithmeticError("phase-1 objective unbounded; input rows are malformed")

        row = rows[pivot_row]
        scale = row[entering]
        if scale != 1:
            row = {col: value / scale for col, value in row.items()}
            rows[pivot_row] = row
            rhs[pivot_row] /= scale
        for r, other in enumerate(rows):
            if r == pivot_row:
                continue
            factor = other.get(entering)
            if not factor:
                continue
            updated = dict(other)
            for col, value in row.items():
                merged = updated.get(col, _ZERO) - factor * value
                if merged:
                    updated[col] = merged
                else:
                    updated.pop(col, None)
            rows[r] = updated
            rhs[r] -= factor * rhs[pivot_row]
        factor = cost.get(entering)
        if factor:
            for col, value in row.items():
                merged = cost.get(col, _ZERO) - factor * value
                if merged:
                    cost[col] = merged
                else:
                    cost.pop(col, None)
            objective += factor * rhs[pivot_row]
        basis[pivot_row] = entering

    if objective != 0:
        return None
    point = [_ZERO] * num_vars
    for r, col in enumerate(basis):
        if col < num_vars:
            point[col] = rhs[r]
    return point
