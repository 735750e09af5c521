"""
Exact linear algebra over the scalar fields of the package.

Matrices travel as lists of rows. Field entries (Fraction, sympy's ℚ(q) or
CycNumber) are moved onto the matching sympy domain and reduced there with
``DomainMatrix``; results come back in the caller's entry type.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, Tuple

from sympy import QQ
from sympy import Matrix as SymMatrix
from sympy.polys.fields import FracElement
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from src.scalars import CycNumber, cyclotomic_field

logger = logging.getLogger(__name__)

Matrix = List[List[Any]]


@dataclass(frozen=True)
class EntryDomain:
    """How one kind of matrix entry maps onto a sympy domain.

    Attributes:
        domain: The sympy field the reduction runs in.
        lift (Callable): Caller entry to domain element.
        lower (Callable): Domain element back to the caller's entry type.
    """
    domain: Any
    lift: Callable[[Any], Any]
    lower: Callable[[Any], Any]


def _to_fraction(x: Any) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def entry_domain(sample: Any) -> EntryDomain:
    """The domain matching the entry type of ``sample``."""
    if isinstance(sample, CycNumber):
        conductor = sample.conductor

        def lift(x: Any) -> Any:
            return x.value if isinstance(x, CycNumber) else CycNumber.from_int(conductor, x).value

        return EntryDomain(cyclotomic_field(conductor), lift, lambda a: CycNumber(conductor, a))
    if isinstance(sample, FracElement):
        domain = sample.field.to_domain()
        return EntryDomain(domain, domain.convert, lambda a: a)
    return EntryDomain(QQ, lambda x: QQ(int(x.numerator), int(x.denominator)), _to_fraction)


def _domain_of_rows(rows: Sequence[Sequence[Any]]) -> EntryDomain:
    for row in rows:
        for x in row:
            if isinstance(x, (CycNumber, FracElement)):
                return entry_domain(x)
    return entry_domain(Fraction(0))


def _lift(rows: Sequence[Sequence[Any]], ncols: int, entries: EntryDomain) -> DomainMatrix:
    return DomainMatrix([[entries.lift(x) for x in row] for row in rows], (len(rows), ncols), entries.domain)


def _lower(matrix: DomainMatrix, entries: EntryDomain) -> Matrix:
    return [[entries.lower(a) for a in row] for row in matrix.to_list()]


def rref(rows: Sequence[Sequence[Any]], ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form.

    Args:
        rows: The matrix, row-major. Not modified.
        ncols: Column count, required when rows is empty.

    Returns:
        Tuple[Matrix, List[int]]: The nonzero rows of the reduced form and
        their pivot columns, in increasing column order.
    """
    if not rows:
        return [], []
    ncols = len(rows[0]) if ncols is None else ncols
    entries = _domain_of_rows(rows)
    reduced, pivots = _lift(rows, ncols, entries).rref()
    return _lower(reduced, entries)[:len(pivots)], list(pivots)


def rank(rows: Sequence[Sequence[Any]], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    return _lift(rows, ncols, _domain_of_rows(rows)).rank()


def inverse(rows: Sequence[Sequence[Any]], one: Any) -> Matrix:
    """Inverse of a square matrix.

    Raises:
        ValueError: If the matrix is singular or not square.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError(f"cannot invert a non-square {n}-row matrix")
    if not n:
        return []
    entries = entry_domain(one)
    try:
        inv = _lift(rows, n, entries).inv()
    except (DMNonInvertibleMatrixError, ZeroDivisionError) as e:
        raise ValueError(f"matrix is singular: {e}") from e
    return _lower(inv, entries)


def particular_solution(rows: Sequence[Sequence[Any]], rhs: Sequence[Any], one: Any) -> Optional[List[Any]]:
    """Some x with rows · x = rhs (free variables set to zero), or None if the system is inconsistent."""
    entries = entry_domain(one)
    nvars = len(rows[0]) if rows else 0
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    if not augmented:
        return [entries.lower(entries.domain.zero)] * nvars
    reduced, pivots = _lift(augmented, nvars + 1, entries).rref()
    if nvars in pivots:
        return None
    solution = [entries.domain.zero] * nvars
    for row, p in zip(reduced.to_list(), pivots):
        solution[p] = row[nvars]
    return [entries.lower(a) for a in solution]


def solve_left(basis_rows: Sequence[Sequence[Any]], target: Sequence[Any], one: Any) -> Optional[List[Any]]:
    """Coefficients c with Σ c_k basis_rows[k] = target, or None if target is not in the span.

    basis_rows must be linearly independent.
    """
    k = len(basis_rows)
    if not k:
        return None if any(target) else []
    columns = [[basis_rows[r][c] for r in range(k)] for c in range(len(target))]
    return particular_solution(columns, target, one)


def integer_row_basis(vectors: Sequence[Sequence[int]]) -> List[List[int]]:
    """Echelon ℤ-basis of the lattice spanned by integer vectors (Hermite-style).

    Returns:
        List[List[int]]: Rows in echelon form with positive pivots.
    """
    m = [list(v) for v in vectors if any(v)]
    if not m:
        return []
    ncols = len(m[0])
    basis: List[List[int]] = []
    for c in range(ncols):
        active = [r for r in m if r[c]]
        rest = [r for r in m if not r[c]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[c]))
            pivot = active[0]
            reduced = [pivot]
            for r in active[1:]:
                f = r[c] // pivot[c]
                r = [a - f * b for a, b in zip(r, pivot)]
                (reduced if r[c] else rest).append(r)
            active = reduced
        if active:
            pivot = active[0]
            if pivot[c] < 0:
                pivot = [-a for a in pivot]
            basis.append(pivot)
        m = [r for r in rest if any(r)]
    # reduce entries above pivots into [0, pivot)
    for i, row in enumerate(basis):
        c = next(k for k, a in enumerate(row) if a)
        for j in range(i):
            f = basis[j][c] // row[c]
            if f:
                basis[j] = [a - f * b for a, b in zip(basis[j], row)]
    return basis


def integer_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix."""
    if not rows:
        return 1
    return int(SymMatrix(rows).det(method="bareiss"))
