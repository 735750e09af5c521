import argparse
import os
import sys

"""
Datum Inspection Utility.

Prints a super Cartan datum (from a JSON file or built in), its validation
verdict, the ℓ_i table and the derived datum at a given ℓ.

Usage:
    python3 scripts/inspect_datum.py --osp 2 --ell 3
    python3 scripts/inspect_datum.py --file my_datum.json --ell 5
"""

current_dir = os.path.dirname(os.path.abspath(__file__))
project_root = os.path.dirname(current_dir)
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from rich.console import Console
from rich.table import Table

from src.constants import LATTICES
from src.datum import check_frobenius_assumptions, datum_from_file, derive_diamond, osp_datum, validate_super_datum
from src.scalars import make_root_context


def _matrix_table(title: str, names, rows) -> Table:
    table = Table(title=title)
    table.add_column("")
    for name in names:
        table.add_column(str(name))
    for name, row in zip(names, rows):
        table.add_row(str(name), *(str(x) for x in row))
    return table


def inspect_datum(path: str = None, osp: int = 1, lattice: str = "weight", ell: int = 3) -> None:
    """Prints the datum and everything derived from it at ℓ.

    Args:
        path (str): Optional datum JSON file; the built-in osp(1|2N) otherwise.
        osp (int): N for the built-in datum.
        lattice (str): Lattice of the built-in datum.
        ell (int): ℓ.
    """
    console = Console()
    try:
        d = datum_from_file(path) if path else osp_datum(osp, lattice)
    except ValueError as e:
        console.print(f"Rejected datum: {e}")
        return

    console.print(f"[bold]{d.label}[/bold]  parity={list(d.parity)}  super={d.is_super}  lattice={d.lattice}")
    console.print(_matrix_table("i·j", d.names, d.dot))
    console.print(_matrix_table("<i, j'>", d.names, d.cartan_matrix()))

    report = validate_super_datum(d)
    console.print(f"valid: {report.valid}")
    for issue in report.issues:
        console.print(f"  {issue.condition} at {list(issue.indices)}: {issue.message}")
    if not report.valid:
        return

    ctx = make_root_context(ell)
    dd = derive_diamond(d, ctx)
    console.print(f"ell={ell}: ell_i={list(dd.ell_i)}  [X : X<>]={dd.index}  X<> basis={[list(b) for b in dd.x_basis]}")
    console.print(_matrix_table("i<>j", d.names, dd.diamond))
    assumptions = check_frobenius_assumptions(d, ctx)
    console.print(f"Frobenius assumptions: {'hold' if assumptions.valid else 'fail'}")
    for issue in assumptions.issues:
        console.print(f"  {issue.condition} at {list(issue.indices)}: {issue.message}")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Inspect a super Cartan datum.")
    parser.add_argument("--file", help="Datum JSON file")
    parser.add_argument("--osp", type=int, default=1, help="N for the built-in osp(1|2N)")
    parser.add_argument("--lattice", choices=LATTICES, default="weight")
    parser.add_argument("--ell", type=int, default=3)
    args = parser.parse_args()

    inspect_datum(args.file, args.osp, args.lattice, args.ell)
