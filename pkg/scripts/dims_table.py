import argparse
import logging
import os
import sys

"""
Dimension Table Utility.

Writes per-weight dimension tables of f (generic), 𝔨f or ₍R₎V(λ) as CSV,
one row per weight: nu_1, ..., nu_r, dim.

Usage:
    python3 scripts/dims_table.py --osp 2 --kind generic --max-degree 6
    python3 scripts/dims_table.py --osp 1 --kind kf --ell 5 --out kf.csv
    python3 scripts/dims_table.py --osp 2 --kind v-lambda --ell 3 --pi minus
"""

current_dir = os.path.dirname(os.path.abspath(__file__))
project_root = os.path.dirname(current_dir)
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.constants import DEFAULT_MAX_DEGREE, LATTICES, LOG_FORMAT
from src.datum import derive_diamond, osp_datum
from src.halfalg import generic_dims, kernel_dims, v_lambda_dims
from src.models import DimensionTable
from src.output import table_frame
from src.scalars import make_root_context


def build_table(osp: int, lattice: str, kind: str, ell: int, pi_sign: int, max_degree: int) -> DimensionTable:
    """Computes the requested table.

    Args:
        osp (int): N for osp(1|2N).
        lattice (str): "weight" or "root".
        kind (str): "generic", "kf" or "v-lambda".
        ell (int): ℓ, ignored for generic tables.
        pi_sign (int): π-component.
        max_degree (int): Total degree bound for generic tables.
    """
    d = osp_datum(osp, lattice)
    if kind == "generic":
        return generic_dims(d, pi_sign, max_degree)
    ctx = make_root_context(ell, pi_sign=pi_sign)
    if kind == "kf":
        return kernel_dims(d, ctx)
    ell_i = derive_diamond(d, ctx).ell_i
    return v_lambda_dims(d, ctx, [l - 1 for l in ell_i])


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
    parser = argparse.ArgumentParser(description="Write a dimension table as CSV.")
    parser.add_argument("--osp", type=int, default=1, help="N for osp(1|2N)")
    parser.add_argument("--lattice", choices=LATTICES, default="weight")
    parser.add_argument("--kind", choices=("generic", "kf", "v-lambda"), default="generic")
    parser.add_argument("--ell", type=int, default=3)
    parser.add_argument("--pi", choices=("plus", "minus"), default="plus")
    parser.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    parser.add_argument("--out", help="CSV path (stdout when omitted)")
    args = parser.parse_args()

    table = build_table(args.osp, args.lattice, args.kind, args.ell, 1 if args.pi == "plus" else -1, args.max_degree)
    frame = table_frame(table.to_dict())
    if args.out:
        frame.to_csv(args.out, index=False)
        print(f"Wrote {len(frame)} rows (total dimension {table.total}) to {args.out}")
    else:
        print(frame.to_csv(index=False), end="")
