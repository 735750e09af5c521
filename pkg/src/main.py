import argparse
import json
import logging
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence

"""
qcover - quantum covering groups at roots of unity.

Command-line entry point. Every subcommand runs exact verification suites and
writes one report (JSON by default) to stdout or --out.

Usage:
    python3 src/main.py verify-qpi --ell 3 --range 40
    python3 src/main.py smallu --osp 1 --ell 3 --lattice weight --format text
    python3 src/main.py frobenius --osp 2 --ell 3 --pi minus
    python3 src/main.py all
"""

# Ensure project root is in sys.path for direct execution
current_dir = os.path.dirname(os.path.abspath(__file__))
project_root = os.path.dirname(current_dir)
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from pydantic import ValidationError

from src.constants import (
    COMMANDS,
    DEFAULT_N_RANGE,
    EXIT_FAILURE,
    EXIT_INTEGRALITY,
    EXIT_OK,
    EXIT_USAGE,
    HOMOMORPHISM_MAX_DEGREE,
    KOSTANT_MAX_DEGREE,
    LATTICES,
    LOG_FORMAT,
    OUTPUT_FORMATS,
    SUITE_DIAMOND_BINOMIAL,
)
from src.datum import (
    check_frobenius_assumptions,
    datum_from_file,
    derive_diamond,
    ell_i_table,
    even_rank2_datum,
    osp_datum,
    quasi_classical_check,
    validate_super_datum,
)
from src.exceptions import AssumptionViolation, IntegralityViolation
from src.frobenius import (
    chi_weight_check,
    run_frobenius_suites,
    verify_fr_fr_prime_identity,
    verify_fr_homomorphism,
    verify_fr_prime_homomorphism,
    verify_fr_prime_serre,
    verify_kernel_module_dims,
    verify_tensor_decomposition,
)
from src.halfalg import (
    generic_dims,
    kernel_dims,
    specialized_half,
    verify_associativity,
    verify_generic_dims,
    verify_higher_serre,
)
from src.models import AntipodeConfig, IdentityReport, RunConfig, SweepRanges
from src.modifiedu import (
    run_udot_suites,
    verify_fr_coproduct,
    verify_fr_udot_homomorphism,
    verify_udot_associativity,
    verify_udot_relations,
)
from src.output import RunResult, write_result
from src.qpicalc import run_identity_suite, run_qpi_suites
from src.scalars import RootContext, make_root_context
from src.smallu import (
    enumerate_cosets,
    run_smallu_suites,
    small_u_dimension,
    verify_coset_binomial_invariance,
    verify_idempotent_formula,
)

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcover", description="Quantum covering groups at roots of unity")
    parser.add_argument("command", choices=COMMANDS, help="Suite to run")
    parser.add_argument("--ell", type=int, default=3, help="Order parameter l >= 1")
    parser.add_argument("--ell-prime", choices=("default", "ell", "2ell"), default="default",
                        help="Order of epsilon: 2l (default), l (odd l only) or 2l")
    parser.add_argument("--pi", choices=("plus", "minus", "both"), default="both", help="pi-components to run")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--osp", type=int, help="Built-in datum osp(1|2N)")
    source.add_argument("--datum", help="Datum JSON file")
    parser.add_argument("--lattice", choices=LATTICES, default="weight", help="Root datum for --osp")
    parser.add_argument("--max-degree", type=int, default=None, help="Total degree bound for sweeps")
    parser.add_argument("--range", type=int, default=DEFAULT_N_RANGE, help="|n|, t bound for identity suites")
    parser.add_argument("--seed", type=int, default=0, help="Seed for randomized sweeps")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="json", help="Report format")
    parser.add_argument("--out", help="Write the report here instead of stdout")
    parser.add_argument("--antipode", help="Antipode configuration JSON file")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", action="store_true", help="Warnings only")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    values = {
        "command": args.command, "ell": args.ell, "ell_prime": args.ell_prime, "pi": args.pi,
        "osp": args.osp, "datum": args.datum, "lattice": args.lattice, "range": args.range,
        "seed": args.seed, "format": args.format, "out": args.out, "antipode": args.antipode,
    }
    if args.max_degree is not None:
        values["max_degree"] = args.max_degree
    return RunConfig(**values)


def load_antipode(path: Optional[str]) -> Optional[AntipodeConfig]:
    if path is None:
        return None
    with open(path, "r", encoding="utf-8") as handle:
        return AntipodeConfig(**json.load(handle))


def _datum(cfg: RunConfig, validate: bool = True):
    d = datum_from_file(cfg.datum) if cfg.datum is not None else osp_datum(cfg.osp or 1, cfg.lattice)
    if validate:
        report = validate_super_datum(d)
        if not report.valid:
            raise ValueError(f"{d.label} is not a super Cartan datum: {[i.condition for i in report.issues]}")
    return d


def _contexts(cfg: RunConfig) -> List[RootContext]:
    return [make_root_context(cfg.ell, cfg.ell_prime_choice, s) for s in cfg.pi_signs]


# --- Commands ------------------------------------------------------------------------

def cmd_verify_qpi(cfg: RunConfig, result: RunResult) -> None:
    ranges = SweepRanges(n_max=cfg.range, t_max=cfg.range)
    d = _datum(cfg)
    for ctx in _contexts(cfg):
        for report in run_qpi_suites(ctx, ranges):
            result.reports.append(report.to_dict())
        result.reports.append(run_identity_suite(SUITE_DIAMOND_BINOMIAL, ctx, ranges, datum=d).to_dict())


def cmd_datum(cfg: RunConfig, result: RunResult) -> None:
    d = _datum(cfg, validate=False)
    validation = validate_super_datum(d)
    result.reports.append(validation.to_dict())
    if not validation.valid:
        return
    for ctx in _contexts(cfg):
        assumptions = check_frobenius_assumptions(d, ctx)
        dd = derive_diamond(d, ctx)
        result.tables.append({
            "name": f"diamond ({d.label}, pi={ctx.pi_sign})",
            "ell_i": list(ell_i_table(d, ctx.ell)),
            "diamond": [list(r) for r in dd.diamond],
            "index": dd.index,
            "quasi_classical": quasi_classical_check(dd, ctx),
            "assumptions": assumptions.to_dict(),
        })


def cmd_dims(cfg: RunConfig, result: RunResult) -> None:
    d = _datum(cfg)
    max_degree = cfg.max_degree
    result.reports.append(verify_generic_dims(d, max_degree).to_dict())
    for ctx in _contexts(cfg):
        result.tables.append(generic_dims(d, ctx.pi_sign, max_degree).to_dict())
        result.reports.append(verify_higher_serre(d, ctx).to_dict())
        result.reports.append(verify_associativity(specialized_half(d, ctx), max_degree, seed=cfg.seed).to_dict())
        if check_frobenius_assumptions(d, ctx).valid:
            result.tables.append(kernel_dims(d, ctx).to_dict())
        else:
            logger.warning(f"{d.label} fails the Frobenius assumptions at ell={ctx.ell}; kf table skipped")


def cmd_frobenius(cfg: RunConfig, result: RunResult) -> None:
    d = _datum(cfg)
    max_degree = min(cfg.max_degree, HOMOMORPHISM_MAX_DEGREE)
    for ctx in _contexts(cfg):
        for report in run_frobenius_suites(d, ctx, max_degree):
            result.reports.append(report.to_dict())


def cmd_udot(cfg: RunConfig, result: RunResult) -> None:
    d = _datum(cfg)
    for ctx in _contexts(cfg):
        for report in run_udot_suites(d, ctx, seed=cfg.seed):
            result.reports.append(report.to_dict())


def cmd_smallu(cfg: RunConfig, result: RunResult) -> None:
    d = _datum(cfg)
    antipode = load_antipode(cfg.antipode)
    for ctx in _contexts(cfg):
        if cfg.datum is None:
            result.tables.append(small_u_dimension(cfg.osp or 1, ctx, cfg.lattice).to_dict())
        result.tables.append({"name": f"cosets ({d.label}, pi={ctx.pi_sign})",
                              "cosets": [list(c.residues) for c in enumerate_cosets(d, ctx)]})
        for report in run_smallu_suites(d, ctx, antipode):
            result.reports.append(report.to_dict())


def _gated(label: str, result: RunResult, step: Callable[[], None]) -> None:
    """Runs one acceptance step; an excluded (datum, ℓ) pair becomes a skipped note."""
    try:
        step()
    except AssumptionViolation as e:
        note = IdentityReport(label, {})
        note.skipped.append(str(e))
        result.reports.append(note.to_dict())


def cmd_all(cfg: RunConfig, result: RunResult) -> None:
    """The full acceptance sweep with its fixed parameters."""
    signs = cfg.pi_signs
    def add(report: IdentityReport) -> None:
        result.reports.append(report.to_dict())

    osp1, osp2 = osp_datum(1), osp_datum(2)
    even = even_rank2_datum()

    for ell in range(1, 9):
        choices = ("default", "ell") if ell % 2 else ("default",)
        for choice in choices:
            for s in signs:
                for report in run_qpi_suites(make_root_context(ell, choice, s)):
                    add(report)
    for d in (osp1, osp2):
        for ell in range(2, 7):
            for s in signs:
                add(run_identity_suite(SUITE_DIAMOND_BINOMIAL, make_root_context(ell, pi_sign=s), datum=d))
    for d in (osp1, osp2):
        add(verify_generic_dims(d, KOSTANT_MAX_DEGREE))
    for d in (osp2, even):
        for ell in (3, 4, 5):
            for s in signs:
                add(verify_higher_serre(d, make_root_context(ell, pi_sign=s)))
    for d, ells in ((osp2, (3, 5)), (even, (3,))):
        for ell in ells:
            for s in signs:
                _gated("fr-prime-serre", result, lambda: add(verify_fr_prime_serre(d, make_root_context(ell, pi_sign=s))))
    for d in (osp1, osp2):
        for ell in (3, 4, 5):
            for s in signs:
                ctx = make_root_context(ell, pi_sign=s)
                _gated("fr-homomorphisms", result, lambda: [add(f(d, ctx, HOMOMORPHISM_MAX_DEGREE)) for f in (
                    verify_fr_homomorphism, verify_fr_prime_homomorphism, verify_fr_fr_prime_identity)])
    for d in (osp1, osp2):
        for s in signs:
            add(verify_tensor_decomposition(d, make_root_context(3, pi_sign=s), HOMOMORPHISM_MAX_DEGREE))
    for d, ells in ((osp1, range(2, 8)), (osp2, (3, 4))):
        for ell in ells:
            for s in signs:
                _gated("kernel-module-dims", result,
                       lambda: add(verify_kernel_module_dims(d, make_root_context(ell, pi_sign=s))[0]))
    for d in (osp1, osp2):
        for ell in (3, 4, 5):
            for s in signs:
                ctx = make_root_context(ell, pi_sign=s)
                add(verify_udot_relations(d, ctx))
                add(verify_udot_associativity(d, ctx, seed=cfg.seed))
    for ell in (3, 4, 5):
        for s in signs:
            _gated("fr-udot-homomorphism", result,
                   lambda: add(verify_fr_udot_homomorphism(osp1, make_root_context(ell, pi_sign=s))))
    for d in (osp1, osp2):
        for s in signs:
            _gated("fr-coproduct", result, lambda: add(verify_fr_coproduct(d, make_root_context(3, pi_sign=s))))
    for n, ell, lattice in ((1, 3, "weight"), (1, 3, "root"), (1, 5, "weight"), (1, 5, "root"),
                            (2, 3, "weight"), (2, 4, "weight")):
        for s in signs:
            result.tables.append(small_u_dimension(n, make_root_context(ell, pi_sign=s), lattice).to_dict())
    for ell in (3, 4):
        for s in signs:
            ctx = make_root_context(ell, pi_sign=s)
            add(verify_coset_binomial_invariance(osp1, ctx))
            if s == -1:
                for coset in enumerate_cosets(osp1, ctx):
                    add(verify_idempotent_formula(osp1, ctx, coset))
    gate = IdentityReport("assumption-gating", {"datum": osp2.label, "ell": 2})
    for s in signs:
        ctx = make_root_context(2, pi_sign=s)
        rejected = not check_frobenius_assumptions(osp2, ctx).valid
        try:
            chi_weight_check(osp2, ctx, (1, 1))
            refused = False
        except AssumptionViolation:
            refused = True
        gate.record(rejected and refused, pi=s)
    add(gate)


HANDLERS: Dict[str, Callable[[RunConfig, RunResult], None]] = {
    "verify-qpi": cmd_verify_qpi,
    "datum": cmd_datum,
    "dims": cmd_dims,
    "frobenius": cmd_frobenius,
    "udot": cmd_udot,
    "smallu": cmd_smallu,
    "all": cmd_all,
}


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)


def run(argv: Sequence[str]) -> int:
    """Runs one subcommand and returns the exit code.

    0 when every executed check passed, 1 on a failed check, 2 on usage errors
    and rejected data or assumptions, 3 on an integral-form violation.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    _configure_logging(args)

    try:
        cfg = load_config(args)
        result = RunResult(cfg.command, cfg.model_dump())
        HANDLERS[cfg.command](cfg, result)
    except IntegralityViolation as e:
        logger.error(f"Integral form violated: {e}")
        return EXIT_INTEGRALITY
    except AssumptionViolation as e:
        logger.error(f"Assumption check failed: {e}")
        return EXIT_USAGE
    except (ValidationError, ValueError, OSError) as e:
        logger.error(f"Rejected input: {e}")
        return EXIT_USAGE

    write_result(result, cfg.format, cfg.out)
    for report in result.reports:
        if report.get("failures"):
            logger.warning(f"{report['suite']}: {len(report['failures'])} of {report['checked']} checks failed")
    if not result.passed:
        logger.warning(f"{cfg.command}: at least one check failed")
        return EXIT_FAILURE
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
