"""Command-line surface: states, measurements, dephasing, witnesses, estimation.

One binary with subcommands.  Reports are key-value text on stdout (or JSON
with ``--json``); numeric values are printed at 12 significant digits.  Exit
codes: 0 for ok/detected/certified, 1 for not_detected/rejected, 2 for input
errors (malformed files, failed invariants, dimension mismatches).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import fileio
from .errors import CohwitError, InvalidParameter
from .estimation import group_eigenspaces, hamiltonian_blocks, qfi, sweep
from .linalg import fidelity_pure, require_density, require_state_vector
from .measurements import (
    check_block_incoherent,
    check_povm_incoherent,
    dephase_block,
    dephase_povm,
    ProjectorSet,
    wstate_projector_family,
)
from .states import (
    maximally_mixed,
    noisy_w_state,
    pure_density,
    random_block_incoherent,
    random_density,
    w_state,
)
from .witness import certify_witness, construct_witness, evaluate, violating_state, witness_from_pure

_EXIT_CODES = {"ok": 0, "detected": 0, "certified": 0, "not_detected": 1, "rejected": 1}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


class Report:
    def __init__(self, command: str):
        self.command = command
        self.inputs: dict[str, dict] = {}
        self.outputs: dict = {}
        self.status = "ok"
        self.warnings: list[str] = []

    def add_input(self, label: str, path) -> None:
        self.inputs[label] = {"path": str(path), "digest": fileio.file_digest(path)}

    def set(self, key: str, value) -> None:
        self.outputs[key] = value

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def emit(self, as_json: bool) -> int:
        if as_json:
            print(json.dumps({
                "command": self.command,
                "inputs": self.inputs,
                "outputs": self.outputs,
                "status": self.status,
                "warnings": self.warnings,
            }, indent=2))
        else:
            print(f"command = {self.command}")
            for label, info in self.inputs.items():
                print(f"input.{label} = {info['path']} {info['digest']}")
            for key, value in self.outputs.items():
                print(f"{key} = {_fmt(value)}")
            for message in self.warnings:
                print(f"warning = {message}")
            print(f"status = {self.status}")
        return _EXIT_CODES[self.status]


def _read_state_matrix(report: Report, label: str, path, validate: bool = True) -> np.ndarray:
    """Read a state file; a vector document is promoted to its pure density."""
    report.add_input(label, path)
    kind, arr = fileio.read_array(path)
    if kind == "vector":
        return pure_density(require_state_vector(arr))
    return require_density(arr) if validate else arr


def _read_measurement(report: Report, path, tol: float):
    report.add_input("measurement", path)
    return fileio.read_measurement(path, tol=tol)


def cmd_state_make(args) -> int:
    report = Report("state make")
    report.set("tol", args.tol)
    kind = args.kind
    if kind == "wstate":
        if args.n is None:
            raise InvalidParameter("--n is required for kind 'wstate'")
        vec = w_state(args.n)
        fileio.write_vector(args.out, vec)
        report.set("dim", vec.shape[0])
        report.set("norm", float(np.linalg.norm(vec)))
    elif kind == "noisy_wstate":
        if args.n is None or args.p is None:
            raise InvalidParameter("--n and --p are required for kind 'noisy_wstate'")
        rho = noisy_w_state(args.n, args.p)
        fileio.write_matrix(args.out, rho)
        report.set("dim", rho.shape[0])
        report.set("trace", float(rho.trace().real))
    elif kind == "maximally_mixed":
        if args.dim is None:
            raise InvalidParameter("--dim is required for kind 'maximally_mixed'")
        rho = maximally_mixed(args.dim)
        fileio.write_matrix(args.out, rho)
        report.set("dim", rho.shape[0])
        report.set("trace", float(rho.trace().real))
    elif kind == "random":
        if args.dim is None:
            raise InvalidParameter("--dim is required for kind 'random'")
        rho = random_density(args.dim, args.seed)
        fileio.write_matrix(args.out, rho)
        report.set("dim", rho.shape[0])
        report.set("trace", float(rho.trace().real))
        report.set("seed", args.seed)
    elif kind == "random_block_incoherent":
        if args.measurement is None:
            raise InvalidParameter("--measurement is required for kind 'random_block_incoherent'")
        reference = _read_measurement(report, args.measurement, args.tol)
        if not isinstance(reference, ProjectorSet):
            raise InvalidParameter("kind 'random_block_incoherent' needs a projector measurement")
        rho = random_block_incoherent(reference, args.seed)
        fileio.write_matrix(args.out, rho)
        report.set("dim", rho.shape[0])
        report.set("trace", float(rho.trace().real))
        report.set("seed", args.seed)
    elif kind == "pure":
        if args.amplitudes is None:
            raise InvalidParameter("--amplitudes is required for kind 'pure'")
        report.add_input("amplitudes", args.amplitudes)
        vec = fileio.read_vector(args.amplitudes)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise InvalidParameter("amplitude list has zero norm")
        if abs(norm - 1.0) > 1e-12:
            report.warn(f"amplitudes renormalized from norm {norm:.12g}")
        vec = vec / norm
        fileio.write_vector(args.out, vec)
        report.set("dim", vec.shape[0])
        report.set("norm", float(np.linalg.norm(vec)))
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidParameter(f"unknown kind {kind!r}")
    report.set("out", str(args.out))
    return report.emit(args.json)


def cmd_measure_validate(args) -> int:
    report = Report("measure validate")
    report.set("tol", args.tol)
    mset = _read_measurement(report, args.measurement, args.tol)
    report.set("kind", mset.kind)
    report.set("dim", mset.dim)
    report.set("operators", len(mset))
    if isinstance(mset, ProjectorSet):
        report.set("ranks", ",".join(str(r) for r in mset.ranks))
    return report.emit(args.json)


def cmd_measure_wstate_family(args) -> int:
    report = Report("measure wstate-family")
    report.set("tol", args.tol)
    family = wstate_projector_family(args.n)
    fileio.write_measurement(args.out, family)
    report.set("dim", family.dim)
    report.set("operators", len(family))
    report.set("out", str(args.out))
    return report.emit(args.json)


def cmd_dephase(args) -> int:
    report = Report("dephase")
    report.set("tol", args.tol)
    report.add_input("state", args.state)
    kind, arr = fileio.read_array(args.state)
    if kind == "vector":
        arr = pure_density(require_state_vector(arr))
    reference = _read_measurement(report, args.measurement, args.tol)
    if args.kind == "block":
        if not isinstance(reference, ProjectorSet):
            raise InvalidParameter("block dephasing requires a projector measurement file")
        out = dephase_block(arr, reference)
    else:
        out = dephase_povm(arr, reference)
    fileio.write_matrix(args.out, out)
    trace_in = float(arr.trace().real)
    trace_out = float(out.trace().real)
    report.set("trace_in", trace_in)
    report.set("trace_out", trace_out)
    if abs(trace_in - trace_out) > 1e-12:
        report.warn("POVM dephasing changed the trace; output is not renormalized")
    report.set("out", str(args.out))
    return report.emit(args.json)


def cmd_incoherent_check(args) -> int:
    report = Report("incoherent check")
    report.set("tol", args.tol)
    rho = _read_state_matrix(report, "state", args.state)
    reference = _read_measurement(report, args.measurement, args.tol)
    if args.kind == "block":
        if not isinstance(reference, ProjectorSet):
            raise InvalidParameter("block incoherence check requires a projector measurement file")
        outcome = check_block_incoherent(rho, reference, args.tol)
    else:
        outcome = check_povm_incoherent(rho, reference, args.tol)
    report.set("incoherent", outcome.incoherent)
    report.set("max_cross_norm", outcome.max_cross_norm)
    report.set("residual", outcome.residual)
    return report.emit(args.json)


def _witness_from_args(report: Report, args, reference):
    if getattr(args, "pure", None):
        report.add_input("pure", args.pure)
        target = require_state_vector(fileio.read_vector(args.pure))
        return witness_from_pure(target, reference, tol=args.tol)
    report.add_input("witness", args.witness)
    return certify_witness(fileio.read_matrix(args.witness), reference, tol=args.tol)


def cmd_witness_build(args) -> int:
    report = Report("witness build")
    report.set("tol", args.tol)
    reference = _read_measurement(report, args.measurement, args.tol)
    if args.pure:
        report.add_input("pure", args.pure)
        target = require_state_vector(fileio.read_vector(args.pure))
        witness = witness_from_pure(target, reference, tol=args.tol)
    else:
        report.add_input("operator", args.operator)
        witness = construct_witness(fileio.read_matrix(args.operator), reference, tol=args.tol)
    fileio.write_matrix(args.out, witness.operator)
    report.set("dim", witness.dim)
    report.set("dephased_min_eigenvalue", witness.dephased_min_eigenvalue)
    report.set("certified", witness.certified)
    report.set("out", str(args.out))
    report.status = "certified" if witness.certified else "rejected"
    return report.emit(args.json)


def cmd_witness_certify(args) -> int:
    report = Report("witness certify")
    report.set("tol", args.tol)
    reference = _read_measurement(report, args.measurement, args.tol)
    report.add_input("witness", args.witness)
    operator = fileio.read_matrix(args.witness)
    witness = certify_witness(operator, reference, tol=args.tol)
    report.set("dim", witness.dim)
    report.set("dephased_min_eigenvalue", witness.dephased_min_eigenvalue)
    report.set("certified", witness.certified)
    if not witness.certified and args.violator and isinstance(reference, ProjectorSet):
        violator = violating_state(operator, reference, tol=args.tol)
        if violator is not None:
            fileio.write_matrix(args.violator, violator)
            report.set("violator", str(args.violator))
            report.set("violator_expectation", float(np.einsum("ij,ji->", violator, operator).real))
    report.status = "certified" if witness.certified else "rejected"
    return report.emit(args.json)


def cmd_witness_eval(args) -> int:
    report = Report("witness eval")
    report.set("tol", args.tol)
    reference = _read_measurement(report, args.measurement, args.tol)
    witness = _witness_from_args(report, args, reference)
    rho = _read_state_matrix(report, "state", args.state)
    result = evaluate(witness, rho, detection_tol=args.tol)
    report.set("expectation", result.expectation)
    report.set("detection_value", result.detection_value)
    report.set("detected", result.detected)
    if result.fidelity_dephased is not None:
        report.set("fidelity_dephased", result.fidelity_dephased)
        report.set("fidelity_raw", result.fidelity_raw)
    elif args.target:
        report.add_input("target", args.target)
        target = require_state_vector(fileio.read_vector(args.target))
        if isinstance(reference, ProjectorSet):
            dephased = dephase_block(rho, reference)
        else:
            dephased = dephase_povm(rho, reference)
        report.set("fidelity_dephased", fidelity_pure(dephased, target))
        report.set("fidelity_raw", fidelity_pure(rho, target))
    report.status = "detected" if result.detected else "not_detected"
    return report.emit(args.json)


def cmd_estimate_blocks(args) -> int:
    report = Report("estimate blocks")
    report.set("tol", args.tol)
    report.set("grouping_tol", args.grouping_tol)
    report.add_input("hamiltonian", args.hamiltonian)
    hamiltonian = group_eigenspaces(fileio.read_matrix(args.hamiltonian), tol=args.grouping_tol)
    blocks = hamiltonian_blocks(hamiltonian)
    fileio.write_measurement(args.out, blocks)
    report.set("dim", hamiltonian.dim)
    report.set("levels", len(hamiltonian.levels))
    for index, level in enumerate(hamiltonian.levels):
        report.set(f"level{index}.energy", level.energy)
        report.set(f"level{index}.multiplicity", level.multiplicity)
    report.set("out", str(args.out))
    return report.emit(args.json)


def cmd_estimate_qfi(args) -> int:
    report = Report("estimate qfi")
    report.set("tol", args.tol)
    report.set("grouping_tol", args.grouping_tol)
    report.add_input("hamiltonian", args.hamiltonian)
    hamiltonian = group_eigenspaces(fileio.read_matrix(args.hamiltonian), tol=args.grouping_tol)
    rho = _read_state_matrix(report, "state", args.state)
    result = qfi(rho, hamiltonian)
    report.set("value", result.value)
    report.set("skipped_pairs", result.skipped_pairs)
    return report.emit(args.json)


def cmd_estimate_sweep(args) -> int:
    report = Report("estimate sweep")
    report.set("tol", args.tol)
    report.set("grouping_tol", args.grouping_tol)
    report.add_input("hamiltonian", args.hamiltonian)
    hamiltonian = group_eigenspaces(fileio.read_matrix(args.hamiltonian), tol=args.grouping_tol)
    rho = _read_state_matrix(report, "state", args.state)
    if args.measurement:
        reference = _read_measurement(report, args.measurement, args.tol)
    else:
        reference = hamiltonian_blocks(hamiltonian)
    witness = _witness_from_args(report, args, reference)
    if args.phi_steps < 0:
        raise InvalidParameter(f"--phi-steps must be nonnegative, got {args.phi_steps}")
    grid = np.linspace(args.phi_start, args.phi_end, args.phi_steps, endpoint=False)
    points = sweep(rho, hamiltonian, witness, grid)
    if args.out:
        fileio.write_sweep_csv(args.out, points)
        report.set("rows", len(points))
        if points:
            expectations = [p.expectation for p in points]
            report.set("expectation_min", min(expectations))
            report.set("expectation_max", max(expectations))
        report.set("out", str(args.out))
        return report.emit(args.json)
    sys.stdout.write(fileio.format_sweep_csv(points))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10,
                        help="certification / incoherence tolerance (default 1e-10)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    parser = argparse.ArgumentParser(prog="cohwit", description=__doc__)
    top = parser.add_subparsers(dest="group", required=True)

    state = top.add_parser("state", help="state factory").add_subparsers(dest="verb", required=True)
    make = state.add_parser("make", parents=[common], help="write a state file")
    make.add_argument("--kind", required=True,
                      choices=["pure", "wstate", "noisy_wstate", "maximally_mixed",
                               "random", "random_block_incoherent"])
    make.add_argument("--n", type=int, help="qubit count for W-state kinds")
    make.add_argument("--p", type=float, help="mixing weight for noisy_wstate")
    make.add_argument("--dim", type=int, help="dimension for mixed/random kinds")
    make.add_argument("--seed", type=int, default=0, help="RNG seed for random kinds")
    make.add_argument("--measurement", help="projector file for random_block_incoherent")
    make.add_argument("--amplitudes", help="vector file for kind 'pure'")
    make.add_argument("--out", required=True)
    make.set_defaults(func=cmd_state_make)

    measure = top.add_parser("measure", help="measurement files").add_subparsers(dest="verb", required=True)
    validate = measure.add_parser("validate", parents=[common], help="validate a measurement file")
    validate.add_argument("--measurement", required=True)
    validate.set_defaults(func=cmd_measure_validate)
    family = measure.add_parser("wstate-family", parents=[common],
                                help="write the W-state projector family")
    family.add_argument("--n", type=int, required=True)
    family.add_argument("--out", required=True)
    family.set_defaults(func=cmd_measure_wstate_family)

    dephase = top.add_parser("dephase", parents=[common], help="apply a dephasing map")
    dephase.add_argument("--kind", required=True, choices=["block", "povm"])
    dephase.add_argument("--state", required=True)
    dephase.add_argument("--measurement", required=True)
    dephase.add_argument("--out", required=True)
    dephase.set_defaults(func=cmd_dephase)

    incoherent = top.add_parser("incoherent", help="incoherence checks").add_subparsers(dest="verb", required=True)
    check = incoherent.add_parser("check", parents=[common], help="certify (in)coherence of a state")
    check.add_argument("--kind", required=True, choices=["block", "povm"])
    check.add_argument("--state", required=True)
    check.add_argument("--measurement", required=True)
    check.set_defaults(func=cmd_incoherent_check)

    witness = top.add_parser("witness", help="witness pipeline").add_subparsers(dest="verb", required=True)
    build = witness.add_parser("build", parents=[common], help="build a witness from a seed operator")
    group = build.add_mutually_exclusive_group(required=True)
    group.add_argument("--operator", help="Hermitian seed operator (matrix file)")
    group.add_argument("--pure", help="pure target state (vector file)")
    build.add_argument("--measurement", required=True)
    build.add_argument("--out", required=True)
    build.set_defaults(func=cmd_witness_build)
    certify = witness.add_parser("certify", parents=[common], help="certify a witness candidate")
    certify.add_argument("--witness", required=True)
    certify.add_argument("--measurement", required=True)
    certify.add_argument("--violator", help="where to write a violating state if rejected")
    certify.set_defaults(func=cmd_witness_certify)
    evaluate_p = witness.add_parser("eval", parents=[common], help="evaluate a witness on a state")
    group = evaluate_p.add_mutually_exclusive_group(required=True)
    group.add_argument("--witness", help="witness operator (matrix file)")
    group.add_argument("--pure", help="build the witness from this pure target (vector file)")
    evaluate_p.add_argument("--measurement", required=True)
    evaluate_p.add_argument("--state", required=True)
    evaluate_p.add_argument("--target", help="pure target for the fidelity readout (vector file)")
    evaluate_p.set_defaults(func=cmd_witness_eval)

    estimate = top.add_parser("estimate", help="degenerate-Hamiltonian estimation").add_subparsers(dest="verb", required=True)
    blocks = estimate.add_parser("blocks", parents=[common], help="emit the eigenspace projector family")
    blocks.add_argument("--hamiltonian", required=True)
    blocks.add_argument("--grouping-tol", type=float, default=1e-8)
    blocks.add_argument("--out", required=True)
    blocks.set_defaults(func=cmd_estimate_blocks)
    qfi_p = estimate.add_parser("qfi", parents=[common], help="quantum Fisher information")
    qfi_p.add_argument("--hamiltonian", required=True)
    qfi_p.add_argument("--state", required=True)
    qfi_p.add_argument("--grouping-tol", type=float, default=1e-8)
    qfi_p.set_defaults(func=cmd_estimate_qfi)
    sweep_p = estimate.add_parser("sweep", parents=[common], help="witness expectation along a phi grid")
    sweep_p.add_argument("--hamiltonian", required=True)
    sweep_p.add_argument("--state", required=True)
    group = sweep_p.add_mutually_exclusive_group(required=True)
    group.add_argument("--witness", help="witness operator (matrix file)")
    group.add_argument("--pure", help="build the witness from this pure target (vector file)")
    sweep_p.add_argument("--measurement", help="witness reference; defaults to the eigenspace blocks")
    sweep_p.add_argument("--grouping-tol", type=float, default=1e-8)
    sweep_p.add_argument("--phi-start", type=float, required=True)
    sweep_p.add_argument("--phi-end", type=float, required=True)
    sweep_p.add_argument("--phi-steps", type=int, required=True,
                         help="number of grid points; the end point is excluded")
    sweep_p.add_argument("--out", help="CSV output path (default: CSV to stdout)")
    sweep_p.set_defaults(func=cmd_estimate_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CohwitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
