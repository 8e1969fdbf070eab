"""Command-line front end.

Reads channel-spec files (JSON: {"channels": [spec, spec], "p1": 0.5})
and emits one JSON report per invocation on stdout.  Exit codes:
0 success, 2 input error, 3 unsupported dimension, 4 semantic misuse.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .channels import (
    AffineChannel,
    GpcChannel,
    KrausChannel,
    gpc_channel,
    gpc_to_kraus,
    kraus_to_affine,
    named_channel,
    pauli_channel,
    pauli_to_affine,
)
from .discrim import (
    REGIME_GUESS_PRIOR,
    PriorPair,
    min_error_probability,
    optimal_pauli_axis,
    pauli_closed_form,
    pauli_sacchi_form,
)
from .errors import QdiscrimError, UnsupportedDimension
from .oracle import helstrom_error_at, sampled_min_error, simulate_experiment
from .perfect import (
    NO,
    STRATEGY_ENTANGLED,
    STRATEGY_PRODUCT,
    cross_operators,
    gpc_perfect_entangled,
    numeric_isotropic_search,
    qubit_product_perfect,
    unitary_perfect,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DIMENSION = 3
EXIT_SEMANTIC = 4

_KINDS = ("kraus", "pauli", "gpc", "named", "unitary", "affine")


class CliInputError(Exception):
    """Problem with the channel-spec file; message carries the location."""


def _parse_complex_matrix(raw, where: str) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise CliInputError(f"{where}: malformed complex matrix ({exc})") from None
    if arr.ndim != 3 or arr.shape[-1] != 2 or arr.shape[0] != arr.shape[1]:
        raise CliInputError(
            f"{where}: complex matrices are nested [[re, im], ...] rows of a square matrix")
    return arr[..., 0] + 1j * arr[..., 1]


@dataclass(eq=False)
class ChannelSpec:
    """One parsed channel description from the input file."""

    kind: str
    kraus: KrausChannel | None = None
    gpc: GpcChannel | None = None
    affine: AffineChannel | None = None
    unitary: np.ndarray | None = None

    @property
    def dim(self) -> int:
        if self.kind == "affine":
            return 2
        if self.kind in ("pauli", "gpc"):
            return self.gpc.d
        if self.kind == "unitary":
            return int(self.unitary.shape[0])
        return self.kraus.dim

    def to_kraus(self) -> KrausChannel:
        if self.kind == "affine":
            raise CliInputError("affine channel descriptions carry no Kraus form")
        if self.kind in ("pauli", "gpc"):
            return gpc_to_kraus(self.gpc)
        if self.kind == "unitary":
            return KrausChannel([self.unitary])
        return self.kraus

    def to_affine(self) -> AffineChannel:
        if self.kind == "affine":
            return self.affine
        if self.kind == "pauli":
            return pauli_to_affine(self.gpc)
        if self.dim != 2:
            raise UnsupportedDimension(
                f"affine Bloch form requires dimension 2, got {self.dim}")
        return kraus_to_affine(self.to_kraus())


def _parse_spec(raw, where: str) -> ChannelSpec:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise CliInputError(f"{where}: each channel spec is an object with a 'kind' field")
    kind = raw["kind"]
    if kind not in _KINDS:
        raise CliInputError(f"{where}: unknown kind {kind!r}; expected one of {_KINDS}")
    try:
        if kind == "kraus":
            ops = raw.get("ops")
            if not isinstance(ops, list) or not ops:
                raise CliInputError(f"{where}: kraus spec needs a nonempty 'ops' list")
            return ChannelSpec(kind, kraus=KrausChannel(
                [_parse_complex_matrix(op, where) for op in ops]))
        if kind == "named":
            return ChannelSpec(kind, kraus=named_channel(raw.get("name"), raw.get("param")))
        if kind == "pauli":
            return ChannelSpec(kind, gpc=pauli_channel(raw.get("q")))
        if kind == "gpc":
            return ChannelSpec(kind, gpc=gpc_channel(int(raw.get("d", 0)), raw.get("q")))
        if kind == "unitary":
            return ChannelSpec(kind, unitary=_parse_complex_matrix(raw.get("matrix"), where))
        return ChannelSpec(kind, affine=AffineChannel(raw.get("m"), raw.get("c")))
    except QdiscrimError as exc:
        raise CliInputError(f"{where}: {exc}") from None
    except (TypeError, ValueError) as exc:
        raise CliInputError(f"{where}: {exc}") from None


def _load_file(path: str, expect: int | None = 2) -> tuple[list[ChannelSpec], float | None, str]:
    try:
        with open(path, "rb") as handle:
            blob = handle.read()
    except OSError as exc:
        raise CliInputError(f"{path}: {exc}") from None
    digest = hashlib.sha256(blob).hexdigest()
    try:
        doc = json.loads(blob.decode("utf-8"))
    except json.JSONDecodeError as exc:
        raise CliInputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("channels"), list):
        raise CliInputError(f"{path}: expected an object with a 'channels' list")
    raw_channels = doc["channels"]
    if expect is not None and len(raw_channels) != expect:
        raise CliInputError(f"{path}: expected exactly {expect} channels, got {len(raw_channels)}")
    specs = [_parse_spec(raw, f"{path}: channels[{i}]") for i, raw in enumerate(raw_channels)]
    p1 = doc.get("p1")
    if p1 is not None and not isinstance(p1, (int, float)):
        raise CliInputError(f"{path}: 'p1' must be a number")
    return specs, p1, digest


def _priors(file_p1: float | None, flag_p1: float | None) -> PriorPair:
    p1 = 0.5 if flag_p1 is None and file_p1 is None else (
        flag_p1 if flag_p1 is not None else file_p1)
    return PriorPair.from_p1(p1)


def _complex_vector(psi: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in psi]


def _report(command: str, digest: str, body: dict) -> dict:
    return {"tool": "qdiscrim", "version": __version__, "command": command,
            "input_digest": f"sha256:{digest}", **body}


def _emit(report: dict, pretty: bool) -> None:
    if pretty:
        print(json.dumps(report, indent=2))
    else:
        print(json.dumps(report))


def _affine_payload(aff: AffineChannel) -> dict:
    return {"kind": "affine", "m": [[float(x) for x in row] for row in aff.m],
            "c": [float(x) for x in aff.c]}


def _cmd_pe(args) -> int:
    specs, file_p1, digest = _load_file(args.file)
    priors = _priors(file_p1, args.p1)
    for spec in specs:
        if spec.dim > 2:
            print(f"error: channel dimension {spec.dim} not supported by pe", file=sys.stderr)
            return EXIT_DIMENSION
    affines = [spec.to_affine() for spec in specs]
    result = min_error_probability(affines[0], affines[1], priors)
    _emit(_report("pe", digest, {
        "p1": priors.p1,
        "p2": priors.p2,
        "p_error": result.p_error,
        "regime": result.regime,
        "optimal_bloch": None if result.optimal_bloch is None else
            [float(x) for x in result.optimal_bloch],
        "trace_norm_at_opt": result.trace_norm_at_opt,
        "affine_reps": [_affine_payload(aff) for aff in affines],
    }), args.pretty)
    return EXIT_OK


def _cmd_pe_pauli(args) -> int:
    specs, file_p1, digest = _load_file(args.file)
    if any(spec.kind != "pauli" for spec in specs):
        print("error: pe-pauli requires two pauli-kind channel specs", file=sys.stderr)
        return EXIT_INPUT
    priors = _priors(file_p1, args.p1)
    q1, q2 = specs[0].gpc.q, specs[1].gpc.q
    closed = pauli_closed_form(q1, q2, priors)
    sacchi = pauli_sacchi_form(q1, q2, priors)
    axis = optimal_pauli_axis(q1, q2, priors)
    _emit(_report("pe-pauli", digest, {
        "p1": priors.p1,
        "p2": priors.p2,
        "p_error_closed_form": closed.p_error,
        "p_error_sacchi_form": sacchi,
        "forms_agree": bool(abs(closed.p_error - sacchi) <= 1e-12),
        "regime": closed.regime,
        "optimal_axis": axis,
        "optimal_bloch": None if closed.optimal_bloch is None else
            [float(x) for x in closed.optimal_bloch],
        "trace_norm_at_opt": closed.trace_norm_at_opt,
    }), args.pretty)
    return EXIT_OK


def _residual(specs: list[ChannelSpec], verdict) -> float | None:
    if verdict.certificate is None:
        return None
    ops = cross_operators(specs[0].to_kraus(), specs[1].to_kraus())
    psi = verdict.certificate
    if psi.size == specs[0].dim ** 2:
        eye = np.eye(specs[0].dim)
        ops = [np.kron(op, eye) for op in ops]
    return float(max(abs(psi.conj() @ op @ psi) for op in ops))


def _cmd_perfect(args) -> int:
    specs, _, digest = _load_file(args.file)
    if specs[0].dim != specs[1].dim:
        print(f"error: channel dimensions differ: {specs[0].dim} vs {specs[1].dim}",
              file=sys.stderr)
        return EXIT_INPUT
    entangled = args.strategy == STRATEGY_ENTANGLED
    if not entangled and all(spec.kind == "unitary" for spec in specs):
        verdict = unitary_perfect(specs[0].unitary, specs[1].unitary)
    elif not entangled and specs[0].dim == 2:
        verdict = qubit_product_perfect(specs[0].to_kraus(), specs[1].to_kraus())
    elif entangled and all(spec.kind in ("pauli", "gpc") for spec in specs) \
            and specs[0].kind == specs[1].kind:
        verdict = gpc_perfect_entangled(specs[0].gpc, specs[1].gpc)
    else:
        ops = cross_operators(specs[0].to_kraus(), specs[1].to_kraus())
        verdict = numeric_isotropic_search(ops, entangled, seed=args.seed,
                                           restarts=args.restarts)
    _emit(_report("perfect", digest, {
        "strategy": args.strategy,
        "verdict": verdict.distinguishable,
        "method": verdict.method,
        "certificate": None if verdict.certificate is None else
            _complex_vector(verdict.certificate),
        "residual": _residual(specs, verdict),
    }), args.pretty)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    specs, file_p1, digest = _load_file(args.file)
    priors = _priors(file_p1, args.p1)
    for spec in specs:
        if spec.dim != 2:
            print(f"error: oracle sampling requires qubit channels, got dimension {spec.dim}",
                  file=sys.stderr)
            return EXIT_DIMENSION
    e1, e2 = specs[0].to_kraus(), specs[1].to_kraus()
    estimate = sampled_min_error(e1, e2, priors, args.n, args.entangled, args.seed)
    body = {
        "p1": priors.p1,
        "p2": priors.p2,
        "p_error_estimate": estimate.p_error_estimate,
        "best_input": _complex_vector(estimate.best_input),
        "samples": estimate.samples,
        "entangled": estimate.entangled,
    }
    if not args.entangled:
        analytic = min_error_probability(specs[0].to_affine(), specs[1].to_affine(), priors)
        body["analytic_p_error"] = analytic.p_error
        body["gap"] = estimate.p_error_estimate - analytic.p_error
    _emit(_report("oracle", digest, body), args.pretty)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    specs, file_p1, digest = _load_file(args.file)
    priors = _priors(file_p1, args.p1)
    for spec in specs:
        if spec.dim != 2:
            print(f"error: simulation requires qubit channels, got dimension {spec.dim}",
                  file=sys.stderr)
            return EXIT_DIMENSION
    analytic = min_error_probability(specs[0].to_affine(), specs[1].to_affine(), priors)
    if args.input == "optimal":
        if analytic.regime == REGIME_GUESS_PRIOR:
            print("error: no optimal input exists; the guess-prior regime needs no measurement",
                  file=sys.stderr)
            return EXIT_SEMANTIC
        bloch = analytic.optimal_bloch
    else:
        try:
            bloch = np.array([float(x) for x in args.input.split(",")])
        except ValueError:
            print(f"error: --input must be 'optimal' or 'x,y,z', got {args.input!r}",
                  file=sys.stderr)
            return EXIT_INPUT
        if bloch.shape != (3,) or abs(np.linalg.norm(bloch) - 1.0) > 1e-9:
            print("error: --input Bloch vector must be a unit 3-vector (a pure probe state)",
                  file=sys.stderr)
            return EXIT_INPUT
    theta = float(np.arccos(np.clip(bloch[2], -1.0, 1.0)))
    phi = float(np.arctan2(bloch[1], bloch[0]))
    psi = np.array([np.cos(theta / 2.0), np.sin(theta / 2.0) * np.exp(1j * phi)])

    e1, e2 = specs[0].to_kraus(), specs[1].to_kraus()
    empirical = simulate_experiment(e1, e2, priors, psi, args.trials, args.seed)
    reference = helstrom_error_at(e1, e2, priors, psi)
    sigma = np.sqrt(max(reference * (1.0 - reference), 0.0) / args.trials)
    z_score = 0.0 if sigma == 0.0 and empirical == reference else (
        float("inf") if sigma == 0.0 else (empirical - reference) / sigma)
    _emit(_report("simulate", digest, {
        "p1": priors.p1,
        "p2": priors.p2,
        "input_bloch": [float(x) for x in bloch],
        "empirical_error": empirical,
        "analytic_error": reference,
        "trials": args.trials,
        "z_score": z_score,
    }), args.pretty)
    return EXIT_OK


def _cmd_convert(args) -> int:
    specs, file_p1, digest = _load_file(args.file, expect=None)
    if len(specs) not in (1, 2):
        print(f"error: expected one or two channels, got {len(specs)}", file=sys.stderr)
        return EXIT_INPUT
    for spec in specs:
        if spec.dim > 2:
            print(f"error: affine conversion requires qubit channels, got dimension {spec.dim}",
                  file=sys.stderr)
            return EXIT_DIMENSION
    report = _report("convert", digest, {
        "channels": [_affine_payload(spec.to_affine()) for spec in specs],
    })
    if file_p1 is not None:
        report["p1"] = file_p1
    _emit(report, args.pretty)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdiscrim",
        description="Minimum-error and perfect discrimination of single-qubit quantum operations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, helptext):
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("file", help="channel-spec JSON file")
        cmd.add_argument("--pretty", action="store_true", help="indent the JSON report")
        cmd.set_defaults(func=func)
        return cmd

    pe = add("pe", _cmd_pe, "exact minimum error probability (unentangled strategy)")
    pe.add_argument("--p1", type=float, default=None, help="prior of the first channel")

    pep = add("pe-pauli", _cmd_pe_pauli, "closed forms for two Pauli channels")
    pep.add_argument("--p1", type=float, default=None)

    perf = add("perfect", _cmd_perfect, "decide perfect distinguishability")
    perf.add_argument("--strategy", choices=(STRATEGY_PRODUCT, STRATEGY_ENTANGLED),
                      default=STRATEGY_PRODUCT)
    perf.add_argument("--seed", type=int, default=0)
    perf.add_argument("--restarts", type=int, default=16)

    orc = add("oracle", _cmd_oracle, "sampled brute-force error estimate")
    orc.add_argument("--p1", type=float, default=None)
    orc.add_argument("--n", type=int, default=10000, help="number of Haar samples")
    orc.add_argument("--entangled", action="store_true")
    orc.add_argument("--seed", type=int, default=0)

    sim = add("simulate", _cmd_simulate, "Monte Carlo check of the Helstrom measurement")
    sim.add_argument("--p1", type=float, default=None)
    sim.add_argument("--input", default="optimal", help="'optimal' or a Bloch triple 'x,y,z'")
    sim.add_argument("--trials", type=int, default=100000)
    sim.add_argument("--seed", type=int, default=0)

    add("convert", _cmd_convert, "emit the affine Bloch form (M, c) of each channel")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedDimension as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except QdiscrimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
