"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import analyze
from .errors import ClusterCodeError, InputError, ValidationError
from .graph import ClusterCode, Graph, cluster_stabilizers, load_graph, to_qasm
from .measurement import MeasurementSpec, conjugate, discard_qubit, measure
from .pauli import GeneratorSet, format_pauli, group_equal, parse_generator_set
from .statevector import MAX_QUBITS, apply_pauli, drop_measured, measure_pauli, prepare_cluster, stabilized_by_all
from .synthesis import synthesize

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    inputs: list[str]
    seed: int = 0
    forced: dict[int, int] = field(default_factory=dict)
    fmt: str = "text"
    max_n: int = MAX_QUBITS
    out: str | None = None
    verbosity: int = 0

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def load_stabilizers(path: str) -> GeneratorSet:
    return parse_generator_set(_read(path))


def _looks_like_paulis(text: str) -> bool:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line.lstrip("+-i").upper()[:1] in ("I", "X", "Y", "Z")
    return False


def load_state_input(path: str) -> tuple[GeneratorSet, Graph | None]:
    """A graph (adjacency JSON or edge list) or a stabilizer file."""
    text = _read(path)
    if _looks_like_paulis(text):
        return parse_generator_set(text), None
    g = load_graph(text)
    return cluster_stabilizers(g), g


def parse_script(text: str) -> list[tuple[int, str]]:
    """Measurement script: ``qubit basis`` pairs, separated by newlines or ';'."""
    steps = []
    for chunk in text.replace(";", "\n").splitlines():
        line = chunk.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not parts[0].isdigit() or parts[1].upper() not in ("X", "Y", "Z"):
            raise ValidationError(f"bad measurement step {line!r}; expected e.g. '2 X'")
        steps.append((int(parts[0]), parts[1].upper()))
    return steps


def _parse_forced(items: list[str]) -> dict[int, int]:
    forced = {}
    for item in items or []:
        try:
            q, s = item.split("=")
            q, s = int(q), int(s)
        except ValueError:
            raise ValidationError(f"--force-outcome expects q=s, got {item!r}") from None
        if s not in (0, 1):
            raise ValidationError(f"forced outcome must be 0 or 1, got {s}")
        forced[q] = s
    return forced


def _fmt_set(ops) -> str:
    return "[" + ",".join(format_pauli(g) for g in ops) + "]"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_cluster_stabs(cfg: RunConfig) -> int:
    g = load_graph(_read(cfg.inputs[0]))
    s = cluster_stabilizers(g)
    if cfg.fmt == "json":
        _emit(cfg, _dump({"n": s.n, "stabilizers": s.to_strings()}))
    else:
        _emit(cfg, "".join(line + "\n" for line in s.to_strings()))
    return EXIT_OK


def cmd_measure(cfg: RunConfig, script_text: str, keep: bool) -> int:
    s, _ = load_state_input(cfg.inputs[0])
    steps = parse_script(script_text)
    rng = cfg.rng()
    lines = [f"Stabilizers:{s}"]
    events = []
    for qubit, basis in steps:
        spec = MeasurementSpec(qubit, basis, cfg.forced.get(qubit))
        before = s.generators
        s, rec = measure(s, spec, rng)
        anti = [before[i] for i in rec.anticommuting]
        comm = [g for i, g in enumerate(before) if i not in rec.anticommuting]
        lines.append(f"Measurement basis: {basis}, Input qubit: {qubit}")
        lines.append(f"Anti-commute Stabilizers:{_fmt_set(anti)}")
        lines.append(f"Commutating Stabilizers {_fmt_set(comm)}")
        if rec.pivot is not None:
            lines.append(f"Multiplication of Anti Commute Stabilizers:{_fmt_set(rec.products)}")
        if rec.deterministic:
            kind = "deterministic"
        else:
            kind = "forced" if spec.forced_outcome is not None else "random"
        lines.append(f"Outcome: s={rec.outcome_s} ({kind})")
        lines.append(f"New set: {s}")
        events.append(
            {
                "qubit": qubit,
                "basis": basis,
                "outcome_s": rec.outcome_s,
                "deterministic": rec.deterministic,
                "anticommuting": [format_pauli(g) for g in anti],
                "products": [format_pauli(g) for g in rec.products],
                "after": s.to_strings(),
            }
        )
    labels = list(range(1, s.n + 1))
    if not keep:
        for qubit in sorted({q for q, _ in steps}, reverse=True):
            s, relabel = discard_qubit(s, qubit)
            labels = [v for v in labels if v != qubit]
    lines.append(f"Final set {s}")
    if not keep and steps:
        lines.append("Qubit labels: " + ",".join(f"{old}->{new}" for new, old in enumerate(labels, 1)))
    if cfg.fmt == "json":
        _emit(cfg, _dump({"steps": events, "final": s.to_strings(), "labels": labels, "n": s.n}))
    else:
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def _synth(cfg: RunConfig, target: GeneratorSet):
    msg = target.n + 1
    return synthesize(target, cfg.forced.get(msg), cfg.rng())


def cmd_synthesize(cfg: RunConfig, circuit: str | None) -> int:
    target = load_stabilizers(cfg.inputs[0])
    result = _synth(cfg, target)
    if circuit:
        Path(circuit).write_text(to_qasm(result.cluster.graph, result.cluster.message_index), encoding="utf-8")
    if cfg.fmt == "json":
        _emit(cfg, _dump(result.to_json()))
    else:
        d = result.to_json()
        lines = [
            f"Target: {_fmt_set(result.target)}",
            "Check adjacency A:",
            *("  " + " ".join(map(str, row)) for row in d["adjacency"]),
            f"Cluster: {result.cluster.graph.n} qubits, message qubit {result.cluster.message_index}",
            "Edges: " + " ".join(f"{i}-{j}" for i, j in result.cluster.graph.edges()),
            f"Measured X on qubit {d['message_index']}: s={result.records[0].outcome_s}",
            f"Achieved: {_fmt_set(result.achieved)}",
            f"Correction: {d['correction']}",
            f"Verified: {'yes' if result.verified else 'no'}",
        ]
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if result.verified else EXIT_FAIL


def cmd_analyze(cfg: RunConfig) -> int:
    report = analyze(load_stabilizers(cfg.inputs[0]))
    _emit(cfg, _dump(report.to_json()) if cfg.fmt == "json" else report.to_text())
    return EXIT_OK


def cmd_export_circuit(cfg: RunConfig, message: int | None) -> int:
    g = load_graph(_read(cfg.inputs[0]))
    _emit(cfg, to_qasm(g, message))
    return EXIT_OK


def verify_code(target: GeneratorSet, rng: np.random.Generator, max_n: int) -> list[tuple[str, bool, str]]:
    """Synthesis for both outcomes, statevector cross-check, analysis."""
    checks = []
    for s in (0, 1):
        result = synthesize(target, s, rng)
        checks.append((f"synthesis s={s}", result.verified, f"correction {format_pauli(result.correction)}"))
        cluster: ClusterCode = result.cluster
        if cluster.graph.n > max_n:
            checks.append((f"statevector s={s}", True, f"skipped: {cluster.graph.n} qubits > --max-n {max_n}"))
            continue
        theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        alpha, beta = np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)
        psi = prepare_cluster(cluster.graph, (cluster.message_index, alpha, beta))
        psi, _, prob = measure_pauli(psi, "X", cluster.message_index, forced=s)
        psi = drop_measured(psi, cluster.message_index, "X", s)
        psi = apply_pauli(psi, result.correction)
        ok = stabilized_by_all(target, psi) and abs(prob - 0.5) < 1e-9
        checks.append((f"statevector s={s}", ok, f"P(s)={prob:.6f}"))
    report = analyze(target)
    p = report.params
    agree = p.d == p.d_bruteforce
    checks.append(("distance agreement", agree, f"columns d={p.d}, exhaustive d={p.d_bruteforce}"))
    return checks


def cmd_verify(cfg: RunConfig) -> int:
    try:
        target = load_stabilizers(cfg.inputs[0])
    except ValidationError as exc:
        _emit(cfg, f"FAIL input: {exc}\n")
        return EXIT_FAIL
    try:
        checks = verify_code(target, cfg.rng(), cfg.max_n)
    except ClusterCodeError as exc:
        checks = [("synthesis", False, str(exc))]
    passed = all(ok for _, ok, _ in checks)
    if cfg.fmt == "json":
        _emit(cfg, _dump({"passed": passed, "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in checks]}))
    else:
        lines = [f"{'PASS' if ok else 'FAIL'} {name}: {detail}" for name, ok, detail in checks]
        lines.append("verified" if passed else "verification failed")
        _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled measurement outcomes")
    common.add_argument("--force-outcome", action="append", default=[], metavar="Q=S",
                        help="force the outcome of the measurement on qubit Q (repeatable)")
    common.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    common.add_argument("--max-n", type=int, default=MAX_QUBITS, help="largest statevector the oracle may build")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="clustercode", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster-stabs", parents=[common], help="print cluster-state stabilizers of a graph")
    p.add_argument("graph", help="adjacency JSON or edge list")

    p = sub.add_parser("measure", parents=[common], help="evolve stabilizers under single-qubit measurements")
    p.add_argument("input", help="graph file or stabilizer file")
    p.add_argument("script", nargs="?", default="", help="steps like '2 X; 3 Z', or a path to a script file")
    p.add_argument("--keep", action="store_true", help="keep measured qubits instead of discarding them")

    p = sub.add_parser("synthesize", parents=[common], help="build the cluster that encodes an [[n,1]] code")
    p.add_argument("stabilizers")
    p.add_argument("--circuit", help="also write the OpenQASM circuit here")

    p = sub.add_parser("analyze", parents=[common], help="distance, Hamming bound and correctability")
    p.add_argument("stabilizers")

    p = sub.add_parser("export-circuit", parents=[common], help="OpenQASM text for a cluster")
    p.add_argument("graph")
    p.add_argument("--message", type=int, help="message qubit to measure in X")

    p = sub.add_parser("verify", parents=[common], help="synthesize, cross-check on statevectors, analyze")
    p.add_argument("stabilizers")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        inputs = [getattr(args, k) for k in ("graph", "input", "stabilizers") if hasattr(args, k)]
        cfg = RunConfig(
            command=args.command,
            inputs=inputs,
            seed=args.seed,
            forced=_parse_forced(args.force_outcome),
            fmt=args.fmt,
            max_n=args.max_n,
            out=args.out,
            verbosity=args.verbose,
        )
        if args.command == "cluster-stabs":
            return cmd_cluster_stabs(cfg)
        if args.command == "measure":
            script = args.script
            if script and Path(script).is_file():
                script = _read(script)
            return cmd_measure(cfg, script, args.keep)
        if args.command == "synthesize":
            return cmd_synthesize(cfg, args.circuit)
        if args.command == "analyze":
            return cmd_analyze(cfg)
        if args.command == "export-circuit":
            return cmd_export_circuit(cfg, args.message)
        return cmd_verify(cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ClusterCodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
