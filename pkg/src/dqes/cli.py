"""
Command-line workbench around the library: certify and export MUB sets, sweep
cost landscapes to CSV/SVG, run landscape-initialized VQE, and generate
problem inputs.

Data outputs (CSV, JSON, SVG) are deterministic for a fixed seed; every
output file gets a <file>.manifest.json sidecar carrying argv, seeds, input
hashes, the output hash, and a timestamp. DQES_OUTPUT_DIR sets the directory
used when --out is omitted.

Exit codes: 0 success, 1 runtime or validation failure, 2 usage error.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import problems
from ._version import __version__
from .ansatz import AnsatzSpec, prepare_state
from .landscape import (LandscapeReport, basis_statistics, export_csv, rank_initial_states,
                        run_full_dqes, run_partial_dqes)
from .manifest import RunManifest, file_sha256, write_sidecar
from .mub import MAX_MUB_QUBITS, PartialMubSpec, build_full_mub_set, encode_mub_set, verify_mub_set
from .optimize import OptimizerConfig
from .paulis import Observable, load_observable, observable_hash, save_observable
from .states import bloch_coordinates
from .svg import scatter_svg
from .vqe import (ParameterFitInit, RandomStateInit, ShiftedMubInit, VqeResult, run_vqe)

_FIXTURES = {
    "H2_075": lambda: problems.molecule_fixture("H2_075"),
    "HeH+_100": lambda: problems.molecule_fixture("HeH+_100"),
    "xy1": problems.single_qubit_xy,
    "ising_fig7": lambda: problems.transverse_field_ising(3, *problems.ISING_WEAK_ZZ),
    "ising_fig8": lambda: problems.transverse_field_ising(3, *problems.ISING_STRONG_ZZ),
}


def _resolve_fixture(name: str) -> Observable:
    if name in _FIXTURES:
        return _FIXTURES[name]()
    if name.startswith("LiH"):
        return problems.molecule_fixture(name)  # raises with the file-ingestion hint
    raise ValueError(f"unknown fixture {name!r}; available: {', '.join(sorted(_FIXTURES))}")


def _out_dir() -> Path:
    return Path(os.environ.get("DQES_OUTPUT_DIR", "."))


def _resolve_observable(args) -> tuple[Observable, str, dict]:
    """(observable, display name, input-hash fields) from --fixture or --observable."""
    if args.fixture is not None:
        obs = _resolve_fixture(args.fixture)
        return obs, args.fixture, {}
    obs = load_observable(args.observable)
    name = Path(args.observable).stem
    return obs, name, {str(args.observable): file_sha256(args.observable)}


# --- mub ---------------------------------------------------------------------


def cmd_mub(args) -> int:
    if args.action == "verify":
        mubs = build_full_mub_set(args.n)
        cert = verify_mub_set(mubs, tol=args.tol)
        print(f"n={cert.n}: {cert.n_bases} bases, {cert.n_bases * 2**cert.n} states")
        print(f"max orthonormality deviation: {cert.max_orthonormality_deviation:.3e}")
        print(f"max unbiasedness deviation:   {cert.max_unbiasedness_deviation:.3e}")
        print(f"{'PASS' if cert.passed else 'FAIL'} (tol {cert.tolerance:g})")
        return 0 if cert.passed else 1
    # export
    mubs = build_full_mub_set(args.n)
    out = Path(args.out) if args.out else _out_dir() / f"mub{args.n}.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(encode_mub_set(mubs))
    manifest = RunManifest(argv=tuple(args.argv))
    write_sidecar(out, manifest.as_fields())
    print(f"wrote {out}")
    return 0


# --- landscape -----------------------------------------------------------------


def cmd_landscape(args) -> int:
    obs, name, input_hashes = _resolve_observable(args)
    if args.full:
        report = run_full_dqes(obs, name=name)
    else:
        k = args.k if args.k is not None else min(obs.n, MAX_MUB_QUBITS)
        report = run_partial_dqes(obs, k, name=name, workers=args.workers)
    out = Path(args.out) if args.out else _out_dir() / "landscape.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest(argv=tuple(args.argv), input_hashes=input_hashes)
    export_csv(report, out, sidecar_fields=manifest.as_fields())
    print(f"observable: {name} (n={obs.n}, {len(obs.terms)} terms)")
    print(f"records: {len(report.records)} ({report.kind} sweep, K={report.k})")
    best = report.min_record()
    print(f"min energy: {best.energy:.12g} at {best.label()} (index {best.index})")
    print(f"{'basis':>6} {'count':>6} {'min':>14} {'max':>14} {'mean':>14} {'variance':>12}")
    for st in basis_statistics(report, per_subset=args.per_subset):
        tag = f"{st.basis_index}" if st.subset is None else f"{st.basis_index}@{'-'.join(map(str, st.subset))}"
        print(f"{tag:>6} {st.count:>6} {st.min_energy:>14.8g} {st.max_energy:>14.8g} "
              f"{st.mean_energy:>14.8g} {st.variance:>12.6g}")
    print(f"wrote {out}")
    if args.plot:
        plot = Path(args.plot)
        plot.parent.mkdir(parents=True, exist_ok=True)
        plot.write_text(scatter_svg(report))
        write_sidecar(plot, manifest.as_fields())
        print(f"wrote {plot}")
    return 0


# --- vqe -----------------------------------------------------------------------


def _parse_init_atoms(text: str) -> list[tuple]:
    atoms = []
    for raw in text.split(","):
        atom = raw.strip()
        if atom.startswith("top-"):
            count = _positive_int(atom[4:], atom)
            atoms.append(("top", count))
        elif atom.startswith("random-"):
            count = _positive_int(atom[7:], atom)
            atoms.append(("random", count))
        elif atom.startswith("spec:"):
            body = atom[5:]
            subset = None
            if "@" in body:
                body, subset_text = body.split("@", 1)
                subset = tuple(int(t) for t in subset_text.split("-"))
            parts = body.split(":")
            if len(parts) != 2:
                raise ValueError(f"bad init atom {atom!r}; expected spec:BASIS:STATE[@q1-q2-...]")
            atoms.append(("spec", int(parts[0]), int(parts[1]), subset))
        else:
            raise ValueError(
                f"bad init atom {atom!r}; expected top-K, random-K, or spec:BASIS:STATE[@subset]")
    return atoms


def _positive_int(text: str, atom: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise ValueError(f"bad init atom {atom!r}: {text!r} is not an integer") from None
    if value < 1:
        raise ValueError(f"bad init atom {atom!r}: count must be >= 1")
    return value


def _ranking_report(obs: Observable, name: str, args) -> LandscapeReport:
    if obs.n <= MAX_MUB_QUBITS:
        return run_full_dqes(obs, name=name)
    k = args.k if args.k is not None else MAX_MUB_QUBITS
    return run_partial_dqes(obs, k, name=name, workers=args.workers)


def _build_inits(atoms, obs, name, args) -> list:
    mub_init = ParameterFitInit if args.strategy == "fit" else ShiftedMubInit
    inits = []
    report = None
    for atom in atoms:
        if atom[0] == "top":
            if report is None:
                report = _ranking_report(obs, name, args)
            for rec in rank_initial_states(report, atom[1]):
                inits.append(_make_mub_init(mub_init, rec.spec, args))
        elif atom[0] == "random":
            inits.extend(RandomStateInit(seed=args.seed + i) for i in range(atom[1]))
        else:
            _, basis, state, subset = atom
            if subset is None:
                if obs.n > MAX_MUB_QUBITS:
                    raise ValueError(
                        f"spec:... needs an explicit @subset for n={obs.n} (register above "
                        f"{MAX_MUB_QUBITS} qubits)")
                subset = tuple(range(1, obs.n + 1))
            spec = PartialMubSpec(n=obs.n, subset=subset, basis_index=basis, state_index=state)
            inits.append(_make_mub_init(mub_init, spec, args))
    return inits


def _make_mub_init(kind, spec: PartialMubSpec, args):
    if kind is ParameterFitInit:
        return ParameterFitInit(spec=spec, seed=args.seed)
    return ShiftedMubInit(spec=spec)


def _trace_csv(result: VqeResult) -> str:
    count = len(result.trace.entries[0].params)
    lines = ["eval,energy," + ",".join(f"theta_{i}" for i in range(count))]
    for entry in result.trace.entries:
        params = ",".join(f"{p:.12g}" for p in entry.params)
        lines.append(f"{entry.index},{entry.energy:.12g},{params}")
    return "\n".join(lines) + "\n"


def _bloch_csv(result: VqeResult) -> str:
    # single-qubit runs only: Bloch vector of the state at each evaluation
    lines = ["eval,x,y,z"]
    for entry in result.trace.entries:
        state = prepare_state(result.ansatz, entry.params, result.initial_state)
        x, y, z = bloch_coordinates(state)
        lines.append(f"{entry.index},{x:.12g},{y:.12g},{z:.12g}")
    return "\n".join(lines) + "\n"


def cmd_vqe(args) -> int:
    obs, name, input_hashes = _resolve_observable(args)
    axes = args.axes
    if axes is None:
        # a Y-only single-qubit circuit cannot leave the real plane
        axes = "YZ" if obs.n == 1 else "Y"
    spec = AnsatzSpec(n=obs.n, layers=args.layers,
                      rotation_axes=("Y",) if axes == "Y" else ("Y", "Z"))
    config = OptimizerConfig(rho_init=args.rho_init, tol=args.tol,
                             max_evals=args.max_evals, threshold=args.threshold)
    inits = _build_inits(_parse_init_atoms(args.init), obs, name, args)
    if not inits:
        raise ValueError("no initializations requested")
    out_dir = Path(args.out) if args.out else _out_dir() / "vqe"
    out_dir.mkdir(parents=True, exist_ok=True)
    workers = max(1, args.workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda init: run_vqe(obs, spec, init, config), inits))
    else:
        results = [run_vqe(obs, spec, init, config) for init in inits]
    manifest = RunManifest(argv=tuple(args.argv), seeds={"seed": args.seed},
                           input_hashes=input_hashes)
    runs_doc = []
    for result in results:
        trace_path = out_dir / f"trace_{result.label}.csv"
        trace_path.write_text(_trace_csv(result))
        write_sidecar(trace_path, manifest.as_fields())
        if obs.n == 1:
            bloch_path = out_dir / f"bloch_{result.label}.csv"
            bloch_path.write_text(_bloch_csv(result))
            write_sidecar(bloch_path, manifest.as_fields())
        entry = {
            "label": result.label,
            "init": type(result.init).__name__,
            "initial_energy": result.initial_energy,
            "final_energy": result.final_energy,
            "evaluations": result.trace.evaluations,
            "termination": result.trace.termination,
        }
        if result.used_fallback:
            entry["used_fallback"] = True
        runs_doc.append(entry)
        print(f"{result.label}: initial {result.initial_energy:.8f} -> final "
              f"{result.final_energy:.8f} in {result.trace.evaluations} evals "
              f"({result.trace.termination})")
    summary = {
        "observable": {"name": name, "n": obs.n, "sha256": observable_hash(obs)},
        "ansatz": {"layers": spec.layers, "rotation_axes": list(spec.rotation_axes),
                   "parameter_count": spec.parameter_count},
        "optimizer": {"rho_init": config.rho_init, "tol": config.tol,
                      "max_evals": config.max_evals, "threshold": config.threshold},
        "strategy": args.strategy,
        "runs": runs_doc,
    }
    if obs.n <= 10:
        exact = problems.exact_spectrum(obs)
        summary["exact_ground_energy"] = exact.ground_energy
        for entry in summary["runs"]:
            entry["gap_to_exact"] = entry["final_energy"] - exact.ground_energy
        print(f"exact ground energy: {exact.ground_energy:.8f}")
    summary_path = out_dir / "summary.json"
    summary_path.write_text(json.dumps(summary, indent=2) + "\n")
    write_sidecar(summary_path, manifest.as_fields())
    print(f"wrote {out_dir}")
    return 0


# --- problem -----------------------------------------------------------------


def cmd_problem(args) -> int:
    seeds = {"seed": args.seed} if getattr(args, "seed", None) is not None else {}
    manifest = RunManifest(argv=tuple(args.argv), seeds=seeds)
    if args.kind == "maxcut":
        graph = problems.random_graph(args.nodes, args.edge_prob, args.seed)
        obs = problems.maxcut_hamiltonian(graph)
        prefix = Path(args.out) if args.out else _out_dir() / f"maxcut{args.nodes}"
        prefix.parent.mkdir(parents=True, exist_ok=True)
        graph_path = Path(str(prefix) + ".graph.txt")
        obs_path = Path(str(prefix) + ".json")
        problems.save_graph(graph, graph_path)
        write_sidecar(graph_path, manifest.as_fields())
        save_observable(obs, obs_path)
        write_sidecar(obs_path, manifest.as_fields())
        print(f"graph: {graph.node_count} nodes, {len(graph.edges)} edges "
              f"(seed {args.seed}, edge prob {args.edge_prob})")
        print(f"wrote {graph_path}")
        print(f"wrote {obs_path}")
        return 0
    if args.kind == "ising":
        obs = problems.transverse_field_ising(args.n, args.czz, args.cx)
        out = Path(args.out) if args.out else _out_dir() / f"ising{args.n}.json"
    else:  # fixture
        obs = _resolve_fixture(args.name)
        out = Path(args.out) if args.out else _out_dir() / f"{args.name}.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    save_observable(obs, out)
    write_sidecar(out, manifest.as_fields())
    print(f"observable: n={obs.n}, {len(obs.terms)} terms")
    print(f"wrote {out}")
    return 0


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dqes",
        description="Exhaustive MUB-state cost sweeps and landscape-initialized VQE.")
    parser.add_argument("--version", action="version", version=f"dqes {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    mub = sub.add_parser("mub", help="certify or export the full MUB sets (n <= 3)")
    mub_sub = mub.add_subparsers(dest="action", required=True)
    verify = mub_sub.add_parser("verify", help="check orthonormality and unbiasedness")
    verify.add_argument("n", type=int, choices=(1, 2, 3))
    verify.add_argument("--tol", type=float, default=1e-10)
    export = mub_sub.add_parser("export", help="write the bases as JSON amplitude pairs")
    export.add_argument("n", type=int, choices=(1, 2, 3))
    export.add_argument("--out", default=None)
    mub.set_defaults(func=cmd_mub)

    landscape = sub.add_parser("landscape", help="sweep every discretized state, write CSV")
    _add_observable_args(landscape)
    mode = landscape.add_mutually_exclusive_group(required=True)
    mode.add_argument("--full", action="store_true", help="complete MUB sweep (n <= 3)")
    mode.add_argument("--k", type=int, choices=(1, 2, 3), default=None,
                      help="partial sweep with K-qubit MUB states")
    landscape.add_argument("--out", default=None, help="records CSV path")
    landscape.add_argument("--plot", default=None, help="also write an SVG scatter here")
    landscape.add_argument("--per-subset", action="store_true",
                           help="basis statistics per qubit subset instead of aggregated")
    landscape.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    landscape.set_defaults(func=cmd_landscape)

    vqe = sub.add_parser("vqe", help="run VQE from landscape-ranked or random starts")
    _add_observable_args(vqe)
    vqe.add_argument("--init", required=True,
                     help="comma list of top-K, random-K, spec:BASIS:STATE[@q1-q2-...]")
    vqe.add_argument("--k", type=int, choices=(1, 2, 3), default=None,
                     help="partial-sweep K used to rank starts when n > 3")
    vqe.add_argument("--layers", type=int, default=1)
    vqe.add_argument("--axes", choices=("Y", "YZ"), default=None,
                     help="rotation axes (default Y; YZ for single-qubit registers)")
    vqe.add_argument("--strategy", choices=("shift", "fit"), default="shift",
                     help="realize MUB starts by state shift or by parameter fit")
    vqe.add_argument("--seed", type=int, default=0)
    vqe.add_argument("--out", default=None, help="output directory")
    vqe.add_argument("--rho-init", type=float, default=0.5)
    vqe.add_argument("--tol", type=float, default=1e-6)
    vqe.add_argument("--max-evals", type=int, default=500)
    vqe.add_argument("--threshold", type=float, default=None)
    vqe.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    vqe.set_defaults(func=cmd_vqe)

    problem = sub.add_parser("problem", help="generate problem inputs")
    problem_sub = problem.add_subparsers(dest="problem_action", required=True)
    gen = problem_sub.add_parser("gen", help="write a graph/observable pair or a fixture")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    maxcut = gen_sub.add_parser("maxcut", help="random graph plus its Max-Cut observable")
    maxcut.add_argument("--nodes", type=int, required=True)
    maxcut.add_argument("--edge-prob", type=float, default=0.5)
    maxcut.add_argument("--seed", type=int, default=0)
    maxcut.add_argument("--out", default=None, help="output path prefix")
    ising = gen_sub.add_parser("ising", help="transverse-field Ising chain observable")
    ising.add_argument("--n", type=int, required=True)
    ising.add_argument("--czz", type=float, required=True)
    ising.add_argument("--cx", type=float, required=True)
    ising.add_argument("--out", default=None)
    fixture = gen_sub.add_parser("fixture", help="write a built-in fixture observable")
    fixture.add_argument("name")
    fixture.add_argument("--out", default=None)
    problem.set_defaults(func=cmd_problem)

    return parser


def _add_observable_args(parser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--fixture", default=None,
                        help=f"built-in observable: {', '.join(sorted(_FIXTURES))}")
    source.add_argument("--observable", default=None, help="observable JSON file")


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = ["dqes", *argv]
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
