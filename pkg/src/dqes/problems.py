"""
Problem Hamiltonians: molecule fixtures, transverse-field Ising chains,
Max-Cut observables on unweighted graphs, and a dense exact eigensolver.

Graph nodes are 0-based and node i sits on qubit i + 1, so an assignment
bitstring reads left to right like a basis-state label.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .paulis import Observable, observable_matrix
from .states import MAX_QUBITS, StateVector

# Two-qubit tapered molecular Hamiltonians at fixed geometry, coefficients in
# Hartree. Keys are <molecule>_<separation in hundredths of an Angstrom>.
_MOLECULES = {
    "H2_075": (2, (
        (-1.05540303, "II"),
        (+0.38874759, "IZ"),
        (-0.38874759, "ZI"),
        (-0.01117714, "ZZ"),
        (+0.18177154, "XX"),
    )),
    "HeH+_100": (2, (
        (-3.04506092, "II"),
        (+0.50258052, "IZ"),
        (+0.11926278, "IX"),
        (-0.50258052, "ZI"),
        (+0.11926278, "XI"),
        (-0.13894646, "ZZ"),
        (-0.11926145, "ZX"),
        (+0.11926145, "XZ"),
        (+0.11714671, "XX"),
    )),
}

# Published coefficient pairs (c_zz, c_x) for the two 3-qubit chain examples.
ISING_WEAK_ZZ = (0.04645122, 0.27498273)
ISING_STRONG_ZZ = (0.61436456, 0.32435029)


def molecule_fixture(name: str) -> Observable:
    """Built-in molecular observable by name (H2_075 or HeH+_100)."""
    if name in _MOLECULES:
        n, terms = _MOLECULES[name]
        return Observable.from_strings(n, terms)
    if name.startswith("LiH"):
        raise ValueError(
            "LiH is not built in; supply its 10-qubit Hamiltonian as an "
            "observable JSON file instead (landscape --observable FILE)")
    known = ", ".join(sorted(_MOLECULES))
    raise ValueError(f"unknown molecule fixture {name!r}; built-in fixtures: {known}")


def single_qubit_xy() -> Observable:
    """X + Y on one qubit; ground energy -sqrt(2)."""
    return Observable.from_strings(1, ((1.0, "X"), (1.0, "Y")))


def transverse_field_ising(n: int, c_zz: float, c_x: float) -> Observable:
    """Open chain: c_zz * sum Z_i Z_{i+1} + c_x * sum X_i."""
    if not 2 <= n <= MAX_QUBITS:
        raise ValueError(f"chain length must be in [2, {MAX_QUBITS}], got {n}")
    terms = []
    for i in range(n - 1):
        terms.append((c_zz, "I" * i + "ZZ" + "I" * (n - i - 2)))
    for i in range(n):
        terms.append((c_x, "I" * i + "X" + "I" * (n - i - 1)))
    return Observable.from_strings(n, terms)


@dataclass(frozen=True)
class GraphSpec:
    """Unweighted simple graph; edges as sorted (u, v) pairs with u < v."""

    node_count: int
    edges: tuple[tuple[int, int], ...]
    seed: int | None = None
    edge_prob: float | None = None

    def __post_init__(self):
        if self.node_count < 2:
            raise ValueError(f"graph needs at least 2 nodes, got {self.node_count}")
        seen = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self loop at node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise ValueError(f"edge ({u}, {v}) is outside nodes 0..{self.node_count - 1}")
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))


def random_graph(node_count: int, edge_prob: float, seed: int) -> GraphSpec:
    """Erdos-Renyi draw: each pair (u, v) in lex order gets an independent coin."""
    if node_count < 2:
        raise ValueError(f"graph needs at least 2 nodes, got {node_count}")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {edge_prob}")
    rng = np.random.default_rng(seed)
    edges = tuple((u, v) for u, v in combinations(range(node_count), 2)
                  if rng.random() < edge_prob)
    return GraphSpec(node_count=node_count, edges=edges, seed=seed, edge_prob=edge_prob)


def cut_value(graph: GraphSpec, assignment: int) -> int:
    """Edges cut by the bipartition encoded as a basis label (node 0 = MSB)."""
    n = graph.node_count
    if not 0 <= assignment < 2**n:
        raise ValueError(f"assignment must be in [0, {2**n}), got {assignment}")
    side = [(assignment >> (n - 1 - i)) & 1 for i in range(n)]
    return sum(1 for u, v in graph.edges if side[u] != side[v])


def max_cut_brute_force(graph: GraphSpec) -> tuple[int, int]:
    """(best cut value, lowest achieving assignment) over all 2^n bipartitions."""
    n = graph.node_count
    labels = np.arange(2**n)
    cuts = np.zeros(2**n, dtype=np.int64)
    for u, v in graph.edges:
        cuts += ((labels >> (n - 1 - u)) & 1) != ((labels >> (n - 1 - v)) & 1)
    best = int(np.argmax(cuts))
    return int(cuts[best]), best


def maxcut_hamiltonian(graph: GraphSpec) -> Observable:
    """sum over edges of Z_u Z_v; on a basis state this equals |E| - 2 * cut."""
    n = graph.node_count
    if n > MAX_QUBITS:
        raise ValueError(
            f"graphs above {MAX_QUBITS} nodes are not supported for exact evaluation, got {n}")
    if not graph.edges:
        raise ValueError("graph has no edges, the Max-Cut observable would be empty")
    terms = []
    for u, v in graph.edges:
        letters = ["I"] * n
        letters[u] = "Z"
        letters[v] = "Z"
        terms.append((1.0, "".join(letters)))
    return Observable.from_strings(n, terms)


@dataclass(frozen=True)
class ExactSpectrumResult:
    """Dense diagonalization output: ascending eigenvalues plus the ground pair."""

    eigenvalues: np.ndarray
    ground_energy: float
    ground_state: StateVector

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=float).copy()
        ev.flags.writeable = False
        object.__setattr__(self, "eigenvalues", ev)


def exact_spectrum(obs: Observable, max_n: int = 10) -> ExactSpectrumResult:
    """Full spectrum via dense Hermitian diagonalization (n <= 10)."""
    if obs.n > max_n:
        raise ValueError(f"exact spectrum is limited to n <= {max_n}, got n={obs.n}")
    matrix = observable_matrix(obs)
    eigenvalues, vectors = np.linalg.eigh(matrix)
    ground = vectors[:, 0]
    residual = float(np.linalg.norm(matrix @ ground - eigenvalues[0] * ground))
    if residual > 1e-8:
        raise RuntimeError(f"eigensolver residual {residual:.3e} exceeds 1e-8")
    return ExactSpectrumResult(
        eigenvalues=eigenvalues,
        ground_energy=float(eigenvalues[0]),
        ground_state=StateVector(obs.n, ground / np.linalg.norm(ground)),
    )


# --- graph file codec --------------------------------------------------------
#
# Text format: optional '#' comment lines, a 'nodes <N>' line, then one
# unweighted edge 'u v' per line (0-based). Generator settings round-trip
# through '# seed <S> edge-prob <P>' so a stored graph can be regenerated.


def encode_graph(graph: GraphSpec) -> str:
    lines = []
    if graph.seed is not None:
        prob = "" if graph.edge_prob is None else f" edge-prob {graph.edge_prob!r}"
        lines.append(f"# seed {graph.seed}{prob}")
    lines.append(f"nodes {graph.node_count}")
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def decode_graph(text: str) -> GraphSpec:
    node_count = None
    edges = []
    seed = None
    edge_prob = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            tokens = line[1:].split()
            if len(tokens) >= 2 and tokens[0] == "seed":
                seed = int(tokens[1])
                if len(tokens) >= 4 and tokens[2] == "edge-prob":
                    edge_prob = float(tokens[3])
            continue
        tokens = line.split()
        if node_count is None:
            if tokens[0] != "nodes" or len(tokens) != 2:
                raise ValueError(f"line {lineno}: expected 'nodes <N>' first, got {line!r}")
            try:
                node_count = int(tokens[1])
            except ValueError:
                raise ValueError(f"line {lineno}: node count must be an integer, got {tokens[1]!r}") from None
            continue
        if len(tokens) == 3:
            raise ValueError(f"line {lineno}: weighted edges are not supported ({line!r})")
        if len(tokens) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ValueError(f"line {lineno}: edge endpoints must be integers, got {line!r}") from None
        edges.append((u, v))
    if node_count is None:
        raise ValueError("missing 'nodes <N>' line")
    return GraphSpec(node_count=node_count, edges=tuple(edges), seed=seed, edge_prob=edge_prob)


def save_graph(graph: GraphSpec, path) -> None:
    with open(path, "w") as f:
        f.write(encode_graph(graph))


def load_graph(path) -> GraphSpec:
    with open(path) as f:
        text = f.read()
    try:
        return decode_graph(text)
    except ValueError as e:
        raise ValueError(f"{path}: {e}") from None
