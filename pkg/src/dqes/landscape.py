"""
Exhaustive cost evaluation over discretized state sets.

A full sweep scores every state of the complete MUB set (n <= 3). A partial
sweep scores every K-qubit MUB state tensored with |0> on the remaining
qubits, over all K-subsets, which scales to larger registers. Records are
produced in a fixed enumeration order (subset lex, then basis, then state),
so reports and their CSV exports are deterministic.
"""

from dataclasses import dataclass

from .mub import MubSet, PartialMubSpec, build_full_mub_set, enumerate_partial_specs, realize_partial_state
from .paulis import Observable, expectation_exact, observable_hash
from .states import StateVector


@dataclass(frozen=True)
class LandscapeRecord:
    """One scored state: its spec, enumeration index, and exact energy."""

    index: int
    spec: PartialMubSpec
    energy: float

    def label(self) -> str:
        return self.spec.label()


@dataclass(frozen=True)
class LandscapeReport:
    """All records of one sweep plus the observable's identity."""

    observable_name: str
    observable_hash: str
    n: int
    k: int
    kind: str  # "full" or "partial"
    records: tuple[LandscapeRecord, ...]

    def min_record(self) -> LandscapeRecord:
        return min(self.records, key=lambda r: r.energy)


@dataclass(frozen=True)
class BasisStats:
    """Energy summary for one group of records."""

    basis_index: int
    subset: tuple[int, ...] | None
    count: int
    min_energy: float
    max_energy: float
    mean_energy: float
    variance: float


def run_full_dqes(obs: Observable, mubs: MubSet | None = None,
                  name: str = "observable") -> LandscapeReport:
    """Score all (2^n + 1) * 2^n states of the complete MUB set."""
    if obs.n > 3:
        raise ValueError(
            f"full sweeps need a complete MUB set (n <= 3), got n={obs.n}; use a partial sweep")
    if mubs is None:
        mubs = build_full_mub_set(obs.n)
    if mubs.n != obs.n:
        raise ValueError(f"MUB set is on {mubs.n} qubits but observable is on {obs.n}")
    subset = tuple(range(1, obs.n + 1))
    records = []
    for basis in range(mubs.n_bases):
        for state in range(2**obs.n):
            spec = PartialMubSpec(n=obs.n, subset=subset, basis_index=basis, state_index=state)
            energy = expectation_exact(obs, mubs.state(basis, state))
            records.append(LandscapeRecord(index=len(records), spec=spec, energy=energy))
    return LandscapeReport(
        observable_name=name,
        observable_hash=observable_hash(obs),
        n=obs.n,
        k=obs.n,
        kind="full",
        records=tuple(records),
    )


def run_partial_dqes(obs: Observable, k: int, name: str = "observable",
                     workers: int = 1) -> LandscapeReport:
    """Score every K-local MUB product state: C(n,K) * (2^K + 1) * 2^K records."""
    specs = enumerate_partial_specs(obs.n, k)
    mubs = build_full_mub_set(k)

    def score(item):
        index, spec = item
        state = realize_partial_state(spec, mubs)
        return LandscapeRecord(index=index, spec=spec, energy=expectation_exact(obs, state))

    items = list(enumerate(specs))
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = tuple(pool.map(score, items, chunksize=64))
    else:
        records = tuple(score(it) for it in items)
    return LandscapeReport(
        observable_name=name,
        observable_hash=observable_hash(obs),
        n=obs.n,
        k=k,
        kind="partial",
        records=records,
    )


def realize_record_state(record: LandscapeRecord, mubs: MubSet | None = None) -> StateVector:
    """Reconstruct the state a record scored."""
    spec = record.spec
    if mubs is None:
        mubs = build_full_mub_set(spec.k)
    return realize_partial_state(spec, mubs)


def basis_statistics(report: LandscapeReport, per_subset: bool = False) -> list[BasisStats]:
    """Min/max/mean/variance of energies grouped by basis (optionally by subset too).

    Variance is the population variance over the group.
    """
    if not report.records:
        raise ValueError("report has no records")
    groups: dict[tuple, list[float]] = {}
    for rec in report.records:
        key = (rec.spec.subset, rec.spec.basis_index) if per_subset else (None, rec.spec.basis_index)
        groups.setdefault(key, []).append(rec.energy)
    stats = []
    for (subset, basis) in sorted(groups, key=lambda g: (g[1], g[0] or ())):
        energies = groups[(subset, basis)]
        count = len(energies)
        mean = sum(energies) / count
        var = sum((e - mean) ** 2 for e in energies) / count
        stats.append(BasisStats(
            basis_index=basis,
            subset=subset,
            count=count,
            min_energy=min(energies),
            max_energy=max(energies),
            mean_energy=mean,
            variance=var,
        ))
    return stats


def rank_initial_states(report: LandscapeReport, k: int) -> list[LandscapeRecord]:
    """The k lowest-energy records, ties broken by enumeration order."""
    if not 1 <= k <= len(report.records):
        raise ValueError(f"k must be in [1, {len(report.records)}], got {k}")
    return sorted(report.records, key=lambda r: r.energy)[:k]


# --- CSV export ----------------------------------------------------------------
#
# Columns: index,subset,basis,state,energy. The subset is dash-joined qubit
# indices; energies carry 12 significant digits. Output is byte-identical
# across reruns, volatile metadata lives in the sidecar manifest.


def landscape_csv_text(report: LandscapeReport) -> str:
    lines = ["index,subset,basis,state,energy"]
    for rec in report.records:
        subset = "-".join(str(q) for q in rec.spec.subset)
        lines.append(f"{rec.index},{subset},{rec.spec.basis_index},{rec.spec.state_index},"
                     f"{rec.energy:.12g}")
    return "\n".join(lines) + "\n"


def export_csv(report: LandscapeReport, path, sidecar_fields: dict | None = None) -> None:
    """Write the records CSV and its <path>.manifest.json sidecar."""
    from .manifest import write_sidecar

    with open(path, "w") as f:
        f.write(landscape_csv_text(report))
    fields = {
        "observable_name": report.observable_name,
        "observable_sha256": report.observable_hash,
        "n": report.n,
        "k": report.k,
        "kind": report.kind,
        "record_count": len(report.records),
    }
    if sidecar_fields:
        fields.update(sidecar_fields)
    write_sidecar(path, fields)
