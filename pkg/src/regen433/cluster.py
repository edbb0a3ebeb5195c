"""Deterministic single-failure storage cluster built on the (4,3,3) codes."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from pathlib import Path

from regen433 import codes
from regen433.codes import CodeId, NodeShare


class ClusterError(RuntimeError):
    pass


class ScenarioError(ClusterError):
    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


@dataclass(frozen=True)
class ObjectEntry:
    object_id: str
    length: int
    first_block: int
    block_count: int

    @property
    def header(self) -> bytes:
        # 64-bit big-endian length header, kept with the catalog entry
        return self.length.to_bytes(8, "big")


@dataclass(frozen=True)
class RepairEvent:
    repair_index: int
    failed_id: int
    helpers: tuple[int, ...]
    block_count: int
    bits_per_helper: int
    step: int

    @property
    def total_bits(self) -> int:
        return self.bits_per_helper * len(self.helpers)


@dataclass(frozen=True)
class Event:
    step: int
    kind: str
    fields: tuple[tuple[str, str], ...] = ()

    def render(self) -> str:
        return "\t".join([str(self.step), self.kind] + [f"{k}={v}" for k, v in self.fields])


class Cluster:
    """Four storage nodes holding block-wise shares of striped objects.

    At most one node may be failed at a time. Repairs are atomic and every
    repair is checked bit-for-bit against the share that was lost.
    """

    def __init__(self, code: CodeId | str):
        self.code = CodeId.parse(code)
        self.params = codes.code_parameters(self.code)
        self.nodes: dict[int, list[NodeShare] | None] = {i: [] for i in codes.NODES}
        self.catalog: dict[str, ObjectEntry] = {}
        self.repairs: list[RepairEvent] = []
        self.events: list[Event] = []
        self._lost: tuple[int, list[NodeShare]] | None = None
        self._log("INIT", code=self.code.name)

    # -- bookkeeping -------------------------------------------------------

    def _log(self, kind: str, **kv) -> Event:
        ev = Event(len(self.events), kind, tuple((k, str(v)) for k, v in kv.items()))
        self.events.append(ev)
        return ev

    @property
    def block_count(self) -> int:
        return sum(o.block_count for o in self.catalog.values())

    @property
    def failed(self) -> int | None:
        for i, blocks in self.nodes.items():
            if blocks is None:
                return i
        return None

    def live_nodes(self) -> list[int]:
        return [i for i in codes.NODES if self.nodes[i] is not None]

    def snapshot(self) -> dict[int, tuple[tuple[int, ...], ...] | None]:
        return {
            i: None if blocks is None else tuple(s.bits for s in blocks)
            for i, blocks in self.nodes.items()
        }

    @property
    def repair_bits(self) -> int:
        return sum(ev.total_bits for ev in self.repairs)

    # -- operations --------------------------------------------------------

    def ingest(self, object_id: str, payload: bytes) -> ObjectEntry:
        if object_id in self.catalog:
            raise ClusterError(f"object {object_id!r} already stored")
        if self.failed is not None:
            raise ClusterError(f"cannot ingest while node {self.failed} is failed")
        length, blocks = codes.stripe(self.code, payload)
        entry = ObjectEntry(object_id, length, self.block_count, len(blocks))
        for m in blocks:
            for share in codes.encode(self.code, m):
                self.nodes[share.node_id].append(share)
        self.catalog[object_id] = entry
        self._log("INGEST", object=object_id, bytes=length, blocks=len(blocks), header=entry.header.hex())
        return entry

    def fail_node(self, node_id: int) -> None:
        if node_id not in codes.NODES:
            raise ClusterError(f"node id {node_id} out of range 1..4")
        if self.nodes[node_id] is None:
            raise ClusterError(f"node {node_id} is already failed")
        if self.failed is not None:
            raise ClusterError(
                f"node {self.failed} is already failed; only single failures are modelled"
            )
        self._lost = (node_id, self.nodes[node_id])
        self.nodes[node_id] = None
        self._log("FAIL", node=node_id)

    def run_repair(self) -> RepairEvent:
        failed = self.failed
        if failed is None:
            raise ClusterError("no failed node to repair")
        helpers = tuple(self.live_nodes())
        rebuilt: list[NodeShare] = []
        bits_per_helper = 0
        for b in range(self.block_count):
            packets = [codes.repair_encode(self.code, self.nodes[h][b], failed) for h in helpers]
            bits_per_helper += self.params.beta
            rebuilt.append(codes.repair_decode(self.code, failed, packets))
        lost_id, lost_blocks = self._lost
        assert lost_id == failed
        if rebuilt != lost_blocks:
            raise ClusterError(f"repair of node {failed} is not exact")
        self.nodes[failed] = rebuilt
        self._lost = None
        ev = RepairEvent(len(self.repairs), failed, helpers, self.block_count, bits_per_helper, len(self.events))
        self.repairs.append(ev)
        self._log(
            "REPAIR",
            node=failed,
            helpers=",".join(map(str, helpers)),
            blocks=ev.block_count,
            bits_per_helper=bits_per_helper,
            total_bits=ev.total_bits,
            exact="yes",
        )
        return ev

    def read(self, object_id: str, via=None) -> bytes:
        if object_id not in self.catalog:
            raise ClusterError(f"unknown object {object_id!r}")
        via = sorted(set(self.live_nodes() if via is None else via))
        for i in via:
            if i not in codes.NODES:
                raise ClusterError(f"node id {i} out of range 1..4")
            if self.nodes[i] is None:
                raise ClusterError(f"node {i} is failed and cannot serve reads")
        if len(via) < self.params.k:
            raise ClusterError(f"reads need {self.params.k} live nodes, got {via}")
        use = via[: self.params.k]
        entry = self.catalog[object_id]
        blocks = []
        for b in range(entry.first_block, entry.first_block + entry.block_count):
            blocks.append(codes.decode(self.code, [self.nodes[i][b] for i in use]))
        return codes.unstripe(entry.length, blocks)


def init_cluster(code: CodeId | str) -> Cluster:
    return Cluster(code)


# ---------------------------------------------------------------------------
# Scenarios


@dataclass
class Scenario:
    code: CodeId
    objects: list[tuple[str, bytes]] = field(default_factory=list)
    failures: list[int] = field(default_factory=list)
    seed: int = 0
    verify_reads: bool = True
    expect_total_bits: int | None = None

    def __post_init__(self):
        for f in self.failures:
            if f not in codes.NODES:
                raise ValueError(f"failure list references node {f}, expected 1..4")


def _parse_objects(text: str, seed: int) -> list[tuple[str, bytes]]:
    objects = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, _, spec = item.partition("=")
        name, spec = name.strip(), spec.strip()
        if not name or not spec:
            raise ValueError(f"bad object entry {item!r}; expected name=size or name=hex:..")
        if spec.startswith("hex:"):
            payload = bytes.fromhex(spec[4:])
        else:
            size = int(spec)
            if size < 0:
                raise ValueError(f"negative object size in {item!r}")
            payload = random.Random(f"{seed}:{name}").randbytes(size)
        objects.append((name, payload))
    return objects


def parse_scenario(text: str) -> Scenario:
    """Parse ``key: value`` lines; lists are comma separated.

    Keys: code, seed, objects (``name=size`` or ``name=hex:<hex>``),
    failures, verify_reads, expect_total_bits.
    """
    kv: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected 'key: value'")
        key = key.strip().lower()
        if key in kv:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        kv[key] = value.strip()
    known = {"code", "seed", "objects", "failures", "verify_reads", "expect_total_bits"}
    unknown = set(kv) - known
    if unknown:
        raise ValueError(f"unknown scenario keys: {sorted(unknown)}")
    if "code" not in kv:
        raise ValueError("scenario is missing 'code'")
    seed = int(kv.get("seed", "0"))
    failures = [int(f) for f in kv.get("failures", "").replace(" ", "").split(",") if f]
    expect = kv.get("expect_total_bits")
    return Scenario(
        code=CodeId.parse(kv["code"]),
        objects=_parse_objects(kv.get("objects", ""), seed),
        failures=failures,
        seed=seed,
        verify_reads=kv.get("verify_reads", "true").lower() in ("1", "true", "yes"),
        expect_total_bits=None if expect is None else int(expect),
    )


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text())


@dataclass
class ScenarioResult:
    cluster: Cluster
    repairs: list[RepairEvent]

    @property
    def total_bits(self) -> int:
        return sum(ev.total_bits for ev in self.repairs)

    def event_log(self) -> str:
        return "".join(ev.render() + "\n" for ev in self.cluster.events)

    def bandwidth_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["repair_index", "failed_node", "bits_per_helper", "total_bits"])
        for ev in self.repairs:
            w.writerow([ev.repair_index, ev.failed_id, ev.bits_per_helper, ev.total_bits])
        return buf.getvalue()


def run_scenario(scenario: Scenario) -> ScenarioResult:
    """Ingest every object, then fail and repair each listed node in turn."""
    cluster = Cluster(scenario.code)
    step = 0
    try:
        for name, payload in scenario.objects:
            step += 1
            cluster.ingest(name, payload)
        for node in scenario.failures:
            step += 1
            before = cluster.snapshot()
            cluster.fail_node(node)
            if scenario.verify_reads:
                for name, payload in scenario.objects:
                    if cluster.read(name) != payload:
                        raise ClusterError(f"degraded read of {name!r} returned wrong bytes")
            step += 1
            cluster.run_repair()
            if cluster.snapshot() != before:
                raise ClusterError(f"cluster state differs after repairing node {node}")
    except (ClusterError, ValueError) as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(step, str(exc)) from exc
    result = ScenarioResult(cluster, list(cluster.repairs))
    cluster._log("SUMMARY", repairs=len(result.repairs), total_bits=result.total_bits)
    if scenario.expect_total_bits is not None and result.total_bits != scenario.expect_total_bits:
        raise ScenarioError(step, f"repair traffic {result.total_bits} != expected {scenario.expect_total_bits}")
    return result
