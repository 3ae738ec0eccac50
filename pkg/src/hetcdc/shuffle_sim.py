"""End-to-end Map/Shuffle/Reduce execution over synthetic bytes.

Intermediate values are deterministic pseudorandom byte strings derived
from (seed, q, n); packets are materialized as real XORs of those bytes,
and every node peels the broadcast stream to reconstruct its values.
The measured wire traffic, normalized by the value size, must equal the
plan's nominal load.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .coding_k3 import HI, LO, WHOLE, ShufflePlan, Summand
from .model import FileAllocation, SystemConfig


class ReduceFailure(RuntimeError):
    """Some node failed to reconstruct its intermediate values byte-exactly."""

    def __init__(self, mismatches: list[tuple[int, int]]):
        self.mismatches = mismatches
        super().__init__(f"reduce failed at (node, file) pairs: {mismatches}")


@dataclass(frozen=True)
class SimConfig:
    cfg: SystemConfig
    T_bytes: int = 64
    seed: int = 0

    def __post_init__(self):
        if self.T_bytes < 2 or self.T_bytes % 2 != 0:
            raise ValueError("T_bytes must be even and >= 2 so halves are exact")


@dataclass(frozen=True)
class SimReport:
    success: bool
    measured_load: Fraction
    per_node_recovered: tuple[int, ...]
    bytes_on_wire: int


def intermediate_value(sim: SimConfig, q: int, n: int) -> bytes:
    """Deterministic T-byte expansion of (seed, q, n)."""
    out = b""
    counter = 0
    while len(out) < sim.T_bytes:
        h = hashlib.blake2b(
            f"{sim.seed}:{q}:{n}:{counter}".encode(), digest_size=32)
        out += h.digest()
        counter += 1
    return out[:sim.T_bytes]


def run_map(sim: SimConfig, alloc: FileAllocation) -> list[dict[tuple[int, int], bytes]]:
    """Node-local stores: node k holds v_{q,n} for all q and stored n."""
    K = alloc.config.K
    stores = []
    for k in range(1, K + 1):
        store = {}
        for n in alloc.sets[k - 1]:
            for q in range(1, K + 1):
                store[(q, n)] = intermediate_value(sim, q, n)
        stores.append(store)
    return stores


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def _slice(value: bytes, half: str) -> bytes:
    mid = len(value) // 2
    if half == WHOLE:
        return value
    return value[:mid] if half == LO else value[mid:]


def materialize_packets(sim: SimConfig, alloc: FileAllocation,
                        plan: ShufflePlan) -> list[bytes]:
    """Actual byte payloads, one per packet, in plan order."""
    stores = run_map(sim, alloc)
    payloads = []
    for p in plan.packets:
        store = stores[p.sender - 1]
        payload = None
        for s in p.summands:
            part = _slice(store[(s.target, s.file)], s.half)
            payload = part if payload is None else _xor(payload, part)
        payloads.append(payload)
    return payloads


def run_round(sim: SimConfig, alloc: FileAllocation, plan: ShufflePlan, *,
              corrupt_packet: int | None = None,
              packet_order: list[int] | None = None) -> SimReport:
    """Execute one full round and verify byte-exact reduction.

    ``corrupt_packet`` flips a byte of one payload (fault injection);
    ``packet_order`` delivers packets in a custom order to exercise
    order-independence of the broadcast model.
    """
    K, N = alloc.config.K, alloc.config.N
    stores = run_map(sim, alloc)
    payloads = materialize_packets(sim, alloc, plan)
    if corrupt_packet is not None:
        pl = bytearray(payloads[corrupt_packet])
        pl[0] ^= 0xFF
        payloads[corrupt_packet] = bytes(pl)
    bytes_on_wire = sum(len(pl) for pl in payloads)

    order = packet_order if packet_order is not None else list(range(len(plan.packets)))

    mismatches: list[tuple[int, int]] = []
    recovered_counts = []
    for k in range(1, K + 1):
        # Known byte chunks per (q, n, half).
        known: dict[tuple[int, int, str], bytes] = {}
        for (q, n), v in stores[k - 1].items():
            known[(q, n, LO)] = _slice(v, LO)
            known[(q, n, HI)] = _slice(v, HI)

        def halves_of(s: Summand) -> list[tuple[int, int, str]]:
            if s.half == WHOLE:
                return [(s.target, s.file, LO), (s.target, s.file, HI)]
            return [(s.target, s.file, s.half)]

        progress = True
        while progress:
            progress = False
            for i in order:
                p = plan.packets[i]
                parts = [halves_of(s) for s in p.summands]
                unknown = [j for j, hs in enumerate(parts)
                           if any(key not in known for key in hs)]
                if len(unknown) != 1:
                    continue
                j = unknown[0]
                residual = payloads[i]
                for jj, hs in enumerate(parts):
                    if jj != j:
                        residual = _xor(residual, b"".join(known[key] for key in hs))
                keys = parts[j]
                if len(keys) == 2:
                    mid = len(residual) // 2
                    known[keys[0]] = residual[:mid]
                    known[keys[1]] = residual[mid:]
                else:
                    known[keys[0]] = residual
                progress = True

        count = 0
        for n in range(1, N + 1):
            lo = known.get((k, n, LO))
            hi = known.get((k, n, HI))
            if lo is None or hi is None:
                mismatches.append((k, n))
                continue
            if lo + hi == intermediate_value(sim, k, n):
                count += 1
            else:
                mismatches.append((k, n))
        recovered_counts.append(count)

    report = SimReport(
        success=not mismatches,
        measured_load=Fraction(bytes_on_wire, sim.T_bytes),
        per_node_recovered=tuple(recovered_counts),
        bytes_on_wire=bytes_on_wire,
    )
    if mismatches:
        raise ReduceFailure(mismatches)
    return report


def uncoded_plan(alloc: FileAllocation) -> ShufflePlan:
    """Baseline: every needed value broadcast raw by some storing node."""
    from .coding_k3 import CodedPacket

    K, N = alloc.config.K, alloc.config.N
    packets = []
    for k in range(1, K + 1):
        for n in range(1, N + 1):
            if n in alloc.sets[k - 1]:
                continue
            sender = next(j for j in range(1, K + 1) if n in alloc.sets[j - 1])
            packets.append(CodedPacket(sender, (Summand(k, n),), frozenset({k})))
    packets.sort(key=lambda p: (p.summands[0].target, p.summands[0].file))
    return ShufflePlan.from_packets(packets)


def report_to_json(report: SimReport) -> dict:
    return {
        "success": report.success,
        "measured_load": {"num": report.measured_load.numerator,
                          "den": report.measured_load.denominator},
        "per_node_recovered": list(report.per_node_recovered),
        "bytes_on_wire": report.bytes_on_wire,
    }
