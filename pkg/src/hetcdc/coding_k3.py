"""XOR shuffle planning for K=3 allocations.

Files stored at a single node are broadcast uncoded to both other nodes.
Files stored at exactly two nodes admit pairwise XOR coding: a packet
v_{i,a} xor v_{j,b} sent by a node that stores both a and b serves two
receivers at once.  How far the pairing goes is governed by the triangle
inequality on the three pair-subset sizes; odd counts are handled by
splitting intermediate values into lo/hi halves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .model import FileAllocation, SubsetProfile, derive_profile

WHOLE = "whole"
LO = "lo"
HI = "hi"


class Undecodable(RuntimeError):
    """A shuffle plan leaves some node short of needed values."""

    def __init__(self, missing: dict[int, list[tuple[int, str]]]):
        self.missing = missing
        super().__init__(f"undecodable plan; missing per node: {missing}")


@dataclass(frozen=True)
class Summand:
    """One intermediate value (or half of it) inside a packet."""

    target: int
    file: int
    half: str = WHOLE


@dataclass(frozen=True)
class CodedPacket:
    sender: int
    summands: tuple[Summand, ...]
    decoders: frozenset[int]

    @property
    def size(self) -> Fraction:
        return Fraction(1) if self.summands[0].half == WHOLE else Fraction(1, 2)


@dataclass(frozen=True)
class ShufflePlan:
    packets: tuple[CodedPacket, ...]
    total_load: Fraction = field(default=Fraction(0))

    @staticmethod
    def from_packets(packets: list[CodedPacket]) -> "ShufflePlan":
        return ShufflePlan(tuple(packets), sum((p.size for p in packets), Fraction(0)))


def g(x1: int, x2: int, x3: int) -> Fraction:
    """Pair-subsystem load: max(max_k x_k, (x1+x2+x3)/2).

    Equals the absolute-value closed form
    (|max + sum/2| + |max - sum/2|) / 2 for nonnegative arguments; both
    are evaluated and asserted to agree.
    """
    xs = (Fraction(x1), Fraction(x2), Fraction(x3))
    top = max(xs)
    half_sum = sum(xs) / 2
    direct = max(top, half_sum)
    via_abs = (abs(top + half_sum) + abs(top - half_sum)) / 2
    assert direct == via_abs
    return direct


def achievable_load(alloc: FileAllocation) -> Fraction:
    """Load of the Lemma-1 scheme: 2*(singles) + g(pairs)."""
    return load_from_profile(derive_profile(alloc))


def load_from_profile(profile: SubsetProfile) -> Fraction:
    s1, s2, s3, s12, s13, s23, _ = profile.as_k3_tuple()
    return 2 * Fraction(s1 + s2 + s3) + g(s12, s13, s23)


def _halves(files: list[int]) -> list[tuple[int, str]]:
    out = []
    for f in files:
        out.append((f, LO))
        out.append((f, HI))
    return out


def _xor_packets(sender: int, tgt_a: int, a_units: list[tuple[int, str]],
                 tgt_b: int, b_units: list[tuple[int, str]],
                 decoders: frozenset[int]) -> list[CodedPacket]:
    """Pair half-units of two sides elementwise, re-merging aligned halves.

    Both unit lists are flat (file, lo/hi) sequences of equal length.
    Consecutive entries (f, lo), (f, hi) on both sides collapse back into
    one whole-value packet.
    """
    assert len(a_units) == len(b_units)
    packets: list[CodedPacket] = []
    i = 0
    while i < len(a_units):
        af, ah = a_units[i]
        bf, bh = b_units[i]
        mergeable = (
            i + 1 < len(a_units)
            and ah == LO and bh == LO
            and a_units[i + 1] == (af, HI) and b_units[i + 1] == (bf, HI)
        )
        if mergeable:
            packets.append(CodedPacket(sender, (Summand(tgt_a, af), Summand(tgt_b, bf)), decoders))
            i += 2
        else:
            packets.append(CodedPacket(
                sender, (Summand(tgt_a, af, ah), Summand(tgt_b, bf, bh)), decoders))
            i += 1
    return packets


def plan_shuffle(alloc: FileAllocation) -> ShufflePlan:
    """Build the full shuffle plan for an arbitrary K=3 allocation."""
    if alloc.config.K != 3:
        raise ValueError("plan_shuffle handles K=3 only")
    nodes = (1, 2, 3)
    owners: dict[int, frozenset[int]] = {}
    for n in range(1, alloc.config.N + 1):
        owners[n] = frozenset(k for k in nodes if n in alloc.sets[k - 1])

    packets: list[CodedPacket] = []

    # Singly stored files: two raw broadcasts each, ordered by (target, file).
    uncoded: list[tuple[int, int, int]] = []  # (target, file, sender)
    for n, who in owners.items():
        if len(who) == 1:
            (k,) = who
            for j in nodes:
                if j != k:
                    uncoded.append((j, n, k))
    for target, n, sender in sorted(uncoded):
        packets.append(CodedPacket(sender, (Summand(target, n),), frozenset({target})))

    # Pair subsets, relabeled so that sizes are ascending (stable on key).
    pair_keys = [frozenset(p) for p in combinations(nodes, 2)]
    pair_files = {key: sorted(n for n, who in owners.items() if who == key) for key in pair_keys}
    a_key, b_key, c_key = sorted(pair_keys, key=lambda k: (len(pair_files[k]), sorted(k)))
    A, B, C = pair_files[a_key], pair_files[b_key], pair_files[c_key]
    # Node roles: r1 stores A and B, r2 stores A and C, r3 stores B and C.
    (r1,) = a_key & b_key
    (r2,) = a_key & c_key
    (r3,) = b_key & c_key

    if len(A) + len(B) >= len(C):
        packets += _plan_pairs_triangle(A, B, C, r1, r2, r3)
    else:
        packets += _plan_pairs_dominated(A, B, C, r1, r2, r3)

    plan = ShufflePlan.from_packets(packets)
    assert plan.total_load == achievable_load(alloc)
    return plan


def _plan_pairs_triangle(A: list[int], B: list[int], C: list[int],
                         r1: int, r2: int, r3: int) -> list[CodedPacket]:
    """Triangle case: all pair files are served by XOR pairs.

    Three groups pair prefixes/suffixes of the half-unit lists:
    group 1 = A vs C, group 2 = A vs B, group 3 = B vs C, with split
    points solving the group-size equations L1 = a - b + c,
    L2 = a + b - c, L3 = -a + b + c (in half-units: la = 2*L1/2 etc.).
    """
    a, b, c = len(A), len(B), len(C)
    la = a - b + c   # halves of A (and C) in group 1
    lb = a + b - c   # halves of A (and B) in group 2
    assert la >= 0 and lb >= 0
    hA, hB, hC = _halves(A), _halves(B), _halves(C)

    out: list[CodedPacket] = []
    # Group 1: A-prefix with C-prefix, sent by r2 (stores both A and C).
    out += _xor_packets(r2, r3, hA[:la], r1, hC[:la], frozenset({r1, r3}))
    # Group 2: A-remainder with B-prefix, sent by r1.
    out += _xor_packets(r1, r3, hA[la:], r2, hB[:lb], frozenset({r2, r3}))
    # Group 3: B-remainder with C-remainder, sent by r3.
    out += _xor_packets(r3, r2, hB[lb:], r1, hC[la:], frozenset({r1, r2}))
    return out


def _plan_pairs_dominated(A: list[int], B: list[int], C: list[int],
                          r1: int, r2: int, r3: int) -> list[CodedPacket]:
    """Dominated case (a + b < c): pair A and B one-to-one against C.

    The first a files of C pair with A (sender r2), the next b pair with
    B (sender r3), and the residual c - a - b values for r1 go uncoded
    from r2.
    """
    a, b = len(A), len(B)
    out: list[CodedPacket] = []
    for fa, fc in zip(A, C[:a]):
        out.append(CodedPacket(r2, (Summand(r3, fa), Summand(r1, fc)), frozenset({r1, r3})))
    for fb, fc in zip(B, C[a:a + b]):
        out.append(CodedPacket(r3, (Summand(r2, fb), Summand(r1, fc)), frozenset({r1, r2})))
    for fc in C[a + b:]:
        out.append(CodedPacket(r2, (Summand(r1, fc),), frozenset({r1})))
    return out


@dataclass(frozen=True)
class DecodeReport:
    ok: bool
    missing: dict[int, list[tuple[int, str]]]


def check_decodable(alloc: FileAllocation, plan: ShufflePlan, *,
                    raise_on_failure: bool = True) -> DecodeReport:
    """Peel the plan at every node and verify full recovery.

    A node knows (q, n, half) for every q when it stores n; a packet
    yields a new value once all but one summand are known.  Passes
    iterate until a fixpoint.
    """
    K, N = alloc.config.K, alloc.config.N
    for p in plan.packets:
        sender_files = alloc.sets[p.sender - 1]
        for s in p.summands:
            if s.file not in sender_files:
                raise ValueError(f"sender {p.sender} does not store file {s.file}")

    missing: dict[int, list[tuple[int, str]]] = {}
    for k in range(1, K + 1):
        known: set[tuple[int, int, str]] = set()
        for n in alloc.sets[k - 1]:
            for q in range(1, K + 1):
                for h in (LO, HI):
                    known.add((q, n, h))

        def have(s: Summand) -> bool:
            if s.half == WHOLE:
                return (s.target, s.file, LO) in known and (s.target, s.file, HI) in known
            return (s.target, s.file, s.half) in known

        def learn(s: Summand) -> None:
            if s.half == WHOLE:
                known.add((s.target, s.file, LO))
                known.add((s.target, s.file, HI))
            else:
                known.add((s.target, s.file, s.half))

        progress = True
        while progress:
            progress = False
            for p in plan.packets:
                unknown = [s for s in p.summands if not have(s)]
                if len(unknown) == 1:
                    learn(unknown[0])
                    progress = True

        short = [(n, h) for n in range(1, N + 1) for h in (LO, HI)
                 if (k, n, h) not in known]
        if short:
            missing[k] = short

    report = DecodeReport(ok=not missing, missing=missing)
    if missing and raise_on_failure:
        raise Undecodable(missing)
    return report


def plan_to_json(plan: ShufflePlan) -> dict:
    return {
        "load": {"num": plan.total_load.numerator, "den": plan.total_load.denominator},
        "packets": [
            {"sender": p.sender,
             "xor": [{"target": s.target, "file": s.file, "half": s.half} for s in p.summands]}
            for p in plan.packets
        ],
    }
