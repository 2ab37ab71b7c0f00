"""End-to-end witness extraction with replayable certificates.

Given a graph whose edge count clears (k-1)n - t, extract produces an
induced subgraph of minimum degree >= k on at most (1-eps)n vertices, where
eps = 1/max(10^4 k^2, 100kt).  The pipeline peels, splits off small
components, branches on how many degree-k vertices survive, grows good
sets, buckets them dyadically, and runs the staged colouring; every branch
that can terminate early does so through an escape that already carries a
witness.  The certificate records the branch, the witness, a content hash
of the input and an audit log, and can be re-verified independently.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .colouring import ColouringState, assemble_step, init_state
from .errors import (
    InsufficientEdges,
    InternalInvariantBreach,
    InvalidConfig,
    NoJPrime,
    PreconditionViolated,
)
from .goodsets import EmptyCore, GoodFamily, GoodSetEscape, grow_good_sets, remove_and_peel
from .graph import Graph, content_hash
from .peeler import peel_to_core
from .strategy import WitnessFound

BRANCHES = (
    "Disconnected",
    "FewDegreeK",
    "SparseCut",
    "OversizeGoodSet",
    "SingleBigGoodSet",
    "SmallJPrimeEscape",
    "ColouringComplete",
    "RecursiveDescent",
    "StrategyWitness",
)


@dataclass(frozen=True)
class ExtractionConfig:
    k: int
    t: int

    def __post_init__(self) -> None:
        if self.k == 2:
            raise InvalidConfig("t-range empty for k=2")
        if self.k < 2:
            raise InvalidConfig(f"k={self.k}: need k >= 3")
        tmax = (self.k - 2) * (self.k + 1) // 2 - 1
        if not 1 <= self.t <= tmax:
            raise InvalidConfig(f"t={self.t} outside [1, {tmax}] for k={self.k}")

    @property
    def M(self) -> int:
        return max(10_000 * self.k * self.k, 100 * self.k * self.t)

    @property
    def epsilon(self) -> Fraction:
        return Fraction(1, self.M)


@dataclass(frozen=True)
class DyadicBuckets:
    """Size-sorted good sets split into doubling groups; classes[j-1] is
    group j.  Only the first 2^J - 1 family members are bucketed."""

    family: GoodFamily
    classes: tuple[tuple[frozenset[int], ...], ...]
    norms: tuple[int, ...]
    jprime: int

    @property
    def J(self) -> int:
        return len(self.classes)

    def all_members(self) -> tuple[frozenset[int], ...]:
        return tuple(D for cls in self.classes for D in cls)


def partition_dyadic(family: GoodFamily, n: int, k: int) -> DyadicBuckets:
    """Bucket the family and locate the least prefix carrying n/(100k) mass."""
    m = family.m
    if m == 0:
        raise NoJPrime("no good sets to bucket")
    sizes = [len(D) for D in family.members]
    if any(sizes[i] < sizes[i + 1] for i in range(m - 1)):
        raise PreconditionViolated("family not sorted size-descending")
    J = (m + 1).bit_length() - 1
    classes = tuple(
        tuple(family.members[2 ** (j - 1) - 1 : 2**j - 1]) for j in range(1, J + 1)
    )
    norms = tuple(sum(len(D) for D in cls) for cls in classes)
    for j in range(J - 1):
        if norms[j + 1] > 2 * norms[j]:
            raise InternalInvariantBreach(
                f"group {j + 2} mass {norms[j + 1]} exceeds twice group {j + 1}"
            )
    prefix = 0
    jprime = 0
    for j in range(1, J + 1):
        prefix += norms[j - 1]
        if 100 * k * prefix >= n:
            jprime = j
            break
    if jprime == 0:
        raise NoJPrime(f"bucketed mass {prefix} below n/(100k) for n={n}")
    return DyadicBuckets(family=family, classes=classes, norms=norms, jprime=jprime)


@dataclass(frozen=True)
class AppendixState:
    trimmed: Graph
    T1: frozenset[int]
    T2: frozenset[int]
    T: frozenset[int]
    red: frozenset[int]
    blue: frozenset[int]


def shrink_few_degree_k(
    H: Graph,
    k: int,
    with_state: bool = False,
    audit: list[str] | None = None,
) -> Graph | tuple[Graph, AppendixState]:
    """Sparse-in-degree-k shrink: trim heavy edges, then delete red seeds.

    Requires min degree >= k and at most n/(3k) vertices of degree exactly
    k.  Returns an induced subgraph of H with min degree >= k on at most
    (1 - 1/(27k^2))n vertices.
    """
    n = H.n
    if n == 0 or H.min_degree() < k:
        raise PreconditionViolated("minimum degree below k")
    if 3 * k * len(H.degree_exactly(k)) > n:
        raise PreconditionViolated(
            f"{len(H.degree_exactly(k))} degree-{k} vertices is too many for n={n}"
        )
    vk = H.degree_exactly(k)
    # trim: drop the lex-smallest edge joining two degree->=k+2 vertices,
    # to fixpoint; this never touches the degree-k set
    cur = H
    while True:
        edge = next(
            (
                (u, v)
                for u, v in cur.edges()
                if cur.degree(u) >= k + 2 and cur.degree(v) >= k + 2
            ),
            None,
        )
        if edge is None:
            break
        u, v = edge
        cur = cur.drop_edge(u, v)
        if audit is not None:
            audit.append(f"FewDegreeK trim u={u} v={v}")
        if cur.degree_exactly(k) != vk:
            raise InternalInvariantBreach(f"trim ({u},{v}) changed the degree-{k} set")
    if cur.min_degree() < k:
        raise InternalInvariantBreach("trimming broke the degree floor")
    t1 = frozenset(v for v in cur.vertices if any(u in vk for u in cur.neighbours(v)))
    t2 = frozenset(v for v in cur.vertices if cur.degree(v) >= 9 * k)
    t = cur.vertex_set - t1 - t2
    if 3 * len(t) < n:
        raise InternalInvariantBreach(f"free zone has {len(t)} of {n} vertices")
    red: set[int] = set()
    blue: set[int] = set()
    while True:
        free = sorted(t - red - blue)
        if not free:
            break
        u = free[0]
        red.add(u)
        round_blues: list[int] = []
        for v in sorted(cur.neighbours(u)):
            if v in red:
                continue
            have = sum(1 for x in cur.neighbours(v) if x in blue)
            while have < k:
                cand = next(
                    (
                        x
                        for x in sorted(cur.neighbours(v))
                        if x not in red and x not in blue
                    ),
                    None,
                )
                if cand is None:
                    raise InternalInvariantBreach(
                        f"vertex {v} cannot reach {k} marked neighbours"
                    )
                blue.add(cand)
                round_blues.append(cand)
                have += 1
        if audit is not None:
            audit.append(f"FewDegreeK red v={u} blued={sorted(round_blues)}")
    if 27 * k * k * len(red) < n:
        raise InternalInvariantBreach(
            f"{len(red)} deletion seeds cannot cover n={n} at k={k}"
        )
    out = H.delete(red)
    if out.n == 0 or out.min_degree() < k:
        raise InternalInvariantBreach("shrink output lost the degree floor")
    state = AppendixState(
        trimmed=cur,
        T1=t1,
        T2=t2,
        T=frozenset(t),
        red=frozenset(red),
        blue=frozenset(blue),
    )
    return (out, state) if with_state else out


@dataclass(frozen=True)
class ExtractionCertificate:
    branch: str
    k: int
    t: int
    input_n: int
    input_m: int
    input_sha256: str
    witness: tuple[int, ...]
    size_bound_num: int
    size_bound_den: int
    replay_log: tuple[str, ...]

    @property
    def witness_size(self) -> int:
        return len(self.witness)

    @property
    def size_bound_floor(self) -> int:
        return self.size_bound_num // self.size_bound_den

    def to_json(self) -> str:
        obj = {
            "branch": self.branch,
            "config": {
                "epsilon": f"1/{self.size_bound_den}",
                "k": self.k,
                "t": self.t,
            },
            "input": {
                "m": self.input_m,
                "n": self.input_n,
                "sha256": self.input_sha256,
            },
            "replay_log": list(self.replay_log),
            "size_bound": {
                "den": self.size_bound_den,
                "floor": self.size_bound_floor,
                "num": self.size_bound_num,
            },
            "witness": list(self.witness),
            "witness_size": self.witness_size,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> ExtractionCertificate:
        obj = json.loads(text)
        return cls(
            branch=obj["branch"],
            k=obj["config"]["k"],
            t=obj["config"]["t"],
            input_n=obj["input"]["n"],
            input_m=obj["input"]["m"],
            input_sha256=obj["input"]["sha256"],
            witness=tuple(obj["witness"]),
            size_bound_num=obj["size_bound"]["num"],
            size_bound_den=obj["size_bound"]["den"],
            replay_log=tuple(obj["replay_log"]),
        )


def _make_certificate(
    orig: Graph,
    cfg: ExtractionConfig,
    branch: str,
    witness_set: frozenset[int],
    log: list[str],
) -> ExtractionCertificate:
    """Re-check the witness against the original graph, then seal it."""
    if not witness_set <= orig.vertex_set:
        raise InternalInvariantBreach("witness leaves the input vertex set")
    sub = orig.induced(witness_set)
    if sub.n == 0 or sub.min_degree() < cfg.k:
        raise InternalInvariantBreach(
            f"{branch} witness has minimum degree {sub.min_degree() if sub.n else 'nan'}"
        )
    num = (cfg.M - 1) * orig.n
    if len(witness_set) > num // cfg.M:
        raise InternalInvariantBreach(
            f"{branch} witness size {len(witness_set)} exceeds {num // cfg.M}"
        )
    return ExtractionCertificate(
        branch=branch,
        k=cfg.k,
        t=cfg.t,
        input_n=orig.n,
        input_m=orig.m,
        input_sha256=content_hash(orig),
        witness=tuple(sorted(witness_set)),
        size_bound_num=num,
        size_bound_den=cfg.M,
        replay_log=tuple(log),
    )


def verify_certificate(G: Graph, cert: ExtractionCertificate) -> tuple[bool, str | None]:
    """Independent acceptance check; returns (ok, first failure reason)."""
    wit = cert.witness
    wset = frozenset(wit)
    if len(wset) != len(wit) or not wset <= G.vertex_set:
        return False, "witness not induced in input"
    if cert.input_n != G.n or cert.input_m != G.m or cert.input_sha256 != content_hash(G):
        return False, "input hash mismatch"
    sub = G.induced(wset)
    if sub.n == 0 or sub.min_degree() < cert.k:
        return False, "min-degree violation"
    M = max(10_000 * cert.k * cert.k, 100 * cert.k * cert.t)
    num = (M - 1) * G.n
    ok_bound = (
        cert.size_bound_den == M
        and cert.size_bound_num == num
        and len(wit) <= num // M
    )
    if not ok_bound:
        return False, "size-bound violation"
    return True, None


def finalize(
    state: ColouringState,
    G: Graph,
    cfg: ExtractionConfig,
    log: list[str] | None = None,
) -> ExtractionCertificate:
    """Delete the heaviest colour class of a final-stage state."""
    if state.ell != state.buckets.J:
        raise PreconditionViolated(f"stage {state.ell} is not final (J={state.buckets.J})")
    log = list(log) if log is not None else []
    total = sum(len(cls) for cls in state.classes)
    if 20 * state.k * total < G.n:
        raise InternalInvariantBreach(
            f"only {total} coloured vertices out of n={G.n}"
        )
    best = max(len(cls) for cls in state.classes)
    i_star = next(i for i, cls in enumerate(state.classes, start=1) if len(cls) == best)
    log.append(f"ColouringComplete colour={i_star} class={best} coloured={total}")
    witness = G.vertex_set - state.classes[i_star - 1]
    return _make_certificate(G, cfg, "ColouringComplete", witness, log)


def extract(
    G: Graph,
    cfg: ExtractionConfig,
    capture_states: list[ColouringState] | None = None,
) -> ExtractionCertificate:
    """Run the full pipeline and certify the witness it lands on."""
    k, t = cfg.k, cfg.t
    n = G.n
    if n < k - 1:
        raise InsufficientEdges(f"graph too small: {n} vertices for k={k}")
    need = (k - 1) * n - t
    if G.m < need:
        raise InsufficientEdges(f"insufficient edges: {G.m} < {need}")
    log: list[str] = []
    cur = G
    while True:
        res = peel_to_core(cur, k, order="lowest")
        for v, d in res.removed_order:
            log.append(f"RecursiveDescent peel v={v} deg={d}")
        cur = res.core
        if cur.n == 0:
            raise InternalInvariantBreach("peeled to empty despite the edge budget")
        if cur.m < (k - 1) * cur.n - t:
            raise InternalInvariantBreach(
                f"edge budget lost: {cur.m} < {(k - 1) * cur.n - t}"
            )
        comps = cur.components()
        if len(comps) > 1:
            small = comps[0]
            log.append(f"Disconnected components={len(comps)} pick={len(small)}")
            return _make_certificate(G, cfg, "Disconnected", small, log)
        vk = cur.degree_exactly(k)
        if 3 * k * len(vk) <= cur.n:
            log.append(f"FewDegreeK vk={len(vk)} n={cur.n}")
            out = shrink_few_degree_k(cur, k, audit=log)
            assert isinstance(out, Graph)
            return _make_certificate(G, cfg, "FewDegreeK", out.vertex_set, log)
        grown = grow_good_sets(cur, k)
        if isinstance(grown, GoodSetEscape):
            if grown.kind == "SparseCut":
                X = grown.witness_set
                log.append(f"SparseCut size={len(X)} {grown.detail}")
                cur = cur.delete(X)
                continue
            # oversized good set: remove it whole and re-peel
            D = grown.witness_set
            log.append(f"OversizeGoodSet size={len(D)} {grown.detail}")
            core = remove_and_peel(cur, D, k)
            if isinstance(core, EmptyCore):
                raise InternalInvariantBreach("oversize removal peeled to empty")
            return _make_certificate(G, cfg, "OversizeGoodSet", core.vertex_set, log)
        family = grown
        log.append(f"GoodFamily m={family.m} total={family.total_size}")
        buckets = partition_dyadic(family, cur.n, k)
        log.append(f"DyadicBuckets J={buckets.J} jprime={buckets.jprime}")
        d1 = family.members[0]
        if buckets.jprime == 1:
            log.append(f"SingleBigGoodSet d1={len(d1)}")
            return _make_certificate(
                G, cfg, "SingleBigGoodSet", cur.vertex_set - d1, log
            )
        if 2**buckets.jprime <= t:
            if 100 * k * t * len(d1) < cur.n:
                raise InternalInvariantBreach(
                    f"largest good set {len(d1)} too small for the t-escape"
                )
            log.append(f"SmallJPrimeEscape jprime={buckets.jprime} d1={len(d1)}")
            return _make_certificate(
                G, cfg, "SmallJPrimeEscape", cur.vertex_set - d1, log
            )
        if buckets.jprime >= buckets.J:
            raise InternalInvariantBreach(
                f"jprime={buckets.jprime} leaves no colouring stage below J={buckets.J}"
            )
        state = init_state(buckets, k)
        if capture_states is not None:
            capture_states.append(state)
        while state.ell < buckets.J:
            step = assemble_step(state, cur, audit=log)
            if isinstance(step, WitnessFound):
                log.append(f"StrategyWitness {step.provenance}")
                return _make_certificate(
                    G, cfg, "StrategyWitness", step.witness.vertex_set, log
                )
            state = step
            if capture_states is not None:
                capture_states.append(state)
        fin = finalize(state, cur, cfg, log)
        return _make_certificate(
            G, cfg, "ColouringComplete", frozenset(fin.witness), list(fin.replay_log)
        )
