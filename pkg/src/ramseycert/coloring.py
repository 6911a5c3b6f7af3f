"""Edge colorings of complete graphs from random blowups, and their verification.

A blowup coloring with parameters (t, m, N, seed) overlays m random
blowups of the t-dimensional orthogonality graph onto K_N: m maps
f_1..f_m send each of the N vertices to a uniform graph vertex, a pair
{x, y} takes the least index i whose map separates it across an edge,
and pairs no map separates get one of two leftover colors by a fair
deterministic coin. Colors are never stored per pair: the m tables plus
the counter-based stream reconstruct every color on demand, so a spec
and a seed fully determine the coloring.

Verification searches every color class exhaustively for a t-clique and
wraps the outcome, together with the exact expectation arithmetic, in a
Certificate. A verified certificate at N vertices is a concrete proof
that r(t; m+2) >= N+1.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import rng
from .bounds import ExpectationReport, expected_mono_count
from .graphs import BitGraph, build_g0, count_independent_sets, has_clique_of_order

KIND_BLOWUP = "blowup"
KIND_ERDOS = "erdos"
KIND_PRODUCT = "product"

TAG_BLOWUP = "blowup"
TAG_PAIR = "pair"
TAG_SAMPLE = "sample"

MAX_VERTICES = 1 << 32  # vertex-index capacity of one coloring
EXHAUSTIVE_LIMIT = 10_000  # beyond this only sampling-mode search is offered
EDGE_DUMP_LIMIT = 2_000

CERTIFICATE_FORMAT = "ramseycert.certificate/1"


@dataclass(frozen=True)
class ColoringSpec:
    """Parameters that, with the seed, fully determine an edge coloring."""

    kind: str
    t: int
    m: int
    ell: int
    N: int
    seed: int
    factors: Optional[tuple["ColoringSpec", "ColoringSpec"]] = None

    def __post_init__(self) -> None:
        if not 1 <= self.N <= MAX_VERTICES:
            raise ValueError(f"N must be in 1..{MAX_VERTICES}, got {self.N}")
        rng.check_seed(self.seed)
        if self.kind == KIND_BLOWUP:
            if self.t % 2 != 0 or self.t < 2:
                raise ValueError("construction requires even t >= 2")
            if self.m < 0:
                raise ValueError(f"m must be non-negative, got {self.m}")
            if self.ell != self.m + 2:
                raise ValueError(f"blowup colorings use ell = m + 2, got ell={self.ell}, m={self.m}")
            if self.factors is not None:
                raise ValueError("blowup colorings have no factors")
        elif self.kind == KIND_ERDOS:
            if self.ell < 2:
                raise ValueError(f"need at least two colors, got ell={self.ell}")
            if self.m != 0:
                raise ValueError("uniform random colorings have m = 0")
            if self.t < 0:
                raise ValueError(f"clique target must be non-negative, got {self.t}")
            if self.factors is not None:
                raise ValueError("uniform random colorings have no factors")
        elif self.kind == KIND_PRODUCT:
            if self.factors is None or len(self.factors) != 2:
                raise ValueError("product colorings need exactly two factors")
            f1, f2 = self.factors
            if self.N != f1.N * f2.N:
                raise ValueError(f"product N must be {f1.N * f2.N}, got {self.N}")
            if self.ell != f1.ell + f2.ell:
                raise ValueError(f"product ell must be {f1.ell + f2.ell}, got {self.ell}")
        else:
            raise ValueError(f"unknown coloring kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "t": self.t,
            "m": self.m,
            "ell": self.ell,
            "N": self.N,
            "seed": self.seed,
        }
        if self.factors is not None:
            d["factors"] = [f.to_json_dict() for f in self.factors]
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "ColoringSpec":
        factors = d.get("factors")
        return cls(
            kind=d["kind"],
            t=int(d["t"]),
            m=int(d["m"]),
            ell=int(d["ell"]),
            N=int(d["N"]),
            seed=int(d["seed"]),
            factors=None
            if factors is None
            else tuple(cls.from_json_dict(f) for f in factors),
        )


class EdgeColoring:
    """A total symmetric coloring of the pairs of [N], values in 1..ell.

    Immutable after construction; color_of is a pure function of
    (spec, seed, pair), so instances are safely shareable across threads.
    """

    def __init__(
        self,
        spec: ColoringSpec,
        g0: Optional[BitGraph] = None,
        tables: Optional[list[list[int]]] = None,
        factors: Optional[tuple["EdgeColoring", "EdgeColoring"]] = None,
    ):
        self.spec = spec
        self._g0 = g0
        self._tables = tables
        self._factors = factors

    @property
    def N(self) -> int:
        return self.spec.N

    @property
    def ell(self) -> int:
        return self.spec.ell

    def blowup_table(self, i: int) -> list[int]:
        """The i-th blowup map (1-based color index) as a vertex -> G0-index table."""
        if self._tables is None or not 1 <= i <= self.spec.m:
            raise ValueError(f"no blowup map {i}")
        return list(self._tables[i - 1])

    def color_of(self, x: int, y: int) -> int:
        if x == y:
            raise ValueError(f"self-pairs have no color (x = y = {x})")
        N = self.spec.N
        if not (0 <= x < N and 0 <= y < N):
            raise ValueError(f"pair ({x},{y}) out of range for N={N}")
        kind = self.spec.kind
        if kind == KIND_BLOWUP:
            adj = self._g0.adj
            for i, table in enumerate(self._tables, start=1):
                if (adj[table[x]] >> table[y]) & 1:
                    return i
            lo, hi = (x, y) if x < y else (y, x)
            return self.spec.m + 1 + rng.uniform_below(2, self.spec.seed, TAG_PAIR, lo, hi)
        if kind == KIND_ERDOS:
            lo, hi = (x, y) if x < y else (y, x)
            return 1 + rng.uniform_below(self.spec.ell, self.spec.seed, TAG_PAIR, lo, hi)
        # product: first factor colors pairs split by the first coordinate,
        # second factor (shifted palette) colors pairs inside one block
        c1, c2 = self._factors
        a1, b1 = divmod(x, c2.N)
        a2, b2 = divmod(y, c2.N)
        if a1 != a2:
            return c1.color_of(a1, a2)
        return c1.ell + c2.color_of(b1, b2)


def generate_blowup_coloring(t: int, m: int, N: int, seed: int) -> EdgeColoring:
    """Draw the m blowup maps for an (m+2)-coloring of K_N.

    Each table entry f_i(x) is an independent uniform index into the
    2^(t-1) graph vertices, keyed by (seed, "blowup", i, x); leftover
    pair colors are deferred to color_of. Same spec and seed always
    regenerate the identical coloring.
    """
    spec = ColoringSpec(kind=KIND_BLOWUP, t=t, m=m, ell=m + 2, N=N, seed=seed)
    g0 = build_g0(t)
    tables = [
        [rng.uniform_below(g0.n, seed, TAG_BLOWUP, i, x) for x in range(N)]
        for i in range(1, m + 1)
    ]
    return EdgeColoring(spec, g0=g0, tables=tables)


def generate_erdos_coloring(N: int, ell: int, seed: int, t: int = 0) -> EdgeColoring:
    """Uniform independent color per pair, the classic random coloring.

    t is carried only as the default clique target for later verification.
    """
    spec = ColoringSpec(kind=KIND_ERDOS, t=t, m=0, ell=ell, N=N, seed=seed)
    return EdgeColoring(spec)


def product_coloring(c1: EdgeColoring, c2: EdgeColoring) -> EdgeColoring:
    """Palette-disjoint product on N1*N2 vertices.

    Vertex v encodes the pair (v // N2, v % N2); pairs differing in the
    first coordinate take the first factor's color, pairs inside a block
    take the second factor's color shifted past the first palette. If
    neither factor has a monochromatic K_t, the product has none.
    """
    if c1.N * c2.N > MAX_VERTICES:
        raise ValueError(f"product vertex count {c1.N * c2.N} exceeds capacity")
    spec = ColoringSpec(
        kind=KIND_PRODUCT,
        t=max(c1.spec.t, c2.spec.t),
        m=0,
        ell=c1.ell + c2.ell,
        N=c1.N * c2.N,
        seed=0,
        factors=(c1.spec, c2.spec),
    )
    return EdgeColoring(spec, factors=(c1, c2))


def regenerate(spec: ColoringSpec, seed: Optional[int] = None) -> EdgeColoring:
    """Rebuild a coloring from its spec, optionally overriding the seed.

    Product colorings carry all randomness in their factors, so their
    seed cannot be overridden.
    """
    if spec.kind == KIND_BLOWUP:
        return generate_blowup_coloring(
            spec.t, spec.m, spec.N, spec.seed if seed is None else seed
        )
    if spec.kind == KIND_ERDOS:
        return generate_erdos_coloring(
            spec.N, spec.ell, spec.seed if seed is None else seed, t=spec.t
        )
    if seed is not None and seed != spec.seed:
        raise ValueError("product colorings carry their randomness in the factors")
    f1, f2 = spec.factors
    return product_coloring(regenerate(f1), regenerate(f2))


@dataclass(frozen=True)
class MonoWitness:
    """A monochromatic clique: every pair inside `vertices` has `color`."""

    color: int
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.color < 1:
            raise ValueError(f"colors are 1-based, got {self.color}")
        if list(self.vertices) != sorted(set(self.vertices)):
            raise ValueError("witness vertices must be strictly ascending")

    def holds_in(self, coloring: EdgeColoring) -> bool:
        verts = self.vertices
        return all(
            coloring.color_of(verts[a], verts[b]) == self.color
            for a in range(len(verts))
            for b in range(a + 1, len(verts))
        )

    def to_json_dict(self) -> dict:
        return {"color": self.color, "vertices": list(self.vertices)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "MonoWitness":
        return cls(color=int(d["color"]), vertices=tuple(int(v) for v in d["vertices"]))


def color_class_graphs(
    coloring: EdgeColoring, colors: Optional[list[int]] = None
) -> dict[int, BitGraph]:
    """Materialize the requested color classes as graphs, one pass over all pairs."""
    N = coloring.N
    if N > EXHAUSTIVE_LIMIT:
        raise ValueError(f"N={N} exceeds the exhaustive materialization guard {EXHAUSTIVE_LIMIT}")
    wanted = list(range(1, coloring.ell + 1)) if colors is None else list(colors)
    rows = {c: [0] * N for c in wanted}
    color_of = coloring.color_of
    for x in range(N):
        for y in range(x + 1, N):
            row = rows.get(color_of(x, y))
            if row is not None:
                row[x] |= 1 << y
                row[y] |= 1 << x
    return {c: BitGraph(N, rows[c]) for c in wanted}


def _sample_search(coloring: EdgeColoring, t: int, tries: int) -> tuple[Optional[MonoWitness], int]:
    """Sampling-mode search for large N: random t-subsets, never exhaustive."""
    N = coloring.N
    seed = coloring.spec.seed
    for trial in range(tries):
        verts: list[int] = []
        slot = 0
        while len(verts) < t:
            v = rng.uniform_below(N, seed, TAG_SAMPLE, trial, slot)
            slot += 1
            if v not in verts:
                verts.append(v)
        verts.sort()
        color = coloring.color_of(verts[0], verts[1])
        if all(
            coloring.color_of(verts[a], verts[b]) == color
            for a in range(t)
            for b in range(a + 1, t)
        ):
            return MonoWitness(color, tuple(verts)), tries
    return None, tries


def _search_mono(
    coloring: EdgeColoring, t: int, threads: int = 1, sample_tries: int = 10_000
) -> tuple[Optional[MonoWitness], int, bool]:
    """Search every color class for a t-clique.

    Returns (witness, search nodes, exhaustive). Scans colors ascending;
    the per-class search is deterministic, and the threaded path picks
    the lowest-color witness, so the outcome never depends on thread
    count. Beyond the exhaustive guard only sampling is performed.
    """
    if t < 1:
        raise ValueError(f"clique target must be positive, got {t}")
    if coloring.N < t:
        raise ValueError("target exceeds vertex count")
    if coloring.N > EXHAUSTIVE_LIMIT:
        witness, nodes = _sample_search(coloring, t, sample_tries)
        return witness, nodes, False
    graphs = color_class_graphs(coloring)
    colors = sorted(graphs)
    nodes = 0
    if threads <= 1:
        for c in colors:
            result = has_clique_of_order(graphs[c], t)
            nodes += result.nodes
            if result.found:
                return MonoWitness(c, tuple(sorted(result.witness))), nodes, True
        return None, nodes, True
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda c: (c, has_clique_of_order(graphs[c], t)), colors))
    nodes = sum(r.nodes for _, r in results)
    for c, result in results:  # colors ascending
        if result.found:
            return MonoWitness(c, tuple(sorted(result.witness))), nodes, True
    return None, nodes, True


def find_mono_clique(coloring: EdgeColoring, t: int, threads: int = 1) -> Optional[MonoWitness]:
    """First monochromatic t-clique in deterministic order, or None.

    A None return is exhaustive (every color class fully searched)
    whenever N is within the materialization guard.
    """
    witness, _, _ = _search_mono(coloring, t, threads=threads)
    return witness


@dataclass(frozen=True)
class Certificate:
    """A verified (or failed) lower-bound witness for one coloring.

    verified holds exactly when the search was exhaustive and found no
    witness; such a certificate proves r(t; ell) >= N+1 for its spec.
    search_stats carries timing and is excluded from certificate
    comparisons; everything else is deterministic in (spec, seed).
    """

    spec: ColoringSpec
    seed: int
    t: int
    verified: bool
    exhaustive: bool
    witness: Optional[MonoWitness]
    expectation: Optional[ExpectationReport]
    search_stats: dict = field(default_factory=dict)

    def certified_bound(self) -> Optional[int]:
        """The proven lower bound on r(t; ell): N+1 when verified."""
        return self.spec.N + 1 if self.verified else None

    def to_json_dict(self) -> dict:
        expectation = None
        if self.expectation is not None:
            expectation = self.expectation.to_json_dict()
            expectation["certified_bound"] = self.certified_bound()
        return {
            "format": CERTIFICATE_FORMAT,
            "spec": self.spec.to_json_dict(),
            "seed": self.seed,
            "t": self.t,
            "verified": self.verified,
            "exhaustive": self.exhaustive,
            "witness": None if self.witness is None else self.witness.to_json_dict(),
            "expectation": expectation,
            "search_stats": dict(self.search_stats),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Certificate":
        if d.get("format") != CERTIFICATE_FORMAT:
            raise ValueError(f"unsupported certificate format {d.get('format')!r}")
        witness = d.get("witness")
        expectation = d.get("expectation")
        return cls(
            spec=ColoringSpec.from_json_dict(d["spec"]),
            seed=int(d["seed"]),
            t=int(d["t"]),
            verified=bool(d["verified"]),
            exhaustive=bool(d["exhaustive"]),
            witness=None if witness is None else MonoWitness.from_json_dict(witness),
            expectation=None
            if expectation is None
            else ExpectationReport.from_json_dict(expectation),
            search_stats=dict(d.get("search_stats", {})),
        )


def canonical_json_bytes(d: dict) -> bytes:
    return (json.dumps(d, sort_keys=True, indent=2) + "\n").encode("ascii")


def certificate_core(d: dict) -> dict:
    """The deterministic part of a certificate dict: everything but timing."""
    return {k: v for k, v in d.items() if k != "search_stats"}


def certificates_match(a: dict, b: dict) -> bool:
    """Byte equality of the deterministic parts, after canonicalization."""
    return canonical_json_bytes(certificate_core(a)) == canonical_json_bytes(
        certificate_core(b)
    )


def save_certificate(cert: Certificate, path) -> None:
    with open(path, "wb") as fh:
        fh.write(canonical_json_bytes(cert.to_json_dict()))


def load_certificate(path) -> Certificate:
    with open(path, "rb") as fh:
        return Certificate.from_json_dict(json.loads(fh.read().decode("ascii")))


def verify_coloring(
    spec: ColoringSpec,
    seed: Optional[int] = None,
    t: Optional[int] = None,
    census=None,
    threads: int = 1,
    sample_tries: int = 10_000,
) -> Certificate:
    """Regenerate the coloring, search it, and wrap the outcome.

    The expectation report is attached for blowup and uniform random
    colorings (the census of the orthogonality graph is computed on
    demand when m > 0 and none is supplied); product colorings carry no
    expectation. verified is True exactly when the exhaustive search
    found nothing.
    """
    used_seed = spec.seed if seed is None else rng.check_seed(seed)
    target = spec.t if t is None else t
    if target < 2:
        raise ValueError(f"clique target must be at least 2, got {target}")
    start = time.perf_counter()
    coloring = regenerate(spec, seed=used_seed)
    witness, nodes, exhaustive = _search_mono(
        coloring, target, threads=threads, sample_tries=sample_tries
    )
    elapsed = time.perf_counter() - start
    if witness is not None and not witness.holds_in(coloring):
        raise AssertionError("search produced a witness the coloring rejects")
    # the expectation formula covers the blowup family (m maps plus two
    # leftover colors); a uniform random coloring is its m = 0 member only
    # when it has exactly two colors
    expectation = None
    if spec.kind == KIND_BLOWUP or (spec.kind == KIND_ERDOS and spec.ell == 2):
        if spec.kind == KIND_BLOWUP and spec.m > 0 and census is None:
            census = count_independent_sets(build_g0(spec.t), spec.t)
        expectation = expected_mono_count(target, spec.m, spec.N, census)
    return Certificate(
        spec=spec,
        seed=used_seed,
        t=target,
        verified=exhaustive and witness is None,
        exhaustive=exhaustive,
        witness=witness,
        expectation=expectation,
        search_stats={
            "nodes": nodes,
            "wall_time_sec": round(elapsed, 6),
            "threads": threads,
            "tries": 1,
        },
    )


def produce_certificate(
    spec: ColoringSpec,
    t: Optional[int] = None,
    max_tries: int = 1,
    census=None,
    threads: int = 1,
) -> tuple[Certificate, list[tuple[int, MonoWitness]]]:
    """Seed-retry loop: try spec.seed, spec.seed+1, ... until verification.

    Success per seed has probability at least 1 - E, so a handful of
    tries suffices whenever the expectation is comfortably below 1.
    Returns the final certificate (verified or not) and the failed
    (seed, witness) attempts.
    """
    if max_tries < 1:
        raise ValueError(f"max_tries must be positive, got {max_tries}")
    if spec.kind == KIND_PRODUCT:
        max_tries = 1  # all randomness is in the factors; retries would repeat
    failures: list[tuple[int, MonoWitness]] = []
    cert = None
    for k in range(max_tries):
        used_seed = (spec.seed + k) & rng.MASK64
        cert = verify_coloring(spec, seed=used_seed, t=t, census=census, threads=threads)
        cert.search_stats["tries"] = k + 1
        if cert.verified:
            break
        if cert.witness is not None:
            failures.append((used_seed, cert.witness))
    return cert, failures


def recheck_certificate(
    cert: Certificate, census=None, threads: int = 1
) -> tuple[bool, list[str]]:
    """Re-verify a certificate from scratch.

    Checks internal consistency, replays the search at the certificate's
    seed, and compares the deterministic parts byte for byte.
    """
    reasons: list[str] = []
    if cert.verified != (cert.witness is None and cert.exhaustive):
        reasons.append(
            "inconsistent certificate: verified must mean exhaustive search with no witness"
        )
    if cert.witness is not None:
        coloring = regenerate(cert.spec, seed=cert.seed)
        if not cert.witness.holds_in(coloring):
            reasons.append("witness is not monochromatic under the regenerated coloring")
    if reasons:
        return False, reasons
    fresh = verify_coloring(
        cert.spec, seed=cert.seed, t=cert.t, census=census, threads=threads
    )
    if not certificates_match(fresh.to_json_dict(), cert.to_json_dict()):
        reasons.append("certificate does not reproduce from its spec and seed")
    return not reasons, reasons


def write_edge_dump(coloring: EdgeColoring, path) -> None:
    """Full edge listing (x,y,color CSV) for external auditing; small N only."""
    N = coloring.N
    if N > EDGE_DUMP_LIMIT:
        raise ValueError(f"edge dumps are limited to N <= {EDGE_DUMP_LIMIT}, got {N}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("x,y,color\n")
        for x in range(N):
            for y in range(x + 1, N):
                fh.write(f"{x},{y},{coloring.color_of(x, y)}\n")
