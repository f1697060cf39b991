"""Block complexes on (C+, CF+, C-, CF-) with the four-step action filtration.

Degrees are stored unshifted per block. The total degree adds the block
shift: 2 on C+, 1 on C-, 0 on the intersection-point blocks. In total degree
every component has degree +1; as maps between unshifted summands

    d_++, d_--, d_00 : +1      d_+0 : -1      d_0- : +2
    d_+- : 0                   d_-0 : 0

Matrices act on columns: ``D[row, col] = 1`` means ``col`` maps onto a sum
containing ``row``. Sparse JSON entries are ``[row_id, col_id]`` pairs.

Filtration levels: C+ = 3, CF+ = 2, C- = 1, CF- = 0, and F^p is the span of
levels >= p. The differential never lowers the level.

Intersection points may be declared without an action sign (the ``CF``
array). Such complexes load and verify, but the spectral sequence and the
long exact sequences need the split.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import f2
from .errors import (
    ChainMapViolation,
    ConeStructureViolation,
    DegreeError,
    ModeError,
    NotAComplex,
    NotExact,
    SchemaError,
    StructureError,
)
from .linhom import COHOMOLOGICAL, GradedComplex, PoincarePolynomial, homology

VERSION = 1

CP, FP, CM, FM, FU = "C+", "CF+", "C-", "CF-", "CF"
SHIFT = {CP: 2, FP: 0, CM: 1, FM: 0, FU: 0}
LEVEL = {CP: 3, FP: 2, CM: 1, FM: 0}
JSON_KEYS = {CP: "Cplus", FP: "CFplus", CM: "Cminus", FM: "CFminus", FU: "CF"}
LEVEL_NAMES = {3: "C+", 2: "CF+", 1: "C-", 0: "CF-"}

# component -> (source kind, target kind, unshifted degree); "F" is any CF block
COMPONENTS = {
    "++": ("P", "P", 1),
    "+0": ("F", "P", -1),
    "+-": ("M", "P", 0),
    "00": ("F", "F", 1),
    "0-": ("M", "F", 2),
    "-0": ("F", "M", 0),
    "--": ("M", "M", 1),
}
FORBIDDEN = {"0+": ("P", "F"), "-+": ("P", "M")}
KIND = {CP: "P", FP: "F", FM: "F", FU: "F", CM: "M"}


@dataclass
class CthulhuComplex:
    """Ordered basis (id, unshifted degree, block) and the full matrix."""

    basis: List[Tuple[str, int, str]]
    matrix: np.ndarray

    def __post_init__(self):
        self.index = {b[0]: i for i, b in enumerate(self.basis)}

    # -- basic views -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.basis)

    def block(self, name: str) -> List[int]:
        if name == "F":
            return [i for i, b in enumerate(self.basis) if KIND[b[2]] == "F"]
        return [i for i, b in enumerate(self.basis) if b[2] == name]

    @property
    def split(self) -> bool:
        return not self.block(FU)

    def total_degree(self, i: int) -> int:
        _, deg, blk = self.basis[i]
        return deg + SHIFT[blk]

    def sub(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        return self.matrix[np.ix_(list(rows), list(cols))]

    def component(self, name: str) -> np.ndarray:
        src, tgt, _ = COMPONENTS[name]
        return self.sub(self._kind(tgt), self._kind(src))

    def _kind(self, kind: str) -> List[int]:
        return {"P": self.block(CP), "F": self.block("F"), "M": self.block(CM)}[kind]

    def ids(self, idx: Sequence[int]) -> List[str]:
        return [self.basis[i][0] for i in idx]

    # -- JSON --------------------------------------------------------
    def to_json(self) -> dict:
        out = {"version": VERSION}
        for blk in (CP, FP, CM, FM, FU):
            items = [{"id": b[0], "deg": b[1]} for b in self.basis if b[2] == blk]
            if items or blk != FU:
                out[JSON_KEYS[blk]] = items
        d = {}
        for name, (src, tgt, _) in COMPONENTS.items():
            rows, cols = self._kind(tgt), self._kind(src)
            m = self.sub(rows, cols)
            d[name] = [[self.basis[rows[r]][0], self.basis[cols[c]][0]] for r, c in zip(*np.nonzero(m))]
            d[name].sort(key=lambda rc: (self.index[rc[1]], self.index[rc[0]]))
        out["d"] = d
        return out

    def with_entry_flipped(self, row: int, col: int) -> "CthulhuComplex":
        m = self.matrix.copy()
        m[row, col] ^= 1
        return CthulhuComplex(list(self.basis), m)


def _blocks_of(kind: str) -> Tuple[str, ...]:
    return {"P": (CP,), "F": (FP, FM, FU), "M": (CM,)}[kind]


def load(obj, check: bool = True) -> CthulhuComplex:
    """Build and validate a complex from its JSON form (dict or text)."""
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise SchemaError("complex must be a JSON object")
    basis: List[Tuple[str, int, str]] = []
    for blk in (CP, FP, FU, CM, FM):
        key = JSON_KEYS[blk]
        items = obj.get(key, [])
        if not isinstance(items, list):
            raise SchemaError(f"{key} must be a list")
        for it in items:
            try:
                basis.append((str(it["id"]), int(it["deg"]), blk))
            except (KeyError, TypeError, ValueError):
                raise SchemaError(f"bad basis element in {key}: {it!r}") from None
    # canonical block order: C+, CF+, CF (unsplit), C-, CF-
    ids = [b[0] for b in basis]
    if len(set(ids)) != len(ids):
        raise SchemaError("duplicate basis id")
    index = {b[0]: i for i, b in enumerate(basis)}
    mat = f2.zeros(len(basis), len(basis))
    d = obj.get("d", {})
    if not isinstance(d, dict):
        raise SchemaError("'d' must be an object of sparse matrices")
    for name, entries in d.items():
        if name in COMPONENTS:
            src, tgt, _ = COMPONENTS[name]
        elif name in FORBIDDEN:
            src, tgt = FORBIDDEN[name]
        else:
            raise SchemaError(f"unknown block component {name!r}")
        if not isinstance(entries, list):
            raise SchemaError(f"component {name} must be a list of [row, col]")
        seen = set()
        for e in entries:
            if not (isinstance(e, (list, tuple)) and len(e) == 2):
                raise SchemaError(f"bad entry {e!r} in component {name}")
            r, c = str(e[0]), str(e[1])
            if r not in index or c not in index:
                raise SchemaError(f"unknown id in entry {e!r} of component {name}")
            if (r, c) in seen:
                raise SchemaError(f"duplicate entry {e!r} in component {name}")
            seen.add((r, c))
            if basis[index[c]][2] not in _blocks_of(src) or basis[index[r]][2] not in _blocks_of(tgt):
                raise SchemaError(f"entry {e!r} does not belong to component {name}")
            if name in FORBIDDEN:
                raise StructureError(f"component d_{name} must vanish (entry {e!r})")
            mat[index[r], index[c]] = 1
    c = CthulhuComplex(basis, mat)
    if check:
        check_structure(c)
    return c


def check_structure(c: CthulhuComplex) -> None:
    """Degrees of every component and the upper-triangular action filtration."""
    for i, j in zip(*np.nonzero(c.matrix)):
        ri, cj = c.basis[i], c.basis[j]
        name = _component_name(ri[2], cj[2])
        if name is None or name in FORBIDDEN:
            raise StructureError(f"entry {ri[0]} <- {cj[0]} lies in a vanishing block")
        want = COMPONENTS[name][2]
        if ri[1] - cj[1] != want:
            raise DegreeError(f"d_{name} entry {ri[0]} <- {cj[0]} has degree {ri[1] - cj[1]}, expected {want}")
        if ri[2] in LEVEL and cj[2] in LEVEL and LEVEL[ri[2]] < LEVEL[cj[2]]:
            raise StructureError(
                f"entry {ri[0]} <- {cj[0]} lowers the action filtration ({cj[2]} -> {ri[2]})"
            )


def _component_name(tgt_blk: str, src_blk: str) -> Optional[str]:
    pair = (KIND[src_blk], KIND[tgt_blk])
    for name, (s, t, _) in COMPONENTS.items():
        if (s, t) == pair:
            return name
    for name, (s, t) in FORBIDDEN.items():
        if (s, t) == pair:
            return name
    return None


# -- homology of the total complex -------------------------------------

def _total_complex(c: CthulhuComplex) -> GradedComplex:
    basis = [(b[0], c.total_degree(i)) for i, b in enumerate(c.basis)]
    return GradedComplex(basis, c.matrix, COHOMOLOGICAL)


def d_squared_zero(c: CthulhuComplex) -> bool:
    return f2.is_zero(f2.mul(c.matrix, c.matrix))


def verify(c: CthulhuComplex) -> dict:
    """Block structure, d^2 = 0 and acyclicity of the total complex."""
    sq = d_squared_zero(c)
    try:
        check_structure(c)
        problem = None
    except (DegreeError, StructureError) as exc:
        problem = str(exc)
    out = {"version": VERSION, "structure": problem or "ok", "d_squared": sq, "acyclic": False, "homology": None}
    if sq and problem is None:
        h = homology(_total_complex(c))
        out["acyclic"] = h.total() == 0
        out["homology"] = str(h)
    return out


def block_homology(c: CthulhuComplex, blk: str) -> PoincarePolynomial:
    """Homology of one block under its diagonal component, unshifted degrees."""
    idx = c.block(blk)
    g = GradedComplex([(c.basis[i][0], c.basis[i][1]) for i in idx], c.sub(idx, idx), COHOMOLOGICAL)
    return homology(g)


# -- spectral sequence ---------------------------------------------------

class _Graded:
    """Per-total-degree slices of the complex with filtration levels."""

    def __init__(self, c: CthulhuComplex):
        self.c = c
        self.level = [LEVEL[b[2]] for b in c.basis]
        self.deg = [c.total_degree(i) for i in range(c.n)]
        self.degrees = sorted(set(self.deg))

    def idx(self, n: int) -> List[int]:
        return [i for i in range(self.c.n) if self.deg[i] == n]

    def d(self, n: int) -> np.ndarray:
        """Matrix of d: V_n -> V_{n+1}."""
        return self.c.sub(self.idx(n + 1), self.idx(n))

    def filt(self, n: int, p: int) -> np.ndarray:
        """Column basis of F^p V_n inside V_n."""
        idx = self.idx(n)
        cols = [k for k, i in enumerate(idx) if self.level[i] >= p]
        m = f2.zeros(len(idx), len(cols))
        for j, k in enumerate(cols):
            m[k, j] = 1
        return m

    def z(self, r: int, p: int, n: int) -> np.ndarray:
        """Z_r^p in degree n: x in F^p with dx in F^{p+r}."""
        fp = self.filt(n, p)
        tgt = self.idx(n + 1)
        low = [k for k, i in enumerate(tgt) if self.level[i] < p + r]
        dm = self.d(n)[low, :] if low else f2.zeros(0, len(self.idx(n)))
        ker = f2.nullspace(f2.mul(dm, fp)) if fp.shape[1] else f2.zeros(0, 0)
        return f2.mul(fp, ker) if fp.shape[1] else f2.zeros(len(self.idx(n)), 0)

    def denominator(self, r: int, p: int, n: int) -> np.ndarray:
        """Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1} in degree n (column basis)."""
        a = self.z(r - 1, p + 1, n)
        prev = self.z(r - 1, p - r + 1, n - 1)
        b = f2.mul(self.d(n - 1), prev) if prev.shape[1] else f2.zeros(len(self.idx(n)), 0)
        both = np.concatenate([a, b], axis=1)
        return f2.colspace(both) if both.size else f2.zeros(len(self.idx(n)), 0)


@dataclass
class SpectralSequenceReport:
    pages: Dict[int, Dict[Tuple[int, int], int]]  # r -> (level, total degree) -> dim
    differential_ranks: Dict[int, Dict[Tuple[int, int], int]]
    block_homology: Dict[str, str]
    collapse: bool
    collapse_page: Optional[int]
    monotone: bool
    d_r_squared_zero: bool
    ranks_consistent: bool

    def page_total(self, r: int) -> int:
        return sum(self.pages[r].values())

    def to_json(self) -> dict:
        return {
            "version": VERSION,
            "pages": {
                f"E{r}": [
                    {"level": LEVEL_NAMES[p], "degree": n, "dim": v}
                    for (p, n), v in sorted(self.pages[r].items(), key=lambda kv: (-kv[0][0], kv[0][1]))
                    if v
                ]
                for r in sorted(self.pages)
            },
            "block_homology": self.block_homology,
            "collapse": self.collapse,
            "collapse_page": self.collapse_page,
            "monotone": self.monotone,
            "d_r_squared_zero": self.d_r_squared_zero,
            "ranks_consistent": self.ranks_consistent,
        }


def spectral_sequence(c: CthulhuComplex, last_page: int = 4) -> SpectralSequenceReport:
    """Pages E_1..E_last of the action filtration, with explicit d_r.

    E_r^p = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}); d_r: E_r^p -> E_r^{p+r}.
    Each page is also checked against the homology of the previous one.
    """
    check_structure(c)
    if not d_squared_zero(c):
        raise NotAComplex("d^2 != 0")
    if not c.split:
        raise ModeError("spectral sequence needs every intersection point to carry an action sign")
    g = _Graded(c)
    degs = list(range(min(g.degrees, default=0) - 1, max(g.degrees, default=0) + 2))
    pages: Dict[int, Dict[Tuple[int, int], int]] = {}
    dranks: Dict[int, Dict[Tuple[int, int], int]] = {}
    sq_ok = True
    consistent = True
    for r in range(1, last_page + 1):
        page = {}
        frames = {}
        for p in range(4):
            for n in degs:
                z = g.z(r, p, n)
                den = g.denominator(r, p, n)
                reps = f2.extend_basis(den, z) if z.shape[1] else z
                page[(p, n)] = reps.shape[1]
                frames[(p, n)] = (den, reps)
        pages[r] = page
        # d_r as matrices between representative bases
        mats = {}
        ranks = {}
        for p in range(4):
            for n in degs:
                den, reps = frames[(p, n)]
                tgt = (p + r, n + 1)
                if tgt not in frames or reps.shape[1] == 0:
                    mats[(p, n)] = f2.zeros(frames.get(tgt, (None, f2.zeros(0, 0)))[1].shape[1], reps.shape[1])
                    ranks[(p, n)] = 0
                    continue
                tden, treps = frames[tgt]
                img = f2.mul(g.d(n), reps)
                frame = np.concatenate([tden, treps], axis=1)
                x = f2.solve(frame, img) if frame.shape[1] else None
                if x is None and img.any():
                    raise NotAComplex(f"d_{r} image leaves Z_{r} at level {p + r}, degree {n + 1}")
                m = x[tden.shape[1]:, :] if x is not None else f2.zeros(treps.shape[1], reps.shape[1])
                mats[(p, n)] = m
                ranks[(p, n)] = f2.rank(m)
        dranks[r] = ranks
        for (p, n), m in mats.items():
            nxt = mats.get((p + r, n + 1))
            if nxt is not None and m.size and nxt.size and f2.mul(nxt, m).any():
                sq_ok = False
        if r > 1:
            prev, prank = pages[r - 1], dranks[r - 1]
            for (p, n), v in page.items():
                want = prev[(p, n)] - prank.get((p, n), 0) - prank.get((p - (r - 1), n - 1), 0)
                if want != v:
                    consistent = False
    # E_1 against block homologies computed separately
    bh = {}
    for blk in (CP, FP, CM, FM):
        h = block_homology(c, blk)
        bh[blk] = str(h)
        p = LEVEL[blk]
        for n in degs:
            if pages[1][(p, n)] != h[n - SHIFT[blk]]:
                consistent = False
    collapse = sum(pages[last_page].values()) == 0
    first = next((r for r in sorted(pages) if not any(pages[r].values())), None)
    monotone = all(pages[r + 1][key] <= pages[r][key] for r in range(1, last_page) for key in pages[r])
    return SpectralSequenceReport(pages, dranks, bh, collapse, first, monotone, sq_ok, consistent)


# -- long exact sequences --------------------------------------------------

def _hom(c: CthulhuComplex, idx: List[int], n: int, deg_of) -> f2.Homology:
    here = [i for i in idx if deg_of(i) == n]
    before = [i for i in idx if deg_of(i) == n - 1]
    after = [i for i in idx if deg_of(i) == n + 1]
    return f2.Homology(c.sub(here, before), c.sub(after, here)), here


@dataclass
class LESReport:
    mode: str
    nodes: List[dict]
    maps: List[dict]
    exact: bool
    iso_between_ends: bool

    def to_json(self) -> dict:
        return {
            "version": VERSION,
            "mode": self.mode,
            "nodes": self.nodes,
            "maps": self.maps,
            "exact": self.exact,
            "iso_between_ends": self.iso_between_ends,
        }


def extract_les(c: CthulhuComplex, mode: str) -> LESReport:
    """Long exact sequence of a directed or V-shaped complex.

    The total complex is the cone of the map from M = (CF+, C-, CF-) to C+.
    When it is acyclic that map is an isomorphism on homology, which turns
    the exact triangle of the subcomplex S inside M into

      directed (CF+ empty):  LCH^k(-) -> LCH^k(+) -> HF-^{k+1} -> LCH^{k+1}(-)
      V-shaped (CF- empty):  LCH^k(+) -> LCH^k(-) -> HF+^{k+2} -> LCH^{k+1}(+)
    """
    if mode not in ("directed", "v_shaped"):
        raise ModeError(f"unknown mode {mode!r}")
    if not c.split:
        raise ModeError("long exact sequences need declared action signs")
    if mode == "directed" and c.block(FP):
        raise ModeError("directed mode needs CF+ to be empty")
    if mode == "v_shaped" and c.block(FM):
        raise ModeError("v_shaped mode needs CF- to be empty")
    if not d_squared_zero(c):
        raise NotAComplex("d^2 != 0")
    tdeg = c.total_degree
    T = c.block(CP)
    S = c.block(CM) if mode == "directed" else c.block(FP)
    Q = c.block(FM) if mode == "directed" else c.block(CM)
    M = sorted(S + Q)
    degs = sorted({tdeg(i) for i in range(c.n)})
    lo, hi = (degs[0] - 2, degs[-1] + 2) if degs else (0, 0)
    H = {}
    for name, idx in (("T", T), ("S", S), ("Q", Q), ("M", M)):
        for n in range(lo - 1, hi + 2):
            H[(name, n)] = _hom(c, idx, n, tdeg)

    def ind(a, b, na, nb, via_d=True):
        # via_d: the block of d between the summands; else inclusion/projection
        hs, hs_here = H[(a, na)]
        ht, ht_here = H[(b, nb)]
        if hs.dim == 0 or ht.dim == 0:
            return f2.zeros(ht.dim, hs.dim)
        if via_d:
            block = c.sub(ht_here, hs_here)
        else:
            block = f2.asmat([[int(r == s) for s in hs_here] for r in ht_here]).reshape(len(ht_here), len(hs_here))
        return ht.coords(f2.mul(block, hs.reps))

    def label(name, n):
        if mode == "directed":
            return {"S": f"LCH^{n - 1}(-)", "T": f"LCH^{n - 2}(+)", "Q": f"HF-^{n}"}[name]
        return {"S": f"HF+^{n}", "T": f"LCH^{n - 2}(+)", "Q": f"LCH^{n - 1}(-)"}[name]

    nodes, maps = [], []
    exact = True
    iso = True
    # sequence: H^n(S) -g-> H^{n+1}(T) -h-> H^n(Q) -delta-> H^{n+1}(S)
    seq = []
    for n in range(lo, hi + 1):
        psi = ind("M", "T", n, n + 1)
        hM = H[("M", n)][0]
        hT = H[("T", n + 1)][0]
        if psi.shape != (hT.dim, hM.dim) or f2.rank(psi) != hM.dim or hM.dim != hT.dim:
            raise NotExact(
                f"cone map H^{n}(M) -> {label('T', n + 1)} is not an isomorphism (complex not acyclic)",
                node=label("T", n + 1),
            )
        psi_inv = f2.inverse(psi) if hM.dim else f2.zeros(0, 0)
        i_map = ind("S", "M", n, n, via_d=False)
        p_map = ind("M", "Q", n, n, via_d=False)
        g = f2.mul(psi, i_map) if psi.size and i_map.size else f2.zeros(hT.dim, H[("S", n)][0].dim)
        h = f2.mul(p_map, psi_inv) if p_map.size and psi_inv.size else f2.zeros(H[("Q", n)][0].dim, hT.dim)
        delta = ind("Q", "S", n, n + 1)
        seq.append((("S", n), g, ("T", n + 1)))
        seq.append((("T", n + 1), h, ("Q", n)))
        seq.append((("Q", n), delta, ("S", n + 1)))
    for a, m, b in seq:
        maps.append({"from": label(*a), "to": label(*b), "rank": f2.rank(m) if m.size else 0})
    # exactness at every interior node
    for k in range(1, len(seq)):
        (_, m_in, node), (_, m_out, _) = seq[k - 1], seq[k]
        dim = H[node][0].dim
        r_in = f2.rank(m_in) if m_in.size else 0
        r_out = f2.rank(m_out) if m_out.size else 0
        comp_zero = not (m_in.size and m_out.size and f2.mul(m_out, m_in).any())
        ok = dim == r_in + r_out and comp_zero
        nodes.append({"label": label(*node), "dim": dim, "rank_in": r_in, "rank_out": r_out, "exact": ok})
        if not ok:
            exact = False
    # the map between the two Legendrian ends
    for a, m, b in seq:
        ends = {"S", "T"} if mode == "directed" else {"T", "Q"}
        if {a[0], b[0]} == ends:
            da, db = H[a][0].dim, H[b][0].dim
            if not (da == db and (da == 0 or f2.rank(m) == da)):
                iso = False
    nodes = [nd for nd in nodes if nd["dim"] or nd["rank_in"] or nd["rank_out"]]
    maps = [mp for mp in maps if mp["rank"]]
    if not exact:
        bad = next(nd for nd in nodes if not nd["exact"])
        raise NotExact(f"sequence not exact at {bad['label']}", node=bad["label"])
    return LESReport(mode, nodes, maps, exact, iso)


# -- concatenation, transfer and co-transfer ---------------------------------

@dataclass
class ThreeBlock:
    """A complex viewed as (C+, CF, C-) with CF = CF+ then CF- (or unsplit)."""

    plus: List[Tuple[str, int]]
    cf: List[Tuple[str, int]]
    minus: List[Tuple[str, int]]
    d: Dict[str, np.ndarray]

    @classmethod
    def of(cls, c: CthulhuComplex) -> "ThreeBlock":
        f = c.block("F")
        return cls(
            [(c.basis[i][0], c.basis[i][1]) for i in c.block(CP)],
            [(c.basis[i][0], c.basis[i][1]) for i in f],
            [(c.basis[i][0], c.basis[i][1]) for i in c.block(CM)],
            {name: c.component(name) for name in COMPONENTS},
        )

    def full(self) -> np.ndarray:
        d = self.d
        return np.block([
            [d["++"], d["+0"], d["+-"]],
            [f2.zeros(len(self.cf), len(self.plus)), d["00"], d["0-"]],
            [f2.zeros(len(self.minus), len(self.plus)), d["-0"], d["--"]],
        ]).astype(np.uint8)

    def to_complex(self) -> CthulhuComplex:
        basis = [(i, g, CP) for i, g in self.plus] + [(i, g, FU) for i, g in self.cf] + [(i, g, CM) for i, g in self.minus]
        return CthulhuComplex(basis, self.full())


@dataclass
class ConcatenationData:
    V: CthulhuComplex  # lower piece: C+(V) is the middle end
    W: CthulhuComplex  # upper piece: C-(W) is the middle end
    reverse: List[str]  # basis of the reverse middle chords
    b: np.ndarray  # R -> C(middle), banana map of V
    delta_m0: np.ndarray  # CF(W) -> R
    delta_0p: np.ndarray  # R -> CF(V)
    delta_mp: np.ndarray  # R -> C-(V), already composed with the banana map of the negative end

    @classmethod
    def from_json(cls, obj) -> "ConcatenationData":
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            V, W = load(obj["V"]), load(obj["W"])
            rev = [str(x) for x in obj.get("reverse_chords", [])]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad concatenation data: {exc}") from None
        tv, tw = ThreeBlock.of(V), ThreeBlock.of(W)
        if len(set(rev)) != len(rev):
            raise SchemaError("duplicate reverse chord id")

        def sparse(key, rows, cols):
            ri = {r: i for i, r in enumerate(rows)}
            ci = {c: i for i, c in enumerate(cols)}
            m = f2.zeros(len(rows), len(cols))
            for e in obj.get(key, []):
                try:
                    m[ri[str(e[0])], ci[str(e[1])]] ^= 1
                except (KeyError, IndexError, TypeError):
                    raise SchemaError(f"bad entry {e!r} in {key}") from None
            return m

        mid = [i for i, _ in tv.plus]
        return cls(
            V, W, rev,
            sparse("b", mid, rev),
            sparse("delta_m0", rev, [i for i, _ in tw.cf]),
            sparse("delta_0p", [i for i, _ in tv.cf], rev),
            sparse("delta_mp", [i for i, _ in tv.minus], rev),
        )

    @classmethod
    def without_bananas(cls, V: CthulhuComplex, W: CthulhuComplex) -> "ConcatenationData":
        """Data with no reverse middle chords, so every auxiliary map is zero."""
        tv, tw = ThreeBlock.of(V), ThreeBlock.of(W)
        return cls(
            V, W, [],
            f2.zeros(len(tv.plus), 0),
            f2.zeros(0, len(tw.cf)),
            f2.zeros(len(tv.cf), 0),
            f2.zeros(len(tv.minus), 0),
        )

    def to_json(self) -> dict:
        tv, tw = ThreeBlock.of(self.V), ThreeBlock.of(self.W)
        mid = [i for i, _ in tv.plus]

        def sparse(m, rows, cols):
            return [[rows[r], cols[c]] for c in range(m.shape[1]) for r in range(m.shape[0]) if m[r, c]]

        return {
            "version": VERSION,
            "V": self.V.to_json(),
            "W": self.W.to_json(),
            "reverse_chords": list(self.reverse),
            "b": sparse(self.b, mid, self.reverse),
            "delta_m0": sparse(self.delta_m0, self.reverse, [i for i, _ in tw.cf]),
            "delta_0p": sparse(self.delta_0p, [i for i, _ in tv.cf], self.reverse),
            "delta_mp": sparse(self.delta_mp, [i for i, _ in tv.minus], self.reverse),
        }


def _check_middle(tv: ThreeBlock, tw: ThreeBlock) -> None:
    if tw.minus != tv.plus:
        raise ConeStructureViolation("the negative end of W must equal the positive end of V (ids and degrees)")
    if not np.array_equal(tw.d["--"], tv.d["++"]):
        raise ConeStructureViolation("d^W_{--} must equal d^V_{++}")


def concatenate(cd: ConcatenationData) -> ThreeBlock:
    """Block differential of the concatenation on (C+(W), CF(W), CF(V), C-(V))."""
    tv, tw = ThreeBlock.of(cd.V), ThreeBlock.of(cd.W)
    _check_middle(tv, tw)
    v, w = tv.d, tw.d
    bd = f2.mul(cd.b, cd.delta_m0)  # CF(W) -> middle
    nw, nv = len(tw.cf), len(tv.cf)
    d = {
        "++": w["++"],
        "+0": np.concatenate([f2.add(w["+0"], f2.mul(w["+-"], bd)), f2.mul(w["+-"], v["+0"])], axis=1),
        "+-": f2.mul(w["+-"], v["+-"]),
        "00": np.block([
            [f2.add(w["00"], f2.mul(w["0-"], bd)), f2.mul(w["0-"], v["+0"])],
            [f2.mul(cd.delta_0p, cd.delta_m0), v["00"]],
        ]).astype(np.uint8).reshape(nw + nv, nw + nv),
        "0-": np.concatenate([f2.mul(w["0-"], v["+-"]), v["0-"]], axis=0).reshape(nw + nv, len(tv.minus)),
        "-0": np.concatenate([f2.mul(cd.delta_mp, cd.delta_m0), v["-0"]], axis=1).reshape(len(tv.minus), nw + nv),
        "--": v["--"],
    }
    return ThreeBlock(tw.plus, tw.cf + tv.cf, tv.minus, d)


def transfer(cd: ConcatenationData) -> np.ndarray:
    """Phi_W : Cth(V) -> Cth(V.W)."""
    tv, tw = ThreeBlock.of(cd.V), ThreeBlock.of(cd.W)
    P, FW, FV, Mn = len(tw.plus), len(tw.cf), len(tv.cf), len(tv.minus)
    Mid = len(tv.plus)
    out = f2.zeros(P + FW + FV + Mn, Mid + FV + Mn)
    out[:P, :Mid] = tw.d["+-"]
    out[P:P + FW, :Mid] = tw.d["0-"]
    out[P + FW:P + FW + FV, Mid:Mid + FV] = f2.eye(FV)
    out[P + FW + FV:, Mid + FV:] = f2.eye(Mn)
    return out


def cotransfer(cd: ConcatenationData) -> np.ndarray:
    """Phi^V : Cth(V.W) -> Cth(W)."""
    tv, tw = ThreeBlock.of(cd.V), ThreeBlock.of(cd.W)
    P, FW, FV, Mn = len(tw.plus), len(tw.cf), len(tv.cf), len(tv.minus)
    Mid = len(tv.plus)
    out = f2.zeros(P + FW + Mid, P + FW + FV + Mn)
    out[:P, :P] = f2.eye(P)
    out[P:P + FW, P:P + FW] = f2.eye(FW)
    out[P + FW:, P:P + FW] = f2.mul(cd.b, cd.delta_m0)
    out[P + FW:, P + FW:P + FW + FV] = tv.d["+0"]
    out[P + FW:, P + FW + FV:] = tv.d["+-"]
    return out


def cone_data(cd: ConcatenationData) -> dict:
    """Auxiliary complex, Psi, its stated inverse and the cone comparison.

    The auxiliary complex is C(V.W) + Cmid + Cmid with
    d~ = [[d, 0, 0], [0, d_mid, 0], [0, I, d_mid]]. The second copy of Cmid
    belongs to Cth(W), the third to Cth(V).
    """
    tv, tw = ThreeBlock.of(cd.V), ThreeBlock.of(cd.W)
    cat = concatenate(cd)
    D = cat.full()
    P, FW, FV, Mn = len(tw.plus), len(tw.cf), len(tv.cf), len(tv.minus)
    Mid = len(tv.plus)
    N = P + FW + FV + Mn
    dm = tv.d["++"]
    tot = N + 2 * Mid
    dt = f2.zeros(tot, tot)
    dt[:N, :N] = D
    dt[N:N + Mid, N:N + Mid] = dm
    dt[N + Mid:, N:N + Mid] = f2.eye(Mid)
    dt[N + Mid:, N + Mid:] = dm
    # D_W : Cmid -> C (rows C+, CF(W)); D_V : C -> Cmid
    DW = f2.zeros(N, Mid)
    DW[:P] = tw.d["+-"]
    DW[P:P + FW] = tw.d["0-"]
    DV = f2.zeros(Mid, N)
    DV[:, P:P + FW] = f2.mul(cd.b, cd.delta_m0)
    DV[:, P + FW:P + FW + FV] = tv.d["+0"]
    DV[:, P + FW + FV:] = tv.d["+-"]
    psi = f2.eye(tot)
    psi[:N, N + Mid:] = DW
    psi[N:N + Mid, :N] = DV
    psi_inv = psi.copy()  # signs vanish over F2: the stated inverse has the same blocks
    dbar = f2.mul(psi_inv, dt, psi)
    # reorder to (Cth(W), Cth(V)) = (C+, CF(W), Cmid2 | Cmid3, CF(V), C-)
    order = (
        list(range(P)) + list(range(P, P + FW)) + list(range(N, N + Mid))
        + list(range(N + Mid, N + 2 * Mid)) + list(range(P + FW, P + FW + FV)) + list(range(P + FW + FV, N))
    )
    dbar_r = dbar[np.ix_(order, order)]
    nW = P + FW + Mid
    dW, dV = tw.full(), tv.full()
    expect = f2.zeros(tot, tot)
    expect[:nW, :nW] = dW
    expect[nW:, nW:] = dV
    # delta_VW : Cth(W) -> Cth(V), rows (Cmid, CF(V), C-), cols (C+, CF(W), Cmid)
    dvw = f2.zeros(Mid + FV + Mn, nW)
    dvw[:Mid, P:P + FW] = f2.mul(cd.b, cd.delta_m0)
    dvw[:Mid, P + FW:] = f2.eye(Mid)
    dvw[Mid:Mid + FV, P:P + FW] = f2.mul(cd.delta_0p, cd.delta_m0)
    dvw[Mid + FV:, P:P + FW] = f2.mul(cd.delta_mp, cd.delta_m0)
    expect[nW:, :nW] = dvw
    # inclusion of Cth(V) and projection onto Cth(W), in the reordered basis
    iota_V = f2.zeros(tot, Mid + FV + Mn)
    iota_V[nW:, :] = f2.eye(Mid + FV + Mn)
    pi_W = f2.zeros(nW, tot)
    pi_W[:, :nW] = f2.eye(nW)
    # back to the auxiliary-complex order for the factorisations
    perm = f2.zeros(tot, tot)
    for new, old in enumerate(order):
        perm[new, old] = 1
    iota_Vt = f2.mul(perm.T, iota_V)  # Cth(V) -> C~
    pi_Wt = f2.mul(pi_W, perm)  # C~ -> Cth(W)
    iota = f2.zeros(tot, N)  # C(V.W) -> C~ as first summand
    iota[:N, :N] = f2.eye(N)
    pi = f2.zeros(N, tot)  # C~ -> C(V.W)
    pi[:N, :N] = f2.eye(N)
    return {
        "d_tilde": dt,
        "psi": psi,
        "psi_inv": psi_inv,
        "dbar": dbar_r,
        "cone": expect,
        "iota_V": iota_Vt,
        "pi_W": pi_Wt,
        "iota": iota,
        "pi": pi,
    }


def is_trivial_cylinder_top(cd: ConcatenationData) -> bool:
    tv, tw = ThreeBlock.of(cd.V), ThreeBlock.of(cd.W)
    return (
        not tw.cf
        and [g for _, g in tw.plus] == [g for _, g in tw.minus]
        and np.array_equal(tw.d["+-"], f2.eye(len(tw.plus)))
        and np.array_equal(tw.d["++"], tw.d["--"])
    )


def is_trivial_cylinder_bottom(cd: ConcatenationData) -> bool:
    tv = ThreeBlock.of(cd.V)
    return (
        not tv.cf
        and [g for _, g in tv.plus] == [g for _, g in tv.minus]
        and np.array_equal(tv.d["+-"], f2.eye(len(tv.plus)))
        and np.array_equal(tv.d["++"], tv.d["--"])
        and not cd.b.any()
    )


def verify_concatenation(cd: ConcatenationData, strict: bool = True) -> dict:
    """Chain-map, identity and mapping-cone checks for concatenation data.

    With ``strict`` a concatenation with d^2 != 0 raises NotAComplex, a
    failed chain-map check raises ChainMapViolation and a failed cone check
    raises ConeStructureViolation; otherwise the report
    carries the verdicts.
    """
    tv, tw = ThreeBlock.of(cd.V), ThreeBlock.of(cd.W)
    cat = concatenate(cd)
    D = cat.full()
    dV, dW = tv.full(), tw.full()
    phi_W, phi_V = transfer(cd), cotransfer(cd)
    cone = cone_data(cd)
    tot = cone["psi"].shape[0]
    rep = {"version": VERSION}
    rep["d_squared"] = f2.is_zero(f2.mul(D, D))
    rep["transfer_chain_map"] = bool(np.array_equal(f2.mul(phi_W, dV), f2.mul(D, phi_W)))
    rep["cotransfer_chain_map"] = bool(np.array_equal(f2.mul(phi_V, D), f2.mul(dW, phi_V)))
    rep["transfer_identity"] = (
        bool(phi_W.shape[0] == phi_W.shape[1] and np.array_equal(phi_W, f2.eye(phi_W.shape[0])))
        if is_trivial_cylinder_top(cd) else None
    )
    rep["cotransfer_identity"] = (
        bool(phi_V.shape[0] == phi_V.shape[1] and np.array_equal(phi_V, f2.eye(phi_V.shape[0])))
        if is_trivial_cylinder_bottom(cd) else None
    )
    rep["psi_inverse"] = bool(np.array_equal(f2.mul(cone["psi"], cone["psi_inv"]), f2.eye(tot)))
    rep["cone_form"] = bool(np.array_equal(cone["dbar"], cone["cone"]))
    dt = cone["d_tilde"]
    rep["aux_d_squared"] = f2.is_zero(f2.mul(dt, dt))
    rep["inclusion_chain_maps"] = bool(
        np.array_equal(f2.mul(dt, cone["iota"]), f2.mul(cone["iota"], D))
    )
    rep["transfer_factorises"] = bool(np.array_equal(phi_W, f2.mul(cone["pi"], cone["psi"], cone["iota_V"])))
    rep["cotransfer_factorises"] = bool(np.array_equal(phi_V, f2.mul(cone["pi_W"], cone["psi_inv"], cone["iota"])))
    if strict:
        if not (rep["d_squared"] and rep["aux_d_squared"]):
            raise NotAComplex("the concatenated differential does not square to zero")
        if not (rep["transfer_chain_map"] and rep["cotransfer_chain_map"]):
            raise ChainMapViolation("transfer or co-transfer map does not commute with the differentials")
        if not (rep["psi_inverse"] and rep["cone_form"] and rep["transfer_factorises"] and rep["cotransfer_factorises"]):
            raise ConeStructureViolation("concatenation data does not have the mapping-cone form")
    return rep


# -- model complexes ------------------------------------------------------------

def cylinder_complex(c: GradedComplex, morse_pairs: int = 0) -> CthulhuComplex:
    """Directed model of a trivial cylinder over the cochain complex ``c``.

    C+ and C- are two copies of ``c`` joined by d_+- = I. ``morse_pairs``
    cancelling pairs (x_i in degree 0, y_i in degree 1, d_00 x_i = y_i) are
    added to CF-, a Morse complex of the cylinder relative to its negative
    end, whose homology vanishes.
    """
    if c.direction != COHOMOLOGICAL:
        raise ModeError("cylinder model needs a cohomological complex")
    k = len(c.basis)
    basis = [(f"+{g}", deg, CP) for g, deg in c.basis] + [(f"-{g}", deg, CM) for g, deg in c.basis]
    for i in range(morse_pairs):
        basis += [(f"x{i + 1}", 0, FM), (f"y{i + 1}", 1, FM)]
    n = len(basis)
    m = f2.zeros(n, n)
    m[:k, :k] = c.matrix
    m[k:2 * k, k:2 * k] = c.matrix
    m[:k, k:2 * k] = f2.eye(k)
    for i in range(morse_pairs):
        x = 2 * k + 2 * i
        m[x + 1, x] = 1
    out = CthulhuComplex(basis, m)
    check_structure(out)
    return out
