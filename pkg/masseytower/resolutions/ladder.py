"""Every matrix of the two resolutions of

    0 -> F_p[G_y]/I_y^2 --(T_x - 1)--> F_p[G_x x G_y]/(I_x^2 + I_y^2) --eps_x--> F_p[G_y]/I_y^2 -> 0

together with the cone of the left square and its comparison maps.

Matrices act on column vectors: a map with rows r_i sends (v_j) to
(sum_j r_ij v_j) projected onto the i-th target summand. Entries written as
eps_x are plain coefficients; the projection onto a Z[G_y] summand performs
the augmentation.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Sequence, Tuple, Union

from ..errors import IdentityFailed
from .group_ring import BlockKind, Generators, GroupRingElement, Quotient, basis

logger = logging.getLogger("masseytower.resolutions")

R = BlockKind.ZGXY
ZY = BlockKind.ZGY
ZX = BlockKind.ZGX
Z = BlockKind.Z

Module = Tuple[BlockKind, ...]
Target = Union[Module, Quotient]
Value = Union[List[GroupRingElement], Tuple[int, ...]]


@dataclass
class BlockMap:
    name: str
    source: Module
    target: Target
    rows: List[List[GroupRingElement]]

    def __post_init__(self):
        height = 1 if isinstance(self.target, Quotient) else len(self.target)
        if len(self.rows) != height or any(len(r) != len(self.source) for r in self.rows):
            raise ValueError(f"{self.name}: shape does not match {len(self.source)} -> {height}")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.source)

    def apply(self, v: Sequence[GroupRingElement]) -> Value:
        if isinstance(self.target, Quotient):
            total = sum((c * x for c, x in zip(self.rows[0], v)), GroupRingElement(v[0].p))
            return self.target.reduce(total)
        out = []
        for row, kind in zip(self.rows, self.target):
            total = sum((c * x for c, x in zip(row, v)), GroupRingElement(v[0].p))
            out.append(total.project(kind))
        return out

    def well_defined(self) -> List[Tuple[int, int]]:
        """Entries whose value depends on the lift of a Z[G_y], Z[G_x] or Z source."""
        bad = []
        for j, kind in enumerate(self.source):
            p = self.rows[0][j].p
            g = Generators(p)
            killers = ([] if kind.has_x else [g.Tx - 1]) + ([] if kind.has_y else [g.Ty - 1])
            for i, row in enumerate(self.rows):
                for k in killers:
                    value = row[j] * k
                    if isinstance(self.target, Quotient):
                        vanishes = not any(self.target.reduce(value))
                    else:
                        vanishes = value.project(self.target[i]).is_zero()
                    if not vanishes:
                        bad.append((i, j))
        return bad

    def with_entry(self, i: int, j: int, value: GroupRingElement) -> "BlockMap":
        rows = [list(r) for r in self.rows]
        rows[i][j] = value
        return replace(self, rows=rows)

    def to_dict(self) -> dict:
        target = self.target.value if isinstance(self.target, Quotient) else [k.value for k in self.target]
        return {
            "name": self.name,
            "source": [k.value for k in self.source],
            "target": target,
            "rows": [[e.to_list() for e in r] for r in self.rows],
        }


@dataclass
class QuotientMap:
    """F_p-linear map between the two quotient modules, on coordinates."""

    name: str
    source: Quotient
    target: Quotient
    matrix: List[List[int]]
    p: int

    def apply(self, v: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) % self.p for row in self.matrix)


@dataclass
class ChainMapLadder:
    p: int
    maps: Dict[str, BlockMap] = field(default_factory=dict)
    bottom: Dict[str, QuotientMap] = field(default_factory=dict)

    def __getitem__(self, name: str) -> BlockMap:
        return self.maps[name]

    def add(self, m: BlockMap):
        self.maps[m.name] = m

    def corrupted(self, name: str, i: int, j: int) -> "ChainMapLadder":
        """A copy with entry (i, j) of ``name`` negated."""
        out = ChainMapLadder(self.p, dict(self.maps), dict(self.bottom))
        m = self.maps[name]
        out.maps[name] = m.with_entry(i, j, -m.rows[i][j])
        return out


def _rows(entries) -> List[List[GroupRingElement]]:
    return [list(r) for r in entries]


def build_ladder(p: int) -> ChainMapLadder:
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    g = Generators(p)
    Tx, Ty, one, o = g.Tx, g.Ty, g.one, g.zero
    ux, uy, Dx, Dy, Gx, Gy = g.ux, g.uy, g.Dx, g.Dy, g.Gx, g.Gy
    P = GroupRingElement.scalar(p, p)
    L = ChainMapLadder(p)
    Q2, Q4 = Quotient.Y, Quotient.XY

    # non-free diagram, left column (free resolution of F_p[G_y]/I_y^2)
    L.add(BlockMap("delta^{-1,-2}", (R,) * 5, (R,) * 3, _rows([
        [o, -Gy, Dy, ux, o],
        [ux, uy, o, o, o],
        [-P, o, o, -(uy ** 2), Dx],
    ])))
    L.add(BlockMap("delta^{-1,-1}", (R,) * 3, (R,), _rows([[uy ** 2, P, ux]])))
    L.add(BlockMap("delta^{-1,0}", (R,), Q2, _rows([[one]])))

    # middle column
    L.add(BlockMap("delta^{0,-2}", (R,) * 3, (R,) * 3, _rows([
        [uy, ux, o],
        [o, Dx - P, uy ** 2 * ux],
        [Dy - P, o, -(uy * ux ** 2)],
    ])))
    L.add(BlockMap("delta^{0,-1}", (R,) * 3, (ZY, ZX, R), _rows([
        [o, one, o],
        [o, o, one],
        [P, ux, uy],
    ])))
    L.add(BlockMap("delta^{0,0}", (ZY, ZX, R), Q4, _rows([[Tx - 1, Ty - 1, one]])))

    # right column
    L.add(BlockMap("delta^{1,-2}", (ZY,), (ZY, ZY), _rows([[Ty - 1], [P - Dy]])))
    L.add(BlockMap("delta^{1,-1}", (ZY, ZY), (Z, ZY), _rows([[o, one], [P, uy]])))
    L.add(BlockMap("delta^{1,0}", (Z, ZY), Q2, _rows([[Ty - 1, one]])))

    # horizontal maps
    L.add(BlockMap("alpha_{-2}", (R,) * 5, (R,) * 3, _rows([
        [o, Tx - 1, o, o, o],
        [Tx - 1, o, o, o, o],
        [o, o, o, one, o],
    ])))
    L.add(BlockMap("beta_{-2}", (R,) * 3, (ZY,), _rows([[-one, o, o]])))
    L.add(BlockMap("alpha_{-1}", (R,) * 3, (R,) * 3, _rows([
        [o, Tx - 1, o],
        [uy ** 2, P, o],
        [(Ty - 1) * ux, o, o],
    ])))
    L.add(BlockMap("beta_{-1}", (R,) * 3, (ZY, ZY), _rows([[one, o, o], [o, o, one]])))
    L.add(BlockMap("alpha_0", (R,), (ZY, ZX, R), _rows([[one], [o], [o]])))
    L.add(BlockMap("beta_0", (ZY, ZX, R), (Z, ZY), _rows([[o, one, o], [o, o, one]])))

    # free diagram
    free_left_2 = _rows([
        [uy, ux, o, o, o],
        [o, -P, o, -(uy ** 2), Dx],
        [-Gy, o, Dy, ux, o],
    ])
    free_left_1 = _rows([[P, ux, (Ty - 1) ** 2]])
    for column in ("-1", "1"):
        L.add(BlockMap(f"free delta^{{{column},-2}}", (R,) * 5, (R,) * 3, free_left_2))
        L.add(BlockMap(f"free delta^{{{column},-1}}", (R,) * 3, (R,), free_left_1))
        L.add(BlockMap(f"free delta^{{{column},0}}", (R,), Q2, _rows([[one]])))
    L.add(BlockMap("free delta^{0,-2}", (R,) * 5, (R,) * 3, _rows([
        [uy, ux, o, o, o],
        [o, -Gx, Dx, o, uy ** 2],
        [-Gy, o, o, Dy, -(ux ** 2)],
    ])))
    L.add(BlockMap("free delta^{0,-1}", (R,) * 3, (R,), _rows([[P, (Tx - 1) ** 2, (Ty - 1) ** 2]])))
    L.add(BlockMap("free delta^{0,0}", (R,), Q4, _rows([[one]])))
    # top squares solved column by column against the two delta^{*,-2}
    L.add(BlockMap("free alpha_{-2}", (R,) * 5, (R,) * 5, _rows([
        [Tx - 1, o, o, o, o],
        [o, Tx - 1, o, o, o],
        [o, one, o, o, -one],
        [o, o, Tx - 1, o, o],
        [o, o, o, one, o],
    ])))
    L.add(BlockMap("free beta_{-2}", (R,) * 5, (R,) * 5, _rows([
        [one, o, o, o, o],
        [o, one, o, o, o],
        [o, o, o, one, o],
        [o, o, o, o, Tx - 1],
        [o, one, o, o, o],
    ])))
    L.add(BlockMap("free alpha_{-1}", (R,) * 3, (R,) * 3, _rows([
        [Tx - 1, o, o],
        [o, -one, o],
        [o, o, Tx - 1],
    ])))
    L.add(BlockMap("free beta_{-1}", (R,) * 3, (R,) * 3, _rows([
        [one, o, o],
        [o, ux, o],
        [o, o, one],
    ])))
    L.add(BlockMap("free alpha_0", (R,), (R,), _rows([[Tx - 1]])))
    L.add(BlockMap("free beta_0", (R,), (R,), _rows([[one]])))

    # comparison of the left column with the right column
    L.add(BlockMap("h_{-2}", (R,) * 5, (ZY,), _rows([[o, -one, o, o, o]])))
    L.add(BlockMap("h_{-1}", (R,) * 3, (ZY, ZY), _rows([[o, one, o], [uy, o, o]])))
    L.add(BlockMap("h_0", (R,), (Z, ZY), _rows([[o], [one]])))

    # cone of alpha and its maps
    L.add(BlockMap("C(alpha)^{-3}", (R,) * 5, (R,) * 6, _rows([
        [o, -Gy, Dy, ux, o],
        [ux, uy, o, o, o],
        [-P, o, o, -(uy ** 2), Dx],
        [o, ux, o, o, o],
        [ux, o, o, o, o],
        [o, o, o, -one, o],
    ])))
    L.add(BlockMap("C(alpha)^{-2}", (R,) * 6, (R,) * 4, _rows([
        [-((Ty - 1) ** 2), -P, Tx - 1, o, o, o],
        [o, Tx - 1, o, uy, ux, o],
        [uy ** 2, P, o, o, Dx - P, uy ** 2 * ux],
        [(Ty - 1) * ux, o, o, Dy - P, o, -(uy * ux ** 2)],
    ])))
    L.add(BlockMap("C(alpha)^{-1}", (R,) * 4, (ZY, ZX, R), _rows([
        [one, o, one, o],
        [o, o, o, one],
        [o, P, ux, uy],
    ])))
    L.add(BlockMap("q_{-2}", (R,) * 6, (ZY,), _rows([[o, o, o, -one, o, o]])))
    L.add(BlockMap("q_{-1}", (R,) * 4, (ZY, ZY), _rows([[o, one, o, o], [o, o, o, one]])))
    L.add(BlockMap("q_0", (ZY, ZX, R), (Z, ZY), _rows([[o, one, o], [o, o, one]])))
    L.add(BlockMap("pr_{-2}", (R,) * 6, (R,) * 3, _rows([
        [one, o, o, o, o, o],
        [o, one, o, o, o, o],
        [o, o, one, o, o, o],
    ])))
    L.add(BlockMap("pr_{-1}", (R,) * 4, (R,), _rows([[one, o, o, o]])))

    # bottom row on coordinates
    L.bottom["T_x - 1"] = QuotientMap("T_x - 1", Q2, Q4, [[0, 0], [1, 0], [0, 0], [0, 1]], p)
    L.bottom["eps_x"] = QuotientMap("eps_x", Q4, Q2, [[1, 0, 0, 0], [0, 0, 1, 0]], p)
    L.bottom["id"] = QuotientMap("id", Q2, Q2, [[1, 0], [0, 1]], p)

    logger.debug(f"built {len(L.maps)} block matrices for p={p}")
    return L


# (column name, nodes top to bottom, augmentation, resolved quotient)
COLUMNS = {
    "left": (("delta^{-1,-2}", "delta^{-1,-1}"), "delta^{-1,0}", Quotient.Y),
    "middle": (("delta^{0,-2}", "delta^{0,-1}"), "delta^{0,0}", Quotient.XY),
    "right": (("delta^{1,-2}", "delta^{1,-1}"), "delta^{1,0}", Quotient.Y),
    "free left": (("free delta^{-1,-2}", "free delta^{-1,-1}"), "free delta^{-1,0}", Quotient.Y),
    "free middle": (("free delta^{0,-2}", "free delta^{0,-1}"), "free delta^{0,0}", Quotient.XY),
    "free right": (("free delta^{1,-2}", "free delta^{1,-1}"), "free delta^{1,0}", Quotient.Y),
}

# (cell, path one, path two); both paths start at the source of their first map
# each path lists block maps then quotient maps, applied left to right
SQUARES = [
    ("alpha_{-2} square", ("alpha_{-2}", "delta^{0,-2}"), ("delta^{-1,-2}", "alpha_{-1}")),
    ("beta_{-2} square", ("beta_{-2}", "delta^{1,-2}"), ("delta^{0,-2}", "beta_{-1}")),
    ("alpha_{-1} square", ("alpha_{-1}", "delta^{0,-1}"), ("delta^{-1,-1}", "alpha_0")),
    ("beta_{-1} square", ("beta_{-1}", "delta^{1,-1}"), ("delta^{0,-1}", "beta_0")),
    ("alpha_0 square", ("alpha_0", "delta^{0,0}"), ("delta^{-1,0}", "T_x - 1")),
    ("beta_0 square", ("beta_0", "delta^{1,0}"), ("delta^{0,0}", "eps_x")),
    ("free alpha_{-2} square", ("free alpha_{-2}", "free delta^{0,-2}"), ("free delta^{-1,-2}", "free alpha_{-1}")),
    ("free beta_{-2} square", ("free beta_{-2}", "free delta^{1,-2}"), ("free delta^{0,-2}", "free beta_{-1}")),
    ("free alpha_{-1} square", ("free alpha_{-1}", "free delta^{0,-1}"), ("free delta^{-1,-1}", "free alpha_0")),
    ("free beta_{-1} square", ("free beta_{-1}", "free delta^{1,-1}"), ("free delta^{0,-1}", "free beta_0")),
    ("free alpha_0 square", ("free alpha_0", "free delta^{0,0}"), ("free delta^{-1,0}", "T_x - 1")),
    ("free beta_0 square", ("free beta_0", "free delta^{1,0}"), ("free delta^{0,0}", "eps_x")),
    ("h_{-2} square", ("h_{-2}", "delta^{1,-2}"), ("delta^{-1,-2}", "h_{-1}")),
    ("h_{-1} square", ("h_{-1}", "delta^{1,-1}"), ("delta^{-1,-1}", "h_0")),
    ("h_0 lifts the identity", ("h_0", "delta^{1,0}"), ("delta^{-1,0}", "id")),
    ("q chain map at -2", ("C(alpha)^{-2}", "q_{-1}"), ("q_{-2}", "delta^{1,-2}")),
    ("q chain map at -1", ("C(alpha)^{-1}", "q_0"), ("q_{-1}", "delta^{1,-1}")),
]

# compositions that must vanish
ZERO_COMPOSITES = [
    ("C(alpha)^{-3}", "C(alpha)^{-2}"),
    ("C(alpha)^{-2}", "C(alpha)^{-1}"),
    ("C(alpha)^{-3}", "q_{-2}"),
    ("alpha_{-1}", "beta_{-1}"),
    ("alpha_0", "beta_0"),
]

# pr . C = sign * delta_left . pr; the displayed top cone differential carries the opposite overall sign
CONE_PROJECTIONS = [
    ("pr at -3", ("C(alpha)^{-3}", "pr_{-2}"), ("delta^{-1,-2}",), 1),
    ("pr at -2", ("C(alpha)^{-2}", "pr_{-1}"), ("pr_{-2}", "delta^{-1,-1}"), -1),
]


def run_path(ladder: ChainMapLadder, names: Sequence[str], v: Value) -> Value:
    for name in names:
        if name in ladder.maps:
            v = ladder.maps[name].apply(v)
        else:
            v = ladder.bottom[name].apply(v)
    return v


def values_equal(a: Value, b: Value, p: int, sign: int = 1) -> bool:
    if isinstance(a, tuple) != isinstance(b, tuple):
        raise IdentityFailed("mixed quotient and block values")
    if isinstance(a, tuple):
        return all((x - sign * y) % p == 0 for x, y in zip(a, b))
    return len(a) == len(b) and all((x - y * sign).is_zero() for x, y in zip(a, b))


def source_basis(ladder: ChainMapLadder, name: str) -> List[List[GroupRingElement]]:
    """Unit vectors of the source of ``name``, one per monomial of each summand."""
    m = ladder.maps[name]
    p = ladder.p
    out = []
    for k, kind in enumerate(m.source):
        for b in basis(p, kind):
            v = [GroupRingElement(p) for _ in m.source]
            v[k] = b
            out.append(v)
    return out
