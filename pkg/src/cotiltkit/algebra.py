"""Finite-dimensional quiver algebras with an explicit basis and structure constants.

Paths are written in diagrammatic order: the word ``a*b`` means "first ``a``,
then ``b``", so ``a*b`` is nonzero in the path algebra only when
``target(a) == source(b)``. With this convention a right module is a
representation of the quiver in which an arrow ``a: i -> j`` acts by a linear
map ``M_i -> M_j``, and ``e_i * Lambda`` has top ``S(i)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .exactlin import Field, QQ


class AlgebraError(ValueError):
    pass


class SaturationError(AlgebraError):
    """The relations do not kill all long paths within the configured bound."""


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


class Path(NamedTuple):
    source: int
    target: int
    arrows: tuple[int, ...]

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.arrows)

    @property
    def length(self) -> int:
        return len(self.arrows)


def trivial_path(v: int) -> Path:
    return Path(v, v, ())


def deglex_key(p: Path) -> tuple:
    return (len(p.arrows), p.arrows, p.source)


@dataclass(frozen=True)
class Quiver:
    num_vertices: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise AlgebraError("arrow labels must be unique")
        for a in self.arrows:
            if not (0 <= a.source < self.num_vertices and 0 <= a.target < self.num_vertices):
                raise AlgebraError(f"arrow {a.label} has an endpoint out of range")
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", a.label):
                raise AlgebraError(f"bad arrow label {a.label!r}")

    @classmethod
    def from_arrows(cls, num_vertices: int, arrows: Iterable[tuple[str, int, int]]) -> "Quiver":
        return cls(num_vertices, tuple(Arrow(l, s, t) for l, s, t in arrows))

    def arrow_index(self, label: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.label == label:
                return k
        raise AlgebraError(f"unknown arrow {label!r}")

    def arrows_from(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.source == v]

    def arrows_into(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows) if a.target == v]

    def path(self, labels: Sequence[str] | str) -> Path:
        if isinstance(labels, str):
            labels = [s for s in labels.split("*") if s]
        idx = tuple(self.arrow_index(l) for l in labels)
        if not idx:
            raise AlgebraError("empty path word")
        for a, b in zip(idx, idx[1:]):
            if self.arrows[a].target != self.arrows[b].source:
                raise AlgebraError(f"path {'*'.join(labels)} is not composable")
        return Path(self.arrows[idx[0]].source, self.arrows[idx[-1]].target, idx)

    def concat(self, p: Path, q: Path) -> Path | None:
        if p.target != q.source:
            return None
        return Path(p.source, q.target, p.arrows + q.arrows)

    def paths_of_length(self, length: int) -> list[Path]:
        if length == 0:
            return [trivial_path(v) for v in range(self.num_vertices)]
        paths = [Path(a.source, a.target, (k,)) for k, a in enumerate(self.arrows)]
        for _ in range(length - 1):
            paths = [Path(p.source, self.arrows[k].target, p.arrows + (k,))
                     for p in paths for k in self.arrows_from(p.target)]
        return sorted(paths, key=deglex_key)

    def word(self, p: Path) -> str:
        if not p.arrows:
            return f"e{p.source}"
        return "*".join(self.arrows[k].label for k in p.arrows)

    def opposite(self) -> "Quiver":
        return Quiver(self.num_vertices, tuple(Arrow(a.label, a.target, a.source) for a in self.arrows))

    def reverse_path(self, p: Path) -> Path:
        return Path(p.target, p.source, tuple(reversed(p.arrows)))

    def arrow_multiset(self) -> list[tuple[int, int]]:
        return sorted((a.source, a.target) for a in self.arrows)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, all of length >= 2."""

    terms: tuple[tuple[object, Path], ...]

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target

    @property
    def min_length(self) -> int:
        return min(p.length for _, p in self.terms)

    @property
    def max_length(self) -> int:
        return max(p.length for _, p in self.terms)

    def validate(self) -> None:
        if not self.terms:
            raise AlgebraError("empty relation")
        s, t = self.source, self.target
        for c, p in self.terms:
            if p.source != s or p.target != t:
                raise AlgebraError("relation terms are not parallel")
            if p.length < 2:
                raise AlgebraError("relation term of length < 2 (not admissible)")

    def format(self, quiver: Quiver, field: Field) -> str:
        out = []
        for c, p in self.terms:
            rep = field.to_int_repr(c)
            neg = rep.startswith("-")
            mag = rep[1:] if neg else rep
            body = quiver.word(p) if mag == "1" else f"{mag}*{quiver.word(p)}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def reversed(self, quiver: Quiver) -> "Relation":
        return Relation(tuple((c, quiver.reverse_path(p)) for c, p in self.terms))


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_relation(text: str, quiver: Quiver, field: Field) -> Relation:
    """Parse ``"a*b - 2*c*d*e"`` into a :class:`Relation` (diagrammatic words)."""
    s = text.strip()
    if not s:
        raise AlgebraError("empty relation string")
    terms: dict[Path, object] = {}
    order: list[Path] = []
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos and s[pos:m.start()].strip():
            raise AlgebraError(f"cannot parse relation {text!r}")
        pos = m.end()
        sign, body = m.group(1), m.group(2).strip()
        factors = [f.strip() for f in body.split("*")]
        coeff = field.one
        if factors and re.fullmatch(r"\d+(/\d+)?", factors[0]):
            coeff = field(factors[0])
            factors = factors[1:]
        if sign == "-":
            coeff = field(-coeff) if field.characteristic == 0 else field(-int(coeff))
        p = quiver.path(factors)
        if p not in terms:
            order.append(p)
            terms[p] = field.zero
        terms[p] = field(terms[p] + coeff)
    rel = Relation(tuple((terms[p], p) for p in order if terms[p] != 0))
    rel.validate()
    return rel


class BasedAlgebra:
    """Basis of path residues plus structure constants for ``kQ / I``."""

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], field: Field,
                 basis: list[Path], path_coords: dict[Path, np.ndarray], truncation: int,
                 name: str = ""):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.field = field
        self.basis = list(basis)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.path_coords = path_coords
        self.truncation = truncation
        self.name = name
        self.idempotents = [self.index[trivial_path(v)] for v in range(quiver.num_vertices)]
        self._build_mult()
        self._opposite: BasedAlgebra | None = None

    # --- structure ----------------------------------------------------------
    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def num_vertices(self) -> int:
        return self.quiver.num_vertices

    def _build_mult(self) -> None:
        d = self.dimension
        self.mult: list[list[np.ndarray | None]] = [[None] * d for _ in range(d)]
        for i, p in enumerate(self.basis):
            for j, q in enumerate(self.basis):
                pq = self.quiver.concat(p, q)
                if pq is None:
                    continue
                v = self.path_vector(pq)
                if not self.field.is_zero(v):
                    self.mult[i][j] = v

    def path_vector(self, p: Path) -> np.ndarray:
        if p.length >= self.truncation:
            return self.field.zeros(self.dimension)
        return self.path_coords[p]

    def basis_from(self, v: int) -> list[int]:
        return [i for i, p in enumerate(self.basis) if p.source == v]

    def basis_between(self, i: int, j: int) -> list[int]:
        return [k for k, p in enumerate(self.basis) if p.source == i and p.target == j]

    def arrow_basis_index(self, k: int) -> int:
        a = self.quiver.arrows[k]
        return self.index[Path(a.source, a.target, (k,))]

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        f = self.field
        out = f.zeros(self.dimension)
        for i in np.nonzero(x != 0)[0]:
            for j in np.nonzero(y != 0)[0]:
                v = self.mult[i][j]
                if v is not None:
                    out = f.add(out, f.scale(f(x[i] * y[j]), v))
        return out

    def unit(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dimension)
        v[i] = self.field.one
        return v

    def one(self) -> np.ndarray:
        v = self.field.zeros(self.dimension)
        for i in self.idempotents:
            v[i] = self.field.one
        return v

    def check_associativity(self) -> bool:
        d = self.dimension
        units = [self.unit(i) for i in range(d)]
        for i in range(d):
            for j in range(d):
                ij = self.mul(units[i], units[j])
                for k in range(d):
                    if not np.array_equal(self.mul(ij, units[k]), self.mul(units[i], self.mul(units[j], units[k]))):
                        return False
        return True

    def check_idempotents(self) -> bool:
        one = self.one()
        for i in range(self.dimension):
            u = self.unit(i)
            if not (np.array_equal(self.mul(one, u), u) and np.array_equal(self.mul(u, one), u)):
                return False
        for a in self.idempotents:
            for b in self.idempotents:
                prod = self.mul(self.unit(a), self.unit(b))
                want = self.unit(a) if a == b else self.field.zeros(self.dimension)
                if not np.array_equal(prod, want):
                    return False
        return True

    def relation_strings(self) -> list[str]:
        return [r.format(self.quiver, self.field) for r in self.relations]

    # --- opposite -----------------------------------------------------------
    def opposite(self) -> "BasedAlgebra":
        if self._opposite is None:
            q = self.quiver
            qop = q.opposite()
            coords = {q.reverse_path(p): v for p, v in self.path_coords.items()}
            op = BasedAlgebra(qop, [r.reversed(q) for r in self.relations], self.field,
                              [q.reverse_path(p) for p in self.basis], coords, self.truncation,
                              name=(self.name + "^op") if self.name else "")
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __repr__(self) -> str:
        return f"BasedAlgebra({self.name or 'unnamed'}, dim={self.dimension}, over {self.field})"


def build_based_algebra(quiver: Quiver, relations: Sequence[Relation | str], field: Field = QQ,
                        max_length: int = 16, name: str = "") -> BasedAlgebra:
    """Quotient of the path algebra by the ideal generated by ``relations``.

    The ideal must contain every path of some length ``N <= max_length``;
    otherwise :class:`SaturationError` is raised rather than truncating.
    """
    rels = [parse_relation(r, quiver, field) if isinstance(r, str) else r for r in relations]
    for r in rels:
        r.validate()
    slack = max((r.max_length - r.min_length for r in rels), default=0) + 1

    paths_by_len: dict[int, list[Path]] = {}

    def plen(L: int) -> list[Path]:
        if L not in paths_by_len:
            paths_by_len[L] = quiver.paths_of_length(L)
        return paths_by_len[L]

    def ending_at(v: int, L: int) -> list[Path]:
        return [p for p in plen(L) if p.target == v]

    def starting_at(v: int, L: int) -> list[Path]:
        return [p for p in plen(L) if p.source == v]

    def ideal_elements(max_total: int, use_min: bool) -> Iterable[dict[Path, object]]:
        # Products p*r*q; bounded by the longest term (use_min=False) or the shortest.
        for r in rels:
            base = r.min_length if use_min else r.max_length
            budget = max_total - base
            if budget < 0:
                continue
            for lp in range(budget + 1):
                for p in (ending_at(r.source, lp) if lp else [trivial_path(r.source)]):
                    for lq in range(budget - lp + 1):
                        for q in (starting_at(r.target, lq) if lq else [trivial_path(r.target)]):
                            elt: dict[Path, object] = {}
                            for c, t in r.terms:
                                w = Path(p.source, q.target, p.arrows + t.arrows + q.arrows)
                                elt[w] = c
                            yield elt

    n_sat = None
    for L in range(1, max_length + 1):
        targets = plen(L)
        if not targets:
            n_sat = L
            break
        if not rels:
            continue
        top = L + slack
        cols = [p for k in range(1, top + 1) for p in plen(k)]
        col_index = {p: i for i, p in enumerate(cols)}
        rows = []
        for elt in ideal_elements(top, use_min=False):
            if max(w.length for w in elt) > top:
                continue
            row = field.zeros(len(cols))
            for w, c in elt.items():
                row[col_index[w]] = field(row[col_index[w]] + c)
            rows.append(row)
        if not rows:
            continue
        span = np.array(rows, dtype=field.dtype)
        r_span = field.rank(span)
        tests = field.zeros(len(targets), len(cols))
        for i, p in enumerate(targets):
            tests[i, col_index[p]] = field.one
        if field.rank(np.concatenate([span, tests], axis=0)) == r_span:
            n_sat = L
            break
    if n_sat is None:
        raise SaturationError(f"paths of length <= {max_length} are not all killed by the relations")

    # Truncated ideal inside paths of length < n_sat.
    short = [p for k in range(n_sat) for p in plen(k)]
    desc = sorted(short, key=deglex_key, reverse=True)
    col_index = {p: i for i, p in enumerate(desc)}
    rows = []
    for elt in ideal_elements(n_sat - 1, use_min=True):
        row = field.zeros(len(desc))
        hit = False
        for w, c in elt.items():
            if w.length < n_sat:
                row[col_index[w]] = field(row[col_index[w]] + c)
                hit = True
        if hit:
            rows.append(row)
    pivot_rows: dict[int, np.ndarray] = {}
    if rows:
        red, pivots = field.rref(np.array(rows, dtype=field.dtype))
        pivot_rows = {p: red[i] for i, p in enumerate(pivots)}
    basis = sorted([p for p in short if col_index[p] not in pivot_rows], key=deglex_key)
    bidx = {p: i for i, p in enumerate(basis)}
    coords: dict[Path, np.ndarray] = {}
    for p in short:
        v = field.zeros(len(basis))
        c = col_index[p]
        if c in pivot_rows:
            row = pivot_rows[c]
            for b in basis:
                x = row[col_index[b]]
                if x != 0:
                    v[bidx[b]] = field(-x)
        else:
            v[bidx[p]] = field.one
        coords[p] = v
    return BasedAlgebra(quiver, rels, field, basis, coords, n_sat, name=name)


def opposite_algebra(a: BasedAlgebra) -> BasedAlgebra:
    return a.opposite()


# --- standard presentations --------------------------------------------------

def linear_quiver(n: int, prefix: str = "a") -> Quiver:
    """``1 <- 2 <- ... <- n`` with 0-based vertices: arrows ``k+1 -> k``."""
    return Quiver.from_arrows(n, [(f"{prefix}{k + 1}", k + 1, k) for k in range(n - 1)])


def path_algebra_linear(n: int, field: Field = QQ) -> BasedAlgebra:
    return build_based_algebra(linear_quiver(n), [], field, name=f"A{n}")


def cyclic_nakayama(n: int, loewy_length: int, field: Field = QQ) -> BasedAlgebra:
    """Self-injective Nakayama algebra: cyclic quiver, all paths of length ``loewy_length`` zero.

    Arrows go ``k -> k-1`` (indices mod n), so the projective at the last
    vertex has composition series ``n, n-1, ..., 1, n`` for ``n=3, L=4``.
    """
    q = Quiver.from_arrows(n, [(f"c{k}", k, (k - 1) % n) for k in range(n)])
    rels = [Relation(((field.one, p),)) for p in q.paths_of_length(loewy_length)]
    return build_based_algebra(q, rels, field, name=f"Nakayama({n},{loewy_length})")
