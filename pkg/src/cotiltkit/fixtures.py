"""Enumeration of indecomposable modules for representation-finite algebras.

Used offline to generate the frozen fixture lists, and as a fallback when a
computed algebra has no frozen list. Starting from the indecomposable
projectives, the set is closed under the translates and under the summands of
middle terms of almost split sequences. A finite set closed under these
operations that contains the projectives is a union of finite components of the
Auslander-Reiten quiver, hence everything when the quiver of the algebra is
connected. The enumeration records whether that certificate was obtained.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import BasedAlgebra
from .homological import Ext1Space, _radical_basis, tau, tau_minus
from .modrep import (
    ModuleRep, ShortExactSeq, cokernel, decompose, injective_module, is_injective, is_projective,
    layer_name, projective_module, radical, socle,
)
from .relexact import _syzygy_map


class EnumerationError(RuntimeError):
    pass


def almost_split_sequence(x: ModuleRep) -> ShortExactSeq:
    """The almost split sequence ``0 -> tau X -> E -> X -> 0`` for indecomposable non-projective X."""
    tx = tau(x)
    if tx.total_dim == 0:
        raise EnumerationError(f"{x.name} is projective")
    e = Ext1Space(x, tx)
    f = x.field
    rows = []
    for r in _radical_basis(x, x):
        om = _syzygy_map(r, e, e)
        basis = [e.cocycle([f.one if s == t else f.zero for s in range(e.dim)]) for t in range(e.dim)]
        rows.append(np.stack([e.class_of_cocycle(phi @ om) for phi in basis], axis=1))
    mat = np.concatenate(rows, axis=0) if rows else f.zeros(0, e.dim)
    kb = f.kernel_basis(mat) if mat.shape[0] else f.eye(e.dim)
    if kb.shape[1] != 1:
        raise EnumerationError(f"socle of Ext^1({x.name}, tau) has dimension {kb.shape[1]}")
    return e.to_ses(e.cocycle(kb[:, 0]))


def _connected(alg: BasedAlgebra) -> bool:
    n = alg.num_vertices
    adj = {v: set() for v in range(n)}
    for a in alg.quiver.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen, todo = {0}, [0]
    while todo:
        v = todo.pop()
        for w in adj[v] - seen:
            seen.add(w)
            todo.append(w)
    return len(seen) == n


@dataclass
class Enumeration:
    modules: list[ModuleRep]
    complete: bool


def enumerate_indecomposables(alg: BasedAlgebra, limit: int = 200, seed: int = 0) -> Enumeration:
    found: list[ModuleRep] = []

    def add(m: ModuleRep) -> None:
        for piece, _ in decompose(m, seed):
            if piece.total_dim == 0:
                continue
            if any(o.dims == piece.dims and _iso(o, piece) for o in found):
                continue
            if len(found) >= limit:
                raise EnumerationError(f"more than {limit} indecomposables")
            piece.name = layer_name(piece)
            found.append(piece)
            queue.append(piece)

    queue: list[ModuleRep] = []
    for i in range(alg.num_vertices):
        add(projective_module(alg, i))
        add(injective_module(alg, i))
    while queue:
        x = queue.pop(0)
        if is_projective(x):
            add(radical(x)[0])
        else:
            add(tau(x))
            add(almost_split_sequence(x).middle)
        if is_injective(x):
            add(cokernel(socle(x)[1]).module)
        else:
            add(tau_minus(x))
    found.sort(key=lambda m: (m.total_dim, tuple(-d for d in m.dims), m.name))
    return Enumeration(found, _connected(alg))


def _iso(a: ModuleRep, b: ModuleRep) -> bool:
    from .modrep import iso_between_indecomposables
    return iso_between_indecomposables(a, b) is not None
