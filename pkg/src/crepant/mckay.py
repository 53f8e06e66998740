"""McKay quivers with superpotentials for abelian groups acting in SL(3,C).

The group is a product of cyclic factors acting diagonally on coordinates
z1, z2, z3 with weight vectors that sum to zero in the group (the Calabi-Yau
condition).  Vertices are the characters; each coordinate contributes one
arrow out of every vertex.  Cyclic groups are the tested path; products are
accepted but only constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .errors import CrepantError
from .quiver import Quiver, Superpotential, rotation_count

_SIGN = {(1, 2, 3): 1, (1, 3, 2): -1, (2, 1, 3): -1,
         (2, 3, 1): 1, (3, 1, 2): 1, (3, 2, 1): -1}


@dataclass(frozen=True)
class AbelianAction:
    """Diagonal action of prod Z_{orders[i]} with one weight vector per z_i."""

    orders: tuple[int, ...]
    weights: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if not orders or any(n < 1 for n in orders):
            raise CrepantError("group orders must be positive")
        weights = tuple(tuple(w % n for w, n in zip(wv, orders))
                        for wv in self.weights)
        if len(weights) != 3 or any(len(wv) != len(orders) for wv in weights):
            raise CrepantError("need three weight vectors matching the orders")
        total = tuple(sum(ws) % n for ws, n in zip(zip(*weights), orders))
        if any(total):
            raise CrepantError("weights must sum to zero (determinant-one action)")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def cyclic(cls, n: int, weights) -> "AbelianAction":
        w1, w2, w3 = weights
        return cls((n,), ((w1,), (w2,), (w3,)))

    @property
    def size(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    def elements(self) -> list[tuple[int, ...]]:
        return sorted(product(*(range(n) for n in self.orders)))

    def add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    def label(self, elem: tuple[int, ...]) -> str:
        return ".".join(str(x) for x in elem)

    def is_cyclic(self) -> bool:
        return len(self.orders) == 1


def parse_action(descriptor: str) -> AbelianAction:
    """Parse the CLI descriptor "n:w1,w2,w3", e.g. "3:1,1,1" or "7:1,1,5"."""
    try:
        head, tail = descriptor.split(":")
        n = int(head)
        w1, w2, w3 = (int(w) for w in tail.split(","))
    except (ValueError, AttributeError):
        raise CrepantError(f"bad action descriptor {descriptor!r}") from None
    return AbelianAction.cyclic(n, (w1, w2, w3))


def arrow_name(act: AbelianAction, i: int, elem: tuple[int, ...]) -> str:
    return f"z{i}_{act.label(elem)}"


def mckay_quiver(act: AbelianAction) -> Quiver:
    """One vertex per character; arrows k -> k + w_i for each coordinate i."""
    elems = act.elements()
    vertices = [act.label(e) for e in elems]
    arrows = []
    for e in elems:
        for i in (1, 2, 3):
            arrows.append((arrow_name(act, i, e), act.label(e),
                           act.label(act.add(e, act.weights[i - 1]))))
    return Quiver(vertices, arrows)


def character_decomposition_table(act: AbelianAction) -> dict:
    """Target character of multiplication by z_i on each graded piece.

    Keys are (character label, coordinate index), values are the labels of
    the targets; this is exactly the arrow table of the McKay quiver.
    """
    table = {}
    for e in act.elements():
        for i in (1, 2, 3):
            table[(act.label(e), i)] = act.label(act.add(e, act.weights[i - 1]))
    return table


def mckay_superpotential(act: AbelianAction) -> Superpotential:
    """Antisymmetrized sum of the closed z1 z2 z3 triangles at every vertex.

    Each closed 3-cycle is produced once per starting vertex; merged
    coefficients are divided by the word's rotation count so every cyclic
    word ends with a unit coefficient.
    """
    raw: dict[tuple[str, ...], int] = {}
    for e in act.elements():
        for sigma in permutations((1, 2, 3)):
            word = []
            at = e
            for i in sigma:
                word.append(arrow_name(act, i, at))
                at = act.add(at, act.weights[i - 1])
            word = tuple(word)
            canon = min(word[j:] + word[:j] for j in range(len(word)))
            raw[canon] = raw.get(canon, 0) + _SIGN[sigma]
    terms = []
    for word, coeff in sorted(raw.items()):
        if not coeff:
            continue
        rotations = rotation_count(word)
        if coeff % rotations:
            raise CrepantError("cycle coefficient not divisible by its rotations")
        terms.append((coeff // rotations, word))
    return Superpotential(terms)
