"""Crystal enumeration: framed cyclic monomial modules counted by size.

Two atom families ship.  For C^3/Z_n the atoms are boxes (i,j,k) in the
octant, coloured by the character i*w1 + j*w2 + k*w3; a configuration is a
box stack closed under the coordinate predecessors.  For the conifold the
atoms are the stones of the length-1 pyramid, with colours alternating by
layer.  The pyramid is coordinatized by the loop monomials of the quiver:
a white (even-layer) stone is a monomial class (a,b,c,d) in the four
vertex-0 loops v1=AC, v2=AD, v3=BC, v4=BD with min(b,c)=0 imposed by the
relation v1 v4 = v2 v3, and a black (odd-layer) stone is such a class
followed by A or B, normalized by the relations v3*A = v1*B and
v2*B = v4*A.  Predecessor and arrow-action rules below are read off from
those rewriting rules, so every configuration is automatically a module
satisfying the potential relations.

Enumeration is an exhaustive reverse search: a configuration is grown only
from its canonical parent (drop the largest removable atom), so every order
ideal is produced exactly once.
"""

from __future__ import annotations

from .errors import CrepantError
from .mckay import AbelianAction, mckay_quiver, mckay_superpotential
from .quiver import conifold_quiver, frame
from .reps import MonomialRepresentation
from .series import FormalSeries


class BoxFamily:
    """Box stacks in the octant, coloured by an abelian action."""

    def __init__(self, act: AbelianAction):
        self.act = act
        self.quiver = mckay_quiver(act)
        self.potential = mckay_superpotential(act)
        self.apex = (0, 0, 0)
        origin = (0,) * len(act.orders)
        self.framed = frame(self.quiver, self.potential, act.label(origin))
        self.variables = tuple(f"q{act.label(e)}" for e in act.elements())
        self._elements = act.elements()
        self._vindex = {act.label(e): i for i, e in enumerate(self._elements)}

    def color(self, atom) -> str:
        i, j, k = atom
        w1, w2, w3 = self.act.weights
        elem = tuple((i * a + j * b + k * c) % n
                     for a, b, c, n in zip(w1, w2, w3, self.act.orders))
        return self.act.label(elem)

    def vertex_of(self, atom) -> str:
        return self.color(atom)

    def predecessors(self, atom):
        i, j, k = atom
        if i:
            yield (i - 1, j, k)
        if j:
            yield (i, j - 1, k)
        if k:
            yield (i, j, k - 1)

    def successors(self, atom):
        i, j, k = atom
        yield (i + 1, j, k)
        yield (i, j + 1, k)
        yield (i, j, k + 1)

    def arrow_action(self, name: str, atom):
        """Image of an atom under a gauge arrow, on the full crystal."""
        coord, src = name[1:].split("_", 1)
        if self.color(atom) != src:
            return None
        i = int(coord)
        return tuple(x + (1 if pos == i - 1 else 0) for pos, x in enumerate(atom))

    def gauge_arrows(self):
        return [a.name for a in self.quiver.arrows]

    def sort_key(self, atom):
        return (sum(atom), atom)

    def color_index(self, atom) -> int:
        return self._vindex[self.color(atom)]


class PyramidFamily:
    """Stones of the length-1 conifold pyramid.

    Atoms are ("w", a, b, c, d) for white stones and ("A"|"B", a, b, c, d)
    for black stones, in the normal forms described in the module docstring.
    """

    def __init__(self):
        self.quiver, self.potential = conifold_quiver()
        self.apex = ("w", 0, 0, 0, 0)
        self.framed = frame(self.quiver, self.potential, "0")
        self.variables = ("q0", "q1")

    def vertex_of(self, atom) -> str:
        return "0" if atom[0] == "w" else "1"

    def arrow_action(self, name: str, atom):
        kind, a, b, c, d = atom
        if name in ("A", "B"):
            if kind != "w":
                return None
            if name == "A":
                return ("A", a, b, 0, d) if c == 0 else ("B", a + 1, 0, c - 1, d)
            return ("B", a, 0, c, d) if b == 0 else ("A", a, b - 1, 0, d + 1)
        if name == "C":
            if kind == "A":
                return ("w", a + 1, b, 0, d)
            if kind == "B":
                return ("w", a, 0, c + 1, d)
        if name == "D":
            if kind == "A":
                return ("w", a, b + 1, 0, d)
            if kind == "B":
                return ("w", a, 0, c, d + 1)
        return None

    def predecessors(self, atom):
        kind, a, b, c, d = atom
        if kind == "w":
            if a and c == 0:
                yield ("A", a - 1, b, 0, d)
            if b:
                yield ("A", a, b - 1, 0, d)
            if c:
                yield ("B", a, 0, c - 1, d)
            if d and b == 0:
                yield ("B", a, 0, c, d - 1)
        elif kind == "A":
            yield ("w", a, b, 0, d)
            if d:
                yield ("w", a, b + 1, 0, d - 1)
        else:
            yield ("w", a, 0, c, d)
            if a:
                yield ("w", a - 1, 0, c + 1, d)

    def successors(self, atom):
        for name in ("A", "B", "C", "D"):
            image = self.arrow_action(name, atom)
            if image is not None:
                yield image

    def gauge_arrows(self):
        return ["A", "B", "C", "D"]

    def sort_key(self, atom):
        kind, a, b, c, d = atom
        layer = 2 * (a + b + c + d) + (0 if kind == "w" else 1)
        return (layer, kind, a, b, c, d)

    def color_index(self, atom) -> int:
        return 0 if atom[0] == "w" else 1


def family_for(name_or_act):
    """Resolve "c3", "conifold", an action descriptor object, into a family."""
    if isinstance(name_or_act, AbelianAction):
        return BoxFamily(name_or_act)
    if name_or_act == "conifold":
        return PyramidFamily()
    if name_or_act == "c3":
        return BoxFamily(AbelianAction.cyclic(1, (0, 0, 0)))
    raise CrepantError(f"unknown crystal family {name_or_act!r}")


def configurations(family, max_size: int):
    """Yield every order ideal with at most ``max_size`` atoms, exactly once.

    Reverse search: an ideal is emitted from its canonical parent, obtained
    by removing its largest removable atom in the family's atom order.
    """
    if max_size < 0:
        raise CrepantError("size bound must be nonnegative")
    yield frozenset()
    stack = [frozenset()]
    while stack:
        ideal = stack.pop()
        if len(ideal) >= max_size:
            continue
        candidates = {family.apex} if not ideal else \
            {s for atom in ideal for s in family.successors(atom)} - ideal
        for atom in candidates:
            if any(p not in ideal for p in family.predecessors(atom)):
                continue
            child = ideal | {atom}
            removable = [x for x in child
                         if all(s not in child for s in family.successors(x))]
            if max(removable, key=family.sort_key) == atom:
                yield child
                stack.append(child)


def dimension_vector(family, config) -> tuple[int, ...]:
    dims = [0] * len(family.variables)
    for atom in config:
        dims[family.color_index(atom)] += 1
    return tuple(dims)


def enumerate_configurations(family, max_size: int) -> dict[tuple[int, ...], int]:
    """Exact ideal counts for every size up to the bound, keyed by colour."""
    counts: dict[tuple[int, ...], int] = {}
    for config in configurations(family, max_size):
        d = dimension_vector(family, config)
        counts[d] = counts.get(d, 0) + 1
    return counts


def configuration_to_module(family, config) -> MonomialRepresentation:
    """The framed monomial module whose basis is the configuration.

    Gauge arrows act by the crystal translation where the image atom is
    present and by zero otherwise; the framing arrow hits the apex.
    """
    config = frozenset(config)
    framed = family.framed
    fr_elt = "<framing>"
    vertex_of = {atom: family.vertex_of(atom) for atom in config}
    vertex_of[fr_elt] = framed.framing_vertex
    action: dict = {}
    for name in family.gauge_arrows():
        mapping = {}
        for atom in config:
            image = family.arrow_action(name, atom)
            if image is not None and image in config:
                mapping[atom] = image
        if mapping:
            action[name] = mapping
    if family.apex in config:
        action[framed.framing_arrow] = {fr_elt: family.apex}
    return MonomialRepresentation(framed.quiver, vertex_of, action, framed=framed)


def ncdt_series(family, order: int, sign: str = "unsigned",
                sign_exponent=None) -> FormalSeries:
    """Partition function of configurations, truncated at total degree.

    ``sign="unsigned"`` counts every configuration with weight one;
    ``sign="dimension"`` weights a configuration by (-1)**s(alpha) where
    ``sign_exponent`` maps its dimension vector to an integer (default: the
    total number of atoms).
    """
    if sign not in ("unsigned", "dimension"):
        raise CrepantError(f"unknown sign convention {sign!r}")
    if sign_exponent is None:
        sign_exponent = sum
    terms: dict[tuple[int, ...], int] = {}
    for config in configurations(family, order):
        d = dimension_vector(family, config)
        weight = 1 if sign == "unsigned" else (-1) ** int(sign_exponent(d))
        terms[d] = terms.get(d, 0) + weight
    return FormalSeries(family.variables, order, terms)
