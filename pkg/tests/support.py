"""Shared independent oracles and exhaustive module generators."""

from crepant.quiver import c3_quiver, conifold_quiver, frame, relations_from_potential
from crepant.reps import MonomialRepresentation, check_relations


def brute_product_one_minus_qk_inverse(order):
    """Expand prod_k (1 - q^k)^(-k) to the order, with no binomial shortcut.

    (1 - q^k)^(-1) is the geometric series; raise it to the k-th power by
    repeated polynomial multiplication.
    """
    def mul(a, b):
        out = {}
        for i, c in a.items():
            for j, d in b.items():
                if i + j <= order:
                    out[i + j] = out.get(i + j, 0) + c * d
        return out

    result = {0: 1}
    for k in range(1, order + 1):
        geo = {e: 1 for e in range(0, order + 1, k)}
        for _ in range(k):
            result = mul(result, geo)
    return result


def brute_affine_a1_roots(bound):
    """Reflection-orbit oracle for [[2,-2],[-2,2]]: close the simple roots
    under both reflections by breadth-first application, plus multiples of
    the null vector for the imaginary part."""
    def s(i, v):
        c = 2 * v[i] - 2 * v[1 - i]
        out = list(v)
        out[i] -= c
        return tuple(out)

    reals = set()
    frontier = {(1, 0), (0, 1)}
    while frontier:
        reals |= frontier
        nxt = set()
        for v in frontier:
            for i in (0, 1):
                w = s(i, v)
                if w not in reals and min(w) >= 0 and sum(w) <= bound:
                    nxt.add(w)
        frontier = nxt - reals
    imag = {(k, k) for k in range(1, bound // 2 + 1)}
    return reals, imag


def partial_injections(src, dst):
    """All injective dicts from a subset of src into dst."""
    src = list(src)

    def rec(i, used, acc):
        if i == len(src):
            yield dict(acc)
            return
        yield from rec(i + 1, used, acc)
        for d in dst:
            if d not in used:
                yield from rec(i + 1, used | {d}, acc + [(src[i], d)])

    yield from rec(0, frozenset(), [])


def _compose2(f, g, b):
    c = f.get(b)
    return None if c is None else g.get(c)


def commutes(f, g, points):
    return all(_compose2(f, g, b) == _compose2(g, f, b) for b in points)


def framed_c3_modules(max_gauge):
    """Every commuting triple of partial injections, with a framing choice."""
    q, w = c3_quiver()
    fr = frame(q, w, "0")
    for m in range(max_gauge + 1):
        points = range(m)
        maps = [dict(p) for p in partial_injections(points, points)]
        commuters = {}
        for i, f in enumerate(maps):
            commuters[i] = {j for j, g in enumerate(maps)
                            if commutes(f, g, points)}
        for i, f in enumerate(maps):
            for j in commuters[i]:
                for k in commuters[i] & commuters[j]:
                    g, h = maps[j], maps[k]
                    for target in (None, *points):
                        vertex_of = {b: "0" for b in points}
                        vertex_of["fr"] = fr.framing_vertex
                        action = {"x": f, "y": g, "z": h}
                        if target is not None:
                            action[fr.framing_arrow] = {"fr": target}
                        yield MonomialRepresentation(
                            fr.quiver, vertex_of,
                            {k2: v for k2, v in action.items() if v},
                            framed=fr)


def framed_conifold_modules(max_gauge):
    """Every relation-satisfying arrow quadruple, with a framing choice."""
    q, w = conifold_quiver()
    fr = frame(q, w, "0")
    rels = relations_from_potential(q, w)
    for d0 in range(max_gauge + 1):
        for d1 in range(max_gauge + 1 - d0):
            lower = [("a", i) for i in range(d0)]
            upper = [("b", i) for i in range(d1)]
            ab = [dict(p) for p in partial_injections(lower, upper)]
            cd = [dict(p) for p in partial_injections(upper, lower)]
            for A in ab:
                for B in ab:
                    for C in cd:
                        for D in cd:
                            vertex_of = {b: "0" for b in lower}
                            vertex_of.update({b: "1" for b in upper})
                            vertex_of["fr"] = fr.framing_vertex
                            action = {"A": A, "B": B, "C": C, "D": D}
                            action = {k: v for k, v in action.items() if v}
                            rep = MonomialRepresentation(fr.quiver, vertex_of,
                                                         action, framed=fr)
                            if not check_relations(rep, rels):
                                continue
                            for target in (None, *lower):
                                act2 = dict(action)
                                if target is not None:
                                    act2[fr.framing_arrow] = {"fr": target}
                                yield MonomialRepresentation(
                                    fr.quiver, vertex_of, act2, framed=fr)
